//! Space accounting for built indexes.

use std::fmt;

/// One named piece of index overhead, in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpaceComponent {
    pub name: &'static str,
    pub bits: u64,
}

impl SpaceComponent {
    pub fn bytes(&self) -> f64 {
        self.bits as f64 / 8.0
    }
}

/// Per-component sizes of everything an index stores beyond the raw data
/// bits, plus the overhead relative to the plain vector (`ceil(n / 8)`
/// bytes).
#[derive(Clone, Debug)]
pub struct SpaceReport {
    pub components: Vec<SpaceComponent>,
    /// Logical bit count of the indexed vector.
    pub data_bits: u64,
}

impl SpaceReport {
    pub fn total_bits(&self) -> u64 {
        self.components.iter().map(|c| c.bits).sum()
    }

    pub fn total_bytes(&self) -> f64 {
        self.total_bits() as f64 / 8.0
    }

    /// Overhead as a percentage of the plain vector's `ceil(n / 8)` bytes.
    pub fn overhead_pct(&self) -> f64 {
        100.0 * self.total_bits() as f64 / (8 * self.data_bits.div_ceil(8)) as f64
    }
}

impl fmt::Display for SpaceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            writeln!(f, "  {:<24} {:>14.1} bytes", c.name, c.bytes())?;
        }
        write!(
            f,
            "  {:<24} {:>14.1} bytes ({:.3}% of the bit vector)",
            "total",
            self.total_bytes(),
            self.overhead_pct()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overhead_is_relative_to_byte_rounded_data() {
        let report = SpaceReport {
            components: vec![
                SpaceComponent {
                    name: "a",
                    bits: 64,
                },
                SpaceComponent {
                    name: "b",
                    bits: 36,
                },
            ],
            data_bits: 1000,
        };
        assert_eq!(report.total_bits(), 100);
        let denom = 8.0 * 125.0;
        assert!((report.overhead_pct() - 100.0 * 100.0 / denom).abs() < 1e-12);
    }
}
