//! Deterministic dataset construction.
//!
//! Random vectors are driven by ChaCha8 (`rand_chacha::ChaCha8Rng`), whose
//! output stream is specified and identical on every platform, so a `(n,
//! density, seed)` triple names one exact bit vector everywhere. Each bit
//! costs one 64-bit draw compared against a fixed threshold; simple and
//! auditable beats fast here.
//!
//! Text-derived vectors map each input byte to one bit through a 256-entry
//! class table. The shipped presets mirror the usual corpus encodings:
//! letter classes over prose and amino-acid classes over protein sequences.

use crate::bits::BitVector;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A bit vector of `n` bits, each set independently with probability
/// `density`, reproducible from the seed.
///
/// Panics if `n == 0` or `density` is not in `[0, 1]`.
pub fn random_bits(n: u64, density: f64, seed: u64) -> BitVector {
    assert!(n >= 1, "cannot generate an empty bit vector");
    assert!(
        density.is_finite() && (0.0..=1.0).contains(&density),
        "density must be in [0, 1], got {density}"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // draw < threshold <=> bit set; 2^64 * density rounds to the nearest
    // representable threshold and density 1.0 saturates above every draw
    let threshold = if density >= 1.0 {
        1u128 << 64
    } else {
        (density * 18_446_744_073_709_551_616.0) as u128
    };
    let mut words = vec![0u64; n.div_ceil(64) as usize];
    for i in 0..n {
        if (rng.next_u64() as u128) < threshold {
            words[(i / 64) as usize] |= 1u64 << (i % 64);
        }
    }
    BitVector::from_words(words, n)
}

/// Byte-to-bit classification table.
#[derive(Clone, PartialEq, Eq)]
pub struct CharClassMap([bool; 256]);

/// Names accepted by [`CharClassMap::preset`].
pub const PRESET_NAMES: [&str; 3] = ["wikipedia", "protein", "protein-even"];

impl CharClassMap {
    /// Map with exactly the given byte values set to 1.
    pub fn from_one_bytes(ones: &[u8]) -> Self {
        let mut table = [false; 256];
        for &b in ones {
            table[b as usize] = true;
        }
        CharClassMap(table)
    }

    /// Letters `a`-`n` and `A`-`N` map to 1, everything else to 0. Splits
    /// prose roughly in half.
    pub fn wikipedia() -> Self {
        let mut table = [false; 256];
        for b in 0..=255u8 {
            table[b as usize] = (b'a'..=b'n').contains(&b) || (b'A'..=b'N').contains(&b);
        }
        CharClassMap(table)
    }

    /// Only `L` (leucine) maps to 1; sparse on protein sequences.
    pub fn protein() -> Self {
        CharClassMap::from_one_bytes(b"L")
    }

    /// `A`-`L` map to 0 and everything else to 1; roughly even on protein
    /// sequences.
    pub fn protein_even() -> Self {
        let mut table = [true; 256];
        for b in b'A'..=b'L' {
            table[b as usize] = false;
        }
        CharClassMap(table)
    }

    /// Looks up a preset by its command-line name.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "wikipedia" => Some(CharClassMap::wikipedia()),
            "protein" => Some(CharClassMap::protein()),
            "protein-even" => Some(CharClassMap::protein_even()),
            _ => None,
        }
    }

    #[inline]
    pub fn classify(&self, byte: u8) -> bool {
        self.0[byte as usize]
    }
}

/// One bit per input byte: bit `i` is the class of byte `i`.
///
/// Panics on empty input.
pub fn text_to_bits(bytes: &[u8], map: &CharClassMap) -> BitVector {
    assert!(
        !bytes.is_empty(),
        "cannot derive a bit vector from empty input"
    );
    BitVector::from_bits(bytes.iter().map(|&b| map.classify(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_densities() {
        assert_eq!(random_bits(1000, 0.0, 1).count_ones(), 0);
        assert_eq!(random_bits(1000, 1.0, 1).count_ones(), 1000);
    }

    #[test]
    fn density_concentrates_at_scale() {
        let bv = random_bits(10_000_000, 0.5, 42);
        let ratio = bv.count_ones() as f64 / bv.len() as f64;
        assert!((0.4995..=0.5005).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn same_seed_same_vector() {
        let a = random_bits(100_000, 0.3, 7);
        let b = random_bits(100_000, 0.3, 7);
        assert_eq!(a, b);
        let c = random_bits(100_000, 0.3, 8);
        assert_ne!(a, c);
    }

    #[test]
    #[should_panic(expected = "density")]
    fn bad_density_rejected() {
        random_bits(10, 1.5, 0);
    }

    #[test]
    fn protein_preset_marks_leucine() {
        let bv = text_to_bits(b"LLAB", &CharClassMap::protein());
        assert_eq!(bv.len(), 4);
        assert!(bv.get(0) && bv.get(1) && !bv.get(2) && !bv.get(3));
    }

    #[test]
    fn wikipedia_preset_splits_alphabet() {
        let bv = text_to_bits(b"nozq", &CharClassMap::wikipedia());
        assert!(bv.get(0) && !bv.get(1) && !bv.get(2) && !bv.get(3));
        let upper = text_to_bits(b"ANOZ", &CharClassMap::wikipedia());
        assert!(upper.get(0) && upper.get(1) && !upper.get(2) && !upper.get(3));
    }

    #[test]
    fn all_zero_map_clears_everything() {
        let bv = text_to_bits(b"anything at all", &CharClassMap::from_one_bytes(&[]));
        assert_eq!(bv.count_ones(), 0);
    }

    #[test]
    fn protein_even_density_on_amino_alphabet() {
        let bv = text_to_bits(b"ACDEFGHIKLMNPQRSTVWY", &CharClassMap::protein_even());
        // A C D E F G H I K L map to 0, M N P Q R S T V W Y to 1
        assert_eq!(bv.count_ones(), 10);
    }

    #[test]
    fn preset_lookup() {
        for name in PRESET_NAMES {
            assert!(CharClassMap::preset(name).is_some());
        }
        assert!(CharClassMap::preset("bogus").is_none());
    }
}
