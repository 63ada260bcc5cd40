//! Pre-generated query workloads.
//!
//! Queries are materialized before any timing starts so generator cost never
//! lands inside a measured loop, and they are drawn from a seeded ChaCha8
//! stream so a workload is reproducible from its seed alone.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QueryKind {
    Rank,
    Select,
}

impl QueryKind {
    pub fn name(self) -> &'static str {
        match self {
            QueryKind::Rank => "rank",
            QueryKind::Select => "select",
        }
    }
}

impl fmt::Display for QueryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QueryKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rank" => Ok(QueryKind::Rank),
            "select" => Ok(QueryKind::Select),
            other => Err(format!(
                "unknown query kind {other:?} (expected rank or select)"
            )),
        }
    }
}

/// A fixed sequence of query arguments for one query kind.
#[derive(Clone, Debug)]
pub struct Workload {
    pub kind: QueryKind,
    pub queries: Vec<u64>,
    pub seed: u64,
}

/// Uniform queries over the valid domain: positions `0..n` for rank, ranks
/// `1..=n1` for select.
///
/// Panics if a select workload is requested for a vector with no set bits.
pub fn generate(kind: QueryKind, n: u64, n1: u64, count: u64, seed: u64) -> Workload {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let queries = match kind {
        QueryKind::Rank => (0..count).map(|_| rng.random_range(0..n)).collect(),
        QueryKind::Select => {
            assert!(n1 > 0, "select workload over a vector with no set bits");
            (0..count).map(|_| rng.random_range(1..=n1)).collect()
        }
    };
    Workload {
        kind,
        queries,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_are_seed_deterministic() {
        let a = generate(QueryKind::Rank, 1000, 500, 256, 7);
        let b = generate(QueryKind::Rank, 1000, 500, 256, 7);
        assert_eq!(a.queries, b.queries);
        let c = generate(QueryKind::Rank, 1000, 500, 256, 8);
        assert_ne!(a.queries, c.queries);
    }

    #[test]
    fn queries_stay_in_domain() {
        let w = generate(QueryKind::Rank, 100, 42, 10_000, 3);
        assert!(w.queries.iter().all(|&q| q < 100));
        let w = generate(QueryKind::Select, 100, 42, 10_000, 3);
        assert!(w.queries.iter().all(|&q| (1..=42).contains(&q)));
    }

    #[test]
    #[should_panic(expected = "no set bits")]
    fn select_workload_needs_ones() {
        generate(QueryKind::Select, 100, 0, 10, 0);
    }
}
