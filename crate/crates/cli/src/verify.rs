//! Checking a built index against the linear-scan reference.

use crate::workload::QueryKind;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spider_core::{oracle, AnyIndex, BitVector};
use std::fmt;
use std::str::FromStr;

/// How much of the query space to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sample {
    /// Every rank position and every select rank, in one sweep.
    Full,
    /// This many random queries of each kind.
    Count(u64),
}

impl FromStr for Sample {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("full") {
            return Ok(Sample::Full);
        }
        s.parse::<u64>()
            .map(Sample::Count)
            .map_err(|_| format!("expected a sample count or \"full\", got {s:?}"))
    }
}

/// The first query whose answer disagreed with the reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub kind: QueryKind,
    pub query: u64,
    pub expected: Option<u64>,
    pub got: Option<u64>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Option<u64>| v.map_or("none".to_string(), |v| v.to_string());
        write!(
            f,
            "{}({}) returned {}, reference says {}",
            self.kind,
            self.query,
            show(self.got),
            show(self.expected)
        )
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyStats {
    pub rank_checked: u64,
    pub select_checked: u64,
}

/// Compares the index against the reference on the chosen sample; returns
/// the first counterexample on disagreement.
///
/// Full mode walks the vector once, checking rank at every position and
/// select at every set bit. Sampled mode draws uniform queries and answers
/// them all with one batched reference scan, so it stays usable on vectors
/// where per-query reference answers would be quadratic.
pub fn verify(
    idx: &AnyIndex,
    bv: &BitVector,
    sample: Sample,
    seed: u64,
) -> Result<VerifyStats, Mismatch> {
    match sample {
        Sample::Full => verify_full(idx, bv),
        Sample::Count(count) => verify_sampled(idx, bv, count, seed),
    }
}

fn verify_full(idx: &AnyIndex, bv: &BitVector) -> Result<VerifyStats, Mismatch> {
    let mut stats = VerifyStats::default();
    let mut ones = 0u64;
    for i in 0..bv.len() {
        let is_one = bv.get(i);
        if is_one {
            ones += 1;
        }
        let got = idx.rank(i);
        if got != ones {
            return Err(Mismatch {
                kind: QueryKind::Rank,
                query: i,
                expected: Some(ones),
                got: Some(got),
            });
        }
        stats.rank_checked += 1;
        if is_one {
            let got = idx.select(ones);
            if got != Some(i) {
                return Err(Mismatch {
                    kind: QueryKind::Select,
                    query: ones,
                    expected: Some(i),
                    got,
                });
            }
            stats.select_checked += 1;
        }
    }
    for out_of_range in [0, ones + 1] {
        let got = idx.select(out_of_range);
        if got.is_some() {
            return Err(Mismatch {
                kind: QueryKind::Select,
                query: out_of_range,
                expected: None,
                got,
            });
        }
    }
    Ok(stats)
}

fn verify_sampled(
    idx: &AnyIndex,
    bv: &BitVector,
    count: u64,
    seed: u64,
) -> Result<VerifyStats, Mismatch> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = VerifyStats::default();

    let positions: Vec<u64> = (0..count).map(|_| rng.random_range(0..bv.len())).collect();
    let expected = oracle::rank_many(bv, &positions);
    for (&i, &want) in positions.iter().zip(&expected) {
        let got = idx.rank(i);
        if got != want {
            return Err(Mismatch {
                kind: QueryKind::Rank,
                query: i,
                expected: Some(want),
                got: Some(got),
            });
        }
        stats.rank_checked += 1;
    }

    // rank-only verification when there is nothing to select
    if bv.count_ones() > 0 {
        let ranks: Vec<u64> = (0..count)
            .map(|_| rng.random_range(1..=bv.count_ones()))
            .collect();
        let expected = oracle::select_many(bv, &ranks);
        for (&j, &want) in ranks.iter().zip(&expected) {
            let got = idx.select(j);
            if got != want {
                return Err(Mismatch {
                    kind: QueryKind::Select,
                    query: j,
                    expected: want,
                    got,
                });
            }
            stats.select_checked += 1;
        }
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use spider_core::datagen;
    use spider_core::StructureKind;

    #[test]
    fn all_structures_pass_full_verification() {
        let bv = datagen::random_bits(200_000, 0.3, 5);
        for kind in StructureKind::ALL {
            let idx = kind.build(&bv);
            let stats = verify(&idx, &bv, Sample::Full, 0).unwrap();
            assert_eq!(stats.rank_checked, bv.len());
            assert_eq!(stats.select_checked, bv.count_ones());
        }
    }

    #[test]
    fn sampled_verification_passes() {
        let bv = datagen::random_bits(500_000, 0.8, 6);
        let idx = StructureKind::Spider.build(&bv);
        let stats = verify(&idx, &bv, Sample::Count(2000), 1).unwrap();
        assert_eq!(stats.rank_checked, 2000);
        assert_eq!(stats.select_checked, 2000);
    }

    #[test]
    fn all_zeros_verifies_rank_only() {
        let bv = spider_core::BitVector::zeros(10_000);
        let idx = StructureKind::NiSpider.build(&bv);
        let stats = verify(&idx, &bv, Sample::Count(100), 2).unwrap();
        assert_eq!(stats.rank_checked, 100);
        assert_eq!(stats.select_checked, 0);
    }

    #[test]
    fn corrupted_index_is_caught_with_counterexample() {
        let bv = datagen::random_bits(100_000, 0.5, 7);
        let good = spider_core::SpiderIndex::build(&bv);
        // rebuild over a vector with one bit flipped, then verify against
        // the original: some query must expose the difference
        let mut words = bv.words().to_vec();
        words[500] ^= 1 << 17;
        let tampered = spider_core::BitVector::from_words(words, bv.len());
        let bad = AnyIndex::Spider(spider_core::SpiderIndex::build(&tampered));
        let err = verify(&bad, &bv, Sample::Full, 0).unwrap_err();
        assert_eq!(err.kind, QueryKind::Rank);
        assert_eq!(err.query, 500 * 64 + 17);
        assert!(verify(&AnyIndex::Spider(good), &bv, Sample::Full, 0).is_ok());
    }

    #[test]
    fn sample_parses() {
        assert_eq!("full".parse::<Sample>().unwrap(), Sample::Full);
        assert_eq!("1000".parse::<Sample>().unwrap(), Sample::Count(1000));
        assert!("nope".parse::<Sample>().is_err());
    }
}
