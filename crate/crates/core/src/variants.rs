//! Index variants: the two hybrid combinations of rank layout and select
//! shape, the strawman baseline, and a registry that builds any structure by
//! name.
//!
//! The rank layout (interleaved or flat) and the select shape (one- or
//! two-level) compose freely. (interleaved, two) and (flat, one) are the two
//! primary indexes; the other two combinations are built here from the same
//! pieces and are mainly interesting for comparing prediction quality
//! against scan cost.

use crate::bits::BitVector;
use crate::block::{rank_in_block, select_in_block, BLOCK_WORDS};
use crate::layout::{FlatRank, InterleavedRank, RankStore};
use crate::ni_spider::NiSpiderIndex;
use crate::select::{OneLevelSelect, TwoLevelSelect};
use crate::space::{SpaceComponent, SpaceReport};
use crate::spider::SpiderIndex;
use std::fmt;
use std::str::FromStr;

/// How rank metadata is stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankLayout {
    /// Local ranks rewritten into the blocks themselves (496-bit payloads).
    Interleaved,
    /// Flat side arrays over the untouched vector (512-bit blocks).
    Flat,
}

/// How many levels the sampled select array has.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelectLevels {
    One,
    Two,
}

/// A rank layout paired with a select shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VariantConfig {
    pub rank_layout: RankLayout,
    pub select_levels: SelectLevels,
}

/// Interleaved ranks with a one-level select array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpiderOneLevelIndex {
    ranks: InterleavedRank,
    select: OneLevelSelect,
}

impl SpiderOneLevelIndex {
    pub fn build(bv: &BitVector) -> Self {
        let ranks = InterleavedRank::build(bv);
        let select = OneLevelSelect::build(&ranks, bv.words());
        SpiderOneLevelIndex { ranks, select }
    }

    pub fn len(&self) -> u64 {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.len() == 0
    }

    pub fn count_ones(&self) -> u64 {
        self.ranks.ones()
    }

    #[inline]
    pub fn rank(&self, i: u64) -> u64 {
        self.ranks.rank(i)
    }

    #[inline]
    pub fn select(&self, j: u64) -> Option<u64> {
        self.select_instrumented(j).map(|(pos, _)| pos)
    }

    #[inline]
    pub fn select_instrumented(&self, j: u64) -> Option<(u64, u64)> {
        if j == 0 || j > self.ranks.ones() {
            return None;
        }
        Some(self.select.query(&self.ranks, j))
    }

    pub fn space(&self) -> SpaceReport {
        let n = self.ranks.len();
        SpaceReport {
            components: vec![
                SpaceComponent {
                    name: "rank-array",
                    bits: 64 * self.ranks.rank_array().len() as u64,
                },
                SpaceComponent {
                    name: "modified-vector-excess",
                    bits: 512 * self.ranks.block_count() - n,
                },
                SpaceComponent {
                    name: "select-array",
                    bits: 64 * self.select.samples().len() as u64,
                },
            ],
            data_bits: n,
        }
    }
}

/// Flat ranks with a two-level select array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiSpiderTwoLevelIndex {
    ranks: FlatRank,
    select: TwoLevelSelect,
}

impl NiSpiderTwoLevelIndex {
    pub fn build(bv: &BitVector) -> Self {
        let ranks = FlatRank::build(bv);
        let select = TwoLevelSelect::build(&ranks, bv.words());
        NiSpiderTwoLevelIndex { ranks, select }
    }

    pub fn len(&self) -> u64 {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.len() == 0
    }

    pub fn count_ones(&self) -> u64 {
        self.ranks.ones()
    }

    #[inline]
    pub fn rank(&self, i: u64) -> u64 {
        self.ranks.rank(i)
    }

    #[inline]
    pub fn select(&self, j: u64) -> Option<u64> {
        self.select_instrumented(j).map(|(pos, _)| pos)
    }

    #[inline]
    pub fn select_instrumented(&self, j: u64) -> Option<(u64, u64)> {
        if j == 0 || j > self.ranks.ones() {
            return None;
        }
        Some(self.select.query(&self.ranks, j))
    }

    pub fn space(&self) -> SpaceReport {
        let n = self.ranks.len();
        SpaceReport {
            components: vec![
                SpaceComponent {
                    name: "l1-rank",
                    bits: 64 * self.ranks.l1().len() as u64,
                },
                SpaceComponent {
                    name: "l2-rank",
                    bits: 16 * self.ranks.l2().len() as u64,
                },
                SpaceComponent {
                    name: "high-select",
                    bits: 64 * self.select.high().len() as u64,
                },
                SpaceComponent {
                    name: "low-select",
                    bits: 16 * self.select.low().len() as u64,
                },
                SpaceComponent {
                    name: "padding",
                    bits: self.ranks.padded_len() - n,
                },
            ],
            data_bits: n,
        }
    }
}

/// Builds the index described by `config` over `bv`.
pub fn build_variant(bv: &BitVector, config: VariantConfig) -> AnyIndex {
    match (config.rank_layout, config.select_levels) {
        (RankLayout::Interleaved, SelectLevels::Two) => AnyIndex::Spider(SpiderIndex::build(bv)),
        (RankLayout::Flat, SelectLevels::One) => AnyIndex::NiSpider(NiSpiderIndex::build(bv)),
        (RankLayout::Interleaved, SelectLevels::One) => {
            AnyIndex::SpiderOneLevel(SpiderOneLevelIndex::build(bv))
        }
        (RankLayout::Flat, SelectLevels::Two) => {
            AnyIndex::NiSpiderTwoLevel(NiSpiderTwoLevelIndex::build(bv))
        }
    }
}

/// The baseline structure: one 64-bit cumulative count per 512-bit line and
/// absolute select samples every 8192 set bits, over the untouched vector.
/// Select scans the rank array linearly from the sampled line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrawmanIndex {
    /// Cumulative count per line, plus a sentinel total.
    rank_array: Vec<u64>,
    /// Position of set bit `8192 * i + 1` for each `i`.
    select_samples: Vec<u64>,
    /// Source words, zero-padded to a whole line.
    words: Vec<u64>,
    n: u64,
    n1: u64,
}

/// Fixed select sampling stride for the strawman.
const STRAWMAN_STRIDE: u64 = 8192;
const LINE_BITS: u64 = 512;

impl StrawmanIndex {
    pub fn build(bv: &BitVector) -> Self {
        let n = bv.len();
        assert!(n > 0, "cannot index an empty bit vector");
        let lines = n.div_ceil(LINE_BITS);
        let mut words = bv.words().to_vec();
        words.resize((lines * LINE_BITS / 64) as usize, 0);
        let mut rank_array = Vec::with_capacity(lines as usize + 1);
        let mut total = 0u64;
        for line in 0..lines as usize {
            rank_array.push(total);
            total += words[line * BLOCK_WORDS..(line + 1) * BLOCK_WORDS]
                .iter()
                .map(|w| w.count_ones() as u64)
                .sum::<u64>();
        }
        rank_array.push(total);
        let select_samples = if total == 0 {
            Vec::new()
        } else {
            let ranks: Vec<u64> = (0..=(total - 1) / STRAWMAN_STRIDE)
                .map(|i| i * STRAWMAN_STRIDE + 1)
                .collect();
            crate::bits::select_positions(&words, &ranks)
        };
        StrawmanIndex {
            rank_array,
            select_samples,
            words,
            n,
            n1: total,
        }
    }

    pub fn len(&self) -> u64 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn count_ones(&self) -> u64 {
        self.n1
    }

    #[inline]
    fn line_words(&self, line: u64) -> &[u64; BLOCK_WORDS] {
        let start = line as usize * BLOCK_WORDS;
        self.words[start..start + BLOCK_WORDS].try_into().unwrap()
    }

    /// Number of set bits among positions `0..=i`.
    ///
    /// Panics if `i >= len()`.
    #[inline]
    pub fn rank(&self, i: u64) -> u64 {
        assert!(i < self.n, "rank index {i} out of range (len {})", self.n);
        let line = i / LINE_BITS;
        self.rank_array[line as usize]
            + rank_in_block(self.line_words(line), (i % LINE_BITS) as u32, 0) as u64
    }

    /// Position of the `j`-th set bit, or `None` if `j` is out of range.
    #[inline]
    pub fn select(&self, j: u64) -> Option<u64> {
        self.select_instrumented(j).map(|(pos, _)| pos)
    }

    /// `select` plus the number of lines the rank-array scan visited beyond
    /// the final one.
    #[inline]
    pub fn select_instrumented(&self, j: u64) -> Option<(u64, u64)> {
        if j == 0 || j > self.n1 {
            return None;
        }
        let start = self.select_samples[((j - 1) / STRAWMAN_STRIDE) as usize] / LINE_BITS;
        let mut line = start;
        while self.rank_array[line as usize] >= j {
            line -= 1;
        }
        // the sentinel entry bounds the walk on the right
        while self.rank_array[line as usize + 1] < j {
            line += 1;
        }
        let k = j - self.rank_array[line as usize];
        let pos = line * LINE_BITS + select_in_block(self.line_words(line), k as u32, 0) as u64;
        Some((pos, start.abs_diff(line)))
    }

    pub fn space(&self) -> SpaceReport {
        SpaceReport {
            components: vec![
                SpaceComponent {
                    name: "rank-array",
                    bits: 64 * self.rank_array.len() as u64,
                },
                SpaceComponent {
                    name: "select-array",
                    bits: 64 * self.select_samples.len() as u64,
                },
                SpaceComponent {
                    name: "padding",
                    bits: self.words.len() as u64 * 64 - self.n,
                },
            ],
            data_bits: self.n,
        }
    }
}

/// Every structure the tooling can build, in the naming used on the command
/// line and in result tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureKind {
    Spider,
    NiSpider,
    SpiderOneLevel,
    NiSpiderTwoLevel,
    Strawman,
}

impl StructureKind {
    pub const ALL: [StructureKind; 5] = [
        StructureKind::Spider,
        StructureKind::NiSpider,
        StructureKind::SpiderOneLevel,
        StructureKind::NiSpiderTwoLevel,
        StructureKind::Strawman,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureKind::Spider => "spider",
            StructureKind::NiSpider => "ni-spider",
            StructureKind::SpiderOneLevel => "spider-1L-select",
            StructureKind::NiSpiderTwoLevel => "ni-spider-2L-select",
            StructureKind::Strawman => "strawman",
        }
    }

    /// Whether select queries start from an interpolated prediction.
    pub fn has_predictions(self) -> bool {
        !matches!(self, StructureKind::Strawman)
    }

    pub fn build(self, bv: &BitVector) -> AnyIndex {
        match self {
            StructureKind::Spider => AnyIndex::Spider(SpiderIndex::build(bv)),
            StructureKind::NiSpider => AnyIndex::NiSpider(NiSpiderIndex::build(bv)),
            StructureKind::SpiderOneLevel => {
                AnyIndex::SpiderOneLevel(SpiderOneLevelIndex::build(bv))
            }
            StructureKind::NiSpiderTwoLevel => {
                AnyIndex::NiSpiderTwoLevel(NiSpiderTwoLevelIndex::build(bv))
            }
            StructureKind::Strawman => AnyIndex::Strawman(StrawmanIndex::build(bv)),
        }
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StructureKind::ALL
            .iter()
            .copied()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<&str> = StructureKind::ALL.iter().map(|k| k.name()).collect();
                format!(
                    "unknown structure {s:?} (expected one of: {})",
                    names.join(", ")
                )
            })
    }
}

/// A built index of any structure kind, with a uniform query surface.
#[derive(Clone, Debug)]
pub enum AnyIndex {
    Spider(SpiderIndex),
    NiSpider(NiSpiderIndex),
    SpiderOneLevel(SpiderOneLevelIndex),
    NiSpiderTwoLevel(NiSpiderTwoLevelIndex),
    Strawman(StrawmanIndex),
}

macro_rules! dispatch {
    ($self:expr, $idx:ident => $body:expr) => {
        match $self {
            AnyIndex::Spider($idx) => $body,
            AnyIndex::NiSpider($idx) => $body,
            AnyIndex::SpiderOneLevel($idx) => $body,
            AnyIndex::NiSpiderTwoLevel($idx) => $body,
            AnyIndex::Strawman($idx) => $body,
        }
    };
}

impl AnyIndex {
    pub fn kind(&self) -> StructureKind {
        match self {
            AnyIndex::Spider(_) => StructureKind::Spider,
            AnyIndex::NiSpider(_) => StructureKind::NiSpider,
            AnyIndex::SpiderOneLevel(_) => StructureKind::SpiderOneLevel,
            AnyIndex::NiSpiderTwoLevel(_) => StructureKind::NiSpiderTwoLevel,
            AnyIndex::Strawman(_) => StructureKind::Strawman,
        }
    }

    pub fn len(&self) -> u64 {
        dispatch!(self, idx => idx.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn count_ones(&self) -> u64 {
        dispatch!(self, idx => idx.count_ones())
    }

    #[inline]
    pub fn rank(&self, i: u64) -> u64 {
        dispatch!(self, idx => idx.rank(i))
    }

    #[inline]
    pub fn select(&self, j: u64) -> Option<u64> {
        dispatch!(self, idx => idx.select(j))
    }

    #[inline]
    pub fn select_instrumented(&self, j: u64) -> Option<(u64, u64)> {
        dispatch!(self, idx => idx.select_instrumented(j))
    }

    pub fn space(&self) -> SpaceReport {
        dispatch!(self, idx => idx.space())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen;
    use crate::oracle;

    #[test]
    fn primary_configs_match_primary_indexes() {
        let bv = datagen::random_bits(200_000, 0.4, 41);
        let spider = SpiderIndex::build(&bv);
        let via_config = build_variant(
            &bv,
            VariantConfig {
                rank_layout: RankLayout::Interleaved,
                select_levels: SelectLevels::Two,
            },
        );
        let ni = NiSpiderIndex::build(&bv);
        let ni_via_config = build_variant(
            &bv,
            VariantConfig {
                rank_layout: RankLayout::Flat,
                select_levels: SelectLevels::One,
            },
        );
        for i in (0..bv.len()).step_by(37) {
            assert_eq!(via_config.rank(i), spider.rank(i));
            assert_eq!(ni_via_config.rank(i), ni.rank(i));
        }
        for j in 1..=bv.count_ones().min(5000) {
            assert_eq!(via_config.select(j), spider.select(j));
            assert_eq!(ni_via_config.select(j), ni.select(j));
        }
    }

    #[test]
    fn all_variants_agree_with_oracle() {
        let bv = datagen::random_bits(1_000_000, 0.5, 43);
        let indexes: Vec<AnyIndex> = StructureKind::ALL.iter().map(|k| k.build(&bv)).collect();
        let mut expected_rank = 0u64;
        let mut seen_ones = 0u64;
        for i in 0..bv.len() {
            if bv.get(i) {
                expected_rank += 1;
                seen_ones += 1;
            }
            if i % 1009 == 0 {
                for idx in &indexes {
                    assert_eq!(idx.rank(i), expected_rank, "{} rank({i})", idx.kind());
                }
            }
            if bv.get(i) && seen_ones.is_multiple_of(997) {
                for idx in &indexes {
                    assert_eq!(
                        idx.select(seen_ones),
                        Some(i),
                        "{} select({seen_ones})",
                        idx.kind()
                    );
                }
            }
        }
    }

    #[test]
    fn strawman_rank_and_select_identity() {
        let idx = StrawmanIndex::build(&BitVector::ones(100_000));
        assert_eq!(idx.rank(511), 512);
        assert_eq!(idx.select(513), Some(512));
    }

    #[test]
    fn strawman_matches_oracle_on_sparse_vector() {
        let bv = datagen::random_bits(400_000, 0.1, 47);
        let idx = StrawmanIndex::build(&bv);
        for i in (0..bv.len()).step_by(211) {
            assert_eq!(idx.rank(i), oracle::rank(&bv, i));
        }
        let all: Vec<u64> = (1..=bv.count_ones()).collect();
        let want = oracle::select_many(&bv, &all);
        for (j, want) in all.iter().zip(want) {
            assert_eq!(idx.select(*j), want, "j={j}");
        }
        assert_eq!(idx.select(bv.count_ones() + 1), None);
    }

    #[test]
    fn variant_space_overheads() {
        let bv = datagen::random_bits(63488 * 16 * 8, 0.5, 53);
        let one_level = SpiderOneLevelIndex::build(&bv).space().overhead_pct();
        assert!((3.3..=3.83).contains(&one_level), "spider-1L {one_level}");
        let two_level = NiSpiderTwoLevelIndex::build(&bv).space().overhead_pct();
        assert!((3.2..=3.83).contains(&two_level), "ni-2L {two_level}");
        let strawman = StrawmanIndex::build(&bv).space().overhead_pct();
        assert!((12.5..=13.3).contains(&strawman), "strawman {strawman}");
    }

    #[test]
    fn structure_names_round_trip() {
        for kind in StructureKind::ALL {
            assert_eq!(kind.name().parse::<StructureKind>().unwrap(), kind);
        }
        assert!("SPIDER".parse::<StructureKind>().is_ok());
        assert!("nope".parse::<StructureKind>().is_err());
    }
}
