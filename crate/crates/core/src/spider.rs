//! The interleaved rank/select index.
//!
//! Rank side: a 64-bit cumulative count per 63488-bit superblock plus a
//! rewritten bit vector whose 512-bit blocks each carry a 16-bit local rank
//! in front of 496 payload bits. A rank query reads one rank-array entry and
//! one block, and needs one division plus one shift to locate them.
//!
//! Select side: a two-level sampled array. The high level stores, for every
//! `sigma_h`-th set bit, the nearest superblock index; the low level stores,
//! for every `sigma_l`-th set bit, its 16-bit offset within its superblock.
//! Queries warm-start a superblock scan from the high sample, interpolate a
//! predicted position between the two bracketing low samples, and correct
//! the prediction with a block-by-block scan of the rewritten vector.
//!
//! The source vector is zero-padded to a whole number of superblocks during
//! the build, and is no longer needed afterwards: its bits live in the block
//! payloads.

use crate::bits::BitVector;
use crate::block::BasicBlock;
use crate::layout::{InterleavedRank, RankStore};
use crate::select::TwoLevelSelect;
use crate::space::{SpaceComponent, SpaceReport};

/// Interleaved rank metadata with two-level predictive select.
///
/// ```
/// use spider_core::{BitVector, SpiderIndex};
///
/// let bv = BitVector::from_bits((0..100_000).map(|i| i % 3 == 0));
/// let idx = SpiderIndex::build(&bv);
/// assert_eq!(idx.rank(8), 3);
/// assert_eq!(idx.select(2), Some(3));
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpiderIndex {
    ranks: InterleavedRank,
    select: TwoLevelSelect,
}

impl SpiderIndex {
    /// Two passes: one linear scan builds the rank array and the rewritten
    /// blocks (and yields the ones count), a second pass samples the select
    /// arrays.
    ///
    /// Panics on an empty vector.
    pub fn build(bv: &BitVector) -> Self {
        let ranks = InterleavedRank::build(bv);
        let select = TwoLevelSelect::build(&ranks, bv.words());
        SpiderIndex { ranks, select }
    }

    /// Number of bits in the indexed vector.
    pub fn len(&self) -> u64 {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.len() == 0
    }

    /// Number of set bits.
    pub fn count_ones(&self) -> u64 {
        self.ranks.ones()
    }

    /// Number of set bits among positions `0..=i`.
    ///
    /// Panics if `i >= len()`.
    #[inline]
    pub fn rank(&self, i: u64) -> u64 {
        self.ranks.rank(i)
    }

    /// Position of the `j`-th set bit (`j` one-based), or `None` if `j` is
    /// not in `1..=count_ones()`.
    #[inline]
    pub fn select(&self, j: u64) -> Option<u64> {
        self.select_instrumented(j).map(|(pos, _)| pos)
    }

    /// `select` plus the number of blocks the correction scan visited beyond
    /// the final one (0 when the predicted block was already correct).
    #[inline]
    pub fn select_instrumented(&self, j: u64) -> Option<(u64, u64)> {
        if j == 0 || j > self.ranks.ones() {
            return None;
        }
        Some(self.select.query(&self.ranks, j))
    }

    /// Sizes of everything stored beyond the raw data bits. The rewritten
    /// vector is charged for its excess over the logical bits: 16 bits of
    /// local rank per block plus the padding to a whole superblock.
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
                    name: "high-select",
                    bits: 64 * self.select.high().len() as u64,
                },
                SpaceComponent {
                    name: "low-select",
                    bits: 16 * self.select.low().len() as u64,
                },
            ],
            data_bits: n,
        }
    }

    pub fn sigma_high(&self) -> u64 {
        self.select.sigma_high()
    }

    pub fn sigma_low(&self) -> u64 {
        self.select.sigma_low()
    }

    /// Cumulative counts per superblock, with the sentinel total at the end.
    pub fn rank_array(&self) -> &[u64] {
        self.ranks.rank_array()
    }

    /// The 16-bit count interleaved in front of block `b`'s payload.
    pub fn local_rank(&self, b: u64) -> u64 {
        self.ranks.local_rank(b)
    }

    pub fn high_select(&self) -> &[u64] {
        self.select.high()
    }

    pub fn low_select(&self) -> &[u16] {
        self.select.low()
    }

    pub(crate) fn blocks(&self) -> &[BasicBlock] {
        self.ranks.blocks()
    }

    pub(crate) fn from_parts(ranks: InterleavedRank, select: TwoLevelSelect) -> Self {
        SpiderIndex { ranks, select }
    }
}
