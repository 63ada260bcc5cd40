//! The non-interleaved rank/select index.
//!
//! The vector itself stays untouched. Rank metadata lives in two flat
//! arrays: a 64-bit cumulative count per 65536-bit superblock and a 16-bit
//! local rank per aligned 512-bit block. Every span is a power of two, so
//! rank queries use shifts only.
//!
//! Select uses a single-level sampled array of absolute 64-bit positions,
//! one per `sigma` set bits. A query interpolates a predicted position
//! between the two bracketing samples and corrects it by scanning the local
//! rank array, which packs 32 block counts per cache line; the block scan is
//! therefore cheap even when the prediction is off.

use crate::bits::BitVector;
use crate::layout::{FlatRank, RankStore};
use crate::select::OneLevelSelect;
use crate::space::{SpaceComponent, SpaceReport};

/// Flat two-level rank arrays plus one-level predictive select.
///
/// ```
/// use spider_core::{BitVector, NiSpiderIndex};
///
/// let bv = BitVector::from_bits((0..100_000).map(|i| i % 5 == 1));
/// let idx = NiSpiderIndex::build(&bv);
/// assert_eq!(idx.rank(10), 2);
/// assert_eq!(idx.select(2), Some(6));
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiSpiderIndex {
    ranks: FlatRank,
    select: OneLevelSelect,
}

impl NiSpiderIndex {
    /// One scan fills both rank arrays; a second samples the select array.
    ///
    /// Panics on an empty vector.
    pub fn build(bv: &BitVector) -> Self {
        let ranks = FlatRank::build(bv);
        let select = OneLevelSelect::build(&ranks, bv.words());
        NiSpiderIndex { ranks, select }
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
    /// the final one.
    #[inline]
    pub fn select_instrumented(&self, j: u64) -> Option<(u64, u64)> {
        if j == 0 || j > self.ranks.ones() {
            return None;
        }
        Some(self.select.query(&self.ranks, j))
    }

    /// Sizes of the three metadata arrays plus the zero padding appended to
    /// the stored vector.
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
                    name: "select-array",
                    bits: 64 * self.select.samples().len() as u64,
                },
                SpaceComponent {
                    name: "padding",
                    bits: self.ranks.padded_len() - n,
                },
            ],
            data_bits: n,
        }
    }

    pub fn sigma(&self) -> u64 {
        self.select.sigma()
    }

    pub fn l1_rank(&self) -> &[u64] {
        self.ranks.l1()
    }

    pub fn l2_rank(&self) -> &[u16] {
        self.ranks.l2()
    }

    pub fn select_array(&self) -> &[u64] {
        self.select.samples()
    }

    pub(crate) fn words(&self) -> &[u64] {
        self.ranks.words()
    }

    pub(crate) fn from_parts(ranks: FlatRank, select: OneLevelSelect) -> Self {
        NiSpiderIndex { ranks, select }
    }
}
