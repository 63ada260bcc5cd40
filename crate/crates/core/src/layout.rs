//! Rank metadata layouts.
//!
//! Both layouts follow the same plan: a 64-bit cumulative count per
//! superblock plus a 16-bit local rank per 512-bit basic block, where a
//! superblock is 128 basic blocks so the block index yields the superblock
//! index with a right shift by 7.
//!
//! The interleaved layout stores each local rank inside its block: the block
//! keeps 16 bits of count followed by 496 payload bits, and the rewritten
//! block sequence replaces the original vector. A rank query touches one
//! rank-array entry and one block.
//!
//! The flat layout leaves the vector untouched and keeps the local ranks in
//! a side array over aligned 512-bit blocks. It spends an extra memory
//! access per rank query, but block scans walk the compact side array
//! instead of the blocks themselves.

use crate::bits::{read_word_at, BitVector};
use crate::block::{rank_in_block, select_in_block, BasicBlock, BLOCK_WORDS, LOCAL_RANK_BITS};

/// Basic blocks per superblock; fixed so block -> superblock is a shift.
pub(crate) const BLOCKS_PER_SUPERBLOCK: u64 = 128;
pub(crate) const BLOCKS_PER_SUPERBLOCK_LOG2: u32 = 7;

/// Query-side view of a rank layout, shared by the select scans.
pub(crate) trait RankStore {
    /// Source bits spanned by one basic block (496 interleaved, 512 flat).
    const BLOCK_SPAN: u64;
    /// Source bits spanned by one superblock, `128 * BLOCK_SPAN`.
    const SUPERBLOCK_SPAN: u64;

    fn len(&self) -> u64;
    fn ones(&self) -> u64;
    fn padded_len(&self) -> u64;
    fn superblock_count(&self) -> u64;
    fn block_count(&self) -> u64;
    /// Set bits strictly before superblock `s`; `s == superblock_count()`
    /// reads the sentinel and gives the total.
    fn ones_before_superblock(&self, s: u64) -> u64;
    /// Set bits strictly before block `b`.
    fn ones_before_block(&self, b: u64) -> u64;
    /// Absolute position of the `k`-th set bit inside block `b` (one-based
    /// `k`, which must not exceed the block's population).
    fn select_in_block_at(&self, b: u64, k: u64) -> u64;
}

/// Rank metadata interleaved with the payload bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct InterleavedRank {
    /// One cumulative count per superblock, plus a sentinel holding the
    /// total so scans can always read entry `s + 1`.
    rank_array: Vec<u64>,
    /// The rewritten vector: local rank + 496 payload bits per block.
    blocks: Vec<BasicBlock>,
    n: u64,
    n1: u64,
}

impl InterleavedRank {
    pub const BLOCK_SPAN: u64 = 496;
    pub const SUPERBLOCK_SPAN: u64 = Self::BLOCK_SPAN * BLOCKS_PER_SUPERBLOCK; // 63488

    /// Single pass over the source words: emits each rewritten block and the
    /// superblock counts as it goes.
    pub fn build(bv: &BitVector) -> Self {
        let n = bv.len();
        assert!(n > 0, "cannot index an empty bit vector");
        let sb_count = n.div_ceil(Self::SUPERBLOCK_SPAN);
        let n_blocks = sb_count * BLOCKS_PER_SUPERBLOCK;
        let src = bv.words();
        let mut rank_array = Vec::with_capacity(sb_count as usize + 1);
        let mut blocks = Vec::with_capacity(n_blocks as usize);
        let mut total = 0u64;
        let mut local = 0u64;
        for b in 0..n_blocks {
            if b.is_multiple_of(BLOCKS_PER_SUPERBLOCK) {
                rank_array.push(total);
                local = 0;
            }
            // the tighter superblock bound keeps the count inside its 16-bit field
            debug_assert!(local < Self::SUPERBLOCK_SPAN);
            let base = b * Self::BLOCK_SPAN;
            let mut words = [0u64; BLOCK_WORDS];
            words[0] = local | (read_word_at(src, base) & 0xFFFF_FFFF_FFFF) << LOCAL_RANK_BITS;
            for (w, word) in words.iter_mut().enumerate().skip(1) {
                *word = read_word_at(src, base + 64 * w as u64 - LOCAL_RANK_BITS as u64);
            }
            let cnt = (words[0] >> LOCAL_RANK_BITS).count_ones() as u64
                + words[1..]
                    .iter()
                    .map(|w| w.count_ones() as u64)
                    .sum::<u64>();
            total += cnt;
            local += cnt;
            blocks.push(BasicBlock(words));
        }
        rank_array.push(total);
        InterleavedRank {
            rank_array,
            blocks,
            n,
            n1: total,
        }
    }

    /// One division (by the block span) and one shift (to the superblock).
    #[inline]
    pub fn rank(&self, i: u64) -> u64 {
        assert!(i < self.n, "rank index {i} out of range (len {})", self.n);
        let block = i / Self::BLOCK_SPAN;
        let superblock = block >> BLOCKS_PER_SUPERBLOCK_LOG2;
        let within = LOCAL_RANK_BITS + (i - block * Self::BLOCK_SPAN) as u32;
        let blk = &self.blocks[block as usize];
        self.rank_array[superblock as usize]
            + blk.local_rank()
            + rank_in_block(&blk.0, within, LOCAL_RANK_BITS) as u64
    }

    pub fn rank_array(&self) -> &[u64] {
        &self.rank_array
    }

    pub fn blocks(&self) -> &[BasicBlock] {
        &self.blocks
    }

    pub fn local_rank(&self, block: u64) -> u64 {
        self.blocks[block as usize].local_rank()
    }

    pub(crate) fn from_parts(
        rank_array: Vec<u64>,
        blocks: Vec<BasicBlock>,
        n: u64,
        n1: u64,
    ) -> Self {
        debug_assert_eq!(
            rank_array.len() as u64,
            n.div_ceil(Self::SUPERBLOCK_SPAN) + 1
        );
        debug_assert_eq!(
            blocks.len() as u64,
            n.div_ceil(Self::SUPERBLOCK_SPAN) * BLOCKS_PER_SUPERBLOCK
        );
        InterleavedRank {
            rank_array,
            blocks,
            n,
            n1,
        }
    }
}

impl RankStore for InterleavedRank {
    const BLOCK_SPAN: u64 = Self::BLOCK_SPAN;
    const SUPERBLOCK_SPAN: u64 = Self::SUPERBLOCK_SPAN;

    #[inline]
    fn len(&self) -> u64 {
        self.n
    }

    #[inline]
    fn ones(&self) -> u64 {
        self.n1
    }

    #[inline]
    fn padded_len(&self) -> u64 {
        self.blocks.len() as u64 * Self::BLOCK_SPAN
    }

    #[inline]
    fn superblock_count(&self) -> u64 {
        self.rank_array.len() as u64 - 1
    }

    #[inline]
    fn block_count(&self) -> u64 {
        self.blocks.len() as u64
    }

    #[inline]
    fn ones_before_superblock(&self, s: u64) -> u64 {
        self.rank_array[s as usize]
    }

    #[inline]
    fn ones_before_block(&self, b: u64) -> u64 {
        self.rank_array[(b >> BLOCKS_PER_SUPERBLOCK_LOG2) as usize]
            + self.blocks[b as usize].local_rank()
    }

    #[inline]
    fn select_in_block_at(&self, b: u64, k: u64) -> u64 {
        let off = select_in_block(&self.blocks[b as usize].0, k as u32, LOCAL_RANK_BITS);
        b * Self::BLOCK_SPAN + (off - LOCAL_RANK_BITS) as u64
    }
}

/// Rank metadata in flat side arrays beside the unmodified vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FlatRank {
    /// One cumulative count per superblock plus a sentinel total.
    l1: Vec<u64>,
    /// Local rank of each 512-bit block within its superblock.
    l2: Vec<u16>,
    /// The source words, zero-padded to a whole superblock.
    words: Vec<u64>,
    n: u64,
    n1: u64,
}

impl FlatRank {
    pub const BLOCK_SPAN: u64 = 512;
    pub const SUPERBLOCK_SPAN: u64 = Self::BLOCK_SPAN * BLOCKS_PER_SUPERBLOCK; // 65536

    pub fn build(bv: &BitVector) -> Self {
        let n = bv.len();
        assert!(n > 0, "cannot index an empty bit vector");
        let sb_count = n.div_ceil(Self::SUPERBLOCK_SPAN);
        let n_blocks = sb_count * BLOCKS_PER_SUPERBLOCK;
        let mut words = bv.words().to_vec();
        words.resize((n_blocks * Self::BLOCK_SPAN / 64) as usize, 0);
        let mut l1 = Vec::with_capacity(sb_count as usize + 1);
        let mut l2 = Vec::with_capacity(n_blocks as usize);
        let mut total = 0u64;
        let mut local = 0u64;
        for b in 0..n_blocks as usize {
            if (b as u64).is_multiple_of(BLOCKS_PER_SUPERBLOCK) {
                l1.push(total);
                local = 0;
            }
            debug_assert!(local < 1 << 16);
            l2.push(local as u16);
            let cnt: u64 = words[b * BLOCK_WORDS..(b + 1) * BLOCK_WORDS]
                .iter()
                .map(|w| w.count_ones() as u64)
                .sum();
            total += cnt;
            local += cnt;
        }
        l1.push(total);
        FlatRank {
            l1,
            l2,
            words,
            n,
            n1: total,
        }
    }

    /// Shifts only: block and superblock spans are powers of two.
    #[inline]
    pub fn rank(&self, i: u64) -> u64 {
        assert!(i < self.n, "rank index {i} out of range (len {})", self.n);
        let block = (i / Self::BLOCK_SPAN) as usize;
        let superblock = (i / Self::SUPERBLOCK_SPAN) as usize;
        self.l1[superblock]
            + self.l2[block] as u64
            + rank_in_block(
                self.block_words(block as u64),
                (i % Self::BLOCK_SPAN) as u32,
                0,
            ) as u64
    }

    #[inline]
    fn block_words(&self, b: u64) -> &[u64; BLOCK_WORDS] {
        let start = b as usize * BLOCK_WORDS;
        self.words[start..start + BLOCK_WORDS].try_into().unwrap()
    }

    pub fn l1(&self) -> &[u64] {
        &self.l1
    }

    pub fn l2(&self) -> &[u16] {
        &self.l2
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_parts(l1: Vec<u64>, l2: Vec<u16>, words: Vec<u64>, n: u64, n1: u64) -> Self {
        debug_assert_eq!(l1.len() as u64, n.div_ceil(Self::SUPERBLOCK_SPAN) + 1);
        debug_assert_eq!(
            l2.len() as u64,
            n.div_ceil(Self::SUPERBLOCK_SPAN) * BLOCKS_PER_SUPERBLOCK
        );
        FlatRank {
            l1,
            l2,
            words,
            n,
            n1,
        }
    }
}

impl RankStore for FlatRank {
    const BLOCK_SPAN: u64 = Self::BLOCK_SPAN;
    const SUPERBLOCK_SPAN: u64 = Self::SUPERBLOCK_SPAN;

    #[inline]
    fn len(&self) -> u64 {
        self.n
    }

    #[inline]
    fn ones(&self) -> u64 {
        self.n1
    }

    #[inline]
    fn padded_len(&self) -> u64 {
        self.l2.len() as u64 * Self::BLOCK_SPAN
    }

    #[inline]
    fn superblock_count(&self) -> u64 {
        self.l1.len() as u64 - 1
    }

    #[inline]
    fn block_count(&self) -> u64 {
        self.l2.len() as u64
    }

    #[inline]
    fn ones_before_superblock(&self, s: u64) -> u64 {
        self.l1[s as usize]
    }

    #[inline]
    fn ones_before_block(&self, b: u64) -> u64 {
        self.l1[(b >> BLOCKS_PER_SUPERBLOCK_LOG2) as usize] + self.l2[b as usize] as u64
    }

    #[inline]
    fn select_in_block_at(&self, b: u64, k: u64) -> u64 {
        b * Self::BLOCK_SPAN + select_in_block(self.block_words(b), k as u32, 0) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn geometry_constants() {
        assert_eq!(InterleavedRank::SUPERBLOCK_SPAN, 63488);
        assert_eq!(63488, 128 * 496);
        assert_eq!(FlatRank::SUPERBLOCK_SPAN, 65536);
        assert_eq!(65536, 128 * 512);
        // block index -> superblock index via shift
        for b in [0u64, 1, 127, 128, 1000] {
            assert_eq!(b >> BLOCKS_PER_SUPERBLOCK_LOG2, b / 128);
        }
    }

    #[test]
    fn interleaved_build_one_dense_superblock() {
        let bv = BitVector::ones(63488);
        let idx = InterleavedRank::build(&bv);
        assert_eq!(idx.rank_array(), &[0, 63488]);
        for b in 0..idx.block_count() {
            assert_eq!(idx.local_rank(b), 496 * b);
        }
        assert_eq!(idx.rank(63487), 63488);
    }

    #[test]
    fn interleaved_build_all_zeros_two_superblocks() {
        let bv = BitVector::zeros(126976);
        let idx = InterleavedRank::build(&bv);
        assert_eq!(idx.rank_array(), &[0, 0, 0]);
        for b in 0..idx.block_count() {
            assert_eq!(idx.local_rank(b), 0);
        }
        assert_eq!(idx.rank(100_000), 0);
    }

    #[test]
    fn interleaved_payload_copies_source() {
        let bv = BitVector::from_bits((0..70_000).map(|i| i % 13 == 5));
        let idx = InterleavedRank::build(&bv);
        for i in (0..70_000).step_by(7) {
            let block = &idx.blocks()[(i / 496) as usize];
            let bit = i % 496 + 16;
            let got = block.0[(bit / 64) as usize] >> (bit % 64) & 1 == 1;
            assert_eq!(got, bv.get(i), "payload bit {i}");
        }
    }

    #[test]
    fn local_ranks_match_oracle() {
        let bv = BitVector::from_bits((0..200_000).map(|i| i % 3 == 1));
        let idx = InterleavedRank::build(&bv);
        for b in 0..idx.block_count() {
            let start = (b * 496) as i64;
            let sb_start = ((b >> 7) * 63488) as i64;
            let want = oracle::rank_at(&bv, (start - 1).min(bv.len() as i64 - 1))
                - oracle::rank_at(&bv, (sb_start - 1).min(bv.len() as i64 - 1));
            assert_eq!(idx.local_rank(b), want, "block {b}");
        }
    }

    #[test]
    fn interleaved_rank_matches_oracle() {
        let bv = BitVector::from_bits((0..130_000).map(|i| (i * 2654435761u64) % 10 < 3));
        let idx = InterleavedRank::build(&bv);
        for i in (0..bv.len()).step_by(101) {
            assert_eq!(idx.rank(i), oracle::rank(&bv, i), "i={i}");
        }
        assert_eq!(idx.rank(bv.len() - 1), bv.count_ones());
    }

    #[test]
    fn flat_build_one_dense_superblock() {
        let bv = BitVector::ones(65536);
        let idx = FlatRank::build(&bv);
        assert_eq!(idx.l1(), &[0, 65536]);
        for (b, &r) in idx.l2().iter().enumerate() {
            assert_eq!(r as usize, 512 * b);
        }
        assert_eq!(idx.rank(65535), 65536);
    }

    #[test]
    fn flat_rank_matches_oracle() {
        let bv = BitVector::from_bits(
            (0..140_000u64).map(|i| i.wrapping_mul(0x9E3779B97F4A7C15) % 10 < 9),
        );
        let idx = FlatRank::build(&bv);
        for i in (0..bv.len()).step_by(97) {
            assert_eq!(idx.rank(i), oracle::rank(&bv, i), "i={i}");
        }
    }

    #[test]
    fn ones_before_block_is_prefix_count() {
        let bv = BitVector::from_bits((0..150_000).map(|i| i % 7 < 2));
        let il = InterleavedRank::build(&bv);
        let fl = FlatRank::build(&bv);
        for b in (0..il.block_count()).step_by(13) {
            let start = (b * 496) as i64;
            assert_eq!(
                il.ones_before_block(b),
                oracle::rank_at(&bv, (start - 1).min(bv.len() as i64 - 1))
            );
        }
        for b in (0..fl.block_count()).step_by(13) {
            let start = (b * 512) as i64;
            assert_eq!(
                fl.ones_before_block(b),
                oracle::rank_at(&bv, (start - 1).min(bv.len() as i64 - 1))
            );
        }
    }

    #[test]
    #[should_panic(expected = "empty")]
    fn empty_input_rejected() {
        InterleavedRank::build(&BitVector::zeros(0));
    }
}
