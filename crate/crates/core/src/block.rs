//! Cache-line-sized blocks and rank/select scans inside them.
//!
//! A block is 512 bits (eight words). Searching within one never needs
//! metadata: a handful of popcounts resolves rank, and a running popcount
//! plus an in-word select resolves select. The `skip` parameter masks a
//! 16-bit count stored at the front of interleaved blocks; plain blocks pass
//! `skip = 0`.

use crate::broadword::select_in_word;

/// Words per 512-bit block.
pub const BLOCK_WORDS: usize = 8;

/// Bits reserved at the front of an interleaved block for its local rank.
pub const LOCAL_RANK_BITS: u32 = 16;

/// A 512-bit block aligned to a cache line.
///
/// In the interleaved layout, bits 0-15 of the first word hold the block's
/// local rank and the remaining 496 bits hold payload copied verbatim from
/// the source vector.
#[repr(C, align(64))]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasicBlock(pub [u64; BLOCK_WORDS]);

impl BasicBlock {
    pub const ZERO: BasicBlock = BasicBlock([0; BLOCK_WORDS]);

    /// The 16-bit count stored in the low bits of the first word.
    #[inline]
    pub fn local_rank(&self) -> u64 {
        self.0[0] & 0xFFFF
    }
}

/// Number of set bits among block bits `skip..=j`.
///
/// Bits below `skip` are masked out of the first word and bits above `j` are
/// shifted out of the last word; everything in between is whole-word
/// popcounts.
#[inline]
pub fn rank_in_block(words: &[u64; BLOCK_WORDS], j: u32, skip: u32) -> u32 {
    debug_assert!(skip == 0 || skip == LOCAL_RANK_BITS);
    debug_assert!(skip <= j && j < 512);
    let first_mask = !0u64 << skip;
    let last_mask = !0u64 >> (63 - j % 64);
    let last = (j / 64) as usize;
    if last == 0 {
        return (words[0] & first_mask & last_mask).count_ones();
    }
    let mut total = (words[0] & first_mask).count_ones();
    for w in &words[1..last] {
        total += w.count_ones();
    }
    total + (words[last] & last_mask).count_ones()
}

/// Offset (from block bit 0) of the `k`-th set bit at or after `skip`;
/// `k` is one-based.
///
/// Panics if the block holds fewer than `k` such bits: callers' scans
/// establish that the target bit is inside this block, so running out is a
/// bug upstream.
#[inline]
pub fn select_in_block(words: &[u64; BLOCK_WORDS], k: u32, skip: u32) -> u32 {
    debug_assert!(skip == 0 || skip == LOCAL_RANK_BITS);
    debug_assert!(k >= 1);
    let mut remaining = k;
    for (idx, &raw) in words.iter().enumerate() {
        let w = if idx == 0 { raw & (!0u64 << skip) } else { raw };
        let cnt = w.count_ones();
        if remaining <= cnt {
            return idx as u32 * 64 + select_in_word(w, remaining);
        }
        remaining -= cnt;
    }
    panic!("select_in_block: fewer than {k} ones at or after bit {skip}");
}
