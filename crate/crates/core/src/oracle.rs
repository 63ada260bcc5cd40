//! Linear-scan reference answers for rank and select.
//!
//! These are the ground truth that every index is checked against, in
//! property tests and in the `verify` command. They deliberately share no
//! code with the indexed query paths: whole-word popcounts for skipping and
//! per-bit loops for the final word are all they use. They may be O(n) per
//! query.

use crate::bits::BitVector;

/// Number of set bits among positions `0..=i`.
///
/// Panics if `i >= bv.len()`.
pub fn rank(bv: &BitVector, i: u64) -> u64 {
    assert!(
        i < bv.len(),
        "rank index {i} out of range (len {})",
        bv.len()
    );
    let words = bv.words();
    let last = (i / 64) as usize;
    let mut total: u64 = words[..last].iter().map(|w| w.count_ones() as u64).sum();
    let mut w = words[last];
    for _ in 0..=(i % 64) {
        total += w & 1;
        w >>= 1;
    }
    total
}

/// `rank` extended to signed positions: negative positions count as an empty
/// prefix. Superblock and block boundary formulas subtract one from a
/// position that may be zero, and this keeps those expressions total.
pub fn rank_at(bv: &BitVector, pos: i64) -> u64 {
    if pos < 0 {
        0
    } else {
        rank(bv, pos as u64)
    }
}

/// Position of the `j`-th set bit (`j` one-based), or `None` if `j` is not
/// in `1..=count_ones()`.
pub fn select(bv: &BitVector, j: u64) -> Option<u64> {
    if j == 0 || j > bv.count_ones() {
        return None;
    }
    let mut remaining = j;
    for (wi, &w) in bv.words().iter().enumerate() {
        let cnt = w.count_ones() as u64;
        if remaining <= cnt {
            let mut w = w;
            let mut bit = 0u64;
            loop {
                if w & 1 == 1 {
                    remaining -= 1;
                    if remaining == 0 {
                        return Some(wi as u64 * 64 + bit);
                    }
                }
                w >>= 1;
                bit += 1;
            }
        }
        remaining -= cnt;
    }
    unreachable!("cached ones count disagrees with words");
}

/// Answers many rank queries in one scan. Queries may be in any order;
/// results line up with the input.
pub fn rank_many(bv: &BitVector, positions: &[u64]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..positions.len()).collect();
    order.sort_by_key(|&q| positions[q]);
    let mut out = vec![0u64; positions.len()];
    let mut cum = 0u64;
    let mut done_words = 0usize;
    let words = bv.words();
    for q in order {
        let i = positions[q];
        assert!(i < bv.len(), "rank index {i} out of range");
        let target_word = (i / 64) as usize;
        while done_words < target_word {
            cum += words[done_words].count_ones() as u64;
            done_words += 1;
        }
        let mut total = cum;
        let mut w = words[target_word];
        for _ in 0..=(i % 64) {
            total += w & 1;
            w >>= 1;
        }
        out[q] = total;
    }
    out
}

/// Answers many select queries in one scan. Queries may be in any order;
/// results line up with the input.
pub fn select_many(bv: &BitVector, ranks: &[u64]) -> Vec<Option<u64>> {
    let mut order: Vec<usize> = (0..ranks.len()).collect();
    order.sort_by_key(|&q| ranks[q]);
    let mut out = vec![None; ranks.len()];
    let words = bv.words();
    let mut cum = 0u64;
    let mut done_words = 0usize;
    for q in order {
        let j = ranks[q];
        if j == 0 || j > bv.count_ones() {
            continue;
        }
        while done_words < words.len() && cum + (words[done_words].count_ones() as u64) < j {
            cum += words[done_words].count_ones() as u64;
            done_words += 1;
        }
        let mut seen = cum;
        let w = words[done_words];
        for bit in 0..64 {
            if w >> bit & 1 == 1 {
                seen += 1;
                if seen == j {
                    out[q] = Some(done_words as u64 * 64 + bit);
                    break;
                }
            }
        }
    }
    out
}
