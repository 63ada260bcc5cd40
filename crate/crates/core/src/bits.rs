//! Plain bit-vector storage.

use crate::broadword::select_in_word;
use std::fmt;

/// An immutable sequence of bits stored LSB-first in 64-bit words.
///
/// Bit `i` lives at bit position `i % 64` of word `i / 64`. Bits at
/// positions `>= len()` are always zero, so whole-word operations never need
/// to mask the tail. The vector is plain storage: all indexing structures
/// are built on top of it.
///
/// ```
/// use spider_core::BitVector;
///
/// let bv = BitVector::from_words(vec![0b1101], 4);
/// assert_eq!(bv.len(), 4);
/// assert_eq!(bv.count_ones(), 3);
/// assert!(bv.get(0) && !bv.get(1) && bv.get(2) && bv.get(3));
/// ```
#[derive(Clone, PartialEq, Eq)]
pub struct BitVector {
    words: Vec<u64>,
    n: u64,
    n1: u64,
}

impl BitVector {
    /// Builds a vector of `n` bits from raw words, truncating or
    /// zero-extending the word list to exactly `ceil(n / 64)` entries and
    /// clearing any bits at positions `>= n`.
    pub fn from_words(mut words: Vec<u64>, n: u64) -> Self {
        let needed = n.div_ceil(64) as usize;
        words.resize(needed, 0);
        if !n.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last &= !0u64 >> (64 - n % 64);
            }
        }
        let n1 = words.iter().map(|w| w.count_ones() as u64).sum();
        BitVector { words, n, n1 }
    }

    /// Collects bits from an iterator, LSB-first.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut n = 0u64;
        let mut current = 0u64;
        for bit in bits {
            if bit {
                current |= 1u64 << (n % 64);
            }
            n += 1;
            if n.is_multiple_of(64) {
                words.push(current);
                current = 0;
            }
        }
        if !n.is_multiple_of(64) {
            words.push(current);
        }
        BitVector::from_words(words, n)
    }

    /// `n` bits, all set.
    pub fn ones(n: u64) -> Self {
        BitVector::from_words(vec![u64::MAX; n.div_ceil(64) as usize], n)
    }

    /// `n` bits, all clear.
    pub fn zeros(n: u64) -> Self {
        BitVector::from_words(Vec::new(), n)
    }

    /// Number of bits.
    #[inline]
    pub fn len(&self) -> u64 {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of set bits, cached at construction.
    #[inline]
    pub fn count_ones(&self) -> u64 {
        self.n1
    }

    /// The bit at position `i`.
    ///
    /// Panics if `i >= len()`.
    #[inline]
    pub fn get(&self, i: u64) -> bool {
        assert!(i < self.n, "bit index {i} out of range (len {})", self.n);
        self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    /// Backing words, exactly `ceil(len() / 64)` of them.
    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BitVector")
            .field("len", &self.n)
            .field("ones", &self.n1)
            .finish()
    }
}

/// Reads 64 bits starting at an arbitrary bit offset, zero-filling past the
/// end of `words`.
#[inline]
pub(crate) fn read_word_at(words: &[u64], pos: u64) -> u64 {
    let wi = (pos / 64) as usize;
    let off = (pos % 64) as u32;
    let lo = words.get(wi).copied().unwrap_or(0) >> off;
    if off == 0 {
        lo
    } else {
        lo | words.get(wi + 1).copied().unwrap_or(0) << (64 - off)
    }
}

/// Positions of the set bits with the given one-based ranks, in one pass.
///
/// `ranks` must be sorted ascending (duplicates allowed) and every entry must
/// be at most the total number of set bits in `words`.
pub(crate) fn select_positions(words: &[u64], ranks: &[u64]) -> Vec<u64> {
    debug_assert!(ranks.windows(2).all(|p| p[0] <= p[1]));
    debug_assert!(ranks.first().is_none_or(|&r| r >= 1));
    let mut out = Vec::with_capacity(ranks.len());
    let mut next = 0usize;
    let mut cum = 0u64;
    for (wi, &w) in words.iter().enumerate() {
        if next == ranks.len() {
            break;
        }
        let cnt = w.count_ones() as u64;
        while next < ranks.len() && ranks[next] <= cum + cnt {
            let within = (ranks[next] - cum) as u32;
            out.push(wi as u64 * 64 + select_in_word(w, within) as u64);
            next += 1;
        }
        cum += cnt;
    }
    assert!(next == ranks.len(), "sample rank exceeds total ones");
    out
}
