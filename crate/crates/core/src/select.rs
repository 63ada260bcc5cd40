//! Sampled select arrays and prediction-guided block scans.
//!
//! Select is rank-based: sampled positions of set bits narrow the search,
//! the rank metadata identifies the block that holds the answer, and an
//! in-block select finishes. Instead of scanning from the nearest sample,
//! the scan starts from an interpolated prediction: between two samples that
//! bracket the query, set bits are assumed evenly spaced, so the predicted
//! position is a fixed-point interpolation between the bracketing samples.
//! The scan then corrects the prediction block by block; the number of
//! blocks it visits beyond the final one is reported as the prediction
//! error.
//!
//! Two shapes are provided. The one-level array stores absolute 64-bit
//! positions every `sigma` set bits. The two-level shape splits the sample
//! into a small high array (nearest superblock per `sigma_h` set bits) and a
//! dense low array (16-bit offset within its superblock per `sigma_l` set
//! bits), sampling roughly four times as densely in the same space.

use crate::bits::select_positions;
use crate::layout::RankStore;

/// Smallest power of two `>= num / den`, at least 1. Sampling thresholds
/// are powers of two so the index arithmetic divides with shifts.
pub(crate) fn sigma_pow2(num: u128, den: u128) -> u64 {
    debug_assert!(den > 0);
    let mut p = 1u64;
    while (p as u128) * den < num {
        p *= 2;
    }
    p
}

/// Truncating signed division by a power of two (round toward zero).
#[inline]
fn div_pow2(v: i64, log2: u32) -> i64 {
    if v >= 0 {
        v >> log2
    } else {
        -(-v >> log2)
    }
}

/// Walks block by block from `guess` until the block containing the `j`-th
/// set bit is found, then selects within it. Returns the absolute position
/// and the number of blocks visited beyond the final one.
#[inline]
fn scan_blocks<R: RankStore>(store: &R, j: u64, guess: u64) -> (u64, u64) {
    let mut b = guess;
    while store.ones_before_block(b) >= j {
        b -= 1;
    }
    let last = store.block_count() - 1;
    while b < last && store.ones_before_block(b + 1) < j {
        b += 1;
    }
    let k = j - store.ones_before_block(b);
    (store.select_in_block_at(b, k), guess.abs_diff(b))
}

/// Absolute sampled positions every `sigma` set bits.
///
/// Entry `i` holds the position of set bit `sigma * i` for `i >= 1`; entry 0
/// holds 0 (set bit zero does not exist, and the scan absorbs the resulting
/// error for queries below the first sample); the final entry holds the
/// position of the last set bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct OneLevelSelect {
    sigma: u64,
    sigma_log2: u32,
    samples: Vec<u64>,
}

/// Entry budget divisor for the one-level threshold: `sigma` is the smallest
/// power of two keeping the array at `n / 16384` entries or fewer.
const ONE_LEVEL_BUDGET: u64 = 16384;

impl OneLevelSelect {
    pub fn build<R: RankStore>(store: &R, source_words: &[u64]) -> Self {
        let n1 = store.ones();
        let sigma = sigma_pow2(ONE_LEVEL_BUDGET as u128 * n1 as u128, store.len() as u128);
        let mut samples = Vec::new();
        if n1 > 0 {
            let top = n1 / sigma;
            let ranks: Vec<u64> = (1..=top).map(|i| i * sigma).chain([n1]).collect();
            samples.reserve(ranks.len() + 1);
            samples.push(0);
            samples.extend(select_positions(source_words, &ranks));
        }
        OneLevelSelect {
            sigma,
            sigma_log2: sigma.trailing_zeros(),
            samples,
        }
    }

    /// Position of the `j`-th set bit and the block-scan error.
    /// Caller guarantees `1 <= j <= ones`.
    #[inline]
    pub fn query<R: RankStore>(&self, store: &R, j: u64) -> (u64, u64) {
        let idx = (j >> self.sigma_log2) as usize;
        let a = self.samples[idx];
        let b = self.samples[idx + 1];
        let count = j - (idx as u64) * self.sigma;
        // widen: (b - a) * count can exceed 64 bits near the top of the
        // address space
        let interp = (((b - a) as u128 * count as u128) >> self.sigma_log2) as u64;
        let p = (a + interp).min(store.padded_len() - 1);
        scan_blocks(store, j, p / R::BLOCK_SPAN)
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn samples(&self) -> &[u64] {
        &self.samples
    }

    pub(crate) fn from_parts(sigma: u64, samples: Vec<u64>) -> Self {
        debug_assert!(sigma.is_power_of_two());
        OneLevelSelect {
            sigma,
            sigma_log2: sigma.trailing_zeros(),
            samples,
        }
    }
}

/// Two-level sample: superblock guesses every `sigma_high` set bits, 16-bit
/// superblock offsets every `sigma_low` set bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct TwoLevelSelect {
    sigma_high: u64,
    sigma_high_log2: u32,
    sigma_low: u64,
    sigma_low_log2: u32,
    /// Entry `i`: nearest superblock to set bit `i * sigma_high + 1`,
    /// clamped to the last superblock; final entry pinned to the last
    /// superblock.
    high: Vec<u64>,
    /// Entry `i`: superblock offset of set bit `i * sigma_low` (entry 0
    /// holds 0); final entry: offset of the last set bit.
    low: Vec<u16>,
}

/// Entry budget divisor for the low threshold. The 0.99 factor keeps the
/// threshold from doubling when the ones density lands just above one half.
const LOW_BUDGET: u64 = 4096;
const LOW_MARGIN_NUM: u128 = 99;
const LOW_MARGIN_DEN: u128 = 100;

impl TwoLevelSelect {
    pub fn build<R: RankStore>(store: &R, source_words: &[u64]) -> Self {
        let n1 = store.ones();
        let n = store.len();
        let span = R::SUPERBLOCK_SPAN;
        let sigma_high = sigma_pow2(span as u128 * n1 as u128, n as u128);
        let sigma_low = sigma_pow2(
            LOW_BUDGET as u128 * LOW_MARGIN_NUM * n1 as u128,
            LOW_MARGIN_DEN * n as u128,
        );
        let mut high = Vec::new();
        let mut low = Vec::new();
        if n1 > 0 {
            let last_superblock = store.superblock_count() - 1;
            let top = (n1 - 1) / sigma_high;
            let ranks: Vec<u64> = (0..=top).map(|i| i * sigma_high + 1).collect();
            high.reserve(ranks.len() + 1);
            high.extend(
                select_positions(source_words, &ranks)
                    .iter()
                    .map(|&pos| ((pos + span / 2) / span).min(last_superblock)),
            );
            high.push(last_superblock);

            let top = n1 / sigma_low;
            let ranks: Vec<u64> = (1..=top).map(|i| i * sigma_low).chain([n1]).collect();
            low.reserve(ranks.len() + 1);
            low.push(0);
            low.extend(
                select_positions(source_words, &ranks)
                    .iter()
                    .map(|&pos| (pos % span) as u16),
            );
        }
        TwoLevelSelect {
            sigma_high,
            sigma_high_log2: sigma_high.trailing_zeros(),
            sigma_low,
            sigma_low_log2: sigma_low.trailing_zeros(),
            high,
            low,
        }
    }

    /// Position of the `j`-th set bit and the block-scan error.
    /// Caller guarantees `1 <= j <= ones`.
    #[inline]
    pub fn query<R: RankStore>(&self, store: &R, j: u64) -> (u64, u64) {
        let s0 = self.high[((j - 1) >> self.sigma_high_log2) as usize];
        let s = find_superblock(store, j, s0);
        let p = self.predict(store, j, s);
        scan_blocks(store, j, p / R::BLOCK_SPAN)
    }

    /// Interpolated guess for the position of set bit `j`, known to lie in
    /// superblock `s`. Clamped to the padded vector.
    #[inline]
    fn predict<R: RankStore>(&self, store: &R, j: u64, s: u64) -> u64 {
        let span = R::SUPERBLOCK_SPAN as i64;
        let l = ((j - 1) >> self.sigma_low_log2) as usize;
        let mut a = self.low[l] as i64;
        let mut b = self.low[l + 1] as i64;
        if b < a {
            // The bracketing samples straddle a superblock boundary. Decide
            // which side sits outside superblock s and shift it by a whole
            // superblock so the interpolation stays in s's coordinates: if
            // at least sigma_low * l set bits lie before s, the lower sample
            // is in an earlier superblock.
            if store.ones_before_superblock(s) >= (l as u64) << self.sigma_low_log2 {
                a -= span;
            } else {
                b += span;
            }
        }
        let count = (j - ((l as u64) << self.sigma_low_log2)) as i64;
        let p = s as i64 * span + a + div_pow2((b - a) * count, self.sigma_low_log2);
        p.clamp(0, store.padded_len() as i64 - 1) as u64
    }

    pub fn sigma_high(&self) -> u64 {
        self.sigma_high
    }

    pub fn sigma_low(&self) -> u64 {
        self.sigma_low
    }

    pub fn high(&self) -> &[u64] {
        &self.high
    }

    pub fn low(&self) -> &[u16] {
        &self.low
    }

    pub(crate) fn from_parts(
        sigma_high: u64,
        sigma_low: u64,
        high: Vec<u64>,
        low: Vec<u16>,
    ) -> Self {
        debug_assert!(sigma_high.is_power_of_two() && sigma_low.is_power_of_two());
        TwoLevelSelect {
            sigma_high,
            sigma_high_log2: sigma_high.trailing_zeros(),
            sigma_low,
            sigma_low_log2: sigma_low.trailing_zeros(),
            high,
            low,
        }
    }
}

/// Rank-array scan for the superblock holding set bit `j`, warm-started at
/// `s0`: the result satisfies `ones_before(s) < j <= ones_before(s + 1)`,
/// where the sentinel entry makes `s + 1` always readable.
#[inline]
pub(crate) fn find_superblock<R: RankStore>(store: &R, j: u64, s0: u64) -> u64 {
    let mut s = s0;
    while store.ones_before_superblock(s) >= j {
        s -= 1;
    }
    while store.ones_before_superblock(s + 1) < j {
        s += 1;
    }
    s
}
