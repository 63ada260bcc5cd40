//! In-word select: locating the k-th set bit of a 64-bit word.
//!
//! Two interchangeable paths are provided. On x86-64 with BMI2, a single
//! bit-deposit followed by a trailing-zero count finds the bit directly.
//! Everywhere else a byte-stepping fallback is used. Both paths return the
//! same result for every input, including the out-of-range sentinel.

/// Position (0-based, LSB-first) of the `k`-th set bit of `w`; `k` is
/// one-based.
///
/// Returns the sentinel 64 when `w` has fewer than `k` set bits. Query paths
/// guarantee `k <= w.count_ones()` before calling; the sentinel lets block
/// scans detect overflow without a separate popcount.
#[inline]
pub fn select_in_word(w: u64, k: u32) -> u32 {
    debug_assert!(k >= 1, "select rank is one-based");
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("bmi2") {
            return unsafe { select_in_word_bmi2(w, k) };
        }
    }
    select_in_word_portable(w, k)
}

/// Hardware path: deposit a lone bit at the `k`-th set position of `w`,
/// then read its offset with a trailing-zero count.
///
/// If `w` has fewer than `k` set bits the deposit produces 0 and the
/// trailing-zero count of 0 yields the sentinel 64.
///
/// # Safety
///
/// The caller must ensure the CPU supports BMI2.
#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "bmi2")]
pub unsafe fn select_in_word_bmi2(w: u64, k: u32) -> u32 {
    use std::arch::x86_64::_pdep_u64;
    _pdep_u64(1u64 << (k - 1), w).trailing_zeros()
}

/// Portable path: skip whole bytes by popcount, then peel set bits off the
/// byte that holds the answer.
#[inline]
pub fn select_in_word_portable(w: u64, k: u32) -> u32 {
    debug_assert!(k >= 1, "select rank is one-based");
    let mut remaining = k;
    for byte_idx in 0..8u32 {
        let byte = (w >> (byte_idx * 8)) as u8;
        let cnt = byte.count_ones();
        if remaining <= cnt {
            let mut b = byte as u32;
            for _ in 1..remaining {
                b &= b - 1;
            }
            return byte_idx * 8 + b.trailing_zeros();
        }
        remaining -= cnt;
    }
    64
}
