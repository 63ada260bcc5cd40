//! File formats for bit vectors and built indexes.
//!
//! All formats share the same skeleton: a 4-byte magic, a little-endian u32
//! format version, fixed header fields, then length-prefixed little-endian
//! arrays in declaration order.
//!
//! `SPBV` (bit vector): version, `n`, then `ceil(n / 64)` words. Bits past
//! `n` must be zero; a loader rejects files that violate this.
//!
//! `SPIX` (interleaved index): version, `n`, `n1`, `sigma_h`, `sigma_l`,
//! then the rank array, the rewritten blocks (eight words each), the high
//! select array, and the 16-bit low select array. The rewritten blocks stand
//! in for the vector itself.
//!
//! `NIIX` (non-interleaved index): version, `n`, `n1`, `sigma`, then the two
//! rank arrays and the select array, followed by the padded source words,
//! which this index keeps alongside its metadata.

use crate::bits::BitVector;
use crate::block::{BasicBlock, BLOCK_WORDS};
use crate::layout::{FlatRank, InterleavedRank, BLOCKS_PER_SUPERBLOCK};
use crate::ni_spider::NiSpiderIndex;
use crate::select::{OneLevelSelect, TwoLevelSelect};
use crate::spider::SpiderIndex;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

pub const FORMAT_VERSION: u32 = 1;

const BITVECTOR_MAGIC: &[u8; 4] = b"SPBV";
const SPIDER_MAGIC: &[u8; 4] = b"SPIX";
const NI_SPIDER_MAGIC: &[u8; 4] = b"NIIX";

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("bad magic: expected {expected:?}, found {found:?}")]
    BadMagic { expected: [u8; 4], found: [u8; 4] },
    #[error("unsupported format version {0}")]
    BadVersion(u32),
    #[error("nonzero bits beyond the logical length")]
    TrailingBits,
    #[error("malformed file: {0}")]
    Malformed(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

fn write_u32(w: &mut impl Write, v: u32) -> Result<()> {
    Ok(w.write_all(&v.to_le_bytes())?)
}

fn write_u64(w: &mut impl Write, v: u64) -> Result<()> {
    Ok(w.write_all(&v.to_le_bytes())?)
}

fn write_u64_array(w: &mut impl Write, data: &[u64]) -> Result<()> {
    write_u64(w, data.len() as u64)?;
    for &v in data {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

fn write_u16_array(w: &mut impl Write, data: &[u16]) -> Result<()> {
    write_u64(w, data.len() as u64)?;
    for &v in data {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_u64(r: &mut impl Read) -> Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

fn read_len(r: &mut impl Read, expected: u64, what: &'static str) -> Result<usize> {
    let len = read_u64(r)?;
    if len != expected {
        return Err(Error::Malformed(what));
    }
    Ok(len as usize)
}

fn read_u64_array(r: &mut impl Read, expected: u64, what: &'static str) -> Result<Vec<u64>> {
    let len = read_len(r, expected, what)?;
    let mut out = Vec::with_capacity(len);
    let mut buf = [0u8; 8];
    for _ in 0..len {
        r.read_exact(&mut buf)?;
        out.push(u64::from_le_bytes(buf));
    }
    Ok(out)
}

fn read_u16_array(r: &mut impl Read, expected: u64, what: &'static str) -> Result<Vec<u16>> {
    let len = read_len(r, expected, what)?;
    let mut out = Vec::with_capacity(len);
    let mut buf = [0u8; 2];
    for _ in 0..len {
        r.read_exact(&mut buf)?;
        out.push(u16::from_le_bytes(buf));
    }
    Ok(out)
}

fn check_header(r: &mut impl Read, magic: &[u8; 4]) -> Result<()> {
    let mut found = [0u8; 4];
    r.read_exact(&mut found)?;
    if &found != magic {
        return Err(Error::BadMagic {
            expected: *magic,
            found,
        });
    }
    let version = read_u32(r)?;
    if version != FORMAT_VERSION {
        return Err(Error::BadVersion(version));
    }
    Ok(())
}

fn check_sigma(sigma: u64) -> Result<u64> {
    if sigma.is_power_of_two() {
        Ok(sigma)
    } else {
        Err(Error::Malformed("sampling threshold is not a power of two"))
    }
}

/// Writes a bit vector in the `SPBV` format.
pub fn save_bitvector(bv: &BitVector, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(BITVECTOR_MAGIC)?;
    write_u32(&mut w, FORMAT_VERSION)?;
    write_u64(&mut w, bv.len())?;
    for &word in bv.words() {
        w.write_all(&word.to_le_bytes())?;
    }
    Ok(w.flush()?)
}

/// Reads a `SPBV` file, rejecting trailing garbage and nonzero bits past the
/// logical length.
pub fn load_bitvector(path: impl AsRef<Path>) -> Result<BitVector> {
    let mut r = BufReader::new(File::open(path)?);
    check_header(&mut r, BITVECTOR_MAGIC)?;
    let n = read_u64(&mut r)?;
    let word_count = n.div_ceil(64);
    let mut words = Vec::with_capacity(word_count as usize);
    let mut buf = [0u8; 8];
    for _ in 0..word_count {
        r.read_exact(&mut buf)?;
        words.push(u64::from_le_bytes(buf));
    }
    if r.read(&mut buf)? != 0 {
        return Err(Error::Malformed("data past the end of the vector"));
    }
    if n % 64 != 0 {
        if let Some(&last) = words.last() {
            if last >> (n % 64) != 0 {
                return Err(Error::TrailingBits);
            }
        }
    }
    Ok(BitVector::from_words(words, n))
}

/// Writes an interleaved index in the `SPIX` format.
pub fn save_spider_index(idx: &SpiderIndex, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(SPIDER_MAGIC)?;
    write_u32(&mut w, FORMAT_VERSION)?;
    write_u64(&mut w, idx.len())?;
    write_u64(&mut w, idx.count_ones())?;
    write_u64(&mut w, idx.sigma_high())?;
    write_u64(&mut w, idx.sigma_low())?;
    write_u64_array(&mut w, idx.rank_array())?;
    write_u64(&mut w, idx.blocks().len() as u64)?;
    for block in idx.blocks() {
        for word in block.0 {
            w.write_all(&word.to_le_bytes())?;
        }
    }
    write_u64_array(&mut w, idx.high_select())?;
    write_u16_array(&mut w, idx.low_select())?;
    Ok(w.flush()?)
}

/// Reads a `SPIX` file back into an index.
pub fn load_spider_index(path: impl AsRef<Path>) -> Result<SpiderIndex> {
    let mut r = BufReader::new(File::open(path)?);
    check_header(&mut r, SPIDER_MAGIC)?;
    let n = read_u64(&mut r)?;
    if n == 0 {
        return Err(Error::Malformed("empty index"));
    }
    let n1 = read_u64(&mut r)?;
    let sigma_high = check_sigma(read_u64(&mut r)?)?;
    let sigma_low = check_sigma(read_u64(&mut r)?)?;
    let sb_count = n.div_ceil(InterleavedRank::SUPERBLOCK_SPAN);
    let rank_array = read_u64_array(&mut r, sb_count + 1, "rank array length")?;
    if rank_array.last() != Some(&n1) {
        return Err(Error::Malformed(
            "rank array sentinel does not match ones count",
        ));
    }
    let block_count = read_len(&mut r, sb_count * BLOCKS_PER_SUPERBLOCK, "block count")?;
    let mut blocks = Vec::with_capacity(block_count);
    let mut buf = [0u8; 8];
    for _ in 0..block_count {
        let mut words = [0u64; BLOCK_WORDS];
        for word in &mut words {
            r.read_exact(&mut buf)?;
            *word = u64::from_le_bytes(buf);
        }
        blocks.push(BasicBlock(words));
    }
    let high_len = if n1 == 0 {
        0
    } else {
        (n1 - 1) / sigma_high + 2
    };
    let high = read_u64_array(&mut r, high_len, "high select length")?;
    let low_len = if n1 == 0 { 0 } else { n1 / sigma_low + 2 };
    let low = read_u16_array(&mut r, low_len, "low select length")?;
    let ranks = InterleavedRank::from_parts(rank_array, blocks, n, n1);
    let select = TwoLevelSelect::from_parts(sigma_high, sigma_low, high, low);
    Ok(SpiderIndex::from_parts(ranks, select))
}

/// Writes a non-interleaved index in the `NIIX` format.
pub fn save_ni_spider_index(idx: &NiSpiderIndex, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(NI_SPIDER_MAGIC)?;
    write_u32(&mut w, FORMAT_VERSION)?;
    write_u64(&mut w, idx.len())?;
    write_u64(&mut w, idx.count_ones())?;
    write_u64(&mut w, idx.sigma())?;
    write_u64_array(&mut w, idx.l1_rank())?;
    write_u16_array(&mut w, idx.l2_rank())?;
    write_u64_array(&mut w, idx.select_array())?;
    write_u64_array(&mut w, idx.words())?;
    Ok(w.flush()?)
}

/// Reads a `NIIX` file back into an index.
pub fn load_ni_spider_index(path: impl AsRef<Path>) -> Result<NiSpiderIndex> {
    let mut r = BufReader::new(File::open(path)?);
    check_header(&mut r, NI_SPIDER_MAGIC)?;
    let n = read_u64(&mut r)?;
    if n == 0 {
        return Err(Error::Malformed("empty index"));
    }
    let n1 = read_u64(&mut r)?;
    let sigma = check_sigma(read_u64(&mut r)?)?;
    let sb_count = n.div_ceil(FlatRank::SUPERBLOCK_SPAN);
    let l1 = read_u64_array(&mut r, sb_count + 1, "l1 rank length")?;
    if l1.last() != Some(&n1) {
        return Err(Error::Malformed("l1 sentinel does not match ones count"));
    }
    let block_count = sb_count * BLOCKS_PER_SUPERBLOCK;
    let l2 = read_u16_array(&mut r, block_count, "l2 rank length")?;
    let samples_len = if n1 == 0 { 0 } else { n1 / sigma + 2 };
    let samples = read_u64_array(&mut r, samples_len, "select array length")?;
    let words = read_u64_array(&mut r, block_count * BLOCK_WORDS as u64, "word count")?;
    let ranks = FlatRank::from_parts(l1, l2, words, n, n1);
    let select = OneLevelSelect::from_parts(sigma, samples);
    Ok(NiSpiderIndex::from_parts(ranks, select))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen;
    use std::fs;

    #[test]
    fn bitvector_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.spbv");
        let bv = datagen::random_bits(100_003, 0.37, 5);
        save_bitvector(&bv, &path).unwrap();
        assert_eq!(load_bitvector(&path).unwrap(), bv);
    }

    #[test]
    fn bitvector_bad_magic() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.spbv");
        fs::write(&path, b"NOPE whatever").unwrap();
        assert!(matches!(load_bitvector(&path), Err(Error::BadMagic { .. })));
    }

    #[test]
    fn bitvector_truncated() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.spbv");
        let bv = datagen::random_bits(1000, 0.5, 6);
        save_bitvector(&bv, &path).unwrap();
        let bytes = fs::read(&path).unwrap();
        fs::write(&path, &bytes[..bytes.len() - 3]).unwrap();
        assert!(load_bitvector(&path).is_err());
    }

    #[test]
    fn bitvector_rejects_trailing_bits() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.spbv");
        save_bitvector(&datagen::random_bits(70, 0.5, 7), &path).unwrap();
        let mut bytes = fs::read(&path).unwrap();
        *bytes.last_mut().unwrap() |= 0x80; // bit 135 of a 70-bit vector
        fs::write(&path, &bytes).unwrap();
        assert!(matches!(load_bitvector(&path), Err(Error::TrailingBits)));
    }

    #[test]
    fn spider_index_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("i.spix");
        let bv = datagen::random_bits(200_000, 0.5, 8);
        let idx = SpiderIndex::build(&bv);
        save_spider_index(&idx, &path).unwrap();
        let loaded = load_spider_index(&path).unwrap();
        assert!(loaded == idx, "loaded index differs");
    }

    #[test]
    fn ni_spider_index_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("i.niix");
        let bv = datagen::random_bits(200_000, 0.2, 9);
        let idx = NiSpiderIndex::build(&bv);
        save_ni_spider_index(&idx, &path).unwrap();
        let loaded = load_ni_spider_index(&path).unwrap();
        assert!(loaded == idx, "loaded index differs");
    }

    #[test]
    fn index_magic_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let spbv = dir.path().join("v.spbv");
        save_bitvector(&datagen::random_bits(100, 0.5, 1), &spbv).unwrap();
        assert!(matches!(
            load_spider_index(&spbv),
            Err(Error::BadMagic { .. })
        ));
        assert!(matches!(
            load_ni_spider_index(&spbv),
            Err(Error::BadMagic { .. })
        ));
    }

    #[test]
    fn corrupted_index_detected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("i.spix");
        let bv = datagen::random_bits(70_000, 0.5, 10);
        save_spider_index(&SpiderIndex::build(&bv), &path).unwrap();
        let bytes = fs::read(&path).unwrap();

        // non-power-of-two sampling threshold
        let mut bad = bytes.clone();
        bad[24..32].copy_from_slice(&3u64.to_le_bytes());
        fs::write(&path, &bad).unwrap();
        assert!(matches!(load_spider_index(&path), Err(Error::Malformed(_))));

        // shrunken logical length makes every derived array length wrong
        let mut bad = bytes.clone();
        bad[8..16].copy_from_slice(&500u64.to_le_bytes());
        fs::write(&path, &bad).unwrap();
        assert!(load_spider_index(&path).is_err());

        // truncation
        fs::write(&path, &bytes[..bytes.len() / 2]).unwrap();
        assert!(load_spider_index(&path).is_err());
    }
}
