//! Bit-packed reduced row echelon forms over F2.
//!
//! Column `c` is bit `c % 64` of word `c / 64`. The leading column of a row
//! is its smallest set column.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

#[inline]
fn words_for(ncols: usize) -> usize {
    ncols.div_ceil(64)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitRow {
    ncols: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(ncols: usize) -> Self {
        BitRow { ncols, words: vec![0; words_for(ncols)] }
    }

    /// Row with the given columns set; repeated columns cancel.
    pub fn from_columns(ncols: usize, cols: impl IntoIterator<Item = usize>) -> Self {
        let mut r = Self::zeros(ncols);
        for c in cols {
            r.toggle(c);
        }
        r
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, c: usize) -> bool {
        self.words[c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, c: usize) {
        assert!(c < self.ncols, "column {c} out of range");
        self.words[c / 64] |= 1 << (c % 64);
    }

    pub fn toggle(&mut self, c: usize) {
        assert!(c < self.ncols, "column {c} out of range");
        self.words[c / 64] ^= 1 << (c % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn leading(&self) -> Option<usize> {
        self.words.iter().position(|&w| w != 0).map(|i| i * 64 + self.words[i].trailing_zeros() as usize)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn xor(&mut self, other: &BitRow) {
        xor_into(&mut self.words, &other.words, 0);
    }
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64], from: usize) {
    for (d, s) in dst[from..].iter_mut().zip(&src[from..]) {
        *d ^= s;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Insertion {
    Absorbed,
    NewPivot(usize),
}

/// A row space held in fully reduced echelon form.
///
/// Rows live in one contiguous arena; `pivot_slot[c]` gives the arena slot
/// of the row whose leading column is `c`. Since the reduced echelon form of
/// a row space is unique, equality compares row spaces.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    ncols: usize,
    nwords: usize,
    arena: Vec<u64>,
    slot_pivot: Vec<usize>,
    pivot_slot: Vec<u32>,
    pivot_mask: Vec<u64>,
}

impl EchelonBasis {
    pub fn new(ncols: usize) -> Self {
        let nwords = words_for(ncols);
        EchelonBasis {
            ncols,
            nwords,
            arena: Vec::new(),
            slot_pivot: Vec::new(),
            pivot_slot: vec![NONE; ncols],
            pivot_mask: vec![0; nwords],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.slot_pivot.len()
    }

    /// Worst-case bytes needed to hold a full-rank basis over `ncols` columns.
    pub fn estimated_bytes(ncols: usize) -> u64 {
        ncols as u64 * words_for(ncols) as u64 * 8
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_slot[c] != NONE
    }

    fn slot(&self, s: usize) -> &[u64] {
        &self.arena[s * self.nwords..(s + 1) * self.nwords]
    }

    fn check(&self, row: &BitRow) -> Result<()> {
        if row.ncols != self.ncols {
            return Err(Error::DimensionMismatch(self.ncols, row.ncols));
        }
        Ok(())
    }

    /// Clears every pivot column of `words` by adding pivot rows.
    fn reduce_words(&self, words: &mut [u64]) {
        for w in 0..self.nwords {
            loop {
                let hits = words[w] & self.pivot_mask[w];
                if hits == 0 {
                    break;
                }
                let c = w * 64 + hits.trailing_zeros() as usize;
                let s = self.pivot_slot[c] as usize;
                xor_into(words, self.slot(s), w);
            }
        }
    }

    /// The normal form of `row`: zero exactly on pivot columns.
    pub fn reduce(&self, row: &BitRow) -> Result<BitRow> {
        self.check(row)?;
        let mut out = row.clone();
        self.reduce_words(&mut out.words);
        Ok(out)
    }

    pub fn contains(&self, row: &BitRow) -> Result<bool> {
        Ok(self.reduce(row)?.is_zero())
    }

    pub fn insert(&mut self, row: &BitRow) -> Result<Insertion> {
        self.check(row)?;
        let mut words = row.words.clone();
        self.reduce_words(&mut words);
        Ok(self.insert_reduced(words))
    }

    /// Inserts a row given by its set columns; repeated columns cancel.
    pub fn insert_sparse(&mut self, cols: &[usize]) -> Insertion {
        let mut words = vec![0u64; self.nwords];
        for &c in cols {
            assert!(c < self.ncols, "column {c} out of range");
            words[c / 64] ^= 1 << (c % 64);
        }
        self.reduce_words(&mut words);
        self.insert_reduced(words)
    }

    fn insert_reduced(&mut self, words: Vec<u64>) -> Insertion {
        let Some(w0) = words.iter().position(|&w| w != 0) else {
            return Insertion::Absorbed;
        };
        let c = w0 * 64 + words[w0].trailing_zeros() as usize;
        let (bit_w, bit) = (c / 64, 1u64 << (c % 64));
        // back-substitution: rows with a smaller pivot may carry column c
        let nwords = self.nwords;
        for (s, &p) in self.slot_pivot.iter().enumerate() {
            if p < c {
                let row = &mut self.arena[s * nwords..(s + 1) * nwords];
                if row[bit_w] & bit != 0 {
                    xor_into(row, &words, w0);
                }
            }
        }
        let s = self.slot_pivot.len();
        self.arena.extend_from_slice(&words);
        self.slot_pivot.push(c);
        self.pivot_slot[c] = s as u32;
        self.pivot_mask[bit_w] |= bit;
        Insertion::NewPivot(c)
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.is_pivot(c)).collect()
    }

    /// Columns without a pivot, ascending.
    pub fn non_pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Rows ordered by pivot column, as `(pivot, row)`.
    pub fn rows(&self) -> Vec<(usize, BitRow)> {
        self.pivot_columns()
            .into_iter()
            .map(|c| {
                let s = self.pivot_slot[c] as usize;
                (c, BitRow { ncols: self.ncols, words: self.slot(s).to_vec() })
            })
            .collect()
    }

    pub fn write_snapshot(&self, out: &mut impl Write, header: SnapshotHeader) -> Result<()> {
        let mut buf = Vec::with_capacity(32 + self.arena.len() * 8);
        buf.extend_from_slice(MAGIC);
        buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        buf.extend_from_slice(&header.k.to_le_bytes());
        buf.extend_from_slice(&header.degree.to_le_bytes());
        buf.extend_from_slice(&(self.ncols as u64).to_le_bytes());
        buf.extend_from_slice(&(self.rank() as u64).to_le_bytes());
        for (_, row) in self.rows() {
            for w in row.words {
                buf.extend_from_slice(&w.to_le_bytes());
            }
        }
        let crc = crc32fast::hash(&buf);
        buf.extend_from_slice(&crc.to_le_bytes());
        out.write_all(&buf)?;
        Ok(())
    }

    /// Reads a snapshot, checking magic, version, checksum and, when given,
    /// the expected column count.
    pub fn read_snapshot(input: &mut impl Read, expect_ncols: Option<usize>) -> Result<(SnapshotHeader, Self)> {
        let mut buf = Vec::new();
        input.read_to_end(&mut buf)?;
        if buf.len() < HEADER_LEN + 4 {
            return Err(Error::Snapshot("truncated file".into()));
        }
        let (body, trailer) = buf.split_at(buf.len() - 4);
        let crc = u32::from_le_bytes(trailer.try_into().expect("4 bytes"));
        if crc32fast::hash(body) != crc {
            return Err(Error::Snapshot("checksum mismatch".into()));
        }
        if &body[..4] != MAGIC {
            return Err(Error::Snapshot("bad magic".into()));
        }
        let version = u16::from_le_bytes([body[4], body[5]]);
        if version != FORMAT_VERSION {
            return Err(Error::Snapshot(format!("unsupported version {version}")));
        }
        let k = u16::from_le_bytes([body[6], body[7]]);
        let degree = u32::from_le_bytes(body[8..12].try_into().expect("4 bytes"));
        let ncols = u64::from_le_bytes(body[12..20].try_into().expect("8 bytes")) as usize;
        let nrows = u64::from_le_bytes(body[20..28].try_into().expect("8 bytes")) as usize;
        if let Some(want) = expect_ncols {
            if want != ncols {
                return Err(Error::Snapshot(format!("column count {ncols}, expected {want}")));
            }
        }
        let nwords = words_for(ncols);
        if body.len() != HEADER_LEN + nrows * nwords * 8 {
            return Err(Error::Snapshot("row data length does not match header".into()));
        }
        let mut basis = EchelonBasis::new(ncols);
        for (r, chunk) in body[HEADER_LEN..].chunks_exact((nwords * 8).max(1)).enumerate().take(nrows) {
            let words: Vec<u64> =
                chunk.chunks_exact(8).map(|b| u64::from_le_bytes(b.try_into().expect("8 bytes"))).collect();
            let Some(lead) = words.iter().position(|&w| w != 0) else {
                return Err(Error::Snapshot(format!("row {r} is zero")));
            };
            let c = lead * 64 + words[lead].trailing_zeros() as usize;
            if basis.is_pivot(c) {
                return Err(Error::Snapshot(format!("row {r} repeats pivot {c}")));
            }
            let s = basis.slot_pivot.len();
            basis.arena.extend_from_slice(&words);
            basis.slot_pivot.push(c);
            basis.pivot_slot[c] = s as u32;
            basis.pivot_mask[c / 64] |= 1 << (c % 64);
        }
        if !basis.is_reduced() {
            return Err(Error::Snapshot("rows are not in reduced echelon form".into()));
        }
        Ok((SnapshotHeader { k, degree }, basis))
    }

    pub fn snapshot(&self, path: &Path, header: SnapshotHeader) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_snapshot(&mut w, header)?;
        w.flush()?;
        Ok(())
    }

    pub fn restore(path: &Path, expect_ncols: Option<usize>) -> Result<(SnapshotHeader, Self)> {
        Self::read_snapshot(&mut BufReader::new(File::open(path)?), expect_ncols)
    }

    /// Checks that each pivot column is clear in every other row.
    pub fn is_reduced(&self) -> bool {
        (0..self.rank()).all(|s| {
            let row = self.slot(s);
            let own = self.slot_pivot[s];
            row.iter().zip(&self.pivot_mask).enumerate().all(|(w, (&r, &m))| {
                let hits = r & m;
                if w == own / 64 {
                    hits == 1 << (own % 64)
                } else {
                    hits == 0
                }
            })
        })
    }
}

impl PartialEq for EchelonBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ncols == other.ncols && self.pivot_mask == other.pivot_mask && self.rows() == other.rows()
    }
}

impl Eq for EchelonBasis {}

const MAGIC: &[u8; 4] = b"HPF2";
const FORMAT_VERSION: u16 = 1;
const HEADER_LEN: usize = 4 + 2 + 2 + 4 + 8 + 8;

/// Identifying fields stored in a snapshot header.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SnapshotHeader {
    pub k: u16,
    pub degree: u32,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_examples() {
        let mut b = EchelonBasis::new(5);
        assert_eq!(b.insert(&BitRow::zeros(5)).unwrap(), Insertion::Absorbed);
        let e3 = BitRow::from_columns(5, [3]);
        assert_eq!(b.insert(&e3).unwrap(), Insertion::NewPivot(3));
        assert_eq!(b.insert(&e3).unwrap(), Insertion::Absorbed);

        let mut b = EchelonBasis::new(3);
        b.insert(&BitRow::from_columns(3, [1, 2])).unwrap();
        b.insert(&BitRow::from_columns(3, [2])).unwrap();
        assert_eq!(b.rank(), 2);
        assert_eq!(b.pivot_columns(), vec![1, 2]);
        assert!(b.is_reduced());
        assert!(b.insert(&BitRow::zeros(4)).is_err());
    }

    #[test]
    fn membership() {
        let mut b = EchelonBasis::new(70);
        b.insert(&BitRow::from_columns(70, [0, 65])).unwrap();
        b.insert(&BitRow::from_columns(70, [3, 65, 69])).unwrap();
        assert!(b.contains(&BitRow::zeros(70)).unwrap());
        assert!(b.contains(&BitRow::from_columns(70, [0, 3, 69])).unwrap());
        assert!(!b.contains(&BitRow::from_columns(70, [65])).unwrap());
        assert_eq!(b.non_pivot_columns().len(), 68);
    }

    #[test]
    fn non_pivots() {
        assert_eq!(EchelonBasis::new(4).non_pivot_columns(), vec![0, 1, 2, 3]);
        let mut b = EchelonBasis::new(3);
        for c in 0..3 {
            b.insert_sparse(&[c]);
        }
        assert!(b.non_pivot_columns().is_empty());
    }

    #[test]
    fn snapshot_round_trip() {
        let mut b = EchelonBasis::new(130);
        b.insert_sparse(&[2, 64, 129]);
        b.insert_sparse(&[64, 100]);
        let hdr = SnapshotHeader { k: 5, degree: 21 };
        let mut buf = Vec::new();
        b.write_snapshot(&mut buf, hdr).unwrap();
        let (h, r) = EchelonBasis::read_snapshot(&mut buf.as_slice(), Some(130)).unwrap();
        assert_eq!(h, hdr);
        assert_eq!(r, b);
        assert!(matches!(EchelonBasis::read_snapshot(&mut buf.as_slice(), Some(131)), Err(Error::Snapshot(_))));
        let mut bad = buf.clone();
        bad[30] ^= 1;
        assert!(EchelonBasis::read_snapshot(&mut bad.as_slice(), None).is_err());

        let mut empty = Vec::new();
        EchelonBasis::new(9).write_snapshot(&mut empty, hdr).unwrap();
        assert_eq!(empty.len(), HEADER_LEN + 4);
    }
}
