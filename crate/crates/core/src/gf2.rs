//! Bit-packed vectors and dense matrices over GF(2).
//!
//! Coordinates are 0-based throughout. A [`BitWord`] stores bit `i` in word
//! `i / 64` at position `i % 64`; bits past the logical length are kept zero so
//! that equality, hashing and weight work on whole words.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A fixed-length binary vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    len: usize,
    words: Vec<u64>,
}

impl BitWord {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut w = Self {
            len,
            words: vec![u64::MAX; word_count(len)],
        };
        w.clear_tail();
        w
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut w = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                w.set(i, true);
            }
        }
        w
    }

    /// Word with ones exactly at `positions`.
    pub fn from_support(len: usize, positions: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut w = Self::zeros(len);
        for p in positions {
            if p >= len {
                return Err(Error::IndexOutOfRange { index: p, len });
            }
            w.set(p, true);
        }
        Ok(w)
    }

    /// Low `len` bits of `value`, bit 0 of `value` at coordinate 0.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= WORD_BITS);
        let mut w = Self::zeros(len);
        if len > 0 {
            w.words[0] = value;
            w.clear_tail();
        }
        w
    }

    /// Inverse of [`BitWord::from_u64`]; `None` if the word is longer than 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        match self.len {
            0 => Some(0),
            l if l <= WORD_BITS => Some(self.words[0]),
            _ => None,
        }
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Positions of the ones, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + tz)
                }
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn as_words(&self) -> &[u64] {
        &self.words
    }

    /// First set position at or after `from`.
    pub fn next_one(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut wi = from / WORD_BITS;
        let mut w = self.words[wi] & (u64::MAX << (from % WORD_BITS));
        loop {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
            wi += 1;
            if wi == self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }

    pub fn complement(&self) -> Self {
        let mut out = Self {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.clear_tail();
        out
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn hamming_distance(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Copy of positions `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.len);
        let mut out = Self::zeros(end - start);
        for (j, i) in (start..end).enumerate() {
            if self.get(i) {
                out.set(j, true);
            }
        }
        out
    }

    pub fn append(&mut self, other: &Self) {
        let old = self.len;
        self.len += other.len;
        self.words.resize(word_count(self.len), 0);
        for p in other.support() {
            self.set(old + p, true);
        }
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a BitWord>) -> Self {
        let mut out = Self::zeros(0);
        for p in parts {
            out.append(p);
        }
        out
    }

    /// Entries at `positions`, in the order given.
    pub fn gather(&self, positions: &[usize]) -> Self {
        let mut out = Self::zeros(positions.len());
        for (j, &p) in positions.iter().enumerate() {
            if self.get(p) {
                out.set(j, true);
            }
        }
        out
    }

    fn xor_from_word(&mut self, other: &Self, first_word: usize) {
        for (a, b) in self.words[first_word..]
            .iter_mut()
            .zip(&other.words[first_word..])
        {
            *a ^= b;
        }
    }
}

impl BitXorAssign<&BitWord> for BitWord {
    fn bitxor_assign(&mut self, rhs: &BitWord) {
        assert_eq!(self.len, rhs.len, "xor of words with different lengths");
        self.xor_from_word(rhs, 0);
    }
}

impl BitXor for &BitWord {
    type Output = BitWord;

    fn bitxor(self, rhs: &BitWord) -> BitWord {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                '_' | ' ' => {}
                other => return Err(Error::InvalidParameter(format!("not a bit: {other:?}"))),
            }
        }
        Ok(Self::from_bools(&bits))
    }
}

/// Outcome of solving `u * M = y` for the row-coefficient vector `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(BitWord),
    NoSolution,
    /// Consistent, but `free` message variables are undetermined.
    Underdetermined {
        free: usize,
    },
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowEchelon {
    pub matrix: BinaryMatrix,
    pub pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<BitWord>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitWord::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    /// Builds a matrix from rows of a common length `cols`.
    pub fn from_rows(rows: Vec<BitWord>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Convenience constructor from strings such as `["110", "011"]`.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<BitWord>>>()?;
        let cols = parsed.first().map_or(0, BitWord::len);
        Self::from_rows(parsed, cols)
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitWord {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitWord] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitWord> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn push_row(&mut self, row: BitWord) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if other.cols != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self {
            cols: self.cols,
            rows,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.support() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// Row-vector product `u * M`.
    pub fn mul_left(&self, u: &BitWord) -> Result<BitWord> {
        if u.len() != self.rows.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                found: u.len(),
            });
        }
        let mut out = BitWord::zeros(self.cols);
        for i in u.support() {
            out ^= &self.rows[i];
        }
        Ok(out)
    }

    /// Submatrix on a set of columns, emitted in ascending column order.
    pub fn column_submatrix(&self, cols: &[usize]) -> Result<Self> {
        let mut sorted = cols.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.select_columns(&sorted)
    }

    /// Submatrix whose column `j` is column `cols[j]` of `self`. Repeats are allowed.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self> {
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: self.cols,
            });
        }
        Ok(Self {
            cols: cols.len(),
            rows: self.rows.iter().map(|r| r.gather(cols)).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        eliminate(&mut rows, self.cols, None, false).len()
    }

    /// Reduced row-echelon form. Zero rows are kept at the bottom, so the
    /// shape is unchanged.
    pub fn row_reduce(&self) -> RowEchelon {
        let mut rows = self.rows.clone();
        let pivots = eliminate(&mut rows, self.cols, None, true);
        RowEchelon {
            matrix: Self {
                cols: self.cols,
                rows,
            },
            pivots,
        }
    }

    /// Whether `w` lies in the row space.
    pub fn row_space_contains(&self, w: &BitWord) -> Result<bool> {
        Ok(!matches!(self.solve_right(w)?, Solution::NoSolution))
    }

    /// Solves `u * M = y` for `u`.
    pub fn solve_right(&self, y: &BitWord) -> Result<Solution> {
        if y.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: y.len(),
            });
        }
        let n = self.rows.len();
        let mut rows = self.rows.clone();
        let mut tags: Vec<BitWord> = (0..n)
            .map(|i| {
                let mut t = BitWord::zeros(n);
                t.set(i, true);
                t
            })
            .collect();
        let pivots = eliminate(&mut rows, self.cols, Some(&mut tags), true);

        let mut residual = y.clone();
        let mut u = BitWord::zeros(n);
        for (i, &p) in pivots.iter().enumerate() {
            if residual.get(p) {
                residual ^= &rows[i];
                u ^= &tags[i];
            }
        }
        if !residual.is_zero() {
            return Ok(Solution::NoSolution);
        }
        if pivots.len() < n {
            return Ok(Solution::Underdetermined {
                free: n - pivots.len(),
            });
        }
        Ok(Solution::Unique(u))
    }
}

/// Gaussian elimination in place. Returns pivot columns; row `i` of the result
/// carries pivot `pivots[i]`. With `full` the form is reduced (pivot columns
/// are unit vectors). Row operations are mirrored onto `tags` when given.
fn eliminate(
    rows: &mut [BitWord],
    cols: usize,
    mut tags: Option<&mut Vec<BitWord>>,
    full: bool,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| rows[r].get(c)) else {
            continue;
        };
        rows.swap(next, p);
        if let Some(t) = tags.as_deref_mut() {
            t.swap(next, p);
        }
        let pivot_row = rows[next].clone();
        let pivot_tag = tags.as_deref().map(|t| t[next].clone());
        let first_word = c / WORD_BITS;
        let start = if full { 0 } else { next + 1 };
        for r in start..rows.len() {
            if r != next && rows[r].get(c) {
                rows[r].xor_from_word(&pivot_row, first_word);
                if let (Some(t), Some(pt)) = (tags.as_deref_mut(), pivot_tag.as_ref()) {
                    t[r] ^= pt;
                }
            }
        }
        pivots.push(c);
        next += 1;
    }
    pivots
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn word_basics() {
        let x = w("01010101");
        assert_eq!(x.len(), 8);
        assert_eq!(x.weight(), 4);
        assert_eq!(x.support().collect::<Vec<_>>(), vec![1, 3, 5, 7]);
        assert_eq!(x.complement(), w("10101010"));
        assert_eq!(x.to_string(), "01010101");
        assert_eq!(x.next_one(2), Some(3));
        assert_eq!(x.next_one(8), None);
        assert!("01a".parse::<BitWord>().is_err());
    }

    #[test]
    fn long_words_cross_word_boundaries() {
        let mut a = BitWord::zeros(130);
        a.set(0, true);
        a.set(64, true);
        a.set(129, true);
        assert_eq!(a.support().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(BitWord::ones(130).weight(), 130);
        assert_eq!(a.next_one(1), Some(64));
        let s = a.slice(60, 130);
        assert_eq!(s.support().collect::<Vec<_>>(), vec![4, 69]);
        let mut c = a.clone();
        c.append(&w("1"));
        assert_eq!(c.len(), 131);
        assert!(c.get(130));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BinaryMatrix::identity(2).rank(), 2);
        assert_eq!(BinaryMatrix::zeros(3, 5).rank(), 0);
        let m = BinaryMatrix::from_strs(&["110", "011", "101"]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn row_reduce_examples() {
        let id = BinaryMatrix::identity(4).row_reduce();
        assert_eq!(id.matrix, BinaryMatrix::identity(4));
        assert_eq!(id.pivots, vec![0, 1, 2, 3]);

        let dup = BinaryMatrix::from_strs(&["11", "11"]).unwrap().row_reduce();
        assert_eq!(dup.matrix, BinaryMatrix::from_strs(&["11", "00"]).unwrap());
        assert_eq!(dup.pivots, vec![0]);

        // naive elimination by hand: 110,011,101 -> 101,011,000
        let r = BinaryMatrix::from_strs(&["110", "011", "101"])
            .unwrap()
            .row_reduce();
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(
            r.matrix,
            BinaryMatrix::from_strs(&["101", "011", "000"]).unwrap()
        );
    }

    #[test]
    fn solve_examples() {
        let id = BinaryMatrix::identity(3);
        assert_eq!(
            id.solve_right(&w("101")).unwrap(),
            Solution::Unique(w("101"))
        );

        let m = BinaryMatrix::from_strs(&["11"]).unwrap();
        assert_eq!(m.solve_right(&w("10")).unwrap(), Solution::NoSolution);

        // exhaust the four candidates: only u = 11 gives 110 + 011 = 101
        let m = BinaryMatrix::from_strs(&["110", "011"]).unwrap();
        assert_eq!(m.solve_right(&w("101")).unwrap(), Solution::Unique(w("11")));

        let m = BinaryMatrix::from_strs(&["110", "110", "001"]).unwrap();
        assert_eq!(
            m.solve_right(&w("111")).unwrap(),
            Solution::Underdetermined { free: 1 }
        );
        assert!(matches!(
            m.solve_right(&w("11")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn column_submatrix_examples() {
        let id = BinaryMatrix::identity(3);
        let sub = id.column_submatrix(&[2, 0]).unwrap();
        assert_eq!(sub, BinaryMatrix::from_strs(&["10", "00", "01"]).unwrap());
        assert_eq!(id.column_submatrix(&[0, 1, 2]).unwrap(), id);
        assert!(matches!(
            id.column_submatrix(&[3]),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        ));
    }

    #[test]
    fn transpose_and_product() {
        let m = BinaryMatrix::from_strs(&["110", "011"]).unwrap();
        let t = m.transpose();
        assert_eq!(t, BinaryMatrix::from_strs(&["10", "11", "01"]).unwrap());
        assert_eq!(m.mul_left(&w("11")).unwrap(), w("101"));
    }
}
