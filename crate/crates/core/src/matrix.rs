//! Packed binary code matrix: `l` coordinates (rows) by `n` codewords (columns).

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};

const WORD_BITS: usize = 64;

/// Strength `t` and minimum weight-one row count `d` of a weak superimposed code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub t: usize,
    pub d: usize,
}

impl CodeParams {
    pub fn new(t: usize, d: usize) -> Result<Self> {
        ensure!(t >= 2, Domain, "strength t must be >= 2, got {t}");
        ensure!(d >= 1, Domain, "d must be >= 1, got {d}");
        Ok(Self { t, d })
    }
}

/// An `l × n` binary matrix stored column-major, one packed `l`-bit column per codeword.
///
/// Columns can be marked dead by [`CodeMatrix::remove_column`]. Dead columns keep
/// their storage and index; [`CodeMatrix::compact`] drops them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeMatrix {
    length: usize,
    size: usize,
    words_per_col: usize,
    bits: Vec<u64>,
    live: Vec<bool>,
    live_count: usize,
}

impl CodeMatrix {
    /// All-zero `length × size` matrix.
    pub fn zeros(length: usize, size: usize) -> Result<Self> {
        ensure!(length >= 1, Domain, "code length must be >= 1");
        let words_per_col = length.div_ceil(WORD_BITS);
        Ok(Self {
            length,
            size,
            words_per_col,
            bits: vec![0; words_per_col * size],
            live: vec![true; size],
            live_count: size,
        })
    }

    /// Builds a matrix whose column `j` is `columns[j]`; every column must have `length` bits.
    pub fn from_columns<C: AsRef<[bool]>>(length: usize, columns: &[C]) -> Result<Self> {
        let mut m = Self::zeros(length, columns.len())?;
        for (j, col) in columns.iter().enumerate() {
            let col = col.as_ref();
            ensure!(col.len() == length, Dimension, "column {j} has {} bits, expected {length}", col.len());
            for (i, &b) in col.iter().enumerate() {
                m.set(i, j, b);
            }
        }
        Ok(m)
    }

    /// Columns given as `'0'`/`'1'` strings, coordinate 0 first (`"110"` has support `{0, 1}`).
    pub fn from_bit_strings<S: AsRef<str>>(columns: &[S]) -> Result<Self> {
        let first = columns.first().ok_or_else(|| Error::Dimension("no columns to infer length from".into()))?;
        let length = first.as_ref().len();
        let parsed = columns
            .iter()
            .map(|s| {
                s.as_ref()
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(Error::Domain(format!("invalid bit character {other:?}"))),
                    })
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_columns(length, &parsed)
    }

    /// The `l × l` identity matrix.
    pub fn identity(length: usize) -> Result<Self> {
        let mut m = Self::zeros(length, length)?;
        for i in 0..length {
            m.set(i, i, true);
        }
        Ok(m)
    }

    /// Number of coordinates `l`.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of column slots `n`, live or dead.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn live_count(&self) -> usize {
        self.live_count
    }

    pub fn is_live(&self, j: usize) -> bool {
        self.live.get(j).copied().unwrap_or(false)
    }

    pub fn live_indices(&self) -> Vec<usize> {
        (0..self.size).filter(|&j| self.live[j]).collect()
    }

    pub(crate) fn words_per_col(&self) -> usize {
        self.words_per_col
    }

    pub(crate) fn raw_bits(&self) -> &[u64] {
        &self.bits
    }

    pub(crate) fn live_mask(&self) -> &[bool] {
        &self.live
    }

    /// Packed words of column `j`; bits at positions `>= l` are zero.
    pub fn column_words(&self, j: usize) -> &[u64] {
        let w = self.words_per_col;
        &self.bits[j * w..(j + 1) * w]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.length && j < self.size, "({i}, {j}) out of range");
        self.column_words(j)[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.length && j < self.size, "({i}, {j}) out of range");
        let word = &mut self.bits[j * self.words_per_col + i / WORD_BITS];
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    /// Column `j` as a bool vector.
    pub fn column(&self, j: usize) -> Vec<bool> {
        (0..self.length).map(|i| self.get(i, j)).collect()
    }

    fn check_index(&self, j: usize) -> Result<()> {
        ensure!(j < self.size, Index, "column {j} out of range (n = {})", self.size);
        Ok(())
    }

    fn check_live(&self, j: usize) -> Result<()> {
        self.check_index(j)?;
        ensure!(self.live[j], Usage, "column {j} has been removed");
        Ok(())
    }

    /// Coordinates where column `j` has a one.
    pub fn support(&self, j: usize) -> Result<Vec<usize>> {
        self.check_index(j)?;
        let mut out = Vec::new();
        for (k, &word) in self.column_words(j).iter().enumerate() {
            let mut w = word;
            while w != 0 {
                out.push(k * WORD_BITS + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        Ok(out)
    }

    pub fn weight(&self, j: usize) -> Result<usize> {
        self.check_index(j)?;
        Ok(popcount(self.column_words(j)))
    }

    /// Number of rows in which exactly one of the selected columns has a one.
    pub fn weight_one_row_count(&self, subset: &[usize]) -> Result<usize> {
        ensure!(!subset.is_empty(), Usage, "subset must be nonempty");
        for &j in subset {
            self.check_live(j)?;
        }
        Ok(self.weight_one_rows_unchecked(subset))
    }

    pub(crate) fn weight_one_rows_unchecked(&self, subset: &[usize]) -> usize {
        let mut count = 0;
        for k in 0..self.words_per_col {
            let (mut ones, mut twos) = (0u64, 0u64);
            for &j in subset {
                let c = self.bits[j * self.words_per_col + k];
                twos |= ones & c;
                ones |= c;
            }
            count += (ones & !twos).count_ones() as usize;
        }
        count
    }

    /// `|supp(c_i) △ supp(c_j)|` for two distinct live columns.
    pub fn hamming_distance(&self, i: usize, j: usize) -> Result<usize> {
        ensure!(i != j, Usage, "hamming distance needs two distinct columns, got {i} twice");
        self.check_live(i)?;
        self.check_live(j)?;
        Ok(self.distance_unchecked(i, j))
    }

    pub(crate) fn distance_unchecked(&self, i: usize, j: usize) -> usize {
        self.column_words(i).iter().zip(self.column_words(j)).map(|(a, b)| (a ^ b).count_ones() as usize).sum()
    }

    /// Marks column `j` dead. Other columns keep their index and bits.
    pub fn remove_column(&mut self, j: usize) -> Result<()> {
        self.check_live(j)?;
        self.live[j] = false;
        self.live_count -= 1;
        Ok(())
    }

    /// New matrix holding only the live columns, in index order.
    pub fn compact(&self) -> CodeMatrix {
        self.select_columns_unchecked(&self.live_indices())
    }

    /// New matrix made of the given live columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<CodeMatrix> {
        for &j in cols {
            self.check_live(j)?;
        }
        Ok(self.select_columns_unchecked(cols))
    }

    fn select_columns_unchecked(&self, cols: &[usize]) -> CodeMatrix {
        let mut bits = Vec::with_capacity(cols.len() * self.words_per_col);
        for &j in cols {
            bits.extend_from_slice(self.column_words(j));
        }
        CodeMatrix {
            length: self.length,
            size: cols.len(),
            words_per_col: self.words_per_col,
            bits,
            live: vec![true; cols.len()],
            live_count: cols.len(),
        }
    }

    /// Row `i` rendered as `'0'`/`'1'` over the live columns.
    pub fn row_string(&self, i: usize) -> String {
        (0..self.size).filter(|&j| self.live[j]).map(|j| if self.get(i, j) { '1' } else { '0' }).collect()
    }

    /// Column `j` rendered as `'0'`/`'1'`, coordinate 0 first.
    pub fn column_string(&self, j: usize) -> String {
        (0..self.length).map(|i| if self.get(i, j) { '1' } else { '0' }).collect()
    }
}

pub(crate) fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: &[&str]) -> CodeMatrix {
        CodeMatrix::from_bit_strings(cols).unwrap()
    }

    #[test]
    fn from_columns_identity_and_empty() {
        let id = m(&["100", "010", "001"]);
        assert_eq!(id, CodeMatrix::identity(3).unwrap());
        let empty = CodeMatrix::from_columns::<Vec<bool>>(4, &[]).unwrap();
        assert_eq!((empty.length(), empty.size()), (4, 0));
        let two = m(&["110", "011"]);
        assert_eq!((two.length(), two.size()), (3, 2));
        assert_eq!(two.support(0).unwrap(), vec![0, 1]);
    }

    #[test]
    fn from_columns_errors() {
        assert!(matches!(
            CodeMatrix::from_columns(3, &[vec![true, false, true], vec![true]]),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(CodeMatrix::from_columns::<Vec<bool>>(0, &[]), Err(Error::Domain(_))));
    }

    #[test]
    fn support_cases() {
        let id = CodeMatrix::identity(3).unwrap();
        assert_eq!(id.support(1).unwrap(), vec![1]);
        assert_eq!(m(&["000"]).support(0).unwrap(), Vec::<usize>::new());
        assert_eq!(m(&["110"]).support(0).unwrap(), vec![0, 1]);
        assert_eq!(m(&["110"]).weight(0).unwrap(), 2);
        assert!(matches!(id.support(3), Err(Error::Index(_))));
    }

    #[test]
    fn weight_one_rows() {
        let id = CodeMatrix::identity(3).unwrap();
        assert_eq!(id.weight_one_row_count(&[0, 1]).unwrap(), 2);
        assert_eq!(m(&["110", "011"]).weight_one_row_count(&[0, 1]).unwrap(), 2);
        assert_eq!(m(&["101", "101"]).weight_one_row_count(&[0, 1]).unwrap(), 0);
        assert!(matches!(id.weight_one_row_count(&[]), Err(Error::Usage(_))));
        assert!(matches!(id.weight_one_row_count(&[0, 5]), Err(Error::Index(_))));
    }

    #[test]
    fn weight_one_rows_multiword() {
        // 130 rows: three words per column
        let mut a = vec![false; 130];
        let mut b = vec![false; 130];
        let mut c = vec![false; 130];
        for i in [0, 63, 64, 127, 128, 129] {
            a[i] = true;
        }
        for i in [63, 64, 100] {
            b[i] = true;
        }
        for i in [64, 129] {
            c[i] = true;
        }
        let mat = CodeMatrix::from_columns(130, &[a, b, c]).unwrap();
        // rows with exactly one: 0, 127, 128 (a only); 100 (b only); 63 has a,b; 64 has a,b,c; 129 a,c
        assert_eq!(mat.weight_one_row_count(&[0, 1, 2]).unwrap(), 4);
        assert_eq!(mat.hamming_distance(0, 1).unwrap(), 5);
    }

    #[test]
    fn hamming_cases() {
        let mat = m(&["000", "011", "011", "110"]);
        assert_eq!(mat.hamming_distance(0, 1).unwrap(), 2);
        assert_eq!(mat.hamming_distance(1, 2).unwrap(), 0);
        assert_eq!(mat.hamming_distance(3, 1).unwrap(), 2);
        assert!(matches!(mat.hamming_distance(1, 1), Err(Error::Usage(_))));
    }

    #[test]
    fn removal_keeps_indices() {
        let mut id = CodeMatrix::identity(3).unwrap();
        id.remove_column(1).unwrap();
        assert_eq!(id.live_indices(), vec![0, 2]);
        assert_eq!(id.live_count(), 2);
        assert_eq!(id.weight_one_row_count(&[0, 2]).unwrap(), 2);
        assert!(matches!(id.remove_column(1), Err(Error::Usage(_))));
        assert!(matches!(id.weight_one_row_count(&[0, 1]), Err(Error::Usage(_))));
        id.remove_column(0).unwrap();
        id.remove_column(2).unwrap();
        assert!(id.live_indices().is_empty());
        assert_eq!(id.compact().size(), 0);
    }

    #[test]
    fn compact_preserves_bits() {
        let mut mat = m(&["110", "011", "101"]);
        mat.remove_column(1).unwrap();
        let c = mat.compact();
        assert_eq!(c.column_string(0), "110");
        assert_eq!(c.column_string(1), "101");
        assert_eq!(mat.row_string(0), "11");
    }
}
