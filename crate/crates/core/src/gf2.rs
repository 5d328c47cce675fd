//! Bit-packed linear algebra over GF(2).

use std::fmt;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2), one bit per coordinate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Gf2Vector {
        Gf2Vector { len, words: vec![0; words_for(len)] }
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(0);
        for b in bits {
            if v.len % WORD == 0 {
                v.words.push(0);
            }
            v.len += 1;
            v.set(v.len - 1, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_with(&mut self, other: &Gf2Vector) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.get(i))
    }
}

impl std::ops::Add for &Gf2Vector {
    type Output = Gf2Vector;

    fn add(self, rhs: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out.xor_with(rhs);
        out
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A dense GF(2) matrix stored as packed rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Gf2Matrix {
        Gf2Matrix { cols, rows: vec![Gf2Vector::zeros(cols); rows] }
    }

    pub fn from_rows(cols: usize, rows: Vec<Gf2Vector>) -> Gf2Matrix {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        Gf2Matrix { cols, rows }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &Gf2Vector {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.rows[r].flip(c)
    }

    /// Reduced row echelon form in place. Columns are scanned left to right;
    /// the pivot for each column is the first remaining row with a one there.
    /// Returns the pivot columns.
    pub fn reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows.len() {
                break;
            }
            let Some(p) = (next..self.rows.len()).find(|&r| self.rows[r].get(c)) else { continue };
            self.rows.swap(next, p);
            let pivot = self.rows[next].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != next && row.get(c) {
                    row.xor_with(&pivot);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().reduce().len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column in ascending
    /// order, each with a single free coordinate set.
    pub fn nullspace(&self) -> Vec<Gf2Vector> {
        let mut m = self.clone();
        let pivots = m.reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = Gf2Vector::zeros(self.cols);
                v.set(free, true);
                for (r, &p) in pivots.iter().enumerate() {
                    if m.rows[r].get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &Gf2Vector) -> Gf2Vector {
        Gf2Vector::from_bits(self.rows.iter().map(|r| {
            r.words.iter().zip(&v.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
        }))
    }
}

/// Incrementally maintained echelon basis of a subspace, used to test
/// membership and to extend bases.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Gf2Vector)>,
}

impl EchelonBasis {
    pub fn new() -> EchelonBasis {
        EchelonBasis::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, v: &Gf2Vector) -> Gf2Vector {
        let mut v = v.clone();
        for (pivot, row) in &self.rows {
            if v.get(*pivot) {
                v.xor_with(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns `false` if it was already there.
    pub fn insert(&mut self, v: &Gf2Vector) -> bool {
        let r = self.reduce(v);
        let Some(pivot) = r.first_one() else { return false };
        for (_, row) in self.rows.iter_mut() {
            if row.get(pivot) {
                row.xor_with(&r);
            }
        }
        self.rows.push((pivot, r));
        true
    }
}
