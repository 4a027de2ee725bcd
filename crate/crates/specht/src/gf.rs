//! Dense matrices over `Z/p`, with a packed-bit path for `p = 2`.
//!
//! Row-major storage. Kernels are right kernels: vectors `x` with `M x = 0`.

use std::fmt;

/// Inverse of `a` modulo prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut base: u32, mut exp: u32, p: u32) -> u32 {
    let m = p as u64;
    let mut acc = 1u64 % m;
    let mut b = base as u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u32;
    base
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix({}x{} over F_{})", self.rows, self.cols, self.p)?;
        for i in 0..self.rows.min(12) {
            writeln!(f, "  {:?}", &self.row(i)[..self.cols.min(24)])?;
        }
        Ok(())
    }
}

impl GfMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        GfMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Entries are reduced mod `p` on the way in.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * cols + j] = x.rem_euclid(p as i64) as u32;
            }
        }
        m
    }

    pub fn from_fn(p: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % p;
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m.data[i * columns.len() + j] = x % p;
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.p as u64;
        let c = c as u64 % p;
        GfMatrix {
            data: self.data.iter().map(|&x| (x as u64 * c % p) as u32).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        GfMatrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| (a + b) % p)
                .collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        GfMatrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| (a + p - b) % p)
                .collect(),
            ..self.clone()
        }
    }

    /// `self += c * other`.
    pub fn add_scaled_assign(&mut self, c: u32, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p as u64;
        let c = c as u64 % p;
        if c == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = ((*a as u64 + c * b as u64) % p) as u32;
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        assert_eq!(self.p, other.p);
        let p = self.p as u64;
        let n = other.cols;
        let mut acc = vec![0u64; n];
        let mut out = Self::zeros(self.p, self.rows, n);
        // entries are < p < 2^16 so a row of products fits without reduction
        // as long as the inner dimension stays below 2^32
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as u64;
                for (slot, &b) in acc.iter_mut().zip(other.row(k)) {
                    *slot += a * b as u64;
                }
            }
            for (j, &x) in acc.iter().enumerate() {
                out.data[i * n + j] = (x % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.p, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Stacks `other` under `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        GfMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Columns `start..end`.
    pub fn column_block(&self, start: usize, end: usize) -> Self {
        Self::from_fn(self.p, self.rows, end - start, |i, j| self.get(i, start + j))
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_generic(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(found) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if found != r {
                for j in 0..cols {
                    self.data.swap(found * cols + j, r * cols + j);
                }
            }
            let inv = inv_mod(self.data[r * cols + c], self.p) as u64;
            for j in c..cols {
                let x = &mut self.data[r * cols + j];
                *x = (*x as u64 * inv % p) as u32;
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let f = row[c] as u64;
                if f == 0 {
                    return;
                }
                let neg = p - f;
                for j in c..cols {
                    row[j] = ((row[j] as u64 + neg * pivot_row[j] as u64) % p) as u32;
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form, using packed bits when `p = 2`.
    pub fn rref(&mut self) -> Vec<usize> {
        if self.p == 2 {
            let mut bits = BitMatrix::from_gf(self);
            let pivots = bits.rref();
            *self = bits.to_gf();
            pivots
        } else {
            self.rref_generic()
        }
    }

    pub fn rank(&self) -> usize {
        if self.p == 2 {
            BitMatrix::from_gf(self).rref().len()
        } else {
            self.clone().rref_generic().len()
        }
    }

    /// Basis of the right kernel, one vector per free column, read off the
    /// reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        if self.p == 2 {
            BitMatrix::from_gf(self).nullspace()
        } else {
            self.nullspace_generic()
        }
    }

    pub fn nullspace_generic(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref_generic();
        kernel_from_rref(self.p, self.cols, &pivots, |r, c| m.get(r, c))
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::zeros(self.p, n, 2 * n);
        for i in 0..n {
            aug.data[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1 % self.p;
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(aug.column_block(n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

fn kernel_from_rref(
    p: u32,
    cols: usize,
    pivots: &[usize],
    entry: impl Fn(usize, usize) -> u32,
) -> Vec<Vec<u32>> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u32; cols];
            v[free] = 1 % p;
            for (r, &pc) in pivots.iter().enumerate() {
                let x = entry(r, free);
                v[pc] = (p - x) % p;
            }
            v
        })
        .collect()
}

/// Dense matrix over `F_2`, 64 entries per word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn from_gf(m: &GfMatrix) -> Self {
        assert_eq!(m.p, 2, "bit matrices live over F_2");
        let mut out = Self::zeros(m.rows, m.cols);
        for i in 0..m.rows {
            for (j, &x) in m.row(i).iter().enumerate() {
                if x & 1 == 1 {
                    out.data[i * out.words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        out
    }

    pub fn to_gf(&self) -> GfMatrix {
        GfMatrix::from_fn(2, self.rows, self.cols, |i, j| u32::from(self.get(i, j)))
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn rref(&mut self) -> Vec<usize> {
        let (rows, words) = (self.rows, self.words);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows {
                break;
            }
            let (w, bit) = (c / 64, 1u64 << (c % 64));
            let Some(found) = (r..rows).find(|&i| self.data[i * words + w] & bit != 0) else {
                continue;
            };
            if found != r {
                for k in 0..words {
                    self.data.swap(found * words + k, r * words + k);
                }
            }
            let (before, rest) = self.data.split_at_mut(r * words);
            let (pivot_row, after) = rest.split_at_mut(words);
            let eliminate = |row: &mut [u64]| {
                if row[w] & bit != 0 {
                    for k in w..words {
                        row[k] ^= pivot_row[k];
                    }
                }
            };
            before.chunks_mut(words).for_each(eliminate);
            after.chunks_mut(words).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref();
        kernel_from_rref(2, self.cols, &pivots, |r, c| u32::from(m.get(r, c)))
    }
}
