//! Exact linear algebra: dense matrices over `F_q` and bit-packed matrices over `F_2`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, Polynomial};

/// Row-major dense matrix over some `F_q`. The field is passed to each operation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<u32> = self.row(r).iter().map(|e| e.index()).collect();
            writeln!(f, "{row:?}")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, field: &FieldSpec, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, field: &FieldSpec, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| field.add(a, b)).collect(),
        }
    }

    fn scale(&self, field: &FieldSpec, c: FieldElement) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| field.mul(a, c)).collect(),
        }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self, field: &FieldSpec) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(pr, r);
            let inv = field.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = field.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i == r || f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = field.sub(m.get(i, j), field.mul(f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, field: &FieldSpec) -> usize {
        self.rref(field).1.len()
    }

    /// Indices of a maximal independent subset of rows, chosen greedily in order.
    pub fn independent_rows(&self, field: &FieldSpec) -> Vec<usize> {
        let (_, pivots) = self.transpose().rref(field);
        pivots
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(idx.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// Characteristic polynomial `det(x I - A)` via Hessenberg reduction.
    pub fn char_poly(&self, field: &FieldSpec) -> Polynomial {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else { continue };
            h.swap_rows(piv, j + 1);
            h.swap_cols(piv, j + 1);
            let inv = field.inv(h.get(j + 1, j)).expect("pivot is nonzero");
            for i in j + 2..n {
                let t = field.mul(h.get(i, j), inv);
                if t.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = field.sub(h.get(i, c), field.mul(t, h.get(j + 1, c)));
                    h.set(i, c, v);
                }
                for r in 0..n {
                    let v = field.add(h.get(r, j + 1), field.mul(t, h.get(r, i)));
                    h.set(r, j + 1, v);
                }
            }
        }
        let x = Polynomial::x();
        let mut polys = vec![Polynomial::one()];
        for k in 0..n {
            let mut next = x
                .sub(field, &Polynomial::constant(h.get(k, k)))
                .mul(field, &polys[k]);
            let mut prod = FieldElement::ONE;
            for i in (0..k).rev() {
                prod = field.mul(prod, h.get(i + 1, i));
                let c = field.mul(h.get(i, k), prod);
                if !c.is_zero() {
                    next = next.sub(field, &polys[i].scale(field, c));
                }
            }
            polys.push(next);
        }
        polys.pop().expect("at least the constant polynomial")
    }

    /// `p(A)` by Horner's rule.
    pub fn eval_poly(&self, field: &FieldSpec, p: &Polynomial) -> Matrix {
        let n = self.rows;
        let id = Matrix::identity(n);
        p.coeffs().iter().rev().fold(Matrix::zeros(n, n), |acc, &c| {
            acc.mul(field, self).add(field, &id.scale(field, c))
        })
    }
}

/// Dense `F_2` matrix with 64 columns per word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let s: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v & 1 == 1);
            }
        }
        m
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        BitMatrix {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a ^ b).collect(),
            ..self.clone()
        }
    }

    pub fn add_identity(&self) -> BitMatrix {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i);
            m.set(i, i, !v);
        }
        m
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let (src, dst) = (k * other.words, i * out.words);
                    for w in 0..out.words {
                        out.data[dst + w] ^= other.data[src + w];
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> BitMatrix {
        let mut base = self.clone();
        let mut acc = BitMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Kronecker product; entry `((i1, i2), (j1, j2))` is `a[i1][j1] * b[i2][j2]`.
    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                if !self.get(i1, j1) {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        if other.get(i2, j2) {
                            out.set(i1 * other.rows + i2, j1 * other.cols + j2, true);
                        }
                    }
                }
            }
        }
        out
    }

    /// Rank by forward elimination. Rows are only touched when they carry the
    /// pivot bit, so sparse structure (block diagonals, permutation-like
    /// Kronecker products) stays cheap.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) else { continue };
            if p != rank {
                for w in 0..m.words {
                    m.data.swap(p * m.words + w, rank * m.words + w);
                }
            }
            let start = c / 64;
            for r in rank + 1..m.rows {
                if m.get(r, c) {
                    for w in start..m.words {
                        let v = m.data[rank * m.words + w];
                        m.data[r * m.words + w] ^= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// `dim ker` of the map `v -> M v` on column vectors.
    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn is_identity(&self) -> bool {
        *self == BitMatrix::identity(self.rows)
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    m.set(r, c, FieldElement::ONE);
                }
            }
        }
        m
    }

    pub fn from_matrix(m: &Matrix) -> Result<BitMatrix> {
        let mut out = BitMatrix::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                match m.get(r, c).index() {
                    0 => {}
                    1 => out.set(r, c, true),
                    v => return Err(Error::InvalidParams(format!("{v} is not an F_2 entry"))),
                }
            }
        }
        Ok(out)
    }

    /// Permutation matrix sending basis vector `e_j` to `e_{perm[j]}`.
    pub fn permutation(perm: &[usize]) -> BitMatrix {
        let mut m = BitMatrix::zeros(perm.len(), perm.len());
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, true);
        }
        m
    }
}
