//! Dense linear algebra over a prime field `F_p`.
//!
//! Every homological computation in the crate (Hom spaces, syzygies, Ext,
//! decompositions) bottoms out in the row reduction implemented here. Sizes are
//! desk scale, so everything is dense and `u32` backed.

use std::fmt;

use crate::error::{Error, Result};

/// A prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    p: u32,
}

impl Default for Fp {
    fn default() -> Self {
        Fp { p: 2 }
    }
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=65_521).contains(&p)
            || !(2..)
                .take_while(|d| d * d <= p)
                .all(|d| !p.is_multiple_of(d))
        {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Reduce an arbitrary integer into `{0, .., p-1}`.
    #[inline]
    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        // Fermat
        let mut base = a as u64 % self.p as u64;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            exp >>= 1;
        }
        acc as u32
    }

    /// Every element of the field, in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

/// A dense `rows x cols` matrix over `F_p`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[F_{}; {}x{}]", self.field.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "\n  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of a row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from integer rows; entries are reduced mod p. All rows must
    /// have length `cols`.
    pub fn from_rows(field: Fp, cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix row {r}");
            for (c, &x) in row.iter().enumerate() {
                m.data[r * cols + c] = field.from_i64(x);
            }
        }
        m
    }

    pub fn from_vec(field: Fp, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&x| x < field.p));
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u32) {
        debug_assert!(x < self.field.p);
        self.data[r * self.cols + c] = x;
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        assert_eq!(self.field, other.field);
        let p = self.field.p as u64;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot += a * b as u64;
                }
                // keep the accumulator bounded for large p
                if p > 256 {
                    acc.iter_mut().for_each(|s| *s %= p);
                }
            }
            for (c, s) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = (s % p) as u32;
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix::from_vec(f, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Matrix::from_vec(f, self.rows, self.cols, data)
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let f = self.field;
        Matrix::from_vec(
            f,
            self.rows,
            self.cols,
            self.data.iter().map(|&a| f.mul(a, s)).collect(),
        )
    }

    /// `self + s * other`, in place.
    pub fn add_scaled(&mut self, other: &Matrix, s: u32) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(b, s));
        }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = Matrix::zeros(self.field, self.rows, cols);
        for r in 0..self.rows {
            out.data[r * cols..r * cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * cols + self.cols..(r + 1) * cols].copy_from_slice(other.row(r));
        }
        out
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::from_vec(self.field, self.rows + other.rows, self.cols, data)
    }

    /// Block diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        out.write_block(0, 0, self);
        out.write_block(self.rows, self.cols, other);
        out
    }

    pub fn write_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix::from_vec(self.field, rows.len(), self.cols, data)
    }

    /// Reduced row echelon form together with rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..cols {
                    m.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = f.inv(m.data[r * cols + c]);
            if inv != 1 {
                for k in c..cols {
                    m.data[r * cols + k] = f.mul(m.data[r * cols + k], inv);
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = m.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for k in c..cols {
                    let v = m.data[r * cols + k];
                    if v != 0 {
                        let cell = &mut m.data[i * cols + k];
                        *cell = f.add(*cell, f.mul(neg, v));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Right null space, as a subspace of `F_p^cols`.
    pub fn kernel(&self) -> Subspace {
        let Rref {
            matrix,
            rank,
            pivots,
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let f = self.field;
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = f.neg(matrix.get(row, free));
            }
            basis.push(v);
        }
        Subspace::from_vectors(f, self.cols, basis)
    }

    /// Column space, as a subspace of `F_p^rows`.
    pub fn image(&self) -> Subspace {
        Subspace::from_matrix_rows(&self.transpose())
    }

    /// Solve `self * X = rhs`. Returns one solution or `NoSolution`.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve: row mismatch");
        let aug = self.hstack(rhs);
        let Rref {
            matrix,
            rank,
            pivots,
        } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate().take(rank) {
            for j in 0..rhs.cols {
                x.set(pc, j, matrix.get(row, self.cols + j));
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let r = self.hstack(&Matrix::identity(self.field, n)).rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.matrix.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        self.rows == 0 || self.pow(self.rows as u64).is_zero()
    }
}

/// A subspace of `F_p^n` held in canonical (reduced echelon) form, so that
/// equality of subspaces is equality of values.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    /// Rows are the canonical basis vectors.
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: Fp, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: Fp, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
        }
    }

    pub fn from_vectors(field: Fp, ambient: usize, vectors: Vec<Vec<u32>>) -> Self {
        let rows = vectors.len();
        let data: Vec<u32> = vectors.into_iter().flatten().collect();
        Self::from_matrix_rows(&Matrix::from_vec(field, rows, ambient, data))
    }

    /// The row space of `m`.
    pub fn from_matrix_rows(m: &Matrix) -> Self {
        let r = m.rref();
        Subspace {
            ambient: m.cols(),
            basis: r.matrix.block(0, 0, r.rank, m.cols()),
        }
    }

    pub fn field(&self) -> Fp {
        self.basis.field()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis vectors as rows.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Canonical basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_columns(&self) -> Matrix {
        self.basis.transpose()
    }

    pub fn vectors(&self) -> Vec<Vec<u32>> {
        self.basis.to_rows()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = self.field();
        let mut w = v.to_vec();
        // reduce against the echelon basis
        for r in 0..self.dim() {
            let row = self.basis.row(r);
            let pc = row.iter().position(|&x| x != 0).expect("echelon row");
            let c = w[pc];
            if c != 0 {
                let neg = f.neg(c);
                for (x, &b) in w.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(neg, b));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Self::from_matrix_rows(&self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(f, self.ambient);
        }
        // columns u_1..u_k, w_1..w_l ; kernel vectors give sum a_i u_i = -sum b_j w_j
        let cols = self.basis_columns().hstack(&other.basis_columns());
        let ker = cols.kernel();
        let k = self.dim();
        let u = self.basis_columns();
        let mut vecs = Vec::new();
        for v in ker.vectors() {
            let coeffs = Matrix::from_vec(f, k, 1, v[..k].to_vec());
            vecs.push(u.mul(&coeffs).column(0));
        }
        Subspace::from_vectors(f, self.ambient, vecs)
    }

    /// Columns of the returned matrix extend the basis of `self` to a basis
    /// of the ambient space (a complement).
    pub fn complement_columns(&self) -> Matrix {
        let f = self.field();
        let mut pivot = vec![false; self.ambient];
        for r in 0..self.dim() {
            let pc = self.basis.row(r).iter().position(|&x| x != 0).unwrap();
            pivot[pc] = true;
        }
        let free: Vec<usize> = (0..self.ambient).filter(|&c| !pivot[c]).collect();
        let mut m = Matrix::zeros(f, self.ambient, free.len());
        for (j, &c) in free.iter().enumerate() {
            m.set(c, j, 1);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(1).is_err());
        assert!(Fp::new(7).is_ok());
    }

    #[test]
    fn rref_identity_and_zero() {
        let i = Matrix::identity(f2(), 3);
        let r = i.rref();
        assert_eq!(r.matrix, i);
        assert_eq!(r.rank, 3);

        let z = Matrix::zeros(f2(), 2, 4);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_all_ones_over_f2() {
        let m = Matrix::from_rows(f2(), 2, &[vec![1, 1], vec![1, 1]]);
        let r = m.rref();
        assert_eq!(
            r.matrix,
            Matrix::from_rows(f2(), 2, &[vec![1, 1], vec![0, 0]])
        );
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn solve_cases() {
        let f = f2();
        let b = Matrix::from_rows(f, 2, &[vec![1, 0], vec![1, 1]]);
        assert_eq!(Matrix::identity(f, 2).solve(&b).unwrap(), b);

        let z = Matrix::zeros(f, 2, 2);
        assert_eq!(z.solve(&z).unwrap(), z);
        assert!(matches!(z.solve(&b), Err(Error::NoSolution)));
    }

    #[test]
    fn kernel_and_image_small() {
        let f = f2();
        let z = Matrix::zeros(f, 2, 3);
        assert_eq!(z.kernel().dim(), 3);
        assert!(z.image().is_zero());

        let i = Matrix::identity(f, 3);
        assert!(i.kernel().is_zero());
        assert!(i.image().is_full());

        let m = Matrix::from_rows(f, 2, &[vec![1, 1]]);
        let k = m.kernel();
        assert_eq!(k.vectors(), vec![vec![1, 1]]);
        assert!(m.image().is_full());
        assert_eq!(m.image().ambient(), 1);
    }

    #[test]
    fn inverse_over_f3() {
        let f = Fp::new(3).unwrap();
        let m = Matrix::from_rows(f, 2, &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 2));
        let singular = Matrix::from_rows(f, 2, &[vec![1, 2], vec![2, 1]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let f = f2();
        let u = Subspace::from_vectors(f, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::from_vectors(f, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(u.intersect(&w).vectors(), vec![vec![0, 1, 0]]);
        assert_eq!(u.sum(&w).dim(), 3);
    }
}
