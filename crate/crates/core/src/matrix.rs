//! Dense matrices over an exact ring.

use std::fmt;

use crate::gaussian::GaussianRational;
use crate::ring::{Field, IntegralDomain, Ring};

#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

/// Matrices with Gaussian-rational entries (monodromies, representations).
pub type QMatrix = Matrix<GaussianRational>;

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one();
        }
        m
    }

    pub fn scalar(n: usize, value: &R) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = value.clone();
        }
        m
    }

    /// Builds from row vectors; `None` when rows are ragged.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        let data: Vec<R> = rows.into_iter().flatten().collect();
        Some(Self { rows: r, cols: if r == 0 { 0 } else { c }, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
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

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add_ref(b)).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub_ref(b)).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &R) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| s.mul_ref(a)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.neg_ref()).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    pub fn pow(&self, exp: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = exp;
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

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        Self::from_fn(r, c, |i, j| {
            let a = self.get(i / rhs.rows, j / rhs.cols);
            if a.is_zero() {
                return R::zero();
            }
            a.mul_ref(rhs.get(i % rhs.rows, j % rhs.cols))
        })
    }

    /// Block-diagonal direct sum.
    pub fn block_diag(blocks: &[Self]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Places `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn commutes_with(&self, rhs: &Self) -> bool {
        self.mul(rhs) == rhs.mul(self)
    }

    /// Determinant by cofactor expansion along the first row. Exponential; test oracle only.
    pub fn det_cofactor(&self) -> R {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return R::one();
        }
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = R::zero();
        for j in 0..n {
            let a = self.get(0, j);
            if a.is_zero() {
                continue;
            }
            let minor = Self::from_fn(n - 1, n - 1, |r, c| {
                let cc = if c < j { c } else { c + 1 };
                self.get(r + 1, cc).clone()
            });
            let term = a.mul_ref(&minor.det_cofactor());
            acc = if j % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
        }
        acc
    }
}

impl<R: IntegralDomain> Matrix<R> {
    /// Fraction-free (Bareiss) determinant; every division is exact.
    pub fn det_bareiss(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::one();
        }
        let mut a = self.clone();
        let mut sign_flip = false;
        let mut prev = R::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return R::zero();
                };
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                sign_flip = !sign_flip;
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                let aik = a.get(i, k).clone();
                for j in k + 1..n {
                    let aij = a.get(i, j);
                    let akj = a.get(k, j);
                    let num = if aik.is_zero() || akj.is_zero() {
                        pivot.mul_ref(aij)
                    } else {
                        pivot.mul_ref(aij).sub_ref(&aik.mul_ref(akj))
                    };
                    let v = if num.is_zero() {
                        R::zero()
                    } else {
                        num.div_exact(&prev).expect("Bareiss division must be exact")
                    };
                    a.set(i, j, v);
                }
                a.set(i, k, R::zero());
            }
            prev = pivot;
        }
        let det = a.get(n - 1, n - 1).clone();
        if sign_flip {
            det.neg_ref()
        } else {
            det
        }
    }
}

impl<F: Field> Matrix<F> {
    /// Row-reduces a copy; returns (reduced matrix, pivot columns).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(r * a.cols + j, p * a.cols + j);
                }
            }
            let inv = a.get(r, c).inv().expect("nonzero pivot");
            for j in 0..a.cols {
                let v = a.get(r, j).mul_ref(&inv);
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..a.cols {
                    let v = a.get(i, j).sub_ref(&f.mul_ref(a.get(r, j)));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Self::identity(n));
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| red.get(i, n + j).clone()))
    }

    /// Raises to an integer power, inverting for negative exponents.
    pub fn powi(&self, exp: i64) -> Option<Self> {
        if exp >= 0 {
            Some(self.pow(exp as u64))
        } else {
            self.inverse().map(|m| m.pow(exp.unsigned_abs()))
        }
    }
}

impl QMatrix {
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Option<Self> {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| GaussianRational::from_int(v)).collect()).collect(),
        )
    }

    /// Cyclic permutation matrix sending basis vector `e_i` to `e_{i+1 mod n}`.
    pub fn cyclic_permutation(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == (j + 1) % n {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        })
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix").field("rows", &self.rows).field("cols", &self.cols).field("data", &self.data).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[Vec<i64>]) -> QMatrix {
        QMatrix::from_int_rows(rows).unwrap()
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = q(&[vec![2, -1, 0, 3], vec![1, 4, 2, 0], vec![0, 5, -2, 1], vec![3, 0, 1, 1]]);
        assert_eq!(m.det_bareiss(), m.det_cofactor());
        let needs_swap = q(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(needs_swap.det_bareiss(), GaussianRational::from_int(-1));
        let singular = q(&[vec![1, 2], vec![2, 4]]);
        assert!(singular.det_bareiss().is_zero());
        assert_eq!(QMatrix::zeros(0, 0).det_bareiss(), GaussianRational::one());
    }

    #[test]
    fn inverse_and_rank() {
        let m = q(&[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(2));
        assert!(q(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
        assert_eq!(q(&[vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn kron_of_identities() {
        let k = QMatrix::identity(2).kron(&QMatrix::identity(3));
        assert_eq!(k, QMatrix::identity(6));
        let p = QMatrix::cyclic_permutation(3);
        assert_eq!(p.pow(3), QMatrix::identity(3));
    }
}
