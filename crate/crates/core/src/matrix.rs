//! Small dense complex matrix, row-major.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};
use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Row-major data; fails if the length does not match.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape("data length does not match dimensions"));
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul(&self, rhs: &CMatrix) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, r) in orow.iter_mut().zip(rhs.row(k)) {
                    *o += a * r;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &CMatrix) -> Self {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &CMatrix) -> Self {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    fn zip_with(&self, rhs: &CMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "dimension mismatch"
        );
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        // scaled sum of squares, safe for tiny and huge entries
        let mut scale = 0.0f64;
        let mut ssq = 1.0f64;
        for z in &self.data {
            for v in [z.re.abs(), z.im.abs()] {
                if v > 0.0 {
                    if scale < v {
                        ssq = 1.0 + ssq * (scale / v) * (scale / v);
                        scale = v;
                    } else {
                        ssq += (v / scale) * (v / scale);
                    }
                }
            }
        }
        scale * libm::sqrt(ssq)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Copy of the block `rows r0..r0+h`, `cols c0..c0+w`.
    pub fn submatrix(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        Self::from_fn(h, w, |i, j| self[(r0 + i, c0 + j)])
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// LU factorisation with partial pivoting of a square matrix.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
}

impl Lu {
    pub fn new(a: &CMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Shape("LU needs a square matrix"));
        }
        let n = a.nrows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = a.max_abs();
        for k in 0..n {
            let (p, pv) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold(
                    (k, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
            if pv <= f64::EPSILON * scale * 1e-3 || pv == 0.0 {
                return Err(Error::Singular);
            }
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
            }
            let piv = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / piv;
                lu[(i, k)] = f;
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Ok(Lu { lu, perm })
    }

    pub fn solve(&self, rhs: &CMatrix) -> CMatrix {
        let n = self.lu.nrows();
        assert_eq!(rhs.nrows(), n);
        let m = rhs.ncols();
        let mut x = CMatrix::from_fn(n, m, |i, j| rhs[(self.perm[i], j)]);
        for c in 0..m {
            for i in 0..n {
                let mut s = x[(i, c)];
                for k in 0..i {
                    s -= self.lu[(i, k)] * x[(k, c)];
                }
                x[(i, c)] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[(i, c)];
                for k in i + 1..n {
                    s -= self.lu[(i, k)] * x[(k, c)];
                }
                x[(i, c)] = s / self.lu[(i, i)];
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_and_adjoint() {
        let a = CMatrix::from_vec(
            2,
            2,
            vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(3.0, 0.0)],
        )
        .unwrap();
        let p = a.mul(&a.adjoint());
        // (A A^*) is Hermitian with diag = row norms squared
        assert_eq!(p[(0, 0)], c(6.0, 0.0));
        assert_eq!(p[(1, 1)], c(10.0, 0.0));
        assert_eq!(p[(0, 1)], p[(1, 0)].conj());
    }

    #[test]
    fn frobenius_handles_extremes() {
        let mut a = CMatrix::zeros(2, 2);
        a[(0, 0)] = c(3e200, 0.0);
        a[(1, 1)] = c(0.0, 4e200);
        assert!((a.frobenius_norm() / 5e200 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lu_solves() {
        let a = CMatrix::from_vec(
            3,
            3,
            vec![
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(2.0, 1.0),
                c(1.0, 0.0),
                c(0.0, 1.0),
                c(0.0, 0.0),
                c(4.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
            ],
        )
        .unwrap();
        let b = CMatrix::from_fn(3, 1, |i, _| c(i as f64, 1.0));
        let x = Lu::new(&a).unwrap().solve(&b);
        let r = a.mul(&x).sub(&b);
        assert!(r.max_abs() < 1e-14);
        assert!(matches!(
            Lu::new(&CMatrix::zeros(2, 2)),
            Err(Error::Singular)
        ));
    }
}
