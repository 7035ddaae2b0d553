use num_complex::Complex64;

use crate::{Error, Result};

/// Dense complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
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

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite("matrix entry"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
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

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Complex64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Infinity norm (maximum absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// LU factors `PA = LU` of a square matrix, packed in place: the strict lower
/// triangle holds `L` (unit diagonal implied), the rest holds `U`.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: ComplexMatrix,
    perm: Vec<usize>,
}

impl LuFactors {
    /// Factorises `a` with partial (row) pivoting.
    ///
    /// A pivot whose modulus falls below `n·ε·max|a_ij|` is reported as
    /// [`Error::SingularMatrix`].
    pub fn new(mut a: ComplexMatrix) -> Result<Self> {
        let n = a.rows;
        if n != a.cols {
            return Err(Error::InvalidArgument(format!(
                "matrix is not square: {}x{}",
                a.rows, a.cols
            )));
        }
        if !a.is_finite() {
            return Err(Error::NonFinite("matrix entry"));
        }
        let threshold = n as f64 * f64::EPSILON * a.max_abs();
        let mut perm: Vec<usize> = (0..n).collect();

        for k in 0..n {
            let (p, pivot_abs) = (k..n)
                .map(|i| (i, a[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_abs <= threshold || pivot_abs == 0.0 {
                return Err(Error::SingularMatrix {
                    column: k,
                    pivot: pivot_abs,
                    threshold,
                });
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
            }
            let inv_pivot = a[(k, k)].inv();
            let (upper, lower) = a.data.split_at_mut((k + 1) * n);
            let pivot_row = &upper[k * n..(k + 1) * n];
            for row in lower.chunks_exact_mut(n) {
                let factor = row[k] * inv_pivot;
                row[k] = factor;
                if factor.re == 0.0 && factor.im == 0.0 {
                    continue;
                }
                for (dst, src) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                    *dst -= factor * src;
                }
            }
        }
        Ok(Self { lu: a, perm })
    }

    pub fn dim(&self) -> usize {
        self.lu.rows
    }

    /// Solves `A x = b` with the stored factors.
    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.dim();
        if b.len() != n {
            return Err(Error::InvalidArgument(format!(
                "right-hand side has length {}, expected {n}",
                b.len()
            )));
        }
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let s: Complex64 = row[..i].iter().zip(&x[..i]).map(|(l, v)| l * v).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let s: Complex64 = row[i + 1..].iter().zip(&x[i + 1..]).map(|(u, v)| u * v).sum();
            x[i] = (x[i] - s) / row[i];
        }
        Ok(x)
    }
}

/// Solves `a·x = b` by LU factorisation with partial pivoting.
pub fn lu_solve(a: ComplexMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    if a.rows() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "matrix has {} rows but right-hand side has length {}",
            a.rows(),
            b.len()
        )));
    }
    if b.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::NonFinite("right-hand side"));
    }
    LuFactors::new(a)?.solve(b)
}

/// [`lu_solve`] followed by one step of iterative refinement with the
/// residual `b − Ax` computed in working precision.
pub fn solve_refined(a: ComplexMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    if a.rows() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "matrix has {} rows but right-hand side has length {}",
            a.rows(),
            b.len()
        )));
    }
    if b.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::NonFinite("right-hand side"));
    }
    let lu = LuFactors::new(a.clone())?;
    let mut x = lu.solve(b)?;
    let ax = a.mul_vec(&x);
    let r: Vec<Complex64> = b.iter().zip(&ax).map(|(bi, v)| bi - v).collect();
    let dx = lu.solve(&r)?;
    for (xi, d) in x.iter_mut().zip(dx) {
        *xi += d;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_system() {
        let x = lu_solve(ComplexMatrix::identity(2), &[c(1.0, 1.0), c(2.0, 0.0)]).unwrap();
        assert_eq!(x, vec![c(1.0, 1.0), c(2.0, 0.0)]);
    }

    #[test]
    fn diagonal_system() {
        let a = ComplexMatrix::from_row_major(2, 2, vec![c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)])
            .unwrap();
        let x = lu_solve(a, &[c(2.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert!((x[0] - 1.0).norm() < 1e-15 && (x[1] - 1.0).norm() < 1e-15);
    }

    #[test]
    fn two_by_two_elimination() {
        let a = ComplexMatrix::from_row_major(2, 2, vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)])
            .unwrap();
        let x = lu_solve(a, &[c(3.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!((x[0] - 1.0).norm() < 1e-15 && (x[1] - 2.0).norm() < 1e-15);
    }

    #[test]
    fn refined_solve_agrees() {
        let a = ComplexMatrix::from_fn(3, 3, |i, j| c(1.0 / (i + j + 1) as f64, (i as f64 - j as f64) * 0.1));
        let b = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 2.0)];
        let x = solve_refined(a.clone(), &b).unwrap();
        let back = a.mul_vec(&x);
        for (u, v) in back.iter().zip(&b) {
            assert!((u - v).norm() < 1e-13);
        }
        assert!(solve_refined(a, &[c(f64::NAN, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn singular_and_malformed_inputs() {
        let a = ComplexMatrix::from_row_major(2, 2, vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)])
            .unwrap();
        assert!(matches!(
            lu_solve(a, &[c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::SingularMatrix { column: 1, .. })
        ));
        assert!(lu_solve(ComplexMatrix::zeros(2, 3), &[c(1.0, 0.0), c(1.0, 0.0)]).is_err());
        assert!(lu_solve(ComplexMatrix::identity(2), &[c(1.0, 0.0)]).is_err());
        assert!(ComplexMatrix::from_row_major(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn pivoting_is_required() {
        // zero leading entry
        let a = ComplexMatrix::from_row_major(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)])
            .unwrap();
        let x = lu_solve(a, &[c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        assert!((x[0] - 1.0).norm() < 1e-15 && (x[1] - 2.0).norm() < 1e-15);
    }
}
