//! Tiny dense symmetric matrices for per-point metric work (n <= 8).

use super::ManifoldError;
use crate::expr::MAX_VARS;

/// Symmetric n x n matrix with fixed-size storage, `Copy` for use in hot loops.
#[derive(Debug, Clone, Copy)]
pub struct SymMat {
    pub n: usize,
    d: [f64; MAX_VARS * MAX_VARS],
}

impl SymMat {
    pub fn zeros(n: usize) -> Self {
        SymMat { n, d: [0.0; MAX_VARS * MAX_VARS] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * MAX_VARS + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.d[i * MAX_VARS + j] = v;
        self.d[j * MAX_VARS + i] = v;
    }

    /// Bilinear form xᵀ M y.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            let mut row = 0.0;
            for j in 0..self.n {
                row += self.get(i, j) * y[j];
            }
            acc += x[i] * row;
        }
        acc
    }

    pub fn quadratic(&self, x: &[f64]) -> f64 {
        self.bilinear(x, x)
    }

    /// Cholesky factorization; fails when the matrix is not positive definite.
    pub fn cholesky(&self) -> Result<Chol, ManifoldError> {
        let n = self.n;
        let mut l = [0.0; MAX_VARS * MAX_VARS];
        for i in 0..n {
            for j in 0..=i {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s -= l[i * MAX_VARS + k] * l[j * MAX_VARS + k];
                }
                if i == j {
                    if s <= 0.0 {
                        return Err(ManifoldError::NotPositiveDefinite { pivot: i, value: s });
                    }
                    l[i * MAX_VARS + i] = s.sqrt();
                } else {
                    l[i * MAX_VARS + j] = s / l[j * MAX_VARS + j];
                }
            }
        }
        Ok(Chol { n, l })
    }
}

/// Lower-triangular Cholesky factor.
#[derive(Debug, Clone, Copy)]
pub struct Chol {
    n: usize,
    l: [f64; MAX_VARS * MAX_VARS],
}

impl Chol {
    /// Solves M x = b in place.
    pub fn solve(&self, b: &mut [f64]) {
        let n = self.n;
        for i in 0..n {
            let mut s = b[i];
            for k in 0..i {
                s -= self.l[i * MAX_VARS + k] * b[k];
            }
            b[i] = s / self.l[i * MAX_VARS + i];
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            for k in (i + 1)..n {
                s -= self.l[k * MAX_VARS + i] * b[k];
            }
            b[i] = s / self.l[i * MAX_VARS + i];
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}
