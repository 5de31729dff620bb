//! Second-order forward-mode jets.
//!
//! A [`Jet2`] carries a value, a gradient of length `n`, and the full
//! symmetric Hessian. Composition follows the usual chain rules:
//! for `f(u)` the gradient is `f'(u) ∇u` and the Hessian
//! `f'(u) Hu + f''(u) ∇u ∇uᵀ`.

use super::{ExprError, MAX_VARS};

/// Value, gradient and Hessian in up to [`MAX_VARS`] variables.
///
/// Fixed-size storage keeps jets `Copy` and allocation-free; only the first
/// `n` (resp. `n*n`) entries are meaningful.
#[derive(Debug, Clone, Copy)]
pub struct Jet2 {
    n: usize,
    v: f64,
    g: [f64; MAX_VARS],
    h: [f64; MAX_VARS * MAX_VARS],
}

impl Jet2 {
    pub fn constant(v: f64, n: usize) -> Self {
        Jet2 { n, v, g: [0.0; MAX_VARS], h: [0.0; MAX_VARS * MAX_VARS] }
    }

    pub fn variable(v: f64, index: usize, n: usize) -> Self {
        let mut j = Self::constant(v, n);
        j.g[index] = 1.0;
        j
    }

    pub fn value(&self) -> f64 {
        self.v
    }

    pub fn gradient(&self) -> &[f64] {
        &self.g[..self.n]
    }

    /// Hessian entry (i, j).
    pub fn hess(&self, i: usize, j: usize) -> f64 {
        self.h[i * MAX_VARS + j]
    }

    pub fn hessian(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.hess(i, j)).collect()).collect()
    }

    pub fn add(&self, o: &Jet2) -> Jet2 {
        let mut r = *self;
        r.v += o.v;
        for i in 0..r.n {
            r.g[i] += o.g[i];
            for j in 0..r.n {
                r.h[i * MAX_VARS + j] += o.h[i * MAX_VARS + j];
            }
        }
        r
    }

    pub fn sub(&self, o: &Jet2) -> Jet2 {
        let mut r = *self;
        r.v -= o.v;
        for i in 0..r.n {
            r.g[i] -= o.g[i];
            for j in 0..r.n {
                r.h[i * MAX_VARS + j] -= o.h[i * MAX_VARS + j];
            }
        }
        r
    }

    pub fn neg(&self) -> Jet2 {
        let mut r = *self;
        r.v = -r.v;
        for i in 0..r.n {
            r.g[i] = -r.g[i];
            for j in 0..r.n {
                r.h[i * MAX_VARS + j] = -r.h[i * MAX_VARS + j];
            }
        }
        r
    }

    pub fn scale(&self, s: f64) -> Jet2 {
        let mut r = *self;
        r.v *= s;
        for i in 0..r.n {
            r.g[i] *= s;
            for j in 0..r.n {
                r.h[i * MAX_VARS + j] *= s;
            }
        }
        r
    }

    pub fn mul(&self, o: &Jet2) -> Jet2 {
        let n = self.n;
        let mut r = Jet2::constant(self.v * o.v, n);
        for i in 0..n {
            r.g[i] = self.g[i] * o.v + self.v * o.g[i];
            for j in 0..n {
                r.h[i * MAX_VARS + j] = self.h[i * MAX_VARS + j] * o.v
                    + self.v * o.h[i * MAX_VARS + j]
                    + self.g[i] * o.g[j]
                    + self.g[j] * o.g[i];
            }
        }
        r
    }

    /// Applies a scalar function given its value and first two derivatives
    /// at `self.v`.
    fn compose(&self, f: f64, df: f64, ddf: f64) -> Jet2 {
        let n = self.n;
        let mut r = Jet2::constant(f, n);
        for i in 0..n {
            r.g[i] = df * self.g[i];
            for j in 0..n {
                r.h[i * MAX_VARS + j] = df * self.h[i * MAX_VARS + j] + ddf * self.g[i] * self.g[j];
            }
        }
        r
    }

    pub fn recip(&self) -> Jet2 {
        let v = self.v;
        self.compose(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))
    }

    pub fn powi(&self, k: i32) -> Jet2 {
        let v = self.v;
        match k {
            0 => Jet2::constant(1.0, self.n),
            1 => *self,
            _ => {
                let kf = f64::from(k);
                self.compose(v.powi(k), kf * v.powi(k - 1), kf * (kf - 1.0) * v.powi(k - 2))
            }
        }
    }

    pub fn exp(&self) -> Jet2 {
        let e = self.v.exp();
        self.compose(e, e, e)
    }

    pub fn ln(&self) -> Result<Jet2, ExprError> {
        let v = self.v;
        if v <= 0.0 {
            return Err(ExprError::Domain { op: "log", arg: v });
        }
        Ok(self.compose(v.ln(), 1.0 / v, -1.0 / (v * v)))
    }

    pub fn sin(&self) -> Jet2 {
        let (s, c) = self.v.sin_cos();
        self.compose(s, c, -s)
    }

    pub fn cos(&self) -> Jet2 {
        let (s, c) = self.v.sin_cos();
        self.compose(c, -s, -c)
    }

    pub fn sqrt(&self) -> Result<Jet2, ExprError> {
        let v = self.v;
        if v < 0.0 {
            return Err(ExprError::Domain { op: "sqrt", arg: v });
        }
        if v == 0.0 {
            return Err(ExprError::Domain { op: "sqrt (derivative)", arg: v });
        }
        let s = v.sqrt();
        Ok(self.compose(s, 0.5 / s, -0.25 / (s * v)))
    }
}
