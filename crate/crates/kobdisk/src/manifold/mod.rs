//! A Riemannian manifold (M, g) in a single chart.
//!
//! The chart is an axis-aligned box or an origin-centered ball; the metric is
//! an n x n field of parsed expressions in the chart coordinates `x1..xn`.
//! All solvers in this crate treat the chart as the whole manifold: disks and
//! paths must stay strictly inside it, with a safety margin expressed as a
//! fraction of the domain scale (default 1e-3).

mod geodesic;
mod linalg;
mod spec_file;

pub use geodesic::geodesic_distance;
pub use linalg::{dot, norm2, SymMat};

use crate::expr::{parse_expr, Expr, ExprError, MAX_VARS};
use thiserror::Error;

/// Default chart-boundary margin as a fraction of the domain scale.
pub const DEFAULT_MARGIN: f64 = 1e-3;

#[derive(Debug, Error)]
pub enum ManifoldError {
    #[error("point {point:?} lies outside the chart (margin {margin})")]
    OutsideChart { point: Vec<f64>, margin: f64 },
    #[error("metric is not positive definite: Cholesky pivot {pivot} = {value}")]
    NotPositiveDefinite { pivot: usize, value: f64 },
    #[error("expression error: {0}")]
    Expr(#[from] ExprError),
    #[error("zero tangent vector where a direction is required")]
    ZeroVector,
    #[error("no admissible path between {p:?} and {q:?} inside the chart")]
    NoPath { p: Vec<f64>, q: Vec<f64> },
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("dimension {dim} out of range (need 2 <= dim <= {MAX_VARS})")]
    BadDimension { dim: usize },
    #[error("chart is invalid: {0}")]
    BadChart(String),
    #[error("metric entry `{entry}` is invalid: {reason}")]
    BadMetricEntry { entry: String, reason: String },
    #[error("metric entries are inconsistent with dim {dim}: {reason}")]
    InconsistentMetric { dim: usize, reason: String },
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("validation failed at grid point {point:?}: {source}")]
    ValidationFailed { point: Vec<f64>, source: ManifoldError },
    #[error("failed to read `{path}`: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("failed to parse `{path}`: {source}")]
    Parse { path: String, source: Box<toml::de::Error> },
}

/// Chart domain: open box or open origin-centered ball.
#[derive(Debug, Clone, PartialEq)]
pub enum Chart {
    Box { bounds: Vec<(f64, f64)> },
    Ball { radius: f64 },
}

impl Chart {
    pub fn dim_hint(&self) -> Option<usize> {
        match self {
            Chart::Box { bounds } => Some(bounds.len()),
            Chart::Ball { .. } => None,
        }
    }

    /// Representative length scale of the domain (used to turn the margin
    /// fraction into an absolute margin).
    pub fn scale(&self) -> f64 {
        match self {
            Chart::Box { bounds } => bounds
                .iter()
                .map(|(lo, hi)| hi - lo)
                .fold(0.0f64, f64::max),
            Chart::Ball { radius } => 2.0 * radius,
        }
    }

    pub fn contains(&self, p: &[f64], margin_fraction: f64) -> bool {
        let m = margin_fraction * self.scale();
        match self {
            Chart::Box { bounds } => bounds
                .iter()
                .zip(p)
                .all(|((lo, hi), x)| *x >= lo + m && *x <= hi - m),
            Chart::Ball { radius } => linalg::norm2(p) <= radius - m,
        }
    }

    /// Euclidean distance from `p` to the chart boundary minus the margin;
    /// negative when outside the safe region.
    pub fn headroom(&self, p: &[f64], margin_fraction: f64) -> f64 {
        let m = margin_fraction * self.scale();
        match self {
            Chart::Box { bounds } => bounds
                .iter()
                .zip(p)
                .map(|((lo, hi), x)| (x - lo).min(hi - x))
                .fold(f64::INFINITY, f64::min)
                - m,
            Chart::Ball { radius } => radius - linalg::norm2(p) - m,
        }
    }

    pub fn center(&self, dim: usize) -> Vec<f64> {
        match self {
            Chart::Box { bounds } => bounds.iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect(),
            Chart::Ball { radius: _ } => vec![0.0; dim],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Euclidean,
    UnitDiskFlat,
    PoincareBall,
}

/// Immutable chart-based description of (M, g).
#[derive(Debug, Clone)]
pub struct ManifoldSpec {
    pub name: String,
    pub dim: usize,
    pub chart: Chart,
    pub builtin: Option<Builtin>,
    /// Lower-triangle entries g_ij for i >= j, row-major over (i, j).
    entries: Vec<Expr>,
    /// True when every Christoffel symbol vanishes identically (constant
    /// metric); lets flat solves skip curvature terms entirely.
    flat: bool,
}

fn tri_index(i: usize, j: usize) -> usize {
    debug_assert!(j <= i);
    i * (i + 1) / 2 + j
}

impl ManifoldSpec {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        chart: Chart,
        lower_triangle: Vec<Expr>,
        builtin: Option<Builtin>,
    ) -> Result<Self, SpecError> {
        if !(2..=MAX_VARS).contains(&dim) {
            return Err(SpecError::BadDimension { dim });
        }
        if let Some(d) = chart.dim_hint() {
            if d != dim {
                return Err(SpecError::BadChart(format!("chart has {d} axes but dim = {dim}")));
            }
        }
        if let Chart::Ball { radius } = &chart {
            if !(*radius > 0.0) {
                return Err(SpecError::BadChart("ball radius must be positive".into()));
            }
        }
        if let Chart::Box { bounds } = &chart {
            if bounds.iter().any(|(lo, hi)| !(hi > lo)) {
                return Err(SpecError::BadChart("box bounds must satisfy lo < hi".into()));
            }
        }
        let want = dim * (dim + 1) / 2;
        if lower_triangle.len() != want {
            return Err(SpecError::InconsistentMetric {
                dim,
                reason: format!("expected {want} lower-triangle entries, got {}", lower_triangle.len()),
            });
        }
        for e in &lower_triangle {
            if e.num_vars() > dim {
                return Err(SpecError::InconsistentMetric {
                    dim,
                    reason: format!("entry uses x{} beyond dim {dim}", e.num_vars()),
                });
            }
        }
        let flat = lower_triangle.iter().all(|e| matches!(e, Expr::Const(_)));
        let spec = ManifoldSpec { name: name.into(), dim, chart, builtin, entries: lower_triangle, flat };
        spec.validate_grid()?;
        Ok(spec)
    }

    /// Flat R^n on a large box chart.
    pub fn euclidean(dim: usize) -> Self {
        let entries = const_metric_entries(dim);
        ManifoldSpec::new(
            format!("euclidean({dim})"),
            dim,
            Chart::Box { bounds: vec![(-100.0, 100.0); dim] },
            entries,
            Some(Builtin::Euclidean),
        )
        .expect("builtin euclidean spec is valid")
    }

    /// The unit disk in R^2 with the flat metric.
    pub fn unit_disk_flat() -> Self {
        ManifoldSpec::new(
            "unit_disk_flat",
            2,
            Chart::Ball { radius: 1.0 },
            const_metric_entries(2),
            Some(Builtin::UnitDiskFlat),
        )
        .expect("builtin unit_disk_flat spec is valid")
    }

    /// The Poincare ball: conformal factor 4/(1-|x|^2)^2 on the unit ball.
    pub fn poincare_ball(dim: usize) -> Self {
        let mut norm2 = String::from("1");
        for k in 1..=dim {
            norm2.push_str(&format!(" - x{k}^2"));
        }
        let factor = format!("4/(({norm2})^2)");
        let mut entries = Vec::new();
        for i in 0..dim {
            for j in 0..=i {
                let src = if i == j { factor.clone() } else { "0".to_string() };
                entries.push(parse_expr(&src).expect("builtin expression parses"));
            }
        }
        ManifoldSpec::new(
            format!("poincare_ball({dim})"),
            dim,
            Chart::Ball { radius: 1.0 },
            entries,
            Some(Builtin::PoincareBall),
        )
        .expect("builtin poincare_ball spec is valid")
    }

    pub fn is_flat(&self) -> bool {
        self.flat
    }

    pub fn contains(&self, p: &[f64], margin_fraction: f64) -> bool {
        self.chart.contains(p, margin_fraction)
    }

    fn require_inside(&self, p: &[f64], margin_fraction: f64) -> Result<(), ManifoldError> {
        if p.len() != self.dim || !self.contains(p, margin_fraction) {
            return Err(ManifoldError::OutsideChart {
                point: p.to_vec(),
                margin: margin_fraction * self.chart.scale(),
            });
        }
        Ok(())
    }

    /// Metric tensor at a chart point; symmetric positive definite.
    pub fn metric_at(&self, p: &[f64]) -> Result<SymMat, ManifoldError> {
        self.require_inside(p, 0.0)?;
        self.metric_unchecked(p)
    }

    pub(crate) fn metric_unchecked(&self, p: &[f64]) -> Result<SymMat, ManifoldError> {
        let mut g = SymMat::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..=i {
                g.set(i, j, self.entries[tri_index(i, j)].eval(p)?);
            }
        }
        Ok(g)
    }

    /// Christoffel symbols of the Levi-Civita connection from exact metric
    /// derivatives: Γ^i_jk = ½ g^{il} (∂_j g_lk + ∂_k g_jl − ∂_l g_jk).
    pub fn christoffel_at(&self, p: &[f64]) -> Result<Christoffel, ManifoldError> {
        self.require_inside(p, 0.0)?;
        Ok(self.metric_jets(p)?.0)
    }

    /// Christoffel symbols together with their first derivatives
    /// ∂_l Γ^i_jk, from exact metric Hessians.
    pub fn christoffel_jet_at(&self, p: &[f64]) -> Result<(Christoffel, ChristoffelGrad), ManifoldError> {
        self.require_inside(p, 0.0)?;
        self.metric_jets(p)
    }

    fn metric_jets(&self, p: &[f64]) -> Result<(Christoffel, ChristoffelGrad), ManifoldError> {
        let n = self.dim;
        // dg[k][i][j] = ∂_k g_ij, ddg[k][l][i][j] = ∂_k ∂_l g_ij
        let mut g = SymMat::zeros(n);
        let mut dg = vec![SymMat::zeros(n); n];
        let mut ddg = vec![SymMat::zeros(n); n * n];
        for i in 0..n {
            for j in 0..=i {
                let jet = self.entries[tri_index(i, j)].eval_jet(p)?;
                g.set(i, j, jet.value());
                for k in 0..n {
                    dg[k].set(i, j, jet.gradient()[k]);
                    for l in 0..n {
                        ddg[k * n + l].set(i, j, jet.hess(k, l));
                    }
                }
            }
        }
        let chol = g.cholesky()?;

        let mut gamma = Christoffel::zeros(n);
        // Lowered symbols Γ_{l,jk} = ½(∂_j g_lk + ∂_k g_jl − ∂_l g_jk), then
        // raise the first index through the metric.
        let mut lowered = vec![0.0; n];
        for j in 0..n {
            for k in 0..=j {
                for l in 0..n {
                    lowered[l] = 0.5 * (dg[j].get(l, k) + dg[k].get(j, l) - dg[l].get(j, k));
                }
                let mut raised = lowered.clone();
                chol.solve(&mut raised);
                for i in 0..n {
                    gamma.set(i, j, k, raised[i]);
                }
            }
        }

        // ∂_m Γ^i_jk = g^{il} [∂_m Γ_{l,jk} − ∂_m g_lr Γ^r_jk]
        let mut grad = ChristoffelGrad::zeros(n);
        let mut rhs = vec![0.0; n];
        for m in 0..n {
            for j in 0..n {
                for k in 0..=j {
                    for (l, r) in rhs.iter_mut().enumerate() {
                        let dlow = 0.5
                            * (ddg[j * n + m].get(l, k) + ddg[k * n + m].get(j, l)
                                - ddg[l * n + m].get(j, k));
                        let mut corr = 0.0;
                        for rr in 0..n {
                            corr += dg[m].get(l, rr) * gamma.get(rr, j, k);
                        }
                        *r = dlow - corr;
                    }
                    let mut raised = rhs.clone();
                    chol.solve(&mut raised);
                    for i in 0..n {
                        grad.set(m, i, j, k, raised[i]);
                    }
                }
            }
        }
        Ok((gamma, grad))
    }

    /// Riemannian norm |ξ|_g = sqrt(g_p(ξ, ξ)).
    pub fn vector_norm(&self, v: &TangentVector) -> Result<f64, ManifoldError> {
        let g = self.metric_at(&v.base)?;
        Ok(g.quadratic(&v.components).max(0.0).sqrt())
    }

    /// Exact gradient c ↦ ∂_c [g_x(d, d)] with the vector d held fixed.
    pub(crate) fn metric_quadratic_gradient(&self, x: &[f64], d: &[f64]) -> Result<Vec<f64>, ManifoldError> {
        let n = self.dim;
        let mut out = vec![0.0; n];
        for i in 0..n {
            for j in 0..=i {
                let jet = self.entries[tri_index(i, j)].eval_jet(x)?;
                let weight = if i == j { d[i] * d[j] } else { 2.0 * d[i] * d[j] };
                for (c, o) in out.iter_mut().enumerate() {
                    *o += weight * jet.gradient()[c];
                }
            }
        }
        Ok(out)
    }

    /// Checks symmetry + positive definiteness of g on a validation grid over
    /// the chart (32 points per axis up to dim 3, fewer in higher dimension).
    pub fn validate_grid(&self) -> Result<(), SpecError> {
        let per_axis: usize = match self.dim {
            2 | 3 => 32,
            4 => 12,
            _ => 6,
        };
        let mut idx = vec![0usize; self.dim];
        loop {
            let point: Vec<f64> = (0..self.dim)
                .map(|a| {
                    let t = (idx[a] as f64 + 0.5) / per_axis as f64;
                    match &self.chart {
                        Chart::Box { bounds } => bounds[a].0 + t * (bounds[a].1 - bounds[a].0),
                        Chart::Ball { radius } => (2.0 * t - 1.0) * radius,
                    }
                })
                .collect();
            if self.contains(&point, DEFAULT_MARGIN) {
                let g = self
                    .metric_unchecked(&point)
                    .map_err(|e| SpecError::ValidationFailed { point: point.clone(), source: e })?;
                g.cholesky()
                    .map_err(|e| SpecError::ValidationFailed { point: point.clone(), source: e })?;
            }
            // odometer increment
            let mut a = 0;
            loop {
                idx[a] += 1;
                if idx[a] < per_axis {
                    break;
                }
                idx[a] = 0;
                a += 1;
                if a == self.dim {
                    return Ok(());
                }
            }
        }
    }
}

fn const_metric_entries(dim: usize) -> Vec<Expr> {
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in 0..=i {
            entries.push(Expr::Const(if i == j { 1.0 } else { 0.0 }));
        }
    }
    entries
}

/// Tangent vector (p, ξ) in chart coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    pub base: Vec<f64>,
    pub components: Vec<f64>,
}

impl TangentVector {
    pub fn new(base: Vec<f64>, components: Vec<f64>) -> Self {
        TangentVector { base, components }
    }
}

/// Christoffel symbols Γ^i_jk, symmetric in (j, k).
#[derive(Debug, Clone)]
pub struct Christoffel {
    n: usize,
    /// Indexed [i][tri(j,k)] with j >= k.
    d: Vec<f64>,
}

impl Christoffel {
    fn zeros(n: usize) -> Self {
        Christoffel { n, d: vec![0.0; n * n * (n + 1) / 2] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        let (j, k) = if j >= k { (j, k) } else { (k, j) };
        self.d[i * self.n * (self.n + 1) / 2 + tri_index(j, k)]
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        let (j, k) = if j >= k { (j, k) } else { (k, j) };
        self.d[i * self.n * (self.n + 1) / 2 + tri_index(j, k)] = v;
    }

    /// Contraction Γ^i_jk a^j b^k for each i.
    pub fn contract(&self, a: &[f64], b: &[f64], out: &mut [f64]) {
        let n = self.n;
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                for k in 0..n {
                    acc += self.get(i, j, k) * a[j] * b[k];
                }
            }
            out[i] = acc;
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.d.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// First derivatives ∂_m Γ^i_jk.
#[derive(Debug, Clone)]
pub struct ChristoffelGrad {
    n: usize,
    d: Vec<f64>,
}

impl ChristoffelGrad {
    fn zeros(n: usize) -> Self {
        ChristoffelGrad { n, d: vec![0.0; n * n * n * (n + 1) / 2] }
    }

    #[inline]
    pub fn get(&self, m: usize, i: usize, j: usize, k: usize) -> f64 {
        let (j, k) = if j >= k { (j, k) } else { (k, j) };
        let stride = self.n * self.n * (self.n + 1) / 2;
        self.d[m * stride + i * self.n * (self.n + 1) / 2 + tri_index(j, k)]
    }

    fn set(&mut self, m: usize, i: usize, j: usize, k: usize, v: f64) {
        let (j, k) = if j >= k { (j, k) } else { (k, j) };
        let stride = self.n * self.n * (self.n + 1) / 2;
        self.d[m * stride + i * self.n * (self.n + 1) / 2 + tri_index(j, k)] = v;
    }
}

#[cfg(test)]
mod tests;
