//! Conformal harmonic (minimal) disks in Riemannian charts, and the Kobayashi
//! metrics they induce.
//!
//! The crate builds up in layers:
//!
//! * [`expr`] — a small scalar expression language with exact forward-mode
//!   derivatives up to second order, used to define metric tensors.
//! * [`manifold`] — a Riemannian manifold in a single chart: metric tensor,
//!   Christoffel symbols, vector norms, geodesic distance.
//! * [`disk`] — the polar disk grid, Poisson and harmonic-map solvers,
//!   energy/area functionals, Plateau-type conformal solves and seed disks.
//! * [`kobayashi`] — the Kobayashi-Royden metric estimator, chain and
//!   integrated distances, and the scan/probe experiments built on them.
//! * [`oracles`] — independent brute-force computations used to freeze
//!   reference values and cross-check the estimators.
//! * [`cli`] — the command-line front end used by the `kobdisk` binary.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod cli;
pub mod disk;
pub mod expr;
pub mod kobayashi;
pub mod manifold;
pub mod oracles;

pub use disk::{BoundaryCurve, ConformalDisk, DiskGrid, DiskMap};
pub use expr::Expr;
pub use kobayashi::{Chain, MetricEstimate, PathPolyline, SearchBudget};
pub use manifold::{ManifoldSpec, TangentVector};
