//! Manifold spec files: a TOML document with `name`, `dim`, a `chart` table,
//! and either a `builtin` tag or a list of lower-triangle metric entries of
//! the form `"i j expression"`.
//!
//! ```toml
//! name = "hyperbolic-plane"
//! dim = 2
//!
//! [chart]
//! kind = "ball"
//! radius = 1.0
//!
//! metric = [
//!   "1 1 4/((1 - x1^2 - x2^2)^2)",
//!   "2 1 0",
//!   "2 2 4/((1 - x1^2 - x2^2)^2)",
//! ]
//! ```

use super::{Builtin, Chart, ManifoldSpec, SpecError};
use crate::expr::parse_expr;
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Deserialize)]
struct SpecDoc {
    name: Option<String>,
    dim: usize,
    chart: Option<ChartDoc>,
    builtin: Option<String>,
    metric: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
struct ChartDoc {
    kind: String,
    radius: Option<f64>,
    bounds: Option<Vec<Vec<f64>>>,
}

impl ManifoldSpec {
    /// Loads and validates a manifold spec file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, SpecError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&text).map_err(|e| match e {
            SpecError::Parse { source, .. } => SpecError::Parse { path: path.display().to_string(), source },
            other => other,
        })
    }

    pub fn from_toml_str(text: &str) -> Result<Self, SpecError> {
        let doc: SpecDoc = toml::from_str(text).map_err(|source| SpecError::Parse {
            path: "<inline>".to_string(),
            source: Box::new(source),
        })?;

        // A builtin tag overrides any metric list.
        if let Some(tag) = &doc.builtin {
            return builtin_from_tag(tag, doc.dim);
        }

        let chart_doc = doc
            .chart
            .ok_or_else(|| SpecError::BadChart("missing `chart` table".into()))?;
        let chart = match chart_doc.kind.as_str() {
            "ball" => Chart::Ball {
                radius: chart_doc
                    .radius
                    .ok_or_else(|| SpecError::BadChart("ball chart requires `radius`".into()))?,
            },
            "box" => {
                let raw = chart_doc
                    .bounds
                    .ok_or_else(|| SpecError::BadChart("box chart requires `bounds`".into()))?;
                let mut bounds = Vec::with_capacity(raw.len());
                for pair in raw {
                    if pair.len() != 2 {
                        return Err(SpecError::BadChart("each bound must be [lo, hi]".into()));
                    }
                    bounds.push((pair[0], pair[1]));
                }
                Chart::Box { bounds }
            }
            other => return Err(SpecError::BadChart(format!("unknown chart kind `{other}`"))),
        };

        let dim = doc.dim;
        let lines = doc.metric.ok_or_else(|| SpecError::InconsistentMetric {
            dim,
            reason: "missing `metric` entries (and no `builtin` tag)".into(),
        })?;

        let mut entries: Vec<Option<crate::expr::Expr>> = vec![None; dim * (dim + 1) / 2];
        for line in &lines {
            let (i, j, expr_src) = split_entry(line)
                .ok_or_else(|| SpecError::BadMetricEntry {
                    entry: line.clone(),
                    reason: "expected `i j expression` with 1-based indices".into(),
                })?;
            if i < 1 || j < 1 || i > dim || j > dim {
                return Err(SpecError::BadMetricEntry {
                    entry: line.clone(),
                    reason: format!("indices out of range for dim {dim}"),
                });
            }
            if j > i {
                return Err(SpecError::BadMetricEntry {
                    entry: line.clone(),
                    reason: "entries must be lower-triangle (i >= j)".into(),
                });
            }
            let slot = (i - 1) * i / 2 + (j - 1);
            if entries[slot].is_some() {
                return Err(SpecError::BadMetricEntry {
                    entry: line.clone(),
                    reason: "duplicate entry".into(),
                });
            }
            let expr = parse_expr(expr_src).map_err(|e| SpecError::BadMetricEntry {
                entry: line.clone(),
                reason: e.to_string(),
            })?;
            entries[slot] = Some(expr);
        }
        let mut flat_entries = Vec::with_capacity(entries.len());
        for (slot, e) in entries.into_iter().enumerate() {
            match e {
                Some(e) => flat_entries.push(e),
                None => {
                    return Err(SpecError::InconsistentMetric {
                        dim,
                        reason: format!("missing lower-triangle entry #{}", slot + 1),
                    })
                }
            }
        }

        let name = doc.name.unwrap_or_else(|| "unnamed".to_string());
        ManifoldSpec::new(name, dim, chart, flat_entries, None)
    }
}

fn builtin_from_tag(tag: &str, dim: usize) -> Result<ManifoldSpec, SpecError> {
    match tag {
        "euclidean" => Ok(ManifoldSpec::euclidean(dim)),
        "unit_disk_flat" => {
            if dim != 2 {
                return Err(SpecError::BadDimension { dim });
            }
            Ok(ManifoldSpec::unit_disk_flat())
        }
        "poincare_ball" => Ok(ManifoldSpec::poincare_ball(dim)),
        other => Err(SpecError::UnknownBuiltin(other.to_string())),
    }
}

fn split_entry(line: &str) -> Option<(usize, usize, &str)> {
    let line = line.trim();
    let (i_str, rest) = line.split_once(char::is_whitespace)?;
    let rest = rest.trim_start();
    let (j_str, expr) = rest.split_once(char::is_whitespace)?;
    Some((i_str.parse().ok()?, j_str.parse().ok()?, expr.trim_start()))
}
