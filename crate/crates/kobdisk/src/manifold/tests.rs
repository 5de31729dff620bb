use super::*;

#[test]
fn euclidean_metric_is_identity() {
    let spec = ManifoldSpec::euclidean(3);
    let g = spec.metric_at(&[1.0, -2.0, 0.5]).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(g.get(i, j), if i == j { 1.0 } else { 0.0 });
        }
    }
}

#[test]
fn poincare_metric_at_origin_and_half() {
    let spec = ManifoldSpec::poincare_ball(2);
    let g0 = spec.metric_at(&[0.0, 0.0]).unwrap();
    assert_eq!(g0.get(0, 0), 4.0);
    assert_eq!(g0.get(1, 1), 4.0);
    assert_eq!(g0.get(0, 1), 0.0);

    // 4 / (1 - 0.25)^2 = 4 / 0.5625
    let g = spec.metric_at(&[0.5, 0.0]).unwrap();
    let expect = 4.0 / (0.75f64 * 0.75);
    assert!((g.get(0, 0) - expect).abs() < 1e-12);
    assert!((g.get(1, 1) - expect).abs() < 1e-12);
    assert!((expect - 7.111111111111111).abs() < 1e-12);
}

#[test]
fn euclidean_christoffels_vanish() {
    let spec = ManifoldSpec::euclidean(3);
    let gamma = spec.christoffel_at(&[2.0, 3.0, -1.0]).unwrap();
    assert_eq!(gamma.max_abs(), 0.0);
}

#[test]
fn poincare_christoffels_vanish_at_origin() {
    let spec = ManifoldSpec::poincare_ball(2);
    let gamma = spec.christoffel_at(&[0.0, 0.0]).unwrap();
    assert!(gamma.max_abs() < 1e-14);
}

#[test]
fn christoffel_symmetry_in_lower_indices() {
    let spec = ManifoldSpec::poincare_ball(2);
    let gamma = spec.christoffel_at(&[0.3, -0.2]).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                assert_eq!(gamma.get(i, j, k), gamma.get(i, k, j));
            }
        }
    }
}

/// Metric compatibility ∂_k g_ij = Σ_l (g_lj Γ^l_ik + g_il Γ^l_jk), with
/// ∂_k g_ij from central finite differences as the independent route.
#[test]
fn metric_compatibility_identity() {
    let spec = ManifoldSpec::poincare_ball(2);
    let points = [[0.1, 0.2], [0.35, -0.4], [-0.55, 0.1], [0.0, 0.61], [0.25, 0.25]];
    let h = 1e-6;
    for p in points {
        let gamma = spec.christoffel_at(&p).unwrap();
        for k in 0..2 {
            let mut pp = p;
            let mut pm = p;
            pp[k] += h;
            pm[k] -= h;
            let gp = spec.metric_at(&pp).unwrap();
            let gm = spec.metric_at(&pm).unwrap();
            let g = spec.metric_at(&p).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    let fd = (gp.get(i, j) - gm.get(i, j)) / (2.0 * h);
                    let mut rhs = 0.0;
                    for l in 0..2 {
                        rhs += g.get(l, j) * gamma.get(l, i, k) + g.get(i, l) * gamma.get(l, j, k);
                    }
                    assert!(
                        (fd - rhs).abs() < 1e-8 * (1.0 + fd.abs()),
                        "at {p:?}: ∂_{k} g_{i}{j} fd {fd} vs compat {rhs}"
                    );
                }
            }
        }
    }
}

#[test]
fn vector_norms() {
    let spec = ManifoldSpec::euclidean(2);
    let v = TangentVector::new(vec![0.0, 0.0], vec![3.0, 4.0]);
    assert_eq!(spec.vector_norm(&v).unwrap(), 5.0);

    let ball = ManifoldSpec::poincare_ball(2);
    let v = TangentVector::new(vec![0.0, 0.0], vec![1.0, 0.0]);
    assert_eq!(ball.vector_norm(&v).unwrap(), 2.0);

    let zero = TangentVector::new(vec![0.2, 0.1], vec![0.0, 0.0]);
    assert_eq!(ball.vector_norm(&zero).unwrap(), 0.0);
}

#[test]
fn geodesic_straight_line_in_euclidean() {
    let spec = ManifoldSpec::euclidean(3);
    let d = geodesic_distance(&spec, &[0.0, 0.0, 0.0], &[1.0, 2.0, 2.0], 1e-8).unwrap();
    assert!((d - 3.0).abs() < 1e-9, "got {d}");
}

#[test]
fn geodesic_coincident_points() {
    let spec = ManifoldSpec::poincare_ball(2);
    assert_eq!(geodesic_distance(&spec, &[0.1, 0.1], &[0.1, 0.1], 1e-8).unwrap(), 0.0);
}

#[test]
fn geodesic_symmetry_and_triangle() {
    let spec = ManifoldSpec::poincare_ball(2);
    let tol = 1e-5;
    let pts = [[0.0, 0.0], [0.3, 0.1], [-0.2, 0.25]];
    let d01 = geodesic_distance(&spec, &pts[0], &pts[1], tol).unwrap();
    let d10 = geodesic_distance(&spec, &pts[1], &pts[0], tol).unwrap();
    assert!((d01 - d10).abs() < tol, "symmetry: {d01} vs {d10}");
    let d12 = geodesic_distance(&spec, &pts[1], &pts[2], tol).unwrap();
    let d02 = geodesic_distance(&spec, &pts[0], &pts[2], tol).unwrap();
    assert!(d02 <= d01 + d12 + 2.0 * tol);
}

#[test]
fn spec_file_roundtrip() {
    let text = r#"
name = "hyperbolic-plane"
dim = 2

[chart]
kind = "ball"
radius = 1.0

metric = [
  "1 1 4/((1 - x1^2 - x2^2)^2)",
  "2 1 0",
  "2 2 4/((1 - x1^2 - x2^2)^2)",
]
"#;
    let spec = ManifoldSpec::from_toml_str(text).unwrap();
    assert_eq!(spec.dim, 2);
    let builtin = ManifoldSpec::poincare_ball(2);
    let g1 = spec.metric_at(&[0.3, 0.4]).unwrap();
    let g2 = builtin.metric_at(&[0.3, 0.4]).unwrap();
    assert!((g1.get(0, 0) - g2.get(0, 0)).abs() < 1e-14);
}

#[test]
fn spec_file_rejects_missing_entry() {
    let text = r#"
dim = 2
[chart]
kind = "ball"
radius = 1.0
metric = ["1 1 1", "2 2 1"]
"#;
    let err = ManifoldSpec::from_toml_str(text).unwrap_err();
    assert!(matches!(err, SpecError::InconsistentMetric { .. }), "{err}");
}

#[test]
fn spec_file_rejects_upper_triangle() {
    let text = r#"
dim = 2
[chart]
kind = "ball"
radius = 1.0
metric = ["1 1 1", "1 2 0", "2 2 1"]
"#;
    let err = ManifoldSpec::from_toml_str(text).unwrap_err();
    assert!(matches!(err, SpecError::BadMetricEntry { .. }), "{err}");
}

#[test]
fn spec_file_builtin_tag() {
    let text = "dim = 2\nbuiltin = \"unit_disk_flat\"\n";
    let spec = ManifoldSpec::from_toml_str(text).unwrap();
    assert_eq!(spec.builtin, Some(Builtin::UnitDiskFlat));
    assert!(matches!(spec.chart, Chart::Ball { radius } if radius == 1.0));
}

#[test]
fn non_spd_metric_rejected() {
    let text = r#"
dim = 2
[chart]
kind = "box"
bounds = [[-1.0, 1.0], [-1.0, 1.0]]
metric = ["1 1 1", "2 1 0", "2 2 -1"]
"#;
    let err = ManifoldSpec::from_toml_str(text).unwrap_err();
    assert!(matches!(err, SpecError::ValidationFailed { .. }), "{err}");
}

#[test]
fn outside_chart_is_an_error() {
    let spec = ManifoldSpec::unit_disk_flat();
    assert!(spec.metric_at(&[1.5, 0.0]).is_err());
}
