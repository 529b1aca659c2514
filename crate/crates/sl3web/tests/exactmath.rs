mod common;

use common::{diamond, wedge_values};
use proptest::prelude::*;
use sl3web::exactmath::*;

#[test]
fn green_table_matches_wedge_values() {
    for (p, want) in wedge_values() {
        assert_eq!(green_infinity(p), want, "at {p}");
    }
    let table = green_table(5);
    assert_eq!(table.len(), 21);
    for ((p, got), (q, want)) in {
        let mut a = table.clone();
        a.sort_by_key(|e| e.0);
        let mut b = wedge_values();
        b.sort_by_key(|e| e.0);
        a.into_iter().zip(b)
    } {
        assert_eq!(p, q);
        assert_eq!(got, want);
    }
}

#[test]
fn dihedral_invariance() {
    for p in diamond(10) {
        let v = green_infinity(p);
        for (q, _) in p.d3_orbit() {
            assert_eq!(green_infinity(q), v, "{p} vs {q}");
        }
    }
}

#[test]
fn harmonic_off_origin() {
    for p in diamond(10).filter(|p| *p != LatticePointEZ::ORIGIN) {
        assert!(laplacian(green_infinity, p).is_zero(), "at {p}");
    }
}

#[test]
fn point_source_at_origin_has_unit_negative_mass() {
    // With the printed table the discrete Laplacian at the origin is −1, the
    // sign of the expected-visits Green's function.
    assert_eq!(laplacian(green_infinity, LatticePointEZ::ORIGIN), ExactValue::from_ints((-1, 1), (0, 1)));
}

#[test]
fn wedge_function_vanishes_on_rays_and_is_harmonic() {
    for z0 in [pt(1, 1), pt(2, 1), pt(1, 3), pt(4, 2)] {
        let g = |z: LatticePointEZ| green_wedge(z, z0).unwrap();
        for x in 0..15 {
            for y in 0..15 {
                let z = pt(x, y);
                if z.on_wedge_boundary() {
                    assert!(g(z).is_zero(), "G_W({z}, {z0})");
                } else {
                    let want = if z == z0 { -1 } else { 0 };
                    assert_eq!(laplacian(g, z), ExactValue::from_ints((want, 1), (0, 1)), "at {z}, source {z0}");
                }
            }
        }
    }
}

#[test]
fn hitting_function_is_harmonic_with_point_boundary_data() {
    for a in [pt(0, 2), pt(0, 3), pt(1, 0), pt(2, 0), pt(5, 0)] {
        let h = |z: LatticePointEZ| h_extended(a, z).unwrap();
        for x in 1..12 {
            for y in 1..12 {
                let z = pt(x, y);
                assert!(laplacian(h, z).is_zero(), "h_{a} at {z}");
            }
        }
        assert_eq!(h(a), ExactValue::from_ints((1, 1), (0, 1)));
    }
}

#[test]
fn worked_example_and_mirror() {
    let h = h_point(pt(0, 2), pt(1, 1)).unwrap();
    assert_eq!(h.to_string(), "243/40 * sqrt(3)/pi - 3");
    assert_eq!(h_point(pt(1, 0), pt(1, 1)).unwrap(), h);
    assert_eq!(green_wedge(pt(1, 1), pt(1, 1)).unwrap(), ExactValue::from_ints((-9, 1), (729, 40)));
    assert!(green_wedge(pt(7, 0), pt(2, 3)).unwrap().is_zero());
    assert!(green_wedge(pt(0, 7), pt(2, 3)).unwrap().is_zero());
}

#[test]
fn red_crossing_probabilities_are_subprobabilities() {
    let mut sum = 0.0;
    for k in 0..=20 {
        let v = h_point(pt(0, k + 2), pt(1, 1)).unwrap().to_f64();
        assert!(v > 0.0 && v < 1.0, "k = {k}: {v}");
        sum += v;
    }
    assert!(sum < 1.0);
}

#[test]
fn partition_of_unity() {
    for z in [pt(1, 1), pt(2, 1), pt(1, 2), pt(3, 3)] {
        let g = g_value(z, GMode::Series).unwrap();
        assert!(g.residual.unwrap().abs() < 1e-6, "{z}: {g:?}");
    }
}

#[test]
fn full_boundary_function_both_modes() {
    let s = g_value(pt(1, 1), GMode::Series).unwrap();
    let q = g_value(pt(1, 1), GMode::Quadrature).unwrap();
    assert!((s.value - q.value).abs() < 1e-4);
    let partial: f64 = (0..200).map(|k| h_point_f64(pt(0, k + 2), pt(1, 1)).unwrap()).sum();
    assert!((1.0 - partial - s.value).abs() < 1e-6);
    assert_eq!(g_value(pt(0, 4), GMode::Series).unwrap().value, 0.0);
}

#[test]
fn text_forms() {
    assert_eq!(integral_i(-1).to_string(), "2/3 * pi");
    assert_eq!(green_infinity(pt(1, 1)).to_string(), "-9/4 * sqrt(3)/pi");
    assert_eq!(green_infinity(pt(2, 0)).to_string(), "3 * sqrt(3)/pi - 3");
    assert_eq!(green_infinity(pt(3, 2)).to_string(), "-27/20 * sqrt(3)/pi - 1");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_reduction_agrees_with_quadrature(x in -14i64..=14, y in -14i64..=14) {
        let p = pt(x, y);
        let exact = green_infinity(p).to_f64();
        let numeric = green_infinity_f64(p);
        prop_assert!((exact - numeric).abs() < 1e-9 * exact.abs().max(1.0), "{} {} {}", p, exact, numeric);
    }

    #[test]
    fn hitting_values_lie_in_unit_interval(t in 2i64..30, m in 1i64..30, x in 1i64..8, y in 1i64..8) {
        for a in [pt(0, t), pt(m, 0)] {
            let v = h_point(a, pt(x, y)).unwrap().to_f64();
            prop_assert!((0.0..=1.0).contains(&v), "h_{}({},{}) = {}", a, x, y, v);
        }
    }
}
