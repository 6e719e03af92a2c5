use automorphic::groups::LEVEL_TWO_FLOOR;
use automorphic::groups::{moebius_apply, transform_hauptmodul, REGISTERED};
use automorphic::numeric::{
    basis_automorphy_residual, basis_vanishing_slope, default_radii, eval_qseries,
    hauptmodul_invariance_residual,
};
use automorphic::order_ledger;
use automorphic::{build_basis, dim_ak, registry_get, EvalConfig, GroupElement, Rational};
use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn sample_elements_fix_the_hauptmodul() {
    let cfg = EvalConfig::default();
    for name in REGISTERED {
        let g = registry_get(name).unwrap();
        for s in &g.elements {
            for p in &s.points {
                let c = cfg.with_min_imag(p.min_imag);
                let r = hauptmodul_invariance_residual(g, &s.element, p.tau, &c).unwrap();
                assert!(r < 1e-8, "{name} {} at {}: {r:e}", s.label, p.tau);
            }
        }
    }
}

#[test]
fn moebius_keeps_points_in_upper_half_plane() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in REGISTERED {
        for s in &registry_get(name).unwrap().elements {
            for _ in 0..100 {
                let tau = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(1e-3..5.0));
                assert!(moebius_apply(&s.element, tau).im > 0.0);
            }
        }
    }
}

#[test]
fn cocycle_is_multiplicative() {
    // j(gh, tau) = j(g, h tau) j(h, tau), up to the sign of the PSL representative
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = GroupElement::from_ints(1, -1, 2, -1).unwrap();
    let h = GroupElement::from_ints(5, 2, 2, 1).unwrap();
    for _ in 0..50 {
        let tau = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.1..2.0));
        let lhs = g.compose(&h).cocycle(tau);
        let rhs = g.cocycle(moebius_apply(&h, tau)) * h.cocycle(tau);
        assert!((lhs - rhs).norm() < 1e-9 || (lhs + rhs).norm() < 1e-9);
    }
}

#[test]
fn weight_four_level_one_form_is_e4_numerically() {
    let cfg = EvalConfig::default();
    let g = registry_get("psl2z").unwrap();
    let b = build_basis(g, 4, 80).unwrap();
    let rho = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    assert!(eval_qseries(&b.forms[0], rho, &cfg).unwrap().norm() < 1e-12);
}

#[test]
fn dimensions_match_constructed_bases() {
    for name in REGISTERED {
        let g = registry_get(name).unwrap();
        for k in (4..=24).step_by(2) {
            let d = dim_ak(g.genus, &g.orders(), k).unwrap();
            assert_eq!(
                build_basis(g, k, 30).unwrap().dim() as i64,
                d,
                "{name} k={k}"
            );
        }
    }
}

#[test]
fn transformed_hauptmodul_is_still_invariant() {
    let cfg = EvalConfig::default();
    let g = registry_get("gamma0_2").unwrap().truncated(100);
    let int = |n: i64| Rational::from_integer(BigInt::from(n));
    let t = transform_hauptmodul(&g, &int(2), &int(1), &int(1), &int(-3)).unwrap();
    let s = &t.elements[0];
    let p = &s.points[0];
    let r = hauptmodul_invariance_residual(&t, &s.element, p.tau, &cfg.with_min_imag(p.min_imag))
        .unwrap();
    assert!(r < 1e-8, "{r:e}");
}

#[test]
fn composite_residual_is_bounded_by_factors() {
    let cfg = EvalConfig::default();
    let g = registry_get("psl2z").unwrap();
    let s = GroupElement::from_ints(0, -1, 1, 0).unwrap();
    let t = GroupElement::from_ints(1, 1, 0, 1).unwrap();
    let st = s.compose(&t);
    for k in [4, 8, 12] {
        let b = build_basis(g, k, 80).unwrap();
        for tau in [Complex64::new(-0.5, 0.9), Complex64::new(-0.55, 0.86)] {
            let mid = moebius_apply(&t, tau);
            for j in 0..b.dim() {
                let r12 = basis_automorphy_residual(&b, j, &st, tau, &cfg).unwrap();
                let r1 = basis_automorphy_residual(&b, j, &s, mid, &cfg).unwrap();
                let r2 = basis_automorphy_residual(&b, j, &t, tau, &cfg).unwrap();
                assert!(
                    r12 <= 10.0 * (r1 + r2) + 1e-6,
                    "k={k} j={j}: {r12:e} vs {r1:e} + {r2:e}"
                );
            }
        }
    }
}

#[test]
fn slopes_match_ledger_at_every_elliptic_vertex() {
    let cfg = EvalConfig::default().with_min_imag(LEVEL_TWO_FLOOR);
    for name in REGISTERED {
        let g = registry_get(name).unwrap();
        for k in [4, 12] {
            let b = build_basis(g, k, 80).unwrap();
            let ledger = order_ledger(g, k, 0).unwrap();
            for (idx, v) in g.vertices.iter().enumerate() {
                if v.location.is_none() {
                    continue;
                }
                let s = basis_vanishing_slope(&b, 0, idx, &default_radii(), &cfg).unwrap();
                let want = ledger.entries[idx].bound as f64;
                assert!(
                    (s - want).abs() < 0.15,
                    "{name} k={k} vertex {idx}: {s} vs {want}"
                );
            }
        }
    }
}
