mod common;

use std::f64::consts::{PI, TAU};

use common::*;
use gammakit::geometry::chart_point;
use gammakit::io::{inner_from_json, inner_to_json, poly_from_json, poly_to_json};
use gammakit::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn complex(bound: f64) -> impl Strategy<Value = Complex64> {
    (-bound..bound, -bound..bound).prop_map(|(re, im)| Complex64::new(re, im))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(complex(2.0), 1..=max_deg + 1).prop_map(Poly::new)
}

fn unit_point() -> impl Strategy<Value = Complex64> {
    (0.0..TAU).prop_map(|t| Complex64::from_polar(1.0, t))
}

fn disc_point() -> impl Strategy<Value = Complex64> {
    (0.0..0.999f64, 0.0..TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reciprocal_is_an_involution(p in poly(8), extra in 0usize..3) {
        let n = p.degree().unwrap_or(0) + extra;
        let back = p.conj_reciprocal(n).unwrap().conj_reciprocal(n).unwrap();
        prop_assert!(back.max_diff(&p) == 0.0);
    }

    #[test]
    fn reciprocal_keeps_modulus_on_the_circle(p in poly(8), z in unit_point()) {
        let n = p.degree().unwrap_or(0);
        let r = p.conj_reciprocal(n).unwrap();
        prop_assert!((r.eval(z).norm() - p.eval(z).norm()).abs() <= 1e-12 * (1.0 + p.norm2() * 10.0));
    }

    #[test]
    fn symmetrized_polynomials_are_symmetric(p in poly(8)) {
        let tol = ToleranceConfig::default();
        let n = p.degree().unwrap_or(0);
        prop_assert!(p.symmetrize(n).unwrap().is_n_symmetric(n, &tol));
    }

    #[test]
    fn modulus_squared_matches_pointwise(p in poly(10), t in 0.0..TAU) {
        let f = modulus_squared(&p);
        let direct = p.eval(Complex64::from_polar(1.0, t)).norm_sqr();
        prop_assert!((f.eval(t) - direct).abs() <= 1e-12 * (1.0 + f.l1()));
    }

    #[test]
    fn open_bidisc_maps_inside(z in disc_point(), w in disc_point()) {
        let tol = ToleranceConfig::default();
        let (s, p) = symmetrize(z, w);
        prop_assume!(z.norm() < 0.99 && w.norm() < 0.99);
        prop_assert_eq!(classify_point(s, p, &tol), GammaRegion::InteriorG);
    }

    #[test]
    fn torus_maps_to_the_distinguished_boundary(z in unit_point(), w in unit_point()) {
        let tol = ToleranceConfig::default();
        let (s, p) = symmetrize(z, w);
        prop_assert_eq!(classify_point(s, p, &tol), GammaRegion::DistinguishedBoundary);
        prop_assert!((s - s.conj() * p).norm() < 1e-12);
        prop_assert!((royal_residual(s, p) - (z - w) * (z - w)).norm() < 1e-12);
    }

    #[test]
    fn mixed_pairs_land_on_the_boundary(z in disc_point(), w in unit_point()) {
        let tol = ToleranceConfig::default();
        prop_assume!(z.norm() < 0.99);
        let (s, p) = symmetrize(z, w);
        prop_assert_eq!(classify_point(s, p, &tol), GammaRegion::BoundaryGamma);
    }

    #[test]
    fn chart_round_trip(x in -1.0..1.0f64, theta in -PI..PI) {
        let tol = ToleranceConfig::default();
        let (s, p) = chart_point(x, theta);
        let c = mobius_chart(s, p, theta, &tol).unwrap();
        prop_assert!((c.x - x).abs() < 1e-12);
        prop_assert!((c.theta - theta).abs() < 1e-12);
    }

    #[test]
    fn poly_json_is_exact(p in poly(12)) {
        prop_assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn synthesized_functions_round_trip(seed in any::<u64>(), n in 1usize..=6) {
        let tol = ToleranceConfig::default();
        let spec = random_spec(&mut rng(seed), n);
        let h = synthesize(&spec, &tol).unwrap();
        prop_assert_eq!(h.degree(), n);
        let back = recover_spec(&h).unwrap();
        let (a, b) = spec_points(&spec);
        let (c, d) = spec_points(&back);
        prop_assert!(multiset_distance(&a, &c).unwrap() < 1e-6);
        prop_assert!(multiset_distance(&b, &d).unwrap() < 1e-6);
        prop_assert_eq!(inner_from_json(&inner_to_json(&h), &tol).unwrap(), h);
    }

    #[test]
    fn royal_polynomial_is_balanced(seed in any::<u64>(), n in 1usize..=6) {
        let tol = ToleranceConfig::default();
        let h = synthesize(&random_spec(&mut rng(seed), n), &tol).unwrap();
        let r = royal_polynomial(&h).unwrap();
        prop_assert!(is_n_balanced(&r, n, &tol));
    }

    #[test]
    fn witness_midpoint_reproduces(seed in any::<u64>(), n in 2usize..=6) {
        let tol = ToleranceConfig::default();
        let h = synthesize(&random_spec(&mut rng(seed), n), &tol).unwrap();
        let (n, k) = royal_profile(&h).unwrap().kind();
        prop_assume!(2 * k <= n);
        let (_, plus, minus) = witness_non_extreme(&h).unwrap();
        prop_assert!(midpoint_gap(&h, &plus, &minus, &disc_points(32)) <= 1e-8);
        let back = convex_combine(&plus, &minus, 0.5).unwrap();
        prop_assert!(function_gap(&back, &h, &disc_points(32)) <= 1e-8);
    }

    #[test]
    fn flatness_is_zero_away_from_nodes(nu in 0usize..3, r in 0.1..0.9f64, t in 0.0..TAU) {
        let h = h_nu(nu, r);
        let z = Complex64::from_polar(1.0, t);
        let profile = royal_profile(&h).unwrap();
        let nearest = profile.circle_nodes().map(|c| (c.location - z).norm()).fold(f64::INFINITY, f64::min);
        prop_assume!(nearest > 0.05);
        prop_assert_eq!(boundary_flatness(&h, z, MAX_FLATNESS_ORDER).unwrap(), 0);
    }
}
