//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::TAU;

use gammakit::{canonical_example, Family, GammaInner, Poly, SynthesisSpec, ToleranceConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MIN_SEPARATION: f64 = 0.3;
pub const MAX_INTERIOR: f64 = 0.9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unimodular(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..TAU))
}

pub fn in_disc(rng: &mut ChaCha8Rng, max_modulus: f64) -> Complex64 {
    // uniform in area
    Complex64::from_polar(
        max_modulus * rng.gen::<f64>().sqrt(),
        rng.gen_range(0.0..TAU),
    )
}

fn far_from(z: Complex64, others: &[Complex64]) -> bool {
    others.iter().all(|w| (z - w).norm() >= MIN_SEPARATION)
}

/// Draw `count` points from `draw`, each at least `MIN_SEPARATION` from the
/// others and from `avoid`.
pub fn separated(
    rng: &mut ChaCha8Rng,
    count: usize,
    avoid: &[Complex64],
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Complex64,
) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::with_capacity(count);
    while out.len() < count {
        let z = draw(rng);
        if far_from(z, avoid) && far_from(z, &out) {
            out.push(z);
        }
    }
    out
}

/// A random valid spec of degree `n` with mixed circle and disc royal nodes.
pub fn random_spec(rng: &mut ChaCha8Rng, n: usize) -> SynthesisSpec {
    let k0 = rng.gen_range(0..=n / 2);
    let k1 = n - 2 * k0;
    let taus = separated(rng, k1, &[], unimodular);
    let alphas = separated(rng, k0, &[], |r| in_disc(r, MAX_INTERIOR));
    let sigmas = separated(rng, n, &taus, |r| {
        if r.gen_bool(0.5) {
            unimodular(r)
        } else {
            in_disc(r, MAX_INTERIOR)
        }
    });
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    SynthesisSpec {
        alphas,
        taus,
        sigmas,
        t_plus: rng.gen_range(0.1..10.0),
        t: sign * rng.gen_range(0.1..10.0),
        omega: unimodular(rng),
    }
}

/// An outer polynomial of degree `m` with roots of modulus in `[1.2, 3]`.
pub fn random_outer(rng: &mut ChaCha8Rng, m: usize) -> Poly {
    let roots: Vec<Complex64> = (0..m)
        .map(|_| Complex64::from_polar(rng.gen_range(1.2..3.0), rng.gen_range(0.0..TAU)))
        .collect();
    let p = Poly::from_roots(&roots);
    let c0 = p.coeff(0);
    p.scale(c0.conj() / c0.norm() / c0.norm())
}

pub fn superficial(omega: Complex64, den: &Poly, m: usize) -> GammaInner {
    canonical_example(
        &Family::Superficial {
            omega,
            den: den.clone(),
            m,
        },
        &ToleranceConfig::default(),
    )
    .unwrap()
}

pub fn h_nu(nu: usize, r: f64) -> GammaInner {
    canonical_example(&Family::HNu { nu, r }, &ToleranceConfig::default()).unwrap()
}

/// Match two multisets of points greedily; returns the worst matched distance
/// or `None` when the sizes differ.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut rest = b.to_vec();
    let mut worst = 0.0f64;
    for z in a {
        let (j, d) = rest
            .iter()
            .enumerate()
            .map(|(j, w)| (j, (z - w).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))?;
        worst = worst.max(d);
        rest.swap_remove(j);
    }
    Some(worst)
}

pub fn circle_points(count: usize) -> impl Iterator<Item = Complex64> {
    (0..count).map(move |j| Complex64::from_polar(1.0, TAU * j as f64 / count as f64))
}

/// Deterministic sample of the open disc used for function comparisons.
pub fn disc_points(count: usize) -> Vec<Complex64> {
    let mut r = rng(0xd15c);
    (0..count).map(|_| in_disc(&mut r, 0.95)).collect()
}

/// Worst `| |p| - 1 |` and `|s - conj(s) p|` over `samples` circle points.
pub fn boundary_defects(h: &GammaInner, samples: usize) -> (f64, f64) {
    circle_points(samples).fold((0.0f64, 0.0f64), |(a, b), z| {
        let (s, p) = h.eval(z).unwrap();
        (
            a.max((p.norm() - 1.0).abs()),
            b.max((s - s.conj() * p).norm()),
        )
    })
}

/// Worst distance between `h` and the midpoint of `a` and `b` on `points`.
pub fn midpoint_gap(h: &GammaInner, a: &GammaInner, b: &GammaInner, points: &[Complex64]) -> f64 {
    points
        .iter()
        .map(|&z| {
            let (s, p) = h.eval(z).unwrap();
            let (sa, pa) = a.eval(z).unwrap();
            let (sb, pb) = b.eval(z).unwrap();
            (s - 0.5 * (sa + sb))
                .norm()
                .max((p - 0.5 * (pa + pb)).norm())
        })
        .fold(0.0, f64::max)
}

/// Worst distance between two functions on `points`.
pub fn function_gap(a: &GammaInner, b: &GammaInner, points: &[Complex64]) -> f64 {
    points
        .iter()
        .map(|&z| {
            let (sa, pa) = a.eval(z).unwrap();
            let (sb, pb) = b.eval(z).unwrap();
            (sa - sb).norm().max((pa - pb).norm())
        })
        .fold(0.0, f64::max)
}

/// Sup over `samples` circle points of `|lambda^{-n} R + |E|^2 - 4|D|^2|`,
/// together with the scale it is measured against.
pub fn synthesis_residual(r: &Poly, e: &Poly, d: &Poly, n: usize, samples: usize) -> (f64, f64) {
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for z in circle_points(samples) {
        let lhs = r.eval(z) * z.powi(-(n as i32)) + e.eval(z).norm_sqr();
        let rhs = 4.0 * d.eval(z).norm_sqr();
        worst = worst.max((lhs - rhs).norm());
        scale = scale.max(rhs);
    }
    (worst, scale)
}

/// Nodes and zeros of a spec as multisets.
pub fn spec_points(s: &SynthesisSpec) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut zeros = s.alphas.clone();
    zeros.extend(&s.taus);
    (s.sigmas.clone(), zeros)
}
