//! Construction of Γ-inner functions from prescribed royal nodes and zeros
//! of `s`, and the inverse and convexity operations built on it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inner::{validate, GammaInner};
use crate::poly::{l_factor, q_factor, Poly};
use crate::roots::roots_with_multiplicity;
use crate::royal::{royal_polynomial, royal_profile};
use crate::spectral::fejer_riesz;
use crate::tol::ToleranceConfig;
use crate::trig::shifted;

/// Halvings tried by [`witness_non_extreme`] before giving up.
pub const WITNESS_HALVINGS: usize = 60;

/// Data for [`synthesize`].
///
/// `alphas` are zeros of `s` in the open disc, `taus` zeros on the circle and
/// `sigmas` the royal nodes, with `2 * alphas.len() + taus.len() == sigmas.len()`.
/// A royal node on the circle listed once counts with multiplicity one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthesisSpec {
    pub alphas: Vec<Complex64>,
    pub taus: Vec<Complex64>,
    pub sigmas: Vec<Complex64>,
    pub t_plus: f64,
    pub t: f64,
    pub omega: Complex64,
}

impl SynthesisSpec {
    pub fn n(&self) -> usize {
        self.sigmas.len()
    }

    pub fn check(&self, tol: &ToleranceConfig) -> Result<()> {
        let bad = |s: String| Err(Error::BadSpec(s));
        let n = self.n();
        if n == 0 {
            return bad("at least one royal node is required".into());
        }
        if 2 * self.alphas.len() + self.taus.len() != n {
            return bad(format!(
                "2 * {} disc zeros + {} circle zeros must equal {} royal nodes",
                self.alphas.len(),
                self.taus.len(),
                n
            ));
        }
        if let Some(a) = self.alphas.iter().find(|a| !(a.norm() < 1.0)) {
            return bad(format!("disc zero {a} is not in the open disc"));
        }
        if let Some(t) = self
            .taus
            .iter()
            .find(|t| !((t.norm() - 1.0).abs() <= tol.eps_circle))
        {
            return bad(format!("circle zero {t} is not on the circle"));
        }
        if let Some(s) = self
            .sigmas
            .iter()
            .find(|s| !(s.norm() <= 1.0 + tol.eps_circle))
        {
            return bad(format!("royal node {s} is outside the closed disc"));
        }
        for s in &self.sigmas {
            if let Some(t) = self
                .taus
                .iter()
                .find(|t| (*s - **t).norm() <= tol.eps_circle)
            {
                return bad(format!("royal node {s} coincides with circle zero {t}"));
            }
        }
        if !(self.t_plus > 0.0 && self.t_plus.is_finite()) {
            return bad(format!("t_plus must be positive, got {}", self.t_plus));
        }
        if !(self.t != 0.0 && self.t.is_finite()) {
            return bad(format!("t must be nonzero, got {}", self.t));
        }
        if !((self.omega.norm() - 1.0).abs() <= tol.eps_circle) {
            return bad(format!(
                "omega must be unimodular, got modulus {}",
                self.omega.norm()
            ));
        }
        Ok(())
    }
}

fn snap_to_circle(z: Complex64, tol: &ToleranceConfig) -> Complex64 {
    if (z.norm() - 1.0).abs() <= tol.eps_circle {
        z / z.norm()
    } else {
        z
    }
}

/// `R = t_plus prod Q_sigma` and `E = t prod Q_alpha prod L_tau`.
pub fn build_re(spec: &SynthesisSpec, tol: &ToleranceConfig) -> Result<(Poly, Poly)> {
    spec.check(tol)?;
    let r = spec.sigmas.iter().fold(
        Poly::constant(Complex64::new(spec.t_plus, 0.0)),
        |acc, &s| &acc * &q_factor(snap_to_circle(s, tol)),
    );
    let e = spec
        .alphas
        .iter()
        .fold(Poly::constant(Complex64::new(spec.t, 0.0)), |acc, &a| {
            &acc * &q_factor(a)
        });
    let e = spec
        .taus
        .iter()
        .fold(e, |acc, &t| &acc * &l_factor(t / t.norm()));
    Ok((r, e))
}

/// The Γ-inner function with royal polynomial `R` and `s`-numerator `E`,
/// rotated by `omega`.
pub fn synthesize(spec: &SynthesisSpec, tol: &ToleranceConfig) -> Result<GammaInner> {
    let (r, e) = build_re(spec, tol)?;
    let n = spec.n();
    let f = shifted(&(&r + &(&e * &e)), n, tol)?;
    let d0 = fejer_riesz(&f.scale(0.25), tol)?;
    let w = spec.omega / spec.omega.norm();
    validate(e, d0.scale(w.conj()), n, tol)
}

/// Parameters that [`synthesize`] maps back to `h`.
pub fn recover_spec(h: &GammaInner) -> Result<SynthesisSpec> {
    let tol = h.tol();
    let profile = royal_profile(h)?;
    let sigmas = profile.expanded();
    let n = h.n();

    if h.e().is_zero() {
        return Err(Error::BadSpec(
            "s vanishes identically, so it has no zero data".into(),
        ));
    }
    let mut alphas = Vec::new();
    let mut taus = Vec::new();
    for root in roots_with_multiplicity(h.e(), tol)? {
        let modulus = root.z.norm();
        let copies = std::iter::repeat_n(root.z, root.multiplicity);
        if (modulus - 1.0).abs() <= tol.eps_circle {
            taus.extend(copies.map(|z| z / modulus));
        } else if modulus < 1.0 {
            alphas.extend(copies);
        }
    }
    if 2 * alphas.len() + taus.len() != n {
        return Err(Error::BadSpec(format!(
            "zeros of s account for {} of {} degrees",
            2 * alphas.len() + taus.len(),
            n
        )));
    }

    let base = alphas
        .iter()
        .fold(Poly::one(), |acc, &a| &acc * &q_factor(a));
    let base = taus.iter().fold(base, |acc, &t| &acc * &l_factor(t));
    let t = real_ratio(h.e(), &base);

    let nodes = sigmas
        .iter()
        .fold(Poly::one(), |acc, &s| &acc * &q_factor(s));
    let t_plus = real_ratio(&royal_polynomial(h)?, &nodes);

    let d0 = h.d().coeff(0);
    let omega = d0.conj() / d0.norm();
    Ok(SynthesisSpec {
        alphas,
        taus,
        sigmas,
        t_plus,
        t,
        omega,
    })
}

/// Least-squares real `t` with `a ~ t b`.
fn real_ratio(a: &Poly, b: &Poly) -> f64 {
    let len = a.coeffs().len().max(b.coeffs().len());
    let dot: Complex64 = (0..len).map(|k| a.coeff(k) * b.coeff(k).conj()).sum();
    dot.re / b.norm2().powi(2)
}

/// A step `t > 0` and two distinct Γ-inner functions `(E +- t g) / D` whose
/// midpoint is `h`. Exists exactly when `h` is not `s`-extreme.
pub fn witness_non_extreme(h: &GammaInner) -> Result<(f64, GammaInner, GammaInner)> {
    let profile = royal_profile(h)?;
    let (deg, k) = profile.kind();
    if 2 * k > deg {
        return Err(Error::ExtremeNoWitness { n: deg, k });
    }
    let n = h.n();
    let taus: Vec<Complex64> = profile
        .circle_nodes()
        .flat_map(|node| std::iter::repeat_n(node.location, node.multiplicity))
        .collect();

    let g = if k == 0 && !h.e().is_zero() {
        h.e().clone()
    } else {
        perturbation(n, &taus)
    };
    let target = if h.e().is_zero() {
        h.d().norm2()
    } else {
        h.e().norm2()
    };
    let g = g.scale_real(target / g.norm2());

    let mut t = 1.0;
    for _ in 0..=WITNESS_HALVINGS {
        let plus = validate(h.e() + &g.scale_real(t), h.d().clone(), n, h.tol());
        let minus = validate(h.e() - &g.scale_real(t), h.d().clone(), n, h.tol());
        if let (Ok(p), Ok(m)) = (plus, minus) {
            return Ok((t, p, m));
        }
        t *= 0.5;
    }
    Err(Error::WitnessNotFound {
        halvings: WITNESS_HALVINGS,
    })
}

/// An `n`-symmetric polynomial vanishing to second order at each `tau`.
fn perturbation(n: usize, taus: &[Complex64]) -> Poly {
    let k = taus.len();
    let m = n / 2;
    let squares = taus.iter().fold(Poly::one(), |acc, &t| {
        let lin = Poly::new(vec![-t, Complex64::new(1.0, 0.0)]);
        &acc * &(&lin * &lin)
    });
    let conj_prod: Complex64 = taus.iter().map(|t| t.conj()).product();
    if n % 2 == 0 {
        Poly::monomial(conj_prod, m - k) * squares
    } else {
        let first = taus.first().copied().unwrap_or(Complex64::new(1.0, 0.0));
        // omega^2 = -conj(tau_1) prod conj(tau_j)^2
        let omega = (-first.conj() * conj_prod * conj_prod).sqrt();
        let lin = Poly::new(vec![-first, Complex64::new(1.0, 0.0)]);
        Poly::monomial(omega, m - k) * lin * squares
    }
}

/// `t h1 + (1 - t) h2` for two functions sharing the second component.
pub fn convex_combine(h1: &GammaInner, h2: &GammaInner, t: f64) -> Result<GammaInner> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::BadParameter(format!(
            "weight must lie in [0, 1], got {t}"
        )));
    }
    if h1.n() != h2.n() {
        return Err(Error::DifferentSecondComponent);
    }
    let tol = h1.tol();
    let len = h1.n() + 1;
    let dot: Complex64 = (0..len)
        .map(|k| h2.d().coeff(k) * h1.d().coeff(k).conj())
        .sum();
    let c = dot / h1.d().norm2().powi(2);
    let slack = 1e3 * tol.eps_residual * (1.0 + h2.d().max_abs());
    if c.norm() == 0.0 || c.im.abs() > slack || h2.d().max_diff(&h1.d().scale_real(c.re)) > slack {
        return Err(Error::DifferentSecondComponent);
    }
    let e = &h1.e().scale_real(t) + &h2.e().scale_real((1.0 - t) / c.re);
    validate(e, h1.d().clone(), h1.n(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inner::{canonical_example, Family};
    use crate::royal::{is_s_extreme, is_superficial, NodeRegion};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn spec(
        alphas: &[Complex64],
        taus: &[Complex64],
        sigmas: &[Complex64],
        t_plus: f64,
        t: f64,
    ) -> SynthesisSpec {
        SynthesisSpec {
            alphas: alphas.to_vec(),
            taus: taus.to_vec(),
            sigmas: sigmas.to_vec(),
            t_plus,
            t,
            omega: c(1.0, 0.0),
        }
    }

    #[test]
    fn build_examples() {
        let (r, e) =
            build_re(&spec(&[], &[c(1.0, 0.0)], &[c(0.0, 0.0)], 1.0, 1.0), &tol()).unwrap();
        assert_eq!(r, Poly::from_real(&[0.0, 1.0]));
        assert!(e.max_diff(&Poly::new(vec![c(0.0, -1.0), c(0.0, 1.0)])) < 1e-15);

        let (r, _) = build_re(
            &spec(&[], &[c(1.0, 0.0)], &[c(-1.0, 0.0)], 1.0, 1.0),
            &tol(),
        )
        .unwrap();
        assert_eq!(r, Poly::from_real(&[1.0, 2.0, 1.0]));

        let (_, e) = build_re(
            &spec(&[c(0.0, 0.0)], &[], &[c(0.2, 0.0), c(-0.3, 0.1)], 1.0, 2.0),
            &tol(),
        )
        .unwrap();
        assert_eq!(e, Poly::from_real(&[0.0, 2.0]));
    }

    #[test]
    fn bad_specs() {
        let one = c(1.0, 0.0);
        for s in [
            spec(&[], &[one], &[one], 1.0, 1.0),
            spec(&[], &[], &[c(0.0, 0.0)], 1.0, 1.0),
            spec(&[], &[one], &[c(0.0, 0.0)], -1.0, 1.0),
            spec(&[], &[one], &[c(0.0, 0.0)], 1.0, 0.0),
            spec(&[], &[c(0.5, 0.0)], &[c(0.0, 0.0)], 1.0, 1.0),
            spec(&[], &[one], &[c(2.0, 0.0)], 1.0, 1.0),
        ] {
            assert!(
                matches!(synthesize(&s, &tol()), Err(Error::BadSpec(_))),
                "{s:?}"
            );
        }
    }

    #[test]
    fn worked_example() {
        let s = spec(&[], &[c(1.0, 0.0)], &[c(0.0, 0.0)], 1.0, FRAC_1_SQRT_2);
        let h = synthesize(&s, &tol()).unwrap();
        let sq3 = 3f64.sqrt();
        let want = Poly::from_real(&[(1.0 + sq3) / 4.0, (1.0 - sq3) / 4.0]);
        assert!(h.d().max_diff(&want) < 1e-12, "{:?}", h.d());
        assert_eq!(h.degree(), 1);
        let p = royal_profile(&h).unwrap();
        assert_eq!(p.kind(), (1, 0));
        assert!(p.nodes[0].location.norm() < 1e-12);
        assert!(h.eval(c(1.0, 0.0)).unwrap().0.norm() < 1e-12);
    }

    #[test]
    fn rotation_acts_on_the_denominator() {
        let mut s = spec(&[], &[c(1.0, 0.0)], &[c(0.0, 0.0)], 1.0, FRAC_1_SQRT_2);
        let base = synthesize(&s, &tol()).unwrap();
        s.omega = Complex64::from_polar(1.0, 0.9);
        let h = synthesize(&s, &tol()).unwrap();
        let z = c(0.2, 0.3);
        let (s0, p0) = base.eval(z).unwrap();
        let (s1, p1) = h.eval(z).unwrap();
        assert!((s1 - s.omega * s0).norm() < 1e-12);
        assert!((p1 - s.omega * s.omega * p0).norm() < 1e-12);
    }

    #[test]
    fn reproduces_h1_profile() {
        let h1 = canonical_example(&Family::HNu { nu: 1, r: 0.5 }, &tol()).unwrap();
        let s = spec(
            &[c(0.0, 0.0), c(0.0, 0.0)],
            &[],
            &[
                c(-1.0, 0.0),
                Complex64::from_polar(1.0, PI / 3.0),
                Complex64::from_polar(1.0, -PI / 3.0),
                c(0.0, 0.0),
            ],
            1.0,
            1.0,
        );
        let h = synthesize(&s, &tol()).unwrap();
        let (a, b) = (royal_profile(&h).unwrap(), royal_profile(&h1).unwrap());
        assert_eq!(a.kind(), b.kind());
        for (x, y) in a.nodes.iter().zip(&b.nodes) {
            assert!((x.location - y.location).norm() < 1e-8 && x.multiplicity == y.multiplicity);
        }
    }

    #[test]
    fn double_circle_node() {
        let s = spec(&[c(0.3, 0.0)], &[], &[c(-1.0, 0.0), c(-1.0, 0.0)], 1.0, 1.0);
        let h = synthesize(&s, &tol()).unwrap();
        let p = royal_profile(&h).unwrap();
        assert_eq!(p.kind(), (2, 2));
        assert_eq!(p.nodes.len(), 1);
        assert_eq!(p.nodes[0].multiplicity, 2);
        assert_eq!(p.nodes[0].region, NodeRegion::Circle);
        assert_eq!(crate::royal::boundary_flatness(&h, c(-1.0, 0.0), 12), Ok(4));
    }

    #[test]
    fn recover_examples() {
        let h0 = canonical_example(&Family::HNu { nu: 0, r: 0.5 }, &tol()).unwrap();
        let s = recover_spec(&h0).unwrap();
        assert_eq!(s.alphas, vec![c(0.0, 0.0)]);
        assert!(s.taus.is_empty());
        assert_eq!(s.sigmas.len(), 2);
        assert!((s.t - 1.0).abs() < 1e-12);
        let back = synthesize(&s, &tol()).unwrap();
        assert!(back.d().max_diff(h0.d()) < 1e-10 && back.e().max_diff(h0.e()) < 1e-10);

        let g = canonical_example(&Family::Geodesic { beta: c(0.0, 1.0) }, &tol()).unwrap();
        let s = recover_spec(&g).unwrap();
        assert_eq!(s.taus.len(), 1);
        assert!((s.taus[0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((s.sigmas[0] - c(-1.0, 0.0)).norm() < 1e-10);
        let back = synthesize(&s, &tol()).unwrap();
        assert!(back.d().max_diff(g.d()) < 1e-10 && back.e().max_diff(g.e()) < 1e-10);
    }

    #[test]
    fn witnesses() {
        let g = canonical_example(&Family::Geodesic { beta: c(0.5, 0.0) }, &tol()).unwrap();
        let (t, p, m) = witness_non_extreme(&g).unwrap();
        assert!(t > 0.0 && p != m);

        let h0 = canonical_example(&Family::HNu { nu: 0, r: 0.5 }, &tol()).unwrap();
        let (_, p, m) = witness_non_extreme(&h0).unwrap();
        let mid = convex_combine(&p, &m, 0.5).unwrap();
        assert!(mid.e().max_diff(h0.e()) < 1e-14);

        let h1 = canonical_example(&Family::HNu { nu: 1, r: 0.5 }, &tol()).unwrap();
        assert_eq!(
            witness_non_extreme(&h1).map(|_| ()),
            Err(Error::ExtremeNoWitness { n: 4, k: 3 })
        );
    }

    #[test]
    fn perturbations_are_symmetric() {
        let taus = [
            Complex64::from_polar(1.0, 0.4),
            Complex64::from_polar(1.0, 2.0),
        ];
        for n in 4..=7 {
            let g = perturbation(n, &taus);
            assert!(g.is_n_symmetric(n, &tol()), "n = {n}");
            for t in taus {
                assert!(g.eval(t).norm() < 1e-14);
            }
        }
        assert!(perturbation(3, &[]).is_n_symmetric(3, &tol()));
    }

    #[test]
    fn convex_examples() {
        let h = canonical_example(&Family::HNu { nu: 1, r: 0.3 }, &tol()).unwrap();
        let same = convex_combine(&h, &h, 0.3).unwrap();
        assert!(same.e().max_diff(h.e()) < 1e-15);

        let den = Poly::from_real(&[1.0, 0.3, -0.2]);
        let s1 = canonical_example(
            &Family::Superficial {
                omega: c(1.0, 0.0),
                den: den.clone(),
                m: 2,
            },
            &tol(),
        )
        .unwrap();
        let s2 = canonical_example(
            &Family::Superficial {
                omega: c(0.0, 1.0),
                den,
                m: 2,
            },
            &tol(),
        )
        .unwrap();
        let mid = convex_combine(&s1, &s2, 0.5).unwrap();
        assert_eq!(royal_profile(&mid).unwrap().kind(), (2, 0));
        assert!(!is_s_extreme(&mid).unwrap());
        assert_eq!(is_superficial(&mid), None);

        let other = canonical_example(&Family::HNu { nu: 1, r: 0.6 }, &tol()).unwrap();
        assert_eq!(
            convex_combine(&h, &other, 0.5).map(|_| ()),
            Err(Error::DifferentSecondComponent)
        );
    }
}
