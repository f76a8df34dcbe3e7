//! Outer spectral factors of nonnegative trigonometric polynomials.
//!
//! For `f >= 0` on the circle, `lambda^n f` has its roots in reflected pairs
//! `(z, 1/conj z)`, with circle roots of even order. Taking one root from
//! each pair, outside or on the circle, gives an outer `D` with `|D|^2 = f`.
//! When `D` has no circle zeros the root-based factor is then refined by
//! Newton's method on `D D* = f`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::roots::root_clusters;
use crate::tol::ToleranceConfig;
use crate::trig::{circle_extrema, modulus_squared, TrigPoly};

/// Outer `D` with `|D|^2 = f` on the circle and `D(0) > 0`.
pub fn fejer_riesz(f: &TrigPoly, tol: &ToleranceConfig) -> Result<Poly> {
    let scale = f.max_abs();
    if scale == 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    let g = f.scale(1.0 / scale).trimmed(tol.eps_trim);
    let m = g.bound();

    let (min, at) = circle_extrema(&g, tol.circle_samples.max(4 * m));
    if min < -tol.eps_residual * g.l1() {
        return Err(Error::NotNonnegative {
            min: min * scale,
            at,
        });
    }
    if m == 0 {
        return Ok(Poly::constant(Complex64::new(
            (g.a(0).re * scale).max(0.0).sqrt(),
            0.0,
        )));
    }

    let clusters = root_clusters(&g.to_poly(), tol)?;
    let mut chosen: Vec<Complex64> = Vec::with_capacity(m);
    let mut on_circle = false;
    let mut inner = Vec::new();
    let mut outer = Vec::new();
    for cl in clusters {
        let r = cl.root;
        let modulus = r.z.norm();
        if (modulus - 1.0).abs() <= tol.eps_circle {
            if r.multiplicity % 2 == 1 {
                return Err(Error::OddCircleZero {
                    location: r.z,
                    order: r.multiplicity,
                });
            }
            on_circle = true;
            let u = r.z / modulus;
            chosen.extend(std::iter::repeat_n(u, r.multiplicity / 2));
        } else if r.multiplicity == 1 {
            if modulus < 1.0 {
                inner.push(r.z)
            } else {
                outer.push(r.z)
            }
        } else {
            // raw members keep the side of the circle a close pair lies on
            for z in cl.members {
                if z.norm() < 1.0 {
                    inner.push(z)
                } else {
                    outer.push(z)
                }
            }
        }
    }
    chosen.extend(pair_reflections(inner, outer));

    let monic = Poly::from_roots(&chosen);
    let lead = (g.a(0).re * scale / monic.norm2().powi(2)).max(0.0).sqrt();
    let at0 = monic.coeff(0);
    let phase = if at0.norm() > 0.0 {
        at0.conj() / at0.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let mut c = monic.scale(phase * lead).into_coeffs();
    c[0] = Complex64::new(c[0].norm(), 0.0);
    let d = Poly::raw(c);
    if on_circle {
        return Ok(d);
    }
    Ok(refine(d, &g.scale(scale)))
}

const NEWTON_STEPS: usize = 6;

/// Largest coefficient of `|D|^2 - f`.
fn residual(d: &Poly, f: &TrigPoly) -> f64 {
    let dd = modulus_squared(d);
    (0..=f.bound().max(dd.bound()) as i64)
        .map(|k| (dd.a(k) - f.a(k)).norm())
        .fold(0.0, f64::max)
}

/// Newton iteration `D* X + X* D = f + D* D` for the factor, keeping
/// `X(0)` real. Steps are kept only while they lower the residual.
fn refine(mut d: Poly, f: &TrigPoly) -> Poly {
    let m = d.degree().unwrap_or(0);
    if m == 0 || f.bound() != m {
        return d;
    }
    let mut best = residual(&d, f);
    for _ in 0..NEWTON_STEPS {
        let Some(next) = newton_step(&d, f) else {
            break;
        };
        let r = residual(&next, f);
        if !(r < best) {
            break;
        }
        best = r;
        d = next;
    }
    d
}

fn newton_step(d: &Poly, f: &TrigPoly) -> Option<Poly> {
    let m = d.degree()?;
    let dim = 2 * (m + 1);
    let dc: Vec<Complex64> = (0..=m).map(|k| d.coeff(k)).collect();
    let dd = modulus_squared(d);
    let mut a = DMatrix::<f64>::zeros(dim, dim);
    let mut b = DVector::<f64>::zeros(dim);
    // unknown x_i = u_i + i v_i sits in columns 2i and 2i + 1
    for j in 0..=m {
        let (re_row, im_row) = (2 * j, 2 * j + 1);
        let rhs = f.a(j as i64) + dd.a(j as i64);
        b[re_row] = rhs.re;
        b[im_row] = rhs.im;
        for i in 0..=m - j {
            let p = dc[i].conj();
            a[(re_row, 2 * (i + j))] += p.re;
            a[(re_row, 2 * (i + j) + 1)] -= p.im;
            a[(im_row, 2 * (i + j))] += p.im;
            a[(im_row, 2 * (i + j) + 1)] += p.re;
            let q = dc[i + j];
            a[(re_row, 2 * i)] += q.re;
            a[(re_row, 2 * i + 1)] += q.im;
            a[(im_row, 2 * i)] += q.im;
            a[(im_row, 2 * i + 1)] -= q.re;
        }
    }
    // frequency 0 is real; its imaginary row becomes Im x_0 = 0
    a.row_mut(1).fill(0.0);
    a[(1, 1)] = 1.0;
    b[1] = 0.0;
    let x = a.lu().solve(&b)?;
    if x.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let mut c: Vec<Complex64> = (0..=m)
        .map(|i| Complex64::new(x[2 * i], x[2 * i + 1]))
        .collect();
    if c[0].re <= 0.0 {
        return None;
    }
    c[0].im = 0.0;
    Some(Poly::raw(c))
}

/// Match each inner root with its nearest reflected outer partner and return
/// one outer estimate per pair. Leftovers, which only occur for roots that
/// straddle the circle, are reflected outside and merged in nearest pairs.
fn pair_reflections(mut inner: Vec<Complex64>, mut outer: Vec<Complex64>) -> Vec<Complex64> {
    let mut out = Vec::new();
    while !inner.is_empty() && !outer.is_empty() {
        let mut best = (0, 0, f64::INFINITY);
        for (i, a) in inner.iter().enumerate() {
            for (j, b) in outer.iter().enumerate() {
                let d = (a * b.conj() - 1.0).norm() / (a.norm() * b.norm()).sqrt();
                if d < best.2 {
                    best = (i, j, d);
                }
            }
        }
        let a = inner.swap_remove(best.0);
        let b = outer.swap_remove(best.1);
        out.push(0.5 * (b + a.conj().inv()));
    }
    let mut rest: Vec<Complex64> = outer;
    rest.extend(
        inner
            .into_iter()
            .filter(|a| a.norm() > 0.0)
            .map(|a| a.conj().inv()),
    );
    while rest.len() > 1 {
        let mut best = (0, 1, f64::INFINITY);
        for i in 0..rest.len() {
            for j in i + 1..rest.len() {
                let d = (rest[i] - rest[j]).norm();
                if d < best.2 {
                    best = (i, j, d);
                }
            }
        }
        let b = rest.swap_remove(best.1);
        let a = rest.swap_remove(best.0);
        out.push(0.5 * (a + b));
    }
    out.extend(rest);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn constant() {
        let d = fejer_riesz(&TrigPoly::constant(1.0), &tol()).unwrap();
        assert_eq!(d, Poly::one());
    }

    #[test]
    fn circle_double_zero() {
        let f = TrigPoly::from_half(vec![c(2.0, 0.0), c(1.0, 0.0)]);
        let d = fejer_riesz(&f, &tol()).unwrap();
        assert!(d.max_diff(&Poly::from_real(&[1.0, 1.0])) < 1e-12, "{d:?}");
    }

    #[test]
    fn root_outside() {
        let f = TrigPoly::from_half(vec![c(5.0, 0.0), c(2.0, 0.0)]);
        let d = fejer_riesz(&f, &tol()).unwrap();
        assert!(d.max_diff(&Poly::from_real(&[2.0, 1.0])) < 1e-12, "{d:?}");
    }

    #[test]
    fn recovers_outer_factor_of_inner_root_polynomial() {
        // |1 - 2 lambda|^2 = |2 - lambda|^2 on the circle
        let f = modulus_squared(&Poly::from_real(&[1.0, -2.0]));
        let d = fejer_riesz(&f, &tol()).unwrap();
        assert!(d.max_diff(&Poly::from_real(&[2.0, -1.0])) < 1e-12, "{d:?}");
    }

    #[test]
    fn double_circle_root_of_factor() {
        // D = (1 + lambda)^2 (2 - i lambda)
        let d0 = &Poly::from_real(&[1.0, 2.0, 1.0]) * &Poly::new(vec![c(2.0, 0.0), c(0.0, -1.0)]);
        let d = fejer_riesz(&modulus_squared(&d0), &tol()).unwrap();
        assert!(d.max_diff(&d0) < 1e-6, "{d:?}");
    }

    #[test]
    fn rejects_negative() {
        let f = TrigPoly::from_half(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            fejer_riesz(&f, &tol()),
            Err(Error::NotNonnegative { .. })
        ));
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(
            fejer_riesz(&TrigPoly::constant(0.0), &tol()),
            Err(Error::ZeroPolynomial)
        );
    }
}
