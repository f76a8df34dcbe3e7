//! Hermitian Laurent polynomials, real-valued on the unit circle.

use std::f64::consts::TAU;
use std::ops::{Add, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::tol::ToleranceConfig;

/// `sum_{k=-n}^{n} a_k lambda^k` with `a_{-k} = conj(a_k)`.
///
/// Only the nonnegative frequencies are stored; `a_0` is kept real.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigPoly {
    half: Vec<Complex64>,
}

impl TrigPoly {
    /// From `a_0, a_1, ..., a_n`. The imaginary part of `a_0` is dropped.
    pub fn from_half(mut half: Vec<Complex64>) -> Self {
        if let Some(a0) = half.first_mut() {
            a0.im = 0.0;
        }
        while half.len() > 1 && half.last().is_some_and(|c| c.norm() == 0.0) {
            half.pop();
        }
        if half.is_empty() {
            half.push(Complex64::new(0.0, 0.0));
        }
        Self { half }
    }

    pub fn constant(a0: f64) -> Self {
        Self::from_half(vec![Complex64::new(a0, 0.0)])
    }

    /// From the full sequence `a_{-n}, ..., a_n` (odd length). The sequence is
    /// checked for Hermitian symmetry to `eps_residual * (1 + max|a_k|)` and
    /// then projected onto it exactly.
    pub fn from_laurent(coeffs: &[Complex64], tol: &ToleranceConfig) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::BadParameter(format!(
                "a Laurent coefficient list needs odd length, got {}",
                coeffs.len()
            )));
        }
        let n = coeffs.len() / 2;
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut half = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let pos = coeffs[n + k];
            let neg = coeffs[n - k];
            if (pos - neg.conj()).norm() > tol.eps_residual * (1.0 + scale) {
                return Err(Error::BadParameter(format!(
                    "coefficients at frequencies +-{k} are not conjugate"
                )));
            }
            half.push((pos + neg.conj()) * 0.5);
        }
        Ok(Self::from_half(half))
    }

    /// Frequency bound `n`.
    pub fn bound(&self) -> usize {
        self.half.len() - 1
    }

    /// Coefficient at frequency `k`, zero outside `[-n, n]`.
    pub fn a(&self, k: i64) -> Complex64 {
        let c = self
            .half
            .get(k.unsigned_abs() as usize)
            .copied()
            .unwrap_or_default();
        if k < 0 {
            c.conj()
        } else {
            c
        }
    }

    pub fn half(&self) -> &[Complex64] {
        &self.half
    }

    /// `a_{-n}, ..., a_n`.
    pub fn laurent(&self) -> Vec<Complex64> {
        let n = self.bound() as i64;
        (-n..=n).map(|k| self.a(k)).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.half.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `sum |a_k|` over all frequencies; an upper bound for `max |f|` on the circle.
    pub fn l1(&self) -> f64 {
        self.half[0].norm() + 2.0 * self.half[1..].iter().map(|c| c.norm()).sum::<f64>()
    }

    pub fn is_zero(&self) -> bool {
        self.half.iter().all(|c| c.norm() == 0.0)
    }

    /// Value at `e^{it}`.
    pub fn eval(&self, t: f64) -> f64 {
        let z = Complex64::from_polar(1.0, t);
        let mut zk = Complex64::new(1.0, 0.0);
        let mut acc = self.half[0].re;
        for c in &self.half[1..] {
            zk *= z;
            acc += 2.0 * (c * zk).re;
        }
        acc
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::from_half(self.half.iter().map(|a| a * c).collect())
    }

    /// Drop leading frequencies with `|a_k| <= eps_trim * max|a_k|`.
    pub fn trimmed(&self, eps_trim: f64) -> Self {
        let thr = eps_trim * self.max_abs();
        let mut half = self.half.clone();
        while half.len() > 1 && half.last().is_some_and(|c| c.norm() <= thr) {
            half.pop();
        }
        Self::from_half(half)
    }

    /// `lambda^n f(lambda)` as an ordinary polynomial of degree `2n`.
    pub fn to_poly(&self) -> Poly {
        Poly::raw(self.laurent())
    }
}

fn combine(a: &TrigPoly, b: &TrigPoly, f: impl Fn(Complex64, Complex64) -> Complex64) -> TrigPoly {
    let len = a.half.len().max(b.half.len());
    let get = |p: &TrigPoly, k: usize| p.half.get(k).copied().unwrap_or_default();
    TrigPoly::from_half((0..len).map(|k| f(get(a, k), get(b, k))).collect())
}

impl Add for &TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        combine(self, rhs, |x, y| x + y)
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        combine(self, rhs, |x, y| x - y)
    }
}

/// `|E(lambda)|^2` on the circle, as autocorrelation coefficients.
pub fn modulus_squared(e: &Poly) -> TrigPoly {
    let c = e.coeffs();
    if c.is_empty() {
        return TrigPoly::constant(0.0);
    }
    let half = (0..c.len())
        .map(|k| (0..c.len() - k).map(|j| c[j + k] * c[j].conj()).sum())
        .collect();
    TrigPoly::from_half(half)
}

/// The Laurent polynomial `lambda^{-n} P(lambda)` for a `2n`-symmetric `P`.
pub fn shifted(p: &Poly, n: usize, tol: &ToleranceConfig) -> Result<TrigPoly> {
    if !p.is_n_symmetric(2 * n, tol) {
        return Err(Error::NotBalanced { n });
    }
    let half = (0..=n)
        .map(|k| (p.coeff(n + k) + p.coeff(n - k).conj()) * 0.5)
        .collect();
    Ok(TrigPoly::from_half(half))
}

/// Minimum of `f` on the circle and the angle in `[0, 2 pi)` where it occurs.
///
/// The grid has `max(samples, 4n, 16)` points; the few lowest grid minima are
/// refined by golden-section search inside their grid cells.
pub fn circle_extrema(f: &TrigPoly, samples: usize) -> (f64, f64) {
    extremum(f, samples, 1.0)
}

/// Maximum of `f` on the circle and the angle where it occurs.
pub fn circle_max(f: &TrigPoly, samples: usize) -> (f64, f64) {
    let (v, t) = extremum(f, samples, -1.0);
    (-v, t)
}

const REFINED: usize = 4;

fn extremum(f: &TrigPoly, samples: usize, sign: f64) -> (f64, f64) {
    let g = |t: f64| sign * f.eval(t);
    if f.bound() == 0 {
        return (g(0.0), 0.0);
    }
    let n = samples.max(4 * f.bound()).max(16);
    let h = TAU / n as f64;
    let vals: Vec<f64> = (0..n).map(|j| g(h * j as f64)).collect();
    let mut minima: Vec<usize> = (0..n)
        .filter(|&j| vals[j] <= vals[(j + n - 1) % n] && vals[j] <= vals[(j + 1) % n])
        .collect();
    minima.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    minima.truncate(REFINED);

    let mut best = (vals[minima[0]], h * minima[0] as f64);
    for &j in &minima {
        let (v, t) = golden(&g, h * j as f64 - h, h * j as f64 + h);
        if v < best.0 {
            best = (v, t);
        }
    }
    (best.0, best.1.rem_euclid(TAU))
}

fn golden(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    for _ in 0..80 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = g(x2);
        }
        if b - a < 1e-15 {
            break;
        }
    }
    if f1 <= f2 {
        (f1, x1)
    } else {
        (f2, x2)
    }
}
