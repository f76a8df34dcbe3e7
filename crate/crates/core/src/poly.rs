//! Dense complex polynomials in ascending-power order.
//!
//! `Poly` is the carrier for every polynomial in the crate: the numerator and
//! denominator of a representation, royal polynomials, and the elementary
//! factors `Q_sigma` and `L_tau`.

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol::ToleranceConfig;

/// Relative trimming threshold applied by the arithmetic operators.
pub const DEFAULT_EPS_TRIM: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl From<Vec<Complex64>> for Poly {
    fn from(c: Vec<Complex64>) -> Self {
        Poly::raw(c)
    }
}

impl From<Poly> for Vec<Complex64> {
    fn from(p: Poly) -> Self {
        p.coeffs
    }
}

impl Poly {
    /// Build from ascending coefficients, trimming negligible leading terms.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self::with_trim(coeffs, DEFAULT_EPS_TRIM)
    }

    /// Build without any trimming; only exact trailing zeros are removed.
    pub fn raw(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs
            .last()
            .is_some_and(|c| *c == Complex64::new(0.0, 0.0))
        {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn with_trim(coeffs: Vec<Complex64>, eps_trim: f64) -> Self {
        let mut p = Self::raw(coeffs);
        p.trim(eps_trim);
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::raw(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// `c * lambda^k`.
    pub fn monomial(c: Complex64, k: usize) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); k + 1];
        v[k] = c;
        Self::raw(v)
    }

    /// The monic polynomial `prod (lambda - z)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for &z in roots {
            c.push(Complex64::new(0.0, 0.0));
            for k in (1..c.len()).rev() {
                let lower = c[k - 1];
                c[k] = lower - z * c[k];
            }
            c[0] = -z * c[0];
        }
        Self::raw(c)
    }

    /// Drop leading coefficients with modulus at most `eps_trim * max|coeff|`.
    pub fn trim(&mut self, eps_trim: f64) {
        let scale = self.max_abs();
        if scale == 0.0 {
            self.coeffs.clear();
            return;
        }
        while self
            .coeffs
            .last()
            .is_some_and(|c| c.norm() <= eps_trim * scale)
        {
            self.coeffs.pop();
        }
    }

    /// Zero every coefficient whose modulus is at most `threshold` (absolute).
    pub fn chop(&self, threshold: f64) -> Self {
        Self::raw(
            self.coeffs
                .iter()
                .map(|&c| {
                    if c.norm() <= threshold {
                        Complex64::new(0.0, 0.0)
                    } else {
                        c
                    }
                })
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `lambda^k`, zero beyond the stored length.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Euclidean norm of the coefficient vector; equals the L2 norm on the circle.
    pub fn norm2(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        Self::raw(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Largest coefficient difference against `other`.
    pub fn max_diff(&self, other: &Poly) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    /// The conjugate-reciprocal `lambda^n * conj(f(1/conj(lambda)))`.
    ///
    /// Coefficient `k` of the result is the conjugate of coefficient `n - k`
    /// of `self`.
    pub fn conj_reciprocal(&self, n: usize) -> Result<Poly> {
        if let Some(d) = self.degree() {
            if d > n {
                return Err(Error::DegreeExceedsBound {
                    degree: d,
                    bound: n,
                });
            }
        }
        let c = (0..=n).map(|k| self.coeff(n - k).conj()).collect();
        Ok(Poly::raw(c))
    }

    /// Whether `self` has degree at most `n` and equals its own `n`-reciprocal.
    pub fn is_n_symmetric(&self, n: usize, tol: &ToleranceConfig) -> bool {
        match self.conj_reciprocal(n) {
            Ok(r) => r.max_diff(self) <= tol.eps_residual * (1.0 + self.max_abs()),
            Err(_) => false,
        }
    }

    /// The projection `(f + f^{~n}) / 2` onto the `n`-symmetric polynomials.
    pub fn symmetrize(&self, n: usize) -> Result<Poly> {
        let r = self.conj_reciprocal(n)?;
        let c = (0..=n)
            .map(|k| (self.coeff(k) + r.coeff(k)) * 0.5)
            .collect();
        Ok(Poly::raw(c))
    }

    /// Split off the factor `lambda^k` carried by exactly-zero low coefficients.
    pub fn split_origin(&self) -> (usize, Poly) {
        let k = self
            .coeffs
            .iter()
            .take_while(|c| **c == Complex64::new(0.0, 0.0))
            .count();
        (k, Poly::raw(self.coeffs[k..].to_vec()))
    }
}

fn binary(a: &Poly, b: &Poly, f: impl Fn(Complex64, Complex64) -> Complex64) -> Poly {
    let len = a.coeffs.len().max(b.coeffs.len());
    Poly::new((0..len).map(|k| f(a.coeff(k), b.coeff(k))).collect())
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        binary(self, rhs, |x, y| x + y)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        binary(self, rhs, |x, y| x - y)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::raw(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Which elementary building block to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    /// `(lambda - sigma)(1 - conj(sigma) lambda)`, 2-symmetric, for `sigma` in the closed disc.
    Q,
    /// `i e^{-i theta/2} (lambda - tau)`, 1-symmetric, for `tau = e^{i theta}` on the circle.
    L,
}

pub fn elementary_factor(
    kind: FactorKind,
    point: Complex64,
    tol: &ToleranceConfig,
) -> Result<Poly> {
    let r = point.norm();
    match kind {
        FactorKind::Q => {
            if r > 1.0 + tol.eps_circle {
                return Err(Error::PointOutOfRegion { point });
            }
            Ok(q_factor(point))
        }
        FactorKind::L => {
            if (r - 1.0).abs() > tol.eps_circle {
                return Err(Error::PointOutOfRegion { point });
            }
            Ok(l_factor(point / r))
        }
    }
}

pub(crate) fn q_factor(sigma: Complex64) -> Poly {
    Poly::raw(vec![
        -sigma,
        Complex64::new(1.0 + sigma.norm_sqr(), 0.0),
        -sigma.conj(),
    ])
}

/// Angle of a unit-modulus point, mapped into `[0, 2 pi)`.
pub fn circle_angle(tau: Complex64) -> f64 {
    let a = tau.arg();
    if a < 0.0 {
        (a + TAU).min(TAU.next_down())
    } else {
        a
    }
}

pub(crate) fn l_factor(tau: Complex64) -> Poly {
    let theta = circle_angle(tau);
    let c = I * Complex64::from_polar(1.0, -theta / 2.0);
    Poly::raw(vec![-c * tau, c])
}
