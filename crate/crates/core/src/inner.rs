//! Validated polynomial representations `h = (E/D, D~/D)` of rational
//! Γ-inner functions, where `D~` is the `n`-reciprocal of `D`.

use num_complex::Complex64;

use crate::error::{Condition, Error, Result};
use crate::poly::Poly;
use crate::roots::roots_with_multiplicity;
use crate::tol::ToleranceConfig;
use crate::trig::{circle_extrema, modulus_squared};

/// How strictly the denominator must avoid the disc.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DiscCondition {
    /// No zeros of `D` on the closed disc.
    #[default]
    Closed,
    /// No zeros on the open disc; circle zeros lower the degree.
    Open,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaInner {
    e: Poly,
    d: Poly,
    d_rev: Poly,
    n: usize,
    tol: ToleranceConfig,
    mode: DiscCondition,
    circle_zeros: usize,
}

impl GammaInner {
    pub fn e(&self) -> &Poly {
        &self.e
    }

    pub fn d(&self) -> &Poly {
        &self.d
    }

    /// `D~`, the numerator of `p`.
    pub fn d_reciprocal(&self) -> &Poly {
        &self.d_rev
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tol(&self) -> &ToleranceConfig {
        &self.tol
    }

    pub fn mode(&self) -> DiscCondition {
        self.mode
    }

    /// `(s(lambda), p(lambda))`.
    pub fn eval(&self, lambda: Complex64) -> Result<(Complex64, Complex64)> {
        if lambda.norm() > 1.0 + self.tol.eps_circle {
            return Err(Error::PointOutOfRegion { point: lambda });
        }
        let den = self.d.eval(lambda);
        if den.norm() <= self.tol.eps_trim * self.d.max_abs() {
            return Err(Error::PoleOnDomain { point: lambda });
        }
        Ok((self.e.eval(lambda) / den, self.d_rev.eval(lambda) / den))
    }

    /// Degree of the Blaschke product `p`: `n` less the circle zeros of `D`.
    pub fn degree(&self) -> usize {
        self.n - self.circle_zeros
    }

    /// The real `t` with `other = t * self` coefficientwise, if there is one.
    pub fn scalar_relation(&self, other: &GammaInner) -> Option<f64> {
        if self.n != other.n {
            return None;
        }
        let dot: Complex64 = (0..=self.n)
            .map(|k| other.d.coeff(k) * self.d.coeff(k).conj())
            .sum();
        let t = dot.re / self.d.norm2().powi(2);
        let slack = 1e3 * self.tol.eps_residual * (1.0 + other.d.max_abs().max(other.e.max_abs()));
        let ok = t != 0.0
            && other.d.max_diff(&self.d.scale_real(t)) <= slack
            && other.e.max_diff(&self.e.scale_real(t)) <= slack;
        ok.then_some(t)
    }
}

pub fn validate(e: Poly, d: Poly, n: usize, tol: &ToleranceConfig) -> Result<GammaInner> {
    validate_with(e, d, n, tol, DiscCondition::Closed)
}

/// Check the representation conditions and report every one that fails.
pub fn validate_with(
    e: Poly,
    d: Poly,
    n: usize,
    tol: &ToleranceConfig,
    mode: DiscCondition,
) -> Result<GammaInner> {
    if n == 0 {
        return Err(Error::ConstantFunction);
    }
    let mut failed = Vec::new();
    let mut notes = Vec::new();

    let de = e.degree().unwrap_or(0);
    let dd = d.degree().unwrap_or(0);
    if de > n || dd > n {
        failed.push(Condition::DegreeBound);
        notes.push(format!("deg E = {de}, deg D = {dd}, bound {n}"));
    }

    if !e.is_n_symmetric(n, tol) {
        failed.push(Condition::Symmetric);
        let gap = e.conj_reciprocal(n).map(|r| r.max_diff(&e));
        match gap {
            Ok(g) => notes.push(format!("E differs from its {n}-reciprocal by {g:e}")),
            Err(_) => notes.push(format!("E has degree above {n}")),
        }
    }

    let mut circle_zeros = 0;
    if d.is_zero() {
        failed.push(Condition::DenominatorZeroFree);
        notes.push("D is identically zero".into());
    } else {
        let floor = match mode {
            DiscCondition::Closed => 1.0 + tol.eps_circle,
            DiscCondition::Open => 1.0 - tol.eps_circle,
        };
        let roots = roots_with_multiplicity(&d, tol)?;
        if let Some(bad) = roots.iter().find(|r| r.z.norm() < floor) {
            failed.push(Condition::DenominatorZeroFree);
            notes.push(format!(
                "D vanishes at {} (modulus {})",
                bad.z,
                bad.z.norm()
            ));
        }
        circle_zeros = roots
            .iter()
            .filter(|r| (r.z.norm() - 1.0).abs() <= tol.eps_circle)
            .map(|r| r.multiplicity)
            .sum();
    }

    let four_dd = modulus_squared(&d).scale(4.0);
    let gap = &four_dd - &modulus_squared(&e);
    let (min, at) = circle_extrema(&gap, tol.circle_samples);
    if min < -tol.eps_residual * (1.0 + four_dd.l1()) {
        failed.push(Condition::Bounded);
        notes.push(format!("4|D|^2 - |E|^2 reaches {min:e} at angle {at}"));
    }

    if !failed.is_empty() {
        return Err(Error::ConditionFailed {
            failed,
            detail: notes.join("; "),
        });
    }
    let d_rev = d.conj_reciprocal(n)?;
    Ok(GammaInner {
        e,
        d,
        d_rev,
        n,
        tol: *tol,
        mode,
        circle_zeros,
    })
}

/// A finite Blaschke product `A / B` of degree at most `deg`, with `A` a unimodular multiple of `B~`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlaschkeRep {
    pub num: Poly,
    pub den: Poly,
    pub deg: usize,
}

impl BlaschkeRep {
    pub fn new(num: Poly, den: Poly, deg: usize) -> Self {
        Self { num, den, deg }
    }

    /// The unimodular `u` with `num = u * den~`.
    fn phase(&self, tol: &ToleranceConfig) -> Result<Complex64> {
        let fail = |why: String| Error::NotInner(why);
        if self.den.is_zero() {
            return Err(fail("zero denominator".into()));
        }
        let rev = self
            .den
            .conj_reciprocal(self.deg)
            .map_err(|_| fail(format!("denominator degree exceeds {}", self.deg)))?;
        if self.num.degree().unwrap_or(0) > self.deg {
            return Err(fail(format!("numerator degree exceeds {}", self.deg)));
        }
        for r in roots_with_multiplicity(&self.den, tol)? {
            if r.z.norm() < 1.0 + tol.eps_circle {
                return Err(fail(format!("denominator vanishes at {}", r.z)));
            }
        }
        let dot: Complex64 = (0..=self.deg)
            .map(|k| self.num.coeff(k) * rev.coeff(k).conj())
            .sum();
        let u = dot / rev.norm2().powi(2);
        let slack = tol.eps_residual * (1.0 + self.num.max_abs());
        if (u.norm() - 1.0).abs() > tol.eps_residual || self.num.max_diff(&rev.scale(u)) > slack {
            return Err(fail(
                "numerator is not a unimodular multiple of the reciprocal denominator".into(),
            ));
        }
        Ok(u / u.norm())
    }
}

/// `(phi + psi, phi psi)` for two finite Blaschke products.
pub fn from_inner_pair(
    phi: &BlaschkeRep,
    psi: &BlaschkeRep,
    tol: &ToleranceConfig,
) -> Result<GammaInner> {
    let u = phi.phase(tol)?;
    let v = psi.phase(tol)?;
    // D = w B F has D~/D = phi psi when w^2 = conj(u v)
    let w = (u * v).conj().sqrt();
    let d = (&phi.den * &psi.den).scale(w);
    let e = (&(&phi.num * &psi.den) + &(&psi.num * &phi.den)).scale(w);
    validate(e, d, phi.deg + psi.deg, tol)
}

/// Parametrized families with known structure.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `E = 2(1-r) lambda^{nu+1}`, `D = 1 + r lambda^{2 nu + 1}`, `n = 2 nu + 2`.
    HNu { nu: usize, r: f64 },
    /// `(beta + conj(beta) lambda, lambda)`.
    Geodesic { beta: Complex64 },
    /// `(omega + conj(omega) p, p)` with `p = den~ / den`.
    Superficial {
        omega: Complex64,
        den: Poly,
        m: usize,
    },
}

pub fn canonical_example(family: &Family, tol: &ToleranceConfig) -> Result<GammaInner> {
    let bad = |s: String| Error::BadParameter(s);
    match family {
        Family::HNu { nu, r } => {
            if !(*r > 0.0 && *r < 1.0) {
                return Err(bad(format!("h_nu needs 0 < r < 1, got {r}")));
            }
            let e = Poly::monomial(Complex64::new(2.0 * (1.0 - r), 0.0), nu + 1);
            let d = &Poly::one() + &Poly::monomial(Complex64::new(*r, 0.0), 2 * nu + 1);
            validate(e, d, 2 * nu + 2, tol)
        }
        Family::Geodesic { beta } => {
            if beta.norm() > 1.0 + tol.eps_residual {
                return Err(bad(format!(
                    "geodesic needs |beta| <= 1, got {}",
                    beta.norm()
                )));
            }
            validate(Poly::new(vec![*beta, beta.conj()]), Poly::one(), 1, tol)
        }
        Family::Superficial { omega, den, m } => {
            if (omega.norm() - 1.0).abs() > tol.eps_circle {
                return Err(bad(format!(
                    "omega must be unimodular, got modulus {}",
                    omega.norm()
                )));
            }
            if *m == 0 || den.is_zero() || den.degree().unwrap_or(0) > *m {
                return Err(bad(format!(
                    "denominator must be nonzero of degree at most m = {m}"
                )));
            }
            for r in roots_with_multiplicity(den, tol)? {
                if r.z.norm() < 1.0 + tol.eps_circle {
                    return Err(bad(format!(
                        "denominator vanishes at {} in the closed disc",
                        r.z
                    )));
                }
            }
            let w = omega / omega.norm();
            let e = &den.scale(w) + &den.conj_reciprocal(*m)?.scale(w.conj());
            validate(e, den.clone(), *m, tol)
        }
    }
}
