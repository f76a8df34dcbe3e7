//! Pointwise geometry of the symmetrized bidisc.
//!
//! Points are written `(s, p)`, for "sum" and "product". The closed set is
//! described by `|s| <= 2` and `|s - conj(s) p| <= 1 - |p|^2`; the
//! distinguished boundary by `|s| <= 2`, `|p| = 1` and `s = conj(s) p`.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol::ToleranceConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaRegion {
    InteriorG,
    BoundaryGamma,
    DistinguishedBoundary,
    Outside,
}

impl GammaRegion {
    pub fn label(self) -> &'static str {
        match self {
            GammaRegion::InteriorG => "interior",
            GammaRegion::BoundaryGamma => "boundary",
            GammaRegion::DistinguishedBoundary => "distinguished-boundary",
            GammaRegion::Outside => "outside",
        }
    }

    /// Whether the region lies inside the closed set.
    pub fn in_gamma(self) -> bool {
        self != GammaRegion::Outside
    }
}

impl fmt::Display for GammaRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn symmetrize(z: Complex64, w: Complex64) -> (Complex64, Complex64) {
    (z + w, z * w)
}

/// Most specific region containing `(s, p)`, with `eps_residual` slack on
/// every inequality and equality.
pub fn classify_point(s: Complex64, p: Complex64, tol: &ToleranceConfig) -> GammaRegion {
    let e = tol.eps_residual;
    let abs_s = s.norm();
    let gap = (s - s.conj() * p).norm();
    let room = 1.0 - p.norm_sqr();

    if abs_s > 2.0 + e || gap > room + e {
        return GammaRegion::Outside;
    }
    if (p.norm() - 1.0).abs() <= e && gap <= e {
        return GammaRegion::DistinguishedBoundary;
    }
    if (gap - room).abs() <= e || abs_s >= 2.0 - e {
        return GammaRegion::BoundaryGamma;
    }
    GammaRegion::InteriorG
}

/// `s^2 - 4p`; zero exactly on the royal variety.
pub fn royal_residual(s: Complex64, p: Complex64) -> Complex64 {
    s * s - 4.0 * p
}

/// Coordinates on the distinguished boundary, seen as a Möbius band.
///
/// `theta` is the branch of `-i log p` nearest `branch_ref`; `x` is
/// `Re(s e^{-i theta/2}) / 2`, which lies in `[-1, 1]` on the band.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartPoint {
    pub x: f64,
    pub theta: f64,
    /// `Im(s e^{-i theta/2}) / 2`; zero on the band.
    pub off_band: f64,
}

pub fn mobius_chart(
    s: Complex64,
    p: Complex64,
    branch_ref: f64,
    tol: &ToleranceConfig,
) -> Result<ChartPoint> {
    let modulus = p.norm();
    if (modulus - 1.0).abs() > tol.eps_circle {
        return Err(Error::NotOnTorusFiber { modulus });
    }
    let principal = p.arg();
    // ties go to the upper branch so that p = -1 near 0 reads as +pi
    let k = ((branch_ref - principal) / TAU + 0.5).floor();
    let theta = principal + TAU * k;
    let v = s * Complex64::from_polar(1.0, -theta / 2.0) / 2.0;
    Ok(ChartPoint {
        x: v.re,
        theta,
        off_band: v.im,
    })
}

/// Inverse of [`mobius_chart`] on the band.
pub fn chart_point(x: f64, theta: f64) -> (Complex64, Complex64) {
    (
        Complex64::from_polar(2.0 * x, theta / 2.0),
        Complex64::from_polar(1.0, theta),
    )
}
