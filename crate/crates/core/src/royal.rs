//! Royal polynomial, royal nodes and the extremity classification.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inner::GammaInner;
use crate::poly::Poly;
use crate::roots::root_clusters;
use crate::tol::ToleranceConfig;
use crate::trig::{circle_extrema, shifted};

/// Default cap for [`boundary_flatness`].
pub const MAX_FLATNESS_ORDER: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeRegion {
    Disc,
    Circle,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoyalNode {
    pub location: Complex64,
    pub multiplicity: usize,
    pub region: NodeRegion,
}

/// Zero orders of the royal polynomial, split by location.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoyalOrders {
    pub origin: usize,
    pub disc: usize,
    pub circle: usize,
}

impl RoyalOrders {
    /// `2 ord_0 + 2 ord_disc + ord_circle`; equals twice the degree.
    pub fn weighted_total(&self) -> usize {
        2 * self.origin + 2 * self.disc + self.circle
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoyalProfile {
    pub nodes: Vec<RoyalNode>,
    pub n: usize,
    pub k: usize,
    pub orders: RoyalOrders,
}

impl RoyalProfile {
    pub fn kind(&self) -> (usize, usize) {
        (self.n, self.k)
    }

    pub fn circle_nodes(&self) -> impl Iterator<Item = &RoyalNode> {
        self.nodes.iter().filter(|n| n.region == NodeRegion::Circle)
    }

    pub fn disc_nodes(&self) -> impl Iterator<Item = &RoyalNode> {
        self.nodes.iter().filter(|n| n.region == NodeRegion::Disc)
    }

    /// Node locations repeated by multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.nodes
            .iter()
            .flat_map(|n| std::iter::repeat_n(n.location, n.multiplicity))
            .collect()
    }
}

/// `R = 4 D D~ - E^2`, projected onto the `2n`-symmetric polynomials.
pub fn royal_polynomial(h: &GammaInner) -> Result<Poly> {
    let four_dd = (h.d() * h.d_reciprocal()).scale_real(4.0);
    let e2 = h.e() * h.e();
    let scale = four_dd.max_abs().max(e2.max_abs());
    let r = (&four_dd - &e2).symmetrize(2 * h.n())?;
    if r.max_abs() <= h.tol().eps_residual * scale {
        return Err(Error::RoyalVariety);
    }
    let mut r = r.chop(h.tol().eps_trim * scale);
    r.trim(h.tol().eps_trim);
    Ok(r)
}

pub fn is_n_balanced(r: &Poly, n: usize, tol: &ToleranceConfig) -> bool {
    if r.is_zero() || r.degree().unwrap_or(0) > 2 * n {
        return false;
    }
    match shifted(r, n, tol) {
        Ok(f) => circle_extrema(&f, tol.circle_samples).0 >= -tol.eps_residual * (1.0 + f.l1()),
        Err(_) => false,
    }
}

/// Royal nodes with multiplicities and the type `(n, k)`.
pub fn royal_profile(h: &GammaInner) -> Result<RoyalProfile> {
    let tol = h.tol();
    let r = royal_polynomial(h)?;
    let mut nodes = Vec::new();
    let mut orders = RoyalOrders::default();
    for cl in root_clusters(&r, tol)? {
        let root = cl.root;
        let modulus = root.z.norm();
        let m = root.multiplicity;
        // R is self-reciprocal: an even cluster closer to the circle than its
        // own spread cannot be told apart from its reflection
        let spread = cl
            .members
            .iter()
            .map(|z| (z - root.z).norm())
            .fold(0.0, f64::max);
        let band = if m % 2 == 0 {
            tol.eps_circle.max(spread)
        } else {
            tol.eps_circle
        };
        if (modulus - 1.0).abs() <= band {
            if m % 2 == 1 {
                return Err(Error::OddCircleZero {
                    location: root.z,
                    order: m,
                });
            }
            orders.circle += m;
            nodes.push(RoyalNode {
                location: root.z / modulus,
                multiplicity: m / 2,
                region: NodeRegion::Circle,
            });
        } else if modulus < 1.0 {
            if modulus == 0.0 {
                orders.origin += m;
            } else {
                orders.disc += m;
            }
            nodes.push(RoyalNode {
                location: root.z,
                multiplicity: m,
                region: NodeRegion::Disc,
            });
        }
    }
    let n: usize = nodes.iter().map(|n| n.multiplicity).sum();
    let k = nodes
        .iter()
        .filter(|n| n.region == NodeRegion::Circle)
        .map(|n| n.multiplicity)
        .sum();
    if n != h.degree() {
        return Err(Error::NodeCountMismatch {
            found: n,
            expected: h.degree(),
        });
    }
    nodes.sort_by(|a, b| {
        (a.region as u8)
            .cmp(&(b.region as u8))
            .then(a.location.arg().total_cmp(&b.location.arg()))
            .then(a.location.norm().total_cmp(&b.location.norm()))
    });
    Ok(RoyalProfile {
        nodes,
        n,
        k,
        orders,
    })
}

pub fn is_s_extreme(h: &GammaInner) -> Result<bool> {
    let p = royal_profile(h)?;
    Ok(2 * p.k > p.n)
}

/// Order to which `|s|` reaches 2 at the circle point `tau`.
///
/// `2 - |s(e^{i(t0 +- h)})|` behaves like `c h^q`; `q` is read off the ratio
/// between successive halvings of `h`, with one Richardson step to remove the
/// `h^2` correction, and stopped before the values reach rounding level.
pub fn boundary_flatness(h: &GammaInner, tau: Complex64, max_order: usize) -> Result<usize> {
    let tol = h.tol();
    if (tau.norm() - 1.0).abs() > tol.eps_circle {
        return Err(Error::PointOutOfRegion { point: tau });
    }
    let t0 = tau.arg();
    let gap = |t: f64| -> Result<f64> {
        let (s, _) = h.eval(Complex64::from_polar(1.0, t))?;
        Ok(2.0 - s.norm())
    };
    if gap(t0)? > tol.eps_residual {
        return Ok(0);
    }
    const START: f64 = 0.2;
    const FLOOR: f64 = 1e-10;
    const LEVELS: usize = 48;

    let mut vals = Vec::new();
    let mut step = START;
    for _ in 0..LEVELS {
        let g = 0.5 * (gap(t0 + step)? + gap(t0 - step)?);
        if g < FLOOR {
            break;
        }
        vals.push(g);
        step *= 0.5;
    }
    let orders: Vec<f64> = vals.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    let estimate = match orders.len() {
        0 => return Err(Error::OrderOverflow { max_order }),
        1 => orders[0],
        len => (4.0 * orders[len - 1] - orders[len - 2]) / 3.0,
    };
    let q = estimate.round().max(0.0) as usize;
    if q > max_order {
        return Err(Error::OrderOverflow { max_order });
    }
    Ok(q)
}

/// The unimodular `omega` with `E = omega D + conj(omega) D~`, if any.
pub fn is_superficial(h: &GammaInner) -> Option<Complex64> {
    let (e, d, dr) = (h.e(), h.d(), h.d_reciprocal());
    // least squares in (x, y) for E = x D + y D~
    let len = h.n() + 1;
    let dot = |a: &Poly, b: &Poly| -> Complex64 {
        (0..len).map(|k| a.coeff(k).conj() * b.coeff(k)).sum()
    };
    let (a11, a12, a22) = (dot(d, d), dot(d, dr), dot(dr, dr));
    let (b1, b2) = (dot(d, e), dot(dr, e));
    let det = a11 * a22 - a12 * a12.conj();
    if det.norm() <= 1e-14 * a11.norm() * a22.norm() {
        return None;
    }
    let x = (a22 * b1 - a12 * b2) / det;
    let y = (a11 * b2 - a12.conj() * b1) / det;
    let w = 0.5 * (x + y.conj());
    if w.norm() == 0.0 {
        return None;
    }
    let w = w / w.norm();
    let fit = &d.scale(w) + &dr.scale(w.conj());
    let slack = h.tol().eps_residual * (1.0 + e.max_abs().max(d.max_abs()));
    (e.max_diff(&fit) <= slack).then_some(w)
}
