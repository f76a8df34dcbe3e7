//! All-roots solver with multiplicity clustering.
//!
//! Roots are found simultaneously with the Aberth-Ehrlich iteration from a
//! deterministic circular start. Roots that fail to converge are finished by
//! Newton iteration with deflation. A group of `m` nearby computed roots is
//! merged into one `m`-fold root when the polynomial is within `eps_root`
//! (relative, coefficientwise) of one that has an exact `m`-fold root at the
//! group centre polished on the `(m-1)`-th derivative.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::tol::ToleranceConfig;

const MAX_ITER: usize = 600;
const MAX_CLUSTER: usize = 16;

/// A root together with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub z: Complex64,
    pub multiplicity: usize,
}

/// Every root of `f`, each listed once per multiplicity (no clustering).
pub fn all_roots(f: &Poly) -> Result<Vec<Complex64>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (zeros, rest) = f.split_origin();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    roots.extend(aberth(&rest));
    Ok(roots)
}

/// Roots of `f` with multiplicities summing to `deg f`.
pub fn roots_with_multiplicity(f: &Poly, tol: &ToleranceConfig) -> Result<Vec<Root>> {
    Ok(root_clusters(f, tol)?.into_iter().map(|c| c.root).collect())
}

fn chop_low(f: &Poly, eps_trim: f64) -> Poly {
    let thr = eps_trim * f.max_abs();
    let mut c = f.coeffs().to_vec();
    for a in c.iter_mut() {
        if a.norm() > thr {
            break;
        }
        *a = Complex64::new(0.0, 0.0);
    }
    Poly::raw(c)
}

/// Largest spread of a cluster, relative to `max(1, |z|)`.
const MAX_SPREAD: f64 = 1e-2;

/// Smallest distance a polished centre may move, relative to `max(1, |z|)`.
/// Raw members of a multiple root can be biased well beyond their spread.
const POLISH_REACH: f64 = 1e-4;

/// Newton steps used to polish a cluster centre.
const POLISH_STEPS: usize = 30;

/// A group of computed roots merged into one multiple root.
#[derive(Clone, Debug, PartialEq)]
pub struct Cluster {
    pub root: Root,
    /// The computed roots that make up the cluster.
    pub members: Vec<Complex64>,
}

/// Like [`roots_with_multiplicity`], keeping the raw members of each cluster.
pub fn root_clusters(f: &Poly, tol: &ToleranceConfig) -> Result<Vec<Cluster>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = chop_low(f, tol.eps_trim);
    let (zeros, rest) = g.split_origin();
    let mut out = Vec::new();
    if zeros > 0 {
        let origin = Complex64::new(0.0, 0.0);
        out.push(Cluster {
            root: Root {
                z: origin,
                multiplicity: zeros,
            },
            members: vec![origin; zeros],
        });
    }
    let raw = aberth(&rest);
    out.extend(cluster(&rest, &raw, tol.eps_root));
    Ok(out)
}

/// First `count` Taylor coefficients `f^{(j)}(z) / j!` by repeated synthetic division.
fn taylor_coeffs(f: &Poly, z: Complex64, count: usize) -> Vec<Complex64> {
    let mut c = f.coeffs().to_vec();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        if c.is_empty() {
            out.push(Complex64::new(0.0, 0.0));
            continue;
        }
        out.push(
            c.iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a),
        );
        c = if c.len() > 1 {
            deflate(&c, z)
        } else {
            Vec::new()
        };
    }
    out
}

/// Relative coefficient distance from `f` to the nearest polynomial with an
/// `m`-fold root at `z`, measured along `sum_{j<m} t_j (lambda - z)^j`.
fn multiple_root_distance(f: &Poly, z: Complex64, m: usize) -> f64 {
    let t = taylor_coeffs(f, z, m);
    let mut power = vec![Complex64::new(1.0, 0.0)];
    let mut p = vec![Complex64::new(0.0, 0.0); m];
    for tj in t {
        for (k, a) in power.iter().enumerate() {
            p[k] += tj * a;
        }
        let mut next = vec![Complex64::new(0.0, 0.0); power.len() + 1];
        for (k, a) in power.iter().enumerate() {
            next[k] -= a * z;
            next[k + 1] += a;
        }
        power = next;
    }
    let pmax = p.iter().map(|a| a.norm()).fold(0.0, f64::max);
    pmax / f.max_abs()
}

/// Greedy clustering: for each unassigned root, take the largest group of its
/// nearest unassigned neighbours for which `f` is within `eps_root` of having
/// one root of that multiplicity at the polished centre.
fn cluster(f: &Poly, roots: &[Complex64], eps_root: f64) -> Vec<Cluster> {
    let n = roots.len();
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let mut near: Vec<usize> = (0..n).filter(|&j| !assigned[j]).collect();
        near.sort_by(|&a, &b| {
            (roots[a] - roots[i])
                .norm()
                .total_cmp(&(roots[b] - roots[i]).norm())
        });
        let mut best = (1, roots[i]);
        for m in 2..=near.len().min(MAX_CLUSTER) {
            let members = &near[..m];
            let centre = members.iter().map(|&j| roots[j]).sum::<Complex64>() / m as f64;
            let spread = members
                .iter()
                .map(|&j| (roots[j] - centre).norm())
                .fold(0.0, f64::max);
            if spread > MAX_SPREAD * centre.norm().max(1.0) {
                break;
            }
            let Some(z) = polish_multiple(f, centre, m, 4.0 * spread) else {
                continue;
            };
            if multiple_root_distance(f, z, m) <= eps_root {
                best = (m, z);
            }
        }
        let members: Vec<Complex64> = near[..best.0].iter().map(|&j| roots[j]).collect();
        for &j in &near[..best.0] {
            assigned[j] = true;
        }
        out.push(Cluster {
            root: Root {
                z: best.1,
                multiplicity: best.0,
            },
            members,
        });
    }
    out
}

/// Newton on `f^{(m-1)}` from the cluster centre. `None` if the iteration
/// leaves the disc of radius `reach` around the centre.
fn polish_multiple(f: &Poly, centre: Complex64, m: usize, reach: f64) -> Option<Complex64> {
    let mut d = f.clone();
    for _ in 1..m {
        d = d.derivative();
    }
    if d.degree().unwrap_or(0) == 0 {
        return Some(centre);
    }
    let reach = reach.max(POLISH_REACH * centre.norm().max(1.0));
    let mut z = centre;
    for _ in 0..POLISH_STEPS {
        let (v, dv) = d.eval_with_derivative(z);
        if dv.norm() == 0.0 {
            break;
        }
        let step = v / dv;
        z -= step;
        if !z.is_finite() || (z - centre).norm() > reach {
            return None;
        }
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(1.0) {
            break;
        }
    }
    Some(z)
}

/// Horner evaluation of `f` and `f'` together with a rounding-error bound for `f(z)`.
fn eval_bound(c: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let r = z.norm();
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        bound = bound * r + a.norm();
    }
    (p, dp, bound)
}

fn initial_guesses(c: &[Complex64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let radius = (c[0].norm() / c[d].norm()).powf(1.0 / d as f64);
    let radius = if radius.is_finite() && radius > 0.0 {
        radius
    } else {
        1.0
    };
    (0..d)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / d as f64 + 0.4))
        .collect()
}

/// Aberth-Ehrlich on a polynomial with nonzero constant term.
fn aberth(f: &Poly) -> Vec<Complex64> {
    let c = f.coeffs();
    let d = match f.degree() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    if d == 1 {
        return vec![-c[0] / c[1]];
    }
    let mut z = initial_guesses(c);
    let mut done = vec![false; d];
    let tiny = 4.0 * f64::EPSILON * d as f64;
    for _ in 0..MAX_ITER {
        let mut all = true;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (p, dp, bound) = eval_bound(c, z[i]);
            if p.norm() <= tiny * bound {
                done[i] = true;
                continue;
            }
            all = false;
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() <= f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
        if all {
            return z;
        }
    }
    deflation_fallback(f, z, &done)
}

/// Finish stagnated roots: deflate by the converged ones, then Newton with
/// deflation on the quotient, then one polish on the original.
fn deflation_fallback(f: &Poly, mut z: Vec<Complex64>, done: &[bool]) -> Vec<Complex64> {
    let mut q = f.coeffs().to_vec();
    for (i, &ok) in done.iter().enumerate() {
        if ok {
            q = deflate(&q, z[i]);
        }
    }
    for i in (0..z.len()).filter(|&i| !done[i]) {
        if q.len() < 2 {
            break;
        }
        let mut w = z[i];
        for _ in 0..100 {
            let (p, dp, _) = eval_bound(&q, w);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            w -= step;
            if step.norm() <= f64::EPSILON * w.norm().max(1.0) {
                break;
            }
        }
        for _ in 0..3 {
            let (p, dp, _) = eval_bound(f.coeffs(), w);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if step.is_finite() {
                w -= step;
            }
        }
        z[i] = w;
        q = deflate(&q, w);
    }
    z
}

/// Synthetic division by `(lambda - r)`, ascending coefficients.
fn deflate(c: &[Complex64], r: Complex64) -> Vec<Complex64> {
    let d = c.len() - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); d];
    let mut acc = c[d];
    for k in (0..d).rev() {
        out[k] = acc;
        acc = c[k] + acc * r;
    }
    out
}
