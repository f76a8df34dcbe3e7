//! Rational inner functions of the symmetrized bidisc.
//!
//! A rational Γ-inner function is stored as a pair of polynomials `(E, D)`
//! with a degree bound `n`, representing `h = (E/D, D~/D)`. The crate
//! validates such pairs, locates their royal nodes, builds new ones from
//! prescribed nodes and zeros by spectral factorization, and decides
//! `s`-extremity.

pub mod error;
pub mod geometry;
pub mod inner;
pub mod io;
pub mod poly;
pub mod roots;
pub mod royal;
pub mod spectral;
pub mod synthesis;
pub mod tol;
pub mod trace;
pub mod trig;

pub use error::{Condition, Error, Result};
pub use geometry::{
    classify_point, mobius_chart, royal_residual, symmetrize, ChartPoint, GammaRegion,
};
pub use inner::{
    canonical_example, from_inner_pair, validate, validate_with, BlaschkeRep, DiscCondition,
    Family, GammaInner,
};
pub use poly::{elementary_factor, FactorKind, Poly};
pub use roots::{root_clusters, roots_with_multiplicity, Cluster, Root};
pub use royal::{
    boundary_flatness, is_n_balanced, is_s_extreme, is_superficial, royal_polynomial,
    royal_profile, NodeRegion, RoyalNode, RoyalOrders, RoyalProfile, MAX_FLATNESS_ORDER,
};
pub use spectral::fejer_riesz;
pub use synthesis::{
    build_re, convex_combine, recover_spec, synthesize, witness_non_extreme, SynthesisSpec,
};
pub use tol::ToleranceConfig;
pub use trace::{trace_boundary, TraceRow};
pub use trig::{circle_extrema, modulus_squared, shifted, TrigPoly};
