use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

/// The four representation conditions a candidate `(E, D, n)` must meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// `deg E <= n` and `deg D <= n`.
    DegreeBound,
    /// `E` is `n`-symmetric.
    Symmetric,
    /// `D` has no zeros on the closed disc (or the open disc, in converse mode).
    DenominatorZeroFree,
    /// `|E| <= 2|D|` on the circle.
    Bounded,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::DegreeBound => "i",
            Condition::Symmetric => "ii",
            Condition::DenominatorZeroFree => "iii",
            Condition::Bounded => "iv",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial degree {degree} exceeds bound {bound}")]
    DegreeExceedsBound { degree: usize, bound: usize },

    #[error("zero polynomial has no roots")]
    ZeroPolynomial,

    #[error("point {point} lies outside the admissible region")]
    PointOutOfRegion { point: Complex64 },

    #[error("|p| = {modulus} is not on the unit circle")]
    NotOnTorusFiber { modulus: f64 },

    #[error("polynomial is not 2n-symmetric for n = {n}")]
    NotBalanced { n: usize },

    #[error("trigonometric polynomial takes the negative value {min} at angle {at}")]
    NotNonnegative { min: f64, at: f64 },

    #[error("circle zero near {location} has odd order {order}")]
    OddCircleZero { location: Complex64, order: usize },

    #[error("conditions failed: {}; {detail}", join_conditions(.failed))]
    ConditionFailed {
        failed: Vec<Condition>,
        detail: String,
    },

    #[error("constant functions (n = 0) are not admitted")]
    ConstantFunction,

    #[error("denominator vanishes at {point}")]
    PoleOnDomain { point: Complex64 },

    #[error("input is not a finite Blaschke product: {0}")]
    NotInner(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("royal polynomial vanishes identically; the function maps into the royal variety")]
    RoyalVariety,

    #[error("flatness order exceeds {max_order}")]
    OrderOverflow { max_order: usize },

    #[error("bad synthesis spec: {0}")]
    BadSpec(String),

    #[error("type ({n}, {k}) has 2k > n; the function is s-extreme and admits no witness")]
    ExtremeNoWitness { n: usize, k: usize },

    #[error("the two functions have different second components")]
    DifferentSecondComponent,

    #[error("found {found} royal nodes counted with multiplicity, expected {expected}")]
    NodeCountMismatch { found: usize, expected: usize },

    #[error("no certified perturbation found after {halvings} halvings")]
    WitnessNotFound { halvings: usize },

    #[error("invalid tolerance: {0}")]
    Tolerance(String),
}

fn join_conditions(c: &[Condition]) -> String {
    c.iter()
        .map(|c| format!("({c})"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
