//! JSON documents for polynomials, functions, specs, profiles and
//! trigonometric polynomials.
//!
//! Complex numbers are `[re, im]` pairs and polynomials are ascending
//! coefficient arrays. Floats are written in shortest round-trip form, so
//! parsing a serialized value gives it back bit for bit.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::inner::{validate_with, DiscCondition, GammaInner};
use crate::poly::Poly;
use crate::royal::RoyalProfile;
use crate::synthesis::SynthesisSpec;
use crate::tol::ToleranceConfig;
use crate::trig::TrigPoly;

use num_complex::Complex64;

#[derive(Debug, Error, PartialEq)]
pub enum DocError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid value: {0}")]
    Validation(#[from] Error),
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, DocError> {
    serde_json::from_str(text).map_err(|e| DocError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn render<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents always serialize")
}

#[derive(Serialize, Deserialize)]
struct InnerDoc {
    #[serde(rename = "E")]
    e: Poly,
    #[serde(rename = "D")]
    d: Poly,
    n: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    open_disc: bool,
}

#[derive(Serialize, Deserialize)]
struct TrigDoc {
    /// `a_{-n}, ..., a_n`.
    coeffs: Vec<Complex64>,
}

pub fn poly_to_json(p: &Poly) -> String {
    serde_json::to_string(p).expect("documents always serialize")
}

pub fn poly_from_json(text: &str) -> Result<Poly, DocError> {
    parse(text)
}

pub fn inner_to_json(h: &GammaInner) -> String {
    render(&InnerDoc {
        e: h.e().clone(),
        d: h.d().clone(),
        n: h.n(),
        open_disc: h.mode() == DiscCondition::Open,
    })
}

/// Parse and validate a `{"E": .., "D": .., "n": ..}` document.
pub fn inner_from_json(text: &str, tol: &ToleranceConfig) -> Result<GammaInner, DocError> {
    let doc: InnerDoc = parse(text)?;
    let mode = if doc.open_disc {
        DiscCondition::Open
    } else {
        DiscCondition::Closed
    };
    Ok(validate_with(doc.e, doc.d, doc.n, tol, mode)?)
}

pub fn spec_to_json(s: &SynthesisSpec) -> String {
    render(s)
}

pub fn spec_from_json(text: &str, tol: &ToleranceConfig) -> Result<SynthesisSpec, DocError> {
    let s: SynthesisSpec = parse(text)?;
    s.check(tol)?;
    Ok(s)
}

pub fn profile_to_json(p: &RoyalProfile) -> String {
    render(p)
}

pub fn profile_from_json(text: &str) -> Result<RoyalProfile, DocError> {
    parse(text)
}

pub fn trig_to_json(f: &TrigPoly) -> String {
    render(&TrigDoc {
        coeffs: f.laurent(),
    })
}

pub fn trig_from_json(text: &str, tol: &ToleranceConfig) -> Result<TrigPoly, DocError> {
    let doc: TrigDoc = parse(text)?;
    Ok(TrigPoly::from_laurent(&doc.coeffs, tol)?)
}
