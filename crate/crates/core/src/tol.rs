//! Numerical tolerances shared by every operation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Coefficients below `eps_trim * max|coeff|` are treated as zero.
    pub eps_trim: f64,
    /// Root-residual target, also the backward-error threshold for merging multiple roots.
    pub eps_root: f64,
    /// Half-width of the annulus classed as "on the unit circle".
    pub eps_circle: f64,
    /// Slack for verifying identities.
    pub eps_residual: f64,
    /// Default sampling density on the unit circle.
    pub circle_samples: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eps_trim: 1e-12,
            eps_root: 1e-10,
            eps_circle: 1e-8,
            eps_residual: 1e-9,
            circle_samples: 1024,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let eps = [
            ("eps_trim", self.eps_trim),
            ("eps_root", self.eps_root),
            ("eps_circle", self.eps_circle),
            ("eps_residual", self.eps_residual),
        ];
        for (name, v) in eps {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Tolerance(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.eps_circle >= 0.5 {
            return Err(Error::Tolerance(format!(
                "eps_circle must be below 0.5, got {}",
                self.eps_circle
            )));
        }
        if self.circle_samples < 256 {
            return Err(Error::Tolerance(format!(
                "circle_samples must be at least 256, got {}",
                self.circle_samples
            )));
        }
        Ok(())
    }

    /// Apply a `key=value` override, as accepted by `--tol` on the command line.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().to_ascii_lowercase();
        let bad = |e: &dyn std::fmt::Display| Error::Tolerance(format!("{key}={value}: {e}"));
        match key.as_str() {
            "circle_samples" => {
                self.circle_samples = value.trim().parse().map_err(|e| bad(&e))?;
            }
            _ => {
                let v: f64 = value.trim().parse().map_err(|e| bad(&e))?;
                match key.as_str() {
                    "eps_trim" => self.eps_trim = v,
                    "eps_root" => self.eps_root = v,
                    "eps_circle" => self.eps_circle = v,
                    "eps_residual" => self.eps_residual = v,
                    _ => return Err(Error::Tolerance(format!("unknown tolerance key `{key}`"))),
                }
            }
        }
        self.validate()
    }

    pub const KEYS: [&'static str; 5] = [
        "eps_trim",
        "eps_root",
        "eps_circle",
        "eps_residual",
        "circle_samples",
    ];
}
