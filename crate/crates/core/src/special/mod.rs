//! Special functions: gamma, Mittag-Leffler (two-parameter and multivariate),
//! Bessel, Hermite functions and Laguerre polynomials.

pub mod bessel;
pub mod gamma;
pub mod mittag_leffler;
pub mod multivariate;
pub mod orthopoly;

pub use bessel::{bessel_j, bessel_j_zeros};
pub use gamma::{gamma, ln_gamma, reciprocal_gamma};
pub use mittag_leffler::ml_two_param;
pub use multivariate::{compositions, ml_multivariate, Compositions, MLIndex, MultivariateSeries};
pub use orthopoly::{hermite_function, laguerre_poly};

use serde::{Deserialize, Serialize};

/// Truncation control for the power series evaluated in this module.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SeriesControl {
    /// Target bound on the discarded tail.
    pub abs_tol: f64,
    /// Largest total degree summed before giving up.
    pub max_total_degree: usize,
    /// Largest tolerated rounding error, relative to `max(1, |sum|)`,
    /// estimated from the absolute sum of the terms.
    pub max_rounding_error: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            abs_tol: 1e-15,
            max_total_degree: 2000,
            max_rounding_error: 1e-10,
        }
    }
}

impl SeriesControl {
    pub fn violations(&self, prefix: &str) -> Vec<crate::Violation> {
        let mut v = Vec::new();
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            v.push(crate::Violation::new(
                format!("{prefix}.abs_tol"),
                "must be positive",
            ));
        }
        if self.max_total_degree < 1 {
            v.push(crate::Violation::new(
                format!("{prefix}.max_total_degree"),
                "must be at least 1",
            ));
        }
        if !(self.max_rounding_error > 0.0 && self.max_rounding_error.is_finite()) {
            v.push(crate::Violation::new(
                format!("{prefix}.max_rounding_error"),
                "must be positive",
            ));
        }
        v
    }

    pub(crate) fn validate(&self) -> crate::Result<()> {
        if !(self.abs_tol > 0.0) || self.max_total_degree < 1 || !(self.max_rounding_error > 0.0) {
            return Err(crate::Error::invalid(
                "series control needs abs_tol > 0, max_total_degree >= 1 and max_rounding_error > 0",
            ));
        }
        Ok(())
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Geometric tail certificate from successive block magnitudes.
///
/// Returns true once the ratio of the latest block to the previous one is
/// below one, no larger than the ratio before it, and the geometric majorant
/// of the remaining tail is below `tol`.
pub(crate) struct TailCertificate {
    prev: Option<f64>,
    prev_ratio: f64,
    pub(crate) last_estimate: f64,
}

impl TailCertificate {
    pub(crate) fn new() -> Self {
        Self {
            prev: None,
            prev_ratio: f64::INFINITY,
            last_estimate: f64::INFINITY,
        }
    }

    pub(crate) fn push(&mut self, block: f64, tol: f64) -> bool {
        let done = match self.prev {
            None => false,
            Some(_) if block == 0.0 => {
                self.last_estimate = 0.0;
                true
            }
            Some(p) => {
                let r = block / p;
                let ok = if r < 1.0 && r <= self.prev_ratio {
                    self.last_estimate = block * r / (1.0 - r);
                    self.last_estimate < tol
                } else {
                    self.last_estimate = block;
                    false
                };
                self.prev_ratio = r;
                ok
            }
        };
        self.prev = Some(block);
        done
    }
}

pub(crate) fn check_rounding(sum: f64, abs_sum: f64, ctl: &SeriesControl) -> crate::Result<f64> {
    let estimate = f64::EPSILON * abs_sum;
    let limit = ctl.max_rounding_error * sum.abs().max(1.0);
    if estimate > limit {
        return Err(crate::Error::Cancellation { estimate, limit });
    }
    Ok(sum)
}
