//! Two-parameter Mittag-Leffler function `E_{α,β}(z) = Σ z^k / Γ(αk + β)` for real `z`.
//!
//! Positive and small negative arguments use the power series. For negative
//! `z` with `|z|^{1/α}` beyond [`SERIES_RADIUS`] and `α ≤ 2`, the series would
//! lose too many digits to cancellation, so the function switches to an
//! integral representation: a Beta-type integral when `α = 1` and the
//! Hankel-contour integral (plus the pole residues when `α > 1`) otherwise.

use std::f64::consts::PI;

use super::gamma::{ln_gamma, reciprocal_gamma, sin_pi};
use super::{check_rounding, CompensatedSum, SeriesControl, TailCertificate};
use crate::error::{Error, Result};
use crate::quadrature::integrate_adaptive;

/// Above this value of `|z|^{1/α}` negative arguments leave the power series.
pub const SERIES_RADIUS: f64 = 6.0;

const QUAD_REL_TOL: f64 = 1e-13;

pub(crate) fn check_index(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::invalid(format!(
            "Mittag-Leffler alpha must be positive, got {alpha}"
        )));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::invalid(format!(
            "Mittag-Leffler beta must be positive, got {beta}"
        )));
    }
    Ok(())
}

/// `E_{α,β}(z)` with truncation governed by `ctl`.
pub fn ml_two_param(alpha: f64, beta: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    check_index(alpha, beta)?;
    ctl.validate()?;
    if !z.is_finite() {
        return Err(Error::invalid(format!(
            "Mittag-Leffler argument must be finite, got {z}"
        )));
    }
    if z == 0.0 {
        return Ok(reciprocal_gamma(beta));
    }
    if alpha == 1.0 && beta == 1.0 {
        return Ok(z.exp());
    }
    if z > 0.0 || alpha > 2.0 || (-z).powf(1.0 / alpha) <= SERIES_RADIUS {
        return power_series(alpha, beta, z, ctl);
    }
    negative_argument(alpha, beta, z, ctl)
}

/// Direct summation of the power series with a geometric tail certificate.
pub(crate) fn power_series(alpha: f64, beta: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    let ln_z = z.abs().ln();
    let mut sum = CompensatedSum::default();
    let mut abs_sum = 0.0;
    let mut cert = TailCertificate::new();
    for k in 0..=ctl.max_total_degree {
        let exponent = k as f64 * ln_z - ln_gamma(alpha * k as f64 + beta);
        if exponent > 709.0 {
            return Err(Error::Overflow {
                what: "Mittag-Leffler series term",
                at: z,
            });
        }
        let magnitude = exponent.exp();
        let term = if z < 0.0 && k % 2 == 1 {
            -magnitude
        } else {
            magnitude
        };
        sum.add(term);
        abs_sum += magnitude;
        if cert.push(magnitude, ctl.abs_tol) {
            return check_rounding(sum.value(), abs_sum, ctl);
        }
    }
    Err(Error::NonConvergence {
        max_degree: ctl.max_total_degree,
        tail: cert.last_estimate,
    })
}

fn negative_argument(alpha: f64, beta: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    if alpha == 1.0 {
        if beta == 1.0 {
            return Ok(z.exp());
        }
        if beta < 1.0 {
            return Ok(reciprocal_gamma(beta) + z * negative_argument(1.0, beta + 1.0, z, ctl)?);
        }
        if beta >= 2.0 {
            let lower = negative_argument(1.0, beta - 1.0, z, ctl)?;
            return Ok((lower - reciprocal_gamma(beta - 1.0)) / z);
        }
        return beta_integral(beta, z, ctl);
    }
    if beta >= alpha + 0.5 {
        let lower = negative_argument(alpha, beta - alpha, z, ctl)?;
        return Ok((lower - reciprocal_gamma(beta - alpha)) / z);
    }
    let mut value = hankel_integral(alpha, beta, z, ctl)?;
    if alpha > 1.0 {
        value += pole_residues(alpha, beta, z);
    }
    Ok(value)
}

/// `E_{1,β}(z) = (1/Γ(β)) ∫_0^1 exp(z (1 - v^{1/(β-1)})) dv` for `1 < β < 2`.
fn beta_integral(beta: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    let p = 1.0 / (beta - 1.0);
    let integral = integrate_adaptive(
        |v: f64| (z * (1.0 - v.powf(p))).exp(),
        0.0,
        1.0,
        ctl.abs_tol,
        QUAD_REL_TOL,
    )?;
    Ok(integral * reciprocal_gamma(beta))
}

/// Integral part of the Hankel-contour representation for `z < 0`, `β < α + 1/2`.
///
/// The substitution `u = w^q` with `q = α / (α + 1 - β)` absorbs the algebraic
/// factor `u^{(1-β)/α}` together with the Jacobian, leaving a bounded integrand.
fn hankel_integral(alpha: f64, beta: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    let q = alpha / (alpha + 1.0 - beta);
    let s_beta = sin_pi(beta);
    let s_diff = sin_pi(alpha - beta);
    let c_alpha = (PI * alpha).cos();
    let scale = q / (alpha * PI);
    let decay = 1.0 / (alpha + 1.0 - beta);
    let f = |w: f64| {
        if w == 0.0 {
            return scale * s_diff / z;
        }
        let u = w.powf(q);
        let num = u * s_beta + z * s_diff;
        let den = u * u - 2.0 * u * z * c_alpha + z * z;
        scale * (-w.powf(decay)).exp() * num / den
    };
    let az = z.abs();
    let w_split = az.powf(1.0 / q);
    let u_max = (az.powf(1.0 / alpha) + 60.0).powf(alpha);
    let w_max = u_max.powf(1.0 / q).max(2.0 * w_split);
    let head = integrate_adaptive(f, 0.0, w_split, ctl.abs_tol, QUAD_REL_TOL)?;
    let tail = integrate_adaptive(f, w_split, w_max, ctl.abs_tol, QUAD_REL_TOL)?;
    Ok(head + tail)
}

/// Contribution `(2/α) Re[ζ^{1-β} e^ζ]` of the poles `ζ = |z|^{1/α} e^{±iπ/α}`.
fn pole_residues(alpha: f64, beta: f64, z: f64) -> f64 {
    let r = z.abs().powf(1.0 / alpha);
    let phase = PI * (1.0 - beta) / alpha + r * (PI / alpha).sin();
    let magnitude = z.abs().powf((1.0 - beta) / alpha) * (r * (PI / alpha).cos()).exp();
    2.0 / alpha * magnitude * phase.cos()
}
