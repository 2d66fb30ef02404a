//! Bessel functions of the first kind `J_ν(x)` for real `ν ≥ 0`, `x ≥ 0`.

use super::gamma::{ln_gamma, reciprocal_gamma};
use crate::error::{Error, Result};

const SERIES_LIMIT: f64 = 2.0;

/// `J_ν(x)`: ascending series for small `x`, Miller's backward recurrence
/// normalized by `(x/2)^ν = Σ_k (ν+2k) Γ(ν+k)/k! · J_{ν+2k}(x)` otherwise.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if !(nu >= 0.0 && nu.is_finite()) {
        return Err(Error::invalid(format!(
            "Bessel order must be non-negative, got {nu}"
        )));
    }
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::DomainViolation {
            point: format!("{x}"),
            domain: "[0, inf)",
        });
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    if x < SERIES_LIMIT {
        return Ok(series(nu, x));
    }
    Ok(miller(nu, x))
}

fn series(nu: f64, x: f64) -> f64 {
    let h = 0.5 * x;
    let mut term = h.powf(nu) * reciprocal_gamma(nu + 1.0);
    let mut sum = term;
    for k in 1..60 {
        let kf = k as f64;
        term *= -h * h / (kf * (kf + nu));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn miller(nu: f64, x: f64) -> f64 {
    let start = {
        let n = (x + 30.0 + 10.0 * x.sqrt()).ceil() as usize;
        n + n % 2
    };
    let mut above = 0.0;
    let mut current = 1e-300_f64.max(f64::MIN_POSITIVE);
    let mut norm = 0.0;
    let weight = |k: usize| -> f64 {
        if k == 0 {
            (ln_gamma(nu + 1.0)).exp()
        } else {
            let kf = k as f64;
            (nu + 2.0 * kf) * (ln_gamma(nu + kf) - ln_gamma(kf + 1.0)).exp()
        }
    };
    // current holds the unnormalized J_{ν+n}.
    for n in (0..=start).rev() {
        if n % 2 == 0 {
            norm += weight(n / 2) * current;
        }
        if n == 0 {
            break;
        }
        let below = 2.0 * (nu + n as f64) / x * current - above;
        above = current;
        current = below;
        if current.abs() > 1e250 {
            current *= 1e-250;
            above *= 1e-250;
            norm *= 1e-250;
        }
    }
    (0.5 * x).powf(nu) * current / norm
}

/// The first `count` positive zeros of `J_ν`, located by scanning for sign
/// changes on a step of 0.1 and refined by bisection.
pub fn bessel_j_zeros(nu: f64, count: usize) -> Result<Vec<f64>> {
    let mut zeros = Vec::with_capacity(count);
    let step = 0.1;
    let mut a = step;
    let mut fa = bessel_j(nu, a)?;
    while zeros.len() < count {
        let b = a + step;
        let fb = bessel_j(nu, b)?;
        if fa == 0.0 {
            zeros.push(a);
        } else if fa * fb < 0.0 {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = bessel_j(nu, mid)?;
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            zeros.push(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    Ok(zeros)
}
