//! Euler gamma function and its logarithm.
//!
//! Lanczos approximation (g = 7, nine coefficients) on `x >= 0.5`, with the
//! reflection formula below that. Positive integers up to 171 are computed as
//! exact factorial products.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Largest argument for which `Γ(x)` is representable as an `f64`.
pub const GAMMA_OVERFLOW: f64 = 171.624_376_956_302_7;

/// `sin(πx)` with the argument reduced first, so it is exactly zero at integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    // r in [-1, 1]
    if r.abs() == 1.0 || r == 0.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn lanczos_sum(xm1: f64) -> f64 {
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (xm1 + i as f64);
    }
    acc
}

/// The gamma function `Γ(x)`.
///
/// Fails with [`Error::Pole`] at non-positive integers and
/// [`Error::Overflow`] past [`GAMMA_OVERFLOW`].
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::invalid("gamma of NaN"));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x > GAMMA_OVERFLOW {
        return Err(Error::Overflow {
            what: "gamma",
            at: x,
        });
    }
    if x == x.floor() && x <= 171.0 {
        let n = x as u32;
        let mut p = 1.0f64;
        for k in 2..n {
            p *= k as f64;
        }
        return Ok(p);
    }
    if x < 0.5 {
        let s = sin_pi(x);
        let g = gamma(1.0 - x);
        return match g {
            Ok(g) => Ok(PI / (s * g)),
            // Γ(1-x) overflowed, so Γ(x) underflows to zero.
            Err(Error::Overflow { .. }) => Ok(0.0),
            Err(e) => Err(e),
        };
    }
    let xm1 = x - 1.0;
    let t = xm1 + LANCZOS_G + 0.5;
    let sum = lanczos_sum(xm1);
    // Split the power so t^(x-1/2) does not overflow before exp(-t) applies.
    let half = t.powf(0.5 * (xm1 + 0.5));
    Ok((2.0 * PI).sqrt() * half * (-t).exp() * half * sum)
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        // Γ(x) Γ(1-x) = π / sin(πx), both factors positive here.
        return (PI / sin_pi(x)).ln() - ln_gamma(1.0 - x);
    }
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    let xm1 = x - 1.0;
    let t = xm1 + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (xm1 + 0.5) * t.ln() - t + lanczos_sum(xm1).ln()
}

/// `ln |Γ(x)|` and the sign of `Γ(x)` for any real `x` that is not a pole.
pub(crate) fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if x > 0.0 {
        return (ln_gamma(x), 1.0);
    }
    let s = sin_pi(x);
    let lg = (PI / s.abs()).ln() - ln_gamma(1.0 - x);
    (lg, s.signum())
}

/// `1/Γ(x)`, an entire function: zero at the poles of `Γ`.
pub fn reciprocal_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x > 0.0 && x < 30.0 {
        if let Ok(g) = gamma(x) {
            return 1.0 / g;
        }
    }
    let (lg, sign) = ln_gamma_signed(x);
    sign * (-lg).exp()
}
