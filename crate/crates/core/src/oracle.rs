//! Independent fractional-calculus oracles on a uniform time grid.
//!
//! The Riemann–Liouville integral uses the product trapezoidal rule with the
//! kernel moments integrated exactly, optionally with starting corrections
//! that make it exact for a few non-integer powers `t^σ`. The Caputo
//! derivative of order `q` is evaluated as `d^M/dt^M I^{M−q}[u − Taylor]`
//! with `M = ⌈q⌉` and fourth-order finite differences.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::fractional::{MultiTermOrders, ORDER_TIE};
use crate::grid::TimeGrid;
use crate::special::gamma;

/// Fewest nodes the oracles accept.
pub const MIN_NODES: usize = 8;
/// Nodes skipped at each end when taking residual maxima.
pub const EDGE_SKIP: usize = 2;

const MAX_CORRECTIONS: usize = 4;
const MIN_EXPONENT_GAP: f64 = 0.05;

fn check_grid(samples: &[f64], grid: &TimeGrid) -> Result<()> {
    if grid.len() < MIN_NODES {
        return Err(Error::GridTooCoarse {
            nodes: grid.len(),
            required: MIN_NODES,
        });
    }
    if samples.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            expected: grid.len(),
            got: samples.len(),
        });
    }
    Ok(())
}

/// `(1/Γ(α)) ∫_0^t (t−s)^{α−1} f(s) ds` at every node.
pub fn rl_integral(samples: &[f64], alpha: f64, grid: &TimeGrid) -> Result<Vec<f64>> {
    rl_integral_corrected(samples, alpha, grid, &[])
}

/// [`rl_integral`] with starting weights that make the rule exact for
/// `t^σ`, `σ ∈ exponents`, on top of linear functions.
pub fn rl_integral_corrected(
    samples: &[f64],
    alpha: f64,
    grid: &TimeGrid,
    exponents: &[f64],
) -> Result<Vec<f64>> {
    check_grid(samples, grid)?;
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::invalid(format!(
            "integral order must be positive, got {alpha}"
        )));
    }
    let n = grid.len();
    let (far, near) = trapezoid_weights(alpha, n);
    let convolve = |f: &[f64], m: usize| -> f64 {
        let back = f[..=m].iter().rev();
        far[..m]
            .iter()
            .zip(near[..m].iter())
            .zip(back.clone().skip(1).zip(back))
            .map(|((a, b), (lo, hi))| a * lo + b * hi)
            .sum()
    };
    let mut out = vec![0.0; n];
    for (m, slot) in out.iter_mut().enumerate().skip(1) {
        *slot = convolve(samples, m);
    }
    let s = exponents.len().min(n - 1);
    if s > 0 {
        let sig = &exponents[..s];
        let a = DMatrix::from_fn(s, s, |i, j| ((j + 1) as f64).powf(sig[i]));
        let a_inv_t = a
            .try_inverse()
            .ok_or_else(|| Error::invalid("singular starting-weight system"))?
            .transpose();
        let v = a_inv_t * DVector::from_fn(s, |j, _| samples[j + 1]);
        let g_alpha = gamma(alpha)?;
        let exact: Vec<f64> = sig
            .iter()
            .map(|&x| Ok(g_alpha * gamma(x + 1.0)? / gamma(x + alpha + 1.0)?))
            .collect::<Result<_>>()?;
        for i in 0..s {
            let powers: Vec<f64> = (0..n).map(|k| (k as f64).powf(sig[i])).collect();
            for (m, slot) in out.iter_mut().enumerate().skip(1) {
                let approx = convolve(&powers, m);
                *slot += (exact[i] * (m as f64).powf(sig[i] + alpha) - approx) * v[i];
            }
        }
    }
    let scale = grid.step().powf(alpha) / gamma(alpha)?;
    out.iter_mut().for_each(|v| *v *= scale);
    Ok(out)
}

/// Unit-step weights of the far and near node of interval `j` back from `t_m`.
fn trapezoid_weights(alpha: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut far = Vec::with_capacity(n);
    let mut near = Vec::with_capacity(n);
    for j in 0..n.saturating_sub(1) {
        let a = j as f64;
        let b = a + 1.0;
        let m0 = (b.powf(alpha) - a.powf(alpha)) / alpha;
        let m1 = (b.powf(alpha + 1.0) - a.powf(alpha + 1.0)) / (alpha + 1.0);
        far.push(m1 - a * m0);
        near.push(b * m0 - m1);
    }
    (far, near)
}

/// Fourth-order first derivative, one-sided at the two nodes nearest each end.
pub fn first_derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let mut g = vec![0.0; n];
    for i in 2..n - 2 {
        g[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    }
    g[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
    g[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
    g[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4]
        + 3.0 * f[n - 5])
        / (12.0 * h);
    g[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5])
        / (12.0 * h);
    g
}

/// Fourth-order second derivative, one-sided at the two nodes nearest each end.
pub fn second_derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let h2 = 12.0 * h * h;
    let mut g = vec![0.0; n];
    for i in 2..n - 2 {
        g[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / h2;
    }
    let edge = |a: &[f64; 6]| {
        [
            (45.0 * a[0] - 154.0 * a[1] + 214.0 * a[2] - 156.0 * a[3] + 61.0 * a[4] - 10.0 * a[5])
                / h2,
            (10.0 * a[0] - 15.0 * a[1] - 4.0 * a[2] + 14.0 * a[3] - 6.0 * a[4] + a[5]) / h2,
        ]
    };
    let head = edge(&[f[0], f[1], f[2], f[3], f[4], f[5]]);
    let tail = edge(&[f[n - 1], f[n - 2], f[n - 3], f[n - 4], f[n - 5], f[n - 6]]);
    g[0] = head[0];
    g[1] = head[1];
    g[n - 1] = tail[0];
    g[n - 2] = tail[1];
    g
}

/// Options of [`caputo_derivative_with`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CaputoOptions {
    /// `u'(0)` for orders above one; estimated by differencing when absent.
    pub initial_slope: Option<f64>,
    /// Powers `t^σ` present in `u − u(0)` near the origin, used for starting
    /// corrections of the inner integral.
    pub singular_exponents: Vec<f64>,
}

/// Caputo derivative of order `q ∈ (0, 2]`; integer orders are plain derivatives.
/// Computes `I^{m−q} u^{(m)}` with `u^{(m)}` from 4th-order differences, `m = ⌈q⌉`.
pub fn caputo_derivative(samples: &[f64], q: f64, grid: &TimeGrid) -> Result<Vec<f64>> {
    check_grid(samples, grid)?;
    if !(q > 0.0 && q <= 2.0) {
        return Err(Error::invalid(format!(
            "Caputo order must lie in (0,2], got {q}"
        )));
    }
    let h = grid.step();
    let order = q.ceil();
    let d = if order == 1.0 {
        first_derivative(samples, h)
    } else {
        second_derivative(samples, h)
    };
    if order == q {
        return Ok(d);
    }
    rl_integral(&d, order - q, grid)
}

/// Caputo derivative through `d^m/dt^m I^{m−q} (u − u(0) − u'(0) t)`, with
/// starting corrections for the given singular powers. Resolves solutions
/// that behave like `t^α` near the origin.
pub fn caputo_derivative_with(
    samples: &[f64],
    q: f64,
    grid: &TimeGrid,
    opts: &CaputoOptions,
) -> Result<Vec<f64>> {
    check_grid(samples, grid)?;
    if !(q > 0.0 && q <= 2.0) {
        return Err(Error::invalid(format!(
            "Caputo order must lie in (0,2], got {q}"
        )));
    }
    let h = grid.step();
    if q == 1.0 {
        return Ok(first_derivative(samples, h));
    }
    if q == 2.0 {
        return Ok(second_derivative(samples, h));
    }
    let order = q.ceil() as usize;
    let u0 = samples[0];
    let slope = if order == 2 {
        opts.initial_slope
            .unwrap_or_else(|| first_derivative(samples, h)[0])
    } else {
        0.0
    };
    let base: Vec<f64> = samples
        .iter()
        .zip(grid.nodes())
        .map(|(u, t)| u - u0 - slope * t)
        .collect();
    let w = rl_integral_corrected(&base, order as f64 - q, grid, &opts.singular_exponents)?;
    Ok(if order == 1 {
        first_derivative(&w, h)
    } else {
        second_derivative(&w, h)
    })
}

/// Non-integer powers below 2 expected in `u − u(0)` for a mode solution of
/// the given orders: `α(1+l) + Σ (α−α_j) l_j` and the same shifted by one,
/// at most four, at least 0.05 apart.
pub fn singular_exponents(orders: &MultiTermOrders) -> Vec<f64> {
    let alpha = orders.alpha;
    let gaps: Vec<f64> = orders
        .terms
        .iter()
        .map(|t| alpha - t.order)
        .filter(|&d| d > ORDER_TIE)
        .collect();
    let mut values = vec![alpha];
    let mut frontier = vec![alpha];
    while let Some(v) = frontier.pop() {
        for &d in gaps.iter().chain(std::iter::once(&alpha)) {
            let w = v + d;
            if w < 2.0 && !values.iter().any(|&x| (x - w).abs() < 1e-12) {
                values.push(w);
                frontier.push(w);
            }
        }
    }
    let shifted: Vec<f64> = values
        .iter()
        .map(|v| v + 1.0)
        .filter(|&v| v < 2.0)
        .collect();
    values.extend(shifted);
    values.retain(|&v| v < 2.0 && (v - v.round()).abs() > 1e-6);
    values.sort_by(f64::total_cmp);
    let mut kept: Vec<f64> = Vec::new();
    for v in values {
        if kept.len() == MAX_CORRECTIONS {
            break;
        }
        if kept.last().is_none_or(|&last| v - last >= MIN_EXPONENT_GAP) {
            kept.push(v);
        }
    }
    kept
}

/// Pointwise `∂^α u − Σ a_j ∂^{α_j} u + λ u − f` at every node.
pub fn residual_profile(
    u: &[f64],
    orders: &MultiTermOrders,
    lambda: f64,
    forcing: &[f64],
    grid: &TimeGrid,
) -> Result<Vec<f64>> {
    check_grid(u, grid)?;
    if forcing.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            expected: grid.len(),
            got: forcing.len(),
        });
    }
    let opts = CaputoOptions {
        initial_slope: (orders.alpha > 1.0).then_some(0.0),
        singular_exponents: singular_exponents(orders),
    };
    let mut r = caputo_derivative_with(u, orders.alpha, grid, &opts)?;
    for t in &orders.terms {
        if t.coefficient == 0.0 {
            continue;
        }
        let d = caputo_derivative_with(u, t.order, grid, &opts)?;
        r.iter_mut()
            .zip(&d)
            .for_each(|(r, d)| *r -= t.coefficient * d);
    }
    for ((r, u), f) in r.iter_mut().zip(u).zip(forcing) {
        *r += lambda * u - f;
    }
    Ok(r)
}

/// Largest residual magnitude over the interior nodes.
pub fn residual_check(
    u: &[f64],
    orders: &MultiTermOrders,
    lambda: f64,
    forcing: &[f64],
    grid: &TimeGrid,
) -> Result<f64> {
    let r = residual_profile(u, orders, lambda, forcing, grid)?;
    Ok(interior_max(&r))
}

/// `max |v_k|` with [`EDGE_SKIP`] nodes dropped at each end.
pub fn interior_max(v: &[f64]) -> f64 {
    let n = v.len();
    if n <= 2 * EDGE_SKIP {
        return 0.0;
    }
    v[EDGE_SKIP..n - EDGE_SKIP]
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()))
}
