//! Laplace inversion of the mode transfer function `1/Q(p)` with
//! `Q(p) = p^α − Σ a_j p^{α_j} + λ` on the principal sheet.
//!
//! The running integrals of the inverse transform are split into residues at
//! the zeros of `Q` and a Hankel integral along the negative real axis. This
//! covers arguments where the multivariate series cancels catastrophically.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::integrate_adaptive;

const CUT_MARGIN: f64 = 1e-9;
const REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub(crate) struct Transfer {
    alpha: f64,
    lower: Vec<(f64, f64)>,
    lambda: f64,
    /// Zeros with non-negative imaginary part; complex ones stand for a
    /// conjugate pair.
    zeros: Vec<Complex64>,
    double_zero: bool,
    has_cut: bool,
    scale: f64,
}

impl Transfer {
    /// `lower` holds `(a_j, α_j)` with every `α_j < α`; `lambda > 0`.
    pub(crate) fn new(alpha: f64, lower: &[(f64, f64)], lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::invalid(format!(
                "transfer inversion needs a positive eigenvalue, got {lambda}"
            )));
        }
        let has_cut = alpha.fract() != 0.0 || lower.iter().any(|&(_, o)| o.fract() != 0.0);
        let mut tr = Self {
            alpha,
            lower: lower.to_vec(),
            lambda,
            zeros: Vec::new(),
            double_zero: false,
            has_cut,
            scale: 1.0,
        };
        let (r_min, r_max) = tr.zero_bounds();
        tr.scale = r_max.max(1e-300);
        if has_cut {
            tr.zeros = tr.locate_zeros(r_min, r_max)?;
        } else {
            // only p² − A p + λ is possible here
            let a: f64 = lower.iter().map(|&(a, _)| a).sum();
            let disc = a * a - 4.0 * lambda;
            if disc.abs() <= 1e-12 * (a * a + 4.0 * lambda) {
                tr.double_zero = true;
                tr.zeros = vec![Complex64::new(0.5 * a, 0.0)];
            } else if disc > 0.0 {
                let s = disc.sqrt();
                tr.zeros = vec![
                    Complex64::new(0.5 * (a + s), 0.0),
                    Complex64::new(0.5 * (a - s), 0.0),
                ];
            } else {
                tr.zeros = vec![Complex64::new(0.5 * a, 0.5 * (-disc).sqrt())];
            }
        }
        Ok(tr)
    }

    fn q(&self, p: Complex64) -> Complex64 {
        let mut v = p.powf(self.alpha) + self.lambda;
        for &(a, o) in &self.lower {
            v -= a * p.powf(o);
        }
        v
    }

    fn dq(&self, p: Complex64) -> Complex64 {
        let mut v = self.alpha * p.powf(self.alpha - 1.0);
        for &(a, o) in &self.lower {
            v -= a * o * p.powf(o - 1.0);
        }
        v
    }

    /// `Q` on the lower edge of the cut, `p = r e^{−iπ}`.
    fn q_cut(&self, r: f64) -> Complex64 {
        let pw = |g: f64| Complex64::from_polar(r.powf(g), -PI * g);
        let mut v = pw(self.alpha) + self.lambda;
        for &(a, o) in &self.lower {
            v -= a * pw(o);
        }
        v
    }

    fn magnitude(&self, rho: f64) -> f64 {
        rho.powf(self.alpha)
            + self
                .lower
                .iter()
                .map(|&(a, o)| a.abs() * rho.powf(o))
                .sum::<f64>()
            + self.lambda
    }

    /// Radii outside which `Q` cannot vanish.
    fn zero_bounds(&self) -> (f64, f64) {
        let small = |rho: f64| {
            rho.powf(self.alpha)
                + self
                    .lower
                    .iter()
                    .map(|&(a, o)| a.abs() * rho.powf(o))
                    .sum::<f64>()
                - self.lambda
        };
        let large = |rho: f64| {
            let bracket = 1.0
                - self
                    .lower
                    .iter()
                    .map(|&(a, o)| a.abs() * rho.powf(o - self.alpha))
                    .sum::<f64>();
            bracket > 0.0 && rho.powf(self.alpha) * bracket > self.lambda
        };
        let mut hi = 1.0;
        while !large(hi) {
            hi *= 2.0;
        }
        let mut lo = hi;
        while small(lo) > 0.0 {
            lo *= 0.5;
        }
        let (mut a, mut b) = (lo, 2.0 * lo);
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if small(m) > 0.0 {
                b = m;
            } else {
                a = m;
            }
        }
        (a, hi)
    }

    fn locate_zeros(&self, r_min: f64, r_max: f64) -> Result<Vec<Complex64>> {
        let r_in = 0.5 * r_min;
        let r_out = 1.5 * r_max;
        let mut found: Vec<Complex64> = Vec::new();
        let radii = 20;
        let angles = 16;
        for i in 0..radii {
            let rho = r_in * (r_out / r_in).powf((i as f64 + 0.5) / radii as f64);
            for j in 0..angles {
                let phi = (PI - 0.05) * j as f64 / (angles - 1) as f64;
                if let Some(z) = self.newton(Complex64::from_polar(rho, phi)) {
                    let z = if z.im < 0.0 { z.conj() } else { z };
                    if z.arg() < PI - CUT_MARGIN
                        && !found.iter().any(|w| (w - z).norm() <= 1e-8 * z.norm())
                    {
                        found.push(z);
                    }
                }
            }
        }
        for z in &mut found {
            if z.im.abs() <= 1e-12 * z.norm() {
                z.im = 0.0;
            }
        }
        let found_count: usize = found.iter().map(|z| if z.im > 0.0 { 2 } else { 1 }).sum();
        let expected = self.count_zeros(r_in, r_out);
        if expected != found_count {
            return Err(Error::PoleSearch {
                expected,
                found: found_count,
            });
        }
        Ok(found)
    }

    fn newton(&self, mut p: Complex64) -> Option<Complex64> {
        for _ in 0..80 {
            let step = self.q(p) / self.dq(p);
            if !step.is_finite() {
                return None;
            }
            p -= step;
            if p.norm() == 0.0 {
                return None;
            }
            if step.norm() <= 1e-15 * p.norm() {
                break;
            }
        }
        (self.q(p).norm() <= 1e-10 * self.magnitude(p.norm())).then_some(p)
    }

    /// Zeros inside the slit annulus `r_in < |p| < r_out` by the argument principle.
    fn count_zeros(&self, r_in: f64, r_out: f64) -> usize {
        let edge = PI - CUT_MARGIN;
        let outer = |s: f64| Complex64::from_polar(r_out, -edge + 2.0 * edge * s);
        let upper = |s: f64| Complex64::from_polar(r_out + (r_in - r_out) * s, edge);
        let inner = |s: f64| Complex64::from_polar(r_in, edge - 2.0 * edge * s);
        let lower = |s: f64| Complex64::from_polar(r_in + (r_out - r_in) * s, -edge);
        let paths: [&dyn Fn(f64) -> Complex64; 4] = [&outer, &upper, &inner, &lower];
        let total: f64 = paths
            .iter()
            .map(|path| self.phase_change(path, 0.0, 1.0, 0))
            .sum();
        (total / (2.0 * PI)).round().max(0.0) as usize
    }

    fn phase_change(&self, path: &dyn Fn(f64) -> Complex64, a: f64, b: f64, depth: usize) -> f64 {
        if depth == 0 {
            let steps = 256;
            return (0..steps)
                .map(|k| {
                    let s0 = a + (b - a) * k as f64 / steps as f64;
                    let s1 = a + (b - a) * (k + 1) as f64 / steps as f64;
                    self.phase_change(path, s0, s1, 1)
                })
                .sum();
        }
        let d = (self.q(path(b)) / self.q(path(a))).arg();
        if d.abs() < 0.5 || depth > 40 {
            return d;
        }
        let m = 0.5 * (a + b);
        self.phase_change(path, a, m, depth + 1) + self.phase_change(path, m, b, depth + 1)
    }

    /// `∫_0^t` (`order` = 1) or the double integral (`order` = 2) of the
    /// inverse transform of `1/Q`.
    pub(crate) fn primitive(&self, t: f64, order: u32) -> Result<f64> {
        if t == 0.0 {
            return Ok(0.0);
        }
        let mut total = 0.0;
        if self.double_zero {
            let p = self.zeros[0].re;
            let e = (p * t).exp();
            total = if order == 1 {
                (e * (p * t - 1.0) + 1.0) / (p * p)
            } else {
                (e * (t - 2.0 / p) + 2.0 / p + t) / (p * p)
            };
        } else {
            for &z in &self.zeros {
                let w = primitive_weight(z * t, order) * t.powi(order as i32) / self.dq(z);
                total += if z.im > 0.0 { 2.0 * w.re } else { w.re };
            }
        }
        if self.has_cut {
            total += self.cut_integral(t, order)?;
        }
        Ok(total)
    }

    fn cut_integral(&self, t: f64, order: u32) -> Result<f64> {
        let weight = |r: f64| {
            let x = r * t;
            let w = if order == 1 {
                -(-x).exp_m1()
            } else if x < 1e-3 {
                x * x * (0.5 - x / 6.0 + x * x / 24.0)
            } else {
                x + (-x).exp_m1()
            };
            w / r.powi(order as i32)
        };
        let f = |r: f64| {
            if r == 0.0 {
                0.0
            } else {
                weight(r) * (1.0 / self.q_cut(r)).im / PI
            }
        };
        let mut cuts: Vec<f64> = (-6..=6).map(|k| self.scale * 2f64.powi(k)).collect();
        cuts.extend((-2..=2).map(|k| 2f64.powi(k) / t));
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
        let size = t.powi(order as i32 - 1) / (self.lambda + t.powf(-self.alpha));
        let abs_tol = 1e-15 * size / (cuts.len() + 1) as f64;
        let mut sum = integrate_adaptive(f, 0.0, cuts[0], abs_tol, REL_TOL)?;
        for w in cuts.windows(2) {
            sum += integrate_adaptive(f, w[0], w[1], abs_tol, REL_TOL)?;
        }
        let b = *cuts.last().unwrap_or(&1.0);
        let k = 2.0 / self.alpha;
        let tail = |u: f64| {
            if u == 0.0 {
                0.0
            } else {
                f(b * u.powf(-k)) * k * b * u.powf(-k - 1.0)
            }
        };
        sum += integrate_adaptive(tail, 0.0, 1.0, abs_tol, REL_TOL)?;
        Ok(sum)
    }
}

/// `(e^x − 1)/x` for `order` 1 and `(e^x − 1 − x)/x²` for `order` 2.
fn primitive_weight(x: Complex64, order: u32) -> Complex64 {
    if x.norm() < 1e-2 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        let first = if order == 1 { 1 } else { 2 };
        let mut fact = 1.0;
        for k in 1..first {
            fact *= k as f64;
        }
        for k in first..first + 12 {
            fact *= k as f64;
            sum += term / fact;
            term *= x;
        }
        return sum;
    }
    if order == 1 {
        (x.exp() - 1.0) / x
    } else {
        (x.exp() - 1.0 - x) / (x * x)
    }
}
