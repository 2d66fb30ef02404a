//! Per-mode multi-term fractional equation
//!
//! `∂^α u − Σ a_j ∂^{α_j} u + λ u = f(t)`, `u(0) = Σ μ_i u(T_i)` (and `u'(0) = 0`
//! when `α > 1`), solved as `u = F + c·θ` with `θ` the homogeneous response and
//! `F` the forced response with zero initial data.
//!
//! With `z(t) = (a_1 t^{α−α_1}, …, a_m t^{α−α_m}, −λ t^α)` and index
//! `(α−α_1, …, α−α_m, α)`:
//!
//! * `θ(t) = 1 − λ t^α E_{(…),1+α}(z(t))`
//! * `F(t) = ∫_0^t s^{α−1} E_{(…),α}(z(s)) f(t−s) ds`
//!
//! Terms whose order equals `α` are merged into the leading coefficient before
//! anything else happens.

use std::cell::OnceCell;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::grid::TimeGrid;
use crate::special::{ml_two_param, MLIndex, MultivariateSeries, SeriesControl};
use crate::transfer::Transfer;

/// Beyond this reach the multivariate series is skipped for transfer inversion.
const SERIES_REACH: f64 = 12.0;
/// Same, once the series has three or more variables.
const SERIES_REACH_MULTI: f64 = 6.0;

/// Orders closer than this are treated as equal.
pub const ORDER_TIE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LowerTerm {
    pub coefficient: f64,
    pub order: f64,
}

/// Leading order `α` and the lower-order terms `(a_j, α_j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiTermOrders {
    pub alpha: f64,
    #[serde(default)]
    pub terms: Vec<LowerTerm>,
}

impl MultiTermOrders {
    pub fn new(alpha: f64, terms: Vec<LowerTerm>) -> Result<Self> {
        let o = Self { alpha, terms };
        let v = o.violations("orders");
        if v.is_empty() {
            Ok(o)
        } else {
            Err(Error::Validation(v))
        }
    }

    pub fn single(alpha: f64) -> Result<Self> {
        Self::new(alpha, Vec::new())
    }

    pub fn violations(&self, prefix: &str) -> Vec<Violation> {
        let mut out = Vec::new();
        let alpha = self.alpha;
        if !(alpha > 0.0 && alpha <= 2.0) {
            out.push(Violation::new(
                format!("{prefix}.alpha"),
                "alpha must lie in (0,2]",
            ));
        }
        let mut tied = 0.0;
        for (j, t) in self.terms.iter().enumerate() {
            let path = format!("{prefix}.terms[{j}]");
            if !t.coefficient.is_finite() {
                out.push(Violation::new(
                    format!("{path}.coefficient"),
                    "coefficient must be finite",
                ));
            }
            if !(t.order > 0.0 && t.order <= 1.0) {
                out.push(Violation::new(
                    format!("{path}.order"),
                    "order must lie in (0,1]",
                ));
            } else if t.order > alpha + ORDER_TIE {
                out.push(Violation::new(
                    format!("{path}.order"),
                    "order must not exceed alpha",
                ));
            } else if (alpha - t.order).abs() <= ORDER_TIE {
                tied += t.coefficient;
            }
        }
        if !(tied.abs() < 1.0) {
            out.push(Violation::new(
                format!("{prefix}.terms"),
                "coefficients of terms with order equal to alpha must sum to less than 1 in magnitude",
            ));
        }
        out
    }

    /// Whether a term shares the leading order.
    pub fn has_tied_terms(&self) -> bool {
        self.terms
            .iter()
            .any(|t| (self.alpha - t.order).abs() <= ORDER_TIE)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonlocalPoint {
    pub mu: f64,
    pub time: f64,
}

/// Weights and times of `u(0) = Σ μ_i u(T_i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonlocalData {
    pub points: Vec<NonlocalPoint>,
}

impl NonlocalData {
    pub fn new(points: Vec<NonlocalPoint>) -> Result<Self> {
        let d = Self { points };
        let v = d.violations("nonlocal");
        if v.is_empty() {
            Ok(d)
        } else {
            Err(Error::Validation(v))
        }
    }

    pub fn violations(&self, prefix: &str) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.points.is_empty() {
            out.push(Violation::new(
                format!("{prefix}.points"),
                "at least one nonlocal point is required",
            ));
        }
        for (i, p) in self.points.iter().enumerate() {
            if !p.mu.is_finite() {
                out.push(Violation::new(
                    format!("{prefix}.points[{i}].mu"),
                    "mu must be finite",
                ));
            }
            if !(p.time > 0.0 && p.time.is_finite()) {
                out.push(Violation::new(
                    format!("{prefix}.points[{i}].time"),
                    "time must be positive and finite",
                ));
            }
        }
        if self.points.windows(2).any(|w| w[1].time < w[0].time) {
            out.push(Violation::new(
                format!("{prefix}.points"),
                "times must be sorted in nondecreasing order (0 < T1 <= ... <= Tn)",
            ));
        }
        out
    }

    /// `T = T_n`.
    pub fn horizon(&self) -> f64 {
        self.points.last().map(|p| p.time).unwrap_or(0.0)
    }

    pub fn times(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.time).collect()
    }

    pub fn sum_abs_mu(&self) -> f64 {
        self.points.iter().map(|p| p.mu.abs()).sum()
    }
}

/// Homogeneous response and running integrals of the kernel for fixed orders,
/// shared by every mode.
#[derive(Debug, Clone)]
pub struct Fundamental {
    alpha: f64,
    leading: f64,
    lower: Vec<(f64, f64)>,
    series: Option<KernelSeries>,
    ctl: SeriesControl,
}

#[derive(Debug, Clone)]
struct KernelSeries {
    kernel: MultivariateSeries,
    first: MultivariateSeries,
    second: MultivariateSeries,
}

impl KernelSeries {
    fn all_mut(&mut self) -> [&mut MultivariateSeries; 3] {
        [&mut self.kernel, &mut self.first, &mut self.second]
    }
}

/// Transfer-function inversion built on first use for one eigenvalue.
struct Fallback<'a> {
    fundamental: &'a Fundamental,
    lambda: f64,
    transfer: OnceCell<Transfer>,
}

impl Fallback<'_> {
    fn primitive(&self, t: f64, order: u32) -> Result<f64> {
        let tr = match self.transfer.get() {
            Some(tr) => tr,
            None => {
                let f = self.fundamental;
                let tr = Transfer::new(f.alpha, &f.lower, self.lambda / f.leading)?;
                self.transfer.get_or_init(|| tr)
            }
        };
        Ok(tr.primitive(t, order)? / self.fundamental.leading)
    }
}

impl Fundamental {
    pub fn new(orders: &MultiTermOrders, ctl: SeriesControl) -> Result<Self> {
        let v = orders.violations("orders");
        if !v.is_empty() {
            return Err(Error::Validation(v));
        }
        let alpha = orders.alpha;
        let mut leading = 1.0;
        for t in &orders.terms {
            if (alpha - t.order).abs() <= ORDER_TIE {
                leading -= t.coefficient;
            }
        }
        let lower: Vec<(f64, f64)> = orders
            .terms
            .iter()
            .filter(|t| (alpha - t.order).abs() > ORDER_TIE && t.coefficient != 0.0)
            .map(|t| (t.coefficient / leading, t.order))
            .collect();
        let series = if lower.is_empty() {
            None
        } else {
            let mut alphas: Vec<f64> = lower.iter().map(|&(_, o)| alpha - o).collect();
            alphas.push(alpha);
            let build = |beta: f64| -> Result<MultivariateSeries> {
                let mut s = MultivariateSeries::new(MLIndex::new(alphas.clone(), beta)?);
                s.extend_to(24);
                Ok(s)
            };
            Some(KernelSeries {
                kernel: build(alpha)?,
                first: build(1.0 + alpha)?,
                second: build(2.0 + alpha)?,
            })
        };
        Ok(Self {
            alpha,
            leading,
            lower,
            series,
            ctl,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `1 − Σ a_j` over the terms of order `α`.
    pub fn leading_coefficient(&self) -> f64 {
        self.leading
    }

    /// Lower-order terms after division by the leading coefficient.
    pub fn lower_terms(&self) -> &[(f64, f64)] {
        &self.lower
    }

    pub fn control(&self) -> &SeriesControl {
        &self.ctl
    }

    fn arguments(&self, lambda: f64, t: f64) -> Vec<f64> {
        let mut z: Vec<f64> = self
            .lower
            .iter()
            .map(|&(a, o)| a * t.powf(self.alpha - o))
            .collect();
        z.push(-lambda / self.leading * t.powf(self.alpha));
        z
    }

    /// Root `r` of `Σ |z_j| r^{−γ_j} = 1`; the absolute series terms sum to
    /// roughly `e^r`.
    fn reach_limit(&self) -> f64 {
        if self.lower.len() >= 2 {
            SERIES_REACH_MULTI
        } else {
            SERIES_REACH
        }
    }

    fn series_reach(&self, z: &[f64]) -> f64 {
        let gammas: Vec<f64> = self
            .lower
            .iter()
            .map(|&(_, o)| self.alpha - o)
            .chain(std::iter::once(self.alpha))
            .collect();
        let g = |r: f64| {
            z.iter()
                .zip(&gammas)
                .map(|(z, g)| z.abs() * r.powf(-g))
                .sum::<f64>()
                - 1.0
        };
        if z.iter().all(|&v| v == 0.0) {
            return 0.0;
        }
        let (mut lo, mut hi) = (1e-3, 1.0);
        while g(hi) > 0.0 {
            lo = hi;
            hi *= 2.0;
        }
        if g(lo) < 0.0 {
            return lo;
        }
        for _ in 0..50 {
            let m = 0.5 * (lo + hi);
            if g(m) > 0.0 {
                lo = m;
            } else {
                hi = m;
            }
        }
        hi
    }

    fn fallback(&self, lambda: f64) -> Fallback<'_> {
        Fallback {
            fundamental: self,
            lambda,
            transfer: OnceCell::new(),
        }
    }

    /// Grow the coefficient caches so that evaluation up to `(lambda, t)`
    /// needs no on-the-fly blocks. Failures are left for evaluation to report.
    pub fn prepare(&mut self, lambda: f64, t: f64) {
        let mut t = t;
        if self.series_reach(&self.arguments(lambda, t)) > self.reach_limit() {
            let (mut lo, mut hi) = (0.0, t);
            for _ in 0..50 {
                let m = 0.5 * (lo + hi);
                if self.series_reach(&self.arguments(lambda, m)) > self.reach_limit() {
                    hi = m;
                } else {
                    lo = m;
                }
            }
            t = lo;
        }
        let z = self.arguments(lambda, t);
        let ctl = self.ctl;
        if let Some(series) = &mut self.series {
            for s in series.all_mut() {
                let mut k = s.cached_degree().max(8);
                while k < ctl.max_total_degree {
                    let limited = SeriesControl {
                        max_total_degree: k,
                        ..ctl
                    };
                    match s.evaluate(&z, &limited) {
                        Err(Error::NonConvergence { .. }) => k *= 2,
                        _ => break,
                    }
                }
                s.extend_to(k.min(ctl.max_total_degree) + 1);
            }
        }
    }

    /// `θ(t)`: solution of the homogeneous equation with `u(0) = 1`
    /// (and `u'(0) = 0` when `α > 1`).
    pub fn theta(&self, lambda: f64, t: f64) -> Result<f64> {
        self.theta_with(lambda, t, &self.fallback(lambda))
    }

    fn theta_with(&self, lambda: f64, t: f64, fb: &Fallback) -> Result<f64> {
        check_time(t)?;
        let lam = lambda / self.leading;
        if t == 0.0 || lam == 0.0 {
            return Ok(1.0);
        }
        match &self.series {
            None => ml_two_param(self.alpha, 1.0, -lam * t.powf(self.alpha), &self.ctl),
            Some(_) => Ok(1.0 - lambda * self.primitive_with(lambda, t, 1, fb)?),
        }
    }

    /// Regular factor `K(s)` of the kernel `s^{α−1} K(s)` that maps forcing to
    /// the forced response (leading coefficient included).
    pub fn kernel_factor(&self, lambda: f64, s: f64) -> Result<f64> {
        check_time(s)?;
        let e = match &self.series {
            None => ml_two_param(
                self.alpha,
                self.alpha,
                -lambda / self.leading * s.powf(self.alpha),
                &self.ctl,
            )?,
            Some(series) => series
                .kernel
                .evaluate(&self.arguments(lambda, s), &self.ctl)?,
        };
        Ok(e / self.leading)
    }

    /// Running integral (`order` 1) or double running integral (`order` 2)
    /// of the kernel `s^{α−1} K(s)` from 0 to `t`.
    pub fn kernel_primitive(&self, lambda: f64, t: f64, order: u32) -> Result<f64> {
        self.primitive_with(lambda, t, order, &self.fallback(lambda))
    }

    fn primitive_with(&self, lambda: f64, t: f64, order: u32, fb: &Fallback) -> Result<f64> {
        check_time(t)?;
        if !(order == 1 || order == 2) {
            return Err(Error::invalid(format!(
                "kernel primitive order must be 1 or 2, got {order}"
            )));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        let beta = order as f64 + self.alpha;
        if self.series.is_some()
            && lambda > 0.0
            && self.series_reach(&self.arguments(lambda, t)) > self.reach_limit()
        {
            return fb.primitive(t, order);
        }
        let direct = match &self.series {
            None => ml_two_param(
                self.alpha,
                beta,
                -lambda / self.leading * t.powf(self.alpha),
                &self.ctl,
            ),
            Some(series) => {
                let s = if order == 1 {
                    &series.first
                } else {
                    &series.second
                };
                s.evaluate(&self.arguments(lambda, t), &self.ctl)
            }
        };
        match direct {
            Ok(e) => Ok(t.powf(beta - 1.0) * e / self.leading),
            Err(Error::NonConvergence { .. } | Error::Cancellation { .. })
                if self.series.is_some() && lambda > 0.0 =>
            {
                fb.primitive(t, order)
            }
            Err(e) => Err(e),
        }
    }

    pub fn theta_samples(&self, lambda: f64, grid: &TimeGrid) -> Result<Vec<f64>> {
        grid.nodes()
            .par_iter()
            .map_init(
                || self.fallback(lambda),
                |fb, &t| self.theta_with(lambda, t, fb),
            )
            .collect()
    }

    /// `θ` and the second kernel primitive at every node.
    fn node_values(
        &self,
        lambda: f64,
        grid: &TimeGrid,
        need_theta: bool,
    ) -> Result<(Vec<f64>, Vec<f64>)> {
        let second: Vec<f64> = grid
            .nodes()
            .par_iter()
            .map_init(
                || self.fallback(lambda),
                |fb, &t| self.primitive_with(lambda, t, 2, fb),
            )
            .collect::<Result<_>>()?;
        let theta = if need_theta {
            grid.nodes()
                .par_iter()
                .map_init(
                    || self.fallback(lambda),
                    |fb, &t| self.theta_with(lambda, t, fb),
                )
                .collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        Ok((theta, second))
    }

    /// `F(t_n)` for every node, exact for the piecewise-linear interpolant of
    /// the forcing: with slopes `d_j` of `f` on `[t_j, t_{j+1}]` and `Φ`, `Ψ`
    /// the first and second running integrals of the kernel,
    /// `F(t_n) = f_0 Φ(t_n) + d_0 Ψ(t_n) + Σ_{k=1}^{n−1} (d_{n−k} − d_{n−k−1}) Ψ(t_k)`.
    pub fn forced_response_samples(
        &self,
        lambda: f64,
        forcing: &[f64],
        grid: &TimeGrid,
    ) -> Result<Vec<f64>> {
        Ok(self.solve_parts(lambda, forcing, grid, false)?.1)
    }

    /// `θ` and `F` on the grid together.
    pub(crate) fn solve_parts(
        &self,
        lambda: f64,
        forcing: &[f64],
        grid: &TimeGrid,
        need_theta: bool,
    ) -> Result<(Vec<f64>, Vec<f64>)> {
        let n = grid.len();
        if forcing.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: forcing.len(),
            });
        }
        if forcing.iter().all(|&f| f == 0.0) {
            let theta = if need_theta {
                self.theta_samples(lambda, grid)?
            } else {
                Vec::new()
            };
            return Ok((theta, vec![0.0; n]));
        }
        let fb = self.fallback(lambda);
        let first: Vec<f64> = grid
            .nodes()
            .iter()
            .map(|&t| self.primitive_with(lambda, t, 1, &fb))
            .collect::<Result<_>>()?;
        let (theta, second) = match &self.series {
            None => self.node_values(lambda, grid, need_theta)?,
            Some(_) => {
                let second = grid
                    .nodes()
                    .iter()
                    .map(|&t| self.primitive_with(lambda, t, 2, &fb))
                    .collect::<Result<_>>()?;
                let theta = if need_theta {
                    first.iter().map(|p| 1.0 - lambda * p).collect()
                } else {
                    Vec::new()
                };
                (theta, second)
            }
        };
        Ok((
            theta,
            convolve_primitives(forcing, grid.step(), &first, &second, n),
        ))
    }

    /// `F(t_index)` alone.
    pub fn forced_response(
        &self,
        lambda: f64,
        forcing: &[f64],
        grid: &TimeGrid,
        t_index: usize,
    ) -> Result<f64> {
        if t_index >= grid.len() {
            return Err(Error::IndexOutOfRange {
                index: t_index,
                available: grid.len(),
            });
        }
        if forcing.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: forcing.len(),
            });
        }
        let fb = self.fallback(lambda);
        let nodes = &grid.nodes()[..=t_index];
        let second: Vec<f64> = nodes
            .iter()
            .map(|&t| self.primitive_with(lambda, t, 2, &fb))
            .collect::<Result<_>>()?;
        let mut first = vec![0.0; t_index + 1];
        first[t_index] = self.primitive_with(lambda, nodes[t_index], 1, &fb)?;
        Ok(convolve_primitives(
            &forcing[..=t_index],
            grid.step(),
            &first,
            &second,
            t_index + 1,
        )[t_index])
    }
}

fn convolve_primitives(
    forcing: &[f64],
    h: f64,
    first: &[f64],
    second: &[f64],
    n: usize,
) -> Vec<f64> {
    let slope: Vec<f64> = forcing.windows(2).map(|w| (w[1] - w[0]) / h).collect();
    let jump: Vec<f64> = (0..slope.len())
        .map(|j| if j == 0 { 0.0 } else { slope[j] - slope[j - 1] })
        .collect();
    let mut out = vec![0.0; n];
    for (m, slot) in out.iter_mut().enumerate().skip(1) {
        let mut acc = forcing[0] * first[m] + slope[0] * second[m];
        for k in 1..m {
            acc += jump[m - k] * second[k];
        }
        *slot = acc;
    }
    out
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::invalid(format!(
            "time must be non-negative, got {t}"
        )));
    }
    Ok(())
}

/// Resonance classification of one mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    NonResonant,
    NearResonant,
    Resonant,
}

/// How a mode solution was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModeRegime {
    Regular,
    ResonantFamily { coefficient: f64 },
    ResonantInfeasible,
}

/// Thresholds on the scaled denominator and on the forcing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// `|1 − Σ μ_i θ(T_i)| ≤ resonance · (1 + Σ |μ_i| |θ(T_i)|)` is resonant.
    pub resonance: f64,
    /// Same test with this bound flags near resonance.
    pub near_resonance: f64,
    /// Largest forcing magnitude treated as zero on a resonant mode.
    pub forcing_zero: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            resonance: 1e-8,
            near_resonance: 1e-4,
            forcing_zero: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn violations(&self, prefix: &str) -> Vec<Violation> {
        let mut out = Vec::new();
        for (name, v) in [
            ("resonance", self.resonance),
            ("near_resonance", self.near_resonance),
            ("forcing_zero", self.forcing_zero),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                out.push(Violation::new(
                    format!("{prefix}.{name}"),
                    format!("{name} must be positive"),
                ));
            }
        }
        if self.near_resonance < self.resonance {
            out.push(Violation::new(
                format!("{prefix}.near_resonance"),
                "near_resonance must not be smaller than resonance",
            ));
        }
        out
    }

    pub fn classify(&self, denominator: f64, scale: f64) -> Classification {
        if denominator.abs() <= self.resonance * scale {
            Classification::Resonant
        } else if denominator.abs() <= self.near_resonance * scale {
            Classification::NearResonant
        } else {
            Classification::NonResonant
        }
    }
}

/// Eigenvalue and sampled forcing coefficient of one mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeProblem {
    pub index: usize,
    pub lambda: f64,
    pub forcing: Vec<f64>,
}

/// Sampled solution of one mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeSolution {
    pub index: usize,
    pub samples: Vec<f64>,
    pub regime: ModeRegime,
    /// `1 − Σ μ_i θ(T_i)`.
    pub denominator: f64,
    pub theta_at_points: Vec<f64>,
}

/// Diagnostics of the non-resonance test for one mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeCheck {
    pub lambda: f64,
    pub theta_at_points: Vec<f64>,
    pub denominator: f64,
    /// `Σ |μ_i| |θ(T_i)|`; below 1 it certifies non-resonance on its own.
    pub sum_abs_mu_theta: f64,
    /// `Σ |μ_i| / (1 + λ T_1)`.
    pub envelope_bound: f64,
    pub classification: Classification,
}

/// Condition `Σ |μ_i| < 1`, which settles every mode at once when `α ∈ {1, 2}`
/// and there are no lower-order terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Shortcut {
    pub sum_abs_mu: f64,
    pub holds: bool,
}

/// Eigenvalue beyond which `Σ |μ_i| / (1 + λ T_1) < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeThreshold {
    pub sum_abs_mu: f64,
    /// Every `λ` strictly above this value satisfies the envelope bound.
    pub lambda: f64,
    /// First retained mode above the threshold.
    pub first_mode_beyond: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonresonanceReport {
    pub modes: Vec<ModeCheck>,
    pub shortcut: Option<Shortcut>,
    pub envelope: EnvelopeThreshold,
    pub resonant_modes: Vec<usize>,
    pub near_resonant_modes: Vec<usize>,
}

/// Per-mode solver bound to fixed orders, nonlocal data and time grid.
#[derive(Debug, Clone)]
pub struct ModeSolver<'a> {
    pub fundamental: &'a Fundamental,
    pub nonlocal: &'a NonlocalData,
    pub grid: &'a TimeGrid,
    pub tolerances: Tolerances,
    point_nodes: Vec<usize>,
}

impl<'a> ModeSolver<'a> {
    pub fn new(
        fundamental: &'a Fundamental,
        nonlocal: &'a NonlocalData,
        grid: &'a TimeGrid,
        tolerances: Tolerances,
    ) -> Result<Self> {
        let point_nodes = nonlocal
            .points
            .iter()
            .map(|p| grid.index_of(p.time))
            .collect::<Result<_>>()?;
        Ok(Self {
            fundamental,
            nonlocal,
            grid,
            tolerances,
            point_nodes,
        })
    }

    /// Grid indices of the nonlocal times.
    pub fn point_nodes(&self) -> &[usize] {
        &self.point_nodes
    }

    fn theta_at_points(&self, lambda: f64) -> Result<Vec<f64>> {
        self.nonlocal
            .points
            .iter()
            .map(|p| self.fundamental.theta(lambda, p.time))
            .collect()
    }

    /// `1 − Σ μ_i θ(T_i)`.
    pub fn nonresonance_denominator(&self, lambda: f64) -> Result<f64> {
        let th = self.theta_at_points(lambda)?;
        Ok(1.0
            - self
                .nonlocal
                .points
                .iter()
                .zip(&th)
                .map(|(p, t)| p.mu * t)
                .sum::<f64>())
    }

    fn mode_check(&self, lambda: f64) -> Result<ModeCheck> {
        let theta_at_points = self.theta_at_points(lambda)?;
        let mut weighted = 0.0;
        let mut abs = 0.0;
        for (p, t) in self.nonlocal.points.iter().zip(&theta_at_points) {
            weighted += p.mu * t;
            abs += p.mu.abs() * t.abs();
        }
        let denominator = 1.0 - weighted;
        let t1 = self.nonlocal.points[0].time;
        Ok(ModeCheck {
            lambda,
            denominator,
            sum_abs_mu_theta: abs,
            envelope_bound: self.nonlocal.sum_abs_mu() / (1.0 + lambda * t1),
            classification: self.tolerances.classify(denominator, 1.0 + abs),
            theta_at_points,
        })
    }

    /// Classify every eigenvalue and report the global sufficient conditions.
    pub fn check_nonresonance(&self, lambdas: &[f64]) -> Result<NonresonanceReport> {
        let modes: Vec<ModeCheck> = lambdas
            .par_iter()
            .map(|&l| self.mode_check(l))
            .collect::<Result<_>>()?;
        let s = self.nonlocal.sum_abs_mu();
        let alpha = self.fundamental.alpha();
        let shortcut = (self.fundamental.lower_terms().is_empty()
            && (alpha == 1.0 || alpha == 2.0))
            .then_some(Shortcut {
                sum_abs_mu: s,
                holds: s < 1.0,
            });
        let t1 = self.nonlocal.points[0].time;
        let threshold = ((s - 1.0) / t1).max(0.0);
        let first_mode_beyond =
            lambdas
                .iter()
                .position(|&l| if s < 1.0 { l >= 0.0 } else { l > threshold });
        let mut resonant_modes = Vec::new();
        let mut near_resonant_modes = Vec::new();
        for (i, m) in modes.iter().enumerate() {
            match m.classification {
                Classification::Resonant => resonant_modes.push(i),
                Classification::NearResonant => near_resonant_modes.push(i),
                Classification::NonResonant => {}
            }
        }
        Ok(NonresonanceReport {
            modes,
            shortcut,
            envelope: EnvelopeThreshold {
                sum_abs_mu: s,
                lambda: threshold,
                first_mode_beyond,
            },
            resonant_modes,
            near_resonant_modes,
        })
    }

    /// `u = F + [Σ μ_i F(T_i) / (1 − Σ μ_i θ(T_i))] θ`.
    pub fn solve_mode(&self, problem: &ModeProblem) -> Result<ModeSolution> {
        let (theta, forced) =
            self.fundamental
                .solve_parts(problem.lambda, &problem.forcing, self.grid, true)?;
        let theta_at_points: Vec<f64> = self.point_nodes.iter().map(|&k| theta[k]).collect();
        let mut weighted = 0.0;
        let mut abs = 0.0;
        let mut numerator = 0.0;
        for ((p, &k), th) in self
            .nonlocal
            .points
            .iter()
            .zip(&self.point_nodes)
            .zip(&theta_at_points)
        {
            weighted += p.mu * th;
            abs += p.mu.abs() * th.abs();
            numerator += p.mu * forced[k];
        }
        let denominator = 1.0 - weighted;
        if self.tolerances.classify(denominator, 1.0 + abs) == Classification::Resonant {
            return Err(Error::Resonance {
                index: problem.index,
                denominator,
            });
        }
        let c = numerator / denominator;
        let samples = forced.iter().zip(&theta).map(|(f, t)| f + c * t).collect();
        Ok(ModeSolution {
            index: problem.index,
            samples,
            regime: ModeRegime::Regular,
            denominator,
            theta_at_points,
        })
    }

    /// One member `C θ` of the solution family of a resonant mode, or the
    /// infeasible regime when the forcing does not vanish.
    pub fn solve_mode_resonant(
        &self,
        problem: &ModeProblem,
        coefficient: f64,
    ) -> Result<ModeSolution> {
        let theta = self.fundamental.theta_samples(problem.lambda, self.grid)?;
        let theta_at_points: Vec<f64> = self.point_nodes.iter().map(|&k| theta[k]).collect();
        let denominator = 1.0
            - self
                .nonlocal
                .points
                .iter()
                .zip(&theta_at_points)
                .map(|(p, t)| p.mu * t)
                .sum::<f64>();
        let forcing_max = problem.forcing.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if forcing_max > self.tolerances.forcing_zero {
            return Ok(ModeSolution {
                index: problem.index,
                samples: vec![0.0; self.grid.len()],
                regime: ModeRegime::ResonantInfeasible,
                denominator,
                theta_at_points,
            });
        }
        Ok(ModeSolution {
            index: problem.index,
            samples: theta.iter().map(|t| coefficient * t).collect(),
            regime: ModeRegime::ResonantFamily { coefficient },
            denominator,
            theta_at_points,
        })
    }

    /// `ρ θ(t)` on the grid.
    pub fn homogeneous_mode(&self, lambda: f64, rho: f64) -> Result<Vec<f64>> {
        if rho == 0.0 {
            return Ok(vec![0.0; self.grid.len()]);
        }
        Ok(self
            .fundamental
            .theta_samples(lambda, self.grid)?
            .into_iter()
            .map(|t| rho * t)
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fundamental(alpha: f64, terms: Vec<LowerTerm>) -> Fundamental {
        Fundamental::new(
            &MultiTermOrders::new(alpha, terms).unwrap(),
            SeriesControl::default(),
        )
        .unwrap()
    }

    #[test]
    fn theta_closed_forms() {
        let f = fundamental(1.0, vec![]);
        assert_eq!(f.theta(3.0, 0.0).unwrap(), 1.0);
        assert!((f.theta(2.0, 0.7).unwrap() - (-1.4f64).exp()).abs() < 1e-15);
        let f = fundamental(2.0, vec![]);
        assert!((f.theta(4.0, 1.0).unwrap() - 2f64.cos()).abs() < 1e-12);
    }

    #[test]
    fn tied_term_rescales_the_equation() {
        // (1 - 0.5) u' + λ u = 0  →  θ = exp(-2λt)
        let f = fundamental(
            1.0,
            vec![LowerTerm {
                coefficient: 0.5,
                order: 1.0,
            }],
        );
        assert!((f.leading_coefficient() - 0.5).abs() < 1e-16);
        assert!((f.theta(1.5, 0.4).unwrap() - (-1.2f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn lower_term_theta_matches_classical_ode() {
        // α = 2, α₁ = 1: u'' − a u' + λ u = 0, u(0) = 1, u'(0) = 0
        let (a, lam) = (-0.6, 2.0);
        let f = fundamental(
            2.0,
            vec![LowerTerm {
                coefficient: a,
                order: 1.0,
            }],
        );
        // characteristic roots r² − a r + λ = 0
        let disc: f64 = lam - a * a / 4.0;
        let w = disc.sqrt();
        let s = a / 2.0;
        for &t in &[0.1, 0.5, 1.0, 1.7] {
            let exact = (s * t).exp() * ((w * t).cos() - s / w * (w * t).sin());
            assert!((f.theta(lam, t).unwrap() - exact).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn forced_response_first_order_constant_forcing() {
        let f = fundamental(1.0, vec![]);
        let grid = TimeGrid::uniform(1.0, 2049).unwrap();
        let c = 1.7;
        let lam = 3.0;
        let forcing = vec![c; grid.len()];
        let out = f.forced_response_samples(lam, &forcing, &grid).unwrap();
        for (k, &t) in grid.nodes().iter().enumerate() {
            assert!((out[k] - c * (1.0 - (-lam * t).exp()) / lam).abs() < 1e-7);
        }
        let single = f.forced_response(lam, &forcing, &grid, 1000).unwrap();
        assert!((single - out[1000]).abs() < 1e-15);
    }

    #[test]
    fn forced_response_quadratic_forcing() {
        // ∫_0^t s^{α−1} E_{α,α}(−λ s^α) (t−s)² ds = 2 t^{α+2} E_{α,3+α}(−λ t^α)
        let alpha = 0.4;
        let lam = 2.5;
        let f = fundamental(alpha, vec![]);
        let grid = TimeGrid::uniform(1.0, 1001).unwrap();
        let forcing: Vec<f64> = grid.nodes().iter().map(|t| t * t).collect();
        let out = f.forced_response_samples(lam, &forcing, &grid).unwrap();
        let ctl = SeriesControl::default();
        for k in (0..grid.len()).step_by(50) {
            let t = grid.nodes()[k];
            let exact = 2.0
                * t.powf(alpha + 2.0)
                * ml_two_param(alpha, 3.0 + alpha, -lam * t.powf(alpha), &ctl).unwrap();
            assert!(
                (out[k] - exact).abs() < 1e-6,
                "t = {t}: {} vs {exact}",
                out[k]
            );
        }
        let linear: Vec<f64> = grid.nodes().iter().map(|t| 1.0 + 2.0 * t).collect();
        let out = f.forced_response_samples(lam, &linear, &grid).unwrap();
        let t = 1.0;
        let exact =
            f.kernel_primitive(lam, t, 1).unwrap() + 2.0 * f.kernel_primitive(lam, t, 2).unwrap();
        assert!((out[1000] - exact).abs() < 1e-14);
    }

    #[test]
    fn series_and_transfer_routes_agree() {
        let f = fundamental(
            0.6,
            vec![LowerTerm {
                coefficient: 0.5,
                order: 0.3,
            }],
        );
        let fb = f.fallback(3.0);
        for &t in &[0.1, 0.5, 1.0] {
            for order in [1, 2] {
                let series = f.kernel_primitive(3.0, t, order).unwrap();
                let transfer = fb.primitive(t, order).unwrap();
                assert!(
                    (series - transfer).abs() < 1e-11,
                    "t {t} order {order}: {series} vs {transfer}"
                );
            }
        }
    }

    #[test]
    fn validation_messages() {
        let err = MultiTermOrders::new(
            2.5,
            vec![LowerTerm {
                coefficient: 1.0,
                order: 1.5,
            }],
        )
        .unwrap_err();
        let text = err.to_string();
        assert!(text.contains("alpha must lie in (0,2]"));
        assert!(text.contains("orders.terms[0].order"));
        let bad = NonlocalData::new(vec![
            NonlocalPoint { mu: 0.1, time: 2.0 },
            NonlocalPoint { mu: 0.1, time: 1.0 },
        ])
        .unwrap_err();
        assert!(bad.to_string().contains("nondecreasing"));
    }

    #[test]
    fn denominator_first_order_single_point() {
        let f = fundamental(1.0, vec![]);
        let nl = NonlocalData::new(vec![NonlocalPoint { mu: 0.7, time: 1.0 }]).unwrap();
        let grid = TimeGrid::uniform(1.0, 11).unwrap();
        let s = ModeSolver::new(&f, &nl, &grid, Tolerances::default()).unwrap();
        let d = s.nonresonance_denominator(2.0).unwrap();
        assert!((d - (1.0 - 0.7 * (-2f64).exp())).abs() < 1e-15);
    }
}
