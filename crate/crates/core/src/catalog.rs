//! Catalog of self-adjoint spatial operators with their eigenpairs.
//!
//! Modes are enumerated by a flat ordinal `ξ = 0, 1, …` sorted by eigenvalue,
//! with ties broken by the kind-specific label. Every eigenfunction is
//! returned L²-normalized.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::quadrature::{composite_gauss_legendre, gauss_hermite_scaled, gauss_laguerre_scaled};
use crate::special::{bessel_j, bessel_j_zeros, hermite_function, laguerre_poly};

/// Parameters of a catalog operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OperatorSpec {
    /// `-u''` on `(0, L)` with `u(0) = u(L) = 0`.
    DirichletLaplacian { length: f64 },
    /// `-(u''(x) - ε u''(π - x))` on `(0, π)` with Dirichlet ends.
    Involution { epsilon: f64 },
    /// `-(u'' + u'/x - ν² u/x²)` on `(0, 1)`, bounded at 0, `u(1) = 0`.
    Bessel { nu: f64 },
    /// `-u'' + x² u` on the real line.
    HarmonicOscillator,
    /// Landau Hamiltonian on the plane with field strength `field`;
    /// each Landau level is truncated to `per_level` e¹ functions.
    Landau { field: f64, per_level: usize },
}

impl OperatorSpec {
    /// Invariant violations, with paths rooted at `prefix`.
    pub fn violations(&self, prefix: &str) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut bad =
            |field: &str, msg: &str| out.push(Violation::new(format!("{prefix}.{field}"), msg));
        match *self {
            OperatorSpec::DirichletLaplacian { length } => {
                if !(length > 0.0 && length.is_finite()) {
                    bad("length", "length must be positive and finite");
                }
            }
            OperatorSpec::Involution { epsilon } => {
                if !(epsilon.abs() < 1.0) {
                    bad("epsilon", "epsilon must satisfy |epsilon| < 1");
                }
            }
            OperatorSpec::Bessel { nu } => {
                if !(nu > 0.0 && nu.is_finite()) {
                    bad("nu", "nu must be positive and finite");
                }
            }
            OperatorSpec::HarmonicOscillator => {}
            OperatorSpec::Landau { field, per_level } => {
                if !(field > 0.0 && field.is_finite()) {
                    bad("field", "field must be positive and finite");
                }
                if per_level == 0 {
                    bad("per_level", "per_level must be at least 1");
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations("operator");
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(v))
        }
    }

    pub fn is_planar(&self) -> bool {
        matches!(self, OperatorSpec::Landau { .. })
    }

    /// Bounded interval of a one-dimensional operator.
    pub fn interval(&self) -> Option<(f64, f64)> {
        match *self {
            OperatorSpec::DirichletLaplacian { length } => Some((0.0, length)),
            OperatorSpec::Involution { .. } => Some((0.0, PI)),
            OperatorSpec::Bessel { .. } => Some((0.0, 1.0)),
            _ => None,
        }
    }

    /// Evenly spaced output points: the closed interval for bounded operators,
    /// `[-extent, extent]` on the line, and a `count × count` lattice on
    /// `[-extent, extent]²` for the plane.
    pub fn output_points(&self, count: usize, extent: f64) -> Vec<Point> {
        let lin = |a: f64, b: f64| -> Vec<f64> {
            if count == 1 {
                return vec![0.5 * (a + b)];
            }
            (0..count)
                .map(|j| a + (b - a) * j as f64 / (count - 1) as f64)
                .collect()
        };
        match self.interval() {
            Some((a, b)) => lin(a, b).into_iter().map(Point::Line).collect(),
            None if self.is_planar() => {
                let axis = lin(-extent, extent);
                let mut pts = Vec::with_capacity(count * count);
                for &y in &axis {
                    for &x in &axis {
                        pts.push(Point::Plane(x, y));
                    }
                }
                pts
            }
            None => lin(-extent, extent).into_iter().map(Point::Line).collect(),
        }
    }
}

/// A point of an operator's domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Point {
    Line(f64),
    Plane(f64, f64),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Line(x) => write!(f, "{x}"),
            Point::Plane(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

/// Kind-specific multi-index of a mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ModeLabel {
    /// `sin(kπx/L)`, `k ≥ 1`.
    Sine { k: usize },
    /// `sin(nx)` for the involution operator, `n ≥ 1`.
    Involution { n: usize },
    /// `√x J_ν(j_k x)` with `j_k` the k-th positive zero, `k ≥ 1`.
    Bessel { k: usize },
    /// Hermite function of order `l ≥ 0`.
    Hermite { l: usize },
    /// `(x+iy)^k L_level^{(k)}(B r²) e^{-B r²/2}`.
    LandauFirst { level: usize, k: usize },
    /// `(x-iy)^p L_{level-p}^{(p)}(B r²) e^{-B r²/2}`, `1 ≤ p ≤ level`.
    LandauSecond { level: usize, p: usize },
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeLabel::Sine { k } => write!(f, "sine k={k}"),
            ModeLabel::Involution { n } => write!(f, "involution n={n}"),
            ModeLabel::Bessel { k } => write!(f, "bessel k={k}"),
            ModeLabel::Hermite { l } => write!(f, "hermite l={l}"),
            ModeLabel::LandauFirst { level, k } => write!(f, "landau e1 level={level} k={k}"),
            ModeLabel::LandauSecond { level, p } => write!(f, "landau e2 level={level} p={p}"),
        }
    }
}

/// One eigenpair of the truncated spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralMode {
    pub index: usize,
    pub label: ModeLabel,
    pub eigenvalue: f64,
    /// Number of retained modes sharing this eigenvalue (Landau only).
    pub multiplicity: Option<usize>,
    /// Factor applied to the unnormalized eigenfunction.
    pub normalization: f64,
    /// Spectral parameter of the eigenfunction (Bessel zero), when it has one.
    pub wavenumber: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureScheme {
    CompositeGaussLegendre,
    GradedGaussLegendre,
    GaussHermite,
    PolarGaussLaguerre,
}

/// Nodes and positive weights realizing the L² inner product of a domain.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    pub nodes: Vec<Point>,
    pub weights: Vec<f64>,
    pub scheme: QuadratureScheme,
}

impl QuadratureGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// A catalog operator truncated to its first `mode_count` modes.
#[derive(Debug, Clone)]
pub struct Operator {
    spec: OperatorSpec,
    modes: Vec<SpectralMode>,
    quadrature: QuadratureGrid,
}

const PANEL_ORDER: usize = 16;

impl Operator {
    pub fn new(spec: &OperatorSpec, mode_count: usize) -> Result<Self> {
        spec.validate()?;
        if mode_count == 0 {
            return Err(Error::invalid("mode count must be at least 1"));
        }
        let (labels, quadrature) = match *spec {
            OperatorSpec::DirichletLaplacian { length } => {
                let labels = (1..=mode_count).map(|k| ModeLabel::Sine { k }).collect();
                (labels, legendre_grid(0.0, length, mode_count + 8))
            }
            OperatorSpec::Involution { epsilon } => (
                involution_labels(epsilon, mode_count),
                legendre_grid(0.0, PI, 2 * mode_count + 8),
            ),
            OperatorSpec::Bessel { .. } => {
                let labels = (1..=mode_count).map(|k| ModeLabel::Bessel { k }).collect();
                (labels, graded_grid(mode_count + 8))
            }
            OperatorSpec::HarmonicOscillator => {
                let labels = (0..mode_count).map(|l| ModeLabel::Hermite { l }).collect();
                let (x, w) = gauss_hermite_scaled(mode_count + 20);
                let grid = QuadratureGrid {
                    nodes: x.into_iter().map(Point::Line).collect(),
                    weights: w,
                    scheme: QuadratureScheme::GaussHermite,
                };
                (labels, grid)
            }
            OperatorSpec::Landau { field, per_level } => {
                let labels = landau_labels(per_level, mode_count);
                let max_level = labels
                    .iter()
                    .map(|l| match l {
                        ModeLabel::LandauFirst { level, .. }
                        | ModeLabel::LandauSecond { level, .. } => *level,
                        _ => 0,
                    })
                    .max()
                    .unwrap_or(0);
                (
                    labels,
                    polar_grid(
                        field,
                        per_level + 2 * max_level + 4,
                        2 * per_level + 2 * max_level + 4,
                    ),
                )
            }
        };
        let zeros = match *spec {
            OperatorSpec::Bessel { nu } => bessel_j_zeros(nu, mode_count)?,
            _ => Vec::new(),
        };
        let mut modes: Vec<SpectralMode> = labels
            .into_iter()
            .map(|label| {
                let (eigenvalue, wavenumber) = raw_eigenvalue(spec, &label, &zeros);
                SpectralMode {
                    index: 0,
                    label,
                    eigenvalue,
                    multiplicity: None,
                    normalization: 1.0,
                    wavenumber,
                }
            })
            .collect();
        modes.sort_by(|a, b| {
            a.eigenvalue
                .total_cmp(&b.eigenvalue)
                .then(a.label.cmp(&b.label))
        });
        for (i, m) in modes.iter_mut().enumerate() {
            m.index = i;
        }
        let mut op = Operator {
            spec: spec.clone(),
            modes,
            quadrature,
        };
        op.normalize()?;
        Ok(op)
    }

    fn normalize(&mut self) -> Result<()> {
        match self.spec {
            OperatorSpec::Bessel { nu } => {
                for m in &mut self.modes {
                    let j = m.wavenumber.unwrap_or(0.0);
                    m.normalization = 2f64.sqrt() / bessel_j(nu + 1.0, j)?.abs();
                }
            }
            OperatorSpec::Landau { .. } => {
                let mut counts = std::collections::BTreeMap::new();
                for m in &self.modes {
                    *counts.entry(m.eigenvalue.to_bits()).or_insert(0usize) += 1;
                }
                for i in 0..self.modes.len() {
                    let label = self.modes[i].label;
                    let mut s = 0.0;
                    for (p, w) in self.quadrature.nodes.iter().zip(&self.quadrature.weights) {
                        s += w * raw_eigenfunction(&self.spec, &label, None, *p)?.norm_sqr();
                    }
                    let m = &mut self.modes[i];
                    m.normalization = 1.0 / s.sqrt();
                    m.multiplicity = Some(counts[&m.eigenvalue.to_bits()]);
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn spec(&self) -> &OperatorSpec {
        &self.spec
    }

    pub fn modes(&self) -> &[SpectralMode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Whether every eigenfunction is real-valued.
    pub fn is_real(&self) -> bool {
        !self.spec.is_planar()
    }

    pub fn mode(&self, xi: usize) -> Result<&SpectralMode> {
        self.modes.get(xi).ok_or(Error::IndexOutOfRange {
            index: xi,
            available: self.modes.len(),
        })
    }

    pub fn eigenvalue(&self, xi: usize) -> Result<f64> {
        Ok(self.mode(xi)?.eigenvalue)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.modes.iter().map(|m| m.eigenvalue).collect()
    }

    /// Ordinal of the mode with the given label, if it was retained.
    pub fn index_of(&self, label: &ModeLabel) -> Option<usize> {
        self.modes.iter().position(|m| m.label == *label)
    }

    /// Normalized eigenfunction `e_ξ(p)`.
    pub fn eigenfunction(&self, xi: usize, p: Point) -> Result<Complex64> {
        let m = self.mode(xi)?;
        check_domain(&self.spec, p)?;
        Ok(raw_eigenfunction(&self.spec, &m.label, m.wavenumber, p)? * m.normalization)
    }

    pub fn quadrature(&self) -> &QuadratureGrid {
        &self.quadrature
    }

    /// `(f, e_ξ) ≈ Σ w_i f(p_i) conj(e_ξ(p_i))` for `f` sampled on `grid.nodes`.
    pub fn fourier_coefficient(
        &self,
        grid: &QuadratureGrid,
        f: &[f64],
        xi: usize,
    ) -> Result<Complex64> {
        if f.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: f.len(),
            });
        }
        let mut s = Complex64::new(0.0, 0.0);
        for ((p, w), v) in grid.nodes.iter().zip(&grid.weights).zip(f) {
            if *v != 0.0 {
                s += self.eigenfunction(xi, *p)?.conj() * (w * v);
            }
        }
        Ok(s)
    }

    /// Inner products `(e_i, e_j)` of the first `count` modes under the
    /// operator's own quadrature.
    pub fn gram_matrix(&self, count: usize) -> Result<Vec<Vec<Complex64>>> {
        let count = count.min(self.len());
        let q = &self.quadrature;
        let samples: Vec<Vec<Complex64>> = (0..count)
            .map(|xi| {
                q.nodes
                    .iter()
                    .map(|p| self.eigenfunction(xi, *p))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mut g = vec![vec![Complex64::new(0.0, 0.0); count]; count];
        for i in 0..count {
            for j in 0..count {
                g[i][j] = samples[i]
                    .iter()
                    .zip(&samples[j])
                    .zip(&q.weights)
                    .map(|((a, b), w)| a * b.conj() * w)
                    .sum();
            }
        }
        Ok(g)
    }
}

fn legendre_grid(a: f64, b: f64, panels: usize) -> QuadratureGrid {
    let (x, w) = composite_gauss_legendre(a, b, panels, PANEL_ORDER);
    QuadratureGrid {
        nodes: x.into_iter().map(Point::Line).collect(),
        weights: w,
        scheme: QuadratureScheme::CompositeGaussLegendre,
    }
}

/// Gauss–Legendre panels on `(0, 1)`, geometrically refined towards 0.
fn graded_grid(panels: usize) -> QuadratureGrid {
    let width = 1.0 / panels as f64;
    let mut edges = vec![0.0];
    let mut e = width * 0.5f64.powi(30);
    while e < width {
        edges.push(e);
        e *= 2.0;
    }
    for i in 1..=panels {
        edges.push(width * i as f64);
    }
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for w in edges.windows(2) {
        let (x, wt) = composite_gauss_legendre(w[0], w[1], 1, PANEL_ORDER);
        nodes.extend(x.into_iter().map(Point::Line));
        weights.extend(wt);
    }
    QuadratureGrid {
        nodes,
        weights,
        scheme: QuadratureScheme::GradedGaussLegendre,
    }
}

/// Gauss–Laguerre in `ρ = B r²` times a uniform angular rule.
fn polar_grid(field: f64, radial: usize, angular: usize) -> QuadratureGrid {
    let (rho, wr) = gauss_laguerre_scaled(radial);
    let mut nodes = Vec::with_capacity(radial * angular);
    let mut weights = Vec::with_capacity(radial * angular);
    let dphi = 2.0 * PI / angular as f64;
    for (r, w) in rho.iter().zip(&wr) {
        let radius = (r / field).sqrt();
        for j in 0..angular {
            let phi = dphi * j as f64;
            nodes.push(Point::Plane(radius * phi.cos(), radius * phi.sin()));
            // r dr dφ = dρ dφ / (2B)
            weights.push(w * dphi / (2.0 * field));
        }
    }
    QuadratureGrid {
        nodes,
        weights,
        scheme: QuadratureScheme::PolarGaussLaguerre,
    }
}

fn involution_eigenvalue(epsilon: f64, n: usize) -> f64 {
    let n2 = (n * n) as f64;
    if n.is_multiple_of(2) {
        (1.0 + epsilon) * n2
    } else {
        (1.0 - epsilon) * n2
    }
}

fn involution_labels(epsilon: f64, count: usize) -> Vec<ModeLabel> {
    let mut n_max = count;
    loop {
        let mut cand: Vec<(f64, usize)> = (1..=n_max)
            .map(|n| (involution_eigenvalue(epsilon, n), n))
            .collect();
        cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let cutoff = cand[count - 1].0;
        let next = (n_max + 1) as f64;
        if (1.0 - epsilon.abs()) * next * next > cutoff {
            return cand
                .into_iter()
                .take(count)
                .map(|(_, n)| ModeLabel::Involution { n })
                .collect();
        }
        n_max *= 2;
    }
}

fn landau_labels(per_level: usize, count: usize) -> Vec<ModeLabel> {
    let mut labels = Vec::new();
    let mut level = 0;
    while labels.len() < count {
        for k in 0..per_level {
            labels.push(ModeLabel::LandauFirst { level, k });
        }
        for p in 1..=level.min(per_level - 1) {
            labels.push(ModeLabel::LandauSecond { level, p });
        }
        level += 1;
    }
    labels.sort();
    labels.sort_by_key(|l| match l {
        ModeLabel::LandauFirst { level, .. } | ModeLabel::LandauSecond { level, .. } => *level,
        _ => 0,
    });
    labels.truncate(count);
    labels
}

fn raw_eigenvalue(spec: &OperatorSpec, label: &ModeLabel, zeros: &[f64]) -> (f64, Option<f64>) {
    match (spec, *label) {
        (OperatorSpec::DirichletLaplacian { length }, ModeLabel::Sine { k }) => {
            let w = k as f64 * PI / length;
            (w * w, None)
        }
        (OperatorSpec::Involution { epsilon }, ModeLabel::Involution { n }) => {
            (involution_eigenvalue(*epsilon, n), None)
        }
        (OperatorSpec::Bessel { .. }, ModeLabel::Bessel { k }) => {
            let j = zeros[k - 1];
            (j * j, Some(j))
        }
        (OperatorSpec::HarmonicOscillator, ModeLabel::Hermite { l }) => ((2 * l + 1) as f64, None),
        (
            OperatorSpec::Landau { field, .. },
            ModeLabel::LandauFirst { level, .. } | ModeLabel::LandauSecond { level, .. },
        ) => ((2 * level + 1) as f64 * field, None),
        _ => unreachable!("label does not belong to operator"),
    }
}

fn check_domain(spec: &OperatorSpec, p: Point) -> Result<()> {
    let ok = match (spec, p) {
        (OperatorSpec::Landau { .. }, Point::Plane(x, y)) => x.is_finite() && y.is_finite(),
        (OperatorSpec::Landau { .. }, Point::Line(_)) => false,
        (_, Point::Plane(..)) => false,
        (OperatorSpec::HarmonicOscillator, Point::Line(x)) => x.is_finite(),
        (s, Point::Line(x)) => {
            let (a, b) = s.interval().unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
            x >= a && x <= b
        }
    };
    if ok {
        return Ok(());
    }
    let domain = match spec {
        OperatorSpec::DirichletLaplacian { .. } => "[0, L]",
        OperatorSpec::Involution { .. } => "[0, pi]",
        OperatorSpec::Bessel { .. } => "[0, 1]",
        OperatorSpec::HarmonicOscillator => "real line",
        OperatorSpec::Landau { .. } => "plane",
    };
    Err(Error::DomainViolation {
        point: p.to_string(),
        domain,
    })
}

fn raw_eigenfunction(
    spec: &OperatorSpec,
    label: &ModeLabel,
    wavenumber: Option<f64>,
    p: Point,
) -> Result<Complex64> {
    let real = |v: f64| Ok(Complex64::new(v, 0.0));
    match (spec, *label, p) {
        (OperatorSpec::DirichletLaplacian { length }, ModeLabel::Sine { k }, Point::Line(x)) => {
            real((2.0 / length).sqrt() * (k as f64 * PI * x / length).sin())
        }
        (OperatorSpec::Involution { .. }, ModeLabel::Involution { n }, Point::Line(x)) => {
            real((2.0 / PI).sqrt() * (n as f64 * x).sin())
        }
        (OperatorSpec::Bessel { nu }, ModeLabel::Bessel { .. }, Point::Line(x)) => {
            let j = wavenumber.unwrap_or(0.0);
            real(x.sqrt() * bessel_j(*nu, j * x)?)
        }
        (OperatorSpec::HarmonicOscillator, ModeLabel::Hermite { l }, Point::Line(x)) => {
            real(hermite_function(l, x))
        }
        (
            OperatorSpec::Landau { field, .. },
            ModeLabel::LandauFirst { level, k },
            Point::Plane(x, y),
        ) => {
            let rho = field * (x * x + y * y);
            let radial = laguerre_poly(level, k as f64, rho) * (-0.5 * rho).exp();
            Ok(Complex64::new(x, y).powu(k as u32) * radial)
        }
        (
            OperatorSpec::Landau { field, .. },
            ModeLabel::LandauSecond { level, p: q },
            Point::Plane(x, y),
        ) => {
            let rho = field * (x * x + y * y);
            let radial = laguerre_poly(level - q, q as f64, rho) * (-0.5 * rho).exp();
            Ok(Complex64::new(x, -y).powu(q as u32) * radial)
        }
        _ => Err(Error::DomainViolation {
            point: p.to_string(),
            domain: "operator domain",
        }),
    }
}
