//! Problem definition read from a TOML document.

use serde::{Deserialize, Serialize};

use crate::catalog::{Operator, OperatorSpec, Point};
use crate::error::{Error, Result, Violation};
use crate::fractional::{MultiTermOrders, NonlocalData, Tolerances};
use crate::special::SeriesControl;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub operator: OperatorSpec,
    pub orders: MultiTermOrders,
    pub nonlocal: NonlocalData,
    #[serde(default)]
    pub forcing: Vec<ForcingTerm>,
    pub discretization: Discretization,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub series: SeriesControl,
    /// Free coefficients chosen for resonant modes with vanishing forcing.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub resonant: Vec<ResonantChoice>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Discretization {
    /// Number of retained modes `N`.
    pub modes: usize,
    #[serde(default = "default_time_nodes")]
    pub time_nodes: usize,
    /// Output points per axis.
    #[serde(default = "default_space_points")]
    pub space_points: usize,
    /// Half-width of the output window on unbounded domains.
    #[serde(default = "default_extent")]
    pub extent: f64,
}

fn default_time_nodes() -> usize {
    1024
}

fn default_space_points() -> usize {
    65
}

fn default_extent() -> f64 {
    4.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResonantChoice {
    pub mode: usize,
    pub coefficient: f64,
}

/// One separable forcing term `g(t) h(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForcingTerm {
    pub time: TimeProfile,
    pub space: SpaceProfile,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TimeProfile {
    /// `Σ c_k t^k`.
    Polynomial { coefficients: Vec<f64> },
    /// `A e^{r t}`.
    Exp {
        #[serde(default = "one")]
        amplitude: f64,
        rate: f64,
    },
    /// `A sin(ω t + φ)`.
    Sin {
        #[serde(default = "one")]
        amplitude: f64,
        frequency: f64,
        #[serde(default)]
        phase: f64,
    },
    /// `A cos(ω t + φ)`.
    Cos {
        #[serde(default = "one")]
        amplitude: f64,
        frequency: f64,
        #[serde(default)]
        phase: f64,
    },
    /// Piecewise-linear interpolation of samples covering `[0, T]`.
    Tabulated { times: Vec<f64>, values: Vec<f64> },
}

impl TimeProfile {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            TimeProfile::Polynomial { coefficients } => {
                coefficients.iter().rev().fold(0.0, |acc, c| acc * t + c)
            }
            TimeProfile::Exp { amplitude, rate } => amplitude * (rate * t).exp(),
            TimeProfile::Sin {
                amplitude,
                frequency,
                phase,
            } => amplitude * (frequency * t + phase).sin(),
            TimeProfile::Cos {
                amplitude,
                frequency,
                phase,
            } => amplitude * (frequency * t + phase).cos(),
            TimeProfile::Tabulated { times, values } => {
                interpolate(times, values, t).unwrap_or(0.0)
            }
        }
    }

    fn violations(&self, prefix: &str, horizon: f64) -> Vec<Violation> {
        let mut v = Vec::new();
        let finite = |name: &str, x: f64, v: &mut Vec<Violation>| {
            if !x.is_finite() {
                v.push(Violation::new(format!("{prefix}.{name}"), "must be finite"));
            }
        };
        match self {
            TimeProfile::Polynomial { coefficients } => {
                if coefficients.iter().any(|c| !c.is_finite()) {
                    v.push(Violation::new(
                        format!("{prefix}.coefficients"),
                        "must be finite",
                    ));
                }
            }
            TimeProfile::Exp { amplitude, rate } => {
                finite("amplitude", *amplitude, &mut v);
                finite("rate", *rate, &mut v);
            }
            TimeProfile::Sin {
                amplitude,
                frequency,
                phase,
            }
            | TimeProfile::Cos {
                amplitude,
                frequency,
                phase,
            } => {
                finite("amplitude", *amplitude, &mut v);
                finite("frequency", *frequency, &mut v);
                finite("phase", *phase, &mut v);
            }
            TimeProfile::Tabulated { times, values } => {
                table_violations(prefix, "times", times, values, &mut v);
                if v.is_empty() && (times[0] > 0.0 || times[times.len() - 1] < horizon) {
                    v.push(Violation::new(
                        format!("{prefix}.times"),
                        format!("must cover [0, {horizon}]"),
                    ));
                }
            }
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceProfile {
    /// The eigenfunction with this ordinal.
    Mode { index: usize },
    /// Piecewise-linear samples on a one-dimensional domain, zero outside the table.
    Tabulated { points: Vec<f64>, values: Vec<f64> },
}

fn table_violations(prefix: &str, axis: &str, xs: &[f64], values: &[f64], v: &mut Vec<Violation>) {
    if xs.len() < 2 {
        v.push(Violation::new(
            format!("{prefix}.{axis}"),
            "needs at least two samples",
        ));
    }
    if xs.len() != values.len() {
        v.push(Violation::new(
            format!("{prefix}.values"),
            format!("has {} entries but {axis} has {}", values.len(), xs.len()),
        ));
    }
    if xs.iter().chain(values).any(|x| !x.is_finite()) {
        v.push(Violation::new(
            format!("{prefix}.{axis}"),
            "samples must be finite",
        ));
    }
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        v.push(Violation::new(
            format!("{prefix}.{axis}"),
            "must be strictly increasing",
        ));
    }
}

/// Linear interpolation inside the table, `None` outside it.
pub(crate) fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> Option<f64> {
    if xs.is_empty() || x < xs[0] || x > xs[xs.len() - 1] {
        return None;
    }
    let k = xs.partition_point(|&p| p <= x);
    if k == xs.len() {
        return Some(ys[ys.len() - 1]);
    }
    let (x0, x1) = (xs[k - 1], xs[k]);
    let w = (x - x0) / (x1 - x0);
    Some(ys[k - 1] * (1.0 - w) + ys[k] * w)
}

impl ProblemConfig {
    pub fn horizon(&self) -> f64 {
        self.nonlocal.horizon()
    }

    /// Every invariant violation, with its field path.
    pub fn violations(&self) -> Vec<Violation> {
        let mut v = self.operator.violations("operator");
        v.extend(self.orders.violations("orders"));
        v.extend(self.nonlocal.violations("nonlocal"));
        v.extend(self.tolerances.violations("tolerances"));
        v.extend(self.series.violations("series"));
        let d = &self.discretization;
        if d.modes < 1 {
            v.push(Violation::new("discretization.modes", "must be at least 1"));
        }
        if d.time_nodes < crate::oracle::MIN_NODES {
            v.push(Violation::new(
                "discretization.time_nodes",
                format!("must be at least {}", crate::oracle::MIN_NODES),
            ));
        }
        if d.space_points < 1 {
            v.push(Violation::new(
                "discretization.space_points",
                "must be at least 1",
            ));
        }
        if !(d.extent > 0.0 && d.extent.is_finite()) {
            v.push(Violation::new("discretization.extent", "must be positive"));
        }
        let horizon = if self.nonlocal.points.is_empty() {
            0.0
        } else {
            self.horizon()
        };
        for (q, term) in self.forcing.iter().enumerate() {
            let prefix = format!("forcing[{q}]");
            v.extend(term.time.violations(&format!("{prefix}.time"), horizon));
            match &term.space {
                SpaceProfile::Mode { index } => {
                    if *index >= d.modes {
                        v.push(Violation::new(
                            format!("{prefix}.space.index"),
                            format!("must be below the mode count {}", d.modes),
                        ));
                    }
                }
                SpaceProfile::Tabulated { points, values } => {
                    if self.operator.is_planar() {
                        v.push(Violation::new(
                            format!("{prefix}.space"),
                            "tabulated spatial samples need a one-dimensional operator",
                        ));
                    }
                    table_violations(&format!("{prefix}.space"), "points", points, values, &mut v);
                }
            }
        }
        for (k, r) in self.resonant.iter().enumerate() {
            if r.mode >= d.modes {
                v.push(Violation::new(
                    format!("resonant[{k}].mode"),
                    format!("must be below the mode count {}", d.modes),
                ));
            }
            if !r.coefficient.is_finite() {
                v.push(Violation::new(
                    format!("resonant[{k}].coefficient"),
                    "must be finite",
                ));
            }
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(v))
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Free coefficient chosen for `mode`, zero by default.
    pub fn resonant_coefficient(&self, mode: usize) -> f64 {
        self.resonant
            .iter()
            .rev()
            .find(|r| r.mode == mode)
            .map_or(0.0, |r| r.coefficient)
    }

    /// `ĥ_q(ξ)` for every forcing term and retained mode.
    pub fn spatial_coefficients(&self, op: &Operator) -> Result<Vec<Vec<f64>>> {
        let n = self.discretization.modes;
        self.forcing
            .iter()
            .map(|term| match &term.space {
                SpaceProfile::Mode { index } => Ok((0..n)
                    .map(|xi| if xi == *index { 1.0 } else { 0.0 })
                    .collect()),
                SpaceProfile::Tabulated { points, values } => {
                    let grid = op.quadrature();
                    let samples: Vec<f64> = grid
                        .nodes
                        .iter()
                        .map(|p| match p {
                            Point::Line(x) => interpolate(points, values, *x).unwrap_or(0.0),
                            Point::Plane(..) => 0.0,
                        })
                        .collect();
                    (0..n)
                        .map(|xi| Ok(op.fourier_coefficient(grid, &samples, xi)?.re))
                        .collect()
                }
            })
            .collect()
    }

    /// `f_ξ(t_k)` for every retained mode.
    pub fn mode_forcing(&self, op: &Operator, times: &[f64]) -> Result<Vec<Vec<f64>>> {
        let spatial = self.spatial_coefficients(op)?;
        let profiles: Vec<Vec<f64>> = self
            .forcing
            .iter()
            .map(|term| times.iter().map(|&t| term.time.eval(t)).collect())
            .collect();
        Ok((0..self.discretization.modes)
            .map(|xi| {
                let mut f = vec![0.0; times.len()];
                for (g, h) in profiles.iter().zip(&spatial) {
                    if h[xi] != 0.0 {
                        f.iter_mut().zip(g).for_each(|(f, g)| *f += h[xi] * g);
                    }
                }
                f
            })
            .collect())
    }
}

/// Parse and fully validate a TOML problem definition.
pub fn parse_config(text: &str) -> Result<ProblemConfig> {
    let cfg: ProblemConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}
