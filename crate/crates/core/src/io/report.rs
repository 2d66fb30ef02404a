//! Machine-readable run reports.

use serde::{Deserialize, Serialize};

use crate::catalog::{ModeLabel, OperatorSpec};
use crate::error::{Error, Result};
use crate::fractional::{
    Classification, EnvelopeThreshold, ModeRegime, MultiTermOrders, NonlocalData,
};

pub const SOLVABILITY_CONDITION: &str =
    "a resonant mode admits a solution only if its forcing coefficient (f(t,.), e_xi) vanishes for every t in [0, T]";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeEntry {
    pub index: usize,
    pub label: ModeLabel,
    pub eigenvalue: f64,
    pub theta_at_points: Vec<f64>,
    pub denominator: f64,
    pub sum_abs_mu_theta: f64,
    pub envelope_bound: f64,
    pub classification: Classification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_coefficient: Option<f64>,
    pub forcing_max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

impl ModeEntry {
    pub(crate) fn set_regime(&mut self, regime: &ModeRegime) {
        let (name, free) = match regime {
            ModeRegime::Regular => ("regular", None),
            ModeRegime::ResonantFamily { coefficient } => ("resonant_family", Some(*coefficient)),
            ModeRegime::ResonantInfeasible => ("resonant_infeasible", None),
        };
        self.regime = Some(name.to_string());
        self.free_coefficient = free;
    }
}

/// Global test `Σ |μ_i| < 1`, decisive only for `α ∈ {1, 2}` without lower terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShortcutFlag {
    pub applicable: bool,
    pub sum_abs_mu: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Infeasibility {
    pub modes: Vec<usize>,
    pub condition: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary {
    /// Largest `max_t |residual| / (1 + max_t |f_ξ|)` over the modes.
    pub max_scaled_mode_residual: f64,
    pub worst_mode: usize,
    /// Modes too fast for the grid to resolve; excluded from the maximum.
    pub unresolved_modes: Vec<usize>,
    pub nonlocal_residual: f64,
    /// Nonlocal residual divided by `1 + max |u|`.
    pub nonlocal_scaled: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub operator: OperatorSpec,
    pub orders: MultiTermOrders,
    pub nonlocal: NonlocalData,
    pub truncation: usize,
    pub time_nodes: usize,
    pub horizon: f64,
    pub modes: Vec<ModeEntry>,
    pub shortcut: ShortcutFlag,
    pub envelope: EnvelopeThreshold,
    pub resonant_modes: Vec<usize>,
    pub near_resonant_modes: Vec<usize>,
    pub free_coefficient_modes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub infeasible: Option<Infeasibility>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<ResidualSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_seconds: Option<f64>,
}

impl RunReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s =
            serde_json::to_string_pretty(self).map_err(|e| Error::invalid(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

/// Result of re-running the oracles against a stored solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub truncation: usize,
    pub time_nodes: usize,
    /// `max |u − Σ c_ξ e_ξ|` of the least-squares mode fit over the stored grid.
    pub projection_residual: f64,
    pub mode_residuals: Vec<f64>,
    /// Modes whose time scale `λ^{−1/α}` spans fewer than the required grid steps.
    pub unresolved_modes: Vec<usize>,
    pub max_scaled_mode_residual: f64,
    pub residual_gate: f64,
    pub nonlocal_residual: f64,
    pub nonlocal_gate: f64,
    pub passed: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s =
            serde_json::to_string_pretty(self).map_err(|e| Error::invalid(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}
