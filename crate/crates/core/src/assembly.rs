//! Spatial assembly of mode solutions and solution-level checks.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{ModeLabel, Operator, Point};
use crate::error::{Error, Result};
use crate::fractional::{ModeRegime, ModeSolution, NonlocalData};
use crate::grid::TimeGrid;

/// Per-mode record carried alongside the assembled values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeDiagnostics {
    pub index: usize,
    pub label: ModeLabel,
    pub eigenvalue: f64,
    pub denominator: f64,
    pub regime: ModeRegime,
}

/// `u(t_i, x_j)` on a time grid times a list of points, row-major by time.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionGrid {
    pub times: Vec<f64>,
    pub points: Vec<Point>,
    pub values: Vec<f64>,
    /// Imaginary part, present for operators with complex eigenfunctions.
    pub imag: Option<Vec<f64>>,
    pub truncation: usize,
    pub diagnostics: Vec<ModeDiagnostics>,
}

impl SolutionGrid {
    pub fn shape(&self) -> (usize, usize) {
        (self.times.len(), self.points.len())
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.points.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let w = self.points.len();
        &self.values[i * w..(i + 1) * w]
    }

    pub fn imag_row(&self, i: usize) -> Option<&[f64]> {
        let w = self.points.len();
        self.imag.as_ref().map(|v| &v[i * w..(i + 1) * w])
    }

    pub fn max_abs(&self) -> f64 {
        let re = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        match &self.imag {
            Some(im) => self
                .values
                .iter()
                .zip(im)
                .fold(re, |m, (a, b)| m.max(a.hypot(*b))),
            None => re,
        }
    }
}

/// `u(t, x) = Σ_{ξ<N} u_ξ(t) e_ξ(x)` on the given points.
pub fn assemble_solution(
    op: &Operator,
    modes: &[ModeSolution],
    points: &[Point],
    truncation: usize,
    grid: &TimeGrid,
) -> Result<SolutionGrid> {
    if truncation == 0 {
        return Err(Error::invalid("truncation must be at least 1"));
    }
    if truncation > op.len() {
        return Err(Error::IndexOutOfRange {
            index: truncation - 1,
            available: op.len(),
        });
    }
    let mut ordered: Vec<&ModeSolution> = Vec::with_capacity(truncation);
    for xi in 0..truncation {
        let m = modes
            .iter()
            .find(|m| m.index == xi)
            .ok_or(Error::MissingMode(xi))?;
        if m.samples.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: m.samples.len(),
            });
        }
        ordered.push(m);
    }
    let infeasible: Vec<usize> = ordered
        .iter()
        .filter(|m| m.regime == ModeRegime::ResonantInfeasible)
        .map(|m| m.index)
        .collect();
    if !infeasible.is_empty() {
        return Err(Error::ResonantInfeasible(infeasible));
    }
    let width = points.len();
    let mut table: Vec<Complex64> = Vec::with_capacity(truncation * width);
    for xi in 0..truncation {
        for &p in points {
            table.push(op.eigenfunction(xi, p)?);
        }
    }
    let complex = !op.is_real();
    let rows: Vec<Vec<Complex64>> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let mut row = vec![Complex64::new(0.0, 0.0); width];
            for (xi, m) in ordered.iter().enumerate() {
                let c = m.samples[i];
                if c == 0.0 {
                    continue;
                }
                for (slot, e) in row.iter_mut().zip(&table[xi * width..(xi + 1) * width]) {
                    *slot += c * e;
                }
            }
            row
        })
        .collect();
    let values = rows.iter().flatten().map(|v| v.re).collect();
    let imag = complex.then(|| rows.iter().flatten().map(|v| v.im).collect());
    let diagnostics = ordered
        .iter()
        .map(|m| -> Result<ModeDiagnostics> {
            let mode = op.mode(m.index)?;
            Ok(ModeDiagnostics {
                index: m.index,
                label: mode.label,
                eigenvalue: mode.eigenvalue,
                denominator: m.denominator,
                regime: m.regime,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SolutionGrid {
        times: grid.nodes().to_vec(),
        points: points.to_vec(),
        values,
        imag,
        truncation,
        diagnostics,
    })
}

/// `max_x |u(0, x) − Σ μ_i u(T_i, x)|`.
pub fn nonlocal_condition_residual(
    solution: &SolutionGrid,
    nonlocal: &NonlocalData,
) -> Result<f64> {
    let h = solution.times.get(1).copied().unwrap_or(1.0) - solution.times[0];
    let index_of = |t: f64| -> Result<usize> {
        solution
            .times
            .iter()
            .position(|&s| (s - t).abs() <= 1e-9 * h.abs().max(t.abs()))
            .ok_or(Error::NotOnGrid(t))
    };
    let rows: Vec<(f64, usize)> = nonlocal
        .points
        .iter()
        .map(|p| Ok((p.mu, index_of(p.time)?)))
        .collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for j in 0..solution.points.len() {
        let mut re = solution.value(0, j);
        let mut im = solution.imag_row(0).map_or(0.0, |r| r[j]);
        for &(mu, k) in &rows {
            re -= mu * solution.value(k, j);
            im -= mu * solution.imag_row(k).map_or(0.0, |r| r[j]);
        }
        worst = worst.max(re.hypot(im));
    }
    Ok(worst)
}

/// `(Σ λ_ξ^s |c_ξ|²)^{1/2}`.
pub fn sobolev_norm(coefficients: &[Complex64], eigenvalues: &[f64], s: f64) -> Result<f64> {
    if coefficients.len() != eigenvalues.len() {
        return Err(Error::DimensionMismatch {
            expected: eigenvalues.len(),
            got: coefficients.len(),
        });
    }
    let mut acc = 0.0;
    for (c, &l) in coefficients.iter().zip(eigenvalues) {
        let w = if s == 0.0 {
            1.0
        } else if l > 0.0 {
            l.powf(s)
        } else if l == 0.0 && s > 0.0 {
            0.0
        } else {
            return Err(Error::invalid(format!(
                "eigenvalue {l} has no power of order {s}"
            )));
        };
        acc += w * c.norm_sqr();
    }
    Ok(acc.sqrt())
}
