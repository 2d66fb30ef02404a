//! Multivariate Mittag-Leffler function
//!
//! `E_{(α₁,…,α_n),β}(z₁,…,z_n) = Σ_k Σ_{l₁+…+l_n=k} k!/(l₁!…l_n!) · Π z_j^{l_j} / Γ(β + Σ α_j l_j)`.
//!
//! The outer sum runs over total degree `k` in blocks. Each block's absolute
//! sum feeds a geometric tail certificate.

use serde::{Deserialize, Serialize};

use super::gamma::{ln_gamma, reciprocal_gamma};
use super::mittag_leffler::{check_index, ml_two_param};
use super::{check_rounding, CompensatedSum, SeriesControl, TailCertificate};
use crate::error::{Error, Result};

/// Multi-index `(α₁,…,α_n)` and second parameter `β`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MLIndex {
    pub alphas: Vec<f64>,
    pub beta: f64,
}

impl MLIndex {
    pub fn new(alphas: Vec<f64>, beta: f64) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::invalid(
                "Mittag-Leffler index needs at least one alpha",
            ));
        }
        for &a in &alphas {
            check_index(a, beta)?;
        }
        Ok(Self { alphas, beta })
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }
}

/// Every tuple of `parts` non-negative integers summing to `k`, in ascending
/// lexicographic order.
pub fn compositions(k: usize, parts: usize) -> Compositions {
    assert!(parts >= 1, "compositions need at least one part");
    let mut first = vec![0; parts];
    first[parts - 1] = k;
    Compositions {
        current: Some(first),
    }
}

#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let n = out.len();
        let mut next = out.clone();
        let mut tail = 0;
        for i in (0..n.saturating_sub(1)).rev() {
            tail += next[i + 1];
            if tail > 0 {
                next[i] += 1;
                for slot in next.iter_mut().skip(i + 1) {
                    *slot = 0;
                }
                next[n - 1] = tail - 1;
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

#[derive(Debug, Clone)]
struct Block {
    /// Flattened compositions, `dim` entries each.
    parts: Vec<u32>,
    /// `ln(k!/Πl_j!) - ln Γ(β + Σ α_j l_j)` per composition.
    ln_coef: Vec<f64>,
}

/// Cached coefficient blocks of one multivariate series.
///
/// Coefficients depend only on the index, so one cache serves any number of
/// argument vectors. Evaluation beyond the cached degree computes the missing
/// blocks on the fly without storing them.
#[derive(Debug, Clone)]
pub struct MultivariateSeries {
    index: MLIndex,
    blocks: Vec<Block>,
}

impl MultivariateSeries {
    pub fn new(index: MLIndex) -> Self {
        Self {
            index,
            blocks: Vec::new(),
        }
    }

    pub fn index(&self) -> &MLIndex {
        &self.index
    }

    /// Number of cached degree blocks.
    pub fn cached_degree(&self) -> usize {
        self.blocks.len()
    }

    fn build_block(&self, k: usize) -> Block {
        let dim = self.index.len();
        let ln_fact_k = ln_gamma(k as f64 + 1.0);
        let mut parts = Vec::new();
        let mut ln_coef = Vec::new();
        for l in compositions(k, dim) {
            let mut c = ln_fact_k;
            let mut arg = self.index.beta;
            for (j, &lj) in l.iter().enumerate() {
                if lj > 1 {
                    c -= ln_gamma(lj as f64 + 1.0);
                }
                arg += self.index.alphas[j] * lj as f64;
                parts.push(lj as u32);
            }
            ln_coef.push(c - ln_gamma(arg));
        }
        Block { parts, ln_coef }
    }

    /// Cache every block up to and including total degree `k`.
    pub fn extend_to(&mut self, k: usize) {
        while self.blocks.len() <= k {
            let b = self.build_block(self.blocks.len());
            self.blocks.push(b);
        }
    }

    /// Evaluate the series at `z` (all entries used, zeros allowed).
    pub fn evaluate(&self, z: &[f64], ctl: &SeriesControl) -> Result<f64> {
        let dim = self.index.len();
        if z.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: z.len(),
            });
        }
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("Mittag-Leffler arguments must be finite"));
        }
        if z.iter().all(|&v| v == 0.0) {
            return Ok(reciprocal_gamma(self.index.beta));
        }
        let ln_z: Vec<f64> = z.iter().map(|v| v.abs().ln()).collect();
        let mut sum = CompensatedSum::default();
        let mut abs_sum = 0.0;
        let mut cert = TailCertificate::new();
        let mut scratch;
        for k in 0..=ctl.max_total_degree {
            let block = match self.blocks.get(k) {
                Some(b) => b,
                None => {
                    scratch = self.build_block(k);
                    &scratch
                }
            };
            let mut block_abs = 0.0;
            for (c, l) in block.ln_coef.iter().zip(block.parts.chunks_exact(dim)) {
                let mut e = *c;
                let mut negative = false;
                let mut vanishes = false;
                for j in 0..dim {
                    let lj = l[j];
                    if lj == 0 {
                        continue;
                    }
                    if z[j] == 0.0 {
                        vanishes = true;
                        break;
                    }
                    e += lj as f64 * ln_z[j];
                    if z[j] < 0.0 && lj % 2 == 1 {
                        negative = !negative;
                    }
                }
                if vanishes {
                    continue;
                }
                if e > 709.0 {
                    return Err(Error::Overflow {
                        what: "multivariate Mittag-Leffler term",
                        at: k as f64,
                    });
                }
                let m = e.exp();
                block_abs += m;
                sum.add(if negative { -m } else { m });
            }
            abs_sum += block_abs;
            if cert.push(block_abs, ctl.abs_tol) {
                return check_rounding(sum.value(), abs_sum, ctl);
            }
        }
        Err(Error::NonConvergence {
            max_degree: ctl.max_total_degree,
            tail: cert.last_estimate,
        })
    }
}

/// `E_{(α₁,…,α_n),β}(z₁,…,z_n)`.
///
/// Zero arguments are dropped first; a single remaining argument is handed to
/// the two-parameter routine, which also covers large negative arguments.
pub fn ml_multivariate(idx: &MLIndex, z: &[f64], ctl: &SeriesControl) -> Result<f64> {
    ctl.validate()?;
    if z.len() != idx.len() {
        return Err(Error::DimensionMismatch {
            expected: idx.len(),
            got: z.len(),
        });
    }
    for &a in &idx.alphas {
        check_index(a, idx.beta)?;
    }
    let live: Vec<usize> = (0..z.len()).filter(|&j| z[j] != 0.0).collect();
    match live.len() {
        0 => Ok(reciprocal_gamma(idx.beta)),
        1 => ml_two_param(idx.alphas[live[0]], idx.beta, z[live[0]], ctl),
        _ => {
            let reduced = MLIndex {
                alphas: live.iter().map(|&j| idx.alphas[j]).collect(),
                beta: idx.beta,
            };
            let zr: Vec<f64> = live.iter().map(|&j| z[j]).collect();
            MultivariateSeries::new(reduced).evaluate(&zr, ctl)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_compositions() {
        assert_eq!(compositions(0, 3).collect::<Vec<_>>(), vec![vec![0, 0, 0]]);
        assert_eq!(
            compositions(2, 2).collect::<Vec<_>>(),
            vec![vec![0, 2], vec![1, 1], vec![2, 0]]
        );
        assert_eq!(compositions(5, 3).count(), 21);
        assert_eq!(compositions(4, 1).collect::<Vec<_>>(), vec![vec![4]]);
    }

    #[test]
    fn compositions_are_sorted_and_distinct() {
        let all: Vec<_> = compositions(6, 4).collect();
        assert_eq!(all.len(), 84);
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(all.iter().all(|c| c.iter().sum::<usize>() == 6));
    }

    #[test]
    fn single_variable_reduces() {
        let ctl = SeriesControl::default();
        let idx = MLIndex::new(vec![0.8], 1.3).unwrap();
        let a = ml_multivariate(&idx, &[-1.7], &ctl).unwrap();
        let b = ml_two_param(0.8, 1.3, -1.7, &ctl).unwrap();
        assert_eq!(a, b);
        let s = MultivariateSeries::new(idx)
            .evaluate(&[-1.7], &ctl)
            .unwrap();
        assert!((s - b).abs() < 1e-14);
    }

    #[test]
    fn zero_first_argument_collapses() {
        let ctl = SeriesControl::default();
        let idx = MLIndex::new(vec![0.5, 1.0], 1.0).unwrap();
        let v = ml_multivariate(&idx, &[0.0, -2.0], &ctl).unwrap();
        assert!((v - (-2f64).exp()).abs() < 1e-15);
        let s = MultivariateSeries::new(idx)
            .evaluate(&[0.0, -2.0], &ctl)
            .unwrap();
        assert!((s - (-2f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn equal_orders_collapse_to_sum() {
        // With α₁ = α₂ the multinomial sum gives E_{α,β}(z₁ + z₂).
        let ctl = SeriesControl::default();
        let idx = MLIndex::new(vec![0.7, 0.7], 1.2).unwrap();
        let v = ml_multivariate(&idx, &[0.4, -1.3], &ctl).unwrap();
        let w = ml_two_param(0.7, 1.2, -0.9, &ctl).unwrap();
        assert!((v - w).abs() < 1e-13);
    }

    #[test]
    fn cached_and_uncached_agree() {
        let ctl = SeriesControl::default();
        let idx = MLIndex::new(vec![0.3, 1.1, 1.5], 0.9).unwrap();
        let mut cached = MultivariateSeries::new(idx.clone());
        cached.extend_to(20);
        let z = [0.3, -0.8, -1.2];
        let a = cached.evaluate(&z, &ctl).unwrap();
        let b = MultivariateSeries::new(idx).evaluate(&z, &ctl).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dimension_mismatch() {
        let ctl = SeriesControl::default();
        let idx = MLIndex::new(vec![0.3, 1.1], 1.0).unwrap();
        assert!(matches!(
            ml_multivariate(&idx, &[1.0], &ctl),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
