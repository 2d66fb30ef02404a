use crate::error::{Error, Result};

/// Relative tolerance for recognising a time as a grid node.
const NODE_TOL: f64 = 1e-9;

/// Uniform time grid on `[0, T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    nodes: Vec<f64>,
    step: f64,
}

impl TimeGrid {
    /// `count` equally spaced nodes from 0 to `horizon` inclusive.
    pub fn uniform(horizon: f64, count: usize) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::invalid(format!(
                "time horizon must be positive, got {horizon}"
            )));
        }
        if count < 2 {
            return Err(Error::GridTooCoarse {
                nodes: count,
                required: 2,
            });
        }
        let step = horizon / (count - 1) as f64;
        let mut nodes: Vec<f64> = (0..count).map(|k| k as f64 * step).collect();
        nodes[count - 1] = horizon;
        Ok(Self { nodes, step })
    }

    /// The smallest uniform grid with at least `min_count` (and at most
    /// `4 * min_count`) nodes on which every entry of `times` is a node.
    /// Those nodes are set to the given times exactly.
    pub fn containing(horizon: f64, times: &[f64], min_count: usize) -> Result<Self> {
        for count in min_count.max(2)..=4 * min_count.max(2) {
            let step = horizon / (count - 1) as f64;
            let fits = times.iter().all(|&t| {
                let r = t / step;
                (r - r.round()).abs() <= NODE_TOL * r.max(1.0)
            });
            if fits {
                let mut grid = Self::uniform(horizon, count)?;
                for &t in times {
                    let k = (t / step).round() as usize;
                    grid.nodes[k] = t;
                }
                return Ok(grid);
            }
        }
        let step = horizon / (min_count.max(2) - 1) as f64;
        let off = times
            .iter()
            .copied()
            .find(|&t| {
                let r = t / step;
                (r - r.round()).abs() > NODE_TOL * r.max(1.0)
            })
            .unwrap_or(horizon);
        Err(Error::NotOnGrid(off))
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn horizon(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    /// Index of the node equal to `t`.
    pub fn index_of(&self, t: f64) -> Result<usize> {
        let r = t / self.step;
        let k = r.round();
        if k < 0.0 || k as usize >= self.nodes.len() || (r - k).abs() > NODE_TOL * r.max(1.0) {
            return Err(Error::NotOnGrid(t));
        }
        Ok(k as usize)
    }
}
