use crate::geometry::Vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Converged,
    MaxIter,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Converged => "converged",
            Status::MaxIter => "max_iter",
        }
    }
}

/// One row of a convergence trace.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub iter: usize,
    /// Fixed-point residual at the current iterate.
    pub residual: f64,
    /// Distance to the next iterate; zero on the terminal row.
    pub step_len: f64,
    pub point: Option<Vector>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub records: Vec<IterationRecord>,
    pub status: Status,
}

impl IterationTrace {
    pub(crate) fn new() -> Self {
        Self {
            records: Vec::new(),
            status: Status::MaxIter,
        }
    }

    pub fn residuals(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.residual)
    }

    /// Largest ratio `residual[k+1] / residual[k]` over `k >= burn_in`,
    /// skipping pairs whose denominator is at rounding level. Returns `None`
    /// when no ratio qualifies.
    pub fn max_residual_ratio(&self, burn_in: usize) -> Option<f64> {
        self.records
            .windows(2)
            .filter(|w| w[0].iter >= burn_in)
            .filter(|w| w[0].residual > rounding_floor(w[0].point.as_ref()))
            .map(|w| w[1].residual / w[0].residual)
            .fold(None, |acc: Option<f64>, r| {
                Some(acc.map_or(r, |a| a.max(r)))
            })
    }
}

fn rounding_floor(point: Option<&Vector>) -> f64 {
    let scale = point.map_or(1.0, |p| 1.0 + p.norm());
    1e3 * f64::EPSILON * scale
}

/// Converged (or budget-exhausted) output of a single-sequence solver.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub u: Vector,
    pub residual: f64,
    pub iterations: usize,
    /// Step size the run used.
    pub step: f64,
    pub trace: IterationTrace,
}

impl Solution {
    pub fn status(&self) -> Status {
        self.trace.status
    }

    pub fn converged(&self) -> bool {
        self.trace.status == Status::Converged
    }
}
