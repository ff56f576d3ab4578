use super::schedule::Schedule;
use super::trace::{IterationRecord, IterationTrace, Status};
use super::{at_iteration, check_step, forward_backward, Problem, SolverConfig};
use crate::error::{Error, Result};
use crate::geometry::Vector;

/// Limits of the two coupled sequences.
#[derive(Debug, Clone, PartialEq)]
pub struct VermaSolution {
    pub x_limit: Vector,
    pub y_limit: Vector,
    pub iterations: usize,
    /// Residual `||x - P_C(x - ηAx)||` per iteration.
    pub x_trace: IterationTrace,
    /// Residual `||y - P_C(y - ρAy)||` per iteration.
    pub y_trace: IterationTrace,
    /// Set when the schedule does not guarantee `sum a_n b_n = ∞`.
    pub schedule_warning: bool,
}

impl VermaSolution {
    pub fn status(&self) -> Status {
        self.x_trace.status
    }

    pub fn converged(&self) -> bool {
        self.status() == Status::Converged
    }

    pub fn limit_gap(&self) -> f64 {
        self.x_limit
            .distance(&self.y_limit)
            .expect("limits share the problem dimension")
    }
}

/// Two-step relaxed projection scheme
///
/// ```text
/// y_n     = (1 - b_n) x_n + b_n P_C(x_n - η A x_n)
/// x_{n+1} = (1 - a_n) x_n + a_n P_C(y_n - ρ A y_n)
/// ```
///
/// Both `ρ` and `η` must lie in `(0, 2(r - γμ²)/μ²)`. Stops once both
/// sequences have fixed-point residual at most `config.tol`; `config.step`
/// is ignored.
pub fn solve_verma(
    problem: &Problem,
    rho: f64,
    eta: f64,
    schedule: &Schedule,
    config: &SolverConfig,
) -> Result<VermaSolution> {
    let cert = problem.certificate();
    cert.require_solvable()?;
    check_step(cert, rho)?;
    check_step(cert, eta)?;
    schedule.validate()?;
    config.validate()?;

    let mut x = config.start_point(problem.set())?;
    let mut x_trace = IterationTrace::new();
    let mut y_trace = IterationTrace::new();
    let mut prev_y: Option<Vector> = None;
    let mut n = 0;
    loop {
        let (a, b) = schedule.coefficients(n);
        let px = forward_backward(problem, eta, &x).map_err(at_iteration(n))?;
        let residual_x = x.distance(&px)?;
        let y = x.lerp(b, &px)?;
        let py = forward_backward(problem, rho, &y).map_err(at_iteration(n))?;
        if !(px.is_finite() && py.is_finite()) {
            return Err(Error::NonFiniteIterate { iteration: n });
        }
        let residual_y = y.distance(&py)?;

        if let (Some(prev), Some(last)) = (&prev_y, y_trace.records.last_mut()) {
            last.step_len = prev.distance(&y)?;
        }

        let done = residual_x.max(residual_y) <= config.tol;
        let last = done || n == config.max_iter;
        let next_x = if last { x.clone() } else { x.lerp(a, &py)? };
        x_trace.records.push(IterationRecord {
            iter: n,
            residual: residual_x,
            step_len: x.distance(&next_x)?,
            point: config.record_points.then(|| x.clone()),
        });
        y_trace.records.push(IterationRecord {
            iter: n,
            residual: residual_y,
            step_len: 0.0,
            point: config.record_points.then(|| y.clone()),
        });

        if last {
            let status = if done {
                Status::Converged
            } else {
                Status::MaxIter
            };
            x_trace.status = status;
            y_trace.status = status;
            return Ok(VermaSolution {
                x_limit: x,
                y_limit: y,
                iterations: n,
                x_trace,
                y_trace,
                schedule_warning: schedule.divergence_warning(),
            });
        }
        prev_y = Some(y);
        x = next_x;
        n += 1;
    }
}
