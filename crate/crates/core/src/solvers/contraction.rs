use super::trace::{IterationRecord, IterationTrace, Solution, Status};
use super::{at_iteration, forward_backward, resolve_step, Problem, SolverConfig};
use crate::error::{Error, Result};

/// Picard iteration of `T = P_C(I - sA)` until the residual `||x - Tx||`
/// drops to `config.tol`.
///
/// Budget exhaustion is reported through `Status::MaxIter`, not an error.
pub fn solve_projected_contraction(problem: &Problem, config: &SolverConfig) -> Result<Solution> {
    problem.certificate().require_solvable()?;
    config.validate()?;
    let s = resolve_step(problem.certificate(), config.step)?;

    let mut x = config.start_point(problem.set())?;
    let mut trace = IterationTrace::new();
    let mut k = 0;
    loop {
        let next = forward_backward(problem, s, &x).map_err(at_iteration(k))?;
        if !next.is_finite() {
            return Err(Error::NonFiniteIterate { iteration: k });
        }
        let residual = x.distance(&next)?;
        let done = residual <= config.tol;
        let last = done || k == config.max_iter;
        trace.records.push(IterationRecord {
            iter: k,
            residual,
            step_len: if last { 0.0 } else { residual },
            point: config.record_points.then(|| x.clone()),
        });
        if last {
            trace.status = if done {
                Status::Converged
            } else {
                Status::MaxIter
            };
            return Ok(Solution {
                u: x,
                residual,
                iterations: k,
                step: s,
                trace,
            });
        }
        x = next;
        k += 1;
    }
}
