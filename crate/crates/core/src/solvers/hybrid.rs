use super::contraction::solve_projected_contraction;
use super::trace::{IterationRecord, IterationTrace, Solution, Status};
use super::{at_iteration, forward_backward, resolve_step, Problem, SolverConfig};
use crate::error::{Error, Result};
use crate::geometry::{ConvexSet, Vector};

/// Membership slack used when checking `u ∈ Fix(S)`.
const FIX_SET_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HybridStatus {
    /// The VI solution is a fixed point of `S`; the hybrid limit is that solution.
    CommonElement,
    /// The VI solution lies outside `Fix(S)`, so no common element exists.
    CommonElementSetEmpty,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HybridReport {
    /// Where the hybrid sequence went.
    pub limit: Solution,
    /// The unique VI solution from the plain solver.
    pub vi_solution: Vector,
    pub status: HybridStatus,
}

/// Mann-type hybrid `x_{n+1} = α x_n + (1 - α) S(P_C(x_n - s A x_n))` with
/// `S` the projection onto `fix_set`, so `Fix(S) = fix_set`.
///
/// The search for a common element of `Fix(S)` and `VI(C, A)` degenerates:
/// the latter is a single point `u`, and the hybrid either returns `u` or
/// nothing.
pub fn solve_hybrid_demo(
    problem: &Problem,
    fix_set: &ConvexSet,
    alpha: f64,
    config: &SolverConfig,
) -> Result<HybridReport> {
    problem.certificate().require_solvable()?;
    config.validate()?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    fix_set.validate()?;
    if fix_set.dim() != problem.dim() {
        return Err(Error::DimensionMismatch {
            expected: problem.dim(),
            found: fix_set.dim(),
        });
    }
    let s = resolve_step(problem.certificate(), config.step)?;
    let plain = solve_projected_contraction(problem, config)?;

    let mut x = config.start_point(problem.set())?;
    let mut trace = IterationTrace::new();
    let mut k = 0;
    let limit = loop {
        let image = fix_set.project(&forward_backward(problem, s, &x).map_err(at_iteration(k))?)?;
        if !image.is_finite() {
            return Err(Error::NonFiniteIterate { iteration: k });
        }
        let residual = x.distance(&image)?;
        let done = residual <= config.tol;
        let last = done || k == config.max_iter;
        let next = if last {
            x.clone()
        } else {
            x.lerp(1.0 - alpha, &image)?
        };
        trace.records.push(IterationRecord {
            iter: k,
            residual,
            step_len: x.distance(&next)?,
            point: config.record_points.then(|| x.clone()),
        });
        if last {
            trace.status = if done {
                Status::Converged
            } else {
                Status::MaxIter
            };
            break Solution {
                u: x,
                residual,
                iterations: k,
                step: s,
                trace,
            };
        }
        x = next;
        k += 1;
    };

    let status = if fix_set.contains(&plain.u, FIX_SET_TOLERANCE)? {
        HybridStatus::CommonElement
    } else {
        HybridStatus::CommonElementSetEmpty
    };
    Ok(HybridReport {
        limit,
        vi_solution: plain.u,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::operators::OperatorModel;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn rotation_problem() -> Problem {
        let m = Matrix::from_rows(&[vec![1.0, -1.0], vec![1.0, 1.0]]).unwrap();
        Problem::with_analytic_certificate(
            ConvexSet::ball(Vector::zeros(2), 1.0).unwrap(),
            OperatorModel::affine(m, v(&[-3.0, -4.0])).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn identity_map_reproduces_plain_solver() {
        let p = rotation_problem();
        let cfg = SolverConfig::default();
        let rep = solve_hybrid_demo(&p, &ConvexSet::whole_space(2).unwrap(), 0.5, &cfg).unwrap();
        assert_eq!(rep.status, HybridStatus::CommonElement);
        assert!(rep.limit.u.distance(&rep.vi_solution).unwrap() <= 10.0 * cfg.tol);
    }

    #[test]
    fn ball_around_solution_keeps_it() {
        let p = rotation_problem();
        let cfg = SolverConfig::default();
        let u = solve_projected_contraction(&p, &cfg).unwrap().u;
        let fix = ConvexSet::ball(u.clone(), 5.0).unwrap();
        let rep = solve_hybrid_demo(&p, &fix, 0.3, &cfg).unwrap();
        assert_eq!(rep.status, HybridStatus::CommonElement);
        assert!(rep.limit.u.distance(&u).unwrap() <= 10.0 * cfg.tol);
    }

    #[test]
    fn distant_ball_has_no_common_element() {
        let p = rotation_problem();
        let cfg = SolverConfig::default();
        let u = solve_projected_contraction(&p, &cfg).unwrap().u;
        let fix = ConvexSet::ball(u.add(&v(&[10.0, 0.0])).unwrap(), 1.0).unwrap();
        let rep = solve_hybrid_demo(&p, &fix, 0.5, &cfg).unwrap();
        assert_eq!(rep.status, HybridStatus::CommonElementSetEmpty);
        assert!(rep.limit.converged());
        assert!(fix.contains(&rep.limit.u, 1e-9).unwrap());
        assert!(rep.limit.u.distance(&u).unwrap() > 8.0);
    }

    #[test]
    fn alpha_must_be_interior() {
        let p = rotation_problem();
        let whole = ConvexSet::whole_space(2).unwrap();
        for alpha in [0.0, 1.0, -0.5, f64::NAN] {
            assert!(solve_hybrid_demo(&p, &whole, alpha, &SolverConfig::default()).is_err());
        }
    }
}
