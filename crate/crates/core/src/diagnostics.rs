//! Experiments that check the uniqueness and rate claims on concrete problems.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{inner, stream_rng, Vector};
use crate::solvers::{
    contraction_factor, solve_projected_contraction, step_bound, Problem, SolverConfig,
};

/// Residual-ratio burn-in used by [`rate_experiment`].
pub const RATE_BURN_IN: usize = 5;

/// Standard deviation of start points drawn from unbounded sets.
const START_SPREAD: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Singleton,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Singleton => "singleton",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniquenessReport {
    pub starts: usize,
    /// Limits sorted lexicographically.
    pub limits: Vec<Vector>,
    pub max_pairwise_distance: f64,
    /// Final residuals, in start order.
    pub residuals: Vec<f64>,
    pub agreement_tol: f64,
    pub verdict: Verdict,
}

/// Solves from `starts` seeded random points of `C` and compares the limits.
///
/// Start `i` is drawn from stream `i` of `config.seed`. Any run that hits the
/// iteration budget makes the verdict inconclusive.
pub fn uniqueness_experiment(
    problem: &Problem,
    starts: usize,
    config: &SolverConfig,
    agreement_tol: f64,
) -> Result<UniquenessReport> {
    if starts < 2 {
        return Err(Error::InvalidConfig(format!(
            "need at least 2 starts, got {starts}"
        )));
    }
    problem.certificate().require_solvable()?;

    let runs = (0..starts)
        .into_par_iter()
        .map(|i| {
            let start = problem
                .set()
                .sample(&mut stream_rng(config.seed, i as u64), START_SPREAD);
            let cfg = SolverConfig {
                start: Some(start),
                ..config.clone()
            };
            solve_projected_contraction(problem, &cfg)
        })
        .collect::<Result<Vec<_>>>()?;

    let all_converged = runs.iter().all(|s| s.converged());
    let residuals: Vec<f64> = runs.iter().map(|s| s.residual).collect();
    let mut limits: Vec<Vector> = runs.into_iter().map(|s| s.u).collect();
    limits.sort_by(lexicographic);

    let mut max_pairwise_distance: f64 = 0.0;
    for (i, a) in limits.iter().enumerate() {
        for b in &limits[i + 1..] {
            max_pairwise_distance = max_pairwise_distance.max(a.distance(b)?);
        }
    }
    let verdict = if all_converged && max_pairwise_distance <= agreement_tol {
        Verdict::Singleton
    } else {
        Verdict::Inconclusive
    };
    Ok(UniquenessReport {
        starts,
        limits,
        max_pairwise_distance,
        residuals,
        agreement_tol,
        verdict,
    })
}

fn lexicographic(a: &Vector, b: &Vector) -> Ordering {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// `min <A u, v - u>` over `samples` pseudo-random `v ∈ C`.
pub fn vi_gap_check(problem: &Problem, u: &Vector, samples: usize, seed: u64) -> Result<f64> {
    u.check_dim(problem.dim())?;
    if samples == 0 {
        return Err(Error::InvalidConfig("samples must be positive".into()));
    }
    let au = problem.operator().evaluate(u)?;
    let spread = 1.0 + u.norm();
    let mut rng = stream_rng(seed, 0);
    let mut gap = f64::INFINITY;
    for _ in 0..samples {
        let v = problem.set().sample(&mut rng, spread);
        gap = gap.min(inner(&au, &v.sub(u)?)?);
    }
    Ok(gap)
}

/// Scale factor `c = (1 + sμ)/s` relating a fixed-point residual `ε` at step
/// `s` to the VI gap bound `-c ε` on problems of unit scale.
pub fn residual_gap_constant(s: f64, mu: f64) -> f64 {
    (1.0 + s * mu) / s
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub s: f64,
    pub theoretical_q: f64,
    /// Largest residual ratio after burn-in; 0 when the run finished before it.
    pub empirical_q: f64,
    /// `theoretical_q - empirical_q`.
    pub margin: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Compares observed residual decay against `q(s)` for each step in `s_grid`.
///
/// Steps outside the admissible window yield an error entry; the rest run.
pub fn rate_experiment(
    problem: &Problem,
    s_grid: &[f64],
    config: &SolverConfig,
) -> Vec<Result<RateReport>> {
    s_grid
        .iter()
        .map(|&s| {
            let theoretical_q = contraction_factor(problem.certificate(), s)?;
            let sol = solve_projected_contraction(problem, &config.clone().with_step(s))?;
            let empirical_q = sol.trace.max_residual_ratio(RATE_BURN_IN).unwrap_or(0.0);
            Ok(RateReport {
                s,
                theoretical_q,
                empirical_q,
                margin: theoretical_q - empirical_q,
                iterations: sol.iterations,
                converged: sol.converged(),
            })
        })
        .collect()
}

/// `count` evenly spaced steps strictly inside `(0, B)`.
pub fn default_step_grid(problem: &Problem, count: usize) -> Result<Vec<f64>> {
    let bound = step_bound(problem.certificate())?;
    Ok((1..=count)
        .map(|k| bound * k as f64 / (count + 1) as f64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ConvexSet;
    use crate::linalg::Matrix;
    use crate::operators::OperatorModel;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn interval_identity() -> Problem {
        Problem::with_analytic_certificate(
            ConvexSet::boxed(v(&[1.0]), v(&[2.0])).unwrap(),
            OperatorModel::affine(Matrix::identity(1), Vector::zeros(1)).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn interval_multistart_is_singleton() {
        let rep = uniqueness_experiment(&interval_identity(), 50, &SolverConfig::default(), 1e-8)
            .unwrap();
        assert_eq!(rep.verdict, Verdict::Singleton);
        assert!(rep.max_pairwise_distance <= 1e-8);
        assert_eq!(rep.limits.len(), 50);
    }

    #[test]
    fn whole_space_multistart_hits_target() {
        let c = v(&[2.0, -1.0, 0.5]);
        let p = Problem::with_analytic_certificate(
            ConvexSet::whole_space(3).unwrap(),
            OperatorModel::identity_shift(&c),
        )
        .unwrap();
        let rep = uniqueness_experiment(&p, 10, &SolverConfig::default(), 1e-8).unwrap();
        for u in &rep.limits {
            assert!(u.distance(&c).unwrap() < 1e-12);
        }
    }

    #[test]
    fn rotation_scale_on_ball_is_singleton() {
        let m = Matrix::from_rows(&[vec![1.0, -1.0], vec![1.0, 1.0]]).unwrap();
        let p = Problem::with_analytic_certificate(
            ConvexSet::ball(Vector::zeros(2), 1.0).unwrap(),
            OperatorModel::affine(m, v(&[-3.0, -4.0])).unwrap(),
        )
        .unwrap();
        let rep = uniqueness_experiment(&p, 50, &SolverConfig::default(), 1e-6).unwrap();
        assert_eq!(rep.verdict, Verdict::Singleton);
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let cfg = SolverConfig::default().with_step(0.01).with_max_iter(3);
        let rep = uniqueness_experiment(&interval_identity(), 5, &cfg, 1e-6).unwrap();
        assert_eq!(rep.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn needs_two_starts() {
        assert!(
            uniqueness_experiment(&interval_identity(), 1, &SolverConfig::default(), 1e-6).is_err()
        );
    }

    #[test]
    fn gap_examples() {
        let p = interval_identity();
        let gap = vi_gap_check(&p, &v(&[1.0]), 1000, 3).unwrap();
        assert!((0.0..1e-2).contains(&gap), "{gap}");
        // 1.5 * (1 - 1.5) at v = 1
        let gap = vi_gap_check(&p, &v(&[1.5]), 5000, 3).unwrap();
        assert!((-0.75..-0.74).contains(&gap), "{gap}");

        let c = v(&[0.2, 0.3]);
        let p = Problem::with_analytic_certificate(
            ConvexSet::ball(Vector::zeros(2), 1.0).unwrap(),
            OperatorModel::identity_shift(&c),
        )
        .unwrap();
        assert_eq!(vi_gap_check(&p, &c, 100, 0).unwrap(), 0.0);
    }

    #[test]
    fn identity_shift_rates() {
        let p = Problem::with_analytic_certificate(
            ConvexSet::whole_space(2).unwrap(),
            OperatorModel::identity_shift(&v(&[3.0, 4.0])),
        )
        .unwrap();
        let reps = rate_experiment(&p, &[1.0, 0.5, 3.0], &SolverConfig::default());
        let exact = reps[0].as_ref().unwrap();
        assert_eq!(exact.theoretical_q, 0.0);
        assert!(exact.iterations <= 2);
        let half = reps[1].as_ref().unwrap();
        assert_eq!(half.theoretical_q, 0.5);
        assert!(half.empirical_q <= 0.55);
        assert!((half.empirical_q - 0.5).abs() < 1e-6);
        assert!(reps[2].is_err());
    }

    #[test]
    fn default_grid_is_inside_window() {
        let grid = default_step_grid(&interval_identity(), 5).unwrap();
        assert_eq!(grid.len(), 5);
        assert!(grid.iter().all(|&s| s > 0.0 && s < 2.0));
    }
}
