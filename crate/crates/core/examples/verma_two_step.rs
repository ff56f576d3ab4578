// Runs the two-step relaxed projection scheme under several relaxation
// schedules and compares its limits with the one-step solver.

use vicontract::geometry::{ConvexSet, Vector};
use vicontract::linalg::Matrix;
use vicontract::operators::{CocoercivityCertificate, OperatorModel};
use vicontract::solvers::{
    optimal_step, solve_projected_contraction, solve_verma, Problem, Schedule, SolverConfig,
};

pub fn run_example() -> vicontract::Result<()> {
    let set = ConvexSet::boxed(Vector::new(vec![-1.0, -1.0])?, Vector::new(vec![1.0, 1.0])?)?;
    let op = OperatorModel::affine(Matrix::diagonal(&[2.0, 3.0]), Vector::new(vec![-5.0, 1.0])?)?;
    // a relaxed certificate: gamma > 0 compensated by a larger r
    let cert = CocoercivityCertificate::new(0.1, 2.9, 3.0)?;
    let problem = Problem::new(set, op, cert)?;
    let config = SolverConfig::default();
    let u = solve_projected_contraction(&problem, &config)?.u;
    let s = optimal_step(&cert)?;

    for schedule in ["const:1,1", "const:0.5,0.5", "harmonic:4"] {
        let schedule: Schedule = schedule.parse()?;
        let sol = solve_verma(
            &problem,
            s,
            s,
            &schedule,
            &config.clone().with_max_iter(100_000),
        )?;
        println!(
            "{:<14} {:>6} iterations  x* = {}  |x* - y*| = {:.1e}  |x* - u| = {:.1e}",
            schedule.to_string(),
            sol.iterations,
            sol.x_limit,
            sol.limit_gap(),
            sol.x_limit.distance(&u)?
        );
        assert!(sol.x_limit.distance(&u)? <= 1e-6);
    }
    Ok(())
}

fn main() -> vicontract::Result<()> {
    run_example()
}
