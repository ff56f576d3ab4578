// Solves a variational inequality on the unit ball with the projected
// contraction `x <- P_C(x - s A x)` and prints the residual history.

use vicontract::geometry::{ConvexSet, Vector};
use vicontract::operators::OperatorModel;
use vicontract::solvers::{
    contraction_factor, solve_projected_contraction, step_bound, Problem, SolverConfig,
};

pub fn run_example() -> vicontract::Result<()> {
    let set = ConvexSet::ball(Vector::zeros(2), 1.0)?;
    let op = OperatorModel::rotation_scale(
        std::f64::consts::FRAC_PI_4,
        2f64.sqrt(),
        Vector::new(vec![-3.0, -4.0])?,
    )?;
    let problem = Problem::with_analytic_certificate(set, op)?;
    let cert = problem.certificate();
    println!("certificate {cert}, step window (0, {})", step_bound(cert)?);

    let config = SolverConfig::default().with_step(0.5);
    let sol = solve_projected_contraction(&problem, &config)?;
    println!("q(0.5) = {:.4}", contraction_factor(cert, 0.5)?);
    for r in sol.trace.records.iter().take(8) {
        println!("  iter {:>2}  residual {:.3e}", r.iter, r.residual);
    }
    println!("u = {} after {} iterations", sol.u, sol.iterations);
    assert!(sol.converged());
    Ok(())
}

fn main() -> vicontract::Result<()> {
    run_example()
}
