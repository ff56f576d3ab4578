// Compares observed residual ratios with the predicted contraction factor
// `q(s)` across the admissible step window.

use vicontract::diagnostics::{default_step_grid, rate_experiment};
use vicontract::geometry::{ConvexSet, Vector};
use vicontract::linalg::Matrix;
use vicontract::operators::OperatorModel;
use vicontract::solvers::{Problem, SolverConfig};

pub fn run_example() -> vicontract::Result<()> {
    let matrix = Matrix::from_rows(&[vec![1.0, -1.0], vec![1.0, 1.0]])?;
    let op = OperatorModel::affine(matrix, Vector::new(vec![-3.0, -4.0])?)?;
    let problem = Problem::with_analytic_certificate(ConvexSet::whole_space(2)?, op)?;
    let grid = default_step_grid(&problem, 5)?;

    println!(
        "{:>8} {:>10} {:>10} {:>10}",
        "s", "q(s)", "observed", "margin"
    );
    for report in rate_experiment(&problem, &grid, &SolverConfig::default()) {
        let r = report?;
        println!(
            "{:>8.4} {:>10.4} {:>10.4} {:>10.4}",
            r.s, r.theoretical_q, r.empirical_q, r.margin
        );
        assert!(r.margin >= -0.05);
    }
    Ok(())
}

fn main() -> vicontract::Result<()> {
    run_example()
}
