// Starts the solver from many random points and checks that every run
// reaches the same limit, which also satisfies the VI by sampling.

use vicontract::diagnostics::{uniqueness_experiment, vi_gap_check};
use vicontract::geometry::{ConvexSet, Vector};
use vicontract::linalg::Matrix;
use vicontract::operators::OperatorModel;
use vicontract::solvers::{Problem, SolverConfig};

pub fn run_example() -> vicontract::Result<()> {
    let matrix = Matrix::from_rows(&[
        vec![4.0, 1.0, -0.5],
        vec![-1.0, 3.0, 0.5],
        vec![0.5, -0.5, 2.5],
    ])?;
    let op = OperatorModel::affine(matrix, Vector::new(vec![1.0, -2.0, 0.5])?)?;
    let problem = Problem::with_analytic_certificate(ConvexSet::simplex(3, 2.0)?, op)?;

    let report = uniqueness_experiment(&problem, 50, &SolverConfig::default(), 1e-6)?;
    println!(
        "{} starts, max pairwise distance {:.2e}, verdict {}",
        report.starts,
        report.max_pairwise_distance,
        report.verdict.as_str()
    );
    let u = &report.limits[0];
    let gap = vi_gap_check(&problem, u, 5000, 0)?;
    println!("u = {u}, sampled VI gap {gap:.2e}");
    Ok(())
}

fn main() -> vicontract::Result<()> {
    run_example()
}
