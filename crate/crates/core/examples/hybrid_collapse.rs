// The hybrid scheme `x <- (1 - a) x + a S(P_C(x - sAx))` with `S` a
// projection: it returns the VI solution when that lies in Fix(S), and
// reports an empty common-element set otherwise.

use vicontract::geometry::{ConvexSet, Vector};
use vicontract::operators::OperatorModel;
use vicontract::solvers::{solve_hybrid_demo, Problem, SolverConfig};

pub fn run_example() -> vicontract::Result<()> {
    let set = ConvexSet::ball(Vector::zeros(2), 1.0)?;
    let op = OperatorModel::identity_shift(&Vector::new(vec![3.0, 4.0])?);
    let problem = Problem::with_analytic_certificate(set, op)?;
    let config = SolverConfig::default();

    let fix_sets = [
        ("identity", ConvexSet::whole_space(2)?),
        (
            "ball around u",
            ConvexSet::ball(Vector::new(vec![0.5, 0.5])?, 1.0)?,
        ),
        (
            "ball away from u",
            ConvexSet::ball(Vector::new(vec![-5.0, 0.0])?, 1.0)?,
        ),
    ];
    for (label, fix) in &fix_sets {
        let report = solve_hybrid_demo(&problem, fix, 0.5, &config)?;
        println!(
            "{label:<17} limit {}  VI solution {}  -> {:?}",
            report.limit.u, report.vi_solution, report.status
        );
    }
    Ok(())
}

fn main() -> vicontract::Result<()> {
    run_example()
}
