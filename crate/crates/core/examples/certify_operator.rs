// Derives a certificate for an affine operator, confirms it by sampling,
// then shows that an overstated monotonicity modulus is caught.

use vicontract::geometry::{ConvexSet, Vector};
use vicontract::linalg::Matrix;
use vicontract::operators::{certify_by_sampling, CocoercivityCertificate, OperatorModel};

pub fn run_example() -> vicontract::Result<()> {
    let matrix = Matrix::from_rows(&[vec![2.0, 1.0], vec![-1.0, 3.0]])?;
    let op = OperatorModel::affine(matrix, Vector::new(vec![1.0, -1.0])?)?;
    let domain = ConvexSet::ball(Vector::zeros(2), 2.0)?;

    let cert = op.affine_certificate()?;
    println!("analytic certificate: {cert}");
    let report = certify_by_sampling(&op, &cert, &domain, 5000, 1, 10.0)?;
    println!(
        "  violations: {} / {}",
        report.cocoercivity_violations, report.pairs
    );
    assert!(report.is_consistent());

    let inflated = CocoercivityCertificate::new(0.0, 1.1 * cert.r(), cert.mu())?;
    let report = certify_by_sampling(&op, &inflated, &domain, 5000, 1, 10.0)?;
    println!(
        "inflated certificate {inflated}: {} violations, worst margin {:.3e}",
        report.cocoercivity_violations,
        report.worst_margin()
    );
    assert!(!report.is_consistent());
    Ok(())
}

fn main() -> vicontract::Result<()> {
    run_example()
}
