// Projects one point onto each supported set and checks the variational
// characterization `<x - P(x), y - P(x)> <= 0` by sampling.

use vicontract::geometry::{projection_gap, ConvexSet, Vector};

pub fn run_example() -> vicontract::Result<()> {
    let x = Vector::new(vec![2.0, -1.5])?;
    let sets = [
        ConvexSet::whole_space(2)?,
        ConvexSet::boxed(Vector::new(vec![0.0, 0.0])?, Vector::new(vec![1.0, 1.0])?)?,
        ConvexSet::ball(Vector::zeros(2), 1.0)?,
        ConvexSet::halfspace(Vector::new(vec![1.0, 1.0])?, 0.0)?,
        ConvexSet::hyperplane(Vector::new(vec![1.0, -1.0])?, 1.0)?,
        ConvexSet::simplex(2, 1.0)?,
    ];
    for set in &sets {
        let p = set.project(&x)?;
        let gap = projection_gap(set, &x, &p, 1000, 0)?;
        println!(
            "{:<12} P(x) = {p}  sampled gap = {gap:.3e}",
            set.kind_name()
        );
        assert!(set.contains(&p, 1e-9)?);
        assert!(gap >= -1e-9);
    }
    Ok(())
}

fn main() -> vicontract::Result<()> {
    run_example()
}
