#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use vicontract::cli::ProblemFile;
use vicontract::geometry::{stream_rng, ConvexSet, Vector};
use vicontract::linalg::Matrix;
use vicontract::operators::{CocoercivityCertificate, OperatorModel};
use vicontract::solvers::Problem;

pub fn problems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("problems")
}

pub fn bundled_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(problems_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "toml"))
        .collect();
    files.sort();
    files
}

pub fn load(name: &str) -> Problem {
    ProblemFile::read(&problems_dir().join(name))
        .unwrap()
        .to_problem()
        .unwrap()
}

pub fn v(c: &[f64]) -> Vector {
    Vector::new(c.to_vec()).unwrap()
}

pub fn gaussian(rng: &mut ChaCha8Rng, n: usize, sd: f64) -> Vector {
    v(&(0..n)
        .map(|_| sd * rng.sample::<f64, _>(StandardNormal))
        .collect::<Vec<_>>())
}

/// `[[1,-1],[1,1]]`, strongly monotone with r = 1, μ = √2.
pub fn rotation_scale() -> Matrix {
    Matrix::from_rows(&[vec![1.0, -1.0], vec![1.0, 1.0]]).unwrap()
}

/// Diagonally dominant non-symmetric 5x5 matrix, positive definite symmetric part.
pub fn dominant5() -> Matrix {
    let mut rows = vec![vec![0.0; 5]; 5];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 3.0 + i as f64 * 0.5;
        row[(i + 1) % 5] = 1.0;
        row[(i + 3) % 5] = -0.5;
    }
    Matrix::from_rows(&rows).unwrap()
}

/// Every solvable problem the suite runs on: the bundled solvable files plus
/// programmatic ones with γ = 0 and γ > 0 certificates.
pub fn solvable_suite() -> Vec<(String, Problem)> {
    let mut out: Vec<(String, Problem)> = [
        "interval_identity.toml",
        "whole_space_shift.toml",
        "ball_shift.toml",
        "ball_rotation.toml",
        "box_diagonal_relaxed.toml",
        "simplex_relaxed.toml",
        "halfspace_affine.toml",
        "hyperplane_affine.toml",
    ]
    .iter()
    .map(|name| (name.to_string(), load(name)))
    .collect();

    let rotation = OperatorModel::affine(rotation_scale(), v(&[-3.0, -4.0])).unwrap();
    // <Ad, d> + γ|Ad|² = (1 + 2γ)|d|², so (0.25, 1.5, √2) holds with modulus 1
    let relaxed = CocoercivityCertificate::new(0.25, 1.5, 2f64.sqrt()).unwrap();
    out.push((
        "ball_rotation_relaxed".into(),
        Problem::new(
            ConvexSet::ball(Vector::zeros(2), 1.0).unwrap(),
            rotation,
            relaxed,
        )
        .unwrap(),
    ));

    let op = OperatorModel::affine(dominant5(), v(&[1.0, -2.0, 0.5, 3.0, -1.0])).unwrap();
    out.push((
        "simplex5_dominant".into(),
        Problem::with_analytic_certificate(ConvexSet::simplex(5, 2.0).unwrap(), op).unwrap(),
    ));
    out
}

/// A random instance of each set kind in dimension `n`.
pub fn random_sets(n: usize, seed: u64) -> Vec<ConvexSet> {
    let mut rng = stream_rng(seed, n as u64);
    let lower = gaussian(&mut rng, n, 2.0);
    let width: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 3.0).collect();
    let upper = v(&lower
        .as_slice()
        .iter()
        .zip(&width)
        .map(|(l, w)| l + w)
        .collect::<Vec<_>>());
    let center = gaussian(&mut rng, n, 2.0);
    let radius = 0.5 + 2.0 * rng.random::<f64>();
    let normal = gaussian(&mut rng, n, 1.0);
    let offset = rng.random::<f64>() * 2.0 - 1.0;
    let normal2 = gaussian(&mut rng, n, 1.0);
    vec![
        ConvexSet::whole_space(n).unwrap(),
        ConvexSet::boxed(lower, upper).unwrap(),
        ConvexSet::ball(center, radius).unwrap(),
        ConvexSet::halfspace(normal, offset).unwrap(),
        ConvexSet::hyperplane(normal2, -offset).unwrap(),
        ConvexSet::simplex(n, 0.5 + rng.random::<f64>() * 2.0).unwrap(),
    ]
}
