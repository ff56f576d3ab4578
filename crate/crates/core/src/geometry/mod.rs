//! Vectors, inner products and Euclidean projections onto canonical convex sets.

mod set;
mod vector;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use set::{ConvexSet, SET_TOLERANCE};
pub use vector::{inner, Vector};

use crate::error::{Error, Result};

/// Deterministic generator for the `stream`-th draw sequence of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Minimum of `<x - u, u - y>` over `samples` pseudo-random `y` in `set`.
///
/// Nonnegative (up to rounding) exactly when `u` is the projection of `x`.
pub fn projection_gap(
    set: &ConvexSet,
    x: &Vector,
    u: &Vector,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    x.check_dim(set.dim())?;
    u.check_dim(set.dim())?;
    if samples == 0 {
        return Err(Error::InvalidConfig("samples must be positive".into()));
    }
    let normal = x.sub(u)?;
    let spread = 1.0 + u.norm() + normal.norm();
    let mut rng = stream_rng(seed, 0);
    let gap = (0..samples)
        .map(|_| {
            let y = set.sample(&mut rng, spread);
            inner(&normal, &u.sub(&y).expect("same dimension")).expect("same dimension")
        })
        .fold(f64::INFINITY, f64::min);
    Ok(gap)
}
