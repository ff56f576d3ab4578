use std::cmp::Ordering;

use rand::Rng;
use rand_distr::StandardNormal;

use super::vector::{dot, Vector};
use crate::error::{Error, Result};

/// Membership tolerance met by every closed-form projection below.
pub const SET_TOLERANCE: f64 = 1e-12;

/// Canonical closed convex subsets of `R^n` with closed-form projections.
///
/// Use the checked constructors; they enforce nonemptiness and matching
/// dimensions. Halfspace and hyperplane are `{x : <normal, x> <= offset}` and
/// `{x : <normal, x> = offset}`, the simplex is `{x : x_i >= 0, sum x_i = scale}`.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexSet {
    WholeSpace { dim: usize },
    Box { lower: Vector, upper: Vector },
    Ball { center: Vector, radius: f64 },
    Halfspace { normal: Vector, offset: f64 },
    Hyperplane { normal: Vector, offset: f64 },
    Simplex { dim: usize, scale: f64 },
}

impl ConvexSet {
    pub fn whole_space(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSet("dimension must be positive".into()));
        }
        Ok(Self::WholeSpace { dim })
    }

    pub fn boxed(lower: Vector, upper: Vector) -> Result<Self> {
        upper.check_dim(lower.dim())?;
        if let Some(i) = (0..lower.dim()).find(|&i| lower[i] > upper[i]) {
            return Err(Error::InvalidSet(format!(
                "box lower bound exceeds upper bound at coordinate {i}"
            )));
        }
        Ok(Self::Box { lower, upper })
    }

    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidSet(format!(
                "ball radius must be positive, got {radius}"
            )));
        }
        Ok(Self::Ball { center, radius })
    }

    pub fn halfspace(normal: Vector, offset: f64) -> Result<Self> {
        check_normal(&normal, offset)?;
        Ok(Self::Halfspace { normal, offset })
    }

    pub fn hyperplane(normal: Vector, offset: f64) -> Result<Self> {
        check_normal(&normal, offset)?;
        Ok(Self::Hyperplane { normal, offset })
    }

    pub fn simplex(dim: usize, scale: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSet("dimension must be positive".into()));
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidSet(format!(
                "simplex scale must be positive, got {scale}"
            )));
        }
        Ok(Self::Simplex { dim, scale })
    }

    /// Re-checks the constructor invariants, for sets built from raw variants.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::WholeSpace { dim } => Self::whole_space(*dim).map(drop),
            Self::Box { lower, upper } => Self::boxed(lower.clone(), upper.clone()).map(drop),
            Self::Ball { center, radius } => Self::ball(center.clone(), *radius).map(drop),
            Self::Halfspace { normal, offset } | Self::Hyperplane { normal, offset } => {
                check_normal(normal, *offset)
            }
            Self::Simplex { dim, scale } => Self::simplex(*dim, *scale).map(drop),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::WholeSpace { dim } | Self::Simplex { dim, .. } => *dim,
            Self::Box { lower, .. } => lower.dim(),
            Self::Ball { center, .. } => center.dim(),
            Self::Halfspace { normal, .. } | Self::Hyperplane { normal, .. } => normal.dim(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::WholeSpace { .. } => "whole_space",
            Self::Box { .. } => "box",
            Self::Ball { .. } => "ball",
            Self::Halfspace { .. } => "halfspace",
            Self::Hyperplane { .. } => "hyperplane",
            Self::Simplex { .. } => "simplex",
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(
            self,
            Self::Box { .. } | Self::Ball { .. } | Self::Simplex { .. }
        )
    }

    /// Largest violation of a defining constraint, as a Euclidean distance
    /// for the affine constraints. Nonpositive inside the set.
    pub fn violation(&self, x: &Vector) -> Result<f64> {
        x.check_dim(self.dim())?;
        let v = match self {
            Self::WholeSpace { .. } => 0.0,
            Self::Box { lower, upper } => (0..x.dim())
                .map(|i| (lower[i] - x[i]).max(x[i] - upper[i]))
                .fold(f64::NEG_INFINITY, f64::max),
            Self::Ball { center, radius } => x.distance(center)? - radius,
            Self::Halfspace { normal, offset } => {
                (dot(normal.as_slice(), x.as_slice()) - offset) / normal.norm()
            }
            Self::Hyperplane { normal, offset } => {
                (dot(normal.as_slice(), x.as_slice()) - offset).abs() / normal.norm()
            }
            Self::Simplex { scale, .. } => {
                let negativity = x
                    .as_slice()
                    .iter()
                    .map(|c| -c)
                    .fold(f64::NEG_INFINITY, f64::max);
                let sum: f64 = x.as_slice().iter().sum();
                negativity.max((sum - scale).abs())
            }
        };
        Ok(v)
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> Result<bool> {
        Ok(self.violation(x)? <= tol)
    }

    /// Euclidean projection onto the set.
    pub fn project(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.dim())?;
        let projected = match self {
            Self::WholeSpace { .. } => x.clone(),
            Self::Box { lower, upper } => Vector::from_raw(
                (0..x.dim())
                    .map(|i| x[i].clamp(lower[i], upper[i]))
                    .collect(),
            ),
            Self::Ball { center, radius } => {
                let offset = x.sub(center)?;
                let dist = offset.norm();
                if dist <= *radius {
                    x.clone()
                } else {
                    center.axpy(radius / dist, &offset)?
                }
            }
            Self::Halfspace { normal, offset } => {
                let excess = dot(normal.as_slice(), x.as_slice()) - offset;
                if excess <= 0.0 {
                    x.clone()
                } else {
                    x.axpy(-excess / normal.norm_squared(), normal)?
                }
            }
            Self::Hyperplane { normal, offset } => {
                let excess = dot(normal.as_slice(), x.as_slice()) - offset;
                x.axpy(-excess / normal.norm_squared(), normal)?
            }
            Self::Simplex { scale, .. } => project_simplex(x.as_slice(), *scale),
        };
        Ok(projected)
    }

    /// Draws a pseudo-random point of the set.
    ///
    /// Bounded sets are sampled uniformly. Unbounded sets get a Gaussian
    /// cloud of standard deviation `spread` around the projection of the
    /// origin, pushed back into the set by projection.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, spread: f64) -> Vector {
        let n = self.dim();
        match self {
            Self::Box { lower, upper } => Vector::from_raw(
                (0..n)
                    .map(|i| {
                        let t: f64 = rng.random();
                        lower[i] + t * (upper[i] - lower[i])
                    })
                    .collect(),
            ),
            Self::Ball { center, radius } => {
                let direction = gaussian(rng, n, 1.0);
                let len = direction.iter().map(|c| c * c).sum::<f64>().sqrt();
                let u: f64 = rng.random();
                let rho = radius * u.powf(1.0 / n as f64) / len.max(f64::MIN_POSITIVE);
                Vector::from_raw(
                    center
                        .as_slice()
                        .iter()
                        .zip(&direction)
                        .map(|(c, d)| c + rho * d)
                        .collect(),
                )
            }
            Self::Simplex { scale, .. } => {
                let mut cuts: Vec<f64> = (0..n - 1).map(|_| rng.random::<f64>()).collect();
                cuts.sort_by(f64::total_cmp);
                let mut prev = 0.0;
                let mut coords = Vec::with_capacity(n);
                for c in cuts.into_iter().chain(std::iter::once(1.0)) {
                    coords.push(scale * (c - prev));
                    prev = c;
                }
                Vector::from_raw(coords)
            }
            Self::WholeSpace { .. } | Self::Halfspace { .. } | Self::Hyperplane { .. } => {
                let anchor = self
                    .project(&Vector::zeros(n))
                    .expect("dimension matches by construction");
                let cloud = Vector::from_raw(
                    anchor
                        .as_slice()
                        .iter()
                        .zip(gaussian(rng, n, spread))
                        .map(|(a, g)| a + g)
                        .collect(),
                );
                self.project(&cloud)
                    .expect("dimension matches by construction")
            }
        }
    }
}

fn check_normal(normal: &Vector, offset: f64) -> Result<()> {
    if !offset.is_finite() {
        return Err(Error::InvalidSet("offset must be finite".into()));
    }
    if normal.norm() > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidSet("normal vector must be nonzero".into()))
    }
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R, n: usize, sd: f64) -> Vec<f64> {
    (0..n)
        .map(|_| sd * rng.sample::<f64, _>(StandardNormal))
        .collect()
}

/// Sort-and-threshold projection onto `{x >= 0, sum x = scale}`.
fn project_simplex(x: &[f64], scale: f64) -> Vector {
    let mut order: Vec<usize> = (0..x.len()).collect();
    // stable: equal coordinates keep index order
    order.sort_by(|&a, &b| x[b].partial_cmp(&x[a]).unwrap_or(Ordering::Equal));

    let mut cumulative = 0.0;
    let mut threshold = 0.0;
    for (j, &i) in order.iter().enumerate() {
        cumulative += x[i];
        let candidate = (cumulative - scale) / (j + 1) as f64;
        if x[i] - candidate > 0.0 {
            threshold = candidate;
        }
    }
    Vector::from_raw(x.iter().map(|c| (c - threshold).max(0.0)).collect())
}
