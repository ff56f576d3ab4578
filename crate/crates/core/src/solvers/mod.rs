//! Fixed-point solvers for `VI(C, A)`: find `u ∈ C` with `<Au, v - u> >= 0`
//! for every `v ∈ C`.
//!
//! Every solver here relies on the equivalence `u ∈ VI(C, A)` iff
//! `u = P_C(u - s A u)` for any `s > 0`, and on the fact that when `A` is
//! relaxed (γ, r)-cocoercive and μ-Lipschitz with `r > γμ²`, the map
//! `T = P_C(I - sA)` is a contraction for `0 < s < 2(r - γμ²)/μ²`:
//!
//! ```text
//! ||Tx - Ty||² <= (1 - sμ² (B - s)) ||x - y||²,   B = 2(r - γμ²)/μ²
//! ```

mod contraction;
mod hybrid;
mod schedule;
mod trace;
mod verma;

pub use contraction::solve_projected_contraction;
pub use hybrid::{solve_hybrid_demo, HybridReport, HybridStatus};
pub use schedule::Schedule;
pub use trace::{IterationRecord, IterationTrace, Solution, Status};
pub use verma::{solve_verma, VermaSolution};

use crate::error::{Error, Result};
use crate::geometry::{ConvexSet, Vector};
use crate::operators::{CocoercivityCertificate, OperatorModel};

/// `VI(C, A)` together with the declared constants of `A`.
#[derive(Debug, Clone)]
pub struct Problem {
    set: ConvexSet,
    op: OperatorModel,
    cert: CocoercivityCertificate,
}

impl Problem {
    pub fn new(set: ConvexSet, op: OperatorModel, cert: CocoercivityCertificate) -> Result<Self> {
        set.validate()?;
        if set.dim() != op.dim() {
            return Err(Error::DimensionMismatch {
                expected: set.dim(),
                found: op.dim(),
            });
        }
        Ok(Self { set, op, cert })
    }

    /// Affine problem certified by [`OperatorModel::affine_certificate`].
    pub fn with_analytic_certificate(set: ConvexSet, op: OperatorModel) -> Result<Self> {
        let cert = op.affine_certificate()?;
        Self::new(set, op, cert)
    }

    pub fn set(&self) -> &ConvexSet {
        &self.set
    }

    pub fn operator(&self) -> &OperatorModel {
        &self.op
    }

    pub fn certificate(&self) -> &CocoercivityCertificate {
        &self.cert
    }

    pub fn dim(&self) -> usize {
        self.set.dim()
    }

    /// Same set and operator under another certificate.
    pub fn with_certificate(&self, cert: CocoercivityCertificate) -> Self {
        Self {
            set: self.set.clone(),
            op: self.op.clone(),
            cert,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSize {
    /// Resolves to [`optimal_step`].
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub step: StepSize,
    /// Termination threshold on the fixed-point residual.
    pub tol: f64,
    pub max_iter: usize,
    pub record_points: bool,
    pub seed: u64,
    /// Starting point; projected onto `C`. Defaults to `P_C(0)`.
    pub start: Option<Vector>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            step: StepSize::Auto,
            tol: 1e-10,
            max_iter: 10_000,
            record_points: false,
            seed: 0,
            start: None,
        }
    }
}

impl SolverConfig {
    pub fn with_step(mut self, step: f64) -> Self {
        self.step = StepSize::Fixed(step);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_start(mut self, start: Vector) -> Self {
        self.start = Some(start);
        self
    }

    pub fn recording_points(mut self) -> Self {
        self.record_points = true;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be positive".into()));
        }
        Ok(())
    }

    pub(crate) fn start_point(&self, set: &ConvexSet) -> Result<Vector> {
        match &self.start {
            Some(x) => set.project(x),
            None => set.project(&Vector::zeros(set.dim())),
        }
    }
}

/// `B = 2(r - γμ²)/μ²`, the supremum of admissible step sizes.
pub fn step_bound(cert: &CocoercivityCertificate) -> Result<f64> {
    cert.require_solvable()?;
    let mu2 = cert.mu() * cert.mu();
    Ok(2.0 * cert.effective_modulus() / mu2)
}

/// Checks `0 < s < B`.
pub fn check_step(cert: &CocoercivityCertificate, s: f64) -> Result<()> {
    let bound = step_bound(cert)?;
    if s.is_finite() && s > 0.0 && s < bound {
        Ok(())
    } else {
        Err(Error::StepOutOfWindow { step: s, bound })
    }
}

/// Lipschitz constant `q(s) = sqrt(1 - sμ²(B - s))` of `P_C(I - sA)`.
///
/// Clamped at zero when a certificate declares `r - γμ² > μ`, which no
/// operator can satisfy but which would otherwise make `q²` negative.
pub fn contraction_factor(cert: &CocoercivityCertificate, s: f64) -> Result<f64> {
    check_step(cert, s)?;
    let bound = step_bound(cert)?;
    let q2 = 1.0 - s * cert.mu() * cert.mu() * (bound - s);
    Ok(q2.max(0.0).sqrt())
}

/// `s* = (r - γμ²)/μ²`, the vertex of `q(s)²`.
pub fn optimal_step(cert: &CocoercivityCertificate) -> Result<f64> {
    cert.require_solvable()?;
    Ok(cert.effective_modulus() / (cert.mu() * cert.mu()))
}

pub fn resolve_step(cert: &CocoercivityCertificate, step: StepSize) -> Result<f64> {
    match step {
        StepSize::Auto => optimal_step(cert),
        StepSize::Fixed(s) => {
            check_step(cert, s)?;
            Ok(s)
        }
    }
}

/// `||x - P_C(x - s A x)||`, zero exactly at solutions of `VI(C, A)`.
pub fn fixed_point_residual(problem: &Problem, s: f64, x: &Vector) -> Result<f64> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "step must be positive, got {s}"
        )));
    }
    let image = forward_backward(problem, s, x)?;
    x.distance(&image)
}

/// `P_C(x - s A x)`.
pub(crate) fn forward_backward(problem: &Problem, s: f64, x: &Vector) -> Result<Vector> {
    let ax = problem.op.evaluate(x)?;
    problem.set.project(&x.axpy(-s, &ax)?)
}

/// Maps operator output errors onto the iteration that produced them.
pub(crate) fn at_iteration(iteration: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::NonFinite { .. } => Error::NonFiniteIterate { iteration },
        other => other,
    }
}
