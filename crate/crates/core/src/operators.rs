//! The mapping `A` of the variational inequality and its (γ, r, μ) certificates.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{inner, stream_rng, ConvexSet, Vector};
use crate::linalg::{singular_values, symmetric_eigen, Matrix};

/// Host-supplied evaluation procedure. Must be deterministic and thread safe.
pub type EvalFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// The operator `A : C -> R^n`.
#[derive(Clone)]
pub enum OperatorModel {
    /// `A(x) = M x + b`.
    Affine {
        matrix: Matrix,
        shift: Vector,
    },
    External {
        eval: EvalFn,
        dim: usize,
    },
}

impl fmt::Debug for OperatorModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Affine { matrix, shift } => f
                .debug_struct("Affine")
                .field("matrix", matrix)
                .field("shift", shift)
                .finish(),
            Self::External { dim, .. } => f.debug_struct("External").field("dim", dim).finish(),
        }
    }
}

impl OperatorModel {
    pub fn affine(matrix: Matrix, shift: Vector) -> Result<Self> {
        shift.check_dim(matrix.order())?;
        Ok(Self::Affine { matrix, shift })
    }

    /// `A(x) = x - c`, the VI of which over `C` is the projection of `c`.
    pub fn identity_shift(c: &Vector) -> Self {
        Self::Affine {
            matrix: Matrix::identity(c.dim()),
            shift: c.scale(-1.0),
        }
    }

    /// Planar `A(x) = scale * R(theta) x + shift`.
    pub fn rotation_scale(theta: f64, scale: f64, shift: Vector) -> Result<Self> {
        let (s, c) = theta.sin_cos();
        let matrix = Matrix::from_row_major(2, vec![scale * c, -scale * s, scale * s, scale * c])?;
        Self::affine(matrix, shift)
    }

    pub fn external<F>(dim: usize, eval: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        if dim == 0 {
            return Err(Error::InvalidOperator("dimension must be positive".into()));
        }
        Ok(Self::External {
            eval: Arc::new(eval),
            dim,
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Affine { matrix, .. } => matrix.order(),
            Self::External { dim, .. } => *dim,
        }
    }

    pub fn evaluate(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.dim())?;
        match self {
            Self::Affine { matrix, shift } => matrix.mul_vec(x)?.add(shift),
            Self::External { eval, dim } => {
                let out = eval(x.as_slice());
                if out.len() != *dim {
                    return Err(Error::DimensionMismatch {
                        expected: *dim,
                        found: out.len(),
                    });
                }
                Vector::new(out)
            }
        }
    }

    /// Analytic certificate of an affine operator, see [`affine_certificate`].
    pub fn affine_certificate(&self) -> Result<CocoercivityCertificate> {
        match self {
            Self::Affine { matrix, .. } => affine_certificate(matrix),
            Self::External { .. } => Err(Error::InvalidOperator(
                "analytic certificates exist only for affine operators".into(),
            )),
        }
    }
}

/// Constants `(γ, r, μ)` of a relaxed (γ, r)-cocoercive, μ-Lipschitz operator.
///
/// `r` may be nonpositive only for certificates derived from an affine
/// operator whose symmetric part is not positive definite; those are never
/// solvable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CocoercivityCertificate {
    gamma: f64,
    r: f64,
    mu: f64,
}

impl CocoercivityCertificate {
    pub fn new(gamma: f64, r: f64, mu: f64) -> Result<Self> {
        if !(gamma.is_finite() && r.is_finite() && mu.is_finite()) {
            return Err(Error::InvalidCertificate("constants must be finite".into()));
        }
        if gamma < 0.0 {
            return Err(Error::InvalidCertificate(format!(
                "gamma must be >= 0, got {gamma}"
            )));
        }
        if r <= 0.0 {
            return Err(Error::InvalidCertificate(format!("r must be > 0, got {r}")));
        }
        if mu <= 0.0 {
            return Err(Error::InvalidCertificate(format!(
                "mu must be > 0, got {mu}"
            )));
        }
        Ok(Self { gamma, r, mu })
    }

    /// Strongly monotone certificate, `γ = 0`.
    pub fn strongly_monotone(r: f64, mu: f64) -> Result<Self> {
        Self::new(0.0, r, mu)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `m = r - γ μ²`, the strong monotonicity modulus implied by the pair of
    /// inequalities.
    pub fn effective_modulus(&self) -> f64 {
        self.r - self.gamma * self.mu * self.mu
    }

    pub fn is_solvable(&self) -> bool {
        self.r > 0.0 && self.effective_modulus() > 0.0
    }

    pub fn require_solvable(&self) -> Result<()> {
        if self.is_solvable() {
            Ok(())
        } else {
            Err(Error::Unsolvable {
                r: self.r,
                relaxation: self.gamma * self.mu * self.mu,
                modulus: self.effective_modulus(),
            })
        }
    }

    /// The γ = 0 certificate with the same effective modulus.
    pub fn collapsed(&self) -> Result<Self> {
        self.require_solvable()?;
        Self::new(0.0, self.effective_modulus(), self.mu)
    }
}

impl fmt::Display for CocoercivityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(gamma={}, r={}, mu={})", self.gamma, self.r, self.mu)
    }
}

/// `μ = σ_max(M)`, `r = λ_min((M + Mᵀ)/2)`, `γ = 0`.
///
/// When `λ_min <= 0` the returned certificate carries it as `r` and reports
/// itself unsolvable.
pub fn affine_certificate(matrix: &Matrix) -> Result<CocoercivityCertificate> {
    let (mu, _) = singular_values(matrix).max();
    if mu <= 0.0 {
        return Err(Error::InvalidCertificate(
            "zero matrix has Lipschitz constant 0; need mu > 0".into(),
        ));
    }
    let (r, _) = symmetric_eigen(&matrix.symmetric_part()).min();
    Ok(CocoercivityCertificate { gamma: 0.0, r, mu })
}

/// Outcome of [`certify_by_sampling`]. Zero violations means the operator is
/// consistent with the certificate on the sampled pairs, not that it holds.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingReport {
    pub pairs: usize,
    pub lipschitz_violations: usize,
    pub cocoercivity_violations: usize,
    /// Violations of `<Ax-Ay, x-y> >= (r - γμ²)||x-y||²`.
    pub strong_monotonicity_violations: usize,
    /// `min (μ - ||Ax-Ay|| / ||x-y||)`.
    pub worst_lipschitz_margin: f64,
    /// `min (<Ax-Ay,x-y> + γ||Ax-Ay||² - r||x-y||²) / ||x-y||²`.
    pub worst_cocoercivity_margin: f64,
}

impl SamplingReport {
    pub fn worst_margin(&self) -> f64 {
        self.worst_lipschitz_margin
            .min(self.worst_cocoercivity_margin)
    }

    pub fn is_consistent(&self) -> bool {
        self.lipschitz_violations == 0 && self.cocoercivity_violations == 0
    }
}

/// Searches for pairs `x, y` in `domain` violating the Lipschitz bound or the
/// relaxed cocoercivity inequality, each with slack `1e-9 (1 + ||x-y||²)`.
///
/// For affine operators, pairs along the extreme eigenvectors of the
/// symmetric part and the top right singular vector are added to the random
/// ones, so an inflated `r` or deflated `μ` is caught. Unbounded domains are
/// sampled with spread `spread`.
pub fn certify_by_sampling(
    op: &OperatorModel,
    cert: &CocoercivityCertificate,
    domain: &ConvexSet,
    samples: usize,
    seed: u64,
    spread: f64,
) -> Result<SamplingReport> {
    if samples == 0 {
        return Err(Error::InvalidConfig("samples must be positive".into()));
    }
    if domain.dim() != op.dim() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            found: domain.dim(),
        });
    }

    let mut report = SamplingReport {
        pairs: 0,
        lipschitz_violations: 0,
        cocoercivity_violations: 0,
        strong_monotonicity_violations: 0,
        worst_lipschitz_margin: f64::INFINITY,
        worst_cocoercivity_margin: f64::INFINITY,
    };

    for index in 0..samples {
        let mut rng = stream_rng(seed, index as u64);
        let x = domain.sample(&mut rng, spread);
        let y = domain.sample(&mut rng, spread);
        check_pair(op, cert, &x, &y, &mut report)?;
    }

    if let OperatorModel::Affine { matrix, .. } = op {
        let base = domain.sample(&mut stream_rng(seed, samples as u64), spread);
        let sym = symmetric_eigen(&matrix.symmetric_part());
        let sv = singular_values(matrix);
        for direction in [sym.min().1, sym.max().1, sv.max().1] {
            let d = Vector::from_raw(direction.to_vec());
            for length in [1e-3, 1.0] {
                let y = base.axpy(length, &d)?;
                check_pair(op, cert, &base, &y, &mut report)?;
            }
        }
    }
    Ok(report)
}

fn check_pair(
    op: &OperatorModel,
    cert: &CocoercivityCertificate,
    x: &Vector,
    y: &Vector,
    report: &mut SamplingReport,
) -> Result<()> {
    let dx = x.sub(y)?;
    let dist2 = dx.norm_squared();
    if dist2 == 0.0 {
        return Ok(());
    }
    let da = op.evaluate(x)?.sub(&op.evaluate(y)?)?;
    let slack = 1e-9 * (1.0 + dist2);
    let da_norm = da.norm();
    let da2 = da.norm_squared();
    let pairing = inner(&da, &dx)?;

    report.pairs += 1;
    if da_norm > cert.mu * dist2.sqrt() + slack {
        report.lipschitz_violations += 1;
    }
    let cocoercive_excess = pairing + cert.gamma * da2 - cert.r * dist2;
    if cocoercive_excess < -slack {
        report.cocoercivity_violations += 1;
    }
    if pairing < cert.effective_modulus() * dist2 - slack {
        report.strong_monotonicity_violations += 1;
    }
    report.worst_lipschitz_margin = report
        .worst_lipschitz_margin
        .min(cert.mu - da_norm / dist2.sqrt());
    report.worst_cocoercivity_margin = report
        .worst_cocoercivity_margin
        .min(cocoercive_excess / dist2);
    Ok(())
}
