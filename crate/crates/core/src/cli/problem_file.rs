//! TOML problem files.
//!
//! ```toml
//! dim = 2
//!
//! [set]
//! kind = "ball"            # whole_space | box | ball | halfspace | hyperplane | simplex
//! center = [0.0, 0.0]
//! radius = 1.0
//!
//! [operator]
//! kind = "affine"          # affine | identity_shift | rotation_scale
//! matrix = [1.0, -1.0, 1.0, 1.0]   # row-major, dim * dim entries
//! shift = [-3.0, -4.0]
//!
//! [certificate]
//! kind = "auto"            # auto | declared (with gamma, r, mu)
//!
//! [solver]                 # optional
//! step = "auto"            # or a number in (0, 2(r - gamma mu^2)/mu^2)
//! tol = 1e-10
//! max_iter = 10000
//! seed = 0
//!
//! [fix_set]                # optional, used by `hybrid`; same keys as [set]
//! kind = "whole_space"
//! ```
//!
//! Unknown keys are rejected.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::geometry::{ConvexSet, Vector};
use crate::linalg::Matrix;
use crate::operators::{CocoercivityCertificate, OperatorModel};
use crate::solvers::{Problem, SolverConfig, StepSize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub dim: usize,
    pub set: SetSpec,
    pub operator: OperatorSpec,
    pub certificate: CertificateSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fix_set: Option<SetSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    WholeSpace {},
    Box { lower: Vec<f64>, upper: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
    Halfspace { normal: Vec<f64>, offset: f64 },
    Hyperplane { normal: Vec<f64>, offset: f64 },
    Simplex { scale: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OperatorSpec {
    Affine {
        matrix: Vec<f64>,
        shift: Vec<f64>,
    },
    /// `A(x) = x - c`.
    IdentityShift {
        c: Vec<f64>,
    },
    /// Planar `A(x) = scale R(theta) x + shift`.
    RotationScale {
        theta: f64,
        scale: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shift: Option<Vec<f64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CertificateSpec {
    Auto {},
    Declared { gamma: f64, r: f64, mu: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    #[serde(default)]
    pub step: StepSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// `"auto"` or a number.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum StepSpec {
    #[default]
    Auto,
    Fixed(f64),
}

impl Serialize for StepSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            StepSpec::Auto => serializer.serialize_str("auto"),
            StepSpec::Fixed(s) => serializer.serialize_f64(*s),
        }
    }
}

impl<'de> Deserialize<'de> for StepSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Number(s) => Ok(StepSpec::Fixed(s)),
            Raw::Text(t) if t == "auto" => Ok(StepSpec::Auto),
            Raw::Text(t) => Err(de::Error::custom(format!(
                "step must be \"auto\" or a number, got {t:?}"
            ))),
        }
    }
}

/// Problem file error addressed by line (syntax) or by field path (content).
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemFileError {
    Io { path: String, message: String },
    Syntax(String),
    Field { field: String, message: String },
}

impl fmt::Display for ProblemFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io { path, message } => write!(f, "cannot read {path}: {message}"),
            Self::Syntax(message) => write!(f, "problem file parse error: {}", message.trim_end()),
            Self::Field { field, message } => write!(f, "problem file field `{field}`: {message}"),
        }
    }
}

impl std::error::Error for ProblemFileError {}

fn field_err(field: &str, message: impl fmt::Display) -> ProblemFileError {
    ProblemFileError::Field {
        field: field.to_string(),
        message: message.to_string(),
    }
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, ProblemFileError> {
        toml::from_str(text).map_err(|e| ProblemFileError::Syntax(e.to_string()))
    }

    pub fn read(path: &std::path::Path) -> Result<Self, ProblemFileError> {
        let text = std::fs::read_to_string(path).map_err(|e| ProblemFileError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// Same problem with every default written out.
    pub fn canonical(&self) -> Self {
        let defaults = SolverConfig::default();
        let solver = self.solver.clone().unwrap_or(SolverSpec {
            step: StepSpec::Auto,
            tol: None,
            max_iter: None,
            seed: None,
        });
        let operator = match &self.operator {
            OperatorSpec::RotationScale {
                theta,
                scale,
                shift,
            } => OperatorSpec::RotationScale {
                theta: *theta,
                scale: *scale,
                shift: Some(shift.clone().unwrap_or_else(|| vec![0.0; self.dim])),
            },
            other => other.clone(),
        };
        Self {
            dim: self.dim,
            set: self.set.clone(),
            operator,
            certificate: self.certificate.clone(),
            solver: Some(SolverSpec {
                step: solver.step,
                tol: Some(solver.tol.unwrap_or(defaults.tol)),
                max_iter: Some(solver.max_iter.unwrap_or(defaults.max_iter)),
                seed: Some(solver.seed.unwrap_or(defaults.seed)),
            }),
            fix_set: Some(self.fix_set.clone().unwrap_or(SetSpec::WholeSpace {})),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("problem files always serialize")
    }

    pub fn to_problem(&self) -> Result<Problem, ProblemFileError> {
        if self.dim == 0 {
            return Err(field_err("dim", "must be positive"));
        }
        let set = build_set(&self.set, self.dim, "set")?;
        let op = self.build_operator()?;
        let cert = match &self.certificate {
            CertificateSpec::Auto {} => op
                .affine_certificate()
                .map_err(|e| field_err("certificate", e))?,
            CertificateSpec::Declared { gamma, r, mu } => {
                CocoercivityCertificate::new(*gamma, *r, *mu)
                    .map_err(|e| field_err("certificate", e))?
            }
        };
        Problem::new(set, op, cert).map_err(|e| field_err("operator", e))
    }

    pub fn fix_set(&self) -> Result<ConvexSet, ProblemFileError> {
        match &self.fix_set {
            Some(spec) => build_set(spec, self.dim, "fix_set"),
            None => Ok(ConvexSet::whole_space(self.dim).expect("dim checked positive")),
        }
    }

    /// Solver settings from the `[solver]` block, defaults elsewhere.
    pub fn solver_config(&self) -> Result<SolverConfig, ProblemFileError> {
        let mut cfg = SolverConfig::default();
        if let Some(spec) = &self.solver {
            cfg.step = match spec.step {
                StepSpec::Auto => StepSize::Auto,
                StepSpec::Fixed(s) => StepSize::Fixed(s),
            };
            if let Some(tol) = spec.tol {
                if !(tol.is_finite() && tol > 0.0) {
                    return Err(field_err("solver.tol", "must be positive"));
                }
                cfg.tol = tol;
            }
            if let Some(max_iter) = spec.max_iter {
                if max_iter == 0 {
                    return Err(field_err("solver.max_iter", "must be positive"));
                }
                cfg.max_iter = max_iter;
            }
            if let Some(seed) = spec.seed {
                cfg.seed = seed;
            }
        }
        Ok(cfg)
    }

    fn build_operator(&self) -> Result<OperatorModel, ProblemFileError> {
        let n = self.dim;
        match &self.operator {
            OperatorSpec::Affine { matrix, shift } => {
                if matrix.len() != n * n {
                    return Err(field_err(
                        "operator.matrix",
                        format!("expected {} row-major entries, got {}", n * n, matrix.len()),
                    ));
                }
                let m = Matrix::from_row_major(n, matrix.clone())
                    .map_err(|e| field_err("operator.matrix", e))?;
                let b = vector(shift, n, "operator.shift")?;
                OperatorModel::affine(m, b).map_err(|e| field_err("operator", e))
            }
            OperatorSpec::IdentityShift { c } => {
                Ok(OperatorModel::identity_shift(&vector(c, n, "operator.c")?))
            }
            OperatorSpec::RotationScale {
                theta,
                scale,
                shift,
            } => {
                if n != 2 {
                    return Err(field_err("operator", "rotation_scale needs dim = 2"));
                }
                let b = match shift {
                    Some(s) => vector(s, n, "operator.shift")?,
                    None => Vector::zeros(n),
                };
                OperatorModel::rotation_scale(*theta, *scale, b)
                    .map_err(|e| field_err("operator", e))
            }
        }
    }
}

fn vector(coords: &[f64], dim: usize, field: &str) -> Result<Vector, ProblemFileError> {
    if coords.len() != dim {
        return Err(field_err(
            field,
            format!("expected {dim} entries, got {}", coords.len()),
        ));
    }
    Vector::new(coords.to_vec()).map_err(|e| field_err(field, e))
}

fn build_set(spec: &SetSpec, dim: usize, field: &str) -> Result<ConvexSet, ProblemFileError> {
    let sub = |name: &str| format!("{field}.{name}");
    let set = match spec {
        SetSpec::WholeSpace {} => ConvexSet::whole_space(dim),
        SetSpec::Box { lower, upper } => ConvexSet::boxed(
            vector(lower, dim, &sub("lower"))?,
            vector(upper, dim, &sub("upper"))?,
        ),
        SetSpec::Ball { center, radius } => {
            ConvexSet::ball(vector(center, dim, &sub("center"))?, *radius)
        }
        SetSpec::Halfspace { normal, offset } => {
            ConvexSet::halfspace(vector(normal, dim, &sub("normal"))?, *offset)
        }
        SetSpec::Hyperplane { normal, offset } => {
            ConvexSet::hyperplane(vector(normal, dim, &sub("normal"))?, *offset)
        }
        SetSpec::Simplex { scale } => ConvexSet::simplex(dim, *scale),
    };
    set.map_err(|e| field_err(field, e))
}
