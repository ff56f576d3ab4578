//! Solvers and diagnostics for the variational inequality `VI(C, A)` over
//! canonical convex sets of `R^n`.
//!
//! When `A` is relaxed (γ, r)-cocoercive and μ-Lipschitz with `r > γμ²`, the
//! projected map `P_C(I - sA)` is a contraction for every step
//! `0 < s < 2(r - γμ²)/μ²`, so `VI(C, A)` has exactly one solution and plain
//! Picard iteration finds it. This crate provides the projections, operator
//! certificates, the contraction solver, a two-step relaxed scheme, a hybrid
//! fixed-point scheme, and experiments that check uniqueness and rates.
//!
//! ```
//! use vicontract::geometry::{ConvexSet, Vector};
//! use vicontract::operators::OperatorModel;
//! use vicontract::solvers::{solve_projected_contraction, Problem, SolverConfig};
//!
//! let target = Vector::new(vec![3.0, 4.0]).unwrap();
//! let problem = Problem::with_analytic_certificate(
//!     ConvexSet::ball(Vector::zeros(2), 1.0).unwrap(),
//!     OperatorModel::identity_shift(&target),
//! )
//! .unwrap();
//! let sol = solve_projected_contraction(&problem, &SolverConfig::default()).unwrap();
//! assert!((sol.u[0] - 0.6).abs() < 1e-12 && (sol.u[1] - 0.8).abs() < 1e-12);
//! ```

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod diagnostics;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod operators;
pub mod solvers;

pub use error::{Error, Result};
