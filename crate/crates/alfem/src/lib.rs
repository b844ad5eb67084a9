//! Stabilized Lagrange-multiplier finite elements for obstacle and
//! Signorini contact problems.
//!
//! The library discretizes the membrane contact problem
//! `−Δu − λ = f`, `u ≤ 0`, `λ ≤ 0`, `uλ = 0` with piecewise-linear
//! elements for the displacement and piecewise-constant Lagrange
//! multipliers — on cells for the obstacle problem, on boundary edges for
//! the Signorini problem. The complementarity conditions are rewritten
//! through an augmented-Lagrangian projection `λ = −γ⁻¹[u − γλ]₊`, a
//! jump-penalizing stabilization couples neighboring multipliers, and the
//! resulting piecewise-smooth system is solved by a semismooth Newton
//! method.
//!
//! Crate layout:
//!
//! * [`mesh`] — triangulations, boundary tags, uniform refinement.
//! * [`spaces`] — primal (vertex) and multiplier (cell/edge) spaces.
//! * [`assembly`] — stiffness, load, coupling, stabilization, and the
//!   contact quadrature tables bundled into a [`assembly::DiscreteSystem`].
//! * [`contact`] — the four residual formulations, their generalized
//!   Jacobians, and the `γ = γ₀hᵉ` parameter law.
//! * [`solver`] — semismooth Newton iteration and linear solves.
//! * [`problems`] — the three benchmark problems.
//! * [`harness`] — convergence studies, error norms, CSV/SVG reporting.
//!
//! Everything numerical is generic over the scalar type through
//! [`scalar::Real`] (solves additionally need [`scalar::SolveScalar`]);
//! `f32` and `f64` both qualify. The aliases below fix `f64`, which the
//! command-line driver and the tests use throughout.

pub mod assembly;
pub mod contact;
pub mod error;
pub mod harness;
pub mod mesh;
pub mod problems;
pub mod quadrature;
pub mod scalar;
pub mod solver;
pub mod sparse;
pub mod spaces;

pub use contact::{ContactConfig, Formulation};
pub use error::{Error, Result};
pub use solver::{LinearSolverKind, SolveSettings};

/// Double-precision plane point.
pub type Point2 = mesh::Point2<f64>;
/// Double-precision triangulation.
pub type Mesh = mesh::Mesh<f64>;
/// Double-precision assembled contact system.
pub type DiscreteSystem = assembly::DiscreteSystem<f64>;
/// Double-precision contact parameters.
pub type Config = contact::ContactConfig<f64>;
/// Double-precision solver controls.
pub type Settings = solver::SolveSettings<f64>;
/// Double-precision converged solution.
pub type DiscreteSolution = solver::DiscreteSolution<f64>;
/// Double-precision benchmark description.
pub type ProblemSpec = problems::ProblemSpec<f64>;
/// Double-precision convergence table.
pub type ConvergenceTable = harness::ConvergenceTable<f64>;
