//! Nonlinear contact residuals and generalized Jacobians for the four
//! augmented-Lagrangian formulations, plus the mesh-dependent augmentation
//! parameter law.
//!
//! All formulations solve the same discrete complementarity system over
//! `M = n_free + n_mult` unknowns `U = (u, λ)`; they differ in how the
//! projection terms are arranged. `F1` and `F1Alt` are algebraically
//! identical (as are `F2` and `F2Alt`), and `F1`'s residual is the gradient
//! of a scalar functional, so its generalized Jacobian is symmetric.

use crate::assembly::DiscreteSystem;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sparse::{CsrMatrix, Triplets};

/// Which arrangement of the augmented-Lagrangian terms to solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formulation {
    /// Symmetric form: projection in both primal and multiplier equations.
    F1,
    /// Algebraic rearrangement of `F1` with an explicit coupling block.
    F1Alt,
    /// Nonsymmetric form: linear primal equation, projection in the
    /// multiplier equation only.
    F2,
    /// Algebraic rearrangement of `F2`.
    F2Alt,
}

impl Formulation {
    /// All four variants, for equivalence sweeps.
    pub const ALL: [Formulation; 4] = [
        Formulation::F1,
        Formulation::F1Alt,
        Formulation::F2,
        Formulation::F2Alt,
    ];
}

impl std::fmt::Display for Formulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Formulation::F1 => "f1",
            Formulation::F1Alt => "f1-alt",
            Formulation::F2 => "f2",
            Formulation::F2Alt => "f2-alt",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for Formulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f1" => Ok(Formulation::F1),
            "f1-alt" => Ok(Formulation::F1Alt),
            "f2" => Ok(Formulation::F2),
            "f2-alt" => Ok(Formulation::F2Alt),
            _ => Err(Error::InvalidArgument(format!(
                "unknown formulation '{s}'; expected f1, f1-alt, f2, or f2-alt"
            ))),
        }
    }
}

/// Sign selector for the projection argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    /// `+(u − γλ)`.
    Plus,
    /// `−(u − γλ)`.
    Minus,
}

/// Parameters of the contact discretization.
#[derive(Clone, Copy, Debug)]
pub struct ContactConfig<T> {
    /// Term arrangement to solve.
    pub formulation: Formulation,
    /// Augmentation scale γ₀ > 0.
    pub gamma0: T,
    /// Stabilization weight δ ≥ 0.
    pub delta: T,
    /// Regularity index of the constraint: ½ for boundary (Signorini)
    /// contact, 1 for volume (obstacle) constraints.
    pub s_exponent: T,
    /// Optional override of the mesh-size exponent in γ = γ₀·hᵉ; when
    /// absent the theoretical choice e = 2s applies.
    pub gamma_exponent: Option<T>,
}

impl<T: Real> ContactConfig<T> {
    /// Effective mesh-size exponent: the override if set, else `2s`.
    pub fn effective_gamma_exponent(&self) -> T {
        self.gamma_exponent.unwrap_or(self.s_exponent + self.s_exponent)
    }
}

/// Positive part `[x]₊ = max(0, x)`.
pub fn plus<T: Real>(x: T) -> T {
    if x > T::zero() {
        x
    } else {
        T::zero()
    }
}

/// Signed augmented variable `P_{γ±}(u, λ) = ±(u − γλ)`.
pub fn p_gamma<T: Real>(gamma: T, u_val: T, lambda_val: T, sign: Sign) -> T {
    let v = u_val - gamma * lambda_val;
    match sign {
        Sign::Plus => v,
        Sign::Minus => -v,
    }
}

/// Mesh-dependent augmentation parameter `γ = γ₀·hᵉ` with the exponent
/// from the configuration (theoretical default `e = 2s`).
pub fn gamma_of_h<T: Real>(cfg: &ContactConfig<T>, h: T) -> T {
    debug_assert!(h > T::zero());
    cfg.gamma0 * h.powf(cfg.effective_gamma_exponent())
}

/// Generalized derivative of `[x]₊`: the Heaviside step with the tie-break
/// `H(0) = 0`, which keeps inactive regions linear.
fn active<T: Real>(x: T) -> bool {
    x > T::zero()
}

fn check_sizes<T: Real>(sys: &DiscreteSystem<T>, u: &[T], lambda: &[T]) -> Result<()> {
    if u.len() != sys.primal.num_free() || lambda.len() != sys.multiplier.num_dofs() {
        return Err(Error::InvalidArgument(format!(
            "state size mismatch: got ({}, {}), system needs ({}, {})",
            u.len(),
            lambda.len(),
            sys.primal.num_free(),
            sys.multiplier.num_dofs()
        )));
    }
    Ok(())
}

/// Evaluates the nonlinear residual `G(U)` of the chosen formulation, laid
/// out as free primal entries followed by multiplier entries. The roots of
/// `G` are the discrete contact solutions; `(G(U), V)` equals the
/// formulation's bilinear form minus the load for every test vector `V`.
pub fn residual<T: Real>(
    cfg: &ContactConfig<T>,
    sys: &DiscreteSystem<T>,
    u: &[T],
    lambda: &[T],
) -> Result<Vec<T>> {
    check_sizes(sys, u, lambda)?;
    let n = sys.primal.num_free();
    let m = sys.multiplier.num_dofs();
    let gamma = sys.gamma;
    let ginv = T::one() / gamma;
    let mut r = vec![T::zero(); n + m];

    // Linear primal part: A·u − F, plus −B·λ for the formulations that
    // carry an explicit coupling block.
    let au = sys.stiffness.matvec(u);
    for i in 0..n {
        r[i] = au[i] - sys.load[i];
    }
    if cfg.formulation != Formulation::F1 {
        for (i, ri) in r[..n].iter_mut().enumerate() {
            for (k, b) in sys.coupling.row(i) {
                *ri -= b * lambda[k];
            }
        }
    }

    // Stabilization acts on the multiplier equations; the symmetric
    // (gradient) forms carry it with a negative sign.
    let s_lambda = sys.stabilization.matvec(lambda);
    let s_sign = match cfg.formulation {
        Formulation::F1 | Formulation::F1Alt => -T::one(),
        Formulation::F2 | Formulation::F2Alt => T::one(),
    };
    for k in 0..m {
        r[n + k] = s_sign * s_lambda[k];
    }

    // Contact terms, integrated cellwise at quadrature-point granularity.
    for (k, cell) in sys.contact_cells.iter().enumerate() {
        let lam = lambda[k];
        let measure = sys.multiplier.measures[k];
        match cfg.formulation {
            Formulation::F1 => {
                for q in &cell.points {
                    let proj = plus(p_gamma(gamma, q.trace_value(u), lam, Sign::Plus));
                    let w = q.weight;
                    for &(dof, phi) in &q.free {
                        r[dof] += ginv * w * proj * phi;
                    }
                    r[n + k] -= w * proj;
                }
                r[n + k] -= gamma * measure * lam;
            }
            Formulation::F1Alt => {
                for q in &cell.points {
                    let uh = q.trace_value(u);
                    let aug = uh + plus(p_gamma(gamma, uh, lam, Sign::Minus));
                    let w = q.weight;
                    for &(dof, phi) in &q.free {
                        r[dof] += ginv * w * aug * phi;
                    }
                    r[n + k] -= w * aug;
                }
            }
            Formulation::F2 => {
                for q in &cell.points {
                    let uh = q.trace_value(u);
                    let aug = uh + plus(p_gamma(gamma, uh, lam, Sign::Minus));
                    r[n + k] += q.weight * aug;
                }
            }
            Formulation::F2Alt => {
                for q in &cell.points {
                    let proj = plus(p_gamma(gamma, q.trace_value(u), lam, Sign::Plus));
                    r[n + k] += q.weight * proj;
                }
                r[n + k] += gamma * measure * lam;
            }
        }
    }
    Ok(r)
}

/// Assembles the generalized Jacobian of [`residual`] at `(u, λ)`: every
/// projection `[x]₊` is linearized as `H(x)·x` per quadrature point with
/// the tie-break `H(0) = 0`. Structural entries are emitted even where the
/// local derivative vanishes, so the sparsity pattern is state-independent.
pub fn generalized_jacobian<T: Real>(
    cfg: &ContactConfig<T>,
    sys: &DiscreteSystem<T>,
    u: &[T],
    lambda: &[T],
) -> Result<CsrMatrix<T>> {
    check_sizes(sys, u, lambda)?;
    let n = sys.primal.num_free();
    let m = sys.multiplier.num_dofs();
    let gamma = sys.gamma;
    let ginv = T::one() / gamma;
    let mut t = Triplets::new(n + m, n + m);

    for (i, j, v) in sys.stiffness.entries() {
        t.push(i, j, v);
    }
    let s_sign = match cfg.formulation {
        Formulation::F1 | Formulation::F1Alt => -T::one(),
        Formulation::F2 | Formulation::F2Alt => T::one(),
    };
    for (k, l, v) in sys.stabilization.entries() {
        t.push(n + k, n + l, s_sign * v);
    }
    if cfg.formulation != Formulation::F1 {
        for (i, k, b) in sys.coupling.entries() {
            t.push(i, n + k, -b);
        }
    }

    for (k, cell) in sys.contact_cells.iter().enumerate() {
        let lam = lambda[k];
        let measure = sys.multiplier.measures[k];
        match cfg.formulation {
            Formulation::F1 => {
                // d/du γ⁻¹Σ w H φφᵀ;  d/dλ −Σ w H φ (symmetric);
                // multiplier diagonal γΣ w H − γ|K|.
                let mut diag = -gamma * measure;
                for q in &cell.points {
                    let h = active(p_gamma(gamma, q.trace_value(u), lam, Sign::Plus));
                    let hw = if h { q.weight } else { T::zero() };
                    for &(di, phi_i) in &q.free {
                        for &(dj, phi_j) in &q.free {
                            t.push(di, dj, ginv * hw * phi_i * phi_j);
                        }
                        t.push(di, n + k, -hw * phi_i);
                        t.push(n + k, di, -hw * phi_i);
                    }
                    diag += gamma * hw;
                }
                t.push(n + k, n + k, diag);
            }
            Formulation::F1Alt => {
                // Augmented trace u + [γλ − u]₊ has u-derivative (1 − H)
                // and λ-derivative γH.
                let mut diag = T::zero();
                for q in &cell.points {
                    let h = active(p_gamma(gamma, q.trace_value(u), lam, Sign::Minus));
                    let (one_minus_h, hw) = if h {
                        (T::zero(), q.weight)
                    } else {
                        (q.weight, T::zero())
                    };
                    for &(di, phi_i) in &q.free {
                        for &(dj, phi_j) in &q.free {
                            t.push(di, dj, ginv * one_minus_h * phi_i * phi_j);
                        }
                        t.push(di, n + k, hw * phi_i);
                        t.push(n + k, di, -one_minus_h * phi_i);
                    }
                    diag -= gamma * hw;
                }
                t.push(n + k, n + k, diag);
            }
            Formulation::F2 => {
                let mut diag = T::zero();
                for q in &cell.points {
                    let h = active(p_gamma(gamma, q.trace_value(u), lam, Sign::Minus));
                    let (one_minus_h, hw) = if h {
                        (T::zero(), q.weight)
                    } else {
                        (q.weight, T::zero())
                    };
                    for &(dj, phi_j) in &q.free {
                        t.push(n + k, dj, one_minus_h * phi_j);
                    }
                    diag += gamma * hw;
                }
                t.push(n + k, n + k, diag);
            }
            Formulation::F2Alt => {
                let mut diag = gamma * measure;
                for q in &cell.points {
                    let h = active(p_gamma(gamma, q.trace_value(u), lam, Sign::Plus));
                    let hw = if h { q.weight } else { T::zero() };
                    for &(dj, phi_j) in &q.free {
                        t.push(n + k, dj, hw * phi_j);
                    }
                    diag -= gamma * hw;
                }
                t.push(n + k, n + k, diag);
            }
        }
    }
    Ok(t.into_csr())
}

/// Activation pattern of the quadrature points for the formulation's own
/// projection argument — the sign pattern that selects the current linear
/// region of the residual map. Two consecutive Newton iterates with equal
/// patterns lie in one affine region, which is what the solver's
/// active-set stabilization rule certifies.
pub fn active_set<T: Real>(
    cfg: &ContactConfig<T>,
    sys: &DiscreteSystem<T>,
    u: &[T],
    lambda: &[T],
) -> Vec<bool> {
    let sign = match cfg.formulation {
        Formulation::F1 | Formulation::F2Alt => Sign::Plus,
        Formulation::F1Alt | Formulation::F2 => Sign::Minus,
    };
    let mut flags = Vec::new();
    for (k, cell) in sys.contact_cells.iter().enumerate() {
        for q in &cell.points {
            flags.push(active(p_gamma(sys.gamma, q.trace_value(u), lambda[k], sign)));
        }
    }
    flags
}
