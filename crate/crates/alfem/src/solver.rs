//! Semismooth Newton solver for the nonlinear complementarity system, with
//! sparse-direct and dense-direct linear solves.

use faer::linalg::solvers::Solve;
use faer::sparse::{SparseColMat, Triplet};

use crate::assembly::DiscreteSystem;
use crate::contact::{active_set, generalized_jacobian, residual, ContactConfig};
use crate::error::{Error, Result};
use crate::scalar::{Real, SolveScalar};
use crate::sparse::CsrMatrix;

/// Relative accuracy expected from one direct linear solve.
const LINEAR_TOL: f64 = 1e-12;

/// Which linear solver backs the Newton iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearSolverKind {
    /// Sparse LU with partial pivoting (default).
    SparseLu,
    /// Dense LU with partial pivoting; an independent cross-check for
    /// small systems.
    DenseLu,
}

/// Newton iteration controls.
#[derive(Clone, Copy, Debug)]
pub struct SolveSettings<T> {
    /// Absolute target for the Euclidean norm of the residual.
    pub tol_residual: T,
    /// Maximum number of Newton steps.
    pub max_newton: usize,
    /// Linear solver selection.
    pub linear_solver: LinearSolverKind,
    /// Step damping factor in (0, 1]; 1 is the plain Newton step.
    pub damping: T,
}

impl<T: Real> Default for SolveSettings<T> {
    fn default() -> Self {
        Self {
            tol_residual: T::cast(1e-10),
            max_newton: 100,
            linear_solver: LinearSolverKind::SparseLu,
            damping: T::one(),
        }
    }
}

/// Converged state of the discrete contact problem.
#[derive(Clone, Debug)]
pub struct DiscreteSolution<T> {
    /// Primal coefficients over the free DOFs.
    pub u: Vec<T>,
    /// Multiplier coefficients, one per contact cell.
    pub lambda: Vec<T>,
    /// Newton steps taken.
    pub newton_iterations: usize,
    /// Residual norm before each step and after the last.
    pub residual_history: Vec<T>,
}

/// Diagnostics of one Newton solve.
#[derive(Clone, Debug)]
pub struct SolveReport<T> {
    /// Whether a convergence criterion was met.
    pub converged: bool,
    /// Newton steps taken.
    pub iterations: usize,
    /// Norm of the final residual.
    pub final_residual: T,
    /// Residual norm at every iterate, starting with the initial guess.
    pub residual_history: Vec<T>,
    /// Number of active quadrature points at every iterate.
    pub active_set_sizes: Vec<usize>,
}

fn norm2<T: Real>(v: &[T]) -> T {
    v.iter().map(|&x| x * x).sum::<T>().sqrt()
}

/// Solves `J x = r` with the selected direct method. The result is checked
/// for finiteness: a numerically singular factorization reports an error
/// rather than propagating NaNs.
pub fn linear_solve<T: SolveScalar>(
    j: &CsrMatrix<T>,
    r: &[T],
    kind: LinearSolverKind,
) -> Result<Vec<T>> {
    if j.nrows() != j.ncols() || j.nrows() != r.len() {
        return Err(Error::InvalidArgument(format!(
            "linear_solve needs a square system: {}×{} with rhs {}",
            j.nrows(),
            j.ncols(),
            r.len()
        )));
    }
    let x = match kind {
        LinearSolverKind::SparseLu => sparse_lu_solve(j, r)?,
        LinearSolverKind::DenseLu => dense_lu_solve(&j.to_dense(), r)?,
    };
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular);
    }
    Ok(x)
}

fn sparse_lu_solve<T: SolveScalar>(j: &CsrMatrix<T>, r: &[T]) -> Result<Vec<T>> {
    let n = j.nrows();
    let triplets: Vec<Triplet<usize, usize, T>> =
        j.entries().map(|(row, col, val)| Triplet::new(row, col, val)).collect();
    let mat = SparseColMat::<usize, T>::try_new_from_triplets(n, n, &triplets)
        .map_err(|e| Error::Assembly(format!("sparse matrix creation failed: {e:?}")))?;
    let lu = mat.sp_lu().map_err(|_| Error::Singular)?;
    let mut x = faer::Mat::<T>::from_fn(n, 1, |i, _| r[i]);
    lu.solve_in_place(x.as_mut());
    Ok((0..n).map(|i| x[(i, 0)]).collect())
}

/// Dense LU with partial pivoting on a flat row-major matrix; independent
/// of the sparse path.
fn dense_lu_solve<T: Real>(a: &[T], r: &[T]) -> Result<Vec<T>> {
    let n = r.len();
    debug_assert_eq!(a.len(), n * n);
    let mut m: Vec<T> = a.to_vec();
    let mut x: Vec<T> = r.to_vec();
    let scale = m.iter().fold(T::zero(), |acc, &v| acc.max(v.abs()));
    if n > 0 && (scale.is_nan() || scale <= T::zero()) {
        return Err(Error::Singular);
    }
    let tiny = scale * T::cast(n as f64) * T::epsilon();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&p, &q| {
                m[p * n + col].abs().partial_cmp(&m[q * n + col].abs()).expect("non-NaN pivot")
            })
            .unwrap();
        if m[pivot_row * n + col].abs() <= tiny {
            return Err(Error::Singular);
        }
        if pivot_row != col {
            for k in 0..n {
                m.swap(col * n + k, pivot_row * n + k);
            }
            x.swap(col, pivot_row);
        }
        let inv = T::one() / m[col * n + col];
        for row in col + 1..n {
            let factor = m[row * n + col] * inv;
            if factor != T::zero() {
                for k in col..n {
                    let upper = m[col * n + k];
                    m[row * n + k] -= factor * upper;
                }
                let xc = x[col];
                x[row] -= factor * xc;
            }
        }
    }
    for col in (0..n).rev() {
        let mut sum = x[col];
        for k in col + 1..n {
            sum -= m[col * n + k] * x[k];
        }
        x[col] = sum / m[col * n + col];
    }
    Ok(x)
}

/// Runs semismooth Newton from the zero initial guess. See
/// [`semismooth_newton_from`] for the general entry point.
pub fn semismooth_newton<T: SolveScalar>(
    cfg: &ContactConfig<T>,
    sys: &DiscreteSystem<T>,
    settings: &SolveSettings<T>,
) -> Result<(DiscreteSolution<T>, SolveReport<T>)> {
    let u0 = vec![T::zero(); sys.primal.num_free()];
    let l0 = vec![T::zero(); sys.multiplier.num_dofs()];
    semismooth_newton_from(cfg, sys, settings, u0, l0)
}

/// Runs semismooth Newton from a caller-supplied initial guess.
///
/// Each step linearizes the projection terms with the generalized
/// derivative and takes a (possibly damped) Newton step. Convergence is
/// declared when the residual norm falls below the tolerance, or when the
/// quadrature-point active set repeats across two consecutive undamped
/// iterates while the linear solve met its accuracy target — in that
/// regime the residual map is affine and the step solves it exactly.
pub fn semismooth_newton_from<T: SolveScalar>(
    cfg: &ContactConfig<T>,
    sys: &DiscreteSystem<T>,
    settings: &SolveSettings<T>,
    mut u: Vec<T>,
    mut lambda: Vec<T>,
) -> Result<(DiscreteSolution<T>, SolveReport<T>)> {
    let tol = settings.tol_residual;
    if tol.is_nan() || tol <= T::zero() || settings.max_newton == 0 {
        return Err(Error::InvalidArgument(
            "solver needs tol_residual > 0 and max_newton >= 1".into(),
        ));
    }
    if !(settings.damping > T::zero() && settings.damping <= T::one()) {
        return Err(Error::InvalidArgument("damping must lie in (0, 1]".into()));
    }
    let n = sys.primal.num_free();
    let mut r = residual(cfg, sys, &u, &lambda)?;
    let mut rnorm = norm2(&r);
    let mut active = active_set(cfg, sys, &u, &lambda);
    let mut history = vec![rnorm];
    let mut active_sizes = vec![active.iter().filter(|&&a| a).count()];
    let mut converged = rnorm <= settings.tol_residual;
    let mut iterations = 0;

    while !converged && iterations < settings.max_newton {
        iterations += 1;
        let jac = generalized_jacobian(cfg, sys, &u, &lambda)?;
        let step = linear_solve(&jac, &r, settings.linear_solver)
            .map_err(|e| match e {
                Error::Singular => Error::SingularAt { iteration: iterations },
                other => other,
            })?;
        let jstep = jac.matvec(&step);
        let linear_ok = {
            let defect: T = norm2(
                &jstep.iter().zip(&r).map(|(&a, &b)| a - b).collect::<Vec<T>>(),
            );
            defect <= T::cast(LINEAR_TOL) * rnorm
        };
        for (ui, si) in u.iter_mut().zip(&step[..n]) {
            *ui -= settings.damping * *si;
        }
        for (li, si) in lambda.iter_mut().zip(&step[n..]) {
            *li -= settings.damping * *si;
        }
        r = residual(cfg, sys, &u, &lambda)?;
        rnorm = norm2(&r);
        history.push(rnorm);
        let new_active = active_set(cfg, sys, &u, &lambda);
        active_sizes.push(new_active.iter().filter(|&&a| a).count());
        let same_active = new_active == active;
        active = new_active;
        log::debug!(
            "newton iteration {iterations}: residual {:.3e}, active {}",
            rnorm.as_f64(),
            active_sizes.last().unwrap()
        );
        converged = rnorm <= settings.tol_residual
            || (same_active && linear_ok && settings.damping == T::one());
    }

    let report = SolveReport {
        converged,
        iterations,
        final_residual: rnorm,
        residual_history: history.clone(),
        active_set_sizes: active_sizes,
    };
    let solution = DiscreteSolution {
        u,
        lambda,
        newton_iterations: iterations,
        residual_history: history,
    };
    Ok((solution, report))
}

/// Distance between two discrete states in the natural energy norm:
/// the stiffness energy of the primal difference plus the measure-weighted
/// L² norm of the multiplier difference.
pub fn energy_distance<T: Real>(
    sys: &DiscreteSystem<T>,
    a: (&[T], &[T]),
    b: (&[T], &[T]),
) -> T {
    let du: Vec<T> = a.0.iter().zip(b.0).map(|(&x, &y)| x - y).collect();
    let adu = sys.stiffness.matvec(&du);
    let primal: T = du.iter().zip(&adu).map(|(&x, &y)| x * y).sum();
    let mult: T = a
        .1
        .iter()
        .zip(b.1)
        .zip(&sys.multiplier.measures)
        .map(|((&x, &y), &m)| (x - y) * (x - y) * m)
        .sum();
    (primal + mult).sqrt()
}
