//! Benchmark problem definitions.
//!
//! Each [`ProblemSpec`] bundles everything a convergence study needs: the
//! coarse mesh with its boundary tagging, the load, Dirichlet data, the exact
//! solution when one is known, and recommended contact parameters. Three
//! benchmarks are provided:
//!
//! * [`smooth_obstacle`] — membrane on `(−1,1)²` pressed onto a flat obstacle
//!   over the disk `r ≤ 1/4`; the exact solution is `C²` and quartic away
//!   from the contact circle.
//! * [`nonsmooth_obstacle`] — L-shaped domain with an `r^{2/3}`-type corner
//!   singularity blended into the contact region by a quintic cutoff, which
//!   limits the attainable convergence rates.
//! * [`signorini`] — unilateral contact along the bottom edge of the unit
//!   square under a sign-changing load; no closed-form solution, so studies
//!   compare against an overkill discrete reference.

use crate::contact::{plus, ContactConfig, Formulation};
use crate::error::Result;
use crate::mesh::{l_shaped_mesh, square_mesh, BoundaryTag, Mesh, Point2, ProblemKind};
use crate::scalar::Real;

/// Geometric tolerance used when classifying boundary edge midpoints.
const TAG_TOL: f64 = 1e-12;

/// Default penalty scale for the primal-dual-active-set style formulations,
/// which are only stable for sufficiently large `γ₀`.
const LARGE_GAMMA0: f64 = 10.0;

/// Scalar field on the plane.
pub type ScalarFn<T> = Box<dyn Fn(Point2<T>) -> T + Send + Sync>;
/// Vector field on the plane.
pub type GradientFn<T> = Box<dyn Fn(Point2<T>) -> Point2<T> + Send + Sync>;

/// Closed-form solution used to measure discretization errors.
pub struct ExactSolution<T> {
    /// Point evaluation of the exact displacement.
    pub value: ScalarFn<T>,
    /// Point evaluation of the exact displacement gradient.
    pub gradient: GradientFn<T>,
}

/// A fully specified benchmark: geometry, data, and recommended parameters.
pub struct ProblemSpec<T> {
    /// Short identifier used for command-line selection and output files.
    pub name: &'static str,
    /// Whether the contact constraint lives on cells or on the boundary.
    pub kind: ProblemKind,
    /// Volume load `f`.
    pub load: ScalarFn<T>,
    /// Dirichlet boundary data `g`.
    pub dirichlet: ScalarFn<T>,
    /// Exact solution, when one is available.
    pub exact: Option<ExactSolution<T>>,
    /// Builds the coarsest mesh of the refinement hierarchy.
    base_mesh: Box<dyn Fn() -> Result<Mesh<T>> + Send + Sync>,
    /// Default penalty scale `γ₀` for the residual-based formulations.
    pub default_gamma0: T,
    /// Regularity index `s`; the default mesh-dependence of `γ` is `h^{2s}`.
    pub s_exponent: T,
    /// Overrides the exponent in `γ = γ₀ hᵉ` when the study should use a
    /// different mesh dependence than the theoretical default `e = 2s`.
    pub gamma_exponent: Option<T>,
    /// Number of refinement levels a default convergence study runs.
    pub default_levels: usize,
    /// Extra refinements past the finest study level used to build a discrete
    /// reference solution when no exact solution exists.
    pub overkill_extra: usize,
    /// Reference inclinations `(L₂, H¹)` drawn on convergence plots.
    pub reference_slopes: (T, T),
}

impl<T: Real> ProblemSpec<T> {
    /// Builds the coarsest mesh of the hierarchy.
    pub fn base_mesh(&self) -> Result<Mesh<T>> {
        (self.base_mesh)()
    }

    /// Recommended contact parameters for the given formulation. The
    /// formulations that enforce the constraint through the multiplier
    /// equation alone need a large penalty scale, so they override the
    /// problem default unless the caller substitutes their own.
    pub fn config(&self, formulation: Formulation) -> ContactConfig<T> {
        let gamma0 = match formulation {
            Formulation::F2 | Formulation::F2Alt => T::cast(LARGE_GAMMA0),
            Formulation::F1 | Formulation::F1Alt => self.default_gamma0,
        };
        ContactConfig {
            formulation,
            gamma0,
            delta: T::one(),
            s_exponent: self.s_exponent,
            gamma_exponent: self.gamma_exponent,
        }
    }
}

/// Looks a benchmark up by its command-line name.
pub fn by_name<T: Real>(name: &str) -> Option<ProblemSpec<T>> {
    match name {
        "smooth" | "smooth-obstacle" => Some(smooth_obstacle()),
        "nonsmooth" | "nonsmooth-obstacle" => Some(nonsmooth_obstacle()),
        "signorini" => Some(signorini()),
        _ => None,
    }
}

/// Names accepted by [`by_name`], in canonical form.
pub const PROBLEM_NAMES: [&str; 3] = ["smooth-obstacle", "nonsmooth-obstacle", "signorini"];

// ---------------------------------------------------------------------------
// Smooth obstacle benchmark.
// ---------------------------------------------------------------------------

/// Radius of the contact disk in the smooth benchmark.
const SMOOTH_R0: f64 = 0.25;

/// Exact displacement `u = −[r² − r₀²]₊²`: zero on the contact disk
/// `r ≤ r₀`, quartic and strictly negative outside it.
pub fn smooth_value<T: Real>(p: Point2<T>) -> T {
    let r0sq = T::cast(SMOOTH_R0 * SMOOTH_R0);
    let excess = plus(p.x * p.x + p.y * p.y - r0sq);
    -excess * excess
}

/// Gradient of [`smooth_value`]; continuous across the contact circle.
pub fn smooth_gradient<T: Real>(p: Point2<T>) -> Point2<T> {
    let r0sq = T::cast(SMOOTH_R0 * SMOOTH_R0);
    let excess = plus(p.x * p.x + p.y * p.y - r0sq);
    let scale = -T::cast(4.0) * excess;
    Point2::new(scale * p.x, scale * p.y)
}

/// Load for the smooth benchmark. On the contact disk it balances the
/// (strictly negative) contact pressure; outside it equals minus the
/// Laplacian of [`smooth_value`]. Both expressions agree on the circle
/// `r = r₀`, where they evaluate to `8 r₀²`.
pub fn smooth_load<T: Real>(p: Point2<T>) -> T {
    let r0sq = T::cast(SMOOTH_R0 * SMOOTH_R0);
    let eight = T::cast(8.0);
    let rsq = p.x * p.x + p.y * p.y;
    if rsq <= r0sq {
        eight * r0sq * (T::one() - (rsq - r0sq))
    } else {
        eight * (rsq + (rsq - r0sq))
    }
}

/// Membrane over `(−1,1)²` pressed onto a flat obstacle across the disk
/// `r ≤ 1/4`. Dirichlet data extends the exact solution to the boundary.
pub fn smooth_obstacle<T: Real>() -> ProblemSpec<T> {
    let one = T::one();
    ProblemSpec {
        name: "smooth-obstacle",
        kind: ProblemKind::Obstacle,
        load: Box::new(smooth_load),
        dirichlet: Box::new(smooth_value),
        exact: Some(ExactSolution {
            value: Box::new(smooth_value),
            gradient: Box::new(smooth_gradient),
        }),
        base_mesh: Box::new(move || {
            square_mesh(
                Point2::new(-one, -one),
                Point2::new(one, one),
                4,
                |_| BoundaryTag::Dirichlet,
            )
        }),
        default_gamma0: T::cast(0.01),
        s_exponent: T::one(),
        gamma_exponent: Some(T::one()),
        default_levels: 6,
        overkill_extra: 0,
        reference_slopes: (T::cast(2.0), T::one()),
    }
}

// ---------------------------------------------------------------------------
// Nonsmooth obstacle benchmark.
// ---------------------------------------------------------------------------

/// Quintic cutoff and its first two derivatives with respect to `r`.
///
/// The cutoff is `1` for `r ≤ 1/4`, `0` for `r ≥ 3/4`, and the unique
/// quintic blend `q(t) = −6t⁵ + 15t⁴ − 10t³ + 1` of the rescaled radius
/// `t = 2(r − 1/4)` in between, which makes the blend `C²` at both seams.
pub fn cutoff<T: Real>(r: T) -> (T, T, T) {
    let t = (r - T::cast(0.25)) * T::cast(2.0);
    if t <= T::zero() {
        (T::one(), T::zero(), T::zero())
    } else if t >= T::one() {
        (T::zero(), T::zero(), T::zero())
    } else {
        let q = ((T::cast(-6.0) * t + T::cast(15.0)) * t - T::cast(10.0)) * t * t * t + T::one();
        let dq = ((T::cast(-30.0) * t + T::cast(60.0)) * t - T::cast(30.0)) * t * t;
        let ddq = ((T::cast(-120.0) * t + T::cast(180.0)) * t - T::cast(60.0)) * t;
        // Chain rule for t = 2(r − 1/4).
        (q, dq * T::cast(2.0), ddq * T::cast(4.0))
    }
}

/// Polar angle in `[0, 2π)` measured counterclockwise from the positive
/// x-axis. On the L-shaped domain the angle stays in `[0, 3π/2]`, so the
/// singular part vanishes on both legs of the re-entrant corner.
fn polar_angle<T: Real>(p: Point2<T>) -> T {
    let phi = p.y.atan2(p.x);
    if phi < T::zero() {
        phi + T::cast(2.0 * std::f64::consts::PI)
    } else {
        phi
    }
}

/// Exact displacement `u = −r^{2/3} γ₁(r) sin(2φ/3)`: the canonical corner
/// singularity near the origin, blended to zero (full contact) for
/// `r ≥ 3/4` by the quintic cutoff.
pub fn nonsmooth_value<T: Real>(p: Point2<T>) -> T {
    let rsq = p.x * p.x + p.y * p.y;
    if rsq == T::zero() {
        return T::zero();
    }
    let r = rsq.sqrt();
    let (g1, _, _) = cutoff(r);
    if g1 == T::zero() {
        return T::zero();
    }
    let two_thirds = T::cast(2.0 / 3.0);
    let phi = polar_angle(p);
    -r.powf(two_thirds) * g1 * (two_thirds * phi).sin()
}

/// Gradient of [`nonsmooth_value`]; unbounded (like `r^{−1/3}`) at the
/// corner, where it is reported as zero.
pub fn nonsmooth_gradient<T: Real>(p: Point2<T>) -> Point2<T> {
    let rsq = p.x * p.x + p.y * p.y;
    if rsq == T::zero() {
        return Point2::new(T::zero(), T::zero());
    }
    let r = rsq.sqrt();
    let (g1, dg1, _) = cutoff(r);
    if g1 == T::zero() && dg1 == T::zero() {
        return Point2::new(T::zero(), T::zero());
    }
    let two_thirds = T::cast(2.0 / 3.0);
    let phi = polar_angle(p);
    let (sin_s, cos_s) = ((two_thirds * phi).sin(), (two_thirds * phi).cos());
    let r_pow = r.powf(two_thirds);
    // Radial and tangential components of the gradient.
    let du_dr = -(two_thirds * r_pow / r * g1 + r_pow * dg1) * sin_s;
    let du_dt = -two_thirds * r_pow / r * g1 * cos_s;
    let (sin_p, cos_p) = (phi.sin(), phi.cos());
    Point2::new(du_dr * cos_p - du_dt * sin_p, du_dr * sin_p + du_dt * cos_p)
}

/// Load for the nonsmooth benchmark: minus the Laplacian of
/// [`nonsmooth_value`] plus a unit contact pressure switched on for
/// `r > 5/4`. The singular part is harmonic, so the load vanishes for
/// `r ≤ 1/4`, is smooth in the blending annulus, and is piecewise constant
/// (`0` then `1`) in the contact zone `r ≥ 3/4`.
pub fn nonsmooth_load<T: Real>(p: Point2<T>) -> T {
    let r = (p.x * p.x + p.y * p.y).sqrt();
    let pressure = if r <= T::cast(1.25) { T::zero() } else { T::one() };
    let (_, dg1, ddg1) = cutoff(r);
    if dg1 == T::zero() && ddg1 == T::zero() {
        return pressure;
    }
    let two_thirds = T::cast(2.0 / 3.0);
    let sin_s = (two_thirds * polar_angle(p)).sin();
    let r_pow = r.powf(two_thirds);
    r_pow * sin_s * (dg1 / r + ddg1)
        + T::cast(4.0 / 3.0) * r_pow / r * dg1 * sin_s
        + pressure
}

/// Obstacle problem on the L-shaped domain `(−2,2)² ∖ [0,2)×(−2,0]` whose
/// exact solution carries an `r^{2/3}` corner singularity; Dirichlet data
/// extends the exact solution (which vanishes on the whole boundary).
pub fn nonsmooth_obstacle<T: Real>() -> ProblemSpec<T> {
    ProblemSpec {
        name: "nonsmooth-obstacle",
        kind: ProblemKind::Obstacle,
        load: Box::new(nonsmooth_load),
        dirichlet: Box::new(nonsmooth_value),
        exact: Some(ExactSolution {
            value: Box::new(nonsmooth_value),
            gradient: Box::new(nonsmooth_gradient),
        }),
        base_mesh: Box::new(|| l_shaped_mesh(1, |_| BoundaryTag::Dirichlet)),
        default_gamma0: T::cast(0.01),
        s_exponent: T::one(),
        gamma_exponent: Some(T::one()),
        default_levels: 6,
        overkill_extra: 0,
        reference_slopes: (T::cast(5.0 / 3.0), T::one()),
    }
}

// ---------------------------------------------------------------------------
// Signorini benchmark.
// ---------------------------------------------------------------------------

/// Load for the Signorini benchmark: `f = −2π sin(2πx)`, which pushes the
/// membrane into the boundary on part of the contact edge and lifts it off
/// elsewhere.
pub fn signorini_load<T: Real>(p: Point2<T>) -> T {
    let two_pi = T::cast(2.0 * std::f64::consts::PI);
    -two_pi * (two_pi * p.x).sin()
}

/// Unilateral contact along `y = 0` of the unit square, with homogeneous
/// Dirichlet conditions at `y = 1` and homogeneous Neumann conditions on
/// the vertical sides. No closed-form solution; studies compare against an
/// overkill discrete reference two levels finer than the study range.
pub fn signorini<T: Real>() -> ProblemSpec<T> {
    let tol = T::cast(TAG_TOL);
    ProblemSpec {
        name: "signorini",
        kind: ProblemKind::Signorini,
        load: Box::new(signorini_load),
        dirichlet: Box::new(|_| T::zero()),
        exact: None,
        base_mesh: Box::new(move || {
            square_mesh(
                Point2::new(T::zero(), T::zero()),
                Point2::new(T::one(), T::one()),
                4,
                move |mid: Point2<T>| {
                    if mid.y.abs() <= tol {
                        BoundaryTag::Contact
                    } else if (mid.y - T::one()).abs() <= tol {
                        BoundaryTag::Dirichlet
                    } else {
                        BoundaryTag::Neumann
                    }
                },
            )
        }),
        default_gamma0: T::cast(0.1),
        s_exponent: T::cast(0.5),
        gamma_exponent: None,
        default_levels: 5,
        overkill_extra: 2,
        reference_slopes: (T::cast(2.0), T::one()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    /// Five-point finite-difference Laplacian, used as an independent check
    /// that the closed-form loads match the exact solutions.
    fn fd_laplacian(u: impl Fn(Point2<f64>) -> f64, p: Point2<f64>, h: f64) -> f64 {
        (u(Point2::new(p.x + h, p.y))
            + u(Point2::new(p.x - h, p.y))
            + u(Point2::new(p.x, p.y + h))
            + u(Point2::new(p.x, p.y - h))
            - 4.0 * u(Point2::new(p.x, p.y)))
            / (h * h)
    }

    fn fd_gradient(u: impl Fn(Point2<f64>) -> f64, p: Point2<f64>, h: f64) -> Point2<f64> {
        Point2::new(
            (u(Point2::new(p.x + h, p.y)) - u(Point2::new(p.x - h, p.y))) / (2.0 * h),
            (u(Point2::new(p.x, p.y + h)) - u(Point2::new(p.x, p.y - h))) / (2.0 * h),
        )
    }

    #[test]
    fn smooth_solution_touches_obstacle_exactly_on_disk() {
        // On the contact disk the membrane sits on the obstacle.
        assert_eq!(smooth_value(Point2::new(0.0, 0.0)), 0.0);
        assert_eq!(smooth_value(Point2::new(0.2, 0.1)), 0.0);
        assert_eq!(smooth_value(Point2::new(0.25, 0.0)), 0.0);
        let g = smooth_gradient(Point2::new(0.15, -0.1));
        assert_eq!((g.x, g.y), (0.0, 0.0));
        // Outside it detaches downward.
        assert!(smooth_value(Point2::new(0.5, 0.5)) < -1e-3);
        assert!(smooth_value(Point2::new(-0.9, 0.2)) < -1e-3);
    }

    #[test]
    fn smooth_load_is_continuous_across_contact_circle() {
        let r0 = SMOOTH_R0;
        // Both branches give 8 r₀² on the circle itself.
        assert_eq!(smooth_load(Point2::new(r0, 0.0)), 8.0 * r0 * r0);
        let eps = 1e-12;
        let inside = smooth_load(Point2::new(r0 - eps, 0.0));
        let outside = smooth_load(Point2::new(r0 + eps, 0.0));
        assert_abs_diff_eq!(inside, outside, epsilon = 1e-10);
        let along_diag = (r0 / 2f64.sqrt()) + 1e-13;
        assert_abs_diff_eq!(
            smooth_load(Point2::new(along_diag, along_diag)),
            8.0 * r0 * r0,
            epsilon = 1e-10
        );
    }

    #[test]
    fn smooth_load_balances_laplacian_off_the_contact_set() {
        // Where the membrane hangs free the contact pressure vanishes, so
        // the load must equal minus the Laplacian of the exact solution.
        for p in [
            Point2::new(0.5, 0.2),
            Point2::new(-0.6, 0.3),
            Point2::new(0.3, -0.7),
            Point2::new(-0.45, -0.45),
        ] {
            let minus_lap = -fd_laplacian(smooth_value, p, 1e-4);
            assert_relative_eq!(smooth_load(p), minus_lap, max_relative = 1e-6);
        }
    }

    #[test]
    fn smooth_contact_pressure_is_negative_on_the_disk() {
        // Inside the disk the multiplier is −f, so admissibility requires
        // a strictly positive load there.
        for p in [
            Point2::new(0.0, 0.0),
            Point2::new(0.1, 0.1),
            Point2::new(0.24, 0.0),
        ] {
            assert!(smooth_load(p) > 0.0);
        }
    }

    #[test]
    fn smooth_gradient_matches_finite_differences() {
        for p in [Point2::new(0.5, 0.2), Point2::new(-0.7, 0.55)] {
            let fd = fd_gradient(smooth_value, p, 1e-5);
            let g = smooth_gradient(p);
            assert_relative_eq!(g.x, fd.x, max_relative = 1e-6);
            assert_relative_eq!(g.y, fd.y, max_relative = 1e-6);
        }
    }

    #[test]
    fn cutoff_blend_is_twice_differentiable_at_the_seams() {
        // The quintic branch reproduces the constant branches' value and
        // first two derivatives at both seams.
        let q = |t: f64| ((-6.0 * t + 15.0) * t - 10.0) * t * t * t + 1.0;
        let dq = |t: f64| ((-30.0 * t + 60.0) * t - 30.0) * t * t;
        let ddq = |t: f64| ((-120.0 * t + 180.0) * t - 60.0) * t;
        assert_abs_diff_eq!(q(0.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(dq(0.0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ddq(0.0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q(1.0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(dq(1.0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ddq(1.0), 0.0, epsilon = 1e-15);
        // Approaching each seam from within the blend reproduces the
        // constant branches to high accuracy.
        let delta = 1e-13;
        for (r, expected) in [(0.25 + delta, (1.0, 0.0, 0.0)), (0.75 - delta, (0.0, 0.0, 0.0))] {
            let (g, dg, ddg) = cutoff(r);
            assert_abs_diff_eq!(g, expected.0, epsilon = 1e-10);
            assert_abs_diff_eq!(dg, expected.1, epsilon = 1e-10);
            assert_abs_diff_eq!(ddg, expected.2, epsilon = 1e-10);
        }
    }

    #[test]
    fn nonsmooth_solution_is_pure_corner_singularity_near_origin() {
        // Below the blend the cutoff is one, so u = −r^{2/3} sin(2φ/3).
        let p = Point2::new(-0.1, 0.1);
        let r = 0.02f64.sqrt();
        assert_relative_eq!(
            nonsmooth_value(p),
            -r.powf(2.0 / 3.0),
            max_relative = 1e-14
        );
        // The singular part vanishes on both legs of the re-entrant corner.
        assert_eq!(nonsmooth_value(Point2::new(0.1, 0.0)), 0.0);
        assert_abs_diff_eq!(nonsmooth_value(Point2::new(0.0, -0.1)), 0.0, epsilon = 1e-16);
        // Full contact past the blend.
        assert_eq!(nonsmooth_value(Point2::new(1.0, 0.5)), 0.0);
        assert_eq!(nonsmooth_value(Point2::new(-2.0, 2.0)), 0.0);
    }

    #[test]
    fn nonsmooth_load_balances_laplacian_off_the_contact_set() {
        // Wherever the membrane hangs free (r < 3/4) the load equals minus
        // the Laplacian: identically zero below the blend (the singular
        // part is harmonic) and a smooth expression inside it.
        let harmonic = Point2::new(-0.05, 0.05);
        assert_eq!(nonsmooth_load(harmonic), 0.0);
        assert_abs_diff_eq!(fd_laplacian(nonsmooth_value, harmonic, 1e-5), 0.0, epsilon = 1e-4);
        for p in [
            Point2::new(-0.3, 0.2),
            Point2::new(0.1, 0.6),
            Point2::new(-0.4, -0.35),
        ] {
            let minus_lap = -fd_laplacian(nonsmooth_value, p, 1e-4);
            assert_relative_eq!(nonsmooth_load(p), minus_lap, max_relative = 1e-4);
        }
    }

    #[test]
    fn nonsmooth_load_is_piecewise_constant_in_the_contact_zone() {
        // Zero pressure in the inner contact band, unit pressure outside.
        assert_eq!(nonsmooth_load(Point2::new(-1.0, 0.1)), 0.0);
        assert_eq!(nonsmooth_load(Point2::new(0.8, 0.4)), 0.0);
        assert_eq!(nonsmooth_load(Point2::new(-1.5, 0.3)), 1.0);
        assert_eq!(nonsmooth_load(Point2::new(1.0, 1.0)), 1.0);
    }

    #[test]
    fn nonsmooth_gradient_matches_finite_differences() {
        for p in [
            Point2::new(-0.3, 0.2),
            Point2::new(0.2, 0.5),
            Point2::new(-0.05, 0.08),
        ] {
            let fd = fd_gradient(nonsmooth_value, p, 1e-6);
            let g = nonsmooth_gradient(p);
            assert_relative_eq!(g.x, fd.x, max_relative = 1e-5, epsilon = 1e-10);
            assert_relative_eq!(g.y, fd.y, max_relative = 1e-5, epsilon = 1e-10);
        }
    }

    #[test]
    fn nonsmooth_boundary_data_vanishes() {
        // The exact solution is zero on the whole boundary: on the outer
        // square the cutoff has killed it, and on the legs the sine does.
        for p in [
            Point2::new(2.0, 2.0),
            Point2::new(-2.0, 0.7),
            Point2::new(0.3, -2.0),
            Point2::new(0.6, 0.0),
            Point2::new(0.0, -1.2),
        ] {
            assert_abs_diff_eq!(nonsmooth_value(p), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn signorini_load_has_quarter_period_amplitude_and_odd_symmetry() {
        use std::f64::consts::PI;
        for y in [0.0, 0.3, 1.0] {
            assert_relative_eq!(
                signorini_load(Point2::new(0.25, y)),
                -2.0 * PI,
                max_relative = 1e-15
            );
        }
        // Antisymmetric about x = 1/2, so the total load is balanced.
        for x in [0.1, 0.2, 0.45] {
            assert_abs_diff_eq!(
                signorini_load(Point2::new(x, 0.5)) + signorini_load(Point2::new(1.0 - x, 0.5)),
                0.0,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn signorini_base_mesh_tags_bottom_contact_top_dirichlet() {
        let problem = signorini::<f64>();
        let mesh = problem.base_mesh().unwrap();
        let mut counts = std::collections::HashMap::new();
        for edge in &mesh.edges {
            if let Some(tag) = edge.tag {
                *counts.entry(tag).or_insert(0usize) += 1;
            }
        }
        assert_eq!(counts[&BoundaryTag::Contact], 4);
        assert_eq!(counts[&BoundaryTag::Dirichlet], 4);
        assert_eq!(counts[&BoundaryTag::Neumann], 8);
        assert_eq!(problem.default_levels, 5);
        assert_eq!(problem.overkill_extra, 2);
        assert!(problem.exact.is_none());
    }

    #[test]
    fn obstacle_base_meshes_are_fully_dirichlet() {
        let smooth = smooth_obstacle::<f64>();
        let mesh = smooth.base_mesh().unwrap();
        assert_eq!(mesh.num_vertices(), 25);
        assert!(mesh
            .edges
            .iter()
            .filter_map(|e| e.tag)
            .all(|t| t == BoundaryTag::Dirichlet));

        let nonsmooth = nonsmooth_obstacle::<f64>();
        let mesh = nonsmooth.base_mesh().unwrap();
        assert_eq!(mesh.num_vertices(), 21);
        assert!(mesh
            .edges
            .iter()
            .filter_map(|e| e.tag)
            .all(|t| t == BoundaryTag::Dirichlet));
    }

    #[test]
    fn dirichlet_data_agrees_with_exact_solution_on_the_boundary() {
        let smooth = smooth_obstacle::<f64>();
        for p in [Point2::new(-1.0, 0.3), Point2::new(0.7, 1.0)] {
            let g = (smooth.dirichlet)(p);
            let u = (smooth.exact.as_ref().unwrap().value)(p);
            assert_eq!(g, u);
            assert!(g < 0.0);
        }
    }

    #[test]
    fn recommended_parameters_follow_the_formulation() {
        let problem = signorini::<f64>();
        let cfg = problem.config(Formulation::F1);
        assert_eq!(cfg.gamma0, 0.1);
        assert_eq!(cfg.s_exponent, 0.5);
        assert_eq!(cfg.effective_gamma_exponent(), 1.0);
        // The multiplier-equation formulations need a large penalty scale.
        assert_eq!(problem.config(Formulation::F2).gamma0, 10.0);
        assert_eq!(problem.config(Formulation::F2Alt).gamma0, 10.0);
        assert_eq!(problem.config(Formulation::F1Alt).gamma0, 0.1);

        let smooth = smooth_obstacle::<f64>();
        let cfg = smooth.config(Formulation::F1);
        assert_eq!(cfg.gamma0, 0.01);
        // The study scales γ like h even though the theory would allow h².
        assert_eq!(cfg.effective_gamma_exponent(), 1.0);
        assert_eq!(cfg.delta, 1.0);
    }

    #[test]
    fn problems_resolve_by_name() {
        for name in PROBLEM_NAMES {
            assert_eq!(by_name::<f64>(name).unwrap().name, name);
        }
        // Short aliases resolve to the canonical benchmarks.
        assert_eq!(by_name::<f64>("smooth").unwrap().name, "smooth-obstacle");
        assert_eq!(by_name::<f64>("nonsmooth").unwrap().name, "nonsmooth-obstacle");
        assert!(by_name::<f64>("unknown").is_none());
    }

    proptest! {
        #[test]
        fn smooth_solution_is_admissible_everywhere(
            x in -1.0f64..1.0,
            y in -1.0f64..1.0,
        ) {
            let p = Point2::new(x, y);
            let u = smooth_value(p);
            prop_assert!(u <= 0.0);
            let rsq = x * x + y * y;
            if rsq <= SMOOTH_R0 * SMOOTH_R0 {
                prop_assert_eq!(u, 0.0);
            } else if rsq > SMOOTH_R0 * SMOOTH_R0 + 1e-3 {
                prop_assert!(u < 0.0);
            }
        }

        #[test]
        fn nonsmooth_solution_is_admissible_and_cutoff_monotone(
            r in 1e-6f64..2.0,
            frac in 0.0f64..1.0,
            dr in 0.0f64..1.0,
        ) {
            // Sample polar coordinates inside the L-shaped domain's angular
            // range; admissibility u ≤ 0 must hold throughout.
            let phi = frac * 1.5 * std::f64::consts::PI;
            let p = Point2::new(r * phi.cos(), r * phi.sin());
            prop_assert!(nonsmooth_value(p) <= 0.0);
            // The cutoff decreases monotonically from one to zero.
            let (g_near, _, _) = cutoff(r);
            let (g_far, _, _) = cutoff(r + dr);
            prop_assert!(g_near >= g_far);
            prop_assert!((0.0..=1.0).contains(&g_near));
        }
    }
}
