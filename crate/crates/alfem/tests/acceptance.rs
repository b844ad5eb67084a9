//! End-to-end acceptance suite.
//!
//! Each test exercises one headline requirement — benchmark convergence
//! rates, formulation equivalence, Jacobian consistency, solution
//! uniqueness, and the supporting algebraic identities — and prints a
//! single `ACCEPTANCE n: PASS/FAIL` line (directly to stdout, past the
//! harness capture) before asserting.

use std::io::Write as _;
use std::time::Instant;

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use alfem::assembly::{
    assemble_stabilization, build_system, element_stiffness, DiscreteSystem,
};
use alfem::contact::{
    gamma_of_h, generalized_jacobian, plus, residual, ContactConfig, Formulation,
};
use alfem::harness::{emit_outputs, run_study};
use alfem::mesh::{l_shaped_mesh, square_mesh, BoundaryTag, Mesh, Point2, ProblemKind};
use alfem::problems::{
    nonsmooth_obstacle, signorini, smooth_load, smooth_obstacle, ProblemSpec,
};
use alfem::quadrature::QuadratureRule;
use alfem::solver::{
    energy_distance, linear_solve, semismooth_newton, semismooth_newton_from,
    LinearSolverKind, SolveSettings,
};
use alfem::spaces::{build_multiplier_space, build_primal_space};

/// Prints the verdict line for one criterion straight to stdout (bypassing
/// the per-test capture) and then enforces it.
fn report(n: usize, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    writeln!(out, "ACCEPTANCE {n}: {verdict} ({detail})").ok();
    out.flush().ok();
    assert!(pass, "acceptance criterion {n} failed: {detail}");
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Assembles a benchmark's discrete system on the given refinement level
/// (0 = base mesh), with γ from the config's mesh-size law.
fn benchmark_system(
    problem: &ProblemSpec<f64>,
    cfg: &ContactConfig<f64>,
    refinements: usize,
) -> DiscreteSystem<f64> {
    let mut mesh = problem.base_mesh().unwrap();
    for _ in 0..refinements {
        mesh = mesh.uniform_refine();
    }
    system_on_mesh(&mesh, problem, cfg)
}

fn system_on_mesh(
    mesh: &Mesh<f64>,
    problem: &ProblemSpec<f64>,
    cfg: &ContactConfig<f64>,
) -> DiscreteSystem<f64> {
    let mut primal = build_primal_space(mesh, BoundaryTag::Dirichlet).unwrap();
    primal.set_dirichlet_values(mesh, |p| (problem.dirichlet)(p));
    let multiplier = build_multiplier_space(mesh, problem.kind).unwrap();
    let gamma = gamma_of_h(cfg, mesh.mesh_size());
    build_system(
        mesh,
        primal,
        multiplier,
        |p| (problem.load)(p),
        &QuadratureRule::assembly(),
        gamma,
        cfg.delta,
    )
    .unwrap()
}

/// Random state with entries in (−1, 1).
fn random_state(sys: &DiscreteSystem<f64>, rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
    let dist = Uniform::new(-1.0, 1.0);
    let u = (0..sys.primal.num_free()).map(|_| dist.sample(rng)).collect();
    let l = (0..sys.multiplier.num_dofs()).map(|_| dist.sample(rng)).collect();
    (u, l)
}

#[test]
fn criterion_01_smooth_obstacle_convergence_rates() {
    let start = Instant::now();
    let problem = smooth_obstacle::<f64>();
    let cfg = problem.config(Formulation::F1);
    let table = run_study(&problem, &cfg, 6, &SolveSettings::default()).unwrap();

    let elapsed = start.elapsed().as_secs_f64();
    let (ord_l2, ord_h1) = table.last_orders();
    let (ord_l2, ord_h1) = (ord_l2.unwrap_or(f64::NAN), ord_h1.unwrap_or(f64::NAN));
    let decreasing = table.rows.windows(2).skip(1).all(|w| {
        w[1].err_l2 < w[0].err_l2 && w[1].err_h1 < w[0].err_h1
    });
    let pass = table.all_converged()
        && ord_l2 >= 1.8
        && ord_h1 >= 0.9
        && decreasing
        && elapsed < 120.0;
    report(
        1,
        pass,
        &format!(
            "smooth obstacle, 6 levels: last L2 order {ord_l2:.3} (>= 1.8), \
             last H1 order {ord_h1:.3} (>= 0.9), errors decreasing: {decreasing}, \
             {elapsed:.1}s (< 120s)"
        ),
    );
}

#[test]
fn criterion_02_signorini_convergence_rates() {
    let start = Instant::now();
    let problem = signorini::<f64>();
    let cfg = problem.config(Formulation::F1);
    let table = run_study(&problem, &cfg, problem.default_levels, &SolveSettings::default())
        .unwrap();

    let elapsed = start.elapsed().as_secs_f64();
    let (ord_l2, ord_h1) = table.last_orders();
    let (ord_l2, ord_h1) = (ord_l2.unwrap_or(f64::NAN), ord_h1.unwrap_or(f64::NAN));
    let pass = table.all_converged() && ord_l2 >= 1.7 && ord_h1 >= 0.85 && elapsed < 300.0;
    report(
        2,
        pass,
        &format!(
            "signorini, 5 levels + overkill reference: last L2 order {ord_l2:.3} (>= 1.7), \
             last H1 order {ord_h1:.3} (>= 0.85), {elapsed:.1}s (< 300s)"
        ),
    );
}

#[test]
fn criterion_03_nonsmooth_obstacle_convergence_rates() {
    let start = Instant::now();
    let problem = nonsmooth_obstacle::<f64>();
    let cfg = problem.config(Formulation::F1);
    let table = run_study(&problem, &cfg, problem.default_levels, &SolveSettings::default())
        .unwrap();

    let elapsed = start.elapsed().as_secs_f64();
    let (ord_l2, ord_h1) = table.last_orders();
    let (ord_l2, ord_h1) = (ord_l2.unwrap_or(f64::NAN), ord_h1.unwrap_or(f64::NAN));

    // Measured orders must land in the CSV artifact.
    let dir = std::env::temp_dir().join(format!("alfem-acceptance-{}", std::process::id()));
    let (csv_path, _) = emit_outputs(&table, &dir).unwrap();
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let last_fields: Vec<&str> = csv.lines().last().unwrap().split(',').collect();
    let csv_has_orders = !last_fields[5].is_empty() && !last_fields[6].is_empty();
    std::fs::remove_dir_all(&dir).ok();

    let pass = table.all_converged()
        && ord_l2 >= 1.4
        && ord_h1 >= 0.55
        && csv_has_orders
        && elapsed < 300.0;
    report(
        3,
        pass,
        &format!(
            "nonsmooth obstacle, 6 levels: last L2 order {ord_l2:.3} (>= 1.4), \
             last H1 order {ord_h1:.3} (>= 0.55), orders in CSV: {csv_has_orders}, \
             {elapsed:.1}s (< 300s)"
        ),
    );
}

#[test]
fn criterion_04_formulation_equivalence() {
    // Residuals of the paired formulations must agree at arbitrary states,
    // not just at solutions, on both problem kinds.
    let obstacle = smooth_obstacle::<f64>();
    let obstacle_cfg = obstacle.config(Formulation::F1);
    let obstacle_sys = benchmark_system(&obstacle, &obstacle_cfg, 1);
    let contact = signorini::<f64>();
    let contact_cfg = contact.config(Formulation::F1);
    let contact_sys = benchmark_system(&contact, &contact_cfg, 1);

    let pairs = [
        (Formulation::F1, Formulation::F1Alt),
        (Formulation::F2, Formulation::F2Alt),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x0401);
    let mut worst = 0.0f64;
    for trial in 0..200 {
        let (sys, cfg) = if trial % 2 == 0 {
            (&obstacle_sys, &obstacle_cfg)
        } else {
            (&contact_sys, &contact_cfg)
        };
        let (u, l) = random_state(sys, &mut rng);
        for (a, b) in pairs {
            let mut cfg_a = *cfg;
            cfg_a.formulation = a;
            let mut cfg_b = *cfg;
            cfg_b.formulation = b;
            let ra = residual(&cfg_a, sys, &u, &l).unwrap();
            let rb = residual(&cfg_b, sys, &u, &l).unwrap();
            let diff: Vec<f64> = ra.iter().zip(&rb).map(|(x, y)| x - y).collect();
            let rel = norm2(&diff) / norm2(&ra).max(1.0);
            worst = worst.max(rel);
        }
    }
    report(
        4,
        worst <= 1e-12,
        &format!(
            "‖r(F1)−r(F1-alt)‖ and ‖r(F2)−r(F2-alt)‖ over 200 random states: \
             worst relative difference {worst:.2e} (<= 1e-12)"
        ),
    );
}

#[test]
fn criterion_05_projection_monotonicity() {
    // ([a]+ − [b]+)² ≤ ([a]+ − [b]+)(a − b) and |[a]+ − [b]+| ≤ |a − b|
    // for scalars of mixed magnitudes, with scaled floating-point slack.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0501);
    let magnitudes = Uniform::new(-8.0f64, 8.0);
    let signs = Uniform::new(0u8, 2);
    let draw = |rng: &mut ChaCha8Rng| {
        let m = 10f64.powf(magnitudes.sample(rng));
        if signs.sample(rng) == 0 {
            m
        } else {
            -m
        }
    };
    let mut checked = 0usize;
    for _ in 0..10_000 {
        let (a, b) = (draw(&mut rng), draw(&mut rng));
        let d = plus(a) - plus(b);
        let scale_sq = 1.0f64.max(a * a).max(b * b);
        assert!(
            d * d <= d * (a - b) + 1e-12 * scale_sq,
            "quadratic monotonicity violated at a={a}, b={b}"
        );
        let scale = 1.0f64.max(a.abs()).max(b.abs());
        assert!(
            d.abs() <= (a - b).abs() + 1e-12 * scale,
            "Lipschitz bound violated at a={a}, b={b}"
        );
        checked += 1;
    }
    report(
        5,
        checked == 10_000,
        &format!("both projection inequalities held for {checked}/10000 random pairs"),
    );
}

#[test]
fn criterion_06_jacobian_consistency() {
    let problem = smooth_obstacle::<f64>();
    let cfg0 = problem.config(Formulation::F1);
    let sys = benchmark_system(&problem, &cfg0, 0);
    let m = sys.num_unknowns();
    let nf = sys.primal.num_free();

    // Distance of a state from the nearest projection kink, over all
    // contact quadrature points.
    let kink_distance = |u: &[f64], l: &[f64]| -> f64 {
        let mut dist = f64::INFINITY;
        for (k, cell) in sys.contact_cells.iter().enumerate() {
            for q in &cell.points {
                dist = dist.min((q.trace_value(u) - sys.gamma * l[k]).abs());
            }
        }
        dist
    };

    let mut rng = ChaCha8Rng::seed_from_u64(0x0601);
    let dist = Uniform::new(-1.0, 1.0);
    let mut passes = 0usize;
    let mut canary_caught = false;
    for state in 0..50 {
        let formulation = Formulation::ALL[state % 4];
        let mut cfg = cfg0;
        cfg.formulation = formulation;

        // Filter states away from kinks so the residual is differentiable
        // along the finite-difference path.
        let (u, l) = loop {
            let (u, l) = random_state(&sys, &mut rng);
            if kink_distance(&u, &l) > 1e-3 {
                break (u, l);
            }
        };
        let direction: Vec<f64> = (0..m).map(|_| dist.sample(&mut rng)).collect();
        let dnorm = norm2(&direction);
        let direction: Vec<f64> = direction.iter().map(|x| x / dnorm).collect();

        let r0 = residual(&cfg, &sys, &u, &l).unwrap();
        let jac = generalized_jacobian(&cfg, &sys, &u, &l).unwrap();
        let jd = jac.matvec(&direction);
        let scale = norm2(&r0).max(1.0);

        let fd_error = |jd: &[f64], eps: f64| -> f64 {
            let u_eps: Vec<f64> = u.iter().zip(&direction[..nf]).map(|(x, d)| x + eps * d).collect();
            let l_eps: Vec<f64> =
                l.iter().zip(&direction[nf..]).map(|(x, d)| x + eps * d).collect();
            let r_eps = residual(&cfg, &sys, &u_eps, &l_eps).unwrap();
            let diff: Vec<f64> = r_eps
                .iter()
                .zip(&r0)
                .zip(jd)
                .map(|((re, r0), jd)| (re - r0) / eps - jd)
                .collect();
            norm2(&diff)
        };
        let matches = |jd: &[f64]| -> bool {
            let e5 = fd_error(jd, 1e-5);
            let e6 = fd_error(jd, 1e-6);
            if e5 <= 1e-8 * scale && e6 <= 1e-8 * scale {
                return true;
            }
            e6 > 0.0 && (e5 / e6).log10() >= 0.9
        };
        if matches(&jd) {
            passes += 1;
        }

        if state == 0 {
            // Canary: a corrupted Jacobian column must be rejected.
            let mut jd_bad = jd.clone();
            jd_bad[0] += 0.5;
            canary_caught = !matches(&jd_bad);
        }
    }
    report(
        6,
        passes == 50 && canary_caught,
        &format!(
            "finite differences matched the generalized Jacobian for {passes}/50 \
             kink-separated states; corrupted-Jacobian canary rejected: {canary_caught}"
        ),
    );
}

#[test]
fn criterion_07_converged_solution_complementarity() {
    let settings = SolveSettings::default();
    let tol = settings.tol_residual;
    let mut detail = String::new();
    let mut pass = true;
    for problem in [smooth_obstacle::<f64>(), nonsmooth_obstacle::<f64>(), signorini::<f64>()] {
        for formulation in [Formulation::F1, Formulation::F2] {
            let cfg = problem.config(formulation);
            let sys = benchmark_system(&problem, &cfg, 0);
            let (sol, rep) = semismooth_newton(&cfg, &sys, &settings).unwrap();
            let r = residual(&cfg, &sys, &sol.u, &sol.lambda).unwrap();

            // Euclidean residual and the measure-weighted multiplier norm.
            let rnorm = norm2(&r);
            let nf = sys.primal.num_free();
            let wnorm = r[nf..]
                .iter()
                .zip(&sys.multiplier.measures)
                .map(|(rk, mk)| rk * rk / mk)
                .sum::<f64>()
                .sqrt();

            // Multiplier admissibility away from the free boundary: cells
            // whose quadrature points all agree on the contact state must
            // carry a nonpositive multiplier (up to tolerance).
            let mut sign_ok = true;
            for (k, cell) in sys.contact_cells.iter().enumerate() {
                let active = cell
                    .points
                    .iter()
                    .filter(|q| q.trace_value(&sol.u) - sys.gamma * sol.lambda[k] > 0.0)
                    .count();
                let mixed = active > 0 && active < cell.points.len();
                if !mixed && sol.lambda[k] > 1e-6 {
                    sign_ok = false;
                }
            }

            let ok = rep.converged && rnorm <= 10.0 * tol && wnorm <= 10.0 * tol && sign_ok;
            pass &= ok;
            detail.push_str(&format!(
                "{}/{}: ‖r‖={rnorm:.1e}, weighted={wnorm:.1e}, sign ok: {sign_ok}; ",
                problem.name, formulation
            ));
        }
    }
    detail.push_str(&format!("all <= 10*tol = {:.0e}", 10.0 * tol));
    report(7, pass, &detail);
}

#[test]
fn criterion_08_uniqueness_from_random_initial_guesses() {
    let problem = smooth_obstacle::<f64>();
    let cfg = problem.config(Formulation::F1);
    let sys = benchmark_system(&problem, &cfg, 1);
    let settings = SolveSettings::default();
    let (reference, report_ref) = semismooth_newton(&cfg, &sys, &settings).unwrap();
    assert!(report_ref.converged);

    let mut rng = ChaCha8Rng::seed_from_u64(0x0801);
    let mut worst = 0.0f64;
    let mut all_converged = true;
    for _ in 0..20 {
        let (u0, l0) = random_state(&sys, &mut rng);
        let (sol, rep) = semismooth_newton_from(&cfg, &sys, &settings, u0, l0).unwrap();
        all_converged &= rep.converged;
        let d = energy_distance(
            &sys,
            (&sol.u, &sol.lambda),
            (&reference.u, &reference.lambda),
        );
        worst = worst.max(d);
    }
    report(
        8,
        all_converged && worst <= 1e-8,
        &format!(
            "20 random initial guesses converged: {all_converged}; worst energy-norm \
             distance to the zero-start solution {worst:.2e} (<= 1e-8)"
        ),
    );
}

#[test]
fn criterion_09_no_contact_matches_unconstrained_poisson() {
    // A downward load keeps the membrane strictly below the obstacle, so
    // the contact solve must reproduce a plain Poisson solve exactly.
    let mesh: Mesh<f64> = square_mesh(
        Point2::new(-1.0, -1.0),
        Point2::new(1.0, 1.0),
        8,
        |_| BoundaryTag::Dirichlet,
    )
    .unwrap();
    let mut worst_u = 0.0f64;
    let mut worst_l = 0.0f64;
    for formulation in Formulation::ALL {
        let cfg = ContactConfig {
            formulation,
            gamma0: 0.1,
            delta: 1.0,
            s_exponent: 1.0,
            gamma_exponent: Some(1.0),
        };
        let primal = build_primal_space(&mesh, BoundaryTag::Dirichlet).unwrap();
        let multiplier = build_multiplier_space(&mesh, ProblemKind::Obstacle).unwrap();
        let gamma = gamma_of_h(&cfg, mesh.mesh_size());
        let sys = build_system(
            &mesh,
            primal,
            multiplier,
            |_| -10.0,
            &QuadratureRule::assembly(),
            gamma,
            cfg.delta,
        )
        .unwrap();
        let (sol, rep) = semismooth_newton(&cfg, &sys, &SolveSettings::default()).unwrap();
        assert!(rep.converged, "{formulation} did not converge");

        let poisson = linear_solve(&sys.stiffness, &sys.load, LinearSolverKind::SparseLu).unwrap();
        for (a, b) in sol.u.iter().zip(&poisson) {
            worst_u = worst_u.max((a - b).abs());
        }
        for l in &sol.lambda {
            worst_l = worst_l.max(l.abs());
        }
    }
    report(
        9,
        worst_u <= 1e-10 && worst_l <= 1e-10,
        &format!(
            "all four formulations vs unconstrained Poisson: max coefficient \
             deviation {worst_u:.2e}, max |multiplier| {worst_l:.2e} (both <= 1e-10)"
        ),
    );
}

#[test]
fn criterion_10_mesh_and_assembly_identities() {
    // Domain areas.
    let square: Mesh<f64> = square_mesh(
        Point2::new(-1.0, -1.0),
        Point2::new(1.0, 1.0),
        5,
        |_| BoundaryTag::Dirichlet,
    )
    .unwrap();
    let area_square = square.total_area();
    let lshape: Mesh<f64> = l_shaped_mesh(2, |_| BoundaryTag::Dirichlet).unwrap();
    let area_lshape = lshape.total_area();
    let areas_ok = (area_square - 4.0).abs() <= 1e-12 && (area_lshape - 12.0).abs() <= 1e-12;

    // Reference element stiffness.
    let k = element_stiffness::<f64>([
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(0.0, 1.0),
    ]);
    let expected = [[1.0, -0.5, -0.5], [-0.5, 0.5, 0.0], [-0.5, 0.0, 0.5]];
    let mut stiffness_ok = true;
    for i in 0..3 {
        for j in 0..3 {
            stiffness_ok &= (k[i][j] - expected[i][j]).abs() <= 1e-14;
        }
    }

    // Constants lie in the stabilization kernel.
    let multiplier = build_multiplier_space(&square, ProblemKind::Obstacle).unwrap();
    let faces = square.multiplier_faces(ProblemKind::Obstacle);
    let stab = assemble_stabilization(&multiplier, &faces, 1.0f64, 0.05f64);
    let ones = vec![1.0; multiplier.num_dofs()];
    let kernel_defect = stab
        .matvec(&ones)
        .iter()
        .fold(0.0f64, |acc, x| acc.max(x.abs()));
    let kernel_ok = kernel_defect <= 1e-12 * stab.max_abs().max(1.0);

    // Load continuity across the contact circle.
    let r0 = 0.25f64;
    let inside = 8.0 * r0 * r0 * (1.0 - (r0 * r0 - r0 * r0));
    let outside = 8.0 * (r0 * r0 + (r0 * r0 - r0 * r0));
    let load_ok = (inside - outside).abs() <= 1e-12
        && (smooth_load(Point2::new(r0, 0.0)) - 8.0 * r0 * r0).abs() <= 1e-12;

    report(
        10,
        areas_ok && stiffness_ok && kernel_ok && load_ok,
        &format!(
            "areas (4, 12): ({area_square:.12}, {area_lshape:.12}); reference stiffness \
             matches: {stiffness_ok}; stabilization kernel defect {kernel_defect:.1e}; \
             load continuity at r0: {load_ok}"
        ),
    );
}
