//! Convergence-study driver: refinement sweeps, error norms, observed
//! orders, and CSV/SVG reporting.
//!
//! [`run_study`] solves a benchmark on a hierarchy of uniformly refined
//! meshes, recomputing the penalty parameter on every level, and measures
//! L₂ and H¹ errors either against the benchmark's exact solution or —
//! when none exists — against an overkill discrete reference computed on a
//! finer mesh and compared after exact nested prolongation. The resulting
//! [`ConvergenceTable`] carries observed orders between consecutive levels
//! and renders itself as a deterministic CSV file and a log-log SVG plot
//! with reference slope triangles.

use std::fmt;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::assembly::build_system;
use crate::contact::{gamma_of_h, ContactConfig};
use crate::error::{Error, Result};
use crate::mesh::{prolong, BoundaryTag, Mesh, Point2};
use crate::problems::ProblemSpec;
use crate::quadrature::QuadratureRule;
use crate::scalar::{Real, SolveScalar};
use crate::solver::{semismooth_newton, SolveSettings};
use crate::spaces::{build_multiplier_space, build_primal_space};

/// One refinement level of a convergence study.
#[derive(Clone, Debug)]
pub struct ConvergenceRow<T> {
    /// Refinement level, starting at 1 for the base mesh.
    pub level: usize,
    /// Number of mesh vertices.
    pub nno: usize,
    /// Mesh size `h = 1/√NNO`.
    pub h: T,
    /// L₂ error against the exact solution or overkill reference.
    pub err_l2: T,
    /// H¹ seminorm error.
    pub err_h1: T,
    /// Observed L₂ order against the previous level; `None` on the first row.
    pub ord_l2: Option<T>,
    /// Observed H¹ order against the previous level.
    pub ord_h1: Option<T>,
    /// Newton iterations spent on this level.
    pub newton_iterations: usize,
    /// Whether the nonlinear solve reached its stopping criterion.
    pub converged: bool,
}

/// Results of a convergence study over a refinement hierarchy.
#[derive(Clone, Debug)]
pub struct ConvergenceTable<T> {
    /// Benchmark name; used for titles and output file stems.
    pub name: String,
    /// Reference inclinations `(L₂, H¹)` drawn on the log-log plot.
    pub reference_slopes: (T, T),
    /// One row per refinement level, coarsest first.
    pub rows: Vec<ConvergenceRow<T>>,
}

/// Observed order between consecutive levels,
/// `log(e_prev/e) / log(h_prev/h)`, or `None` when the ratio is undefined.
fn observed_order<T: Real>(e_prev: T, e: T, h_prev: T, h: T) -> Option<T> {
    let usable = e_prev > T::zero()
        && e > T::zero()
        && e_prev.is_finite()
        && e.is_finite()
        && h_prev > h
        && h > T::zero();
    if usable {
        Some((e_prev / e).ln() / (h_prev / h).ln())
    } else {
        None
    }
}

/// Formats an error or mesh-size column deterministically.
fn fmt_sci<T: Real>(x: T) -> String {
    format!("{:.12e}", x.as_f64())
}

impl<T: Real> ConvergenceTable<T> {
    /// Creates an empty table for the named benchmark.
    pub fn new(name: impl Into<String>, reference_slopes: (T, T)) -> Self {
        Self { name: name.into(), reference_slopes, rows: Vec::new() }
    }

    /// Appends a level, deriving observed orders from the previous row.
    #[allow(clippy::too_many_arguments)]
    pub fn push_level(
        &mut self,
        level: usize,
        nno: usize,
        h: T,
        err_l2: T,
        err_h1: T,
        newton_iterations: usize,
        converged: bool,
    ) {
        let (ord_l2, ord_h1) = match self.rows.last() {
            Some(prev) => (
                observed_order(prev.err_l2, err_l2, prev.h, h),
                observed_order(prev.err_h1, err_h1, prev.h, h),
            ),
            None => (None, None),
        };
        self.rows.push(ConvergenceRow {
            level,
            nno,
            h,
            err_l2,
            err_h1,
            ord_l2,
            ord_h1,
            newton_iterations,
            converged,
        });
    }

    /// True when every level's nonlinear solve converged.
    pub fn all_converged(&self) -> bool {
        self.rows.iter().all(|r| r.converged)
    }

    /// Observed orders on the finest level.
    pub fn last_orders(&self) -> (Option<T>, Option<T>) {
        match self.rows.last() {
            Some(r) => (r.ord_l2, r.ord_h1),
            None => (None, None),
        }
    }

    /// Renders the table as CSV. The output is a pure function of the table
    /// contents, so reruns produce byte-identical files. Order columns are
    /// blank where no order is defined.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("level,nno,h,err_l2,err_h1,ord_l2,ord_h1,newton_its\n");
        for r in &self.rows {
            let ord = |o: Option<T>| o.map(|v| format!("{:.6}", v.as_f64())).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.level,
                r.nno,
                fmt_sci(r.h),
                fmt_sci(r.err_l2),
                fmt_sci(r.err_h1),
                ord(r.ord_l2),
                ord(r.ord_h1),
                r.newton_iterations
            )
            .expect("writing to a String cannot fail");
        }
        out
    }

    /// Renders a log-log convergence plot (error vs `h`) as a standalone
    /// SVG document, with both error series and dashed/dotted reference
    /// lines of the configured inclinations drawn as slope triangles.
    pub fn render_svg(&self) -> String {
        render_svg(self)
    }
}

impl<T: Real> fmt::Display for ConvergenceTable<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        writeln!(
            f,
            "{:>5} {:>8} {:>11} {:>13} {:>13} {:>7} {:>7} {:>7}",
            "level", "nno", "h", "err_l2", "err_h1", "ord_l2", "ord_h1", "newton"
        )?;
        for r in &self.rows {
            let ord = |o: Option<T>| match o {
                Some(v) => format!("{:7.3}", v.as_f64()),
                None => format!("{:>7}", "-"),
            };
            writeln!(
                f,
                "{:>5} {:>8} {:>11.5e} {:>13.6e} {:>13.6e} {} {} {:>7}{}",
                r.level,
                r.nno,
                r.h.as_f64(),
                r.err_l2.as_f64(),
                r.err_h1.as_f64(),
                ord(r.ord_l2),
                ord(r.ord_h1),
                r.newton_iterations,
                if r.converged { "" } else { "  [not converged]" }
            )?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Error norms.
// ---------------------------------------------------------------------------

/// Gradients of the three vertex hat functions on a triangle, constant over
/// the element: `∇φ_a = rot90(c − b) / (2|K|)` and cyclic shifts.
fn p1_gradients<T: Real>(p: [Point2<T>; 3], area: T) -> [Point2<T>; 3] {
    let s = T::one() / (T::cast(2.0) * area);
    let rot = |tip: Point2<T>, tail: Point2<T>| {
        Point2::new(-(tip.y - tail.y) * s, (tip.x - tail.x) * s)
    };
    [rot(p[2], p[1]), rot(p[0], p[2]), rot(p[1], p[0])]
}

/// L₂ distance `√∫ (u_h − u)²` between a P1 function given by vertex values
/// and an arbitrary comparand evaluated at quadrature points.
pub fn l2_error<T: Real>(
    mesh: &Mesh<T>,
    vertex_values: &[T],
    exact: impl Fn(Point2<T>) -> T,
    quad: &QuadratureRule<T>,
) -> T {
    let mut acc = T::zero();
    for t in 0..mesh.num_triangles() {
        let verts = mesh.triangles[t];
        let pts = mesh.triangle_points(t);
        let area = mesh.triangle_area(t);
        for (bary, w) in &quad.triangle {
            let p = Point2::new(
                bary[0] * pts[0].x + bary[1] * pts[1].x + bary[2] * pts[2].x,
                bary[0] * pts[0].y + bary[1] * pts[1].y + bary[2] * pts[2].y,
            );
            let uh = bary[0] * vertex_values[verts[0]]
                + bary[1] * vertex_values[verts[1]]
                + bary[2] * vertex_values[verts[2]];
            let d = uh - exact(p);
            acc += area * *w * d * d;
        }
    }
    acc.sqrt()
}

/// H¹ seminorm distance `√∫ |∇u_h − ∇u|²` between a P1 function and a
/// comparand gradient field evaluated at quadrature points.
pub fn h1_error<T: Real>(
    mesh: &Mesh<T>,
    vertex_values: &[T],
    exact_gradient: impl Fn(Point2<T>) -> Point2<T>,
    quad: &QuadratureRule<T>,
) -> T {
    let mut acc = T::zero();
    for t in 0..mesh.num_triangles() {
        let verts = mesh.triangles[t];
        let pts = mesh.triangle_points(t);
        let area = mesh.triangle_area(t);
        let grads = p1_gradients(pts, area);
        let mut gh = Point2::new(T::zero(), T::zero());
        for i in 0..3 {
            gh.x += vertex_values[verts[i]] * grads[i].x;
            gh.y += vertex_values[verts[i]] * grads[i].y;
        }
        for (bary, w) in &quad.triangle {
            let p = Point2::new(
                bary[0] * pts[0].x + bary[1] * pts[1].x + bary[2] * pts[2].x,
                bary[0] * pts[0].y + bary[1] * pts[1].y + bary[2] * pts[2].y,
            );
            let ge = exact_gradient(p);
            let (dx, dy) = (gh.x - ge.x, gh.y - ge.y);
            acc += area * *w * (dx * dx + dy * dy);
        }
    }
    acc.sqrt()
}

// ---------------------------------------------------------------------------
// Study driver.
// ---------------------------------------------------------------------------

/// Full vertex values of the discrete solution on one mesh, plus the Newton
/// iteration count and convergence status.
fn solve_on_mesh<T: SolveScalar>(
    problem: &ProblemSpec<T>,
    cfg: &ContactConfig<T>,
    mesh: &Mesh<T>,
    settings: &SolveSettings<T>,
    quad: &QuadratureRule<T>,
) -> Result<(Vec<T>, usize, bool)> {
    let mut primal = build_primal_space(mesh, BoundaryTag::Dirichlet)?;
    primal.set_dirichlet_values(mesh, |p| (problem.dirichlet)(p));
    let multiplier = build_multiplier_space(mesh, problem.kind)?;
    let gamma = gamma_of_h(cfg, mesh.mesh_size());
    let sys = build_system(
        mesh,
        primal,
        multiplier,
        |p| (problem.load)(p),
        quad,
        gamma,
        cfg.delta,
    )?;
    let (solution, report) = semismooth_newton(cfg, &sys, settings)?;
    Ok((
        sys.primal.vertex_values(&solution.u),
        solution.newton_iterations,
        report.converged,
    ))
}

/// Runs a convergence study over `levels` uniformly refined meshes.
///
/// The penalty parameter is recomputed on every level from that level's
/// mesh size. Errors are measured against the exact solution when the
/// benchmark has one; otherwise a discrete overkill reference is solved
/// first on a mesh `overkill_extra` levels finer than the study range, and
/// each study solution is prolonged (exactly, through the nested hierarchy)
/// to the reference mesh before the norms are evaluated there.
///
/// A level whose nonlinear solve fails still produces a row — flagged as
/// not converged, with whatever errors the final iterate gives — and the
/// study continues on the remaining levels.
pub fn run_study<T: SolveScalar>(
    problem: &ProblemSpec<T>,
    cfg: &ContactConfig<T>,
    levels: usize,
    settings: &SolveSettings<T>,
) -> Result<ConvergenceTable<T>> {
    if levels < 2 {
        return Err(Error::InvalidArgument(
            "run_study needs at least two levels to observe an order".into(),
        ));
    }
    let assembly_quad = QuadratureRule::assembly();
    let error_quad = QuadratureRule::errors();

    let use_reference = problem.exact.is_none();
    let total_levels = if use_reference { levels + problem.overkill_extra } else { levels };
    let mut meshes = Vec::with_capacity(total_levels);
    meshes.push(problem.base_mesh()?);
    for _ in 1..total_levels {
        let next = meshes.last().expect("hierarchy is nonempty").uniform_refine();
        meshes.push(next);
    }

    // The overkill reference must be available before any study-level error
    // is evaluated, so it is computed first.
    let reference = if use_reference {
        let fine = meshes.last().expect("hierarchy is nonempty");
        let (values, its, converged) = solve_on_mesh(problem, cfg, fine, settings, &assembly_quad)?;
        if !converged {
            log::warn!(
                "overkill reference solve did not converge after {} iterations; \
                 reported errors may be unreliable",
                its
            );
        }
        Some(values)
    } else {
        None
    };

    let mut table = ConvergenceTable::new(problem.name, problem.reference_slopes);
    for level in 1..=levels {
        let mesh = &meshes[level - 1];
        let (nno, h) = (mesh.num_vertices(), mesh.mesh_size());
        match solve_on_mesh(problem, cfg, mesh, settings, &assembly_quad) {
            Ok((values, its, converged)) => {
                let (err_l2, err_h1) = match (&reference, &problem.exact) {
                    (Some(reference), _) => {
                        // Prolong through the nested hierarchy and compare
                        // both discrete functions on the reference mesh.
                        let mut fine_values = values;
                        for k in (level - 1)..(meshes.len() - 1) {
                            fine_values = prolong(&meshes[k], &meshes[k + 1], &fine_values);
                        }
                        let fine_mesh = meshes.last().expect("hierarchy is nonempty");
                        let diff: Vec<T> = fine_values
                            .iter()
                            .zip(reference)
                            .map(|(a, b)| *a - *b)
                            .collect();
                        (
                            l2_error(fine_mesh, &diff, |_| T::zero(), &error_quad),
                            h1_error(
                                fine_mesh,
                                &diff,
                                |_| Point2::new(T::zero(), T::zero()),
                                &error_quad,
                            ),
                        )
                    }
                    (None, Some(exact)) => (
                        l2_error(mesh, &values, &exact.value, &error_quad),
                        h1_error(mesh, &values, &exact.gradient, &error_quad),
                    ),
                    (None, None) => unreachable!("study needs an exact solution or a reference"),
                };
                if !converged {
                    log::warn!("level {level} did not converge after {its} iterations");
                }
                table.push_level(level, nno, h, err_l2, err_h1, its, converged);
            }
            Err(err) => {
                log::warn!("level {level} failed: {err}");
                table.push_level(level, nno, h, T::nan(), T::nan(), 0, false);
            }
        }
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// Output files.
// ---------------------------------------------------------------------------

/// Endpoints of a reference line of the given slope in (h, error) space,
/// pinned to `anchor_err` at `h_to` and extended back to `h_from`.
pub fn reference_line<T: Real>(h_from: T, h_to: T, anchor_err: T, slope: T) -> [(T, T); 2] {
    let e_from = anchor_err * (h_from / h_to).powf(slope);
    [(h_from, e_from), (h_to, anchor_err)]
}

/// Short label for a reference inclination, e.g. `2`, `1`, or `5/3`.
fn slope_label(slope: f64) -> String {
    if (slope - slope.round()).abs() < 1e-9 {
        format!("{}", slope.round() as i64)
    } else if (slope - 5.0 / 3.0).abs() < 1e-9 {
        "5/3".to_string()
    } else {
        format!("{slope:.2}")
    }
}

/// Writes `<name>.csv` and `<name>.svg` into `out_dir`, creating the
/// directory if needed, and returns the two paths.
pub fn emit_outputs<T: Real>(
    table: &ConvergenceTable<T>,
    out_dir: &Path,
) -> Result<(PathBuf, PathBuf)> {
    if table.rows.is_empty() {
        return Err(Error::InvalidArgument("emit_outputs needs a nonempty table".into()));
    }
    std::fs::create_dir_all(out_dir)?;
    let csv_path = out_dir.join(format!("{}.csv", table.name));
    std::fs::write(&csv_path, table.to_csv())?;
    let svg_path = out_dir.join(format!("{}.svg", table.name));
    std::fs::write(&svg_path, table.render_svg())?;
    Ok((csv_path, svg_path))
}

/// Plot geometry: margins around the data area of a 720×540 canvas.
const SVG_W: f64 = 720.0;
const SVG_H: f64 = 540.0;
const SVG_ML: f64 = 84.0;
const SVG_MR: f64 = 24.0;
const SVG_MT: f64 = 48.0;
const SVG_MB: f64 = 64.0;

/// A dashed guide triangle: segment endpoints, inclination, dash pattern.
type SlopeGuide = ([(f64, f64); 2], f64, &'static str);

fn render_svg<T: Real>(table: &ConvergenceTable<T>) -> String {
    let finite = |x: T| x.is_finite() && x > T::zero();
    let series = |pick: &dyn Fn(&ConvergenceRow<T>) -> T| -> Vec<(f64, f64)> {
        table
            .rows
            .iter()
            .filter(|r| finite(r.h) && finite(pick(r)))
            .map(|r| (r.h.as_f64(), pick(r).as_f64()))
            .collect()
    };
    let pts_l2 = series(&|r| r.err_l2);
    let pts_h1 = series(&|r| r.err_h1);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_W} {SVG_H}" font-family="Helvetica, Arial, sans-serif" font-size="13">"##
    );
    let _ = writeln!(svg, r##"<rect width="{SVG_W}" height="{SVG_H}" fill="#ffffff"/>"##);
    let _ = writeln!(
        svg,
        r##"<text x="{:.1}" y="26" text-anchor="middle" font-size="16">{}: error vs mesh size</text>"##,
        SVG_W / 2.0,
        table.name
    );
    if pts_l2.is_empty() && pts_h1.is_empty() {
        let _ = writeln!(
            svg,
            r##"<text x="{:.1}" y="{:.1}" text-anchor="middle">no finite data</text>"##,
            SVG_W / 2.0,
            SVG_H / 2.0
        );
        svg.push_str("</svg>\n");
        return svg;
    }

    // Reference lines, anchored slightly below the finest point of each
    // series, spanning the full h range of the data.
    let all_h: Vec<f64> = pts_l2.iter().chain(&pts_h1).map(|p| p.0).collect();
    let h_min = all_h.iter().cloned().fold(f64::INFINITY, f64::min);
    let h_max = all_h.iter().cloned().fold(0.0f64, f64::max);
    let mut refs: Vec<SlopeGuide> = Vec::new();
    if let Some(&(hf, ef)) = pts_l2.last() {
        let slope = table.reference_slopes.0.as_f64();
        refs.push((reference_line(h_max, hf, 0.45 * ef, slope), slope, "8 5"));
    }
    if let Some(&(hf, ef)) = pts_h1.last() {
        let slope = table.reference_slopes.1.as_f64();
        refs.push((reference_line(h_max, hf, 0.45 * ef, slope), slope, "2 5"));
    }

    // Logarithmic window around data and reference lines.
    let mut lx = (h_min.log10(), h_max.log10());
    let mut ly = (f64::INFINITY, f64::NEG_INFINITY);
    for &(_, e) in pts_l2.iter().chain(&pts_h1) {
        ly = (ly.0.min(e.log10()), ly.1.max(e.log10()));
    }
    for (line, _, _) in &refs {
        for &(_, e) in line {
            ly = (ly.0.min(e.log10()), ly.1.max(e.log10()));
        }
    }
    let pad = |r: &mut (f64, f64)| {
        let span = (r.1 - r.0).max(1e-9);
        r.0 -= 0.06 * span;
        r.1 += 0.06 * span;
    };
    pad(&mut lx);
    pad(&mut ly);
    let px = |h: f64| SVG_ML + (h.log10() - lx.0) / (lx.1 - lx.0) * (SVG_W - SVG_ML - SVG_MR);
    let py = |e: f64| SVG_H - SVG_MB - (e.log10() - ly.0) / (ly.1 - ly.0) * (SVG_H - SVG_MT - SVG_MB);

    // Decade gridlines and labels on the error axis.
    let (k_lo, k_hi) = (ly.0.ceil() as i64, ly.1.floor() as i64);
    for k in k_lo..=k_hi {
        let y = py(10f64.powi(k as i32));
        let _ = writeln!(
            svg,
            r##"<line x1="{:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#dddddd"/>"##,
            SVG_ML,
            SVG_W - SVG_MR
        );
        let _ = writeln!(
            svg,
            r##"<text x="{:.1}" y="{:.1}" text-anchor="end">1e{k}</text>"##,
            SVG_ML - 8.0,
            y + 4.0
        );
    }
    // Mesh-size ticks at the data points.
    for r in &table.rows {
        if !finite(r.h) {
            continue;
        }
        let x = px(r.h.as_f64());
        let _ = writeln!(
            svg,
            r##"<line x1="{x:.1}" y1="{:.1}" x2="{x:.1}" y2="{:.1}" stroke="#dddddd"/>"##,
            SVG_MT,
            SVG_H - SVG_MB
        );
        let _ = writeln!(
            svg,
            r##"<text x="{x:.1}" y="{:.1}" text-anchor="middle">{:.4}</text>"##,
            SVG_H - SVG_MB + 18.0,
            r.h.as_f64()
        );
    }
    let _ = writeln!(
        svg,
        r##"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="#333333"/>"##,
        SVG_ML,
        SVG_MT,
        SVG_W - SVG_ML - SVG_MR,
        SVG_H - SVG_MT - SVG_MB
    );
    let _ = writeln!(
        svg,
        r##"<text x="{:.1}" y="{:.1}" text-anchor="middle">h</text>"##,
        SVG_ML + (SVG_W - SVG_ML - SVG_MR) / 2.0,
        SVG_H - 18.0
    );
    let _ = writeln!(
        svg,
        r##"<text x="22" y="{:.1}" text-anchor="middle" transform="rotate(-90 22 {:.1})">error</text>"##,
        SVG_MT + (SVG_H - SVG_MT - SVG_MB) / 2.0,
        SVG_MT + (SVG_H - SVG_MT - SVG_MB) / 2.0
    );

    // Reference slope triangles: hypotenuse on the slope, right angle at
    // the coarse end's height over the fine end.
    for (line, slope, dash) in &refs {
        let [(h0, e0), (h1, e1)] = *line;
        let (x0, y0, x1, y1) = (px(h0), py(e0), px(h1), py(e1));
        let _ = writeln!(
            svg,
            r##"<path d="M {x0:.1} {y0:.1} L {x1:.1} {y1:.1} L {x0:.1} {y1:.1} Z" fill="none" stroke="#666666" stroke-dasharray="{dash}"/>"##
        );
        let _ = writeln!(
            svg,
            r##"<text x="{:.1}" y="{:.1}" fill="#666666">1:{}</text>"##,
            x0 + 6.0,
            (y0 + y1) / 2.0 + 4.0,
            slope_label(*slope)
        );
    }

    // Error series: L₂ with filled circles, H¹ with open squares.
    let polyline = |pts: &[(f64, f64)]| -> String {
        pts.iter()
            .map(|&(h, e)| format!("{:.1},{:.1}", px(h), py(e)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    if !pts_l2.is_empty() {
        let _ = writeln!(
            svg,
            r##"<polyline points="{}" fill="none" stroke="#1f77b4" stroke-width="1.8"/>"##,
            polyline(&pts_l2)
        );
        for &(h, e) in &pts_l2 {
            let _ = writeln!(
                svg,
                r##"<circle cx="{:.1}" cy="{:.1}" r="4" fill="#1f77b4"/>"##,
                px(h),
                py(e)
            );
        }
    }
    if !pts_h1.is_empty() {
        let _ = writeln!(
            svg,
            r##"<polyline points="{}" fill="none" stroke="#d62728" stroke-width="1.8"/>"##,
            polyline(&pts_h1)
        );
        for &(h, e) in &pts_h1 {
            let _ = writeln!(
                svg,
                r##"<rect x="{:.1}" y="{:.1}" width="8" height="8" fill="#ffffff" stroke="#d62728" stroke-width="1.8"/>"##,
                px(h) - 4.0,
                py(e) - 4.0
            );
        }
    }

    // Legend in the top-left corner of the plot area (errors grow to the
    // right, so that corner stays clear).
    let lgx = SVG_ML + 14.0;
    let lgy1 = SVG_MT + 20.0;
    let lgy2 = lgy1 + 20.0;
    let _ = writeln!(
        svg,
        r##"<line x1="{lgx:.1}" y1="{lgy1:.1}" x2="{:.1}" y2="{lgy1:.1}" stroke="#1f77b4" stroke-width="1.8"/><circle cx="{:.1}" cy="{lgy1:.1}" r="4" fill="#1f77b4"/><text x="{:.1}" y="{:.1}">L2 error</text>"##,
        lgx + 20.0,
        lgx + 10.0,
        lgx + 26.0,
        lgy1 + 4.0
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{lgx:.1}" y1="{lgy2:.1}" x2="{:.1}" y2="{lgy2:.1}" stroke="#d62728" stroke-width="1.8"/><rect x="{:.1}" y="{:.1}" width="8" height="8" fill="#ffffff" stroke="#d62728" stroke-width="1.8"/><text x="{:.1}" y="{:.1}">H1 error</text>"##,
        lgx + 20.0,
        lgx + 6.0,
        lgy2 - 4.0,
        lgx + 26.0,
        lgy2 + 4.0
    );
    svg.push_str("</svg>\n");
    svg
}
