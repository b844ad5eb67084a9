//! Command-line driver for convergence studies on the bundled benchmarks.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use alfem::contact::Formulation;
use alfem::error::{Error, Result};
use alfem::harness::{emit_outputs, run_study};
use alfem::problems::{by_name, ProblemSpec, PROBLEM_NAMES};
use alfem::solver::SolveSettings;

#[derive(Parser)]
#[command(
    name = "alfem",
    version,
    about = "Stabilized Lagrange-multiplier finite elements for obstacle and Signorini contact problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a convergence study over uniformly refined meshes
    Study(StudyArgs),
    /// Write a benchmark mesh as a plain-text dump
    Mesh(MeshArgs),
}

#[derive(Args)]
struct StudyArgs {
    /// Benchmark name: smooth-obstacle, nonsmooth-obstacle, or signorini
    problem: String,
    /// Number of refinement levels (default: the benchmark's recommendation)
    #[arg(long)]
    levels: Option<usize>,
    /// Penalty scale gamma0 in gamma = gamma0 * h^e
    #[arg(long)]
    gamma0: Option<f64>,
    /// Stabilization strength delta
    #[arg(long)]
    delta: Option<f64>,
    /// Exponent e in gamma = gamma0 * h^e (default: the benchmark's recommendation)
    #[arg(long)]
    gamma_exponent: Option<f64>,
    /// Residual formulation
    #[arg(long, default_value = "f1")]
    formulation: Formulation,
    /// Newton residual tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Directory for CSV and SVG outputs (omit to skip writing files)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Extra refinements for the overkill reference on benchmarks without
    /// an exact solution
    #[arg(long)]
    overkill_extra: Option<usize>,
    /// Maximum Newton iterations per level
    #[arg(long)]
    max_newton: Option<usize>,
    /// Newton damping factor in (0, 1]
    #[arg(long)]
    damping: Option<f64>,
}

#[derive(Args)]
struct MeshArgs {
    /// Benchmark name: smooth-obstacle, nonsmooth-obstacle, or signorini
    problem: String,
    /// Refinement level to dump (1 = base mesh)
    #[arg(long, default_value_t = 1)]
    level: usize,
    /// Output file (omit to print to stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn lookup(problem: &str) -> Result<ProblemSpec<f64>> {
    by_name(problem).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "unknown problem '{problem}'; expected one of: {}",
            PROBLEM_NAMES.join(", ")
        ))
    })
}

fn study(args: StudyArgs) -> Result<i32> {
    let mut problem = lookup(&args.problem)?;
    if let Some(extra) = args.overkill_extra {
        problem.overkill_extra = extra;
    }
    let mut cfg = problem.config(args.formulation);
    if let Some(gamma0) = args.gamma0 {
        cfg.gamma0 = gamma0;
    }
    if let Some(delta) = args.delta {
        cfg.delta = delta;
    }
    if let Some(exponent) = args.gamma_exponent {
        cfg.gamma_exponent = Some(exponent);
    }
    let mut settings = SolveSettings::default();
    if let Some(tol) = args.tol {
        settings.tol_residual = tol;
    }
    if let Some(max_newton) = args.max_newton {
        settings.max_newton = max_newton;
    }
    if let Some(damping) = args.damping {
        settings.damping = damping;
    }
    let levels = args.levels.unwrap_or(problem.default_levels);

    let table = run_study(&problem, &cfg, levels, &settings)?;
    print!("{table}");
    if let Some(dir) = &args.out {
        let (csv, svg) = emit_outputs(&table, dir)?;
        println!("wrote {} and {}", csv.display(), svg.display());
    }
    Ok(if table.all_converged() { 0 } else { 2 })
}

fn mesh(args: MeshArgs) -> Result<i32> {
    if args.level == 0 {
        return Err(Error::InvalidArgument("levels start at 1".into()));
    }
    let problem = lookup(&args.problem)?;
    let mut mesh = problem.base_mesh()?;
    for _ in 1..args.level {
        mesh = mesh.uniform_refine();
    }
    match &args.out {
        Some(path) => {
            let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
            mesh.dump(&mut file)?;
        }
        None => {
            let stdout = std::io::stdout();
            mesh.dump(&mut stdout.lock())?;
        }
    }
    Ok(0)
}

fn main() {
    env_logger::init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Study(args) => study(args),
        Command::Mesh(args) => mesh(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(1);
        }
    }
}
