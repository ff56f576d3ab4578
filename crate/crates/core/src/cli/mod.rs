//! Command-line front end behind the `vikit` binary.
//!
//! Exit codes: 0 converged or passed, 1 input or contract error, 2 iteration
//! budget exhausted, 3 certificate or rate check falsified.

pub mod problem_file;
pub mod report;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::diagnostics::{
    default_step_grid, rate_experiment, uniqueness_experiment, Verdict, RATE_BURN_IN,
};
use crate::operators::certify_by_sampling;
use crate::solvers::{
    contraction_factor, optimal_step, solve_hybrid_demo, solve_projected_contraction, solve_verma,
    step_bound, HybridStatus, IterationTrace, Problem, Schedule, SolverConfig, StepSize,
};
pub use problem_file::{ProblemFile, ProblemFileError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_FALSIFIED: i32 = 3;

/// Agreement required between scheme limits before they count as equal.
const SCHEME_AGREEMENT: f64 = 1e-6;
/// Slack allowed between empirical and theoretical contraction factors.
const RATE_SLACK: f64 = 0.05;

#[derive(Debug, Parser)]
#[command(
    name = "vikit",
    version,
    about = "Projected contraction solvers for VI(C, A)"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Write the iteration trace as CSV
    #[arg(long, global = true, value_name = "PATH")]
    trace: Option<PathBuf>,
    /// Record iterates in the trace CSV
    #[arg(long, global = true)]
    points: bool,
    /// Write the problem file with all defaults filled in
    #[arg(long, global = true, value_name = "PATH")]
    dump_canonical: Option<PathBuf>,
    /// Seed for every random draw (starts, samples)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Stop once the fixed-point residual is at most this
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Iteration budget
    #[arg(long, global = true)]
    max_iter: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Projected contraction iteration x <- P_C(x - s A x)
    Solve {
        /// Problem file (TOML)
        file: PathBuf,
        /// Step size; defaults to the file's solver.step or the optimal step
        #[arg(long)]
        step: Option<f64>,
    },
    /// Two-step relaxed projection scheme
    Verma {
        /// Problem file (TOML)
        file: PathBuf,
        /// Step of the inner projection; defaults to the optimal step
        #[arg(long)]
        rho: Option<f64>,
        /// Step of the outer projection; defaults to the optimal step
        #[arg(long)]
        eta: Option<f64>,
        /// const:A,B | harmonic:N0 | table:A0,B0;A1,B1;...
        #[arg(long, default_value = "const:1,1")]
        schedule: String,
    },
    /// Hybrid scheme with the projection onto the file's [fix_set]
    Hybrid {
        /// Problem file (TOML)
        file: PathBuf,
        /// Averaging weight in (0, 1)
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        /// Step size; defaults to the file's solver.step or the optimal step
        #[arg(long)]
        step: Option<f64>,
    },
    /// Search sampled pairs for violations of the declared certificate
    Certify {
        /// Problem file (TOML)
        file: PathBuf,
        /// Number of random pairs to test
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Standard deviation of samples drawn from unbounded sets
        #[arg(long, default_value_t = 10.0)]
        spread: f64,
    },
    /// Solve from many random starts and compare the limits
    Multistart {
        /// Problem file (TOML)
        file: PathBuf,
        /// Number of random starting points
        #[arg(long, default_value_t = 100)]
        starts: usize,
        /// Largest pairwise distance between limits still counted as one point
        #[arg(long, default_value_t = SCHEME_AGREEMENT)]
        agree: f64,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Compare observed residual decay with the contraction factor q(s)
    Rate {
        /// Problem file (TOML)
        file: PathBuf,
        /// "auto" (5 steps spread over the window) or a comma-separated list
        #[arg(long, default_value = "auto")]
        steps: String,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INPUT
        }
    }
}

type CmdResult = Result<i32, String>;

struct Loaded {
    file: ProblemFile,
    problem: Problem,
    config: SolverConfig,
}

fn load(path: &Path, global: &GlobalOpts) -> Result<Loaded, String> {
    let file = ProblemFile::read(path).map_err(|e| e.to_string())?;
    if let Some(dump) = &global.dump_canonical {
        std::fs::write(dump, file.canonical().to_toml())
            .map_err(|e| format!("cannot write {}: {e}", dump.display()))?;
    }
    let problem = file.to_problem().map_err(|e| e.to_string())?;
    let mut config = file.solver_config().map_err(|e| e.to_string())?;
    if let Some(tol) = global.tol {
        config.tol = tol;
    }
    if let Some(max_iter) = global.max_iter {
        config.max_iter = max_iter;
    }
    if let Some(seed) = global.seed {
        config.seed = seed;
    }
    config.record_points = global.points;
    Ok(Loaded {
        file,
        problem,
        config,
    })
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Solve { file, step } => cmd_solve(load(file, g)?, *step, g, out),
        Command::Verma {
            file,
            rho,
            eta,
            schedule,
        } => cmd_verma(load(file, g)?, *rho, *eta, schedule, g, out),
        Command::Hybrid { file, alpha, step } => cmd_hybrid(load(file, g)?, *alpha, *step, g, out),
        Command::Certify {
            file,
            samples,
            spread,
        } => cmd_certify(load(file, g)?, *samples, *spread, out),
        Command::Multistart {
            file,
            starts,
            agree,
            csv,
        } => cmd_multistart(load(file, g)?, *starts, *agree, csv.as_deref(), out),
        Command::Rate { file, steps, csv } => cmd_rate(load(file, g)?, steps, csv.as_deref(), out),
    }
}

fn io(e: std::io::Error) -> String {
    format!("write failed: {e}")
}

fn create(path: &Path) -> Result<BufWriter<File>, String> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| format!("cannot create {}: {e}", path.display()))
}

fn write_trace_file(path: &Path, trace: &IterationTrace, dim: usize) -> Result<(), String> {
    report::write_trace(create(path)?, trace, dim).map_err(|e| e.to_string())
}

/// Certificate, window and chosen step; errors if the certificate is unsolvable.
fn header(l: &Loaded, s: Option<f64>, out: &mut dyn Write) -> Result<(), String> {
    let cert = l.problem.certificate();
    writeln!(
        out,
        "problem: dim={} set={} certificate={}",
        l.problem.dim(),
        l.problem.set().kind_name(),
        cert
    )
    .map_err(io)?;
    let bound = step_bound(cert).map_err(|e| e.to_string())?;
    writeln!(
        out,
        "effective modulus r - gamma*mu^2: {}",
        cert.effective_modulus()
    )
    .map_err(io)?;
    writeln!(out, "step window: (0, {bound})").map_err(io)?;
    if let Some(s) = s {
        let q = contraction_factor(cert, s).map_err(|e| e.to_string())?;
        writeln!(out, "step s: {s}").map_err(io)?;
        writeln!(out, "contraction factor q(s): {q}").map_err(io)?;
    }
    Ok(())
}

fn resolve(l: &Loaded, override_step: Option<f64>) -> Result<f64, String> {
    let cert = l.problem.certificate();
    cert.require_solvable().map_err(|e| e.to_string())?;
    let step = override_step.map(StepSize::Fixed).unwrap_or(l.config.step);
    crate::solvers::resolve_step(cert, step).map_err(|e| e.to_string())
}

fn cmd_solve(l: Loaded, step: Option<f64>, g: &GlobalOpts, out: &mut dyn Write) -> CmdResult {
    let s = resolve(&l, step)?;
    header(&l, Some(s), out)?;
    let sol = solve_projected_contraction(&l.problem, &l.config.clone().with_step(s))
        .map_err(|e| e.to_string())?;
    writeln!(out, "status: {}", sol.status().as_str()).map_err(io)?;
    writeln!(out, "iterations: {}", sol.iterations).map_err(io)?;
    writeln!(out, "residual: {:?}", sol.residual).map_err(io)?;
    writeln!(out, "u = {}", sol.u).map_err(io)?;
    if let Some(path) = &g.trace {
        write_trace_file(path, &sol.trace, l.problem.dim())?;
    }
    Ok(if sol.converged() {
        EXIT_OK
    } else {
        EXIT_BUDGET
    })
}

fn cmd_verma(
    l: Loaded,
    rho: Option<f64>,
    eta: Option<f64>,
    schedule: &str,
    g: &GlobalOpts,
    out: &mut dyn Write,
) -> CmdResult {
    let schedule: Schedule = schedule.parse().map_err(|e: crate::Error| e.to_string())?;
    let cert = l.problem.certificate();
    cert.require_solvable().map_err(|e| e.to_string())?;
    let default_step = optimal_step(cert).map_err(|e| e.to_string())?;
    let rho = rho.unwrap_or(default_step);
    let eta = eta.unwrap_or(default_step);
    header(&l, None, out)?;
    writeln!(out, "rho: {rho}\neta: {eta}\nschedule: {schedule}").map_err(io)?;
    if schedule.divergence_warning() {
        writeln!(
            out,
            "warning: divergence of sum a_n b_n is not guaranteed for this schedule"
        )
        .map_err(io)?;
    }
    let sol = solve_verma(&l.problem, rho, eta, &schedule, &l.config).map_err(|e| e.to_string())?;
    let plain = solve_projected_contraction(&l.problem, &l.config).map_err(|e| e.to_string())?;
    let gap = sol.limit_gap();
    let to_u = sol.x_limit.distance(&plain.u).map_err(|e| e.to_string())?;

    writeln!(out, "status: {}", sol.status().as_str()).map_err(io)?;
    writeln!(out, "iterations: {}", sol.iterations).map_err(io)?;
    writeln!(out, "x_limit = {}", sol.x_limit).map_err(io)?;
    writeln!(out, "y_limit = {}", sol.y_limit).map_err(io)?;
    writeln!(out, "|x_limit - y_limit| = {gap:?}").map_err(io)?;
    writeln!(out, "|x_limit - u_contraction| = {to_u:?}").map_err(io)?;
    let verdict = if sol.converged() && gap <= SCHEME_AGREEMENT && to_u <= SCHEME_AGREEMENT {
        "x* = y* = u: both sequences reach the unique VI solution"
    } else {
        "inconclusive"
    };
    writeln!(out, "verdict: {verdict}").map_err(io)?;
    if let Some(path) = &g.trace {
        write_trace_file(path, &sol.x_trace, l.problem.dim())?;
    }
    Ok(if sol.converged() {
        EXIT_OK
    } else {
        EXIT_BUDGET
    })
}

fn cmd_hybrid(
    l: Loaded,
    alpha: f64,
    step: Option<f64>,
    g: &GlobalOpts,
    out: &mut dyn Write,
) -> CmdResult {
    let s = resolve(&l, step)?;
    let fix_set = l.file.fix_set().map_err(|e| e.to_string())?;
    header(&l, Some(s), out)?;
    writeln!(out, "alpha: {alpha}\nfix set: {}", fix_set.kind_name()).map_err(io)?;
    let rep = solve_hybrid_demo(&l.problem, &fix_set, alpha, &l.config.clone().with_step(s))
        .map_err(|e| e.to_string())?;
    writeln!(out, "status: {}", rep.limit.status().as_str()).map_err(io)?;
    writeln!(out, "iterations: {}", rep.limit.iterations).map_err(io)?;
    writeln!(out, "hybrid limit = {}", rep.limit.u).map_err(io)?;
    writeln!(out, "VI solution u = {}", rep.vi_solution).map_err(io)?;
    let line = match rep.status {
        HybridStatus::CommonElement => "common element: the VI solution u (Fix(S) contains u)",
        HybridStatus::CommonElementSetEmpty => {
            "common element set empty: u lies outside Fix(S); hybrid stopped at the limit above"
        }
    };
    writeln!(out, "{line}").map_err(io)?;
    if let Some(path) = &g.trace {
        write_trace_file(path, &rep.limit.trace, l.problem.dim())?;
    }
    Ok(if rep.limit.converged() {
        EXIT_OK
    } else {
        EXIT_BUDGET
    })
}

fn cmd_certify(l: Loaded, samples: usize, spread: f64, out: &mut dyn Write) -> CmdResult {
    let cert = l.problem.certificate();
    let rep = certify_by_sampling(
        l.problem.operator(),
        cert,
        l.problem.set(),
        samples,
        l.config.seed,
        spread,
    )
    .map_err(|e| e.to_string())?;
    writeln!(out, "certificate: {cert}").map_err(io)?;
    writeln!(out, "solvable (r > gamma*mu^2): {}", cert.is_solvable()).map_err(io)?;
    writeln!(out, "pairs checked: {}", rep.pairs).map_err(io)?;
    writeln!(out, "lipschitz violations: {}", rep.lipschitz_violations).map_err(io)?;
    writeln!(
        out,
        "cocoercivity violations: {}",
        rep.cocoercivity_violations
    )
    .map_err(io)?;
    writeln!(
        out,
        "strong monotonicity (modulus {}) violations: {}",
        cert.effective_modulus(),
        rep.strong_monotonicity_violations
    )
    .map_err(io)?;
    writeln!(
        out,
        "worst lipschitz margin: {}",
        rep.worst_lipschitz_margin
    )
    .map_err(io)?;
    writeln!(
        out,
        "worst cocoercivity margin: {}",
        rep.worst_cocoercivity_margin
    )
    .map_err(io)?;
    if rep.is_consistent() {
        writeln!(out, "result: consistent with the declared certificate").map_err(io)?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "result: certificate falsified").map_err(io)?;
        Ok(EXIT_FALSIFIED)
    }
}

fn cmd_multistart(
    l: Loaded,
    starts: usize,
    agree: f64,
    csv: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    if starts < 2 {
        return Err(format!("--starts must be at least 2, got {starts}"));
    }
    let s = resolve(&l, None)?;
    header(&l, Some(s), out)?;
    let rep = uniqueness_experiment(&l.problem, starts, &l.config.clone().with_step(s), agree)
        .map_err(|e| e.to_string())?;
    let max_residual = rep.residuals.iter().cloned().fold(0.0, f64::max);
    writeln!(out, "starts: {}", rep.starts).map_err(io)?;
    writeln!(
        out,
        "max pairwise distance: {:?}",
        rep.max_pairwise_distance
    )
    .map_err(io)?;
    writeln!(out, "max residual: {max_residual:?}").map_err(io)?;
    writeln!(out, "{:>6}  limit", "index").map_err(io)?;
    for (i, u) in rep.limits.iter().enumerate() {
        writeln!(out, "{i:>6}  {u}").map_err(io)?;
    }
    writeln!(out, "verdict: {}", rep.verdict.as_str()).map_err(io)?;
    if let Some(path) = csv {
        report::write_uniqueness(create(path)?, &rep).map_err(|e| e.to_string())?;
    }
    Ok(match rep.verdict {
        Verdict::Singleton => EXIT_OK,
        Verdict::Inconclusive => EXIT_BUDGET,
    })
}

fn cmd_rate(l: Loaded, steps: &str, csv: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    l.problem
        .certificate()
        .require_solvable()
        .map_err(|e| e.to_string())?;
    let grid = if steps.trim() == "auto" {
        default_step_grid(&l.problem, 5).map_err(|e| e.to_string())?
    } else {
        steps
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("bad step {t:?} in --steps"))
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    header(&l, None, out)?;
    writeln!(
        out,
        "burn-in: {RATE_BURN_IN} iterations, slack: {RATE_SLACK}"
    )
    .map_err(io)?;
    writeln!(
        out,
        "{:>24} {:>24} {:>24} {:>24} {:>10}",
        "s", "q(s)", "empirical q", "margin", "iters"
    )
    .map_err(io)?;
    let mut rows = Vec::new();
    let mut rejected = false;
    let mut worst = f64::INFINITY;
    for (s, entry) in grid
        .iter()
        .zip(rate_experiment(&l.problem, &grid, &l.config))
    {
        match entry {
            Ok(r) => {
                writeln!(
                    out,
                    "{:>24} {:>24} {:>24} {:>24} {:>10}",
                    r.s, r.theoretical_q, r.empirical_q, r.margin, r.iterations
                )
                .map_err(io)?;
                worst = worst.min(r.margin);
                rows.push(r);
            }
            Err(e) => {
                rejected = true;
                writeln!(out, "{s:>24} rejected: {e}").map_err(io)?;
            }
        }
    }
    if let Some(path) = csv {
        report::write_rates(create(path)?, &rows).map_err(|e| e.to_string())?;
    }
    let pass = worst >= -RATE_SLACK;
    writeln!(out, "worst margin: {worst:?}").map_err(io)?;
    writeln!(out, "result: {}", if pass { "pass" } else { "fail" }).map_err(io)?;
    Ok(if rejected {
        EXIT_INPUT
    } else if !pass {
        EXIT_FALSIFIED
    } else if rows.iter().any(|r| !r.converged) {
        EXIT_BUDGET
    } else {
        EXIT_OK
    })
}
