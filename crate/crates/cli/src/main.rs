mod error;
mod instance;
mod output;
mod render;
mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use steiner_core::random::{random_line, rng, uniform_points};
use steiner_core::{solve_k, solve_prepared, Prepared, SolverConfig};

use error::CliError;
use instance::Instance;
use output::{to_json, SolutionFile};

#[derive(Parser)]
#[command(
    name = "steiner",
    version,
    about = "Minimum spanning trees with up to two Steiner points on given lines, rays or segments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the solution as JSON.
    Solve(SolveArgs),
    /// Re-check a solution file against its instance.
    Verify(VerifyArgs),
    /// Time preprocessing and solving on seeded random instances; prints CSV.
    Bench(BenchArgs),
    /// Draw an instance and its solution as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct Common {
    /// Instance JSON file.
    #[arg(long)]
    input: PathBuf,
    /// Maximum number of Steiner points; overrides the instance's `k`.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    k: Option<u8>,
    /// Worker threads; more than one enables parallel candidate evaluation.
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    common: Common,
    /// Check the solution against brute-force oracles; exit 1 on a violation.
    #[arg(long)]
    verify: bool,
    /// Samples per constraint for the verification oracles.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(2..))]
    samples: u64,
    /// Also write an SVG drawing to this path.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Report the solve time in `stats.wall_time_ms`.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Solution JSON as written by `solve`.
    #[arg(long)]
    solution: PathBuf,
    /// Samples per constraint for the oracles.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(2..))]
    samples: u64,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated point counts.
    #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(2..))]
    sizes: Vec<u64>,
    /// Comma-separated seeds; one row per size and seed.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    seed: Vec<u64>,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    common: Common,
    /// Solution to draw; solved on the fly when absent.
    #[arg(long)]
    solution: Option<PathBuf>,
    /// Output SVG path.
    #[arg(long)]
    svg: PathBuf,
}

fn config(threads: Option<u16>) -> SolverConfig {
    SolverConfig {
        parallel: threads.is_some_and(|t| t > 1),
        ..SolverConfig::default()
    }
}

fn with_threads<T: Send>(
    threads: Option<u16>,
    f: impl FnOnce() -> Result<T, CliError> + Send,
) -> Result<T, CliError> {
    match threads {
        None => f(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build()
            .map_err(|e| CliError::Input(format!("cannot start {t} threads: {e}")))?
            .install(f),
    }
}

fn read_solution(path: &Path) -> Result<SolutionFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn print(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|()| out.flush())
        .map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn solve_instance(
    inst: &Instance,
    k: usize,
    threads: Option<u16>,
    timing: bool,
) -> Result<SolutionFile, CliError> {
    let cfg = config(threads);
    with_threads(threads, || {
        let start = Instant::now();
        let sol = solve_k(&inst.points, &inst.lines, k, &cfg)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        SolutionFile::from_solution(&sol, &inst.costs, timing.then_some(ms))
    })
}

fn failed_checks(v: &output::Verification) -> String {
    v.checks
        .iter()
        .filter(|c| !c.ok)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect::<Vec<_>>()
        .join("; ")
}

fn solve(args: SolveArgs) -> Result<(), CliError> {
    let inst = Instance::load(&args.common.input)?;
    let k = args.common.k.map_or(inst.k, usize::from);
    let mut sol = solve_instance(&inst, k, args.common.threads, args.timing)?;
    if args.verify {
        let v = with_threads(args.common.threads, || {
            Ok(verify::verify(&inst, k, &sol, args.samples as usize))
        })?;
        sol.verification = Some(v);
    }
    if let Some(path) = &args.svg {
        write_file(path, &render::render_svg(&inst, &sol))?;
    }
    print(&to_json(&sol))?;
    match &sol.verification {
        Some(v) if !v.ok => Err(CliError::Verification(failed_checks(v))),
        _ => Ok(()),
    }
}

fn verify_cmd(args: VerifyArgs) -> Result<(), CliError> {
    let inst = Instance::load(&args.common.input)?;
    let sol = read_solution(&args.solution)?;
    let k = args.common.k.map_or(inst.k, usize::from);
    let v = with_threads(args.common.threads, || {
        Ok(verify::verify(&inst, k, &sol, args.samples as usize))
    })?;
    print(&to_json(&v))?;
    if v.ok {
        Ok(())
    } else {
        Err(CliError::Verification(failed_checks(&v)))
    }
}

fn bench(args: BenchArgs) -> Result<(), CliError> {
    let cfg = config(args.threads);
    let mut csv = String::from("n,build_ms,solve_ms,interval_count\n");
    with_threads(args.threads, || {
        for &n in &args.sizes {
            for &seed in &args.seed {
                let points = uniform_points(n as usize, seed);
                let line = random_line(&mut rng(seed));
                let start = Instant::now();
                let prep = Prepared::new(&points)?;
                let build = start.elapsed().as_secs_f64() * 1e3;
                let start = Instant::now();
                let sol = solve_prepared(&prep, std::slice::from_ref(&line), &cfg)?;
                let solve = start.elapsed().as_secs_f64() * 1e3;
                csv.push_str(&format!(
                    "{n},{build:.3},{solve:.3},{}\n",
                    sol.stats.interval_count
                ));
            }
        }
        Ok(())
    })?;
    print(&csv)
}

fn render(args: RenderArgs) -> Result<(), CliError> {
    let inst = Instance::load(&args.common.input)?;
    let sol = match &args.solution {
        Some(path) => read_solution(path)?,
        None => {
            let k = args.common.k.map_or(inst.k, usize::from);
            solve_instance(&inst, k, args.common.threads, false)?
        }
    };
    write_file(&args.svg, &render::render_svg(&inst, &sol))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Bench(a) => bench(a),
        Command::Render(a) => render(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("steiner: {e}");
            e.exit_code()
        }
    }
}
