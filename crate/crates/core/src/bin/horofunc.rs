use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use horofunc::cli::{emit_report, run_command, write_outcome, Command, EXIT_ERROR};
use horofunc::config::{parse_spec, RunConfig};

#[derive(Parser)]
#[command(name = "horofunc", version, about = "Busemann functionals, annihilators and boundary witnesses at finite scale")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Grow a word-metric ball; CSV of the ball and DOT of geodesic prefixes.
    Ball(Params),
    /// Enumerate restriction classes of Busemann functionals.
    Boundary(Params),
    /// Profile annihilator candidates.
    Annihilator(Params),
    /// Simple cycles, conjugation cloud and its convex hull.
    Polytope(Params),
    /// Certify k distinct Busemann restrictions for rank at least two.
    Witness(Params),
    /// Build a ball-system metric and check it.
    Ballsystem(Params),
    /// Bend scans and the slow geodesic towards --x.
    Bend(Params),
}

#[derive(Args)]
struct Params {
    /// Spec file with [group], [generators] and optional [run] and [chain].
    spec: PathBuf,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    gap: Option<u32>,
    /// `lex` or `index:<i>`.
    #[arg(long)]
    extreme: Option<String>,
    /// Directory for report.json and side files; stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    length: Option<u32>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, p) = match cli.command {
        Sub::Ball(p) => (Command::Ball, p),
        Sub::Boundary(p) => (Command::Boundary, p),
        Sub::Annihilator(p) => (Command::Annihilator, p),
        Sub::Polytope(p) => (Command::Polytope, p),
        Sub::Witness(p) => (Command::Witness, p),
        Sub::Ballsystem(p) => (Command::Ballsystem, p),
        Sub::Bend(p) => (Command::Bend, p),
    };
    let flags = RunConfig {
        r: p.r,
        m: p.m,
        n_max: p.n_max,
        k: p.k,
        budget: p.budget,
        gap: p.gap,
        extreme: p.extreme,
        seed: p.seed,
        x: p.x,
        length: p.length,
        out: p.out.as_ref().map(|d| d.display().to_string()),
    };
    let result = parse_spec(&p.spec)
        .map_err(Into::into)
        .and_then(|parsed| run_command(command, &parsed, &flags));
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    match &p.out {
        Some(dir) => {
            if let Err(e) = write_outcome(&outcome, dir) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_ERROR as u8);
            }
        }
        None => print!("{}", emit_report(&outcome.report)),
    }
    ExitCode::from(outcome.exit_code() as u8)
}
