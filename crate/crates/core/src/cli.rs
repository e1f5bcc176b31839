//! Subcommand dispatch behind the `horofunc` binary: each command reads a
//! parsed spec file plus resolved parameters and returns a JSON report with
//! optional CSV and DOT side files.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::annihilator::{self, annihilator_candidates, index_bound_check, AnnihilatorError};
use crate::boundary::{
    self, action_table, bend_scan, boundary_approx, index_estimate, interval_monotonicity, slow_geodesic,
    BoundaryError,
};
use crate::cayley::{Ball, CayleyError, DEFAULT_BUDGET};
use crate::config::{ConfigError, ParsedSpec, RunConfig};
use crate::convex::{vector_string, DEFAULT_DIMENSION_CAP};
use crate::metrics::{self, bs_annihilator_check, build_ball_system_with_budget, metric_axiom_check, MetricsError};
use crate::vabelian::{self, infinite_boundary_witness, step1_membership, ExtremeSelector, VabelianError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error(transparent)]
    Annihilator(#[from] AnnihilatorError),
    #[error(transparent)]
    Vabelian(#[from] VabelianError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error("{0}")]
    Invalid(String),
    #[error("cannot write {path}: {reason}")]
    Io { path: String, reason: String },
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Ball,
    Boundary,
    Annihilator,
    Polytope,
    Witness,
    Ballsystem,
    Bend,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Ball,
        Command::Boundary,
        Command::Annihilator,
        Command::Polytope,
        Command::Witness,
        Command::Ballsystem,
        Command::Bend,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Ball => "ball",
            Command::Boundary => "boundary",
            Command::Annihilator => "annihilator",
            Command::Polytope => "polytope",
            Command::Witness => "witness",
            Command::Ballsystem => "ballsystem",
            Command::Bend => "bend",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command '{s}'"))
    }
}

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_DIAGNOSTIC: i32 = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    /// `(file name, contents)` written next to the report.
    pub side_files: Vec<(String, String)>,
    /// The run finished but found a finite-scale diagnostic.
    pub diagnostic: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.diagnostic {
            EXIT_DIAGNOSTIC
        } else {
            EXIT_OK
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Pretty JSON with keys sorted, newline terminated.
pub fn emit_report(report: &Value) -> String {
    // serde_json maps are ordered by key, so a round trip through `Value` sorts.
    let mut out = serde_json::to_string_pretty(&to_value(report)).expect("json");
    out.push('\n');
    out
}

fn required<T>(value: Option<T>, flag: &str, command: Command) -> Result<T> {
    value.ok_or_else(|| CliError::Invalid(format!("{} needs --{flag}", command.name())))
}

/// Runs `command` with spec defaults overridden by `flags`.
pub fn run_command(command: Command, parsed: &ParsedSpec, flags: &RunConfig) -> Result<Outcome> {
    let cfg = parsed.run.merged(flags);
    let budget = cfg.budget.unwrap_or(DEFAULT_BUDGET);
    let g = &parsed.group;
    let s = &parsed.generators;
    let mut side_files = Vec::new();
    let mut diagnostic = false;

    let body = match command {
        Command::Ball => {
            let r = cfg.r.unwrap_or(6);
            let ball = Ball::grow_with_budget(g, s, r, budget)?;
            side_files.push(("ball.csv".to_string(), ball.to_csv()));
            let tree = ball.geodesic_prefixes(r.min(3), r)?;
            side_files.push(("prefixes.dot".to_string(), tree.to_dot(&ball)));
            let mut body = json!({
                "radius": r,
                "size": ball.len(),
                "sphere_sizes": ball.layer_sizes(),
                "prefix_leaves": tree.leaves().count(),
            });
            if let Some(seed) = cfg.seed {
                let m = cfg.m.unwrap_or(r / 3).min(r);
                let rep = interval_monotonicity(&ball, 200, r - m, m, seed)?;
                diagnostic |= !rep.violations.is_empty();
                body["interval_monotonicity"] = to_value(&rep);
            }
            body
        }
        Command::Boundary => {
            let r = cfg.r.unwrap_or(10);
            let m = cfg.m.unwrap_or(3);
            let ball = Ball::grow_with_budget(g, s, r + m, budget)?;
            let approx = boundary_approx(&ball, r, m)?;
            let index = index_estimate(&approx, &ball)?;
            let actions = action_table(&approx, &ball)?;
            let mut csv = String::from("class,witness,count,stable,busemann,converged\n");
            for (i, c) in approx.classes.iter().enumerate() {
                let _ = writeln!(
                    csv,
                    "{i},\"{}\",{},{},{},{}",
                    c.witness, c.count, c.stable, c.busemann, c.converged
                );
            }
            side_files.push(("classes.csv".to_string(), csv));
            let annih = annihilator::functional_annihilator(&approx, &ball, m)?;
            json!({
                "class_count": approx.class_count(),
                "stable_count": approx.stable_count(),
                "converged_count": approx.converged().count(),
                "approximation": to_value(&approx),
                "index_estimate": to_value(&index),
                "action": to_value(&actions),
                "functional_annihilator": to_value(&annih),
            })
        }
        Command::Annihilator => {
            let r = cfg.r.unwrap_or(12);
            let m = cfg.m.unwrap_or(3);
            let gap = cfg.gap.unwrap_or(annihilator::DEFAULT_GAP);
            let ball = Ball::grow_with_budget(g, s, r + m, budget)?;
            let report = annihilator_candidates(&ball, m, r, gap)?;
            side_files.push(("annihilator.csv".to_string(), report.to_csv()));
            let mut body = json!({
                "candidate_count": report.candidate_count(),
                "report": to_value(&report),
            });
            if let Some(index) = g.quotient_order().filter(|_| g.rank() > 0) {
                let verdict = index_bound_check(&report, index as u64);
                diagnostic |= !verdict.holds;
                body["index_bound"] = to_value(&verdict);
            }
            body
        }
        Command::Polytope => {
            let r = cfg.r.unwrap_or(8);
            let (view, _, cycles, cloud, p) = vabelian::polytope_of(g, s, DEFAULT_DIMENSION_CAP)?;
            let ball = Ball::grow_with_budget(g, s, r, budget)?;
            let step1 = step1_membership(&p, &view, &ball, r)?;
            diagnostic |= !step1.violations.is_empty();
            json!({
                "cycle_labels": to_value(&cycles.labels),
                "inverse_closed": cycles.inverse_closed,
                "cloud": cloud.points.iter().map(|c| vector_string(&c.point)).collect::<Vec<_>>(),
                "cloud_invariant": cloud.invariant,
                "polytope": to_value(&p.to_json()),
                "step1": to_value(&step1),
            })
        }
        Command::Witness => {
            let k = cfg.k.unwrap_or(5);
            let r = cfg.r.unwrap_or(14);
            let m = cfg.m.unwrap_or(2);
            let selector: ExtremeSelector = cfg
                .extreme
                .as_deref()
                .unwrap_or("lex")
                .parse()
                .map_err(CliError::Invalid)?;
            let rep = infinite_boundary_witness(g, s, k, r, m, &selector, DEFAULT_DIMENSION_CAP)?;
            diagnostic |= !rep.complete();
            let mut csv = String::from("representative,exponent,endpoint\n");
            for w in &rep.witnesses {
                let _ = writeln!(csv, "\"{}\",{},\"{}\"", w.representative, w.exponent, w.endpoint);
            }
            side_files.push(("witnesses.csv".to_string(), csv));
            json!({ "distinct_count": rep.witnesses.len(), "report": to_value(&rep) })
        }
        Command::Ballsystem => {
            let n_max = cfg.n_max.unwrap_or(4);
            let chain = parsed.chain_sets(n_max)?;
            let size_budget = cfg.budget.unwrap_or(metrics::DEFAULT_SIZE_BUDGET);
            let bs = build_ball_system_with_budget(g, s, &chain, n_max, size_budget)?;
            let axioms = metric_axiom_check(&bs, n_max as u32)?;
            let checks = bs
                .chain_member(1)
                .iter()
                .map(|f| bs_annihilator_check(&bs, f, 1))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            diagnostic |= checks.iter().any(|c| !c.violations.is_empty());
            let mut text = String::new();
            for n in 0..=n_max {
                for x in bs.layer(n) {
                    if bs.norm(x) == Some(n as u32) {
                        let _ = writeln!(text, "{n}\t{x}");
                    }
                }
            }
            side_files.push(("ball_system.tsv".to_string(), text));
            json!({
                "system": to_value(&bs.report()),
                "axioms": to_value(&axioms),
                "annihilator_checks": to_value(&checks),
            })
        }
        Command::Bend => {
            let r = cfg.r.unwrap_or(64);
            let m = cfg.m.unwrap_or(30);
            let step = required(cfg.k.map(|k| k as u32), "k", command)?;
            let len = required(cfg.length, "length", command)?;
            let x = parsed.element(&required(cfg.x.clone(), "x", command)?)?;
            let ball = Ball::grow_with_budget(g, s, r + m, budget)?;
            let approx = boundary_approx(&ball, r, m)?;
            let alpha = ball.geodesic_between(&g.identity(), &x)?;
            let scans = approx
                .converged()
                .map(|c| bend_scan(&alpha, step, &c.functional, &ball))
                .collect::<boundary::Result<Vec<_>>>()?;
            let max_jump = scans.iter().map(|s| s.max_jump()).max().unwrap_or(0);
            diagnostic |= max_jump > 2;
            let mut body = json!({
                "scans": to_value(&scans),
                "max_jump": max_jump,
            });
            match slow_geodesic(&x, step, len, &ball, &approx) {
                Ok(sg) => body["slow_geodesic"] = to_value(&sg),
                Err(e @ BoundaryError::BoundViolated { .. }) => {
                    diagnostic = true;
                    body["bound_violated"] = Value::String(e.to_string());
                }
                Err(e) => return Err(e.into()),
            }
            body
        }
    };

    let report = json!({
        "command": command.name(),
        "group": to_value(&parsed.spec),
        "generators": parsed.generators.elements().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "labels": parsed.generators.labels(),
        "config": to_value(&RunConfig { out: None, ..cfg }),
        "diagnostic": diagnostic,
        "result": body,
    });
    Ok(Outcome {
        report,
        side_files,
        diagnostic,
    })
}

/// Writes `report.json` and the side files into `dir`.
pub fn write_outcome(outcome: &Outcome, dir: &Path) -> Result<()> {
    let io = |path: &Path, e: std::io::Error| CliError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    };
    std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let path = dir.join("report.json");
    std::fs::write(&path, emit_report(&outcome.report)).map_err(|e| io(&path, e))?;
    for (name, contents) in &outcome.side_files {
        let path = dir.join(name);
        std::fs::write(&path, contents).map_err(|e| io(&path, e))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_spec;

    fn spec(name: &str) -> ParsedSpec {
        parse_spec(&Path::new(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)).unwrap()
    }

    #[test]
    fn annihilator_on_cylinder() {
        let out = run_command(Command::Annihilator, &spec("cylinder_n4.spec"), &RunConfig::default()).unwrap();
        assert_eq!(out.report["result"]["candidate_count"], 4);
        assert_eq!(out.exit_code(), EXIT_OK);
        let csv = &out.side_files[0].1;
        assert_eq!(csv.lines().count(), 5);
        assert_eq!(emit_report(&out.report), emit_report(&out.report.clone()));
    }

    #[test]
    fn boundary_on_line() {
        let out = run_command(Command::Boundary, &spec("z_line.spec"), &RunConfig::default()).unwrap();
        assert_eq!(out.report["result"]["stable_count"], 2);
    }

    #[test]
    fn keys_are_sorted() {
        let text = emit_report(&json!({"b": 1, "a": {"d": 2, "c": 3}}));
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        assert!(text.find("\"c\"").unwrap() < text.find("\"d\"").unwrap());
    }

    #[test]
    fn ball_side_files() {
        let flags = RunConfig {
            r: Some(4),
            seed: Some(3),
            ..Default::default()
        };
        let out = run_command(Command::Ball, &spec("z2_standard.spec"), &flags).unwrap();
        assert_eq!(out.report["result"]["size"], 41);
        let dot = &out.side_files.iter().find(|(n, _)| n == "prefixes.dot").unwrap().1;
        assert!(dot.starts_with("digraph") && dot.trim_end().ends_with('}'));
        let dir = tempfile::tempdir().unwrap();
        write_outcome(&out, dir.path()).unwrap();
        let back: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
        assert_eq!(back, out.report);
    }

    #[test]
    fn missing_bend_target_is_an_error() {
        let flags = RunConfig {
            x: None,
            ..Default::default()
        };
        let mut parsed = spec("z_line.spec");
        parsed.run.k = Some(1);
        parsed.run.length = Some(1);
        assert!(matches!(
            run_command(Command::Bend, &parsed, &flags),
            Err(CliError::Invalid(_))
        ));
    }
}
