//! Driving the pipelines from a spec file, as the command-line tool does.
//!
//! `cargo run --example spec_files -- specs/cylinder_n4.spec annihilator`

use std::path::PathBuf;

use horofunc::cli::{emit_report, run_command, Command};
use horofunc::config::{parse_spec, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let spec = args.next().map_or(root.join("specs/cylinder_n4.spec"), PathBuf::from);
    let command: Command = args.next().as_deref().unwrap_or("annihilator").parse()?;
    let parsed = parse_spec(&spec)?;
    println!("{} generators: {:?}", parsed.generators.len(), parsed.generators.labels());
    let outcome = run_command(command, &parsed, &RunConfig::default())?;
    print!("{}", emit_report(&outcome.report["result"]));
    for (name, contents) in &outcome.side_files {
        println!("side file {name}: {} lines", contents.lines().count());
    }
    Ok(())
}
