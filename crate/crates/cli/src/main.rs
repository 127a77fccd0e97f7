use std::fs;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use equiab::{parse_input, parse_reader, render_text, render_verification, to_json};
use equiab_core::pipeline::{run_pipeline, verify_mode};

/// Abelianization of the Lie algebra of equivariant vector fields near
/// isolated orbits.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Cli {
    /// Input document (JSON); `-` or omitted reads stdin.
    input: Option<PathBuf>,
    /// Run the verification battery instead of only computing.
    #[arg(long)]
    verify: bool,
    /// Seed for the randomized steps.
    #[arg(long, env = "EQUIAB_SEED")]
    seed: Option<u64>,
    /// Degree bound for invariant polynomials.
    #[arg(long)]
    degree_bound: Option<u32>,
    /// Also write the report as JSON to this path.
    #[arg(long, value_name = "PATH")]
    emit_json: Option<PathBuf>,
    /// Largest finite group that will be enumerated.
    #[arg(long, value_name = "N")]
    max_group_order: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let parsed = match cli.input.as_deref() {
        None => parse_reader(io::stdin().lock()),
        Some(p) if p.as_os_str() == "-" => parse_reader(io::stdin().lock()),
        Some(p) => match fs::read_to_string(p) {
            Ok(text) => parse_input(&text),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", p.display());
                return ExitCode::from(2);
            }
        },
    };
    let input = match parsed {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut opts = input.pipeline_options();
    if let Some(s) = cli.seed {
        opts.seed = s;
    }
    if let Some(d) = cli.degree_bound {
        opts.degree_bound = Some(d);
    }
    if let Some(n) = cli.max_group_order {
        opts.group_cap = n;
    }

    if cli.verify {
        let v = verify_mode(&input.models, &opts);
        print!("{}", render_verification(&v));
        return if v.all_passed() {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        };
    }

    let report = match run_pipeline(&input.models, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    print!("{}", render_text(&report));
    if let Some(path) = cli.emit_json {
        if let Err(e) = fs::write(&path, to_json(&report)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::FAILURE;
        }
    }
    ExitCode::SUCCESS
}
