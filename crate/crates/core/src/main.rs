use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::json;

use salab::explorer::{run_command, Command, CommandArgs, GridArgs, Input, Report};
use salab::ring::{FieldSpec, MonomialOrder};
use salab::structure::ThresholdFunction;
use salab::Error;

/// Exact commutative algebra explorer. Prints a JSON report on standard
/// output; exit code 0 on success, 1 on a domain error, 2 on a parse error,
/// 3 when a resource cap is hit.
#[derive(Parser, Debug)]
#[command(name = "salab", version)]
struct Cli {
    /// gb, hilbert, dim, resolve, betti, pd, nu, strength, regseq,
    /// independent, decompose, gin, pd-transfer, enumerate-hf,
    /// explore-threshold or reproduce-paper
    command: String,

    /// Ideal files
    files: Vec<PathBuf>,

    /// Coefficient field (QQ or F<p>), overriding the file headers
    #[arg(long, value_parser = parse_field)]
    field: Option<FieldSpec>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Last degree of Hilbert function tables
    #[arg(long)]
    mmax: Option<u64>,

    /// Random changes of coordinates per gin attempt
    #[arg(long)]
    trials: Option<usize>,

    /// Largest number of grid instances
    #[arg(long)]
    cap: Option<u64>,

    /// Also write the report to this file
    #[arg(long)]
    json: Option<PathBuf>,

    /// Add wall-clock timings to the report (breaks byte-identity)
    #[arg(long)]
    timings: bool,

    /// Monomial order for gb and resolve: grevlex, lex or grlex
    #[arg(long, default_value = "grevlex", value_parser = parse_order)]
    order: MonomialOrder,

    /// nu: treat the file as a single tuple
    #[arg(long)]
    tuple: bool,

    /// decompose: a constant N, or a comma-separated table N(0), N(1), ...
    #[arg(long, value_parser = parse_threshold)]
    threshold: Option<ThresholdFunction>,

    /// Grids: number of variables (sets both ends of the range)
    #[arg(long)]
    n: Option<usize>,

    #[arg(long)]
    n_min: Option<usize>,

    #[arg(long)]
    n_max: Option<usize>,

    /// Grids: comma-separated degrees of the forms
    #[arg(long, value_delimiter = ',')]
    degrees: Option<Vec<u64>>,

    /// Grids: sample this many instances per n instead of enumerating
    #[arg(long)]
    samples: Option<u64>,

    /// Grids: walk instances in reverse order
    #[arg(long)]
    reverse: bool,

    /// Test hook: perturb every syzygy step of the resolution
    #[arg(long, hide = true)]
    perturb_syzygies: bool,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    MonomialOrder::parse(s).ok_or_else(|| format!("unknown monomial order `{s}`"))
}

fn parse_threshold(s: &str) -> Result<ThresholdFunction, String> {
    let values = s
        .split(',')
        .map(|v| v.trim().parse::<usize>().map_err(|e| format!("bad threshold `{v}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match values.as_slice() {
        [c] => ThresholdFunction::Constant(*c),
        _ => ThresholdFunction::Table(values),
    })
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("salab: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cmd: Command = match cli.command.parse() {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let mut inputs = Vec::with_capacity(cli.files.len());
    for path in &cli.files {
        let bytes = match std::fs::read(path) {
            Ok(b) => b,
            Err(e) => return fail(&Error::InvalidInput(format!("cannot read {}: {e}", path.display()))),
        };
        let text = match String::from_utf8(bytes) {
            Ok(t) => t,
            Err(e) => {
                let offset = e.utf8_error().valid_up_to();
                let before = &e.as_bytes()[..offset];
                let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
                let column = offset - before.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1) + 1;
                return fail(&Error::parse(line, column, format!("invalid UTF-8 in {}", path.display())));
            }
        };
        inputs.push(Input {
            name: path.display().to_string(),
            text,
        });
    }
    let defaults = GridArgs::default();
    let args = CommandArgs {
        inputs,
        field: cli.field,
        seed: cli.seed,
        m_max: cli.mmax,
        trials: cli.trials,
        cap: cli.cap,
        order: cli.order,
        tuple: cli.tuple,
        threshold: cli.threshold,
        grid: GridArgs {
            n_min: cli.n_min.or(cli.n).unwrap_or(defaults.n_min),
            n_max: cli.n_max.or(cli.n).unwrap_or(defaults.n_max),
            degrees: cli.degrees.unwrap_or(defaults.degrees),
            samples: cli.samples,
            reverse: cli.reverse,
        },
        perturb_syzygies: cli.perturb_syzygies,
    };
    let start = Instant::now();
    let mut report: Report = match run_command(cmd, &args) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if cli.timings {
        report.timings = Some(json!({"total_seconds": start.elapsed().as_secs_f64()}));
    }
    let text = report.to_json();
    print!("{text}");
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, &text) {
            return fail(&Error::InvalidInput(format!("cannot write {}: {e}", path.display())));
        }
    }
    if cmd == Command::ReproducePaper && report.results["all_pass"] != json!(true) {
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
