use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use kye_witness::io::write_witness;
use kye_witness::linalg::RANK_TOL;
use kye_witness::report::{
    detect_report, full_report, spanning_document, verify_report, Families, ReportDocument, StateSpec, VerifyOptions,
    ZERO_TOL,
};
use kye_witness::{parse_param, witness_kye, Error, KyeParams};

#[derive(Parser)]
#[command(
    name = "kye-witness",
    version,
    about = "Build and verify the three-qubit witnesses W(s, t)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Parameter s; accepts `2r2` (2 sqrt 2) and `r2` (sqrt 2)
    #[arg(long, default_value = "2r2", value_parser = param)]
    s: f64,
    /// Parameter t; same tokens as --s
    #[arg(long, default_value = "2r2", value_parser = param)]
    t: f64,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write the report here as well as to stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print JSON instead of text
    #[arg(long)]
    json: bool,
    /// Record wall time in elapsed_ms (reports are then not reproducible)
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Write the witness matrix as JSON
    Build {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every check on W(s, t)
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
        restarts: u64,
        #[arg(long, default_value_t = ZERO_TOL, value_parser = tolerance)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Pair a state with W and classify it
    Detect {
        /// xstate | rho-lambda:<l> | perturbed:<eps> | file:<path>
        #[arg(value_parser = state_spec)]
        state: StateSpec,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = ZERO_TOL, value_parser = tolerance)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Ranks of the partially conjugated zero-set sample
    Spanning {
        #[command(flatten)]
        params: ParamArgs,
        /// default | pv1 | canonical-ten
        #[arg(long, default_value = "default", value_parser = families)]
        families: Families,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = RANK_TOL, value_parser = tolerance)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Every acceptance check once
    Report {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
        restarts: u64,
        #[arg(long, default_value_t = ZERO_TOL, value_parser = tolerance)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn param(token: &str) -> Result<f64, String> {
    let v = parse_param(token).map_err(|e| e.to_string())?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{token} is not positive"))
    }
}

fn tolerance(token: &str) -> Result<f64, String> {
    match token.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!("{token} is not a nonnegative number")),
    }
}

fn state_spec(token: &str) -> Result<StateSpec, String> {
    token.parse().map_err(|e: Error| e.to_string())
}

fn families(token: &str) -> Result<Families, String> {
    token.parse().map_err(|e: Error| e.to_string())
}

fn params(a: &ParamArgs) -> Result<KyeParams, Error> {
    KyeParams::new(a.s, a.t)
}

/// Usage errors map to 2, everything else that stops a run to 1.
fn failure(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::InvalidParams(_) | Error::OutOfRange { .. } | Error::Format(_) | Error::InvalidShape(_) => {
            ExitCode::from(2)
        }
        _ => ExitCode::from(1),
    }
}

fn emit(mut doc: ReportDocument, output: &OutputArgs, started: Instant) -> ExitCode {
    if output.timing {
        doc.elapsed_ms = started.elapsed().as_millis() as u64;
    }
    let text = if output.json {
        doc.to_json() + "\n"
    } else {
        doc.to_text()
    };
    print!("{text}");
    if let Some(path) = &output.out {
        if let Err(e) = std::fs::write(path, doc.to_json() + "\n") {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(doc.exit_code() as u8)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let started = Instant::now();
    match cli.command {
        Command::Build { params: a, out } => {
            let w = witness_kye(&params(&a)?)?;
            match out {
                Some(path) => write_witness(&path, &w)?,
                None => println!("{}", kye_witness::io::witness_document(&w).to_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            params: a,
            seed,
            restarts,
            tol,
            output,
        } => {
            let options = VerifyOptions {
                restarts: restarts as usize,
                seed,
                tol,
            };
            Ok(emit(verify_report(&params(&a)?, &options)?, &output, started))
        }
        Command::Detect {
            state,
            params: a,
            tol,
            output,
        } => Ok(emit(detect_report(&state, &params(&a)?, tol)?, &output, started)),
        Command::Spanning {
            params: a,
            families,
            seed,
            tol,
            output,
        } => Ok(emit(
            spanning_document(&params(&a)?, families, seed, tol)?,
            &output,
            started,
        )),
        Command::Report {
            seed,
            restarts,
            tol,
            output,
        } => {
            let options = VerifyOptions {
                restarts: restarts as usize,
                seed,
                tol,
            };
            Ok(emit(full_report(&options)?, &output, started))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    run(cli).unwrap_or_else(|e| failure(&e))
}
