use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qnorm::analysis::{DEFAULT_SEED, run_group_analysis, run_vn_analysis, Overrides, RunError};
use qnorm::report::{to_json, to_text};
use qnorm::verify::{run_suite, SuiteConfig};
use qnorm::InputError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "qnorm", version, about = "Quasi-normalizers of group inclusions and finite-dimensional tracial inclusions")]
struct Cli {
    /// Cosets explored per orbit before a verdict is Unknown.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Radius of the ball of group elements that is diagnosed.
    #[arg(long, global = true)]
    radius: Option<usize>,
    /// Conjugates required before a class counts as infinite.
    #[arg(long, global = true)]
    threshold: Option<usize>,
    /// Seed for the optimizer and the random checks [default: the file's seed, else 42].
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Override a numerical tolerance, e.g. `--tolerance lemma=1e-8`.
    #[arg(long = "tolerance", global = true, value_name = "KEY=VAL", value_parser = parse_tolerance)]
    tolerances: Vec<(String, f64)>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Diagnose a group inclusion H <= G.
    Group { file: PathBuf },
    /// Analyse a matrix inclusion B ⊆ N ⊆ M.
    Vn { file: PathBuf },
    /// Run the acceptance suite.
    VerifyPaper,
}

fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (key, value) = s.split_once('=').ok_or_else(|| format!("expected KEY=VAL, found `{s}`"))?;
    let value: f64 = value.trim().parse().map_err(|_| format!("`{value}` is not a number"))?;
    Ok((key.trim().to_string(), value))
}

fn read(path: &PathBuf) -> Result<String, RunError> {
    std::fs::read_to_string(path).map_err(|e| {
        RunError::Input(InputError { field: path.display().to_string(), line: None, message: e.to_string() })
    })
}

fn emit(value: &serde_json::Value, format: Format) {
    match format {
        Format::Json => print!("{}", to_json(value)),
        Format::Text => print!("{}", to_text(value)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let overrides = Overrides {
        budget: cli.budget,
        radius: cli.radius,
        threshold: cli.threshold,
        seed: cli.seed,
        tolerances: cli.tolerances.clone(),
    };
    let result = match &cli.command {
        Command::Group { file } => read(file).and_then(|t| run_group_analysis(&t, &overrides)),
        Command::Vn { file } => read(file).and_then(|t| run_vn_analysis(&t, &overrides)),
        Command::VerifyPaper => {
            let suite = run_suite(&SuiteConfig { seed: cli.seed.unwrap_or(DEFAULT_SEED), budget: cli.budget });
            match cli.format {
                Format::Json => {
                    print!("{}", to_json(&suite.to_json()));
                    eprint!("{}", suite.to_text());
                }
                Format::Text => print!("{}", suite.to_text()),
            }
            return if suite.pass() { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match result {
        Ok(v) => {
            emit(&v, cli.format);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("qnorm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
