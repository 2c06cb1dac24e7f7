//! Command-line front end: each subcommand loads JSON inputs, runs one
//! family of checks and prints a line-oriented report.
//!
//! Exit codes: 0 when every line is `PASS`, 1 when some check fails, 2 on
//! an input error. `FINMARKOV_ATOL` overrides the residual tolerance.

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use finmarkov::DEFAULT_ATOL;

mod commands;
pub mod input;
pub mod report;

pub use input::InputError;
pub use report::Report;

pub const ATOL_VAR: &str = "FINMARKOV_ATOL";

#[derive(Debug, Parser)]
#[command(
    name = "finmarkov",
    version,
    about = "Exact checks on finite Markov kernels, causal models and exchangeable arrays"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Checks that a model is DAG-like.
    ValidateModel { model: PathBuf },
    /// Checks `X ⊥ Y | W` in a joint state.
    CheckCi {
        state: PathBuf,
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',')]
        x: Vec<String>,
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',')]
        y: Vec<String>,
        #[arg(long, num_args = 0.., value_delimiter = ',')]
        given: Vec<String>,
    },
    /// Checks the local (default) or ordered Markov property of a state.
    CheckMarkov {
        state: PathBuf,
        model: PathBuf,
        /// Timing function for the ordered property; implies `--ordered`.
        #[arg(long, conflicts_with = "local")]
        timing: Option<PathBuf>,
        #[arg(long, conflicts_with = "local")]
        ordered: bool,
        #[arg(long)]
        local: bool,
    },
    /// Writes the box assignment peeled off a state and checks that it
    /// recomposes to the state.
    Factorize {
        state: PathBuf,
        model: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        timing: Option<PathBuf>,
    },
    /// Writes the joint of an Aldous–Hoover specification.
    BuildAh {
        spec: PathBuf,
        #[arg(long)]
        expose_latents: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Checks the latent independences, the ordered Markov property and
    /// row/column exchangeability of an Aldous–Hoover specification.
    VerifyAh { spec: PathBuf },
    /// Checks invariance of an `S[i,j]` array under row and column swaps.
    CheckExchangeable {
        state: PathBuf,
        /// Array shape as `ROWSxCOLS`.
        #[arg(long)]
        grid: Grid,
    },
    /// Validates a derivation script step by step.
    Replay { derivation: PathBuf },
    /// Builds the quantile function of a kernel and its deterministic
    /// recombination with a seed.
    NoiseOutsource {
        kernel: PathBuf,
        /// Output order; defaults to the carrier's element order.
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        order: Vec<String>,
        /// Where to write the quantile function.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluates the Cauchy–Schwarz implication for `p` and `f, g`.
    CheckCs {
        p: PathBuf,
        f: PathBuf,
        g: PathBuf,
        /// Treat the last domain factor of every kernel as a shared parameter.
        #[arg(long)]
        parametric: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub rows: usize,
    pub cols: usize,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("expected ROWSxCOLS, got `{s}`");
        let (r, c) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        let rows: usize = r.trim().parse().map_err(|_| bad())?;
        let cols: usize = c.trim().parse().map_err(|_| bad())?;
        if rows == 0 || cols == 0 {
            return Err(bad());
        }
        Ok(Grid { rows, cols })
    }
}

/// Runs one parsed command. `atol` is `None` unless overridden.
pub fn run(command: &Command, atol: Option<f64>) -> Result<Report, InputError> {
    let tol = atol.unwrap_or(DEFAULT_ATOL);
    match command {
        Command::ValidateModel { model } => commands::validate_model_cmd(model),
        Command::CheckCi { state, x, y, given } => commands::check_ci_cmd(state, x, y, given, tol),
        Command::CheckMarkov { state, model, timing, ordered, .. } => {
            commands::check_markov_cmd(state, model, timing.as_deref(), *ordered, tol)
        }
        Command::Factorize { state, model, output, timing } => {
            commands::factorize_cmd(state, model, timing.as_deref(), output, tol)
        }
        Command::BuildAh { spec, expose_latents, output } => {
            commands::build_ah_cmd(spec, *expose_latents, output)
        }
        Command::VerifyAh { spec } => commands::verify_ah_cmd(spec, tol),
        Command::CheckExchangeable { state, grid } => {
            commands::check_exchangeable_cmd(state, grid.rows, grid.cols, tol)
        }
        Command::Replay { derivation } => commands::replay_cmd(derivation),
        Command::NoiseOutsource { kernel, order, output } => {
            commands::noise_outsource_cmd(kernel, order, output.as_deref(), tol)
        }
        Command::CheckCs { p, f, g, parametric } => commands::check_cs_cmd(p, f, g, *parametric, atol),
    }
}

/// Parses the tolerance override; unset means the default.
pub fn parse_atol(value: Option<OsString>) -> Result<Option<f64>, InputError> {
    let Some(v) = value else { return Ok(None) };
    let bad = |v: &str| InputError::new(ATOL_VAR, None, format!("`{v}` is not a nonnegative number"));
    let s = v.to_string_lossy();
    let a: f64 = s.trim().parse().map_err(|_| bad(&s))?;
    if !a.is_finite() || a < 0.0 {
        return Err(bad(&s));
    }
    Ok(Some(a))
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command with the given
/// tolerance override.
pub fn dispatch<I, T>(args: I, atol: Option<OsString>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome { code, stdout, stderr };
        }
    };
    let result = parse_atol(atol).and_then(|a| run(&cli.command, a));
    match result {
        Ok(report) => Outcome { code: report.exit_code(), stdout: report.render(), stderr: String::new() },
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!("2x3".parse::<Grid>(), Ok(Grid { rows: 2, cols: 3 }));
        assert!("2x0".parse::<Grid>().is_err());
        assert!("23".parse::<Grid>().is_err());
    }

    #[test]
    fn atol_parsing() {
        assert_eq!(parse_atol(None), Ok(None));
        assert_eq!(parse_atol(Some("1e-6".into())), Ok(Some(1e-6)));
        assert!(parse_atol(Some("-1".into())).is_err());
        assert!(parse_atol(Some("tight".into())).is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        let out = dispatch(["finmarkov", "frobnicate"], None);
        assert_eq!(out.code, 2);
        let out = dispatch(["finmarkov", "check-markov", "s.json", "m.json", "--ordered", "--local"], None);
        assert_eq!(out.code, 2);
        assert_eq!(dispatch(["finmarkov", "--help"], None).code, 0);
    }

    #[test]
    fn missing_file_names_the_file() {
        let out = dispatch(["finmarkov", "validate-model", "no/such/model.json"], None);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("no/such/model.json"), "{}", out.stderr);
    }
}
