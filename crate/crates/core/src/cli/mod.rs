//! Command-line front end: argument parsing, the five commands and the
//! report they produce.

mod commands;
pub mod input;
pub mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::exactla::{Field, Rationals};
use crate::par::{self, Exec};

use input::{form_from_file, parse_field, random_form, AnyForm, Source};
pub use report::{CheckRecord, ConfigEcho, Report, RunReport, Status};

/// Errors that abort a run before any check is made (exit code 2).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "ivhs", version, about = "Exact Jacobian-ring and IVHS checks for curves Y^d = f(X0, X1)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Degree of f.
    #[arg(long, global = true)]
    pub d: Option<usize>,

    /// Polynomial file (JSON or TOML).
    #[arg(long = "f", global = true, value_name = "PATH", conflicts_with = "random")]
    pub f_path: Option<PathBuf>,

    /// Sample a random smooth f.
    #[arg(long, global = true)]
    pub random: bool,

    /// Seed for --random (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// `rationals` or `fp:<p>`; with --random and no --field the prime is drawn from the seed.
    #[arg(long, global = true)]
    pub field: Option<String>,

    /// Write the JSON report here (`-` for standard output).
    #[arg(long, global = true, value_name = "PATH")]
    pub report: Option<PathBuf>,

    /// Run seeds seed, seed+1, ..., seed+n-1.
    #[arg(long, global = true, value_name = "N")]
    pub sweep: Option<usize>,

    /// Record wall-clock times in the report.
    #[arg(long, global = true)]
    pub timing: bool,

    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TangentArg {
    Slice,
    Full,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Hilbert functions of R_f and R_F and the smoothness verdict.
    RingInfo,
    /// Ranks of all socle pairings of R_f and R_F.
    Macaulay,
    /// The full nonvanishing certificate.
    IkedaVerify {
        /// Also compute the dimension of the kernel containing w.
        #[arg(long)]
        kernel_dim: bool,
        /// Corrupt K before checking (failure-path test hook).
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Koszul kernel versus wedge image on the canonical ring.
    Koszul {
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Dump the transposed map of orders (a, p, q).
    NablaDump {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value_t = TangentArg::Slice)]
        tangent: TangentArg,
        /// Matrix file; the matrix is also embedded in the report.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::RingInfo => "ring-info",
            Command::Macaulay => "macaulay",
            Command::IkedaVerify { .. } => "ikeda-verify",
            Command::Koszul { .. } => "koszul",
            Command::NablaDump { .. } => "nabla-dump",
        }
    }

    fn options(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        match self {
            Command::IkedaVerify { kernel_dim, corrupt } => {
                if *kernel_dim {
                    m.insert("kernel_dim".into(), "true".into());
                }
                if *corrupt {
                    m.insert("corrupt".into(), "true".into());
                }
            }
            Command::Koszul { k } => {
                m.insert("k".into(), k.to_string());
            }
            Command::NablaDump { a, p, q, tangent, out } => {
                m.insert("a".into(), a.to_string());
                m.insert("p".into(), p.to_string());
                m.insert("q".into(), q.to_string());
                m.insert("tangent".into(), format!("{tangent:?}").to_lowercase());
                if let Some(out) = out {
                    m.insert("out".into(), out.display().to_string());
                }
            }
            Command::RingInfo | Command::Macaulay => {}
        }
        m
    }
}

/// Runs the parsed command and returns the report; I/O of the report itself
/// is left to the caller, except for the nabla-dump matrix file.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let field_flag = cli.field.as_deref().map(parse_field).transpose()?;
    if cli.seed.is_some() && !cli.random {
        return Err(CliError::Malformed("--seed requires --random".into()));
    }
    if cli.sweep.is_some() && !cli.random {
        return Err(CliError::Malformed("--sweep requires --random".into()));
    }
    if cli.sweep == Some(0) {
        return Err(CliError::Malformed("--sweep must be at least 1".into()));
    }
    if cli.sweep.is_some() && matches!(cli.command, Command::NablaDump { .. }) {
        return Err(CliError::Malformed("nabla-dump takes a single f".into()));
    }

    let runs = if let Some(path) = &cli.f_path {
        let form = form_from_file(path, cli.d, field_flag)?;
        vec![run_one(cli, form, Source::File { path: path.clone() })?]
    } else if cli.random {
        let d = cli.d.ok_or_else(|| CliError::Malformed("--random needs --d".into()))?;
        let first = cli.seed.unwrap_or(0);
        let seeds: Vec<u64> = (0..cli.sweep.unwrap_or(1) as u64).map(|i| first + i).collect();
        let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
        let results = par::map(exec, &seeds, |&seed| {
            let (form, rejections) = random_form(d, seed, field_flag)?;
            run_one(cli, form, Source::Random { seed, rejections })
        });
        results.into_iter().collect::<Result<Vec<_>, _>>()?
    } else {
        return Err(CliError::Malformed("give either --f <path> or --random".into()));
    };

    let passed_runs = runs.iter().filter(|r| r.all_pass()).count();
    Ok(Report {
        artifact: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: ConfigEcho {
            command: cli.command.name().to_string(),
            d: cli.d,
            field: field_flag.map(|f| f.to_string()),
            f_path: cli.f_path.as_ref().map(|p| p.display().to_string()),
            seed: cli.random.then(|| cli.seed.unwrap_or(0)),
            sweep: cli.sweep,
            options: cli.command.options(),
        },
        all_pass: passed_runs == runs.len(),
        passed_runs,
        runs,
        timing_ms: cli.timing.then(|| start.elapsed().as_millis()),
    })
}

fn run_one(cli: &Cli, form: AnyForm, source: Source) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut run = match &form {
        AnyForm::Prime(fp, f) => commands::run_command(fp, f, &cli.command, source)?,
        AnyForm::Rational(f) => commands::run_command(&Rationals, f, &cli.command, source)?,
    };
    debug_assert_eq!(run.field, form.spec().to_string());
    if cli.timing {
        run.timing_ms = Some(start.elapsed().as_millis());
    }
    Ok(run)
}

/// Parses `args`, runs, writes the report and returns the process exit code
/// together with the text meant for standard output.
pub fn main_with_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    match run(&cli).and_then(|report| emit(&cli, &report).map(|out| (report, out))) {
        Ok((report, out)) => (if report.all_pass { 0 } else { 1 }, out),
        Err(e) => (e.exit_code(), format!("error: {e}\n")),
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<String, CliError> {
    let json = report.to_json();
    match &cli.report {
        Some(p) if p.as_os_str() == "-" => return Ok(json),
        Some(p) => std::fs::write(p, &json).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        None => {}
    }
    Ok(report.summary())
}

/// Writes a JSON value to `path`.
fn write_json(path: &std::path::Path, value: &serde_json::Value) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    std::fs::write(path, s).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn field_name<F: Field>(field: &F) -> String {
    field.spec().to_string()
}
