//! Argument parsing and dispatch. Exit codes: 0 success, 1 numerical
//! contract violation, 2 usage or configuration error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::commands;
use crate::config::{self, ExperimentConfig, ExperimentName, Format};
use crate::error::CliError;
use crate::experiments::{self, Outcome};

fn parse_seed(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse::<u64>(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

#[derive(Debug, Parser)]
#[command(name = "npoint", version, about = "n-point multiplier norms, Pick interpolation and weighted shifts")]
pub struct Cli {
    /// JSON configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for the search generators (decimal or 0x-prefixed hex).
    #[arg(long, global = true, value_parser = parse_seed)]
    pub seed: Option<u64>,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Suppress informational messages on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kernel coefficients and Gram matrices.
    Kernel,
    /// n-point norm of given data.
    Picknorm,
    /// Seeded multistart search for n-point norms of a symbol.
    Search,
    /// Minimal-norm Nevanlinna–Pick interpolation on the disc.
    Interp,
    /// f(A) = λB(A) with a Blaschke product B.
    Sarason,
    /// Weighted shift weights and exact weight scans.
    Shifts,
    /// τ-embedding identities and coefficient reports.
    Embed,
    /// Reproducible experiment tables.
    Experiment {
        #[arg(value_enum)]
        name: ExperimentName,
    },
}

fn require(path: &Option<PathBuf>) -> Result<&Path, CliError> {
    path.as_deref().ok_or_else(|| CliError::Usage("this subcommand needs --config PATH".into()))
}

/// Runs a parsed command; returns the outcome and the format and
/// destination chosen by the config, if any.
pub fn execute(cli: &Cli) -> Result<(Outcome, Option<Format>, Option<PathBuf>), CliError> {
    let plain = |o: Outcome| (o, None, None);
    Ok(match &cli.command {
        Command::Kernel => plain(commands::kernel(&config::load(require(&cli.config)?)?)?),
        Command::Picknorm => plain(commands::picknorm(&config::load(require(&cli.config)?)?)?),
        Command::Search => {
            let mut cmd: config::SearchCommand = config::load(require(&cli.config)?)?;
            if let Some(s) = cli.seed {
                cmd.seed = s;
            }
            plain(commands::search(&cmd)?)
        }
        Command::Interp => plain(commands::interp(&config::load(require(&cli.config)?)?)?),
        Command::Sarason => plain(commands::sarason(&config::load(require(&cli.config)?)?)?),
        Command::Shifts => plain(commands::shifts(&config::load(require(&cli.config)?)?)?),
        Command::Embed => plain(commands::embed(&config::load(require(&cli.config)?)?)?),
        Command::Experiment { name } => {
            let mut cfg: ExperimentConfig = match &cli.config {
                Some(p) => config::load(p)?,
                None => ExperimentConfig::default(),
            };
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            let format = cfg.format;
            let out = cfg.out.clone().map(PathBuf::from);
            (experiments::run(*name, &cfg)?, format, out)
        }
    })
}

fn emit(
    cli: &Cli,
    computed: (Outcome, Option<Format>, Option<PathBuf>),
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let (outcome, cfg_format, cfg_out) = computed;
    let format = cli.format.or(cfg_format).unwrap_or(Format::Csv);
    let text = outcome.report.render(format);
    match cli.out.clone().or(cfg_out) {
        Some(path) => {
            std::fs::write(&path, &text)?;
            if !cli.quiet {
                writeln!(stderr, "wrote {}", path.display())?;
            }
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    if outcome.passed() {
        return Ok(0);
    }
    let failures: Vec<_> = outcome.failures.iter().map(|f| f.json()).collect();
    let diag = json!({"status": "violation", "command": outcome.report.command, "failures": failures});
    writeln!(stderr, "{diag}")?;
    Ok(1)
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code.
pub fn dispatch<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let computed = match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(CliError::Usage(format!("cannot build thread pool: {e}"))),
        },
        None => execute(&cli),
    };
    let result = computed.and_then(|c| emit(&cli, c, stdout, stderr));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.diagnostic());
            e.exit_code()
        }
    }
}
