//! Command-line front end for `monochar`: configuration, dispatch and output.

mod commands;

use std::fmt;
use std::path::PathBuf;

use monochar::analysis::{Stage, StageError};
use monochar::Error;

pub use commands::BenchRow;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Enumerate,
    Membership { element: String },
    Green,
    Schutz,
    Bichar,
    Chartable,
    Cartan,
    Radical,
    Bench,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Enumerate => "enumerate",
            Command::Membership { .. } => "membership",
            Command::Green => "green",
            Command::Schutz => "schutz",
            Command::Bichar => "bichar",
            Command::Chartable => "chartable",
            Command::Cartan => "cartan",
            Command::Radical => "radical",
            Command::Bench => "bench",
        }
    }

    fn accepts(&self, format: Format) -> bool {
        match format {
            Format::Text | Format::Json => true,
            Format::Dot => matches!(self, Command::Green),
            Format::Csv => matches!(self, Command::Bichar | Command::Chartable | Command::Cartan),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Dot => "dot",
        })
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    pub format: Format,
    /// Worker threads; `None` uses every core.
    pub jobs: Option<usize>,
    /// Size bound for the trace-form cross-check in `radical`.
    pub oracle_max: usize,
    /// Repetitions for `bench`.
    pub repeat: usize,
}

impl RunConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>, format: Format) -> RunConfig {
        RunConfig {
            command,
            input: input.into(),
            format,
            jobs: None,
            oracle_max: monochar::radical::TRACE_FORM_BOUND,
            repeat: 5,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("contract violation in stage {stage}: {source}")]
    Contract {
        stage: Stage,
        #[source]
        source: Error,
    },
}

impl CliError {
    /// 1 for unreadable or malformed input, 2 for a failed computation.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Contract { .. } => 2,
            _ => 1,
        }
    }
}

impl From<StageError> for CliError {
    fn from(e: StageError) -> Self {
        CliError::Contract {
            stage: e.stage,
            source: e.source,
        }
    }
}

/// Runs one command and returns what it prints on stdout.
pub fn run(config: &RunConfig) -> Result<String, CliError> {
    if !config.command.accepts(config.format) {
        return Err(CliError::Usage(format!(
            "format {} is not available for {}",
            config.format,
            config.command.name()
        )));
    }
    if config.repeat == 0 {
        return Err(CliError::Usage("--repeat must be positive".into()));
    }
    let text = std::fs::read_to_string(&config.input).map_err(|source| CliError::Io {
        path: config.input.clone(),
        source,
    })?;
    let generators = monochar::enumeration::parse_generators(&text).map_err(|e| match e {
        Error::Parse { line, message } => CliError::Parse { line, message },
        other => CliError::Parse {
            line: 0,
            message: other.to_string(),
        },
    })?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = config.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        builder = builder.num_threads(jobs);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?;
    pool.install(|| commands::dispatch(config, &generators))
}
