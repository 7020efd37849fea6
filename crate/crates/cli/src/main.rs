use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use monochar_cli::{run, Command, Format, RunConfig};

#[derive(Parser)]
#[command(name = "monochar", version, about = "Representation theory of finite transformation monoids")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args)]
struct Common {
    /// Generator file, one transformation per line as one-based images.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Largest monoid checked against the trace-form radical.
    #[arg(long, default_value_t = monochar::radical::TRACE_FORM_BOUND)]
    oracle_max: usize,
    /// Repetitions for `bench`.
    #[arg(long, default_value_t = 5)]
    repeat: usize,
}

#[derive(Subcommand)]
enum Sub {
    /// Order and word statistics.
    Enumerate(Common),
    /// Whether a transformation lies in the monoid.
    Membership {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        element: String,
    },
    /// Green structure as an eggbox summary, JSON or Graphviz.
    Green(Common),
    /// Schützenberger group orders and class counts per J-class.
    Schutz(Common),
    /// Test elements and the fixed-point bicharacter.
    Bichar(Common),
    /// Character table.
    Chartable(Common),
    /// Character table, dimensions and Cartan matrix.
    Cartan(Common),
    /// Radical dimension of every regular L-class module.
    Radical(Common),
    /// Per-stage timings.
    Bench(Common),
}

fn main() -> ExitCode {
    let (command, common) = match Cli::parse().command {
        Sub::Enumerate(c) => (Command::Enumerate, c),
        Sub::Membership { common, element } => (Command::Membership { element }, common),
        Sub::Green(c) => (Command::Green, c),
        Sub::Schutz(c) => (Command::Schutz, c),
        Sub::Bichar(c) => (Command::Bichar, c),
        Sub::Chartable(c) => (Command::Chartable, c),
        Sub::Cartan(c) => (Command::Cartan, c),
        Sub::Radical(c) => (Command::Radical, c),
        Sub::Bench(c) => (Command::Bench, c),
    };
    let config = RunConfig {
        command,
        input: common.input,
        format: common.format,
        jobs: common.jobs,
        oracle_max: common.oracle_max,
        repeat: common.repeat,
    };
    match run(&config) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("monochar: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
