use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use corewell_cli::run::{run, Command, RunManifest};

#[derive(Clone, Copy, ValueEnum)]
enum CommandArg {
    /// Bound states at one radius -> eigenvalues.csv
    Solve,
    /// Level curves over a radius grid -> levels.csv (+ levels.svg)
    Sweep,
    /// Spectral splitting between two tensor/channel settings -> degeneracy.txt
    Degeneracy,
    /// Closed-form solver against the shooting integration -> oracle_check.csv
    OracleCheck,
}

impl From<CommandArg> for Command {
    fn from(c: CommandArg) -> Command {
        match c {
            CommandArg::Solve => Command::Solve,
            CommandArg::Sweep => Command::Sweep,
            CommandArg::Degeneracy => Command::Degeneracy,
            CommandArg::OracleCheck => Command::OracleCheck,
        }
    }
}

/// Bound-state spectra of a Dirac particle in a two-mass spherical
/// core/shell well with a Coulomb-type tensor term.
#[derive(Parser)]
#[command(name = "corewell", version)]
struct Cli {
    /// Run configuration: INI-style sections [well], [solver], [output], [degeneracy].
    #[arg(long)]
    config: PathBuf,

    /// What to compute.
    #[arg(long, value_enum)]
    command: CommandArg,

    /// Output directory; overrides the config's [output] dir.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Overwrite existing output files.
    #[arg(long)]
    force: bool,

    /// Suppress progress lines on stdout.
    #[arg(long)]
    quiet: bool,
}

fn main() {
    let cli = Cli::parse();
    let manifest = RunManifest {
        config_path: cli.config,
        command: cli.command.into(),
        output_dir: cli.out,
        force: cli.force,
        quiet: cli.quiet,
    };
    std::process::exit(run(&manifest));
}
