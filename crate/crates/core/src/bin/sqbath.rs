use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sqbath::cli::{self, CliError, Mode, RunConfig};
use sqbath::svg;

#[derive(Parser)]
#[command(name = "sqbath", version, about = "Two qubits in a common squeezed thermal bath")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time series from |eg> at fixed parameters
    Evolve(Common),
    /// Measures at fixed t across an r12 range
    SweepR12(Common),
    /// Measures at fixed t across a temperature range
    SweepTemp(Common),
    /// Report every measure for a state read from file
    State {
        state_file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// QFI time series with a step-halving check
    Qfi(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long = "t-max")]
    t_max: Option<String>,
    #[arg(long)]
    dt: Option<String>,
    #[arg(long)]
    r12: Option<String>,
    #[arg(long)]
    temp: Option<String>,
    #[arg(long)]
    squeeze: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    /// START:STOP:STEP
    #[arg(long)]
    range: Option<String>,
    /// dressed | computational
    #[arg(long = "coherence-basis")]
    coherence_basis: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    svg: Option<String>,
    #[arg(long)]
    seed: Option<String>,
}

impl Common {
    fn overrides(&self) -> Vec<(String, String)> {
        [
            ("t", &self.t),
            ("t_max", &self.t_max),
            ("dt", &self.dt),
            ("r12", &self.r12),
            ("temp", &self.temp),
            ("squeeze", &self.squeeze),
            ("phi", &self.phi),
            ("range", &self.range),
            ("coherence_basis", &self.coherence_basis),
            ("out", &self.out),
            ("svg", &self.svg),
            ("seed", &self.seed),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
        .collect()
    }

    fn config(&self, mode: Mode) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(p) => Some(
                std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?,
            ),
            None => None,
        };
        RunConfig::build(mode, file.as_deref(), &self.overrides())
    }
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(command: Command) -> Result<(), CliError> {
    let (mode, common, state_file) = match command {
        Command::Evolve(c) => (Mode::Evolve, c, None),
        Command::SweepR12(c) => (Mode::SweepR12, c, None),
        Command::SweepTemp(c) => (Mode::SweepTemp, c, None),
        Command::Qfi(c) => (Mode::Qfi, c, None),
        Command::State { state_file, common } => (Mode::State, common, Some(state_file)),
    };
    let cfg = common.config(mode)?;
    if let Some(path) = state_file {
        let text = std::fs::read_to_string(&path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        return emit(&cfg, &cli::run_state(&cfg, &text)?);
    }
    let table = match mode {
        Mode::Evolve => cli::run_evolve(&cfg)?,
        Mode::SweepR12 => cli::run_sweep_r12(&cfg)?,
        Mode::SweepTemp => cli::run_sweep_temp(&cfg)?,
        Mode::Qfi => cli::run_qfi(&cfg)?,
        Mode::State => unreachable!(),
    };
    if let Some(path) = &cfg.svg {
        std::fs::write(path, svg::render(&table))?;
    }
    emit(&cfg, &table.to_csv())
}

fn main() -> ExitCode {
    let args = Cli::parse();
    match run(args.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sqbath: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
