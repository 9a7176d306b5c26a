use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use zalka::config::{
    self, DepthSetting, Experiment, ExperimentConfig, OutputFormat, PartialConfig, Scheme,
};
use zalka::error::{CliError, Result};
use zalka::{experiments, output};

/// Noisy-qubit-register experiments: Fourier-transform depth sweeps,
/// splitting-order comparisons, Monte Carlo fidelity decay, many-electron
/// feasibility tables, and single propagations.
#[derive(Parser)]
#[command(name = "zalka", version, arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mean transform fidelity loss vs truncation depth k0 over Haar states.
    #[command(name = "aqft_sweep", after_help = defaults_help(Experiment::AqftSweep))]
    AqftSweep(CommonArgs),
    /// Both splitting schemes against the exact two-mode reference.
    #[command(name = "trotter_compare", after_help = defaults_help(Experiment::TrotterCompare))]
    TrotterCompare(CommonArgs),
    /// Monte Carlo fidelity decay under gate noise, with predictor curves.
    #[command(name = "fidelity_vs_time", after_help = defaults_help(Experiment::FidelityVsTime))]
    FidelityVsTime(CommonArgs),
    /// Closed-form fidelity predictions for many-electron registers.
    #[command(name = "many_electron", after_help = defaults_help(Experiment::ManyElectron))]
    ManyElectron(CommonArgs),
    /// One propagation of the two-mode state, recording fidelity and norm.
    #[command(name = "evolve", after_help = defaults_help(Experiment::Evolve))]
    Evolve(CommonArgs),
}

impl Command {
    fn split(self) -> (Experiment, CommonArgs) {
        match self {
            Command::AqftSweep(a) => (Experiment::AqftSweep, a),
            Command::TrotterCompare(a) => (Experiment::TrotterCompare, a),
            Command::FidelityVsTime(a) => (Experiment::FidelityVsTime, a),
            Command::ManyElectron(a) => (Experiment::ManyElectron, a),
            Command::Evolve(a) => (Experiment::Evolve, a),
        }
    }
}

/// Flags shared by every experiment. Anything left unset falls back to the
/// config file (if given), then to the experiment's documented default.
#[derive(Args)]
struct CommonArgs {
    /// Flat-JSON config file with ExperimentConfig field names.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Register size (qubits per coordinate for many_electron).
    #[arg(long, value_name = "N")]
    qubits: Option<usize>,
    /// Per-gate noise amplitude e.
    #[arg(long, value_name = "E")]
    noise: Option<f64>,
    /// Propagation time step.
    #[arg(long, value_name = "DT")]
    dt: Option<f64>,
    /// Total propagated time.
    #[arg(long = "t-final", value_name = "T")]
    t_final: Option<f64>,
    /// Operator-splitting scheme.
    #[arg(long, value_enum)]
    scheme: Option<Scheme>,
    /// Transform depth: a positive integer cutoff or "full".
    #[arg(long, value_name = "K|full")]
    depth: Option<DepthSetting>,
    /// Monte Carlo trajectories per data point.
    #[arg(long, value_name = "M")]
    trajectories: Option<usize>,
    /// Haar-random input states per sweep point.
    #[arg(long, value_name = "M")]
    states: Option<usize>,
    /// Master seed; with the config it fully determines every output byte.
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    /// Worker threads (default: all cores). Outputs never depend on this.
    #[arg(long, value_name = "P")]
    threads: Option<usize>,
    /// Output basename; ".csv"/".json" is appended per format.
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
    /// Which output files to write.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

impl CommonArgs {
    fn overrides(&self) -> PartialConfig {
        PartialConfig {
            experiment: None,
            n_qubits: self.qubits,
            noise: self.noise,
            dt: self.dt,
            t_final: self.t_final,
            scheme: self.scheme,
            depth: self.depth,
            n_states: self.states,
            n_trajectories: self.trajectories,
            n_electrons_max: None,
            lambda: None,
            a: None,
            half_width: None,
            record_every: None,
            master_seed: self.seed,
            out: self.out.clone(),
            format: self.format,
        }
    }
}

/// Renders the resolved defaults of one experiment for its --help page.
fn defaults_help(experiment: Experiment) -> String {
    let cfg = config::resolve(experiment, None, PartialConfig::default())
        .expect("builtin defaults always resolve");
    format!(
        "Defaults for {}:\n  \
         --qubits {}  --noise {}  --dt {}  --t-final {}  --scheme {}  --depth {}\n  \
         --trajectories {}  --states {}  --seed {}  --out {}  --format {}\n  \
         config-file only: n_electrons_max {}, lambda {}, a {}, half_width {}, record_every {}",
        experiment.label(),
        cfg.n_qubits,
        cfg.noise,
        cfg.dt,
        cfg.t_final,
        cfg.scheme,
        cfg.depth,
        cfg.n_trajectories,
        cfg.n_states,
        cfg.master_seed,
        cfg.out,
        cfg.format,
        cfg.n_electrons_max,
        cfg.lambda,
        cfg.a,
        cfg.half_width,
        cfg.record_every,
    )
}

fn resolve_config(experiment: Experiment, args: &CommonArgs) -> Result<ExperimentConfig> {
    let file = match &args.config {
        Some(path) => Some(config::load_partial(path)?),
        None => None,
    };
    config::resolve(experiment, file, args.overrides())
}

fn execute(cfg: &ExperimentConfig) -> Result<()> {
    let record = experiments::run(cfg)?;
    let written = output::emit(&record, cfg.format, &cfg.out)?;
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let (experiment, args) = cli.command.split();
    let cfg = resolve_config(experiment, &args)?;
    match args.threads {
        None => execute(&cfg),
        Some(0) => Err(CliError::config("--threads must be at least 1")),
        Some(p) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(p)
                .build()
                .map_err(|e| CliError::config(format!("cannot build a {p}-thread pool: {e}")))?;
            pool.install(|| execute(&cfg))
        }
    }
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
