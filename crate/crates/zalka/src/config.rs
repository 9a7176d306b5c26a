//! Experiment configuration: per-experiment defaults, flat-JSON config
//! files, CLI flag overrides (flag > file > default), and validation.
//!
//! The resolved [`ExperimentConfig`] is echoed verbatim into every
//! `RunRecord`, so a recorded run can be replayed from its own output.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use zalka_core::evolution::TrotterScheme;
use zalka_core::noise::NoiseLevel;
use zalka_core::poschl_teller::PtParams;
use zalka_core::qft::{QftConfig, QftDepth};

use crate::error::{CliError, Result};

/// The five experiments the runner knows how to execute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    AqftSweep,
    TrotterCompare,
    FidelityVsTime,
    ManyElectron,
    Evolve,
}

impl Experiment {
    pub fn label(self) -> &'static str {
        match self {
            Experiment::AqftSweep => "aqft_sweep",
            Experiment::TrotterCompare => "trotter_compare",
            Experiment::FidelityVsTime => "fidelity_vs_time",
            Experiment::ManyElectron => "many_electron",
            Experiment::Evolve => "evolve",
        }
    }
}

/// Operator-splitting scheme selector (`lie` | `strang`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Lie,
    Strang,
}

impl From<Scheme> for TrotterScheme {
    fn from(s: Scheme) -> TrotterScheme {
        match s {
            Scheme::Lie => TrotterScheme::Lie,
            Scheme::Strang => TrotterScheme::Strang,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Lie => "lie",
            Scheme::Strang => "strang",
        })
    }
}

/// Output selector (`csv` | `json` | `both`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
    Both,
}

impl OutputFormat {
    pub fn wants_csv(self) -> bool {
        matches!(self, OutputFormat::Csv | OutputFormat::Both)
    }

    pub fn wants_json(self) -> bool {
        matches!(self, OutputFormat::Json | OutputFormat::Both)
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Both => "both",
        })
    }
}

/// Transform depth: every controlled phase (`full`) or a cutoff `k`.
/// Serialized as the string `"full"` or a number; both parse back.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DepthSetting(pub QftDepth);

impl DepthSetting {
    pub fn qft_depth(self) -> QftDepth {
        self.0
    }
}

impl fmt::Display for DepthSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            QftDepth::Full => write!(f, "full"),
            QftDepth::Limit(k) => write!(f, "{k}"),
        }
    }
}

impl FromStr for DepthSetting {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("full") {
            return Ok(DepthSetting(QftDepth::Full));
        }
        s.parse::<usize>()
            .map(|k| DepthSetting(QftDepth::Limit(k)))
            .map_err(|_| format!("depth must be a positive integer or \"full\", got {s:?}"))
    }
}

impl Serialize for DepthSetting {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DepthSetting {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(usize),
            Text(String),
        }
        match Raw::deserialize(de)? {
            Raw::Number(k) => Ok(DepthSetting(QftDepth::Limit(k))),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A fully resolved experiment description. Every field carries a concrete
/// value after resolution; fields an experiment does not consume are still
/// echoed so records stay uniform and replayable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub n_qubits: usize,
    pub noise: f64,
    pub dt: f64,
    pub t_final: f64,
    pub scheme: Scheme,
    pub depth: DepthSetting,
    pub n_states: usize,
    pub n_trajectories: usize,
    pub n_electrons_max: usize,
    pub lambda: f64,
    pub a: f64,
    pub half_width: f64,
    pub record_every: usize,
    pub master_seed: u64,
    pub out: String,
    pub format: OutputFormat,
}

/// A config file or flag set: any subset of the fields may be present.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub experiment: Option<Experiment>,
    pub n_qubits: Option<usize>,
    pub noise: Option<f64>,
    pub dt: Option<f64>,
    pub t_final: Option<f64>,
    pub scheme: Option<Scheme>,
    pub depth: Option<DepthSetting>,
    pub n_states: Option<usize>,
    pub n_trajectories: Option<usize>,
    pub n_electrons_max: Option<usize>,
    pub lambda: Option<f64>,
    pub a: Option<f64>,
    pub half_width: Option<f64>,
    pub record_every: Option<usize>,
    pub master_seed: Option<u64>,
    pub out: Option<String>,
    pub format: Option<OutputFormat>,
}

/// Reads a flat-JSON config file. A missing/unreadable file is an I/O
/// error; malformed JSON or unknown fields are configuration errors.
pub fn load_partial(path: &Path) -> Result<PartialConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("cannot read config file {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::config(format!("invalid config file {}: {e}", path.display())))
}

/// Per-experiment defaults; everything not listed here is shared.
struct Defaults {
    n_qubits: usize,
    noise: f64,
    dt: f64,
    scheme: Scheme,
    n_trajectories: usize,
}

fn defaults_for(experiment: Experiment) -> Defaults {
    match experiment {
        Experiment::AqftSweep => Defaults {
            n_qubits: 12,
            noise: 0.05,
            dt: 0.1,
            scheme: Scheme::Strang,
            n_trajectories: 1,
        },
        Experiment::TrotterCompare => Defaults {
            n_qubits: 7,
            noise: 0.0,
            dt: 0.1,
            scheme: Scheme::Strang,
            n_trajectories: 1,
        },
        Experiment::FidelityVsTime => Defaults {
            n_qubits: 7,
            noise: 0.01,
            dt: 0.05,
            scheme: Scheme::Strang,
            n_trajectories: 30,
        },
        Experiment::ManyElectron => Defaults {
            n_qubits: 8,
            noise: 0.0,
            dt: 0.1,
            scheme: Scheme::Strang,
            n_trajectories: 1,
        },
        Experiment::Evolve => Defaults {
            n_qubits: 9,
            noise: 0.0,
            dt: 0.01,
            scheme: Scheme::Lie,
            n_trajectories: 1,
        },
    }
}

/// Merges defaults, an optional config file, and flag overrides
/// (flags win over the file, the file wins over defaults), then validates.
pub fn resolve(
    experiment: Experiment,
    file: Option<PartialConfig>,
    flags: PartialConfig,
) -> Result<ExperimentConfig> {
    let file = file.unwrap_or_default();
    if let Some(declared) = file.experiment {
        if declared != experiment {
            return Err(CliError::config(format!(
                "config file is for experiment {:?} but {:?} was requested",
                declared.label(),
                experiment.label()
            )));
        }
    }
    let d = defaults_for(experiment);
    macro_rules! pick {
        ($field:ident, $default:expr) => {
            flags.$field.or(file.$field).unwrap_or($default)
        };
    }
    let cfg = ExperimentConfig {
        experiment,
        n_qubits: pick!(n_qubits, d.n_qubits),
        noise: pick!(noise, d.noise),
        dt: pick!(dt, d.dt),
        t_final: pick!(t_final, 1.0),
        scheme: pick!(scheme, d.scheme),
        depth: pick!(depth, DepthSetting(QftDepth::Full)),
        n_states: pick!(n_states, 1000),
        n_trajectories: pick!(n_trajectories, d.n_trajectories),
        n_electrons_max: pick!(n_electrons_max, 100),
        lambda: pick!(lambda, 4.0),
        a: pick!(a, 1.0),
        half_width: pick!(half_width, 10.0),
        record_every: pick!(record_every, 1),
        master_seed: pick!(master_seed, 1),
        out: flags
            .out
            .or(file.out)
            .unwrap_or_else(|| experiment.label().to_string()),
        format: pick!(format, OutputFormat::Csv),
    };
    cfg.validate()?;
    Ok(cfg)
}

impl ExperimentConfig {
    /// The physics parameters as the core library's validated type.
    pub fn pt_params(&self) -> Result<PtParams> {
        Ok(PtParams::new(self.lambda, self.a)?)
    }

    pub fn noise_level(&self) -> Result<NoiseLevel> {
        Ok(NoiseLevel::new(self.noise)?)
    }

    /// Number of propagation steps: t_final/Δt rounded to the nearest whole
    /// step (recorded times always report the values actually reached).
    pub fn n_steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }

    fn validate(&self) -> Result<()> {
        if self.n_qubits == 0 {
            return Err(CliError::config("n_qubits must be at least 1"));
        }
        self.noise_level()?;
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(CliError::config(format!(
                "dt must be positive and finite, got {}",
                self.dt
            )));
        }
        if !(self.t_final.is_finite() && self.t_final >= 0.0) {
            return Err(CliError::config(format!(
                "t_final must be non-negative and finite, got {}",
                self.t_final
            )));
        }
        // Probing a transform config validates the depth/width pairing.
        QftConfig::forward(
            self.n_qubits,
            self.depth.qft_depth(),
            NoiseLevel::new(self.noise)?,
        )?;
        if self.n_states == 0 {
            return Err(CliError::config("n_states must be at least 1"));
        }
        if self.n_trajectories == 0 {
            return Err(CliError::config("n_trajectories must be at least 1"));
        }
        if self.experiment == Experiment::FidelityVsTime && self.n_trajectories < 2 {
            return Err(CliError::config(
                "fidelity_vs_time needs n_trajectories >= 2 to estimate a standard error",
            ));
        }
        if self.record_every == 0 {
            return Err(CliError::config("record_every must be at least 1"));
        }
        self.pt_params()?;
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return Err(CliError::config(format!(
                "half_width must be positive and finite, got {}",
                self.half_width
            )));
        }
        if self.out.is_empty() {
            return Err(CliError::config("output path must not be empty"));
        }
        Ok(())
    }
}
