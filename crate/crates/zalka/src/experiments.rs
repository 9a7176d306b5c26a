//! The five experiment runners and the [`RunRecord`] they all produce.
//!
//! Every runner is deterministic in `(config, master_seed)`: Monte Carlo
//! trajectory i always consumes random stream i (and only stream i), and
//! results are reduced in trajectory-index order, so the output bytes do not
//! depend on how many threads rayon schedules.

use std::f64::consts::FRAC_1_SQRT_2;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use zalka_core::evolution::{
    build_grid, evolve, predict_fidelity, predict_many_electron, EvolutionConfig,
    FidelityEstimate, SpatialGrid,
};
use zalka_core::poschl_teller::{reference_state, ModeCoefficients, PtParams};
use zalka_core::qft::{qft, QftConfig, QftDepth};
use zalka_core::{Complex64, PureState, RandomStream};

use crate::config::{Experiment, ExperimentConfig};
use crate::error::Result;

/// One complete run: the resolved configuration it was produced from, the
/// column names, and the numeric table. Serializing this as JSON and feeding
/// the `config` block back in reproduces the run byte for byte.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunRecord {
    pub experiment: String,
    pub version: String,
    pub master_seed: u64,
    /// Wall-clock duration of the run in seconds. Informational only; it is
    /// excluded from the CSV so reruns stay byte-identical.
    pub wall_time_s: f64,
    pub config: ExperimentConfig,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Executes the experiment the config names and packages the result.
pub fn run(cfg: &ExperimentConfig) -> Result<RunRecord> {
    let started = Instant::now();
    let (columns, rows) = match cfg.experiment {
        Experiment::AqftSweep => run_aqft_sweep(cfg)?,
        Experiment::TrotterCompare => run_trotter_compare(cfg)?,
        Experiment::FidelityVsTime => run_fidelity_vs_time(cfg)?,
        Experiment::ManyElectron => run_many_electron(cfg)?,
        Experiment::Evolve => run_evolve(cfg)?,
    };
    Ok(RunRecord {
        experiment: cfg.experiment.label().to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        master_seed: cfg.master_seed,
        wall_time_s: started.elapsed().as_secs_f64(),
        config: cfg.clone(),
        columns,
        rows,
    })
}

fn column_names(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Sample mean and standard error of the mean (n−1 variance), accumulated in
/// slice order so the result is independent of thread scheduling. A single
/// sample reports sem = 0.
fn mean_sem(xs: &[f64]) -> (f64, f64) {
    let m = xs.len();
    let mean = xs.iter().sum::<f64>() / m as f64;
    if m < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (m - 1) as f64;
    (mean, (var / m as f64).sqrt())
}

/// The standard two-mode benchmark state: equal weights on the two lowest
/// bound modes with a 90° relative phase, (ψ₀ + iψ₁)/√2. Its exact evolution
/// beats at the mode-energy difference, exercising both the potential and
/// kinetic halves of every step.
fn two_mode_coeffs(params: &PtParams) -> Result<ModeCoefficients> {
    Ok(ModeCoefficients::new(
        params,
        vec![
            (0, Complex64::new(FRAC_1_SQRT_2, 0.0)),
            (1, Complex64::new(0.0, FRAC_1_SQRT_2)),
        ],
    )?)
}

/// Grid, sampled potential, and stepping parameters shared by the
/// propagation experiments.
fn propagation_config(
    cfg: &ExperimentConfig,
    grid: SpatialGrid,
    params: &PtParams,
) -> Result<EvolutionConfig> {
    Ok(EvolutionConfig::from_potential_fn(
        grid,
        |x| params.potential_at(x),
        cfg.dt,
        cfg.n_steps(),
        cfg.scheme.into(),
        cfg.noise_level()?,
        cfg.depth.qft_depth(),
        cfg.record_every,
    )?)
}

/// Truncation-depth sweep: mean transform fidelity loss of a noisy
/// depth-limited transform against the ideal full-depth transform, over
/// Haar-random inputs, for every cutoff k₀ from 2 to n.
///
/// Stream i is replayed from the top for every cutoff, so all cutoffs see
/// the same input states and the same leading noise deviates (common random
/// numbers); differences between rows are then dominated by the cutoff
/// itself rather than by sampling noise.
fn run_aqft_sweep(cfg: &ExperimentConfig) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let n = cfg.n_qubits;
    let e = cfg.noise_level()?;
    let ideal_cfg = QftConfig::forward(n, QftDepth::Full, zalka_core::noise::NoiseLevel::ZERO)?;
    let mut rows = Vec::with_capacity(n.saturating_sub(1));
    for k0 in 2..=n {
        let noisy_cfg = QftConfig::forward(n, QftDepth::Limit(k0), e)?;
        let losses = (0..cfg.n_states as u64)
            .into_par_iter()
            .map(|i| -> Result<f64> {
                let mut stream = RandomStream::new(cfg.master_seed, i);
                let input = PureState::haar_state(n, &mut stream)?;
                let mut ideal = input.clone();
                // Noise level zero: consumes no deviates from the stream.
                qft(&mut ideal, &ideal_cfg, &mut stream)?;
                let mut noisy = input;
                qft(&mut noisy, &noisy_cfg, &mut stream)?;
                Ok(1.0 - ideal.fidelity(&noisy)?)
            })
            .collect::<Result<Vec<f64>>>()?;
        let (mean, sem) = mean_sem(&losses);
        rows.push(vec![k0 as f64, mean, sem]);
    }
    Ok((column_names(&["k0", "mean_fidelity_loss", "sem"]), rows))
}

/// Splitting-order comparison: the two-mode benchmark state propagated with
/// both splitting schemes against the exact reference, fidelity recorded at
/// every recorded step. Noiseless by default so the table isolates pure
/// splitting error.
fn run_trotter_compare(cfg: &ExperimentConfig) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let params = cfg.pt_params()?;
    let grid = build_grid(cfg.n_qubits, cfg.half_width)?;
    let coeffs = two_mode_coeffs(&params)?;
    let initial = reference_state(&grid, 0.0, &params, &coeffs)?;

    let mut scheme_cfgs = Vec::new();
    for scheme in [crate::config::Scheme::Lie, crate::config::Scheme::Strang] {
        let mut c = cfg.clone();
        c.scheme = scheme;
        scheme_cfgs.push(propagation_config(&c, grid, &params)?);
    }

    // Trajectory i of the Lie run owns stream 2i, of the Strang run 2i+1,
    // so the two schemes stay independent at equal trajectory counts.
    let run_scheme = |which: usize| -> Result<Vec<Vec<(f64, f64)>>> {
        (0..cfg.n_trajectories as u64)
            .into_par_iter()
            .map(|i| -> Result<Vec<(f64, f64)>> {
                let mut stream = RandomStream::new(cfg.master_seed, 2 * i + which as u64);
                let records = evolve(&initial, &scheme_cfgs[which], &mut stream)?;
                records
                    .iter()
                    .map(|(t, state)| {
                        let exact = reference_state(&grid, *t, &params, &coeffs)?;
                        Ok((*t, state.fidelity(&exact)?))
                    })
                    .collect()
            })
            .collect()
    };
    let lie_runs = run_scheme(0)?;
    let strang_runs = run_scheme(1)?;

    let n_records = lie_runs[0].len();
    let mut rows = Vec::with_capacity(n_records);
    for r in 0..n_records {
        let t = lie_runs[0][r].0;
        let lie_at_r: Vec<f64> = lie_runs.iter().map(|run| run[r].1).collect();
        let strang_at_r: Vec<f64> = strang_runs.iter().map(|run| run[r].1).collect();
        let (lie_mean, lie_sem) = mean_sem(&lie_at_r);
        let (strang_mean, strang_sem) = mean_sem(&strang_at_r);
        rows.push(vec![t, lie_mean, lie_sem, strang_mean, strang_sem]);
    }
    Ok((
        column_names(&["t", "fidelity_lie", "sem_lie", "fidelity_strang", "sem_strang"]),
        rows,
    ))
}

/// Noisy-propagation fidelity decay: Monte Carlo mean ± sem of the fidelity
/// to the exact reference at every recorded time, next to both closed-form
/// per-transform predictions.
fn run_fidelity_vs_time(cfg: &ExperimentConfig) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let params = cfg.pt_params()?;
    let grid = build_grid(cfg.n_qubits, cfg.half_width)?;
    let coeffs = two_mode_coeffs(&params)?;
    let initial = reference_state(&grid, 0.0, &params, &coeffs)?;
    let prop = propagation_config(cfg, grid, &params)?;
    let e = cfg.noise_level()?;

    let per_trajectory: Vec<Vec<(f64, f64)>> = (0..cfg.n_trajectories as u64)
        .into_par_iter()
        .map(|i| -> Result<Vec<(f64, f64)>> {
            let mut stream = RandomStream::new(cfg.master_seed, i);
            let records = evolve(&initial, &prop, &mut stream)?;
            records
                .iter()
                .map(|(t, state)| {
                    let exact = reference_state(&grid, *t, &params, &coeffs)?;
                    Ok((*t, state.fidelity(&exact)?))
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;

    let n_records = per_trajectory[0].len();
    let mut rows = Vec::with_capacity(n_records);
    for r in 0..n_records {
        let t = per_trajectory[0][r].0;
        let fids: Vec<f64> = per_trajectory.iter().map(|run| run[r].1).collect();
        let (mean, sem) = mean_sem(&fids);
        rows.push(vec![
            t,
            mean,
            sem,
            predict_fidelity(cfg.n_qubits, e, t, cfg.dt, FidelityEstimate::Basic),
            predict_fidelity(cfg.n_qubits, e, t, cfg.dt, FidelityEstimate::Improved),
        ]);
    }
    Ok((
        column_names(&["t", "mean_fidelity", "sem", "predicted_basic", "predicted_improved"]),
        rows,
    ))
}

/// Noise levels swept by the many-electron scaling table.
const MANY_ELECTRON_NOISE: [f64; 5] = [0.001, 0.002, 0.003, 0.005, 0.01];
/// Coordinates per electron in the scaling estimate.
const MANY_ELECTRON_COORDS: usize = 3;

/// Closed-form feasibility table: predicted end-of-run fidelity for N_e
/// electrons in three coordinates, n_qubits per coordinate, across a sweep
/// of per-gate noise levels. Purely analytic — no propagation is run.
fn run_many_electron(cfg: &ExperimentConfig) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut rows = Vec::with_capacity((cfg.n_electrons_max + 1) * MANY_ELECTRON_NOISE.len());
    for n_e in 0..=cfg.n_electrons_max {
        for &e_val in &MANY_ELECTRON_NOISE {
            let e = zalka_core::noise::NoiseLevel::new(e_val)?;
            let improved = predict_many_electron(
                n_e,
                MANY_ELECTRON_COORDS,
                cfg.n_qubits,
                e,
                cfg.t_final,
                cfg.dt,
                FidelityEstimate::Improved,
            );
            let basic = predict_many_electron(
                n_e,
                MANY_ELECTRON_COORDS,
                cfg.n_qubits,
                e,
                cfg.t_final,
                cfg.dt,
                FidelityEstimate::Basic,
            );
            rows.push(vec![n_e as f64, e_val, improved, basic]);
        }
    }
    Ok((
        column_names(&["n_e", "e", "fidelity_improved", "fidelity_basic"]),
        rows,
    ))
}

/// Single propagation of the two-mode benchmark state, recording fidelity to
/// the exact reference and the norm at every recorded time. The direct way
/// to watch one trajectory (noisy or not) evolve.
fn run_evolve(cfg: &ExperimentConfig) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let params = cfg.pt_params()?;
    let grid = build_grid(cfg.n_qubits, cfg.half_width)?;
    let coeffs = two_mode_coeffs(&params)?;
    let initial = reference_state(&grid, 0.0, &params, &coeffs)?;
    let prop = propagation_config(cfg, grid, &params)?;
    let mut stream = RandomStream::new(cfg.master_seed, 0);
    let records = evolve(&initial, &prop, &mut stream)?;
    let mut rows = Vec::with_capacity(records.len());
    for (t, state) in &records {
        let exact = reference_state(&grid, *t, &params, &coeffs)?;
        rows.push(vec![*t, state.fidelity(&exact)?, state.norm()]);
    }
    Ok((column_names(&["t", "fidelity_oracle", "norm"]), rows))
}
