//! Baseline heuristic solvers and the seeded trial-batch runner.
//!
//! Solvers are deterministic functions of (instance, parameters, seed).
//! Randomness comes from counter-based ChaCha8 streams keyed by the master
//! seed, so a batch of trials produces bit-identical records regardless of
//! how many worker threads execute it: trial `t` always draws from stream
//! `(t << 8) | substream` of `ChaCha8(seed_from_u64(master_seed))`.

mod local_search;
mod pt;
mod sa;

pub use local_search::local_search;
pub use pt::{icm_move, parallel_tempering, pt_icm, pt_swap_phase, IcmOutcome};
pub use sa::simulated_annealing;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instances::ProblemInstance;
use crate::model::{Adjacency, IncrementalState, ModelError, SpinConfig};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid solver parameters: {0}")]
    InvalidParams(String),
    #[error("cluster move requires both replicas on the same instance")]
    InstanceMismatch,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Which baseline to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    LocalSearch,
    SimulatedAnnealing,
    ParallelTempering,
    PtIcm,
}

impl SolverKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolverKind::LocalSearch => "local_search",
            SolverKind::SimulatedAnnealing => "simulated_annealing",
            SolverKind::ParallelTempering => "parallel_tempering",
            SolverKind::PtIcm => "pt_icm",
        }
    }
}

impl std::str::FromStr for SolverKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ls" | "local-search" | "local_search" => Ok(SolverKind::LocalSearch),
            "sa" | "simulated-annealing" | "simulated_annealing" => {
                Ok(SolverKind::SimulatedAnnealing)
            }
            "pt" | "parallel-tempering" | "parallel_tempering" => {
                Ok(SolverKind::ParallelTempering)
            }
            "pticm" | "pt-icm" | "pt_icm" => Ok(SolverKind::PtIcm),
            other => Err(format!("unknown solver {other:?}")),
        }
    }
}

/// Solver configuration. Every default is overridable from the CLI and
/// from a key-value configuration file.
///
/// For the tempering solvers a "sweep" is one round of one Metropolis
/// sweep per replica; `sweeps_per_run` counts rounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    pub kind: SolverKind,
    pub sweeps_per_run: u64,
    /// Independent restarts inside a single trial.
    pub restarts: u64,
    /// Start temperature for SA, in cut units. `None` calibrates it so the
    /// initial acceptance rate is roughly 0.8, probed on 100 random moves.
    pub t_hot: Option<f64>,
    pub t_cold: f64,
    /// Per-sweep geometric cooling factor. `None` derives it so the
    /// schedule lands on `t_cold` after `sweeps_per_run` sweeps.
    pub cooling_factor: Option<f64>,
    /// Number of temperatures in the tempering ladder.
    pub replicas: usize,
    pub beta_min: f64,
    pub beta_max: f64,
    /// Explicit ladder of inverse temperatures, strictly increasing.
    /// Overrides the geometric (`replicas`, `beta_min`, `beta_max`) ladder.
    pub beta_ladder: Option<Vec<f64>>,
    /// Sweeps between cluster-move attempts in the PT+ICM solver.
    pub icm_period: u64,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            kind: SolverKind::SimulatedAnnealing,
            sweeps_per_run: 1000,
            restarts: 1,
            t_hot: None,
            t_cold: 0.05,
            cooling_factor: None,
            replicas: 24,
            beta_min: 0.1,
            beta_max: 5.0,
            beta_ladder: None,
            icm_period: 1,
        }
    }
}

impl SolverParams {
    pub fn with_kind(kind: SolverKind) -> Self {
        SolverParams {
            kind,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |msg: String| Err(SolverError::InvalidParams(msg));
        if self.sweeps_per_run < 1 {
            return bad("sweeps_per_run must be at least 1".into());
        }
        if self.restarts < 1 {
            return bad("restarts must be at least 1".into());
        }
        if !(self.t_cold > 0.0) {
            return bad(format!("t_cold must be positive, got {}", self.t_cold));
        }
        if let Some(t_hot) = self.t_hot {
            if !(t_hot > self.t_cold) {
                return bad(format!(
                    "need t_hot > t_cold > 0, got t_hot={t_hot} t_cold={}",
                    self.t_cold
                ));
            }
        }
        if let Some(f) = self.cooling_factor {
            if !(f > 0.0 && f <= 1.0) {
                return bad(format!("cooling_factor must be in (0, 1], got {f}"));
            }
        }
        if matches!(self.kind, SolverKind::ParallelTempering | SolverKind::PtIcm) {
            let ladder = self.ladder()?;
            if ladder.len() < 2 {
                return bad("tempering needs at least 2 replicas".into());
            }
        }
        if self.icm_period < 1 {
            return bad("icm_period must be at least 1".into());
        }
        Ok(())
    }

    /// The inverse-temperature ladder, ascending in beta.
    pub fn ladder(&self) -> Result<Vec<f64>, SolverError> {
        if let Some(ladder) = &self.beta_ladder {
            if ladder.len() < 2 {
                return Err(SolverError::InvalidParams(
                    "explicit beta ladder needs at least 2 entries".into(),
                ));
            }
            for pair in ladder.windows(2) {
                if !(pair[0] > 0.0 && pair[1] > pair[0]) {
                    return Err(SolverError::InvalidParams(
                        "beta ladder must be positive and strictly increasing".into(),
                    ));
                }
            }
            return Ok(ladder.clone());
        }
        if self.replicas < 2 {
            return Err(SolverError::InvalidParams(
                "tempering needs at least 2 replicas".into(),
            ));
        }
        if !(self.beta_min > 0.0 && self.beta_max > self.beta_min) {
            return Err(SolverError::InvalidParams(format!(
                "need 0 < beta_min < beta_max, got {}..{}",
                self.beta_min, self.beta_max
            )));
        }
        let r = self.replicas;
        let ratio = (self.beta_max / self.beta_min).powf(1.0 / (r - 1) as f64);
        Ok((0..r).map(|k| self.beta_min * ratio.powi(k as i32)).collect())
    }
}

/// Per-trial outcome. `best_config` re-certifies: its from-scratch cut
/// equals `best_value` (checked when the record is built).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_index: u64,
    /// RNG stream id the trial drew from.
    pub seed: u64,
    pub best_value: i64,
    pub best_config: SpinConfig,
    pub sweeps_executed: u64,
    /// Cumulative sweep index at which `best_value` was first reached.
    pub sweep_at_best: u64,
    /// Seconds, including per-trial preprocessing. Not covered by the
    /// determinism contract.
    pub wall_time: f64,
}

impl TrialRecord {
    /// Equality on everything except wall time.
    pub fn deterministic_eq(&self, other: &Self) -> bool {
        self.trial_index == other.trial_index
            && self.seed == other.seed
            && self.best_value == other.best_value
            && self.best_config == other.best_config
            && self.sweeps_executed == other.sweeps_executed
            && self.sweep_at_best == other.sweep_at_best
    }
}

/// Aggregate over a batch of trials. The aggregate is a pure fold of the
/// per-trial records, so it is identical for any worker count.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchRecord {
    pub num_trials: u64,
    pub workers: usize,
    pub master_seed: u64,
    pub target: Option<i64>,
    /// Trials with `best_value >= target`; present iff a target was given.
    pub successes: Option<u64>,
    pub p_s: Option<f64>,
    /// Mean wall time per trial, seconds.
    pub t_trial_mean: f64,
    pub best_value: i64,
    /// Trial holding the overall best, first-reached wins ties
    /// (lowest sweep index, then lowest trial index).
    pub best_trial: u64,
    pub trials: Vec<TrialRecord>,
}

/// Raw solver result before packaging into a record.
pub(crate) struct RunOutcome {
    pub best_config: SpinConfig,
    pub best_value: i64,
    pub sweeps_executed: u64,
    pub sweep_at_best: u64,
}

/// Tracks the best configuration seen so far, with first-reached tie-breaking.
pub(crate) struct BestTracker {
    pub value: i64,
    pub config: SpinConfig,
    pub sweep: u64,
}

impl BestTracker {
    pub fn new(state: &IncrementalState, sweep: u64) -> Self {
        BestTracker {
            value: state.cut(),
            config: state.config().clone(),
            sweep,
        }
    }

    #[inline]
    pub fn observe(&mut self, state: &IncrementalState, sweep: u64) {
        if state.cut() > self.value {
            self.value = state.cut();
            self.config = state.config().clone();
            self.sweep = sweep;
        }
    }
}

/// ChaCha8 stream for `(master_seed, trial, substream)`.
pub fn stream_rng(master_seed: u64, trial: u64, substream: u8) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream_id(trial, substream));
    rng
}

/// 64-bit stream id: trial index in the high bits, substream in the low 8.
pub fn stream_id(trial: u64, substream: u8) -> u64 {
    (trial << 8) | substream as u64
}

/// Run one seeded trial of the configured solver.
pub fn run_trial(
    inst: &ProblemInstance,
    params: &SolverParams,
    trial_index: u64,
    master_seed: u64,
) -> Result<TrialRecord, SolverError> {
    params.validate()?;
    run_trial_on(inst.adjacency(), params, trial_index, master_seed)
}

fn run_trial_on(
    adj: &Adjacency,
    params: &SolverParams,
    trial_index: u64,
    master_seed: u64,
) -> Result<TrialRecord, SolverError> {
    let start = Instant::now();
    let mut rng = stream_rng(master_seed, trial_index, 0);
    let outcome = match params.kind {
        SolverKind::LocalSearch => local_search::local_search_trial(adj, params, &mut rng),
        SolverKind::SimulatedAnnealing => sa::sa_trial(adj, params, &mut rng),
        SolverKind::ParallelTempering => pt::pt_trial(adj, params, &mut rng, false)?,
        SolverKind::PtIcm => pt::pt_trial(adj, params, &mut rng, true)?,
    };
    let wall_time = start.elapsed().as_secs_f64();

    // Re-certify the reported value against a from-scratch evaluation.
    let check = IncrementalState::new(adj, outcome.best_config.clone())?;
    assert_eq!(
        check.cut(),
        outcome.best_value,
        "solver reported a best value its configuration does not certify"
    );

    Ok(TrialRecord {
        trial_index,
        seed: stream_id(trial_index, 0),
        best_value: outcome.best_value,
        best_config: outcome.best_config,
        sweeps_executed: outcome.sweeps_executed,
        sweep_at_best: outcome.sweep_at_best,
        wall_time,
    })
}

/// Run `num_trials` independent trials, at most `workers` in parallel, and
/// aggregate. Trial `t` draws from RNG streams derived from
/// `(master_seed, t)` only, so records do not depend on `workers`.
pub fn run_trials(
    inst: &ProblemInstance,
    params: &SolverParams,
    num_trials: u64,
    target: Option<i64>,
    workers: usize,
    master_seed: u64,
) -> Result<BenchRecord, SolverError> {
    params.validate()?;
    if num_trials < 1 {
        return Err(SolverError::InvalidParams("num_trials must be at least 1".into()));
    }
    if workers < 1 {
        return Err(SolverError::InvalidParams("workers must be at least 1".into()));
    }
    let adj = inst.adjacency();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SolverError::Pool(e.to_string()))?;
    let results: Vec<Result<TrialRecord, SolverError>> = pool.install(|| {
        (0..num_trials)
            .into_par_iter()
            .map(|t| run_trial_on(adj, params, t, master_seed))
            .collect()
    });
    let mut trials = Vec::with_capacity(num_trials as usize);
    for r in results {
        trials.push(r?);
    }

    let successes = target.map(|t| trials.iter().filter(|r| r.best_value >= t).count() as u64);
    let p_s = successes.map(|s| s as f64 / num_trials as f64);
    let t_trial_mean = trials.iter().map(|r| r.wall_time).sum::<f64>() / num_trials as f64;
    let best = trials
        .iter()
        .max_by(|a, b| {
            (a.best_value, std::cmp::Reverse((a.sweep_at_best, a.trial_index)))
                .cmp(&(b.best_value, std::cmp::Reverse((b.sweep_at_best, b.trial_index))))
        })
        .expect("at least one trial");

    Ok(BenchRecord {
        num_trials,
        workers,
        master_seed,
        target,
        successes,
        p_s,
        t_trial_mean,
        best_value: best.best_value,
        best_trial: best.trial_index,
        trials,
    })
}
