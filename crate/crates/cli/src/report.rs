//! Versioned JSON bench reports and their CSV flat export.
//!
//! A report is self-contained: the aggregate fields (`p_s`, `ttt_seconds`,
//! `sweeps_to_target`) can be recomputed from the embedded per-trial
//! records, and reports round-trip through JSON losslessly. Timestamps and
//! wall times are the only fields outside the determinism contract.

use serde::{Deserialize, Serialize};

use cutbench::metrics::{self, MetricsError};
use cutbench::solvers::{BenchRecord, SolverParams, TrialRecord};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BenchReport {
    pub schema_version: u32,
    pub tool_version: String,
    /// Milliseconds since the Unix epoch; informational only.
    pub generated_unix_ms: u64,
    pub instance: String,
    pub solver: SolverParams,
    pub num_trials: u64,
    pub workers: usize,
    pub master_seed: u64,
    pub target: Option<i64>,
    pub successes: Option<u64>,
    pub p_s: Option<f64>,
    /// Mean wall time per trial, seconds.
    pub t_trial_mean: f64,
    pub best_value_found: i64,
    pub best_trial: u64,
    /// `best_value_found / best_known` for registry instances.
    pub quality: Option<f64>,
    pub ttt_seconds: Option<f64>,
    /// Set when a target was given but no trial reached it.
    pub ttt_unreachable: bool,
    pub sweeps_to_target: Option<f64>,
    pub trials: Vec<TrialRecord>,
}

impl BenchReport {
    pub fn new(instance: &str, params: &SolverParams, bench: &BenchRecord) -> Self {
        let quality = cutbench::instances::registry_lookup(instance)
            .map(|meta| bench.best_value as f64 / meta.best_known as f64);
        let (ttt_seconds, sweeps_to_target, ttt_unreachable) = match bench.p_s {
            None => (None, None, false),
            Some(p_s) => match metrics::repetitions(p_s) {
                Ok(r) => (
                    Some(bench.t_trial_mean * r),
                    Some(params.sweeps_per_run as f64 * r),
                    false,
                ),
                Err(MetricsError::NoSuccesses) => (None, None, true),
                Err(_) => (None, None, false),
            },
        };
        BenchReport {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            generated_unix_ms: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_millis() as u64)
                .unwrap_or(0),
            instance: instance.to_string(),
            solver: params.clone(),
            num_trials: bench.num_trials,
            workers: bench.workers,
            master_seed: bench.master_seed,
            target: bench.target,
            successes: bench.successes,
            p_s: bench.p_s,
            t_trial_mean: bench.t_trial_mean,
            best_value_found: bench.best_value,
            best_trial: bench.best_trial,
            quality,
            ttt_seconds,
            ttt_unreachable,
            sweeps_to_target,
            trials: bench.trials.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Recompute `successes`, `p_s`, `ttt_seconds` and `sweeps_to_target`
    /// from the per-trial records and compare with the stored aggregates.
    pub fn recompute_consistent(&self) -> bool {
        let Some(target) = self.target else {
            return self.successes.is_none() && self.p_s.is_none();
        };
        let successes = self
            .trials
            .iter()
            .filter(|t| t.best_value >= target)
            .count() as u64;
        if Some(successes) != self.successes {
            return false;
        }
        let p_s = successes as f64 / self.num_trials as f64;
        if Some(p_s) != self.p_s {
            return false;
        }
        match metrics::repetitions(p_s) {
            Ok(r) => {
                let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * b.abs().max(1.0);
                self.ttt_seconds.is_some_and(|t| close(t, self.t_trial_mean * r))
                    && self
                        .sweeps_to_target
                        .is_some_and(|s| close(s, self.solver.sweeps_per_run as f64 * r))
            }
            Err(_) => self.ttt_seconds.is_none() && self.ttt_unreachable,
        }
    }

    pub fn csv_header() -> &'static str {
        "instance,solver,num_trials,master_seed,target,successes,p_s,t_trial_mean_s,best_value,quality,ttt_s,sweeps_to_target"
    }

    pub fn csv_row(&self) -> String {
        fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map(|x| x.to_string()).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.instance,
            self.solver.kind.as_str(),
            self.num_trials,
            self.master_seed,
            opt(&self.target),
            opt(&self.successes),
            opt(&self.p_s),
            self.t_trial_mean,
            self.best_value_found,
            opt(&self.quality),
            opt(&self.ttt_seconds),
            opt(&self.sweeps_to_target),
        )
    }

    /// Human-readable summary lines.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let mut row = |k: &str, v: String| out.push_str(&format!("{k:<18} {v}\n"));
        row("instance", self.instance.clone());
        row("solver", self.solver.kind.as_str().to_string());
        row("trials", self.num_trials.to_string());
        row("master seed", self.master_seed.to_string());
        if let Some(t) = self.target {
            row("target", t.to_string());
        }
        if let (Some(s), Some(p)) = (self.successes, self.p_s) {
            row("successes", format!("{s} (P_s = {p})"));
        }
        row("best value", self.best_value_found.to_string());
        if let Some(q) = self.quality {
            row("quality", metrics::format_quality_percent(q));
        }
        row("t_trial mean", format!("{:.6} s", self.t_trial_mean));
        match (self.ttt_seconds, self.ttt_unreachable) {
            (Some(t), _) => row("TTT", format!("{t:.6} s")),
            (None, true) => row("TTT", "unreachable (no successes)".to_string()),
            _ => {}
        }
        if let Some(s) = self.sweeps_to_target {
            row("sweeps-to-target", format!("{s:.1}"));
        }
        out
    }
}
