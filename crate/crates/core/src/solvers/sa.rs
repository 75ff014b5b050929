//! Simulated annealing with a geometric temperature schedule.
//!
//! Per sweep, every vertex is visited once in a fresh random permutation.
//! A flip with cut gain `g` is accepted when `g >= 0`, otherwise with
//! probability `exp(g / T)`; the temperature is multiplied by the cooling
//! factor after each sweep.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::instances::ProblemInstance;
use crate::model::{Adjacency, IncrementalState};

use super::{BestTracker, RunOutcome, SolverError, SolverParams, TrialRecord};

/// Acceptance probabilities for negative integer gains at a fixed
/// temperature: `table[d - 1] = exp(-d / T)`.
struct AcceptTable {
    table: Vec<f64>,
}

impl AcceptTable {
    fn new(t: f64, max_strength: i64) -> Self {
        let len = max_strength.clamp(0, 4096) as usize;
        AcceptTable {
            table: (1..=len).map(|d| (-(d as f64) / t).exp()).collect(),
        }
    }

    #[inline]
    fn accept<R: Rng + ?Sized>(&self, gain: i64, t: f64, rng: &mut R) -> bool {
        debug_assert!(gain < 0);
        let d = (-gain) as usize;
        let p = if d <= self.table.len() {
            self.table[d - 1]
        } else {
            (gain as f64 / t).exp()
        };
        rng.gen::<f64>() < p
    }
}

/// Pick `t_hot` so the mean acceptance over 100 probe moves from the start
/// configuration is about 0.8.
fn calibrate_t_hot<R: Rng + ?Sized>(state: &IncrementalState, rng: &mut R) -> f64 {
    let n = state.num_vertices();
    let gains: Vec<i64> = (0..100).map(|_| state.gain(rng.gen_range(0..n))).collect();
    if gains.iter().all(|&g| g >= 0) {
        return 1.0;
    }
    let acceptance = |t: f64| {
        gains
            .iter()
            .map(|&g| if g >= 0 { 1.0 } else { (g as f64 / t).exp() })
            .sum::<f64>()
            / gains.len() as f64
    };
    // acceptance is increasing in t; bisect on a log scale
    let (mut lo, mut hi) = (1e-6f64, 1e9f64);
    for _ in 0..80 {
        let mid = (lo.ln() + hi.ln()).mul_add(0.5, 0.0).exp();
        if acceptance(mid) < 0.8 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo * hi).sqrt()
}

pub(crate) fn sa_trial<R: Rng + ?Sized>(
    adj: &Adjacency,
    params: &SolverParams,
    rng: &mut R,
) -> RunOutcome {
    let n = adj.num_vertices();
    let sweeps = params.sweeps_per_run;
    let mut best: Option<BestTracker> = None;
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut sweep_count = 0u64;

    for _ in 0..params.restarts {
        let mut state =
            IncrementalState::new(adj, crate::model::random_config_from(n, rng)).unwrap();
        let t_hot = params
            .t_hot
            .unwrap_or_else(|| calibrate_t_hot(&state, rng));
        let factor = params.cooling_factor.unwrap_or_else(|| {
            (params.t_cold / t_hot).powf(1.0 / (sweeps.max(2) - 1) as f64)
        });
        let mut t = t_hot;

        match &mut best {
            None => best = Some(BestTracker::new(&state, sweep_count)),
            Some(b) => b.observe(&state, sweep_count),
        }
        let tracker = best.as_mut().unwrap();

        for _ in 0..sweeps {
            sweep_count += 1;
            order.shuffle(rng);
            let accept = AcceptTable::new(t, adj.max_strength());
            for &i in &order {
                let i = i as usize;
                let g = state.gain(i);
                if g >= 0 || accept.accept(g, t, rng) {
                    state.flip_internal(i);
                    tracker.observe(&state, sweep_count);
                }
            }
            t *= factor;
        }
    }

    let best = best.expect("restarts >= 1");
    RunOutcome {
        best_value: best.value,
        best_config: best.config,
        sweeps_executed: sweep_count,
        sweep_at_best: best.sweep,
    }
}

/// Run one simulated-annealing trial. Deterministic for a fixed seed.
pub fn simulated_annealing(
    inst: &ProblemInstance,
    params: &SolverParams,
    seed: u64,
) -> Result<TrialRecord, SolverError> {
    let params = SolverParams {
        kind: super::SolverKind::SimulatedAnnealing,
        ..params.clone()
    };
    params.validate()?;
    super::run_trial(inst, &params, 0, seed)
}
