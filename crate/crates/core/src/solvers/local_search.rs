//! Single-flip local search: first improvement over a random vertex
//! permutation per pass, iterating until a full pass yields no improvement.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{Adjacency, IncrementalState, SpinConfig};

use super::{BestTracker, RunOutcome, SolverParams};

/// Greedily flip vertices until no single flip increases the cut.
///
/// The returned state has `flip_gain(i) <= 0` for every vertex and its cut
/// trajectory is monotone non-decreasing; a start at a local optimum is
/// returned unchanged.
pub fn local_search<'a, R: Rng + ?Sized>(
    adj: &'a Adjacency,
    start: SpinConfig,
    rng: &mut R,
) -> IncrementalState<'a> {
    let mut state = IncrementalState::new(adj, start).expect("start length matches instance");
    run(&mut state, rng);
    state
}

/// Returns the number of full passes performed.
fn run<R: Rng + ?Sized>(state: &mut IncrementalState, rng: &mut R) -> u64 {
    let n = state.num_vertices();
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut passes = 0;
    loop {
        order.shuffle(rng);
        passes += 1;
        let mut improved = false;
        for &i in &order {
            if state.gain(i as usize) > 0 {
                state.flip_internal(i as usize);
                improved = true;
            }
        }
        if !improved {
            return passes;
        }
    }
}

/// Trial entry point: `restarts` independent descents from random starts.
pub(crate) fn local_search_trial<R: Rng + ?Sized>(
    adj: &Adjacency,
    params: &SolverParams,
    rng: &mut R,
) -> RunOutcome {
    let n = adj.num_vertices();
    let mut best: Option<BestTracker> = None;
    let mut total_passes = 0;
    for _ in 0..params.restarts {
        let mut state =
            IncrementalState::new(adj, crate::model::random_config_from(n, rng)).unwrap();
        let passes = run(&mut state, rng);
        total_passes += passes;
        match &mut best {
            None => best = Some(BestTracker::new(&state, total_passes)),
            Some(b) => b.observe(&state, total_passes),
        }
    }
    let best = best.expect("restarts >= 1");
    RunOutcome {
        best_value: best.value,
        best_config: best.config,
        sweeps_executed: total_passes,
        sweep_at_best: best.sweep,
    }
}
