//! Parallel tempering over an inverse-temperature ladder, optionally with
//! isoenergetic cluster moves between two independent chains.
//!
//! Each round every replica does one Metropolis sweep at its temperature,
//! then a swap of adjacent temperature slots is attempted on alternating
//! even/odd pairs with acceptance min(1, exp(dBeta * dH)). A swap permutes
//! the temperature assignment only: the multiset of configurations is
//! preserved.
//!
//! The cluster move compares two replicas at the same temperature: the
//! overlap q_i = s_i^a * s_i^b is computed, a uniformly random site with
//! q = -1 seeds a flood fill through edges whose endpoints both have
//! q = -1, and the resulting cluster is flipped in both replicas. The sum
//! H_a + H_b is conserved exactly, which requires instances without local
//! field terms (all of Gset qualifies).

use rand::Rng;

use crate::instances::ProblemInstance;
use crate::model::{Adjacency, IncrementalState};

use super::{BestTracker, RunOutcome, SolverError, SolverKind, SolverParams, TrialRecord};

/// Result of a cluster-move attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IcmOutcome {
    /// The replicas agreed everywhere; nothing to flip.
    NoOp,
    Flipped { cluster_size: usize },
}

/// Isoenergetic cluster move on two replicas of the same instance.
///
/// Flips a connected cluster of anti-aligned sites in both replicas;
/// `H_a + H_b` is unchanged (exact integer identity). No-op when the
/// replicas agree everywhere.
pub fn icm_move<R: Rng + ?Sized>(
    a: &mut IncrementalState,
    b: &mut IncrementalState,
    rng: &mut R,
) -> Result<IcmOutcome, SolverError> {
    if !std::ptr::eq(a.adjacency(), b.adjacency()) {
        return Err(SolverError::InstanceMismatch);
    }
    let adj = a.adjacency();
    let n = adj.num_vertices();
    let sa = a.config().spins();
    let sb = b.config().spins();

    let mismatched: Vec<u32> = (0..n as u32)
        .filter(|&i| sa[i as usize] != sb[i as usize])
        .collect();
    if mismatched.is_empty() {
        return Ok(IcmOutcome::NoOp);
    }
    let seed = mismatched[rng.gen_range(0..mismatched.len())];

    // Flood fill through edges whose endpoints are both anti-aligned.
    let mut in_cluster = vec![false; n];
    let mut stack = vec![seed];
    let mut cluster = Vec::new();
    in_cluster[seed as usize] = true;
    while let Some(i) = stack.pop() {
        cluster.push(i);
        let (nbrs, _) = adj.row(i as usize);
        for &j in nbrs {
            let ju = j as usize;
            if !in_cluster[ju] && sa[ju] != sb[ju] {
                in_cluster[ju] = true;
                stack.push(j);
            }
        }
    }

    for &i in &cluster {
        a.flip_internal(i as usize);
        b.flip_internal(i as usize);
    }
    Ok(IcmOutcome::Flipped {
        cluster_size: cluster.len(),
    })
}

/// Shared ladder data: ascending betas and, per slot, the acceptance
/// probabilities exp(2 * beta * gain) for negative integer cut gains.
struct Ladder {
    betas: Vec<f64>,
    accept: Vec<Vec<f64>>,
}

impl Ladder {
    fn new(betas: Vec<f64>, max_strength: i64) -> Self {
        let len = max_strength.clamp(0, 4096) as usize;
        let accept = betas
            .iter()
            .map(|&beta| (1..=len).map(|d| (-2.0 * beta * d as f64).exp()).collect())
            .collect();
        Ladder { betas, accept }
    }

    fn num_slots(&self) -> usize {
        self.betas.len()
    }
}

/// One tempering chain: replica states indexed by temperature slot.
struct Chain<'a> {
    slots: Vec<IncrementalState<'a>>,
}

impl<'a> Chain<'a> {
    fn random<R: Rng + ?Sized>(adj: &'a Adjacency, num_slots: usize, rng: &mut R) -> Self {
        let n = adj.num_vertices();
        Chain {
            slots: (0..num_slots)
                .map(|_| {
                    IncrementalState::new(adj, crate::model::random_config_from(n, rng)).unwrap()
                })
                .collect(),
        }
    }

    /// One Metropolis sweep of every slot at its own temperature.
    fn sweep_all<R: Rng + ?Sized>(
        &mut self,
        ladder: &Ladder,
        rng: &mut R,
        tracker: &mut BestTracker,
        sweep_index: u64,
    ) {
        for (k, state) in self.slots.iter_mut().enumerate() {
            let accept = &ladder.accept[k];
            let beta = ladder.betas[k];
            let n = state.num_vertices();
            for i in 0..n {
                let g = state.gain(i);
                let take = if g >= 0 {
                    true
                } else {
                    let d = (-g) as usize;
                    let p = if d <= accept.len() {
                        accept[d - 1]
                    } else {
                        (2.0 * beta * g as f64).exp()
                    };
                    rng.gen::<f64>() < p
                };
                if take {
                    state.flip_internal(i);
                    tracker.observe(state, sweep_index);
                }
            }
        }
    }

    fn try_swaps<R: Rng + ?Sized>(&mut self, ladder: &Ladder, parity: usize, rng: &mut R) {
        pt_swap_phase(&mut self.slots, &ladder.betas, parity, rng);
    }
}

/// Attempt swaps of adjacent temperature slots with the given parity
/// (even pairs for 0, odd pairs for 1), with acceptance
/// min(1, exp(dBeta * dH)). Only the temperature assignment permutes; the
/// multiset of configurations is untouched.
///
/// `slots[k]` is the replica currently at `betas[k]`; the ladder must be
/// ascending.
pub fn pt_swap_phase<R: Rng + ?Sized>(
    slots: &mut [IncrementalState],
    betas: &[f64],
    parity: usize,
    rng: &mut R,
) {
    assert_eq!(slots.len(), betas.len());
    let mut k = parity;
    while k + 1 < slots.len() {
        let d_beta = betas[k + 1] - betas[k];
        let d_h = (slots[k + 1].energy() - slots[k].energy()) as f64;
        let exponent = d_beta * d_h;
        if exponent >= 0.0 || rng.gen::<f64>() < exponent.exp() {
            slots.swap(k, k + 1);
        }
        k += 2;
    }
}

pub(crate) fn pt_trial<R: Rng + ?Sized>(
    adj: &Adjacency,
    params: &SolverParams,
    rng: &mut R,
    icm: bool,
) -> Result<RunOutcome, SolverError> {
    let ladder = Ladder::new(params.ladder()?, adj.max_strength());
    let num_slots = ladder.num_slots();
    let mut sweep_count = 0u64;
    let mut best: Option<BestTracker> = None;

    for _ in 0..params.restarts {
        let mut chains: Vec<Chain> = (0..if icm { 2 } else { 1 })
            .map(|_| Chain::random(adj, num_slots, rng))
            .collect();
        let tracker = best.get_or_insert_with(|| BestTracker::new(&chains[0].slots[0], sweep_count));
        for chain in &chains {
            for state in &chain.slots {
                tracker.observe(state, sweep_count);
            }
        }

        for round in 0..params.sweeps_per_run {
            sweep_count += 1;
            for chain in &mut chains {
                chain.sweep_all(&ladder, rng, tracker, sweep_count);
            }
            let parity = (round % 2) as usize;
            for chain in &mut chains {
                chain.try_swaps(&ladder, parity, rng);
            }
            if icm && (round + 1) % params.icm_period == 0 {
                let (a, b) = chains.split_at_mut(1);
                for k in 0..num_slots {
                    icm_move(&mut a[0].slots[k], &mut b[0].slots[k], rng)?;
                    tracker.observe(&a[0].slots[k], sweep_count);
                    tracker.observe(&b[0].slots[k], sweep_count);
                }
            }
        }
    }

    let best = best.expect("restarts >= 1");
    Ok(RunOutcome {
        best_value: best.value,
        best_config: best.config,
        sweeps_executed: sweep_count,
        sweep_at_best: best.sweep,
    })
}

/// Run one parallel-tempering trial (no cluster moves).
pub fn parallel_tempering(
    inst: &ProblemInstance,
    params: &SolverParams,
    seed: u64,
) -> Result<TrialRecord, SolverError> {
    let params = SolverParams {
        kind: SolverKind::ParallelTempering,
        ..params.clone()
    };
    super::run_trial(inst, &params, 0, seed)
}

/// Run one parallel-tempering trial with isoenergetic cluster moves
/// between two independent chains.
pub fn pt_icm(
    inst: &ProblemInstance,
    params: &SolverParams,
    seed: u64,
) -> Result<TrialRecord, SolverError> {
    let params = SolverParams {
        kind: SolverKind::PtIcm,
        ..params.clone()
    };
    super::run_trial(inst, &params, 0, seed)
}
