//! Acceptance suite. One test per criterion; each prints a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! 1. Record certification: bundled solutions certify exactly (7008 on
//!    G72, 9940 on G77), each in under a second.
//! 2. Instance registry: parsed n/m and best-known values are exact.
//! 3. Metric reproduction: published table values at stated tolerances.
//! 4. Oracle equivalence on small instances, SA reliability >= 95%.
//! 5. Model invariants in exact integer arithmetic.
//! 6. Determinism across worker counts.
//! 7. Scale statement + soft PT+ICM quality indicator (never fails).

mod common;

use std::time::Instant;

use common::{brute_force_max_cut, load_gset, random_instance, toroidal_grid, torus_exact_max_cut};

use cutbench::instances::{registry_lookup, REGISTRY};
use cutbench::metrics::{
    bls_projection, format_quality_percent, solution_quality, speedup, sweeps_to_target,
};
use cutbench::model::{random_config, IncrementalState, SpinConfig};
use cutbench::reference::{BEST_VALUE_CAMPAIGN, BLS_COMPARISON, QUALITY_SPEEDUP};
use cutbench::solvers::{
    icm_move, pt_swap_phase, run_trials, stream_rng, SolverKind, SolverParams,
};
use cutbench::verify::{bundled_record, certify, decode_hex_str};

fn within(got: f64, want: f64, rel: f64) -> bool {
    (got - want).abs() <= rel * want.abs()
}

#[test]
fn criterion_1_record_certification() {
    for (id, want) in [("G72", 7008i64), ("G77", 9940i64)] {
        let inst = load_gset(id);
        let (hex, n, claimed) = bundled_record(id).unwrap();
        assert_eq!(claimed, want);
        let started = Instant::now();
        let cfg = decode_hex_str(hex, n).unwrap();
        let report = certify(&inst, &cfg, Some(claimed)).unwrap();
        let elapsed = started.elapsed();
        assert_eq!(report.cut, want, "{id} record must certify exactly");
        assert_eq!(report.matches_claim, Some(true));
        assert_eq!(report.quality, Some(1.0));
        assert!(
            elapsed.as_secs_f64() < 1.0,
            "{id} certification took {elapsed:?}"
        );
    }
    println!("ACCEPTANCE 1 PASS: bundled records certify to 7008 (G72) and 9940 (G77), < 1 s each");
}

#[test]
fn criterion_2_instance_registry() {
    let expected_best: &[(&str, i64)] = &[
        ("G65", 5562),
        ("G66", 6364),
        ("G67", 6950),
        ("G70", 9595),
        ("G72", 7008),
        ("G77", 9940),
        ("G81", 14_056),
    ];
    assert_eq!(REGISTRY.len(), expected_best.len());
    for &(id, best) in expected_best {
        let meta = registry_lookup(id).unwrap();
        assert_eq!(meta.best_known, best, "{id} best-known");
        let inst = load_gset(id);
        assert_eq!(inst.n(), meta.n, "{id} n");
        assert_eq!(inst.m(), meta.m, "{id} m");
    }
    println!("ACCEPTANCE 2 PASS: registry n/m match the parsed files and best-known values are exact");
}

#[test]
fn criterion_3_metric_reproduction() {
    // Projected BLS time-to-target, all seven rows within 0.5%.
    for row in BLS_COMPARISON {
        let p = bls_projection(row.avg_time_per_success, row.successes, row.runs).unwrap();
        assert!(
            within(p.projected_ttt, row.projected_ttt_printed, 0.005),
            "{}: projected TTT {} vs printed {}",
            row.id,
            p.projected_ttt,
            row.projected_ttt_printed
        );
        assert!(
            within(p.avg_time_per_run, row.avg_time_per_run_printed, 0.005),
            "{}: per-run time",
            row.id
        );
    }

    for row in QUALITY_SPEEDUP {
        // Sweeps-to-target within 1% of the printed (rounded) values.
        let stt = sweeps_to_target(row.sweeps_per_run, row.p_s).unwrap();
        assert!(
            within(stt, row.sweeps_to_target_printed, 0.01),
            "{}: sweeps-to-target {} vs printed {}",
            row.id,
            stt,
            row.sweeps_to_target_printed
        );
        // Solution quality percentages to two decimal places, exactly.
        let best = registry_lookup(row.id).unwrap().best_known;
        let quality = solution_quality(row.sbm_value, best).unwrap();
        assert_eq!(
            format_quality_percent(quality),
            row.sbm_quality_printed,
            "{}: quality",
            row.id
        );
        // Speedup of TTT within 1%.
        let s = speedup(row.sbm_ttt_seconds, row.cosm_ttt_seconds).unwrap();
        assert!(
            within(s, row.speedup_printed, 0.01),
            "{}: speedup {} vs printed {}",
            row.id,
            s,
            row.speedup_printed
        );
    }
    println!(
        "ACCEPTANCE 3 PASS: 7/7 BLS projections (0.5%), 7/7 sweeps-to-target (1%), \
         7/7 quality strings (2 dp), 7/7 speedups (1%)"
    );
}

#[test]
fn criterion_4_oracle_equivalence() {
    let started = Instant::now();
    let solver_kinds = [
        SolverKind::LocalSearch,
        SolverKind::SimulatedAnnealing,
        SolverKind::ParallelTempering,
        SolverKind::PtIcm,
    ];

    // >= 100 random instances with n <= 16.
    let num_instances = 104u64;
    let mut sa_hits = 0u64;
    for seed in 0..num_instances {
        let n = 6 + (seed as usize % 11); // 6..=16
        let inst = random_instance(n, 0.35, seed);
        let optimum = brute_force_max_cut(&inst);

        for kind in solver_kinds {
            let params = SolverParams {
                kind,
                sweeps_per_run: 40,
                replicas: 4,
                ..Default::default()
            };
            let bench = run_trials(&inst, &params, 2, Some(optimum), 2, seed).unwrap();
            assert!(
                bench.best_value <= optimum,
                "{kind:?} exceeded the exhaustive optimum on seed {seed}"
            );
        }

        // SA with 100 restarts must attain the optimum on >= 95% of instances.
        let sa = SolverParams {
            kind: SolverKind::SimulatedAnnealing,
            sweeps_per_run: 50,
            restarts: 100,
            ..Default::default()
        };
        let bench = run_trials(&inst, &sa, 1, Some(optimum), 1, seed ^ 0x5A5A).unwrap();
        assert!(bench.best_value <= optimum);
        if bench.best_value == optimum {
            sa_hits += 1;
        }
    }
    let hit_rate = sa_hits as f64 / num_instances as f64;
    assert!(
        hit_rate >= 0.95,
        "SA(100 restarts) reached the optimum on only {sa_hits}/{num_instances} instances"
    );

    // 8x8 toroidal +-1 grid against the exact profile-enumeration oracle.
    let torus = toroidal_grid(8, 8, 42);
    let torus_opt = torus_exact_max_cut(&torus, 8, 8);
    let mut torus_reached = Vec::new();
    for kind in solver_kinds {
        let params = SolverParams {
            kind,
            sweeps_per_run: 300,
            replicas: 8,
            ..Default::default()
        };
        let bench = run_trials(&torus, &params, 8, Some(torus_opt), 2, 7).unwrap();
        assert!(
            bench.best_value <= torus_opt,
            "{kind:?} exceeded the torus optimum"
        );
        if bench.best_value == torus_opt {
            torus_reached.push(kind);
        }
    }

    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "criterion 4 took {elapsed:.1} s (budget 300 s)");
    println!(
        "ACCEPTANCE 4 PASS: no solver beat the oracle on {num_instances} instances + 8x8 torus \
         (optimum {torus_opt}, reached by {torus_reached:?}); SA hit rate {sa_hits}/{num_instances} \
         = {:.1}%; elapsed {elapsed:.1} s",
        100.0 * hit_rate
    );
}

#[test]
fn criterion_5_model_invariants() {
    // (a) 10^4 random flips on G67: incremental caches equal recomputation
    //     and cut == (W - H) / 2, in exact integer arithmetic.
    let g67 = load_gset("G67");
    let adj = g67.adjacency();
    let w = adj.total_weight();
    let mut state = IncrementalState::new(adj, random_config(g67.n(), 67)).unwrap();
    let mut rng = stream_rng(67, 0, 0);
    use rand::Rng;
    for step in 0..10_000usize {
        let v = rng.gen_range(1..=g67.n());
        state.apply_flip(v).unwrap();
        assert_eq!(2 * state.cut(), w - state.energy(), "identity at step {step}");
        if step % 500 == 0 {
            assert!(state.validate(), "cache drift at step {step}");
        }
    }
    assert!(state.validate(), "cache drift at the end");

    // (b) 10^4 cluster moves on a 16x16 grid pair conserve H_a + H_b exactly.
    let grid = toroidal_grid(16, 16, 16);
    let gadj = grid.adjacency();
    let mut a = IncrementalState::new(gadj, random_config(256, 1)).unwrap();
    let mut b = IncrementalState::new(gadj, random_config(256, 2)).unwrap();
    let mut moves = 0;
    let mut rng = stream_rng(16, 0, 0);
    while moves < 10_000 {
        let sum = a.energy() + b.energy();
        icm_move(&mut a, &mut b, &mut rng).unwrap();
        assert_eq!(a.energy() + b.energy(), sum, "ICM conservation broke at move {moves}");
        moves += 1;
        // Cluster moves only randomize; stir the pair occasionally so the
        // overlap pattern keeps changing.
        if moves % 1000 == 0 {
            for _ in 0..64 {
                let v = rng.gen_range(1..=256);
                a.apply_flip(v).unwrap();
                let v = rng.gen_range(1..=256);
                b.apply_flip(v).unwrap();
            }
        }
    }
    assert!(a.validate() && b.validate());

    // (c) PT swap phases preserve the multiset of configurations.
    let mut slots: Vec<IncrementalState> = (0..8)
        .map(|k| IncrementalState::new(gadj, random_config(256, 100 + k)).unwrap())
        .collect();
    let betas: Vec<f64> = (0..8).map(|k| 0.2 * 1.6f64.powi(k)).collect();
    let mut before: Vec<SpinConfig> = slots.iter().map(|s| s.config().clone()).collect();
    for round in 0..500 {
        pt_swap_phase(&mut slots, &betas, round % 2, &mut rng);
    }
    let mut after: Vec<SpinConfig> = slots.iter().map(|s| s.config().clone()).collect();
    before.sort_by_key(|c| c.to_bits());
    after.sort_by_key(|c| c.to_bits());
    assert_eq!(before, after, "swap phases must only permute configurations");

    println!(
        "ACCEPTANCE 5 PASS: 10^4 G67 flips exact, 10^4 ICM moves conserve H_a+H_b, \
         500 swap phases preserve the configuration multiset"
    );
}

#[test]
fn criterion_6_determinism_across_workers() {
    let grid = toroidal_grid(16, 16, 5);
    for kind in [SolverKind::SimulatedAnnealing, SolverKind::PtIcm] {
        let params = SolverParams {
            kind,
            sweeps_per_run: 60,
            replicas: 6,
            ..Default::default()
        };
        let one = run_trials(&grid, &params, 12, Some(300), 1, 987_654_321).unwrap();
        let six = run_trials(&grid, &params, 12, Some(300), 6, 987_654_321).unwrap();
        assert_eq!(one.trials.len(), six.trials.len());
        for (a, b) in one.trials.iter().zip(&six.trials) {
            assert!(
                a.deterministic_eq(b),
                "{kind:?} trial {} differs between 1 and 6 workers",
                a.trial_index
            );
        }
        assert_eq!(one.best_value, six.best_value);
        assert_eq!(one.successes, six.successes);
    }
    println!("ACCEPTANCE 6 PASS: per-trial records identical for workers in {{1, 6}}");
}

#[test]
fn criterion_7_scale_statement_and_soft_quality_indicator() {
    // Published P_s/TTT figures for the Cosm heuristic (and the SBM /
    // Digital Annealer hardware timings) cannot be reproduced here: the
    // algorithm is undisclosed and the hardware is absent. Those numbers
    // enter this crate only as registry/report comparison constants.
    for table in [QUALITY_SPEEDUP.len(), BLS_COMPARISON.len(), BEST_VALUE_CAMPAIGN.len()] {
        assert_eq!(table, 7);
    }

    // Soft, non-gating indicator: PT+ICM should reach >= 99.0% quality on
    // G65 (cut >= 5507) in a modest single-machine budget. The outcome is
    // recorded either way; this test does not fail on a shortfall.
    let sweeps: u64 = std::env::var("CUTBENCH_SOFT_SWEEPS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1500);
    let g65 = load_gset("G65");
    let best_known = registry_lookup("G65").unwrap().best_known;
    let goal = 5507;
    let params = SolverParams {
        kind: SolverKind::PtIcm,
        sweeps_per_run: sweeps,
        ..Default::default()
    };
    let started = Instant::now();
    let bench = run_trials(&g65, &params, 1, Some(goal), 1, 65).unwrap();
    let elapsed = started.elapsed().as_secs_f64();
    let quality = bench.best_value as f64 / best_known as f64;
    let verdict = if bench.best_value >= goal { "reached" } else { "NOT reached" };
    println!(
        "ACCEPTANCE 7 PASS: scale statement recorded; soft indicator {verdict}: \
         PT+ICM on G65 got {} ({} of {best_known}) in {elapsed:.1} s / {sweeps} sweeps \
         [target >= {goal}; informational only]",
        bench.best_value,
        format_quality_percent(quality)
    );
}
