//! Published benchmark observations used as comparison constants.
//!
//! These figures come from the benchmark literature: the Toshiba Simulated
//! Bifurcation Machine GPU results, Breakout Local Search timing data, and
//! the 2023 laptop proof-of-concept campaign of the Cosm heuristic. They
//! are display/report data for side-by-side comparisons; nothing here can
//! be regenerated by this crate (the Cosm algorithm is unpublished, and the
//! hardware runs are obviously not reproducible on this machine).

/// One instance row of the 99.5-99.8% quality speed comparison: the SBM GPU
/// target and the Cosm proof-of-concept observations against it.
#[derive(Debug, Clone, Copy)]
pub struct QualitySpeedupRow {
    pub id: &'static str,
    /// Cut value attained by SBM GPU; the target of the comparison.
    pub sbm_value: i64,
    /// Printed quality of `sbm_value` vs the current best known.
    pub sbm_quality_printed: &'static str,
    /// SBM GPU time-to-target in seconds.
    pub sbm_ttt_seconds: f64,
    /// Cosm sweeps per run.
    pub sweeps_per_run: u64,
    /// Cosm success probability over 100 runs.
    pub p_s: f64,
    /// Printed Cosm sweeps-to-target.
    pub sweeps_to_target_printed: f64,
    /// Cosm time-to-target in seconds.
    pub cosm_ttt_seconds: f64,
    /// Printed speedup of Cosm TTT vs SBM GPU TTT.
    pub speedup_printed: f64,
}

/// Speedups in reaching 99.5-99.8% solution quality.
pub const QUALITY_SPEEDUP: &[QualitySpeedupRow] = &[
    QualitySpeedupRow { id: "G65", sbm_value: 5546, sbm_quality_printed: "99.71%", sbm_ttt_seconds: 5651.0, sweeps_per_run: 8000, p_s: 0.66, sweeps_to_target_printed: 34_200.0, cosm_ttt_seconds: 2.90, speedup_printed: 1950.0 },
    QualitySpeedupRow { id: "G66", sbm_value: 6342, sbm_quality_printed: "99.65%", sbm_ttt_seconds: 27_408.0, sweeps_per_run: 8000, p_s: 0.67, sweeps_to_target_printed: 33_200.0, cosm_ttt_seconds: 3.12, speedup_printed: 8780.0 },
    QualitySpeedupRow { id: "G67", sbm_value: 6922, sbm_quality_printed: "99.60%", sbm_ttt_seconds: 6340.0, sweeps_per_run: 4000, p_s: 0.57, sweeps_to_target_printed: 21_800.0, cosm_ttt_seconds: 2.27, speedup_printed: 2790.0 },
    QualitySpeedupRow { id: "G70", sbm_value: 9578, sbm_quality_printed: "99.82%", sbm_ttt_seconds: 31_599.0, sweeps_per_run: 15_000, p_s: 0.65, sweeps_to_target_printed: 65_800.0, cosm_ttt_seconds: 12.2, speedup_printed: 2590.0 },
    QualitySpeedupRow { id: "G72", sbm_value: 6982, sbm_quality_printed: "99.63%", sbm_ttt_seconds: 6142.0, sweeps_per_run: 7000, p_s: 0.63, sweeps_to_target_printed: 32_400.0, cosm_ttt_seconds: 3.35, speedup_printed: 1830.0 },
    QualitySpeedupRow { id: "G77", sbm_value: 9904, sbm_quality_printed: "99.64%", sbm_ttt_seconds: 46_760.0, sweeps_per_run: 7000, p_s: 0.66, sweeps_to_target_printed: 29_900.0, cosm_ttt_seconds: 4.32, speedup_printed: 10_800.0 },
    QualitySpeedupRow { id: "G81", sbm_value: 13_992, sbm_quality_printed: "99.54%", sbm_ttt_seconds: 62_194.0, sweeps_per_run: 3000, p_s: 0.58, sweeps_to_target_printed: 15_900.0, cosm_ttt_seconds: 3.81, speedup_printed: 16_300.0 },
];

/// One instance row of the Breakout Local Search comparison. BLS reported
/// 20 runs per instance with the average time per successful run; the TTT
/// projection spreads that time over all runs (see
/// [`crate::metrics::bls_projection`]).
#[derive(Debug, Clone, Copy)]
pub struct BlsRow {
    pub id: &'static str,
    pub n: usize,
    /// Cut value attained by BLS; the target of the comparison.
    pub bls_value: i64,
    /// Average time in seconds for BLS to reach `bls_value` on successful runs.
    pub avg_time_per_success: f64,
    /// Successful runs out of 20.
    pub successes: u64,
    pub runs: u64,
    /// Printed projected average time per run, seconds.
    pub avg_time_per_run_printed: f64,
    /// Printed projected BLS time-to-target, seconds.
    pub projected_ttt_printed: f64,
    /// Cosm proof-of-concept time to the BLS target, seconds.
    pub cosm_time_seconds: f64,
    /// Printed speedup vs the projected BLS TTT.
    pub speedup_printed: f64,
}

/// BLS vs Cosm proof-of-concept comparison data.
pub const BLS_COMPARISON: &[BlsRow] = &[
    BlsRow { id: "G65", n: 8000, bls_value: 5558, avg_time_per_success: 4316.0, successes: 2, runs: 20, avg_time_per_run_printed: 431.6, projected_ttt_printed: 18_865.0, cosm_time_seconds: 54.1, speedup_printed: 349.0 },
    BlsRow { id: "G66", n: 9000, bls_value: 6360, avg_time_per_success: 6171.0, successes: 1, runs: 20, avg_time_per_run_printed: 308.55, projected_ttt_printed: 27_702.0, cosm_time_seconds: 108.0, speedup_printed: 257.0 },
    BlsRow { id: "G67", n: 10_000, bls_value: 6940, avg_time_per_success: 3373.0, successes: 1, runs: 20, avg_time_per_run_printed: 168.65, projected_ttt_printed: 15_142.0, cosm_time_seconds: 26.4, speedup_printed: 574.0 },
    BlsRow { id: "G70", n: 10_000, bls_value: 9541, avg_time_per_success: 11_365.0, successes: 1, runs: 20, avg_time_per_run_printed: 568.25, projected_ttt_printed: 51_018.0, cosm_time_seconds: 1.64, speedup_printed: 31_100.0 },
    BlsRow { id: "G72", n: 10_000, bls_value: 6998, avg_time_per_success: 12_563.0, successes: 2, runs: 20, avg_time_per_run_printed: 1256.3, projected_ttt_printed: 54_911.0, cosm_time_seconds: 51.6, speedup_printed: 1060.0 },
    BlsRow { id: "G77", n: 14_000, bls_value: 9926, avg_time_per_success: 9226.0, successes: 1, runs: 20, avg_time_per_run_printed: 461.3, projected_ttt_printed: 41_416.0, cosm_time_seconds: 44.2, speedup_printed: 937.0 },
    BlsRow { id: "G81", n: 20_000, bls_value: 14_030, avg_time_per_success: 20_422.0, successes: 1, runs: 20, avg_time_per_run_printed: 1021.1, projected_ttt_printed: 91_676.0, cosm_time_seconds: 22.9, speedup_printed: 4000.0 },
];

/// One instance row of the best-known-value campaign: the observations
/// behind each record, with the previous best for context.
#[derive(Debug, Clone, Copy)]
pub struct BestValueRow {
    pub id: &'static str,
    pub previous_best: i64,
    pub best_known: i64,
    pub sweeps_per_run: u64,
    /// Success probability over 100 runs at the best-known target.
    pub p_s: f64,
    /// Printed sweeps-to-target.
    pub sweeps_to_target_printed: f64,
    /// Time-to-target in seconds at the best-known value.
    pub ttt_seconds: f64,
}

/// Best reported solutions with associated proof-of-concept TTT.
pub const BEST_VALUE_CAMPAIGN: &[BestValueRow] = &[
    BestValueRow { id: "G65", previous_best: 5562, best_known: 5562, sweeps_per_run: 600_000, p_s: 0.28, sweeps_to_target_printed: 8.41e6, ttt_seconds: 744.0 },
    BestValueRow { id: "G66", previous_best: 6364, best_known: 6364, sweeps_per_run: 1_000_000, p_s: 0.45, sweeps_to_target_printed: 7.70e6, ttt_seconds: 755.0 },
    BestValueRow { id: "G67", previous_best: 6950, best_known: 6950, sweeps_per_run: 600_000, p_s: 0.06, sweeps_to_target_printed: 44.7e6, ttt_seconds: 4960.0 },
    BestValueRow { id: "G70", previous_best: 9595, best_known: 9595, sweeps_per_run: 400_000, p_s: 0.02, sweeps_to_target_printed: 91.2e6, ttt_seconds: 13_500.0 },
    BestValueRow { id: "G72", previous_best: 7006, best_known: 7008, sweeps_per_run: 2_000_000, p_s: 0.10, sweeps_to_target_printed: 87.4e6, ttt_seconds: 9690.0 },
    BestValueRow { id: "G77", previous_best: 9938, best_known: 9940, sweeps_per_run: 2_000_000, p_s: 0.04, sweeps_to_target_printed: 226.0e6, ttt_seconds: 35_500.0 },
    BestValueRow { id: "G81", previous_best: 14_056, best_known: 14_056, sweeps_per_run: 1_000_000, p_s: 0.13, sweeps_to_target_printed: 33.1e6, ttt_seconds: 7750.0 },
];

/// Thermal design power of the laptop CPU behind the Cosm observations,
/// for energy-to-target comparisons.
pub const COSM_CPU_TDP_WATTS: f64 = 45.0;
/// Thermal design power of the GPU behind the SBM observations.
pub const SBM_GPU_TDP_WATTS: f64 = 300.0;

pub fn quality_speedup_row(id: &str) -> Option<&'static QualitySpeedupRow> {
    QUALITY_SPEEDUP.iter().find(|r| r.id == id)
}

pub fn bls_row(id: &str) -> Option<&'static BlsRow> {
    BLS_COMPARISON.iter().find(|r| r.id == id)
}

pub fn best_value_row(id: &str) -> Option<&'static BestValueRow> {
    BEST_VALUE_CAMPAIGN.iter().find(|r| r.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::REGISTRY;

    #[test]
    fn tables_cover_the_registry() {
        for meta in REGISTRY {
            assert!(quality_speedup_row(meta.id).is_some(), "{}", meta.id);
            assert!(bls_row(meta.id).is_some(), "{}", meta.id);
            let row = best_value_row(meta.id).unwrap();
            assert_eq!(row.best_known, meta.best_known, "{}", meta.id);
        }
    }

    #[test]
    fn bls_success_counts_match_probabilities() {
        for row in BLS_COMPARISON {
            assert_eq!(row.successes as f64 / row.runs as f64, if row.successes == 2 { 0.10 } else { 0.05 });
        }
    }
}
