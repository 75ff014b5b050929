//! Benchmark metrics: repetitions, time-to-target, sweeps-to-target,
//! solution quality, speedup, energy-to-target and the BLS projection.
//!
//! Time-to-target is the estimated time to reach a target value with at
//! least 99% probability: `r = max(1.0, ln(0.01) / ln(1 - P_s))` repetitions
//! of a trial taking `t_trial` seconds, so `TTT = t_trial * r`.
//!
//! All arithmetic is double precision; display rounding never feeds back
//! into computation.

use thiserror::Error;

/// Success probabilities this close to 1 are treated as certainty, in line
/// with the max(1.0, .) floor on repetitions.
const NEAR_ONE: f64 = 1.0 - 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("success probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("no successes; TTT undefined")]
    NoSuccesses,
    #[error("trial time must be positive, got {0}")]
    NonPositiveTime(f64),
    #[error("sweeps per run must be at least 1, got {0}")]
    BadSweeps(u64),
    #[error("best-known value must be positive, got {0}")]
    NonPositiveBestKnown(i64),
    #[error("TTT values must be positive")]
    NonPositiveTtt,
    #[error("power must be positive, got {0}")]
    NonPositivePower(f64),
    #[error("need 0 < successes <= runs, got {successes}/{runs}")]
    BadCounts { successes: u64, runs: u64 },
}

/// Number of repetitions needed to reach the target with 99% confidence.
///
/// Exactly 1.0 for `p_s >= 0.99`; an error for `p_s == 0` (the target was
/// never reached, so no estimate exists).
pub fn repetitions(p_s: f64) -> Result<f64, MetricsError> {
    if !(0.0..=1.0).contains(&p_s) || p_s.is_nan() {
        return Err(MetricsError::InvalidProbability(p_s));
    }
    if p_s == 0.0 {
        return Err(MetricsError::NoSuccesses);
    }
    if p_s >= NEAR_ONE {
        return Ok(1.0);
    }
    Ok((0.01f64.ln() / (1.0 - p_s).ln()).max(1.0))
}

/// `t_trial * repetitions(p_s)`, in seconds.
pub fn time_to_target(t_trial: f64, p_s: f64) -> Result<f64, MetricsError> {
    if !(t_trial > 0.0) {
        return Err(MetricsError::NonPositiveTime(t_trial));
    }
    Ok(t_trial * repetitions(p_s)?)
}

/// `sweeps_per_run * repetitions(p_s)`.
pub fn sweeps_to_target(sweeps_per_run: u64, p_s: f64) -> Result<f64, MetricsError> {
    if sweeps_per_run < 1 {
        return Err(MetricsError::BadSweeps(sweeps_per_run));
    }
    Ok(sweeps_per_run as f64 * repetitions(p_s)?)
}

/// Attained value over best-known value.
pub fn solution_quality(value: i64, best_known: i64) -> Result<f64, MetricsError> {
    if best_known <= 0 {
        return Err(MetricsError::NonPositiveBestKnown(best_known));
    }
    Ok(value as f64 / best_known as f64)
}

/// Render a quality ratio the way the benchmark tables print it: a
/// percentage with two decimal places.
pub fn format_quality_percent(quality: f64) -> String {
    format!("{:.2}%", quality * 100.0)
}

/// Relative speed of two solvers on the same target: `ttt_reference / ttt_new`.
pub fn speedup(ttt_reference: f64, ttt_new: f64) -> Result<f64, MetricsError> {
    if !(ttt_reference > 0.0) || !(ttt_new > 0.0) {
        return Err(MetricsError::NonPositiveTtt);
    }
    Ok(ttt_reference / ttt_new)
}

/// Energy-to-target in joules: time-to-target times average power draw.
pub fn energy_to_target(ttt_seconds: f64, power_watts: f64) -> Result<f64, MetricsError> {
    if !(ttt_seconds > 0.0) {
        return Err(MetricsError::NonPositiveTtt);
    }
    if !(power_watts > 0.0) {
        return Err(MetricsError::NonPositivePower(power_watts));
    }
    Ok(ttt_seconds * power_watts)
}

/// TTT projection from published per-success timing data.
#[derive(Debug, Clone, PartialEq)]
pub struct BlsProjection {
    pub p_s: f64,
    pub avg_time_per_run: f64,
    pub projected_ttt: f64,
}

/// Project time-to-target from runs that report only the average time per
/// success: total time = avg_time_per_success * successes, spread over all
/// runs, then scaled by the repetition count for P_s = successes / runs.
pub fn bls_projection(
    avg_time_per_success: f64,
    successes: u64,
    runs: u64,
) -> Result<BlsProjection, MetricsError> {
    if successes == 0 || successes > runs {
        return Err(MetricsError::BadCounts { successes, runs });
    }
    if !(avg_time_per_success > 0.0) {
        return Err(MetricsError::NonPositiveTime(avg_time_per_success));
    }
    let p_s = successes as f64 / runs as f64;
    let total = avg_time_per_success * successes as f64;
    let avg_time_per_run = total / runs as f64;
    let projected_ttt = avg_time_per_run * repetitions(p_s)?;
    Ok(BlsProjection {
        p_s,
        avg_time_per_run,
        projected_ttt,
    })
}

/// Full time-to-target estimate for one (solver, instance, target) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct TttEstimate {
    pub target: i64,
    pub p_s: f64,
    pub r: f64,
    pub t_trial: f64,
    pub ttt: f64,
    pub sweeps_per_run: Option<u64>,
    pub sweeps_to_target: Option<f64>,
}

impl TttEstimate {
    pub fn new(
        target: i64,
        p_s: f64,
        t_trial: f64,
        sweeps_per_run: Option<u64>,
    ) -> Result<Self, MetricsError> {
        let r = repetitions(p_s)?;
        if !(t_trial > 0.0) {
            return Err(MetricsError::NonPositiveTime(t_trial));
        }
        let sweeps = match sweeps_per_run {
            Some(s) => Some(sweeps_to_target(s, p_s)?),
            None => None,
        };
        Ok(TttEstimate {
            target,
            p_s,
            r,
            t_trial,
            ttt: t_trial * r,
            sweeps_per_run,
            sweeps_to_target: sweeps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(got: f64, want: f64, rel: f64) {
        assert!(
            (got - want).abs() <= rel * want.abs(),
            "got {got}, want {want} within {rel}"
        );
    }

    #[test]
    fn repetitions_pins() {
        assert_eq!(repetitions(0.99).unwrap(), 1.0);
        assert!((repetitions(0.10).unwrap() - 43.71).abs() < 0.01);
        assert!((repetitions(0.05).unwrap() - 89.78).abs() < 0.01);
        assert_eq!(repetitions(1.0).unwrap(), 1.0);
    }

    #[test]
    fn repetitions_domain() {
        assert_eq!(repetitions(0.0).unwrap_err(), MetricsError::NoSuccesses);
        assert!(repetitions(-0.1).is_err());
        assert!(repetitions(1.1).is_err());
    }

    #[test]
    fn repetitions_monotone_and_divergent() {
        let mut last = f64::INFINITY;
        for k in 1..=1000 {
            let p = k as f64 / 1000.0;
            let r = repetitions(p).unwrap();
            assert!(r <= last + 1e-12, "not monotone at p={p}");
            last = r;
        }
        assert!(repetitions(1e-9).unwrap() > 1e9);
    }

    #[test]
    fn ttt_is_linear_in_trial_time() {
        let a = time_to_target(10.0, 0.3).unwrap();
        let b = time_to_target(20.0, 0.3).unwrap();
        assert_close(b, 2.0 * a, 1e-12);
        assert_eq!(time_to_target(123.0, 0.99).unwrap(), 123.0);
    }

    #[test]
    fn ttt_projection_pins() {
        assert_close(time_to_target(431.6, 0.10).unwrap(), 18_865.0, 0.005);
        assert_close(time_to_target(308.55, 0.05).unwrap(), 27_702.0, 0.005);
    }

    #[test]
    fn sweeps_to_target_pins() {
        assert_close(sweeps_to_target(4000, 0.57).unwrap(), 21_800.0, 0.01);
        assert_close(sweeps_to_target(3000, 0.58).unwrap(), 15_900.0, 0.01);
        assert_eq!(sweeps_to_target(8000, 0.99).unwrap(), 8000.0);
        assert!(sweeps_to_target(0, 0.5).is_err());
    }

    #[test]
    fn quality_pins() {
        assert_eq!(
            format_quality_percent(solution_quality(5546, 5562).unwrap()),
            "99.71%"
        );
        assert_eq!(
            format_quality_percent(solution_quality(13_992, 14_056).unwrap()),
            "99.54%"
        );
        assert_eq!(solution_quality(7008, 7008).unwrap(), 1.0);
        assert!(solution_quality(1, 0).is_err());
    }

    #[test]
    fn speedup_pins() {
        assert_close(speedup(5651.0, 2.90).unwrap(), 1950.0, 0.01);
        assert_close(speedup(46_760.0, 4.32).unwrap(), 10_800.0, 0.01);
        assert_eq!(speedup(7.0, 7.0).unwrap(), 1.0);
    }

    #[test]
    fn energy_pins() {
        assert_close(energy_to_target(2.90, 45.0).unwrap(), 130.5, 1e-12);
        assert_close(energy_to_target(5651.0, 300.0).unwrap(), 1_695_300.0, 1e-12);
        assert_eq!(energy_to_target(1.0, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn bls_projection_pins() {
        let p = bls_projection(4316.0, 2, 20).unwrap();
        assert_close(p.p_s, 0.10, 1e-12);
        assert_close(p.avg_time_per_run, 431.6, 1e-12);
        assert_close(p.projected_ttt, 18_865.0, 0.005);

        let p = bls_projection(12_563.0, 2, 20).unwrap();
        assert_close(p.avg_time_per_run, 1256.3, 1e-12);
        assert_close(p.projected_ttt, 54_911.0, 0.005);

        let p = bls_projection(777.0, 20, 20).unwrap();
        assert_eq!(p.p_s, 1.0);
        assert_eq!(p.projected_ttt, 777.0);
        assert_eq!(p.avg_time_per_run, 777.0);

        assert_eq!(
            bls_projection(1.0, 0, 20).unwrap_err(),
            MetricsError::BadCounts { successes: 0, runs: 20 }
        );
    }

    #[test]
    fn estimate_ties_fields_together() {
        let est = TttEstimate::new(5546, 0.66, 2.9, Some(8000)).unwrap();
        assert_close(est.ttt, est.t_trial * est.r, 1e-12);
        assert_close(
            est.sweeps_to_target.unwrap(),
            est.sweeps_per_run.unwrap() as f64 * est.r,
            1e-12,
        );
    }
}
