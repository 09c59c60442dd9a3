//! Quantum-based annotation: residual decomposition against a known
//! quantum, a quantality score, integer-ratio labels, and quantum
//! derivation from metrical-cycle annotations.
//!
//! The quantum is always supplied externally (from cycle annotations or
//! generator parameters); no quantum search is attempted.

use crate::error::{Error, Result};
use crate::segment::Segment;
use crate::sequence::IntervalSequence;

/// Default near-multiple threshold, as a fraction of the quantum.
pub const DEFAULT_THETA: f64 = 0.25;

/// Default number of quanta per metrical cycle (a 16th-note grid).
pub const DEFAULT_SUBDIVISIONS: u32 = 16;

/// Decomposition of a sequence's intervals into quantum multiples and
/// residuals: interval = multiple * quantum + residual, per entry.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantalAnnotation {
    pub quantum: f64,
    pub theta: f64,
    /// Rounded multiple per interval, clamped to >= 1.
    pub multiples: Vec<u64>,
    /// Signed residual per interval, in seconds.
    pub residuals: Vec<f64>,
    /// Fraction of intervals with |residual| < theta * quantum.
    pub score: f64,
}

fn check_quantum(quantum: f64) -> Result<()> {
    if !quantum.is_finite() || quantum <= 0.0 {
        return Err(Error::invalid(format!(
            "quantum must be finite and > 0, got {quantum}"
        )));
    }
    Ok(())
}

fn check_theta(theta: f64) -> Result<()> {
    if !theta.is_finite() || theta <= 0.0 || theta > 0.5 {
        return Err(Error::invalid(format!(
            "theta must lie in (0, 0.5], got {theta}"
        )));
    }
    Ok(())
}

fn multiple_and_residual(interval: f64, quantum: f64) -> (u64, f64) {
    // A quantum is the smallest unit, so the multiple is clamped to >= 1;
    // intervals below quantum/2 then carry residuals at or below -q/2 and
    // never count as near-multiples.
    let m = (interval / quantum).round().max(1.0);
    (m as u64, interval - m * quantum)
}

/// Annotate a sequence against a known quantum: per-interval multiples and
/// residuals, plus the fraction of intervals within `theta * quantum` of a
/// multiple. An empty sequence scores 1 vacuously.
pub fn annotate(seq: &IntervalSequence, quantum: f64, theta: f64) -> Result<QuantalAnnotation> {
    check_quantum(quantum)?;
    check_theta(theta)?;
    let mut multiples = Vec::with_capacity(seq.len());
    let mut residuals = Vec::with_capacity(seq.len());
    let mut near = 0usize;
    for &interval in seq.intervals() {
        let (m, r) = multiple_and_residual(interval, quantum);
        if r.abs() < theta * quantum {
            near += 1;
        }
        multiples.push(m);
        residuals.push(r);
    }
    let score = if seq.is_empty() {
        1.0
    } else {
        near as f64 / seq.len() as f64
    };
    Ok(QuantalAnnotation {
        quantum,
        theta,
        multiples,
        residuals,
        score,
    })
}

/// Rounded quantum multiples of the values, or `None` when any value sits
/// farther than `theta * quantum` from its nearest multiple.
pub fn integer_multiples(values: &[f64], quantum: f64, theta: f64) -> Result<Option<Vec<u64>>> {
    check_quantum(quantum)?;
    check_theta(theta)?;
    let mut out = Vec::with_capacity(values.len());
    for &v in values {
        let (m, r) = multiple_and_residual(v, quantum);
        if r.abs() >= theta * quantum {
            return Ok(None);
        }
        out.push(m);
    }
    Ok(Some(out))
}

/// Integer-ratio label of a segment, e.g. "2:3" for (1.0, 1.5) at a 0.5 s
/// quantum. Labels are not reduced: 2:4 stays 2:4. Returns `None` when the
/// segment is not close enough to quantum multiples.
pub fn integer_ratio_label(seg: &Segment, quantum: f64, theta: f64) -> Result<Option<String>> {
    Ok(integer_multiples(seg.values(), quantum, theta)?
        .map(|ms| ms.iter().map(u64::to_string).collect::<Vec<_>>().join(":")))
}

/// Quantum from metrical-cycle annotations: the median cycle duration
/// divided by the number of subdivisions per cycle. The median resists
/// annotation outliers.
pub fn quantum_from_cycles(cycle_onsets: &[f64], subdivisions: u32) -> Result<f64> {
    if subdivisions < 1 {
        return Err(Error::invalid("subdivisions must be >= 1"));
    }
    if cycle_onsets.len() < 2 {
        return Err(Error::invalid(format!(
            "need at least 2 cycle onsets, got {}",
            cycle_onsets.len()
        )));
    }
    let mut durations = Vec::with_capacity(cycle_onsets.len() - 1);
    for pair in cycle_onsets.windows(2) {
        if !pair[0].is_finite() || !pair[1].is_finite() || pair[1] <= pair[0] {
            return Err(Error::invalid(format!(
                "cycle onsets must be strictly increasing, got {} then {}",
                pair[0], pair[1]
            )));
        }
        durations.push(pair[1] - pair[0]);
    }
    Ok(median(durations) / subdivisions as f64)
}

fn median(mut values: Vec<f64>) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Express a duration as a (fractional) number of quanta, for axis scaling.
pub fn duration_in_quanta(duration: f64, quantum: f64) -> Result<f64> {
    check_quantum(quantum)?;
    Ok(duration / quantum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::SequenceMeta;
    use crate::synth;

    fn seq(intervals: Vec<f64>) -> IntervalSequence {
        IntervalSequence::new(SequenceMeta::new("t"), intervals).unwrap()
    }

    #[test]
    fn annotate_two_three() {
        let a = annotate(&seq(vec![1.0, 1.5]), 0.5, DEFAULT_THETA).unwrap();
        assert_eq!(a.multiples, vec![2, 3]);
        assert_eq!(a.residuals, vec![0.0, 0.0]);
        assert_eq!(a.score, 1.0);
    }

    #[test]
    fn exact_multiples_score_one_at_any_theta() {
        let s = seq(vec![0.2, 0.4, 1.8, 0.6]);
        for theta in [0.01, 0.1, 0.25, 0.5] {
            assert_eq!(annotate(&s, 0.2, theta).unwrap().score, 1.0);
        }
    }

    #[test]
    fn uniform_intervals_score_about_half() {
        let s = synth::gen_uniform(100_000, 0.2, 2.0, 31).unwrap();
        let a = annotate(&s, 0.2, 0.25).unwrap();
        assert!(
            (a.score - 0.5).abs() < 0.05,
            "uniform residuals should straddle the threshold evenly, score {}",
            a.score
        );
    }

    #[test]
    fn annotate_rejects_bad_parameters() {
        let s = seq(vec![1.0]);
        assert!(annotate(&s, 0.0, 0.25).is_err());
        assert!(annotate(&s, 0.5, 0.0).is_err());
        assert!(annotate(&s, 0.5, 0.6).is_err());
    }

    #[test]
    fn reconstruction_identity_holds() {
        let s = synth::gen_quantal_geometric(10_000, 0.2, 0.5, 0.01, 3).unwrap();
        let a = annotate(&s, 0.2, 0.25).unwrap();
        for ((&iv, &m), &r) in s.intervals().iter().zip(&a.multiples).zip(&a.residuals) {
            assert_eq!(m as f64 * 0.2 + r, iv);
        }
    }

    #[test]
    fn residuals_stay_in_half_quantum_unless_clamped() {
        let q = 0.4;
        let s = seq(vec![0.05, 0.21, 0.39, 0.41, 1.0, 2.3]);
        let a = annotate(&s, q, 0.25).unwrap();
        for (&iv, &r) in s.intervals().iter().zip(&a.residuals) {
            if iv >= q / 2.0 {
                // An interval exactly halfway rounds away from zero, putting
                // the residual at -q/2 up to float rounding.
                assert!(
                    (-q / 2.0 - 1e-12..q / 2.0).contains(&r),
                    "interval {iv} residual {r}"
                );
            } else {
                // Clamped to multiple 1: residual at or below -q/2, never near.
                assert!(r <= -q / 2.0);
                assert!(r.abs() >= 0.25 * q);
            }
        }
    }

    #[test]
    fn score_is_monotone_in_theta() {
        let s = synth::gen_uniform(5_000, 0.2, 2.0, 47).unwrap();
        let mut last = 0.0;
        for theta in [0.05, 0.1, 0.2, 0.3, 0.4, 0.5] {
            let score = annotate(&s, 0.2, theta).unwrap().score;
            assert!(score >= last, "score must not decrease with theta");
            last = score;
        }
    }

    #[test]
    fn noiseless_grid_scores_one_at_any_theta() {
        let s = synth::gen_grid_events(2_000, 0.25, 0.0, 0.5, 11).unwrap();
        for theta in [0.05, 0.25, 0.5] {
            assert_eq!(annotate(&s, 0.25, theta).unwrap().score, 1.0);
        }
    }

    #[test]
    fn lightly_jittered_grid_stays_clearly_quantal() {
        let grid = 0.25;
        let s = synth::gen_grid_events(5_000, grid, grid / 20.0, 0.5, 19).unwrap();
        let score = annotate(&s, grid, 0.25).unwrap().score;
        assert!(score >= 0.95, "score {score}");
    }

    #[test]
    fn label_examples() {
        let s = Segment::new(vec![1.0, 1.5]).unwrap();
        assert_eq!(
            integer_ratio_label(&s, 0.5, DEFAULT_THETA).unwrap(),
            Some("2:3".to_string())
        );
        let s = Segment::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(
            integer_ratio_label(&s, 0.5, DEFAULT_THETA).unwrap(),
            Some("1:1".to_string())
        );
        let s = Segment::new(vec![0.52, 0.48, 1.01]).unwrap();
        assert_eq!(
            integer_ratio_label(&s, 0.5, 0.25).unwrap(),
            Some("1:1:2".to_string())
        );
        // Residual 0.1 exceeds theta * quantum = 0.05: no label.
        let s = Segment::new(vec![0.6, 0.5]).unwrap();
        assert_eq!(integer_ratio_label(&s, 0.5, 0.1).unwrap(), None);
    }

    #[test]
    fn quantum_from_constant_cycles() {
        assert_eq!(
            quantum_from_cycles(&[0.0, 4.0, 8.0, 12.0], 16).unwrap(),
            0.25
        );
    }

    #[test]
    fn quantum_from_uneven_cycles_uses_the_median() {
        // Cycle durations 4.0, 4.2, 3.9; median 4.0.
        let q = quantum_from_cycles(&[0.0, 4.0, 8.2, 12.1], 16).unwrap();
        assert!((q - 0.25).abs() < 1e-12);
    }

    #[test]
    fn quantum_from_cycles_rejects_bad_input() {
        assert!(quantum_from_cycles(&[1.0], 16).is_err());
        assert!(quantum_from_cycles(&[0.0, 4.0, 3.0], 16).is_err());
        assert!(quantum_from_cycles(&[0.0, 4.0], 0).is_err());
    }

    #[test]
    fn duration_in_quanta_examples() {
        assert_eq!(duration_in_quanta(2.5, 0.5).unwrap(), 5.0);
        assert_eq!(duration_in_quanta(0.7, 0.7).unwrap(), 1.0);
        assert_eq!(duration_in_quanta(0.8, 0.2).unwrap(), 4.0);
        assert!(duration_in_quanta(1.0, 0.0).is_err());
    }
}
