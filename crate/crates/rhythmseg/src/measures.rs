//! Scalar measures of rhythmic regularity built on the pattern distance.

use crate::error::{Error, Result};
use crate::segment::{pattern_distance, Pattern, Segment};
use crate::sequence::IntervalSequence;

/// Anisochrony of a segment: the anisochrony of its pattern.
pub fn segment_anisochrony(segment: &Segment) -> f64 {
    segment.anisochrony()
}

/// Mean anisochrony over a set of segments.
pub fn mean_anisochrony(segments: &[Segment]) -> Result<f64> {
    if segments.is_empty() {
        return Err(Error::invalid("mean anisochrony of an empty segment list"));
    }
    Ok(segments.iter().map(Segment::anisochrony).sum::<f64>() / segments.len() as f64)
}

/// Normalized pairwise variability index of a sequence, in [0, 200].
///
/// Equals 200 times the mean anisochrony of the sequence's length-2
/// segments: the nPVI measures average distance from isochrony.
pub fn npvi(seq: &IntervalSequence) -> Result<f64> {
    let iv = seq.intervals();
    if iv.len() < 2 {
        return Err(Error::invalid(format!(
            "nPVI needs at least 2 intervals, got {}",
            iv.len()
        )));
    }
    let sum: f64 = iv
        .windows(2)
        .map(|w| ((w[0] - w[1]) / (w[0] + w[1])).abs())
        .sum();
    Ok(200.0 / (iv.len() - 1) as f64 * sum)
}

/// Mean pattern distance to an arbitrary reference pattern, normalized by
/// the largest distance from the reference to any simplex corner so the
/// result stays in [0, 1]. With the isochronous center as reference this
/// reproduces the mean anisochrony.
pub fn mean_reference_distance(patterns: &[Pattern], reference: &Pattern) -> Result<f64> {
    if patterns.is_empty() {
        return Err(Error::invalid(
            "mean reference distance of an empty pattern list",
        ));
    }
    let n = reference.len();
    let max_corner = (0..n)
        .map(|corner| {
            let half_sum: f64 = reference
                .weights()
                .iter()
                .enumerate()
                .map(|(i, w)| if i == corner { 1.0 - w } else { *w })
                .sum();
            0.5 * half_sum
        })
        .fold(0.0_f64, f64::max);
    let mut total = 0.0;
    for p in patterns {
        total += pattern_distance(p, reference)?;
    }
    Ok(total / patterns.len() as f64 / max_corner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::extract_segments;
    use crate::sequence::SequenceMeta;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn seq(intervals: Vec<f64>) -> IntervalSequence {
        IntervalSequence::new(SequenceMeta::new("t"), intervals).unwrap()
    }

    #[test]
    fn npvi_of_constant_sequence_is_zero() {
        assert_eq!(npvi(&seq(vec![1.0, 1.0, 1.0, 1.0])).unwrap(), 0.0);
    }

    #[test]
    fn npvi_of_one_to_three_pair() {
        assert_eq!(npvi(&seq(vec![1.0, 3.0])).unwrap(), 100.0);
    }

    #[test]
    fn npvi_needs_two_intervals() {
        assert!(npvi(&seq(vec![1.0])).is_err());
    }

    #[test]
    fn npvi_is_200_times_mean_anisochrony() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let len = rng.random_range(2..60);
            let intervals: Vec<f64> = (0..len).map(|_| rng.random_range(0.05..5.0)).collect();
            let s = seq(intervals);
            let segs = extract_segments(&s, 2).unwrap();
            let expected = 200.0 * mean_anisochrony(&segs).unwrap();
            assert!((npvi(&s).unwrap() - expected).abs() < 1e-12);
        }
    }

    /// Independent evaluation of the normalized reference distance: the
    /// pattern distance written out termwise, and the corner maximum found
    /// by materializing every corner of the simplex.
    fn reference_distance_oracle(patterns: &[Pattern], reference: &Pattern) -> f64 {
        let n = reference.len();
        let dp = |a: &[f64], b: &[f64]| -> f64 {
            0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
        };
        let mut max_corner = 0.0_f64;
        for j in 0..n {
            let mut corner = vec![0.0; n];
            corner[j] = 1.0;
            max_corner = max_corner.max(dp(reference.weights(), &corner));
        }
        let mean = patterns
            .iter()
            .map(|p| dp(p.weights(), reference.weights()))
            .sum::<f64>()
            / patterns.len() as f64;
        mean / max_corner
    }

    #[test]
    fn reference_distance_is_zero_at_the_reference() {
        let r = Pattern::new(vec![0.2, 0.3, 0.5]).unwrap();
        let ps = vec![r.clone(), r.clone()];
        assert_eq!(mean_reference_distance(&ps, &r).unwrap(), 0.0);
    }

    #[test]
    fn reference_distance_center_to_corners_is_one() {
        let third = 1.0 / 3.0;
        let center = Pattern::new(vec![third, third, third]).unwrap();
        let corners = vec![
            Pattern::new(vec![1.0, 0.0, 0.0]).unwrap(),
            Pattern::new(vec![0.0, 1.0, 0.0]).unwrap(),
            Pattern::new(vec![0.0, 0.0, 1.0]).unwrap(),
        ];
        let d = mean_reference_distance(&corners, &center).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reference_distance_matches_brute_force_oracle() {
        // Frozen from the oracle below: reference (7/12, 2/12, 3/12) and the
        // centroid pattern give mean distance 1/4 against corner maximum 5/6.
        let reference = Pattern::new(vec![7.0 / 12.0, 2.0 / 12.0, 3.0 / 12.0]).unwrap();
        let third = 1.0 / 3.0;
        let patterns = vec![Pattern::new(vec![third, third, third]).unwrap()];
        let got = mean_reference_distance(&patterns, &reference).unwrap();
        assert!((got - 0.3).abs() < 1e-12);
        let oracle = reference_distance_oracle(&patterns, &reference);
        assert!((got - oracle).abs() < 1e-12);
    }

    #[test]
    fn reference_distance_with_center_equals_mean_anisochrony() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=5usize {
            let center = Pattern::new(vec![1.0 / n as f64; n]).unwrap();
            let segs: Vec<Segment> = (0..40)
                .map(|_| {
                    Segment::new((0..n).map(|_| rng.random_range(0.01..2.0)).collect()).unwrap()
                })
                .collect();
            let patterns: Vec<Pattern> = segs
                .iter()
                .map(|s| s.normalize().pattern().clone())
                .collect();
            let lhs = mean_reference_distance(&patterns, &center).unwrap();
            let rhs = mean_anisochrony(&segs).unwrap();
            assert!((lhs - rhs).abs() < 1e-12, "n={n}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn reference_distance_rejects_empty_input() {
        let r = Pattern::new(vec![0.5, 0.5]).unwrap();
        assert!(mean_reference_distance(&[], &r).is_err());
    }
}
