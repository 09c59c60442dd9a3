//! Segments, patterns, and the rhythm-simplex geometry.
//!
//! A segment is a fixed-length run of consecutive intervals. Dividing a
//! segment by its duration (the sum of its entries) yields its pattern, a
//! point on the simplex of relative durations. Segments are compared with
//! the taxicab distance, patterns with the total variation distance.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sequence::IntervalSequence;

/// Absolute tolerance on the weight sum when accepting a pattern.
pub const PATTERN_SUM_TOLERANCE: f64 = 1e-9;

/// Where a segment came from: the parent sequence id and the index of the
/// segment's first interval within that sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SegmentOrigin {
    pub sequence: Arc<str>,
    pub start: usize,
}

impl SegmentOrigin {
    pub fn new(sequence: impl AsRef<str>, start: usize) -> Self {
        SegmentOrigin {
            sequence: Arc::from(sequence.as_ref()),
            start,
        }
    }
}

/// A fixed-length group of consecutive intervals (an interval n-gram).
///
/// All entries are strictly positive, so the duration is positive too.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    values: Vec<f64>,
    origin: Option<SegmentOrigin>,
}

impl Segment {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::build(values, None)
    }

    pub fn with_origin(values: Vec<f64>, origin: SegmentOrigin) -> Result<Self> {
        Self::build(values, Some(origin))
    }

    fn build(values: Vec<f64>, origin: Option<SegmentOrigin>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::invalid(format!(
                "a segment needs at least 2 intervals, got {}",
                values.len()
            )));
        }
        if let Some(&v) = values.iter().find(|v| !v.is_finite() || **v <= 0.0) {
            return Err(Error::invalid(format!(
                "segment entries must be finite and > 0, got {v}"
            )));
        }
        Ok(Segment { values, origin })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn origin(&self) -> Option<&SegmentOrigin> {
        self.origin.as_ref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // segments always hold at least two intervals
    }

    /// Total duration: the sum of the entries (the L1 norm of the segment).
    pub fn duration(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Decompose into relative durations plus the total duration.
    pub fn normalize(&self) -> PatternDuration {
        let duration = self.duration();
        let weights = self.values.iter().map(|v| v / duration).collect();
        // Division by the L1 norm already lands on the simplex to float
        // precision; no further renormalization.
        PatternDuration {
            pattern: Pattern { weights },
            duration,
        }
    }

    /// Anisochrony of the segment: the anisochrony of its pattern.
    pub fn anisochrony(&self) -> f64 {
        self.normalize().pattern().anisochrony()
    }
}

/// A point on the rhythm simplex: relative durations summing to one.
///
/// Zero weights are allowed so that simplex corners are representable;
/// segments themselves can never reach a corner.
#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    weights: Vec<f64>,
}

impl Pattern {
    /// Accepts a weight vector whose sum is within
    /// [`PATTERN_SUM_TOLERANCE`] of one and renormalizes it; anything
    /// further off is rejected.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::invalid(format!(
                "a pattern needs at least 2 weights, got {}",
                weights.len()
            )));
        }
        if let Some(&w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::invalid(format!(
                "pattern weights must be finite and >= 0, got {w}"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > PATTERN_SUM_TOLERANCE {
            return Err(Error::invalid(format!(
                "pattern weights sum to {sum}, expected 1 within {PATTERN_SUM_TOLERANCE}"
            )));
        }
        let weights = weights.into_iter().map(|w| w / sum).collect();
        Ok(Pattern { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    /// The rhythm ratio of a length-2 pattern: its first relative duration.
    pub fn ratio(&self) -> Option<f64> {
        (self.weights.len() == 2).then(|| self.weights[0])
    }

    /// Normalized distance from the isochronous center of the simplex:
    /// 0 at the center, exactly 1 at every corner. For length-2 patterns
    /// this is |p1 - p2|.
    pub fn anisochrony(&self) -> f64 {
        let n = self.weights.len() as f64;
        // n*w - 1 == n*(w - 1/n); this form is exact at the corners.
        let sum: f64 = self.weights.iter().map(|w| (n * w - 1.0).abs()).sum();
        sum / (2.0 * (n - 1.0))
    }
}

/// A pattern together with the duration that scales it back to a segment.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternDuration {
    pattern: Pattern,
    duration: f64,
}

impl PatternDuration {
    pub fn new(pattern: Pattern, duration: f64) -> Result<Self> {
        if !duration.is_finite() || duration <= 0.0 {
            return Err(Error::invalid(format!(
                "duration must be finite and > 0, got {duration}"
            )));
        }
        Ok(PatternDuration { pattern, duration })
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    /// Recover the segment by scaling the pattern up again. Fails only for
    /// corner patterns, whose zero weights cannot form segment entries.
    pub fn denormalize(&self) -> Result<Segment> {
        Segment::new(
            self.pattern
                .weights
                .iter()
                .map(|w| w * self.duration)
                .collect(),
        )
    }
}

/// All length-`n` windows of the sequence, in order, hop size one.
///
/// A sequence shorter than `n` yields an empty list. Segments never cross
/// sequence boundaries; corpora produce per-sequence segments.
pub fn extract_segments(seq: &IntervalSequence, n: usize) -> Result<Vec<Segment>> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "segment length must be at least 2, got {n}"
        )));
    }
    let values = seq.intervals();
    if values.len() < n {
        return Ok(Vec::new());
    }
    let id: Arc<str> = Arc::from(seq.meta().id.as_str());
    Ok((0..=values.len() - n)
        .map(|start| Segment {
            values: values[start..start + n].to_vec(),
            origin: Some(SegmentOrigin {
                sequence: id.clone(),
                start,
            }),
        })
        .collect())
}

/// Indices `(i, j)` of segment pairs where `j` starts one interval after
/// `i` in the same sequence. Segments without an origin never pair.
pub fn successor_pairs(segments: &[Segment]) -> Vec<(usize, usize)> {
    use std::collections::HashMap;
    let mut by_origin: HashMap<(&str, usize), usize> = HashMap::new();
    for (i, seg) in segments.iter().enumerate() {
        if let Some(o) = seg.origin() {
            by_origin.insert((o.sequence.as_ref(), o.start), i);
        }
    }
    let mut pairs = Vec::new();
    for (i, seg) in segments.iter().enumerate() {
        if let Some(o) = seg.origin() {
            if let Some(&j) = by_origin.get(&(o.sequence.as_ref(), o.start + 1)) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Relative duration of `a` within the pair `(a, b)`: a / (a + b).
pub fn rhythm_ratio(a: f64, b: f64) -> Result<f64> {
    if !a.is_finite() || !b.is_finite() || a <= 0.0 || b <= 0.0 {
        return Err(Error::invalid(format!(
            "rhythm ratio needs two positive finite durations, got ({a}, {b})"
        )));
    }
    Ok(a / (a + b))
}

/// Taxicab distance between two equal-length segments: the total
/// adjustment needed to turn one into the other.
pub fn segment_distance(x: &Segment, y: &Segment) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(l1_distance(x.values(), y.values()))
}

/// Total variation distance between two equal-length patterns: half the
/// taxicab distance. Any two corners of the simplex are exactly 1 apart.
pub fn pattern_distance(p: &Pattern, q: &Pattern) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(0.5 * l1_distance(p.weights(), q.weights()))
}

pub(crate) fn l1_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::SequenceMeta;
    use proptest::prelude::*;

    fn seq(intervals: Vec<f64>) -> IntervalSequence {
        IntervalSequence::new(SequenceMeta::new("t"), intervals).unwrap()
    }

    #[test]
    fn extracts_length_3_windows() {
        let s = seq(vec![0.1, 0.1, 0.2, 0.2, 0.2, 0.4, 0.3]);
        let segs = extract_segments(&s, 3).unwrap();
        let values: Vec<&[f64]> = segs.iter().map(|s| s.values()).collect();
        assert_eq!(
            values,
            vec![
                &[0.1, 0.1, 0.2][..],
                &[0.1, 0.2, 0.2],
                &[0.2, 0.2, 0.2],
                &[0.2, 0.2, 0.4],
                &[0.2, 0.4, 0.3],
            ]
        );
        for (k, s) in segs.iter().enumerate() {
            assert_eq!(s.origin().unwrap().start, k);
        }
    }

    #[test]
    fn short_sequence_gives_no_segments() {
        assert!(extract_segments(&seq(vec![0.5]), 2).unwrap().is_empty());
    }

    #[test]
    fn windows_of_length_2() {
        let segs = extract_segments(&seq(vec![1.0, 2.0, 3.0]), 2).unwrap();
        assert_eq!(segs.len(), 2);
        assert_eq!(segs[0].values(), &[1.0, 2.0]);
        assert_eq!(segs[1].values(), &[2.0, 3.0]);
    }

    #[test]
    fn segment_length_below_two_is_an_error() {
        assert!(extract_segments(&seq(vec![1.0, 2.0]), 1).is_err());
    }

    #[test]
    fn normalize_worked_example() {
        let pd = Segment::new(vec![0.1, 0.1, 0.2]).unwrap().normalize();
        let w = pd.pattern().weights();
        assert!((w[0] - 0.25).abs() < 1e-12);
        assert!((w[1] - 0.25).abs() < 1e-12);
        assert!((w[2] - 0.5).abs() < 1e-12);
        assert!((pd.duration() - 0.4).abs() < 1e-12);
    }

    #[test]
    fn normalize_isochronous_unit() {
        let pd = Segment::new(vec![0.5, 0.5]).unwrap().normalize();
        assert_eq!(pd.pattern().weights(), &[0.5, 0.5]);
        assert_eq!(pd.duration(), 1.0);
    }

    #[test]
    fn normalize_three_two() {
        let pd = Segment::new(vec![3.0, 2.0]).unwrap().normalize();
        assert!((pd.pattern().weights()[0] - 0.6).abs() < 1e-12);
        assert!((pd.pattern().weights()[1] - 0.4).abs() < 1e-12);
        assert_eq!(pd.duration(), 5.0);
    }

    #[test]
    fn denormalize_worked_examples() {
        let pd = PatternDuration::new(Pattern::new(vec![0.25, 0.25, 0.5]).unwrap(), 0.4).unwrap();
        let s = pd.denormalize().unwrap();
        for (got, want) in s.values().iter().zip([0.1, 0.1, 0.2]) {
            assert!((got - want).abs() < 1e-12);
        }

        let pd = PatternDuration::new(Pattern::new(vec![0.5, 0.5]).unwrap(), 2.0).unwrap();
        assert_eq!(pd.denormalize().unwrap().values(), &[1.0, 1.0]);

        let pd = PatternDuration::new(Pattern::new(vec![0.6, 0.4]).unwrap(), 5.0).unwrap();
        let s = pd.denormalize().unwrap();
        assert!((s.values()[0] - 3.0).abs() < 1e-12);
        assert!((s.values()[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn non_positive_duration_is_rejected() {
        let p = Pattern::new(vec![0.5, 0.5]).unwrap();
        assert!(PatternDuration::new(p.clone(), 0.0).is_err());
        assert!(PatternDuration::new(p, -1.0).is_err());
    }

    #[test]
    fn rhythm_ratio_examples() {
        assert!((rhythm_ratio(3.0, 2.0).unwrap() - 0.6).abs() < 1e-15);
        assert_eq!(rhythm_ratio(1.0, 1.0).unwrap(), 0.5);
        assert_eq!(rhythm_ratio(1.0, 3.0).unwrap(), 0.25);
        assert!(rhythm_ratio(0.0, 1.0).is_err());
        assert!(rhythm_ratio(1.0, -2.0).is_err());
    }

    #[test]
    fn segment_distance_examples() {
        let x = Segment::new(vec![1.0, 2.0, 3.0]).unwrap();
        let y = Segment::new(vec![4.0, 5.0, 6.0]).unwrap();
        assert_eq!(segment_distance(&x, &y).unwrap(), 9.0);
        assert_eq!(segment_distance(&x, &x).unwrap(), 0.0);

        let a = Segment::new(vec![0.25, 0.75]).unwrap();
        let b = Segment::new(vec![0.75, 0.25]).unwrap();
        assert_eq!(segment_distance(&a, &b).unwrap(), 1.0);

        let two = Segment::new(vec![1.0, 2.0]).unwrap();
        assert!(matches!(
            segment_distance(&x, &two),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn pattern_distance_examples() {
        let p = Pattern::new(vec![0.25, 0.75]).unwrap();
        let q = Pattern::new(vec![0.75, 0.25]).unwrap();
        assert_eq!(pattern_distance(&p, &q).unwrap(), 0.5);
        assert_eq!(pattern_distance(&p, &p).unwrap(), 0.0);

        let e1 = Pattern::new(vec![1.0, 0.0, 0.0]).unwrap();
        let e2 = Pattern::new(vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(pattern_distance(&e1, &e2).unwrap(), 1.0);
    }

    #[test]
    fn pattern_constructor_enforces_sum() {
        assert!(Pattern::new(vec![0.5, 0.6]).is_err());
        assert!(Pattern::new(vec![0.5, -0.5, 1.0]).is_err());
        // Within tolerance: accepted and renormalized.
        let p = Pattern::new(vec![0.5 + 4e-10, 0.5 + 4e-10]).unwrap();
        assert!((p.weights().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn anisochrony_anchors() {
        assert_eq!(Pattern::new(vec![0.5, 0.5]).unwrap().anisochrony(), 0.0);
        assert_eq!(Pattern::new(vec![0.25, 0.75]).unwrap().anisochrony(), 0.5);
        let third = 1.0 / 3.0;
        assert!(
            Pattern::new(vec![third, third, third])
                .unwrap()
                .anisochrony()
                < 1e-15
        );
        assert_eq!(
            Pattern::new(vec![1.0, 0.0, 0.0]).unwrap().anisochrony(),
            1.0
        );
    }

    #[test]
    fn segment_anisochrony_is_scale_invariant() {
        assert_eq!(Segment::new(vec![2.0, 2.0]).unwrap().anisochrony(), 0.0);
        assert_eq!(Segment::new(vec![1.0, 3.0]).unwrap().anisochrony(), 0.5);
        assert_eq!(Segment::new(vec![5.0, 15.0]).unwrap().anisochrony(), 0.5);
    }

    #[test]
    fn successor_pairs_follow_origins() {
        let s = seq(vec![1.0, 2.0, 3.0, 4.0]);
        let segs = extract_segments(&s, 2).unwrap();
        assert_eq!(successor_pairs(&segs), vec![(0, 1), (1, 2)]);
        // Boundary between sequences is never crossed.
        let t = IntervalSequence::new(SequenceMeta::new("u"), vec![1.0, 2.0, 3.0]).unwrap();
        let mut all = segs;
        all.extend(extract_segments(&t, 2).unwrap());
        assert_eq!(successor_pairs(&all), vec![(0, 1), (1, 2), (3, 4)]);
    }

    proptest! {
        #[test]
        fn round_trip_recovers_segments(values in proptest::collection::vec(1e-3f64..1e3, 2..=6)) {
            let seg = Segment::new(values.clone()).unwrap();
            let back = seg.normalize().denormalize().unwrap();
            for (a, b) in back.values().iter().zip(&values) {
                prop_assert!((a - b).abs() <= 1e-9 * b.abs());
            }
        }

        #[test]
        fn duration_is_the_l1_norm(values in proptest::collection::vec(1e-3f64..1e3, 2..=6)) {
            let seg = Segment::new(values.clone()).unwrap();
            prop_assert_eq!(seg.normalize().duration(), values.iter().sum::<f64>());
        }

        #[test]
        fn anisochrony_stays_in_the_unit_interval(
            values in proptest::collection::vec(1e-3f64..1e3, 2..=6),
        ) {
            let alpha = Segment::new(values).unwrap().anisochrony();
            prop_assert!((0.0..=1.0 + 1e-12).contains(&alpha));
        }

        #[test]
        fn patterns_are_scale_invariant(
            values in proptest::collection::vec(1e-3f64..1e3, 2..=6),
            scale in 1e-3f64..1e3,
        ) {
            let seg = Segment::new(values.clone()).unwrap();
            let scaled = Segment::new(values.iter().map(|v| v * scale).collect()).unwrap();
            let p = seg.normalize();
            let q = scaled.normalize();
            for (a, b) in p.pattern().weights().iter().zip(q.pattern().weights()) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
        }

        #[test]
        fn distances_satisfy_metric_axioms(
            x in proptest::collection::vec(1e-3f64..1e3, 3),
            y in proptest::collection::vec(1e-3f64..1e3, 3),
            z in proptest::collection::vec(1e-3f64..1e3, 3),
        ) {
            let (sx, sy, sz) = (
                Segment::new(x).unwrap(),
                Segment::new(y).unwrap(),
                Segment::new(z).unwrap(),
            );
            let dxy = segment_distance(&sx, &sy).unwrap();
            let dyx = segment_distance(&sy, &sx).unwrap();
            let dxz = segment_distance(&sx, &sz).unwrap();
            let dyz = segment_distance(&sy, &sz).unwrap();
            prop_assert!(dxy >= 0.0);
            prop_assert!((dxy - dyx).abs() <= 1e-12);
            prop_assert!(dxz <= dxy + dyz + 1e-12);
            prop_assert_eq!(segment_distance(&sx, &sx).unwrap(), 0.0);

            let (px, py, pz) = (sx.normalize(), sy.normalize(), sz.normalize());
            let dp = |a: &PatternDuration, b: &PatternDuration| {
                pattern_distance(a.pattern(), b.pattern()).unwrap()
            };
            prop_assert!((dp(&px, &py) - dp(&py, &px)).abs() <= 1e-12);
            prop_assert!(dp(&px, &pz) <= dp(&px, &py) + dp(&py, &pz) + 1e-12);
            prop_assert!(dp(&px, &py) <= 1.0 + 1e-12);
        }
    }
}
