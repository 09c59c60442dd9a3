//! Density-based clustering of segments.
//!
//! Clustering runs in raw segment space with the taxicab metric: clusters
//! then separate both by pattern and by duration. The algorithm is
//! HDBSCAN with excess-of-mass extraction and min_samples tied to the
//! minimum cluster size; see [`hdbscan`] for the pipeline. Distances are
//! computed exactly, O(n^2), which is comfortable for corpora of 10^3 to
//! 10^4 segments.

mod hdbscan;

use crate::error::{Error, Result};
use crate::segment::{l1_distance, PatternDuration, Segment};
use hdbscan::PairwiseDistances;

/// Label given to segments assigned to no cluster.
pub const NOISE: i32 = -1;

/// Default minimum number of segments per cluster.
pub const DEFAULT_MIN_CLUSTER_SIZE: usize = 10;

/// One recovered cluster: its size and its medoid.
#[derive(Debug, Clone)]
pub struct ClusterSummary {
    pub id: i32,
    pub size: usize,
    /// Index of the medoid into the clustered segment list.
    pub medoid_index: usize,
    pub medoid: Segment,
    pub medoid_pd: PatternDuration,
}

/// Per-segment cluster labels (`NOISE` = -1) plus per-cluster summaries.
#[derive(Debug, Clone, Default)]
pub struct ClusterLabeling {
    pub labels: Vec<i32>,
    pub clusters: Vec<ClusterSummary>,
}

impl ClusterLabeling {
    pub fn noise_count(&self) -> usize {
        self.labels.iter().filter(|&&l| l == NOISE).count()
    }
}

/// Pairwise distances stored as a condensed upper triangle.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Taxicab distances between all pairs of equal-length segments.
    pub fn from_segments(segments: &[Segment]) -> Result<Self> {
        check_equal_lengths(segments)?;
        let n = segments.len();
        let mut data = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                data.push(l1_distance(segments[i].values(), segments[j].values()));
            }
        }
        Ok(DistanceMatrix { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.data[a * (2 * self.n - a - 1) / 2 + (b - a - 1)]
    }
}

impl PairwiseDistances for DistanceMatrix {
    fn len(&self) -> usize {
        self.n
    }

    fn distance(&self, i: usize, j: usize) -> f64 {
        self.get(i, j)
    }
}

/// Distance source that evaluates the taxicab metric on demand.
struct SegmentSpace<'a> {
    values: Vec<&'a [f64]>,
}

impl PairwiseDistances for SegmentSpace<'_> {
    fn len(&self) -> usize {
        self.values.len()
    }

    fn distance(&self, i: usize, j: usize) -> f64 {
        l1_distance(self.values[i], self.values[j])
    }
}

fn check_equal_lengths(segments: &[Segment]) -> Result<()> {
    if let Some(first) = segments.first() {
        if let Some(bad) = segments.iter().find(|s| s.len() != first.len()) {
            return Err(Error::LengthMismatch {
                left: first.len(),
                right: bad.len(),
            });
        }
    }
    Ok(())
}

fn check_min_cluster_size(min_cluster_size: usize) -> Result<()> {
    if min_cluster_size < 2 {
        return Err(Error::invalid(format!(
            "min cluster size must be at least 2, got {min_cluster_size}"
        )));
    }
    Ok(())
}

/// Cluster segments in raw segment space under the taxicab metric.
/// Empty input yields an empty labeling; mixed lengths are an error.
pub fn cluster_segments(segments: &[Segment], min_cluster_size: usize) -> Result<ClusterLabeling> {
    check_min_cluster_size(min_cluster_size)?;
    check_equal_lengths(segments)?;
    if segments.is_empty() {
        return Ok(ClusterLabeling::default());
    }
    let space = SegmentSpace {
        values: segments.iter().map(Segment::values).collect(),
    };
    let labels = hdbscan::hdbscan_labels(&space, min_cluster_size);
    let clusters = summarize(segments, &labels);
    Ok(ClusterLabeling { labels, clusters })
}

/// Cluster from a precomputed distance matrix; returns labels only.
/// Feeding the matrix of [`DistanceMatrix::from_segments`] reproduces
/// [`cluster_segments`] exactly.
pub fn cluster_with_matrix(matrix: &DistanceMatrix, min_cluster_size: usize) -> Result<Vec<i32>> {
    check_min_cluster_size(min_cluster_size)?;
    Ok(hdbscan::hdbscan_labels(matrix, min_cluster_size))
}

/// The member minimizing the summed segment distance to all members.
/// Ties break to the lowest origin, then to the earliest list position.
pub fn medoid(members: &[Segment]) -> Result<&Segment> {
    medoid_index(members).map(|i| &members[i])
}

/// Index of the medoid within `members`.
pub fn medoid_index(members: &[Segment]) -> Result<usize> {
    if members.is_empty() {
        return Err(Error::invalid("medoid of an empty member list"));
    }
    check_equal_lengths(members)?;
    let indices: Vec<usize> = (0..members.len()).collect();
    Ok(medoid_among(members, &indices))
}

/// Brute-force medoid over `indices` into `segments`; returns one of the
/// indices.
fn medoid_among(segments: &[Segment], indices: &[usize]) -> usize {
    let mut best = indices[0];
    let mut best_sum = f64::INFINITY;
    for &i in indices {
        let sum: f64 = indices
            .iter()
            .map(|&j| l1_distance(segments[i].values(), segments[j].values()))
            .sum();
        if sum < best_sum || (sum == best_sum && origin_precedes(&segments[i], &segments[best])) {
            best = i;
            best_sum = sum;
        }
    }
    best
}

fn origin_precedes(a: &Segment, b: &Segment) -> bool {
    match (a.origin(), b.origin()) {
        (Some(x), Some(y)) => x < y,
        (Some(_), None) => true,
        _ => false,
    }
}

fn summarize(segments: &[Segment], labels: &[i32]) -> Vec<ClusterSummary> {
    let num = labels
        .iter()
        .copied()
        .max()
        .map_or(0, |m| (m + 1).max(0) as usize);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); num];
    for (i, &l) in labels.iter().enumerate() {
        if l >= 0 {
            groups[l as usize].push(i);
        }
    }
    groups
        .into_iter()
        .enumerate()
        .map(|(id, indices)| {
            let medoid_index = medoid_among(segments, &indices);
            let medoid = segments[medoid_index].clone();
            let medoid_pd = medoid.normalize();
            ClusterSummary {
                id: id as i32,
                size: indices.len(),
                medoid_index,
                medoid,
                medoid_pd,
            }
        })
        .collect()
}
