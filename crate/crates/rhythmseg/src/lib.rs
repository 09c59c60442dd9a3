//! Rhythmic segment analysis.
//!
//! Decompose interval sequences into fixed-length segments, map them to
//! pattern/duration coordinates on the rhythm simplex, measure
//! (an)isochrony and the nPVI, detect quantal structure against a known
//! quantum, cluster segments with HDBSCAN under the taxicab metric, build
//! cluster transition networks, and render deterministic SVG plots.
//!
//! The core workflow:
//!
//! ```
//! use rhythmseg::{extract_segments, npvi, IntervalSequence, SequenceMeta};
//!
//! let seq = IntervalSequence::new(
//!     SequenceMeta::new("example"),
//!     vec![0.1, 0.1, 0.2, 0.2, 0.2, 0.4, 0.3],
//! )?;
//! let segments = extract_segments(&seq, 3)?;
//! assert_eq!(segments.len(), 5);
//! let pd = segments[0].normalize();
//! assert!((pd.duration() - 0.4).abs() < 1e-12);
//! assert!(npvi(&seq)? <= 200.0);
//! # Ok::<(), rhythmseg::Error>(())
//! ```

pub mod cluster;
pub mod error;
pub mod io;
pub mod kde;
pub mod measures;
pub mod network;
pub mod quantal;
pub mod segment;
pub mod sequence;
pub mod synth;
pub mod viz;

pub use cluster::{
    cluster_segments, cluster_with_matrix, medoid, medoid_index, ClusterLabeling, ClusterSummary,
    DistanceMatrix, DEFAULT_MIN_CLUSTER_SIZE, NOISE,
};
pub use error::{Error, Result};
pub use kde::{kde, silverman_bandwidth, Bandwidth, DensityCurve};
pub use measures::{mean_anisochrony, mean_reference_distance, npvi, segment_anisochrony};
pub use network::{
    build_network, path_rhythm, NetworkEdge, NetworkNode, TransitionNetwork,
    DEFAULT_PRUNE_THRESHOLD,
};
pub use quantal::{
    annotate, duration_in_quanta, integer_ratio_label, quantum_from_cycles, QuantalAnnotation,
    DEFAULT_SUBDIVISIONS, DEFAULT_THETA,
};
pub use segment::{
    extract_segments, pattern_distance, rhythm_ratio, segment_distance, successor_pairs, Pattern,
    PatternDuration, Segment, SegmentOrigin,
};
pub use sequence::{IntervalSequence, SequenceMeta};
pub use synth::{
    gen_grid_events, gen_quantal_geometric, gen_quantal_uniform, gen_repeated, gen_uniform,
    RepeatTemplate,
};
pub use viz::{
    pattern_duration_plot, phase_plot, raster_plot, ratio_density, ratio_plot, triangle_plot,
    PlotSpec, TriangleLayout,
};
