//! Deterministic SVG emitters for raster, phase, ratio, pattern-duration
//! and rhythm-triangle plots.
//!
//! The same data and spec always produce byte-identical SVG: elements are
//! written in a fixed order and all numbers go through one fixed-precision
//! formatter.

mod pattern_duration;
mod phase;
mod raster;
mod ratio;
mod scale;
mod svg;
mod triangle;

pub use pattern_duration::pattern_duration_plot;
pub use phase::phase_plot;
pub use raster::raster_plot;
pub use ratio::{ratio_density, ratio_plot};
pub use scale::LinearScale;
pub use triangle::{triangle_plot, TriangleLayout};

use crate::error::{Error, Result};
use crate::kde::Bandwidth;
use crate::segment::Segment;

/// Pixel margins around the plot panel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Margins {
    pub left: f64,
    pub right: f64,
    pub top: f64,
    pub bottom: f64,
}

/// Rendering parameters shared by all plot types. The same spec plus the
/// same data yields byte-identical SVG.
#[derive(Debug, Clone)]
pub struct PlotSpec {
    pub width: f64,
    pub height: f64,
    pub margins: Margins,
    pub point_radius: f64,
    /// Fixed axis ranges; data-driven when absent.
    pub x_range: Option<(f64, f64)>,
    pub y_range: Option<(f64, f64)>,
    /// Switches duration axes to quanta and enables integer-ratio
    /// annotations.
    pub quantum: Option<f64>,
    /// Integer-ratio annotations cover all pairs m,k up to this value.
    pub annotation_max: u64,
    pub bandwidth: Bandwidth,
    /// Shortest/longest interval bounds; draws the min-duration (dashed)
    /// and max-duration (dotted) boundary curves when present.
    pub interval_bounds: Option<(f64, f64)>,
}

impl Default for PlotSpec {
    fn default() -> Self {
        PlotSpec {
            width: 640.0,
            height: 480.0,
            margins: Margins {
                left: 58.0,
                right: 16.0,
                top: 16.0,
                bottom: 46.0,
            },
            point_radius: 2.5,
            x_range: None,
            y_range: None,
            quantum: None,
            annotation_max: 6,
            bandwidth: Bandwidth::Auto,
            interval_bounds: None,
        }
    }
}

/// Cluster palette; ids cycle through it.
const CLUSTER_COLORS: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

pub(crate) const NOISE_COLOR: &str = "#9a9a9a";
pub(crate) const TRAJECTORY_STYLE: &str = "fill=\"none\" stroke=\"#cccccc\" stroke-width=\"0.6\"";

pub(crate) fn cluster_color(id: i32) -> &'static str {
    CLUSTER_COLORS[id.max(0) as usize % CLUSTER_COLORS.len()]
}

/// Five-stop approximation of the viridis colormap.
pub(crate) fn duration_color(t: f64) -> String {
    const STOPS: [(f64, [u8; 3]); 5] = [
        (0.00, [68, 1, 84]),
        (0.25, [59, 82, 139]),
        (0.50, [33, 145, 140]),
        (0.75, [94, 201, 98]),
        (1.00, [253, 231, 37]),
    ];
    let t = t.clamp(0.0, 1.0);
    let mut rgb = STOPS[STOPS.len() - 1].1;
    for pair in STOPS.windows(2) {
        let (t0, c0) = pair[0];
        let (t1, c1) = pair[1];
        if t <= t1 {
            let f = if t1 > t0 { (t - t0) / (t1 - t0) } else { 0.0 };
            rgb = [
                (c0[0] as f64 + f * (c1[0] as f64 - c0[0] as f64)).round() as u8,
                (c0[1] as f64 + f * (c1[1] as f64 - c0[1] as f64)).round() as u8,
                (c0[2] as f64 + f * (c1[2] as f64 - c0[2] as f64)).round() as u8,
            ];
            break;
        }
    }
    format!("#{:02x}{:02x}{:02x}", rgb[0], rgb[1], rgb[2])
}

pub(crate) fn require_length(segments: &[Segment], n: usize) -> Result<()> {
    if let Some(bad) = segments.iter().find(|s| s.len() != n) {
        return Err(Error::invalid(format!(
            "expected length-{n} segments, got length {}",
            bad.len()
        )));
    }
    Ok(())
}

/// Edge stroke width: affine map from transition count onto [0.5, 6] px
/// across the retained-count range.
pub(crate) fn edge_width(count: usize, min_count: usize, max_count: usize) -> f64 {
    if max_count == min_count {
        return 0.5 + (6.0 - 0.5) / 2.0;
    }
    let f = (count - min_count) as f64 / (max_count - min_count) as f64;
    0.5 + f * (6.0 - 0.5)
}

/// Panel of the drawing area in pixel coordinates.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Panel {
    pub left: f64,
    pub right: f64,
    pub top: f64,
    pub bottom: f64,
}

impl Panel {
    pub fn from_spec(spec: &PlotSpec) -> Self {
        Panel {
            left: spec.margins.left,
            right: spec.width - spec.margins.right,
            top: spec.margins.top,
            bottom: spec.height - spec.margins.bottom,
        }
    }
}

const AXIS_STYLE: &str = "fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"";
const TICK_TEXT: &str = "fill=\"#333333\"";

/// Frame, x ticks, and optionally y ticks, plus axis labels.
pub(crate) fn draw_axes(
    svg: &mut svg::Svg,
    panel: &Panel,
    x: &LinearScale,
    y: &LinearScale,
    x_label: &str,
    y_label: &str,
    y_ticks: bool,
) {
    svg.rect(
        panel.left,
        panel.top,
        panel.right - panel.left,
        panel.bottom - panel.top,
        AXIS_STYLE,
    );
    for (t, label) in scale::tick_marks(x.domain(), 6) {
        let px = x.to_px(t);
        svg.line(px, panel.bottom, px, panel.bottom + 4.0, AXIS_STYLE);
        svg.text(px, panel.bottom + 16.0, "middle", 10.0, TICK_TEXT, &label);
    }
    if y_ticks {
        for (t, label) in scale::tick_marks(y.domain(), 6) {
            let py = y.to_px(t);
            svg.line(panel.left - 4.0, py, panel.left, py, AXIS_STYLE);
            svg.text(panel.left - 7.0, py + 3.5, "end", 10.0, TICK_TEXT, &label);
        }
    }
    if !x_label.is_empty() {
        svg.text(
            (panel.left + panel.right) / 2.0,
            panel.bottom + 34.0,
            "middle",
            12.0,
            TICK_TEXT,
            x_label,
        );
    }
    if !y_label.is_empty() {
        svg.vtext(
            panel.left - 40.0,
            (panel.top + panel.bottom) / 2.0,
            12.0,
            TICK_TEXT,
            y_label,
        );
    }
}

/// Duration of a segment for plotting: seconds, or quanta when a quantum
/// is configured.
pub(crate) fn plot_duration(seg: &Segment, quantum: Option<f64>) -> f64 {
    match quantum {
        Some(q) => seg.duration() / q,
        None => seg.duration(),
    }
}
