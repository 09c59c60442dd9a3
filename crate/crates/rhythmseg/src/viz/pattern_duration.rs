//! Pattern-duration plots: rhythm ratio horizontally, duration vertically
//! (in quanta when a quantum is configured), with marginal density curves,
//! optional cluster colors, integer-ratio annotations, duration boundary
//! curves, and a transition-network overlay.

use super::ratio::ratio_density;
use super::scale::LinearScale;
use super::svg::Svg;
use super::{
    cluster_color, draw_axes, edge_width, plot_duration, require_length, Panel, PlotSpec,
    NOISE_COLOR, TRAJECTORY_STYLE,
};
use crate::cluster::{ClusterLabeling, NOISE};
use crate::error::{Error, Result};
use crate::kde::kde;
use crate::network::TransitionNetwork;
use crate::segment::{successor_pairs, Segment};

const MARGINAL_SIZE: f64 = 58.0;
const MARGINAL_GAP: f64 = 6.0;
const MIN_BOUNDARY_STYLE: &str =
    "fill=\"none\" stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"6 4\"";
const MAX_BOUNDARY_STYLE: &str =
    "fill=\"none\" stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"1.5 3\"";

pub fn pattern_duration_plot(
    segments: &[Segment],
    labeling: Option<&ClusterLabeling>,
    network: Option<&TransitionNetwork>,
    spec: &PlotSpec,
) -> Result<String> {
    require_length(segments, 2)?;
    if let Some(l) = labeling {
        if l.labels.len() != segments.len() {
            return Err(Error::invalid(format!(
                "labeling covers {} segments but {} were given",
                l.labels.len(),
                segments.len()
            )));
        }
    }
    let mut svg = Svg::new(spec.width, spec.height);
    let outer = Panel::from_spec(spec);
    let main = Panel {
        left: outer.left,
        right: outer.right - MARGINAL_SIZE - MARGINAL_GAP,
        top: outer.top + MARGINAL_SIZE + MARGINAL_GAP,
        bottom: outer.bottom,
    };

    let durations: Vec<f64> = segments
        .iter()
        .map(|s| plot_duration(s, spec.quantum))
        .collect();
    let dmax = durations.iter().copied().fold(0.0_f64, f64::max);
    let x = LinearScale::new(spec.x_range.unwrap_or((0.0, 1.0)), (main.left, main.right));
    let y = LinearScale::new(
        spec.y_range
            .unwrap_or((0.0, if dmax > 0.0 { dmax * 1.08 } else { 1.0 })),
        (main.bottom, main.top),
    );
    let y_label = if spec.quantum.is_some() {
        "duration (quanta)"
    } else {
        "duration (s)"
    };
    draw_axes(&mut svg, &main, &x, &y, "rhythm ratio r", y_label, true);

    // Background trajectories, drawn with the network overlay.
    if network.is_some() {
        for (i, j) in successor_pairs(segments) {
            svg.line(
                x.to_px(ratio_of(&segments[i])),
                y.to_px(durations[i]),
                x.to_px(ratio_of(&segments[j])),
                y.to_px(durations[j]),
                TRAJECTORY_STYLE,
            );
        }
    }

    if let Some((i_min, i_max)) = spec.interval_bounds {
        draw_boundary(&mut svg, &x, &y, spec.quantum, i_min, true);
        draw_boundary(&mut svg, &x, &y, spec.quantum, i_max, false);
    }

    // Scatter: cluster colors when a labeling is given, noise as gray
    // plus signs.
    for (k, seg) in segments.iter().enumerate() {
        let px = x.to_px(ratio_of(seg));
        let py = y.to_px(durations[k]);
        match labeling.map(|l| l.labels[k]) {
            Some(NOISE) => {
                let style = format!("fill=\"none\" stroke=\"{NOISE_COLOR}\" stroke-width=\"1\"");
                svg.plus(px, py, spec.point_radius + 0.8, &style);
            }
            Some(id) => {
                let style = format!("fill=\"{}\" fill-opacity=\"0.75\"", cluster_color(id));
                svg.circle(px, py, spec.point_radius, &style);
            }
            None => {
                svg.circle(
                    px,
                    py,
                    spec.point_radius,
                    "fill=\"#1f77b4\" fill-opacity=\"0.7\"",
                );
            }
        }
    }

    // Integer-ratio annotations m:k at (m/(m+k), m+k) quanta, unreduced.
    if spec.quantum.is_some() {
        let (y0, y1) = y.domain();
        for m in 1..=spec.annotation_max {
            for k in 1..=spec.annotation_max {
                let total = (m + k) as f64;
                if total < y0 || total > y1 {
                    continue;
                }
                let px = x.to_px(m as f64 / total);
                let py = y.to_px(total);
                svg.plus(
                    px,
                    py,
                    2.0,
                    "fill=\"none\" stroke=\"#444444\" stroke-width=\"0.7\"",
                );
                svg.text(
                    px,
                    py - 4.0,
                    "middle",
                    8.0,
                    "fill=\"#444444\"",
                    &format!("{m}:{k}"),
                );
            }
        }
    }

    if let Some(net) = network {
        draw_network(&mut svg, net, &x, &y, spec);
    }

    // Marginal densities: rhythm ratio on top, duration on the side.
    if segments.len() >= 2 {
        let top = Panel {
            left: main.left,
            right: main.right,
            top: outer.top,
            bottom: outer.top + MARGINAL_SIZE,
        };
        let ratio_curve = ratio_density(segments, spec.bandwidth)?;
        draw_marginal_top(&mut svg, &ratio_curve.grid, &ratio_curve.density, &x, &top);

        let side = Panel {
            left: main.right + MARGINAL_GAP,
            right: outer.right,
            top: main.top,
            bottom: main.bottom,
        };
        let dcurve = kde(&durations, spec.bandwidth, y.domain(), 512)?;
        draw_marginal_side(&mut svg, &dcurve.grid, &dcurve.density, &y, &side);
    }

    Ok(svg.finish())
}

fn ratio_of(seg: &Segment) -> f64 {
    let v = seg.values();
    v[0] / (v[0] + v[1])
}

/// Duration boundary from an interval bound: min-duration (dashed) at
/// d(r) = bound / min(r, 1-r), max-duration (dotted) at
/// d(r) = bound / max(r, 1-r).
fn draw_boundary(
    svg: &mut Svg,
    x: &LinearScale,
    y: &LinearScale,
    quantum: Option<f64>,
    bound: f64,
    minimum: bool,
) {
    let (y0, y1) = y.domain();
    let mut run: Vec<(f64, f64)> = Vec::new();
    let mut runs: Vec<Vec<(f64, f64)>> = Vec::new();
    let steps = 400;
    for i in 1..steps {
        let r = i as f64 / steps as f64;
        let denom = if minimum {
            r.min(1.0 - r)
        } else {
            r.max(1.0 - r)
        };
        let mut d = bound / denom;
        if let Some(q) = quantum {
            d /= q;
        }
        if d >= y0 && d <= y1 {
            run.push((x.to_px(r), y.to_px(d)));
        } else if !run.is_empty() {
            runs.push(std::mem::take(&mut run));
        }
    }
    if !run.is_empty() {
        runs.push(run);
    }
    let style = if minimum {
        MIN_BOUNDARY_STYLE
    } else {
        MAX_BOUNDARY_STYLE
    };
    for r in &runs {
        if r.len() >= 2 {
            svg.polyline(r, style);
        }
    }
}

fn draw_network(
    svg: &mut Svg,
    net: &TransitionNetwork,
    x: &LinearScale,
    y: &LinearScale,
    spec: &PlotSpec,
) {
    let position = |id: i32| -> Option<(f64, f64)> {
        net.node(id).map(|n| {
            let r = n.medoid.pattern().weights()[0];
            let mut d = n.medoid.duration();
            if let Some(q) = spec.quantum {
                d /= q;
            }
            (x.to_px(r), y.to_px(d))
        })
    };
    let min_count = net.edges.iter().map(|e| e.count).min().unwrap_or(0);
    let max_count = net.edges.iter().map(|e| e.count).max().unwrap_or(0);
    for e in &net.edges {
        let (Some(a), Some(b)) = (position(e.from), position(e.to)) else {
            continue;
        };
        let width = edge_width(e.count, min_count, max_count);
        if e.from == e.to {
            // Self-loop drawn as a small circle above the node.
            let style = format!(
                "fill=\"none\" stroke=\"#333333\" stroke-opacity=\"0.65\" stroke-width=\"{width:.3}\""
            );
            svg.circle(a.0, a.1 - 9.0, 7.0, &style);
        } else {
            let style =
                format!("stroke=\"#333333\" stroke-opacity=\"0.65\" stroke-width=\"{width:.3}\"");
            svg.line(a.0, a.1, b.0, b.1, &style);
        }
    }
    for n in &net.nodes {
        let Some(p) = position(n.id) else { continue };
        let style = format!(
            "fill=\"{}\" stroke=\"#ffffff\" stroke-width=\"1.2\"",
            cluster_color(n.id)
        );
        svg.circle(p.0, p.1, 4.5, &style);
        if let Some(label) = &n.label {
            svg.text(
                p.0 + 7.0,
                p.1 - 5.0,
                "start",
                9.0,
                "fill=\"#222222\"",
                label,
            );
        }
    }
}

fn draw_marginal_top(svg: &mut Svg, grid: &[f64], density: &[f64], x: &LinearScale, panel: &Panel) {
    let peak = density.iter().copied().fold(0.0_f64, f64::max);
    if peak <= 0.0 {
        return;
    }
    let scale = LinearScale::new((0.0, peak), (panel.bottom, panel.top));
    let points: Vec<(f64, f64)> = grid
        .iter()
        .zip(density)
        .map(|(&g, &d)| (x.to_px(g), scale.to_px(d)))
        .collect();
    svg.line(
        panel.left,
        panel.bottom,
        panel.right,
        panel.bottom,
        "stroke=\"#999999\" stroke-width=\"0.7\"",
    );
    svg.polyline(
        &points,
        "fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\"",
    );
}

fn draw_marginal_side(
    svg: &mut Svg,
    grid: &[f64],
    density: &[f64],
    y: &LinearScale,
    panel: &Panel,
) {
    let peak = density.iter().copied().fold(0.0_f64, f64::max);
    if peak <= 0.0 {
        return;
    }
    let scale = LinearScale::new((0.0, peak), (panel.left, panel.right));
    let points: Vec<(f64, f64)> = grid
        .iter()
        .zip(density)
        .map(|(&g, &d)| (scale.to_px(d), y.to_px(g)))
        .collect();
    svg.line(
        panel.left,
        panel.top,
        panel.left,
        panel.bottom,
        "stroke=\"#999999\" stroke-width=\"0.7\"",
    );
    svg.polyline(
        &points,
        "fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\"",
    );
}
