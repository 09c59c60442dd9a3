//! Rhythm-triangle plots: length-3 patterns projected into an equilateral
//! triangle, colored by segment duration.
//!
//! Corner order: the first weight pulls toward the bottom-left corner, the
//! second toward the bottom-right, the third toward the top.

use super::scale::tick_label;
use super::svg::Svg;
use super::{
    cluster_color, duration_color, edge_width, plot_duration, require_length, Panel, PlotSpec,
};
use crate::cluster::{ClusterLabeling, NOISE};
use crate::error::{Error, Result};
use crate::network::TransitionNetwork;
use crate::segment::{Pattern, Segment};

/// Pixel positions of the triangle corners for a given spec.
#[derive(Debug, Clone, Copy)]
pub struct TriangleLayout {
    /// Bottom-left corner: full weight on the first interval.
    pub a: (f64, f64),
    /// Bottom-right corner: full weight on the second interval.
    pub b: (f64, f64),
    /// Top corner: full weight on the third interval.
    pub c: (f64, f64),
}

impl TriangleLayout {
    pub fn from_spec(spec: &PlotSpec) -> Self {
        let panel = Panel::from_spec(spec);
        let avail_w = panel.right - panel.left;
        let avail_h = panel.bottom - panel.top;
        let height_factor = 3.0_f64.sqrt() / 2.0;
        let side = avail_w.min(avail_h / height_factor);
        let cx = (panel.left + panel.right) / 2.0;
        let bottom = panel.top + (avail_h + side * height_factor) / 2.0;
        TriangleLayout {
            a: (cx - side / 2.0, bottom),
            b: (cx + side / 2.0, bottom),
            c: (cx, bottom - side * height_factor),
        }
    }

    /// Barycentric projection of a pattern onto the triangle.
    pub fn project(&self, pattern: &Pattern) -> (f64, f64) {
        let w = pattern.weights();
        (
            w[0] * self.a.0 + w[1] * self.b.0 + w[2] * self.c.0,
            w[0] * self.a.1 + w[1] * self.b.1 + w[2] * self.c.1,
        )
    }

    /// Pixel position of the isochronous pattern (1/3, 1/3, 1/3).
    pub fn centroid(&self) -> (f64, f64) {
        (
            (self.a.0 + self.b.0 + self.c.0) / 3.0,
            (self.a.1 + self.b.1 + self.c.1) / 3.0,
        )
    }
}

pub fn triangle_plot(
    segments: &[Segment],
    labeling: Option<&ClusterLabeling>,
    network: Option<&TransitionNetwork>,
    spec: &PlotSpec,
) -> Result<String> {
    require_length(segments, 3)?;
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
    let layout = TriangleLayout::from_spec(spec);
    svg.polygon(
        &[layout.a, layout.b, layout.c],
        "fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"",
    );
    svg.text(
        layout.a.0 - 6.0,
        layout.a.1 + 14.0,
        "middle",
        10.0,
        "fill=\"#333333\"",
        "x1",
    );
    svg.text(
        layout.b.0 + 6.0,
        layout.b.1 + 14.0,
        "middle",
        10.0,
        "fill=\"#333333\"",
        "x2",
    );
    svg.text(
        layout.c.0,
        layout.c.1 - 7.0,
        "middle",
        10.0,
        "fill=\"#333333\"",
        "x3",
    );

    let durations: Vec<f64> = segments
        .iter()
        .map(|s| plot_duration(s, spec.quantum))
        .collect();
    let dmin = durations.iter().copied().fold(f64::INFINITY, f64::min);
    let dmax = durations.iter().copied().fold(0.0_f64, f64::max);
    let color_of = |d: f64| {
        let t = if dmax > dmin {
            (d - dmin) / (dmax - dmin)
        } else {
            0.5
        };
        duration_color(t)
    };

    for (k, seg) in segments.iter().enumerate() {
        let pd = seg.normalize();
        let (px, py) = layout.project(pd.pattern());
        if labeling.map(|l| l.labels[k]) == Some(NOISE) {
            let style = format!(
                "fill=\"none\" stroke=\"{}\" stroke-width=\"1\"",
                super::NOISE_COLOR
            );
            svg.plus(px, py, spec.point_radius + 0.8, &style);
        } else {
            let style = format!("fill=\"{}\" fill-opacity=\"0.8\"", color_of(durations[k]));
            svg.circle(px, py, spec.point_radius, &style);
        }
    }

    // Cluster hulls and medoid labels.
    if let Some(l) = labeling {
        for summary in &l.clusters {
            let members: Vec<(f64, f64)> = l
                .labels
                .iter()
                .enumerate()
                .filter(|&(_, &label)| label == summary.id)
                .map(|(k, _)| layout.project(segments[k].normalize().pattern()))
                .collect();
            let hull = convex_hull(&members);
            if hull.len() >= 3 {
                let style = format!(
                    "fill=\"none\" stroke=\"{}\" stroke-width=\"1\" stroke-opacity=\"0.8\"",
                    cluster_color(summary.id)
                );
                svg.polygon(&hull, &style);
            }
            let (mx, my) = layout.project(summary.medoid_pd.pattern());
            let label = match spec.quantum {
                Some(q) => crate::quantal::integer_ratio_label(
                    &summary.medoid,
                    q,
                    crate::quantal::DEFAULT_THETA,
                )?
                .unwrap_or_else(|| format!("c{}", summary.id)),
                None => format!("c{}", summary.id),
            };
            svg.text(mx + 6.0, my - 6.0, "start", 9.0, "fill=\"#222222\"", &label);
        }
    }

    if let Some(net) = network {
        let position = |id: i32| net.node(id).map(|n| layout.project(n.medoid.pattern()));
        let min_count = net.edges.iter().map(|e| e.count).min().unwrap_or(0);
        let max_count = net.edges.iter().map(|e| e.count).max().unwrap_or(0);
        for e in &net.edges {
            let (Some(a), Some(b)) = (position(e.from), position(e.to)) else {
                continue;
            };
            let width = edge_width(e.count, min_count, max_count);
            if e.from == e.to {
                let style = format!(
                    "fill=\"none\" stroke=\"#333333\" stroke-opacity=\"0.65\" stroke-width=\"{width:.3}\""
                );
                svg.circle(a.0, a.1 - 9.0, 7.0, &style);
            } else {
                let style = format!(
                    "stroke=\"#333333\" stroke-opacity=\"0.65\" stroke-width=\"{width:.3}\""
                );
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
        }
    }

    // Isochrony marker at the centroid.
    let (cx, cy) = layout.centroid();
    svg.plus(
        cx,
        cy,
        5.0,
        "fill=\"none\" stroke=\"#222222\" stroke-width=\"1.2\"",
    );

    // Color legend for the duration range.
    if dmax > dmin {
        let unit = if spec.quantum.is_some() {
            "quanta"
        } else {
            "s"
        };
        svg.text(
            layout.b.0,
            layout.c.1 + 12.0,
            "end",
            9.0,
            "fill=\"#333333\"",
            &format!(
                "duration {} to {} {unit}",
                tick_label((dmin * 100.0).round() / 100.0),
                tick_label((dmax * 100.0).round() / 100.0)
            ),
        );
    }
    Ok(svg.finish())
}

/// Andrew's monotone chain; returns hull vertices in counter-clockwise
/// order (pixel coordinates, y pointing down).
fn convex_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    if points.len() < 3 {
        return points.to_vec();
    }
    let mut pts = points.to_vec();
    pts.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::extract_segments;
    use crate::synth;

    #[test]
    fn isochronous_pattern_projects_to_the_centroid() {
        let layout = TriangleLayout::from_spec(&PlotSpec::default());
        let third = 1.0 / 3.0;
        let p = Pattern::new(vec![third, third, third]).unwrap();
        let (px, py) = layout.project(&p);
        let (cx, cy) = layout.centroid();
        assert!((px - cx).abs() < 0.5 && (py - cy).abs() < 0.5);
    }

    #[test]
    fn crosshair_example_reads_off_correctly() {
        // Pattern (.25, .25, .5): halfway up toward the top corner on the
        // median through the bottom edge midpoint.
        let layout = TriangleLayout::from_spec(&PlotSpec::default());
        let p = Pattern::new(vec![0.25, 0.25, 0.5]).unwrap();
        let (px, py) = layout.project(&p);
        let expected = (
            0.25 * layout.a.0 + 0.25 * layout.b.0 + 0.5 * layout.c.0,
            0.25 * layout.a.1 + 0.25 * layout.b.1 + 0.5 * layout.c.1,
        );
        assert_eq!((px, py), expected);
        // Equidistant from the two bottom corners.
        let da = ((px - layout.a.0).powi(2) + (py - layout.a.1).powi(2)).sqrt();
        let db = ((px - layout.b.0).powi(2) + (py - layout.b.1).powi(2)).sqrt();
        assert!((da - db).abs() < 1e-9);
    }

    #[test]
    fn repeated_data_has_no_points_at_the_centroid() {
        let template = synth::RepeatTemplate::new(vec![3, 3, 2, 4, 1], 0.5, 0.025, 50).unwrap();
        let seq = synth::gen_repeated(&template, 2).unwrap();
        let segments = extract_segments(&seq, 3).unwrap();
        let third = 1.0 / 3.0;
        let center = Pattern::new(vec![third, third, third]).unwrap();
        for s in &segments {
            let pd = s.normalize();
            let d = crate::segment::pattern_distance(pd.pattern(), &center).unwrap();
            assert!(
                d > 0.05,
                "pattern {:?} too close to isochrony",
                pd.pattern()
            );
        }
        let svg = triangle_plot(&segments, None, None, &PlotSpec::default()).unwrap();
        assert!(svg.contains("<polygon"));
    }

    #[test]
    fn hull_of_a_square_has_four_vertices() {
        let pts = vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.5, 0.5)];
        assert_eq!(convex_hull(&pts).len(), 4);
    }
}
