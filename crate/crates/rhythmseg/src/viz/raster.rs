//! Raster plots: segments sorted by duration, one row each, the shorter
//! interval to the left of a center axis and the longer to the right.

use super::scale::LinearScale;
use super::svg::Svg;
use super::{draw_axes, require_length, Panel, PlotSpec};
use crate::error::Result;
use crate::segment::Segment;

pub fn raster_plot(segments: &[Segment], spec: &PlotSpec) -> Result<String> {
    require_length(segments, 2)?;
    let mut svg = Svg::new(spec.width, spec.height);
    let panel = Panel::from_spec(spec);
    if segments.is_empty() {
        let x = LinearScale::new(
            spec.x_range.unwrap_or((-1.0, 1.0)),
            (panel.left, panel.right),
        );
        let y = LinearScale::new((0.0, 1.0), (panel.bottom, panel.top));
        draw_axes(&mut svg, &panel, &x, &y, "interval (s)", "", false);
        return Ok(svg.finish());
    }

    // Slowest segments on top: ascending duration, bottom to top. Ties keep
    // input order.
    let mut order: Vec<usize> = (0..segments.len()).collect();
    order.sort_by(|&a, &b| segments[a].duration().total_cmp(&segments[b].duration()));

    let longest = segments
        .iter()
        .map(|s| s.values()[0].max(s.values()[1]))
        .fold(0.0_f64, f64::max);
    let x_domain = spec.x_range.unwrap_or((-1.05 * longest, 1.05 * longest));
    let x = LinearScale::new(x_domain, (panel.left, panel.right));
    // Row rank is the vertical position; the axis carries no scale marks.
    let y_domain = (-0.5, segments.len() as f64 - 0.5);
    let y = LinearScale::new(y_domain, (panel.bottom, panel.top));

    draw_axes(&mut svg, &panel, &x, &y, "interval (s)", "", false);
    // Center axis separating the short and long interval of each row.
    svg.line(
        x.to_px(0.0),
        panel.top,
        x.to_px(0.0),
        panel.bottom,
        "stroke=\"#bbbbbb\" stroke-width=\"0.8\"",
    );

    let style = "fill=\"#1f77b4\" fill-opacity=\"0.7\"";
    for (rank, &i) in order.iter().enumerate() {
        let v = segments[i].values();
        let (short, long) = (v[0].min(v[1]), v[0].max(v[1]));
        let py = y.to_px(rank as f64);
        svg.circle(x.to_px(-short), py, spec.point_radius, style);
        svg.circle(x.to_px(long), py, spec.point_radius, style);
    }
    Ok(svg.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::extract_segments;
    use crate::synth;

    #[test]
    fn rows_are_sorted_and_straddle_the_center() {
        let seq = synth::gen_uniform(301, 0.2, 2.0, 5).unwrap();
        let segments = extract_segments(&seq, 2).unwrap();
        let mut order: Vec<usize> = (0..segments.len()).collect();
        order.sort_by(|&a, &b| segments[a].duration().total_cmp(&segments[b].duration()));
        for w in order.windows(2) {
            assert!(segments[w[0]].duration() <= segments[w[1]].duration());
        }
        // Left coordinate is never positive, right never negative.
        for s in &segments {
            let v = s.values();
            assert!(-v[0].min(v[1]) <= 0.0);
            assert!(v[0].max(v[1]) >= 0.0);
        }
        let svg = raster_plot(&segments, &PlotSpec::default()).unwrap();
        assert!(svg.contains("<circle"));
    }

    #[test]
    fn isochronous_rows_are_symmetric() {
        let segments = vec![Segment::new(vec![0.7, 0.7]).unwrap()];
        let spec = PlotSpec::default();
        let svg = raster_plot(&segments, &spec).unwrap();
        // One row, two markers equidistant from the center axis.
        let x = LinearScale::new(
            (-1.05 * 0.7, 1.05 * 0.7),
            (spec.margins.left, spec.width - spec.margins.right),
        );
        let center = x.to_px(0.0);
        let left = x.to_px(-0.7);
        let right = x.to_px(0.7);
        assert!((center - left - (right - center)).abs() < 1e-9);
        assert_eq!(svg.matches("<circle").count(), 2);
    }
}
