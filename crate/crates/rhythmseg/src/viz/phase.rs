//! Phase (lag) plots: first interval against second interval, optionally
//! with trajectory lines joining successive segments.

use super::scale::LinearScale;
use super::svg::Svg;
use super::{draw_axes, require_length, Panel, PlotSpec, TRAJECTORY_STYLE};
use crate::error::Result;
use crate::segment::{successor_pairs, Segment};

pub fn phase_plot(segments: &[Segment], spec: &PlotSpec, trajectories: bool) -> Result<String> {
    require_length(segments, 2)?;
    let mut svg = Svg::new(spec.width, spec.height);
    let panel = Panel::from_spec(spec);
    let max = segments
        .iter()
        .flat_map(|s| s.values().iter().copied())
        .fold(0.0_f64, f64::max);
    let lim = if max > 0.0 { 1.05 * max } else { 1.0 };
    let x = LinearScale::new(
        spec.x_range.unwrap_or((0.0, lim)),
        (panel.left, panel.right),
    );
    let y = LinearScale::new(
        spec.y_range.unwrap_or((0.0, lim)),
        (panel.bottom, panel.top),
    );
    draw_axes(
        &mut svg,
        &panel,
        &x,
        &y,
        "first interval (s)",
        "second interval (s)",
        true,
    );
    if trajectories {
        for (i, j) in successor_pairs(segments) {
            let a = segments[i].values();
            let b = segments[j].values();
            svg.line(
                x.to_px(a[0]),
                y.to_px(a[1]),
                x.to_px(b[0]),
                y.to_px(b[1]),
                TRAJECTORY_STYLE,
            );
        }
    }
    let style = "fill=\"#1f77b4\" fill-opacity=\"0.7\"";
    for s in segments {
        let v = s.values();
        svg.circle(x.to_px(v[0]), y.to_px(v[1]), spec.point_radius, style);
    }
    Ok(svg.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::extract_segments;
    use crate::sequence::{IntervalSequence, SequenceMeta};

    #[test]
    fn single_segment_yields_one_marker() {
        let segments = vec![Segment::new(vec![1.0, 2.0]).unwrap()];
        let svg = phase_plot(&segments, &PlotSpec::default(), false).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
    }

    #[test]
    fn quantal_segments_sit_on_a_grid_of_positions() {
        let q = 0.2;
        let seq = crate::synth::gen_quantal_uniform(300, q, 4, 0.0, 6).unwrap();
        let segments = extract_segments(&seq, 2).unwrap();
        // Every marker coordinate is (m*q, k*q) for integer m, k.
        for s in &segments {
            for &v in s.values() {
                assert_eq!(v, (v / q).round() * q);
            }
        }
        let svg = phase_plot(&segments, &PlotSpec::default(), false).unwrap();
        assert_eq!(svg.matches("<circle").count(), segments.len());
    }

    #[test]
    fn trajectory_count_matches_successive_pairs() {
        let seq =
            IntervalSequence::new(SequenceMeta::new("s"), vec![0.5, 1.0, 0.7, 0.9, 1.1]).unwrap();
        let segments = extract_segments(&seq, 2).unwrap();
        let svg = phase_plot(&segments, &PlotSpec::default(), true).unwrap();
        let expected = successor_pairs(&segments).len();
        let trajectory_lines = svg
            .lines()
            .filter(|l| l.starts_with("<line") && l.contains("#cccccc"))
            .count();
        assert_eq!(trajectory_lines, expected);
    }
}
