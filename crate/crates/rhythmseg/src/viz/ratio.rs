//! Ratio plots: the distribution of rhythm ratios over the rhythm line,
//! estimated with a Gaussian kernel. A ratio plot is the marginal density
//! of a pattern-duration plot.

use super::scale::LinearScale;
use super::svg::Svg;
use super::{draw_axes, require_length, Panel, PlotSpec};
use crate::error::{Error, Result};
use crate::kde::{kde, Bandwidth, DensityCurve, DEFAULT_GRID_POINTS};
use crate::segment::Segment;

/// Kernel density of the rhythm ratios on [0, 1]. This exact curve is the
/// top marginal of the pattern-duration plot at the same bandwidth.
pub fn ratio_density(segments: &[Segment], bandwidth: Bandwidth) -> Result<DensityCurve> {
    require_length(segments, 2)?;
    if segments.len() < 2 {
        return Err(Error::invalid(format!(
            "ratio density needs at least 2 segments, got {}",
            segments.len()
        )));
    }
    let ratios: Vec<f64> = segments
        .iter()
        .map(|s| s.normalize().pattern().weights()[0])
        .collect();
    kde(&ratios, bandwidth, (0.0, 1.0), DEFAULT_GRID_POINTS)
}

pub fn ratio_plot(segments: &[Segment], spec: &PlotSpec) -> Result<String> {
    let curve = ratio_density(segments, spec.bandwidth)?;
    let mut svg = Svg::new(spec.width, spec.height);
    let panel = Panel::from_spec(spec);
    let peak = curve.density.iter().copied().fold(0.0_f64, f64::max);
    let x = LinearScale::new((0.0, 1.0), (panel.left, panel.right));
    let y = LinearScale::new(
        spec.y_range.unwrap_or((0.0, peak * 1.08)),
        (panel.bottom, panel.top),
    );
    draw_axes(&mut svg, &panel, &x, &y, "rhythm ratio r", "density", true);
    // Isochrony reference.
    svg.line(
        x.to_px(0.5),
        panel.top,
        x.to_px(0.5),
        panel.bottom,
        "stroke=\"#999999\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\"",
    );
    let points: Vec<(f64, f64)> = curve
        .grid
        .iter()
        .zip(&curve.density)
        .map(|(&g, &d)| (x.to_px(g), y.to_px(d)))
        .collect();
    svg.polyline(
        &points,
        "fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"",
    );
    Ok(svg.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::extract_segments;
    use crate::synth;

    #[test]
    fn symmetric_data_gives_a_symmetric_curve() {
        // Every (a, b) paired with (b, a).
        let mut segments = Vec::new();
        for k in 0..200 {
            let a = 0.3 + 0.003 * k as f64;
            let b = 1.1 - 0.002 * k as f64;
            segments.push(Segment::new(vec![a, b]).unwrap());
            segments.push(Segment::new(vec![b, a]).unwrap());
        }
        let curve = ratio_density(&segments, Bandwidth::Fixed(0.05)).unwrap();
        let n = curve.density.len();
        for i in 0..n / 2 {
            let diff = (curve.density[i] - curve.density[n - 1 - i]).abs();
            assert!(diff < 1e-6, "asymmetry {diff} at index {i}");
        }
    }

    #[test]
    fn isochronous_data_peaks_at_half() {
        // Every ratio is exactly 0.5, so pick a fixed bandwidth.
        let segments: Vec<Segment> = (0..100)
            .map(|k| {
                let c = 0.5 + 0.001 * (k % 7) as f64;
                Segment::new(vec![c, c]).unwrap()
            })
            .collect();
        let curve = ratio_density(&segments, Bandwidth::Fixed(0.05)).unwrap();
        assert!((curve.peak() - 0.5).abs() < 0.01);
    }

    #[test]
    fn repeated_template_modes_are_asymmetric() {
        let template = synth::RepeatTemplate::new(vec![1, 3, 9], 1.0, 0.02, 100).unwrap();
        let seq = synth::gen_repeated(&template, 4).unwrap();
        let segments = extract_segments(&seq, 2).unwrap();
        let curve = ratio_density(&segments, Bandwidth::Fixed(0.02)).unwrap();
        let density_at = |r: f64| {
            let i = (r * (curve.grid.len() - 1) as f64).round() as usize;
            curve.density[i]
        };
        // Modes near 0.25 and 0.90; mirrors suppressed.
        assert!(density_at(0.25) > 10.0 * density_at(0.75));
        assert!(density_at(0.90) > 10.0 * density_at(0.10));
    }
}
