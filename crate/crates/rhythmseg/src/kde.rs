//! One-dimensional Gaussian kernel density estimation.

use crate::error::{Error, Result};

/// Default number of grid points for density curves.
pub const DEFAULT_GRID_POINTS: usize = 512;

/// Kernel bandwidth: fixed, or Silverman's rule of thumb.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bandwidth {
    Auto,
    Fixed(f64),
}

/// A density estimate evaluated on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityCurve {
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
    pub bandwidth: f64,
}

impl DensityCurve {
    /// Trapezoidal integral over the grid; close to one when the data lie
    /// well inside the grid range.
    pub fn integral(&self) -> f64 {
        self.grid
            .windows(2)
            .zip(self.density.windows(2))
            .map(|(x, y)| 0.5 * (y[0] + y[1]) * (x[1] - x[0]))
            .sum()
    }

    /// Grid position of the highest density value.
    pub fn peak(&self) -> f64 {
        let mut best = 0;
        for (i, &d) in self.density.iter().enumerate() {
            if d > self.density[best] {
                best = i;
            }
        }
        self.grid[best]
    }
}

/// Silverman's rule of thumb: `0.9 min(sd, iqr / 1.34) n^(-1/5)`.
pub fn silverman_bandwidth(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    if values.len() < 2 {
        return 1e-9;
    }
    let mean = values.iter().sum::<f64>() / n;
    let sd = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let iqr = quantile(&sorted, 0.75) - quantile(&sorted, 0.25);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    let h = 0.9 * spread * n.powf(-0.2);
    if h > 0.0 {
        h
    } else {
        1e-9 // degenerate (constant) data
    }
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

/// Gaussian-kernel density estimate on `points` uniform grid positions
/// spanning `range`.
pub fn kde(
    values: &[f64],
    bandwidth: Bandwidth,
    range: (f64, f64),
    points: usize,
) -> Result<DensityCurve> {
    if values.len() < 2 {
        return Err(Error::invalid(format!(
            "kde needs at least 2 values, got {}",
            values.len()
        )));
    }
    if !range.0.is_finite() || !range.1.is_finite() || range.1 <= range.0 {
        return Err(Error::invalid(format!(
            "kde range must satisfy lo < hi, got ({}, {})",
            range.0, range.1
        )));
    }
    if points < 2 {
        return Err(Error::invalid("kde grid needs at least 2 points"));
    }
    let h = match bandwidth {
        Bandwidth::Fixed(h) if h.is_finite() && h > 0.0 => h,
        Bandwidth::Fixed(h) => {
            return Err(Error::invalid(format!(
                "bandwidth must be finite and > 0, got {h}"
            )))
        }
        Bandwidth::Auto => silverman_bandwidth(values),
    };
    let step = (range.1 - range.0) / (points - 1) as f64;
    let norm = 1.0 / (values.len() as f64 * h * (2.0 * std::f64::consts::PI).sqrt());
    let mut grid = Vec::with_capacity(points);
    let mut density = Vec::with_capacity(points);
    for i in 0..points {
        let x = range.0 + i as f64 * step;
        let sum: f64 = values
            .iter()
            .map(|v| {
                let z = (x - v) / h;
                (-0.5 * z * z).exp()
            })
            .sum();
        grid.push(x);
        density.push(norm * sum);
    }
    Ok(DensityCurve {
        grid,
        density,
        bandwidth: h,
    })
}
