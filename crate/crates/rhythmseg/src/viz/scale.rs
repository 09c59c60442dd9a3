/// Affine map between data coordinates and pixel coordinates.
#[derive(Debug, Clone, Copy)]
pub struct LinearScale {
    d0: f64,
    d1: f64,
    r0: f64,
    r1: f64,
}

impl LinearScale {
    pub fn new(domain: (f64, f64), range: (f64, f64)) -> Self {
        LinearScale {
            d0: domain.0,
            d1: domain.1,
            r0: range.0,
            r1: range.1,
        }
    }

    pub fn to_px(&self, v: f64) -> f64 {
        self.r0 + (v - self.d0) / (self.d1 - self.d0) * (self.r1 - self.r0)
    }

    pub fn from_px(&self, px: f64) -> f64 {
        self.d0 + (px - self.r0) / (self.r1 - self.r0) * (self.d1 - self.d0)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.d0, self.d1)
    }

    pub fn range(&self) -> (f64, f64) {
        (self.r0, self.r1)
    }
}

/// Tick positions and labels at a "nice" step (1, 2, or 5 times a power
/// of ten), aiming for roughly `target` ticks across the domain. Labels
/// carry exactly the decimals the step needs.
pub(crate) fn tick_marks(domain: (f64, f64), target: usize) -> Vec<(f64, String)> {
    let span = domain.1 - domain.0;
    if !(span > 0.0) || target == 0 {
        return Vec::new();
    }
    let raw = span / target as f64;
    let exponent = raw.log10().floor();
    let mag = 10f64.powf(exponent);
    let norm = raw / mag;
    let step = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    } * mag;
    let decimals = (-exponent).max(0.0) as usize;
    let first = (domain.0 / step).ceil() as i64;
    let last = (domain.1 / step * (1.0 + 1e-9)).floor() as i64;
    (first..=last)
        .map(|k| {
            let v = k as f64 * step;
            let label = format!("{:.decimals$}", if v == 0.0 { 0.0 } else { v });
            let label = if label.contains('.') {
                label
                    .trim_end_matches('0')
                    .trim_end_matches('.')
                    .to_string()
            } else {
                label
            };
            (v, label)
        })
        .collect()
}

/// Shortest round-trip decimal, used for legend values.
pub(crate) fn tick_label(v: f64) -> String {
    let snapped = if v.abs() < 1e-12 { 0.0 } else { v };
    format!("{snapped}")
}
