//! Minimal SVG writer with fixed element order, fixed attribute order, and
//! fixed number formatting, so identical input yields identical bytes.

/// Fixed three-decimal pixel formatting; negative zero is normalized.
pub(crate) fn fmt(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub(crate) struct Svg {
    width: f64,
    height: f64,
    body: String,
}

impl Svg {
    pub fn new(width: f64, height: f64) -> Self {
        Svg {
            width,
            height,
            body: String::new(),
        }
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, style: &str) {
        self.body.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" {style}/>\n",
            fmt(x),
            fmt(y),
            fmt(w),
            fmt(h)
        ));
    }

    pub fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, style: &str) {
        self.body.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {style}/>\n",
            fmt(x1),
            fmt(y1),
            fmt(x2),
            fmt(y2)
        ));
    }

    pub fn circle(&mut self, cx: f64, cy: f64, r: f64, style: &str) {
        self.body.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" {style}/>\n",
            fmt(cx),
            fmt(cy),
            fmt(r)
        ));
    }

    /// A plus-shaped marker with the given arm length.
    pub fn plus(&mut self, cx: f64, cy: f64, arm: f64, style: &str) {
        self.body.push_str(&format!(
            "<path d=\"M {} {} L {} {} M {} {} L {} {}\" {style}/>\n",
            fmt(cx - arm),
            fmt(cy),
            fmt(cx + arm),
            fmt(cy),
            fmt(cx),
            fmt(cy - arm),
            fmt(cx),
            fmt(cy + arm)
        ));
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], style: &str) {
        let coords: Vec<String> = points
            .iter()
            .map(|(x, y)| format!("{},{}", fmt(*x), fmt(*y)))
            .collect();
        self.body.push_str(&format!(
            "<polyline points=\"{}\" {style}/>\n",
            coords.join(" ")
        ));
    }

    pub fn polygon(&mut self, points: &[(f64, f64)], style: &str) {
        let coords: Vec<String> = points
            .iter()
            .map(|(x, y)| format!("{},{}", fmt(*x), fmt(*y)))
            .collect();
        self.body.push_str(&format!(
            "<polygon points=\"{}\" {style}/>\n",
            coords.join(" ")
        ));
    }

    pub fn text(&mut self, x: f64, y: f64, anchor: &str, size: f64, style: &str, content: &str) {
        self.body.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"{anchor}\" font-family=\"sans-serif\" font-size=\"{}\" {style}>{}</text>\n",
            fmt(x),
            fmt(y),
            fmt(size),
            escape(content)
        ));
    }

    /// Y-axis label rotated for vertical reading.
    pub fn vtext(&mut self, x: f64, y: f64, size: f64, style: &str, content: &str) {
        self.body.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"{}\" transform=\"rotate(-90 {} {})\" {style}>{}</text>\n",
            fmt(x),
            fmt(y),
            fmt(size),
            fmt(x),
            fmt(y),
            escape(content)
        ));
    }

    pub fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n{}</svg>\n",
            fmt(self.width),
            fmt(self.height),
            fmt(self.width),
            fmt(self.height),
            fmt(self.width),
            fmt(self.height),
            self.body
        )
    }
}
