//! Fixed CSV number formatting.

/// Lowercase scientific notation with six significant digits.
pub fn sci(v: f64) -> String {
    format!("{v:.5e}")
}

/// Rounds to `digits` significant figures, as printed in published tables.
pub fn round_sig(v: f64, digits: i32) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    let scale = 10f64.powi(digits - 1 - v.abs().log10().floor() as i32);
    (v * scale).round() / scale
}

/// Accumulates CSV text with LF line endings.
#[derive(Debug, Default)]
pub struct CsvText(String);

impl CsvText {
    pub fn new(header: &str) -> Self {
        let mut out = Self::default();
        out.line(header);
        out
    }

    pub fn line(&mut self, line: &str) {
        self.0.push_str(line);
        self.0.push('\n');
    }

    pub fn comment(&mut self, text: &str) {
        self.line(&format!("# {text}"));
    }

    pub fn warning(&mut self, text: &str) {
        self.comment(&format!("warning: {text}"));
    }

    pub fn row(&mut self, fields: &[&str]) {
        self.line(&fields.join(","));
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific() {
        assert_eq!(sci(0.7957747154594766), "7.95775e-1");
        assert_eq!(sci(10.0), "1.00000e1");
        assert_eq!(sci(0.0), "0.00000e0");
        assert_eq!(sci(3.5367765e-3), "3.53678e-3");
    }

    #[test]
    fn significant_figures() {
        assert_eq!(round_sig(0.7957747, 3), 0.796);
        assert_eq!(round_sig(0.0079577, 3), 0.00796);
        assert_eq!(round_sig(0.000318309, 3), 0.000318);
        assert_eq!(round_sig(0.0035367765, 4), 0.003537);
        assert_eq!(round_sig(0.0, 3), 0.0);
    }

    #[test]
    fn text_layout() {
        let mut c = CsvText::new("a,b");
        c.warning("careful");
        c.row(&["1", "2"]);
        assert_eq!(c.into_string(), "a,b\n# warning: careful\n1,2\n");
    }
}
