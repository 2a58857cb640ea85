//! Deterministic CSV rendering.
//!
//! Numbers are printed with a fixed number of significant digits, switching
//! to scientific notation outside `1e-6 <= |x| < 1e6`. Lines end in `\n`.
//! Metadata such as units goes in leading `#` comment lines.

use std::fmt::Write as _;

/// `x` to `digits` significant figures.
pub fn format_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = x.abs();
    if !(1e-6..1e6).contains(&a) {
        return format!("{:.*e}", digits - 1, x);
    }
    let exponent = a.log10().floor() as i32;
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding can carry into a new leading digit (9.99.. -> 10.0).
    let rounded: f64 = s.parse().unwrap_or(x);
    let exponent2 = rounded.abs().log10().floor() as i32;
    if exponent2 > exponent && decimals > 0 {
        format!("{x:.*}", decimals - 1)
    } else {
        s
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { comments: Vec::new(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn comment(&mut self, line: impl Into<String>) -> &mut Self {
        self.comments.push(line.into());
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| escape(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(1.8557570814, 10), "1.855757081");
        assert_eq!(format_sig(0.71627604417, 10), "0.7162760442");
        assert_eq!(format_sig(1.0, 10), "1.000000000");
        assert_eq!(format_sig(123456.7, 3), "123457");
        assert_eq!(format_sig(9.9996, 4), "10.00");
        assert_eq!(format_sig(-0.5, 3), "-0.500");
    }

    #[test]
    fn scientific_outside_window() {
        assert_eq!(format_sig(2.5e-7, 3), "2.50e-7");
        assert_eq!(format_sig(1.5e6, 2), "1.5e6");
        assert_eq!(format_sig(1e-6, 2), "0.0000010");
        assert_eq!(format_sig(0.0, 5), "0");
        assert_eq!(format_sig(f64::NAN, 5), "nan");
    }

    #[test]
    fn renders_with_comments_and_lf() {
        let mut t = Table::new(&["a", "b"]);
        t.comment("units: hbar = m = 1");
        t.push(vec!["1".into(), "x,y".into()]);
        assert_eq!(t.render(), "# units: hbar = m = 1\na,b\n1,\"x,y\"\n");
    }
}
