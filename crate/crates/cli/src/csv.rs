//! Fixed-format CSV tables: header row, LF line endings, floats with nine
//! significant digits.

use std::fmt::Write;

/// `{:.8e}` for finite values; `nan`, `inf` and `-inf` otherwise.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x:.8e}")
    }
}

/// Natural log with `ln 0 = -inf` kept as a value.
pub fn log_or_neg_inf(x: f64) -> f64 {
    if x <= 0.0 {
        f64::NEG_INFINITY
    } else {
        x.ln()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| *h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (k, v) in row.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                // the n column holds integers
                if v.fract() == 0.0 && v.abs() < 1e15 && self.header[k] == "n" {
                    let _ = write!(out, "{}", *v as i64);
                } else {
                    out.push_str(&format_float(*v));
                }
            }
            out.push('\n');
        }
        out
    }
}
