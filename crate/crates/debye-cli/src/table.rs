//! Tabular output: named/united columns, rows of numbers, and a string
//! metadata map. CSV is RFC-4180-style with a fixed 17-significant-digit
//! format so identical invocations are byte-identical; JSON round-trips
//! field-exactly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputTable {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
    pub metadata: BTreeMap<String, String>,
}

impl OutputTable {
    pub fn new(columns: Vec<(&str, &str)>) -> Self {
        OutputTable {
            columns: columns
                .into_iter()
                .map(|(name, unit)| Column { name: name.into(), unit: unit.into() })
                .collect(),
            rows: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match columns");
        self.rows.push(row);
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.metadata.insert(key.into(), value.into());
    }

    /// 17 significant digits, '.' decimal separator, deterministic.
    pub fn format_value(v: f64) -> String {
        if v.is_nan() {
            "NaN".into()
        } else {
            format!("{v:.16e}")
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self
            .columns
            .iter()
            .map(|c| {
                if c.unit.is_empty() {
                    c.name.clone()
                } else {
                    format!("{} ({})", c.name, c.unit)
                }
            })
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| Self::format_value(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        if !self.metadata.is_empty() {
            // Metadata rides behind a comment marker so the data block stays
            // plain RFC-4180.
            for (k, v) in &self.metadata {
                out.push_str(&format!("# {k}={v}\n"));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_shape_and_determinism() {
        let mut t = OutputTable::new(vec![("T", "K"), ("value", "")]);
        t.push_row(vec![1.0, 0.5]);
        t.push_row(vec![2.0, 0.25]);
        let a = t.to_csv();
        let b = t.to_csv();
        assert_eq!(a, b);
        assert!(a.starts_with("T (K),value\n"));
        assert!(a.contains("1.0000000000000000e0,5.0000000000000000e-1"));
    }

    #[test]
    fn json_round_trip_is_field_exact() {
        let mut t = OutputTable::new(vec![("x", ""), ("y", "")]);
        t.push_row(vec![std::f64::consts::PI, 1.0 / 3.0]);
        t.meta("method", "oracle");
        let parsed: OutputTable = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(parsed, t);
    }

    #[test]
    #[should_panic(expected = "row width")]
    fn row_width_enforced() {
        let mut t = OutputTable::new(vec![("x", "")]);
        t.push_row(vec![1.0, 2.0]);
    }
}
