//! Reading statistic datasets from files.
//!
//! * `values_json`: `{"statistic": name, "values": {"<n>": [ints]}}`, with an
//!   optional `"group"` of `"A"` (the default, `S_n`), `"B"`, `"D"` or
//!   `"none"` declaring which order each list must have.
//! * `histogram_json`: `{"statistic": name, "histogram": {"<n>": [counts]}}`,
//!   counts as strings or integers.
//! * `findstat_csv`: `element;value` lines, elements in one-line notation.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use coxstat_core::elements::{ClassicalType, SignedPermutation};
use coxstat_core::interplab::StatisticDataset;
use coxstat_core::InterpError;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::io::poly_from_json;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    ValuesJson,
    HistogramJson,
    FindstatCsv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "values_json" | "values" => Ok(Format::ValuesJson),
            "histogram_json" | "histogram" => Ok(Format::HistogramJson),
            "findstat_csv" | "findstat" | "csv" => Ok(Format::FindstatCsv),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::ValuesJson => "values_json",
            Format::HistogramJson => "histogram_json",
            Format::FindstatCsv => "findstat_csv",
        })
    }
}

pub fn ingest(path: &Path, format: Format) -> Result<StatisticDataset> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let fallback = path.file_stem().and_then(|s| s.to_str()).unwrap_or("statistic");
    ingest_str(&text, format, fallback)
}

/// `fallback_name` is used when the input carries no statistic name.
pub fn ingest_str(text: &str, format: Format, fallback_name: &str) -> Result<StatisticDataset> {
    match format {
        Format::ValuesJson => values_json(text, fallback_name),
        Format::HistogramJson => histogram_json(text, fallback_name),
        Format::FindstatCsv => findstat_csv(text, fallback_name),
    }
}

fn line_of_key(text: &str, key: &str) -> usize {
    let needle = format!("\"{key}\"");
    text.find(&needle)
        .map(|pos| text[..pos].matches('\n').count() + 1)
        .unwrap_or(0)
}

fn malformed(line: usize, message: impl Into<String>) -> Error {
    Error::Interp(InterpError::Malformed {
        line,
        message: message.into(),
    })
}

fn object<'a>(root: &'a Value, field: &str, text: &str) -> Result<&'a serde_json::Map<String, Value>> {
    root.get(field)
        .and_then(Value::as_object)
        .ok_or_else(|| malformed(line_of_key(text, field).max(1), format!("missing object \"{field}\"")))
}

fn rank_key(key: &str, text: &str) -> Result<u32> {
    key.trim()
        .parse::<u32>()
        .map_err(|_| malformed(line_of_key(text, key), format!("rank key \"{key}\" is not a non-negative integer")))
}

fn name_of(root: &Value, fallback: &str) -> String {
    root.get("statistic")
        .and_then(Value::as_str)
        .unwrap_or(fallback)
        .to_string()
}

fn values_json(text: &str, fallback: &str) -> Result<StatisticDataset> {
    let root: Value = serde_json::from_str(text)?;
    let mut ds = StatisticDataset::new(name_of(&root, fallback));
    let declared = match root.get("group").and_then(Value::as_str).map(str::to_ascii_uppercase) {
        None => Some(ClassicalType::A),
        Some(g) => match g.as_str() {
            "A" | "S" => Some(ClassicalType::A),
            "B" => Some(ClassicalType::B),
            "D" => Some(ClassicalType::D),
            "NONE" => None,
            _ => return Err(malformed(line_of_key(text, "group"), format!("unknown group \"{g}\""))),
        },
    };
    for (key, list) in object(&root, "values", text)? {
        let n = rank_key(key, text)?;
        let line = line_of_key(text, key);
        let arr = list
            .as_array()
            .ok_or_else(|| malformed(line, format!("rank {n}: expected an array")))?;
        let mut values = Vec::with_capacity(arr.len());
        for (i, v) in arr.iter().enumerate() {
            values.push(
                v.as_u64()
                    .ok_or_else(|| malformed(line, format!("rank {n}, entry {i}: {v} is not a non-negative integer")))?,
            );
        }
        ds.insert_values(n, values);
    }
    if let Some(kind) = declared {
        ds.check_orders(kind)?;
    }
    Ok(ds)
}

fn histogram_json(text: &str, fallback: &str) -> Result<StatisticDataset> {
    let root: Value = serde_json::from_str(text)?;
    let mut ds = StatisticDataset::new(name_of(&root, fallback));
    for (key, list) in object(&root, "histogram", text)? {
        let n = rank_key(key, text)?;
        let h = poly_from_json(list).map_err(|e| malformed(line_of_key(text, key), format!("rank {n}: {e}")))?;
        ds.insert_histogram(n, h);
    }
    Ok(ds)
}

fn findstat_csv(text: &str, fallback: &str) -> Result<StatisticDataset> {
    let mut per_rank: BTreeMap<u32, Vec<u64>> = BTreeMap::new();
    let mut name = fallback.to_string();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let row = raw.trim();
        if row.is_empty() {
            continue;
        }
        if let Some(comment) = row.strip_prefix('#') {
            if let Some(id) = comment.trim().strip_prefix("statistic:") {
                name = id.trim().to_string();
            }
            continue;
        }
        let (element, value) = row
            .rsplit_once(';')
            .ok_or_else(|| malformed(line, "expected element;value"))?;
        let w = SignedPermutation::parse_one_line(ClassicalType::A, element.trim())
            .map_err(|e| malformed(line, e.to_string()))?;
        let value: u64 = value
            .trim()
            .parse()
            .map_err(|_| malformed(line, format!("value '{}' is not a non-negative integer", value.trim())))?;
        per_rank.entry(w.len() as u32).or_default().push(value);
    }
    let mut ds = StatisticDataset::new(name);
    for (n, values) in per_rank {
        ds.insert_values(n, values);
    }
    ds.check_orders(ClassicalType::A)?;
    Ok(ds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4_values(count: usize) -> String {
        let v: Vec<String> = (0..count).map(|i| (i % 3).to_string()).collect();
        format!("{{\"statistic\": \"toy\", \"values\": {{\"4\": [{}]}}}}", v.join(","))
    }

    #[test]
    fn values_for_s4() {
        let ds = ingest_str(&s4_values(24), Format::ValuesJson, "x").unwrap();
        assert_eq!(ds.name, "toy");
        assert_eq!(ds.histogram(4).unwrap().coeffs().len(), 3);
        let err = ingest_str(&s4_values(23), Format::ValuesJson, "x").unwrap_err();
        assert!(matches!(err, Error::Interp(InterpError::LengthMismatch { n: 4, found: 23, .. })), "{err}");
    }

    #[test]
    fn malformed_lines() {
        let err = ingest_str("{\n\"values\": {\n\"3\": [0, -1, 2, 1, 1, 0]}}", Format::ValuesJson, "x").unwrap_err();
        assert!(matches!(err, Error::Interp(InterpError::Malformed { line: 3, .. })), "{err}");
        let err = ingest_str("{\"values\": [1,", Format::ValuesJson, "x").unwrap_err();
        assert!(matches!(err, Error::Json { line: 1, .. }));
        let err = ingest_str("[1,2];0\n[2,1]\n", Format::FindstatCsv, "x").unwrap_err();
        assert!(matches!(err, Error::Interp(InterpError::Malformed { line: 2, .. })), "{err}");
    }

    #[test]
    fn histogram_strings() {
        let ds = ingest_str("{\"histogram\": {\"3\": [\"1\", \"4\", \"1\"]}}", Format::HistogramJson, "des").unwrap();
        assert_eq!(ds.name, "des");
        assert_eq!(ds.histogram(3).unwrap().to_u64_coeffs().unwrap(), vec![1, 4, 1]);
    }
}
