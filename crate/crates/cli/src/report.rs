//! CSV report rows and their summary aggregation: an arithmetic mean per
//! instance over seeds and repeats, then a geometric mean across instances.

use std::collections::BTreeMap;
use std::io::Write;

use anyhow::Result;
use hypermatch::{GeneratorKind, Matching, RunReport, Variant};

pub const HEADER: [&str; 14] = [
    "instance",
    "variant",
    "workers",
    "seed",
    "generator",
    "repeat",
    "rounds",
    "size",
    "weight",
    "time_ms",
    "edge_visits",
    "pin_visits",
    "ratio_vs_oracle",
    "status",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Measures {
    pub rounds: usize,
    pub size: usize,
    pub weight: f64,
    pub time_ms: f64,
    pub edge_visits: usize,
    pub pin_visits: usize,
    pub ratio: Option<f64>,
}

impl Measures {
    pub fn new(m: &Matching, r: &RunReport, ratio: Option<f64>) -> Self {
        Measures {
            rounds: r.rounds,
            size: m.len(),
            weight: m.total_weight,
            time_ms: r.wall_time.as_secs_f64() * 1e3,
            edge_visits: r.counters.total_edge_visits,
            pin_visits: r.counters.total_pin_visits,
            ratio,
        }
    }

    fn values(&self) -> [Option<f64>; 7] {
        [
            Some(self.rounds as f64),
            Some(self.size as f64),
            Some(self.weight),
            Some(self.time_ms),
            Some(self.edge_visits as f64),
            Some(self.pin_visits as f64),
            self.ratio,
        ]
    }
}

#[derive(Clone, Debug)]
pub struct Row {
    pub instance: String,
    pub variant: Variant,
    pub workers: usize,
    pub seed: u64,
    pub generator: GeneratorKind,
    pub repeat: u32,
    /// The error message for a failed run.
    pub outcome: std::result::Result<Measures, String>,
}

fn ratio_cell(r: Option<f64>) -> String {
    r.map(|r| format!("{r:.6}")).unwrap_or_default()
}

impl Row {
    pub fn record(&self) -> Vec<String> {
        let mut rec = vec![
            self.instance.clone(),
            self.variant.to_string(),
            self.workers.to_string(),
            self.seed.to_string(),
            self.generator.to_string(),
            self.repeat.to_string(),
        ];
        match &self.outcome {
            Ok(m) => rec.extend([
                m.rounds.to_string(),
                m.size.to_string(),
                format!("{:.6}", m.weight),
                format!("{:.3}", m.time_ms),
                m.edge_visits.to_string(),
                m.pin_visits.to_string(),
                ratio_cell(m.ratio),
                "ok".to_string(),
            ]),
            Err(e) => {
                rec.extend(std::iter::repeat_n(String::new(), 7));
                rec.push(format!("failed: {e}"));
            }
        }
        rec
    }
}

/// `None` for an empty list or any value that is not positive and finite.
pub fn geometric_mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() || values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return None;
    }
    let log_sum: f64 = values.iter().map(|v| v.ln()).sum();
    Some((log_sum / values.len() as f64).exp())
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn summary_cells(values: [Option<f64>; 7]) -> Vec<String> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| match (i, v) {
            (_, None) => String::new(),
            (2, Some(v)) | (6, Some(v)) => format!("{v:.6}"),
            (_, Some(v)) => format!("{v:.3}"),
        })
        .collect()
}

/// Column-wise aggregate; a column with any missing value stays missing.
fn aggregate(rows: &[[Option<f64>; 7]], f: fn(&[f64]) -> Option<f64>) -> [Option<f64>; 7] {
    std::array::from_fn(|c| {
        let col: Option<Vec<f64>> = rows.iter().map(|r| r[c]).collect();
        col.and_then(|v| f(&v))
    })
}

/// Mean rows per (instance, variant, workers, generator), then geometric
/// mean rows per (variant, workers, generator) across instances.
pub fn summary_records(rows: &[Row]) -> Vec<Vec<String>> {
    type Key = (String, usize, String);
    let mut per_instance: BTreeMap<(String, Key), Vec<[Option<f64>; 7]>> = BTreeMap::new();
    for r in rows {
        if let Ok(m) = &r.outcome {
            let key = (r.variant.to_string(), r.workers, r.generator.to_string());
            per_instance
                .entry((r.instance.clone(), key))
                .or_default()
                .push(m.values());
        }
    }

    let mut out = Vec::new();
    let mut across: BTreeMap<Key, Vec<[Option<f64>; 7]>> = BTreeMap::new();
    for ((instance, key), vals) in &per_instance {
        let means = aggregate(vals, |v| Some(mean(v)));
        across.entry(key.clone()).or_default().push(means);
        let mut rec = vec![
            instance.clone(),
            key.0.clone(),
            key.1.to_string(),
            String::new(),
            key.2.clone(),
            "mean".to_string(),
        ];
        rec.extend(summary_cells(means));
        rec.push(format!("mean of {}", vals.len()));
        out.push(rec);
    }
    for (key, vals) in &across {
        let mut rec = vec![
            "geomean".to_string(),
            key.0.clone(),
            key.1.to_string(),
            String::new(),
            key.2.clone(),
            String::new(),
        ];
        rec.extend(summary_cells(aggregate(vals, geometric_mean)));
        rec.push(format!("geomean of {} instances", vals.len()));
        out.push(rec);
    }
    out
}

pub fn write_report<W: Write>(dest: W, rows: &[Row]) -> Result<()> {
    let mut w = csv::Writer::from_writer(dest);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    for rec in summary_records(rows) {
        w.write_record(rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Appends one row, writing the header first when the file is new or empty.
pub fn append_row(path: &std::path::Path, row: &Row) -> Result<()> {
    let fresh = std::fs::metadata(path).map_or(true, |m| m.len() == 0);
    let file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    let mut w = csv::Writer::from_writer(file);
    if fresh {
        w.write_record(HEADER)?;
    }
    w.write_record(row.record())?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(instance: &str, repeat: u32, time_ms: f64, ok: bool) -> Row {
        Row {
            instance: instance.to_string(),
            variant: Variant::Crcw,
            workers: 2,
            seed: 1,
            generator: GeneratorKind::SplitMix,
            repeat,
            outcome: if ok {
                Ok(Measures {
                    rounds: 4,
                    size: 10,
                    weight: 12.5,
                    time_ms,
                    edge_visits: 100,
                    pin_visits: 400,
                    ratio: None,
                })
            } else {
                Err("boom".into())
            },
        }
    }

    #[test]
    fn geometric_mean_of_speedups() {
        assert!((geometric_mean(&[2.0, 8.0]).unwrap() - 4.0).abs() < 1e-12);
        assert_eq!(geometric_mean(&[]), None);
        assert_eq!(geometric_mean(&[1.0, 0.0]), None);
    }

    #[test]
    fn row_formatting() {
        let rec = row("a", 0, 1.23456, true).record();
        assert_eq!(rec.len(), HEADER.len());
        assert_eq!(
            &rec[6..],
            ["4", "10", "12.500000", "1.235", "100", "400", "", "ok"]
        );
        let rec = row("a", 0, 1.0, false).record();
        assert_eq!(rec.len(), HEADER.len());
        assert_eq!(rec[13], "failed: boom");
        assert!(rec[6..13].iter().all(String::is_empty));
    }

    #[test]
    fn summaries() {
        let rows = vec![
            row("a", 0, 1.0, true),
            row("a", 1, 3.0, true),
            row("b", 0, 8.0, true),
            row("b", 1, 0.0, false),
        ];
        let s = summary_records(&rows);
        assert_eq!(s.len(), 3);
        assert_eq!(s[0][0], "a");
        assert_eq!(s[0][9], "2.000");
        assert_eq!(s[1][9], "8.000");
        assert_eq!(s[1][13], "mean of 1");
        assert_eq!(s[2][0], "geomean");
        assert_eq!(s[2][9], "4.000");
        assert_eq!(s[2][12], "");
    }
}
