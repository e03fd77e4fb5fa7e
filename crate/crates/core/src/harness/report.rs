use std::fs;
use std::path::{Path, PathBuf};

use super::table::{Metric, ResultTable, CSV_HEADER};
use crate::error::{Error, Result};
use crate::stats::{pairwise_matrix, SampleSet, SignificanceMatrix, TestKind};

pub const SUMMARY_FILE: &str = "summary.csv";
pub const RESULTS_FILE: &str = "results.json";

/// Metrics that appear in the summary table and get significance matrices.
const REPORTED: [Metric; 4] = [Metric::BestFitness, Metric::DistinctPeaks, Metric::PeakRatio, Metric::AvgMinDistance];

/// Wide summary layout: `problem, measurement, <one column per algorithm>`,
/// with a mean row and a standard deviation row per metric. Metrics that no
/// algorithm defines on a problem are left out.
pub fn summary_rows(table: &ResultTable) -> Vec<Vec<String>> {
    let mut header = vec!["problem".to_string(), "measurement".to_string()];
    header.extend(table.algorithms().iter().cloned());
    let mut rows = vec![header];
    for problem in table.problems() {
        for metric in REPORTED {
            let cells: Vec<_> = table.algorithms().iter().map(|a| table.summary(a, problem, metric)).collect();
            if cells.iter().all(Option::is_none) {
                continue;
            }
            for (caption, pick) in [("Mean", 0), ("StDev", 1)] {
                let mut row = vec![problem.clone(), format!("{caption} of {}", metric.caption())];
                row.extend(cells.iter().map(|c| match c {
                    Some(s) => (if pick == 0 { s.mean } else { s.stddev }).to_string(),
                    None => String::new(),
                }));
                rows.push(row);
            }
        }
    }
    rows
}

fn write_csv(path: &Path, rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn create_dir(path: &Path) -> Result<PathBuf> {
    fs::create_dir_all(path).map_err(|e| Error::io(path, e))?;
    Ok(path.to_path_buf())
}

fn matrix_rows(m: &SignificanceMatrix, p_values: bool) -> Vec<Vec<String>> {
    let mut header = vec![String::new()];
    header.extend(m.labels.iter().cloned());
    let mut rows = vec![header];
    for (i, label) in m.labels.iter().enumerate() {
        let mut row = vec![label.clone()];
        for j in 0..m.len() {
            row.push(if p_values { m.p_values[i][j].to_string() } else { u8::from(m.get(i, j)).to_string() });
        }
        rows.push(row);
    }
    rows
}

/// Significance matrices for every problem, reported metric and test. Pairs
/// a test cannot handle (too few runs, missing metric) are skipped with a
/// warning.
pub fn significance_matrices(table: &ResultTable, tests: &[TestKind], alpha: f64) -> Vec<(String, SignificanceMatrix)> {
    let mut out = Vec::new();
    if table.algorithms().len() < 2 {
        return out;
    }
    for problem in table.problems() {
        for metric in REPORTED {
            let samples: Option<Vec<SampleSet>> = table
                .algorithms()
                .iter()
                .map(|a| {
                    let v = table.values(a, problem, metric);
                    (v.len() == table.runs()).then(|| SampleSet::new(a.clone(), v).ok()).flatten()
                })
                .collect();
            let Some(samples) = samples else { continue };
            for &test in tests {
                match pairwise_matrix(&samples, test, alpha, metric.name()) {
                    Ok(m) => out.push((problem.clone(), m)),
                    Err(e) => log::warn!("skipping {test} on {problem}/{metric}: {e}"),
                }
            }
        }
    }
    out
}

/// Writes `summary.csv`, `results.json` and the `raw/`, `traces/` and
/// `significance/` directories under `out_dir`.
pub fn emit_reports(table: &ResultTable, tests: &[TestKind], alpha: f64, out_dir: &Path) -> Result<()> {
    create_dir(out_dir)?;
    write_csv(&out_dir.join(SUMMARY_FILE), summary_rows(table))?;

    let raw = create_dir(&out_dir.join("raw"))?;
    let traces = create_dir(&out_dir.join("traces"))?;
    for alg in table.algorithms() {
        for problem in table.problems() {
            let stem = format!("{alg}__{problem}.csv");
            let header = std::iter::once(CSV_HEADER.map(String::from).to_vec());
            write_csv(
                &raw.join(&stem),
                header.chain(table.cell(alg, problem).flat_map(|r| r.rows()).map(|r| r.to_vec())),
            )?;
            let header = std::iter::once(vec!["run".into(), "eval_count".into(), "best_fitness".into()]);
            write_csv(
                &traces.join(&stem),
                header.chain(table.cell(alg, problem).flat_map(|r| {
                    r.trace
                        .iter()
                        .map(|t| vec![r.run.to_string(), t.eval_count.to_string(), t.best_fitness.to_string()])
                })),
            )?;
        }
    }

    let sig = create_dir(&out_dir.join("significance"))?;
    for (problem, m) in significance_matrices(table, tests, alpha) {
        let stem = format!("{problem}__{}__{}", m.metric, m.test);
        write_csv(&sig.join(format!("{stem}.csv")), matrix_rows(&m, false))?;
        write_csv(&sig.join(format!("{stem}_p.csv")), matrix_rows(&m, true))?;
    }

    let json = out_dir.join(RESULTS_FILE);
    let file = fs::File::create(&json).map_err(|e| Error::io(&json, e))?;
    serde_json::to_writer_pretty(std::io::BufWriter::new(file), table)?;
    Ok(())
}
