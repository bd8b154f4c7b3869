use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::benchmark::{BenchmarkSummary, RunFailure};
use super::RunReport;
use crate::error::{Error, Result};

/// Per-run report format on disk. Plot CSVs and the flat summary CSV are
/// written either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::InvalidInput(format!(
                "unknown report format `{other}`; expected json or csv"
            ))),
        }
    }
}

fn sanitize(id: &str) -> String {
    id.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-') {
                c
            } else {
                '-'
            }
        })
        .collect()
}

fn slug(report: &RunReport) -> String {
    format!(
        "{}__{}__{}",
        sanitize(&report.dataset_id),
        sanitize(&report.selector_id),
        sanitize(&report.measure_id)
    )
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

/// Writes one run's JSON document plus its curve and derivative plot CSVs.
/// Returns the written paths.
pub fn write_report_files(report: &RunReport, output_dir: &Path) -> Result<Vec<PathBuf>> {
    let base = slug(report);
    let mut written = Vec::with_capacity(3);

    let json_path = output_dir.join(format!("{base}.json"));
    let mut doc = serde_json::to_string_pretty(report).expect("report serializes");
    doc.push('\n');
    write(&json_path, &doc)?;
    written.push(json_path);

    let mut curve = String::from("k,value\n");
    for (k, value) in &report.curve {
        writeln!(curve, "{k},{value}").expect("string write");
    }
    let curve_path = output_dir.join(format!("{base}__curve.csv"));
    write(&curve_path, &curve)?;
    written.push(curve_path);

    let mut derivative = String::from("x,slope\n");
    for (x, slope) in &report.derivative {
        writeln!(derivative, "{x},{slope}").expect("string write");
    }
    let derivative_path = output_dir.join(format!("{base}__derivative.csv"));
    write(&derivative_path, &derivative)?;
    written.push(derivative_path);

    Ok(written)
}

fn optional(value: Option<f64>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

/// One row per run, flat columns.
pub(crate) fn summary_csv(reports: &[RunReport]) -> String {
    let mut out = String::from(
        "dataset_id,selector_id,measure_id,a,b,stride,observations,fsdem,stability,\
         bfi,bfi_k_best,nogueira,kuncheva,seed,wall_time_ms\n",
    );
    for r in reports {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.dataset_id,
            r.selector_id,
            r.measure_id,
            r.range.a(),
            r.range.b(),
            r.stride,
            r.observation_count,
            r.fsdem,
            r.stability,
            r.bfi.value,
            r.bfi.k_best,
            optional(r.nogueira),
            optional(r.kuncheva),
            r.seed,
            r.wall_time_ms.map(|v| v.to_string()).unwrap_or_default(),
        )
        .expect("string write");
    }
    out
}

pub(crate) fn write_summary_files(
    reports: &[RunReport],
    failures: &[RunFailure],
    summary: &BenchmarkSummary,
    output_dir: &Path,
) -> Result<()> {
    write(&output_dir.join("summary.csv"), &summary_csv(reports))?;

    #[derive(serde::Serialize)]
    struct SummaryDoc<'a> {
        summary: &'a BenchmarkSummary,
        failures: &'a [RunFailure],
    }
    let mut doc = serde_json::to_string_pretty(&SummaryDoc { summary, failures })
        .expect("summary serializes");
    doc.push('\n');
    write(&output_dir.join("summary.json"), &doc)
}

/// Writes a batch of reports: per-run JSON documents (for the JSON format)
/// or just the flat summary plus plot data (for CSV). Returns written paths.
pub fn emit_report(
    reports: &[RunReport],
    format: ReportFormat,
    output_dir: &Path,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(output_dir)
        .map_err(|e| Error::io(format!("creating {}", output_dir.display()), e))?;
    let mut written = Vec::new();
    for report in reports {
        match format {
            ReportFormat::Json => written.extend(write_report_files(report, output_dir)?),
            ReportFormat::Csv => {
                let base = slug(report);
                let mut curve = String::from("k,value\n");
                for (k, value) in &report.curve {
                    writeln!(curve, "{k},{value}").expect("string write");
                }
                let path = output_dir.join(format!("{base}__curve.csv"));
                write(&path, &curve)?;
                written.push(path);
                let mut derivative = String::from("x,slope\n");
                for (x, slope) in &report.derivative {
                    writeln!(derivative, "{x},{slope}").expect("string write");
                }
                let path = output_dir.join(format!("{base}__derivative.csv"));
                write(&path, &derivative)?;
                written.push(path);
            }
        }
    }
    let summary_path = output_dir.join("summary.csv");
    write(&summary_path, &summary_csv(reports))?;
    written.push(summary_path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::BfiReport;
    use crate::metrics::MetricRange;

    fn report() -> RunReport {
        RunReport {
            dataset_id: "unit/test".into(),
            selector_id: "info_gain".into(),
            measure_id: "accuracy".into(),
            range: MetricRange::new(1, 3).unwrap(),
            stride: 1,
            fsdem: 0.7,
            stability: 0.2,
            bfi: BfiReport {
                value: 0.1,
                k_best: 2,
                k_c: 0.9,
                k_p: 0.1,
            },
            nogueira: Some(0.5),
            kuncheva: None,
            curve: vec![(1, 0.5), (2, 0.7), (3, 0.9)],
            derivative: vec![(1, 0.2), (2, 0.2), (3, 0.2)],
            seed: 1,
            wall_time_ms: Some(12),
            version: "0.0.0".into(),
            observation_count: 3,
            config_fingerprint: "deadbeef".into(),
            warnings: vec![],
        }
    }

    #[test]
    fn emitted_json_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let report = report();
        let written = emit_report(std::slice::from_ref(&report), ReportFormat::Json, dir.path())
            .unwrap();
        let json_path = written
            .iter()
            .find(|p| p.extension().is_some_and(|e| e == "json"))
            .unwrap();
        let text = std::fs::read_to_string(json_path).unwrap();
        let parsed: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, report);
        // Slashes in ids must not escape the output directory.
        assert!(json_path.file_name().unwrap().to_string_lossy().starts_with("unit-test__"));
    }

    #[test]
    fn plot_csv_row_counts_match_the_grids() {
        let dir = tempfile::tempdir().unwrap();
        let report = report();
        emit_report(std::slice::from_ref(&report), ReportFormat::Json, dir.path()).unwrap();
        let curve = std::fs::read_to_string(dir.path().join("unit-test__info_gain__accuracy__curve.csv")).unwrap();
        assert_eq!(curve.lines().count(), 1 + report.curve.len());
        let derivative = std::fs::read_to_string(
            dir.path().join("unit-test__info_gain__accuracy__derivative.csv"),
        )
        .unwrap();
        assert_eq!(derivative.lines().count(), 1 + report.derivative.len());
    }

    #[test]
    fn summary_has_one_row_per_run() {
        let dir = tempfile::tempdir().unwrap();
        let mut second = report();
        second.dataset_id = "other".into();
        second.nogueira = None;
        let reports = vec![report(), second];
        emit_report(&reports, ReportFormat::Csv, dir.path()).unwrap();
        let summary = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
        assert_eq!(summary.lines().count(), 3);
        // CSV format leaves no per-run JSON behind.
        assert!(!dir.path().join("unit-test__info_gain__accuracy.json").exists());
    }
}
