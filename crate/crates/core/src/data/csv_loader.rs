use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};

/// Which column holds the class label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelColumn {
    Index(usize),
    Name(String),
}

/// How to interpret the columns of a CSV file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ColumnSpec {
    /// Label column; `None` means the last column.
    pub label_column: Option<LabelColumn>,
    /// Columns to force-encode as categoricals. Columns containing any
    /// non-numeric cell are treated as categorical regardless.
    pub categorical_columns: Vec<LabelColumn>,
    /// Cell contents standing for a missing value.
    pub missing_markers: Vec<String>,
}

impl Default for ColumnSpec {
    fn default() -> Self {
        ColumnSpec {
            label_column: None,
            categorical_columns: Vec::new(),
            missing_markers: vec!["?".into(), "".into()],
        }
    }
}

fn parse_numeric(cell: &str) -> Option<f64> {
    cell.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Loads an RFC-4180 CSV file into a [`Dataset`].
///
/// A header row is assumed present iff some column is numeric over the body
/// rows while its first-row cell is not. Categorical columns are
/// ordinal-encoded by sorted category text; missing numeric cells are imputed
/// with the column median, missing categoricals with the mode. Labels map to
/// `0..C` by sorted label text.
pub fn load_csv(path: &Path, spec: &ColumnSpec) -> Result<Dataset> {
    let display = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(false)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => Error::Ingestion(format!("cannot open {display}: {e}")),
            _ => format_error(&display, &e),
        })?;

    let mut rows: Vec<Vec<String>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| format_error(&display, &e))?;
        rows.push(record.iter().map(|cell| cell.trim().to_string()).collect());
    }
    if rows.is_empty() {
        return Err(Error::Ingestion(format!("{display} has no rows")));
    }
    let width = rows[0].len();
    if width < 2 {
        return Err(Error::Ingestion(format!(
            "{display} needs at least one feature column and a label column"
        )));
    }

    let missing = |cell: &str| spec.missing_markers.iter().any(|m| m == cell);

    // A column is numeric when every non-missing body cell parses as a
    // finite number. The body excludes the first row so the check also works
    // when that row turns out to be a header.
    let body = if rows.len() > 1 { &rows[1..] } else { &rows[..] };
    let numeric_over_body: Vec<bool> = (0..width)
        .map(|j| {
            let mut seen = false;
            for row in body {
                if missing(&row[j]) {
                    continue;
                }
                if parse_numeric(&row[j]).is_none() {
                    return false;
                }
                seen = true;
            }
            seen
        })
        .collect();

    let has_header = rows.len() > 1
        && (0..width).any(|j| {
            numeric_over_body[j] && !missing(&rows[0][j]) && parse_numeric(&rows[0][j]).is_none()
        });

    let names: Vec<String> = if has_header {
        rows[0].clone()
    } else {
        (0..width).map(|j| format!("f{j}")).collect()
    };
    let data_rows = &rows[usize::from(has_header)..];
    if data_rows.is_empty() {
        return Err(Error::Ingestion(format!("{display} has a header but no data rows")));
    }

    let resolve = |column: &LabelColumn| -> Result<usize> {
        match column {
            LabelColumn::Index(j) => {
                if *j < width {
                    Ok(*j)
                } else {
                    Err(Error::InvalidInput(format!(
                        "column index {j} out of range, file has {width} columns"
                    )))
                }
            }
            LabelColumn::Name(name) => names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::InvalidInput(format!("no column named `{name}`"))),
        }
    };
    let label_idx = match &spec.label_column {
        Some(column) => resolve(column)?,
        None => width - 1,
    };
    let mut forced_categorical = vec![false; width];
    for column in &spec.categorical_columns {
        forced_categorical[resolve(column)?] = true;
    }

    // Encode feature columns.
    let feature_cols: Vec<usize> = (0..width).filter(|&j| j != label_idx).collect();
    let n = data_rows.len();
    let mut matrix = vec![vec![0.0f64; feature_cols.len()]; n];
    for (out_j, &j) in feature_cols.iter().enumerate() {
        let cells: Vec<&str> = data_rows.iter().map(|row| row[j].as_str()).collect();
        let all_missing = cells.iter().all(|c| missing(c));
        if all_missing {
            return Err(Error::Ingestion(format!(
                "column `{}` of {display} has no usable values",
                names[j]
            )));
        }
        let categorical = forced_categorical[j]
            || cells
                .iter()
                .any(|c| !missing(c) && parse_numeric(c).is_none());
        if categorical {
            let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
            for &cell in &cells {
                if !missing(cell) {
                    *counts.entry(cell).or_default() += 1;
                }
            }
            // BTreeMap iterates categories in sorted order; the code below
            // also picks the lexicographically smallest mode on ties.
            let codes: BTreeMap<&str, usize> = counts
                .keys()
                .enumerate()
                .map(|(code, &cat)| (cat, code))
                .collect();
            let mode = counts
                .iter()
                .max_by_key(|(_, &count)| count)
                .map(|(&cat, _)| cat)
                .expect("at least one category");
            for (i, &cell) in cells.iter().enumerate() {
                let cat = if missing(cell) { mode } else { cell };
                matrix[i][out_j] = codes[cat] as f64;
            }
        } else {
            let mut present: Vec<f64> = cells
                .iter()
                .filter(|c| !missing(c))
                .map(|c| parse_numeric(c).expect("checked numeric"))
                .collect();
            present.sort_by(f64::total_cmp);
            let median = if present.len() % 2 == 1 {
                present[present.len() / 2]
            } else {
                (present[present.len() / 2 - 1] + present[present.len() / 2]) / 2.0
            };
            for (i, &cell) in cells.iter().enumerate() {
                matrix[i][out_j] = if missing(cell) {
                    median
                } else {
                    parse_numeric(cell).expect("checked numeric")
                };
            }
        }
    }

    // Encode labels by sorted label text.
    let mut label_texts: Vec<&str> = Vec::with_capacity(n);
    for (i, row) in data_rows.iter().enumerate() {
        let cell = row[label_idx].as_str();
        if missing(cell) {
            return Err(Error::Ingestion(format!(
                "missing label in row {} of {display}",
                i + 1 + usize::from(has_header)
            )));
        }
        label_texts.push(cell);
    }
    let mut classes: Vec<&str> = label_texts.clone();
    classes.sort_unstable();
    classes.dedup();
    let y: Vec<usize> = label_texts
        .iter()
        .map(|t| classes.binary_search(t).expect("present by construction"))
        .collect();

    let feature_names: Vec<String> = feature_cols.iter().map(|&j| names[j].clone()).collect();
    let dataset_id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| display.clone());
    Dataset::new(matrix, y, feature_names, dataset_id)
}

/// Renders a dataset as CSV with a header row; the label column comes last
/// under `label_name`, holding the integer class codes. Numeric formatting
/// round-trips exactly, so `load_csv` recovers the dataset.
pub fn dataset_to_csv(data: &Dataset, label_name: &str) -> String {
    let mut out = String::new();
    let header: Vec<&str> = data
        .feature_names()
        .iter()
        .map(|s| s.as_str())
        .chain(std::iter::once(label_name))
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for i in 0..data.n() {
        for value in data.row(i) {
            out.push_str(&value.to_string());
            out.push(',');
        }
        out.push_str(&data.labels()[i].to_string());
        out.push('\n');
    }
    out
}

fn format_error(path: &str, e: &csv::Error) -> Error {
    let (row, column) = match e.position() {
        Some(pos) => (pos.line() as usize, pos.byte() as usize),
        None => (0, 0),
    };
    Error::Format {
        path: path.to_string(),
        row,
        column,
        message: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_csv(content: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::Builder::new().suffix(".csv").tempfile().unwrap();
        file.write_all(content.as_bytes()).unwrap();
        file.flush().unwrap();
        file
    }

    #[test]
    fn detects_header_and_shapes() {
        let file = write_csv("sepal,petal,species\n5.1,1.4,setosa\n6.2,4.3,virginica\n");
        let data = load_csv(file.path(), &ColumnSpec::default()).unwrap();
        assert_eq!(data.n(), 2);
        assert_eq!(data.d(), 2);
        assert_eq!(data.feature_names(), &["sepal", "petal"]);
        assert_eq!(data.labels(), &[0, 1]);
    }

    #[test]
    fn headerless_file_gets_synthetic_names() {
        let file = write_csv("5.1,1.4,0\n6.2,4.3,1\n");
        let data = load_csv(file.path(), &ColumnSpec::default()).unwrap();
        assert_eq!(data.n(), 2);
        assert_eq!(data.feature_names(), &["f0", "f1"]);
    }

    #[test]
    fn missing_numeric_cell_imputed_with_median() {
        let file = write_csv("a,b,y\n1,10,x\n?,20,x\n3,30,z\n9,40,z\n");
        let data = load_csv(file.path(), &ColumnSpec::default()).unwrap();
        // Median of {1, 3, 9} is 3.
        assert_eq!(data.column(0), vec![1.0, 3.0, 3.0, 9.0]);
    }

    #[test]
    fn missing_categorical_cell_imputed_with_mode() {
        let file = write_csv("color,y\nred,0\nblue,0\nred,1\n?,1\n");
        let data = load_csv(file.path(), &ColumnSpec::default()).unwrap();
        // Sorted categories: blue=0, red=1; mode is red.
        assert_eq!(data.column(0), vec![1.0, 0.0, 1.0, 1.0]);
    }

    #[test]
    fn labels_sorted_by_text_and_contiguous() {
        let file = write_csv("x,y\n1,zebra\n2,ant\n3,zebra\n4,mule\n");
        let data = load_csv(file.path(), &ColumnSpec::default()).unwrap();
        assert_eq!(data.labels(), &[2, 0, 2, 1]);
        assert_eq!(data.num_classes(), 3);
    }

    #[test]
    fn label_column_by_name_and_index() {
        let file = write_csv("y,a,b\ncat,1,2\ndog,3,4\n");
        let by_name = ColumnSpec {
            label_column: Some(LabelColumn::Name("y".into())),
            ..ColumnSpec::default()
        };
        let data = load_csv(file.path(), &by_name).unwrap();
        assert_eq!(data.feature_names(), &["a", "b"]);
        assert_eq!(data.labels(), &[0, 1]);

        let by_index = ColumnSpec {
            label_column: Some(LabelColumn::Index(0)),
            ..ColumnSpec::default()
        };
        assert_eq!(load_csv(file.path(), &by_index).unwrap(), data);
    }

    #[test]
    fn forced_categorical_encodes_numbers_as_categories() {
        let file = write_csv("code,y\n10,0\n2,0\n10,1\n");
        let spec = ColumnSpec {
            categorical_columns: vec![LabelColumn::Index(0)],
            ..ColumnSpec::default()
        };
        let data = load_csv(file.path(), &spec).unwrap();
        // Text-sorted categories: "10" < "2".
        assert_eq!(data.column(0), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn all_missing_column_is_an_ingestion_error() {
        let file = write_csv("a,b,y\n?,1,0\n?,2,1\n");
        assert!(matches!(
            load_csv(file.path(), &ColumnSpec::default()),
            Err(Error::Ingestion(_))
        ));
    }

    #[test]
    fn ragged_row_is_a_format_error() {
        let file = write_csv("a,b,y\n1,2,0\n3,4\n");
        assert!(matches!(
            load_csv(file.path(), &ColumnSpec::default()),
            Err(Error::Format { .. })
        ));
    }

    #[test]
    fn missing_file_is_an_ingestion_error() {
        let err = load_csv(Path::new("/nonexistent/file.csv"), &ColumnSpec::default());
        assert!(matches!(err, Err(Error::Ingestion(_))));
    }

    #[test]
    fn missing_label_is_rejected() {
        let file = write_csv("a,y\n1,0\n2,?\n");
        assert!(matches!(
            load_csv(file.path(), &ColumnSpec::default()),
            Err(Error::Ingestion(_))
        ));
    }

    /// With no numeric column the header heuristic has nothing to anchor
    /// on, so the first row counts as data.
    #[test]
    fn all_categorical_file_is_treated_as_headerless() {
        let file = write_csv("red,yes\nblue,no\nred,no\n");
        let data = load_csv(file.path(), &ColumnSpec::default()).unwrap();
        assert_eq!(data.n(), 3);
        assert_eq!(data.feature_names(), &["f0"]);
        // Categories sorted: blue=0, red=1.
        assert_eq!(data.column(0), vec![1.0, 0.0, 1.0]);
    }

    #[test]
    fn dataset_round_trips_through_csv_text() {
        let data = crate::data::generate_wealth_dummy(25, 11).unwrap();
        let text = dataset_to_csv(&data, "wealth");
        let mut file = tempfile::Builder::new().suffix(".csv").tempfile().unwrap();
        file.write_all(text.as_bytes()).unwrap();
        file.flush().unwrap();
        let back = load_csv(file.path(), &ColumnSpec::default()).unwrap();
        assert_eq!(back.feature_names(), data.feature_names());
        assert_eq!(back.labels(), data.labels());
        for i in 0..data.n() {
            assert_eq!(back.row(i), data.row(i));
        }
    }
}
