//! JSON and CSV documents for fuzzy soft sets and finite topologies.
//!
//! The canonical JSON form keeps the key order `universe`, `parameters`,
//! `reindex` (optional), `grades`, and writes every grade as the shortest
//! decimal string that parses back to the same binary value. Saving a
//! loaded canonical document reproduces it byte for byte.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{Grade, Universe};
use crate::scalar::Scalar;
use crate::soft::{FuzzySoftSet, ParameterSet};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetDocument {
    universe: Vec<String>,
    parameters: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reindex: Option<Vec<f64>>,
    grades: Vec<Vec<Cell>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TopologyDocument {
    universe: Vec<String>,
    parameters: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reindex: Option<Vec<f64>>,
    sets: Vec<Vec<Vec<Cell>>>,
}

// strings are canonical; bare numbers are accepted on input
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Cell {
    Text(String),
    Number(serde_json::Number),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Number(n) => n.to_string(),
        }
    }
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn grade_of<T: Scalar>(text: &str, cell: impl Fn() -> String) -> Result<Grade<T>> {
    let value: T = text.trim().parse().map_err(|_| Error::InvalidCell {
        cell: cell(),
        message: format!("`{text}` is not a number"),
    })?;
    Grade::new(value).map_err(|_| Error::InvalidCell {
        cell: cell(),
        message: format!("grade `{text}` is outside [0, 1]"),
    })
}

fn header(
    universe: Vec<String>,
    parameters: Vec<String>,
    reindex: Option<Vec<f64>>,
) -> Result<(ParameterSet, Universe)> {
    let universe = Universe::new(universe)?;
    let mut params = ParameterSet::new(parameters)?;
    if let Some(r) = reindex {
        params = params.with_reindex(r)?;
    }
    Ok((params, universe))
}

fn grid<T: Scalar>(
    params: &ParameterSet,
    universe: &Universe,
    rows: &[Vec<Cell>],
    at: &str,
) -> Result<FuzzySoftSet<T>> {
    if rows.len() != params.len() {
        return Err(Error::DimensionMismatch(format!(
            "{at}: {} grade rows for {} parameters",
            rows.len(),
            params.len()
        )));
    }
    let mut grades = Vec::with_capacity(rows.len());
    for (e, row) in rows.iter().enumerate() {
        if row.len() != universe.len() {
            return Err(Error::DimensionMismatch(format!(
                "{at}: row `{}` has {} grades for {} objects",
                params.label(e),
                row.len(),
                universe.len()
            )));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(x, c)| {
                grade_of(&c.text(), || {
                    format!("{at}[{}][{}]", params.label(e), universe.label(x))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        grades.push(parsed);
    }
    FuzzySoftSet::new(params.clone(), universe.clone(), grades)
}

fn cells<T: Scalar>(f: &FuzzySoftSet<T>) -> Vec<Vec<Cell>> {
    f.rows()
        .map(|row| row.iter().map(|g| Cell::Text(g.to_string())).collect())
        .collect()
}

fn pretty<S: Serialize>(doc: &S) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents serialize");
    out.push('\n');
    out
}

pub fn parse_fss<T: Scalar>(text: &str) -> Result<FuzzySoftSet<T>> {
    let doc: SetDocument = serde_json::from_str(text).map_err(parse_error)?;
    let (params, universe) = header(doc.universe, doc.parameters, doc.reindex)?;
    grid(&params, &universe, &doc.grades, "grades")
}

pub fn fss_to_json<T: Scalar>(f: &FuzzySoftSet<T>) -> String {
    pretty(&SetDocument {
        universe: f.universe().labels().to_vec(),
        parameters: f.params().labels().to_vec(),
        reindex: f.params().reindex().map(<[f64]>::to_vec),
        grades: cells(f),
    })
}

/// Grade matrix with objects across the header row and parameters down
/// the first column. The top-left cell is ignored.
pub fn parse_fss_csv<T: Scalar>(text: &str) -> Result<FuzzySoftSet<T>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    for r in reader.records() {
        let r = r.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::Parse {
                line,
                column: 1,
                message: e.to_string(),
            }
        })?;
        records.push(r);
    }
    let Some((head, body)) = records.split_first() else {
        return Err(Error::InvalidUniverse("document has no header row".into()));
    };
    let universe = Universe::new(head.iter().skip(1).map(str::to_string))?;
    let params = ParameterSet::new(body.iter().map(|r| r.get(0).unwrap_or_default().to_string()))?;
    let mut grades = Vec::with_capacity(body.len());
    for (e, r) in body.iter().enumerate() {
        let line = r.position().map_or(e + 2, |p| p.line() as usize);
        if r.len() != universe.len() + 1 {
            return Err(Error::Parse {
                line,
                column: 1,
                message: format!(
                    "row `{}` has {} grades for {} objects",
                    params.label(e),
                    r.len() - 1,
                    universe.len()
                ),
            });
        }
        let row = r
            .iter()
            .skip(1)
            .enumerate()
            .map(|(x, text)| {
                grade_of(text, || {
                    format!(
                        "line {line}, column {} ({}, {})",
                        x + 2,
                        params.label(e),
                        universe.label(x)
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        grades.push(row);
    }
    FuzzySoftSet::new(params, universe, grades)
}

/// Finite family of sets sharing one parameter set and universe.
#[derive(Debug, Clone)]
pub struct SetFamily<T> {
    pub params: ParameterSet,
    pub universe: Universe,
    pub sets: Vec<FuzzySoftSet<T>>,
}

pub fn parse_family<T: Scalar>(text: &str) -> Result<SetFamily<T>> {
    let doc: TopologyDocument = serde_json::from_str(text).map_err(parse_error)?;
    let (params, universe) = header(doc.universe, doc.parameters, doc.reindex)?;
    let sets = doc
        .sets
        .iter()
        .enumerate()
        .map(|(i, rows)| grid(&params, &universe, rows, &format!("sets[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(SetFamily { params, universe, sets })
}

pub fn family_to_json<T: Scalar>(family: &SetFamily<T>) -> String {
    pretty(&TopologyDocument {
        universe: family.universe.labels().to_vec(),
        parameters: family.params.labels().to_vec(),
        reindex: family.params.reindex().map(<[f64]>::to_vec),
        sets: family.sets.iter().map(cells).collect(),
    })
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Reads JSON, or CSV when the file name ends in `.csv`.
pub fn load_fss<T: Scalar>(path: &Path) -> Result<FuzzySoftSet<T>> {
    let text = read_text(path)?;
    if is_csv(path) {
        parse_fss_csv(&text)
    } else {
        parse_fss(&text)
    }
}

/// Always writes the canonical JSON form.
pub fn save_fss<T: Scalar>(f: &FuzzySoftSet<T>, path: &Path) -> Result<()> {
    write_text(path, &fss_to_json(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    const FOREST: &str = r#"{
  "universe": [
    "A",
    "B",
    "C"
  ],
  "parameters": [
    "e1",
    "e2",
    "e3",
    "e4"
  ],
  "grades": [
    [
      "0.8",
      "0.3",
      "0.5"
    ],
    [
      "0.1",
      "0.5",
      "0.7"
    ],
    [
      "0.2",
      "0.3",
      "0.8"
    ],
    [
      "0.1",
      "0.3",
      "0.5"
    ]
  ]
}
"#;

    fn row(f: &FuzzySoftSet<f64>, e: usize) -> Vec<f64> {
        f.row(e).iter().map(|g| g.value()).collect()
    }

    #[test]
    fn forest_loads_and_round_trips() {
        let f: FuzzySoftSet<f64> = parse_fss(FOREST).unwrap();
        assert_eq!(row(&f, 0), vec![0.8, 0.3, 0.5]);
        assert_eq!(fss_to_json(&f), FOREST);
    }

    #[test]
    fn reindex_round_trips() {
        let f: FuzzySoftSet<f64> = parse_fss(FOREST).unwrap();
        let params = f.params().clone().with_auto_reindex();
        let g = FuzzySoftSet::new(params, f.universe().clone(), f.rows().map(<[_]>::to_vec).collect()).unwrap();
        let text = fss_to_json(&g);
        assert!(text.contains("\"reindex\""));
        let back: FuzzySoftSet<f64> = parse_fss(&text).unwrap();
        assert_eq!(back.params().reindex(), Some(&[0.25, 0.5, 0.75, 1.0][..]));
        assert_eq!(fss_to_json(&back), text);
    }

    #[test]
    fn awkward_binary_values_round_trip() {
        let text = FOREST.replace("\"0.8\"", "\"0.19999999999999996\"");
        let f: FuzzySoftSet<f64> = parse_fss(&text).unwrap();
        assert_eq!(fss_to_json(&f), text);
    }

    #[test]
    fn numbers_are_accepted_and_canonicalised() {
        let text = r#"{"universe":["a"],"parameters":["e"],"grades":[[0.25]]}"#;
        let f: FuzzySoftSet<f64> = parse_fss(text).unwrap();
        assert_eq!(f.grade(0, 0).value(), 0.25);
        assert!(fss_to_json(&f).contains("\"0.25\""));
    }

    #[test]
    fn empty_universe_is_rejected() {
        let text = r#"{"universe":[],"parameters":["e"],"grades":[[]]}"#;
        assert!(matches!(parse_fss::<f64>(text), Err(Error::InvalidUniverse(_))));
    }

    #[test]
    fn out_of_range_grade_names_the_cell() {
        let text = FOREST.replace("\"0.7\"", "\"1.2\"");
        match parse_fss::<f64>(&text) {
            Err(Error::InvalidCell { cell, message }) => {
                assert_eq!(cell, "grades[e2][C]");
                assert!(message.contains("1.2"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_error_has_position() {
        let text = "{\n  \"universe\": [\"a\",\n  oops";
        match parse_fss::<f64>(text) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 3);
                assert!(column >= 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ragged_rows_are_dimension_errors() {
        let text = r#"{"universe":["a","b"],"parameters":["e"],"grades":[["0.1"]]}"#;
        assert!(matches!(parse_fss::<f64>(text), Err(Error::DimensionMismatch(_))));
        let text = r#"{"universe":["a"],"parameters":["e","f"],"grades":[["0.1"]]}"#;
        assert!(matches!(parse_fss::<f64>(text), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"universe":["a"],"parameters":["e"],"grades":[["0.1"]],"extra":1}"#;
        assert!(matches!(parse_fss::<f64>(text), Err(Error::Parse { .. })));
    }

    #[test]
    fn csv_matches_json() {
        let csv = "param,A,B,C\ne1,0.8,0.3,0.5\ne2,0.1,0.5,0.7\ne3,0.2,0.3,0.8\ne4,0.1,0.3,0.5\n";
        let f: FuzzySoftSet<f64> = parse_fss_csv(csv).unwrap();
        assert_eq!(fss_to_json(&f), FOREST);
    }

    #[test]
    fn csv_cell_errors_have_line_and_column() {
        let csv = "p,A,B\ne1,0.1,0.2\ne2,0.3,x\n";
        match parse_fss_csv::<f64>(csv) {
            Err(Error::InvalidCell { cell, .. }) => assert_eq!(cell, "line 3, column 3 (e2, B)"),
            other => panic!("{other:?}"),
        }
        let csv = "p,A,B\ne1,0.1\n";
        assert!(matches!(parse_fss_csv::<f64>(csv), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(
            parse_fss_csv::<f64>("p\ne1\n"),
            Err(Error::InvalidUniverse(_))
        ));
    }

    #[test]
    fn family_round_trips() {
        let text = r#"{
  "universe": [
    "a"
  ],
  "parameters": [
    "e"
  ],
  "sets": [
    [
      [
        "0"
      ]
    ],
    [
      [
        "1"
      ]
    ]
  ]
}
"#;
        let fam: SetFamily<f64> = parse_family(text).unwrap();
        assert_eq!(fam.sets.len(), 2);
        assert!(fam.sets[0].is_null());
        assert_eq!(family_to_json(&fam), text);
        let bad = text.replacen("\"1\"", "\"2\"", 1);
        match parse_family::<f64>(&bad) {
            Err(Error::InvalidCell { cell, .. }) => assert_eq!(cell, "sets[1][e][a]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("forest.json");
        let f: FuzzySoftSet<f64> = parse_fss(FOREST).unwrap();
        save_fss(&f, &path).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), FOREST);
        let g: FuzzySoftSet<f64> = load_fss(&path).unwrap();
        assert_eq!(f, g);
        assert!(matches!(
            load_fss::<f64>(&dir.path().join("missing.json")),
            Err(Error::Io { .. })
        ));
    }
}
