//! Run reports printed by the command-line tool.

use std::fmt::Write as _;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}`; expected text, json or csv")),
        }
    }
}

/// Insertion-ordered string pairs, serialized as a JSON object.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Fields(Vec<(String, String)>);

impl Fields {
    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.0.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Serialize for Fields {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// SHA-256 over named inputs, each framed by its name and length.
#[derive(Debug, Clone, Default)]
pub struct InputDigest(Sha256);

impl InputDigest {
    pub fn new() -> Self {
        InputDigest(Sha256::new())
    }

    pub fn add(&mut self, name: &str, bytes: &[u8]) -> &mut Self {
        self.0.update((name.len() as u64).to_le_bytes());
        self.0.update(name.as_bytes());
        self.0.update((bytes.len() as u64).to_le_bytes());
        self.0.update(bytes);
        self
    }

    pub fn hex(&self) -> String {
        self.0
            .clone()
            .finalize()
            .iter()
            .fold(String::with_capacity(64), |mut s, b| {
                let _ = write!(s, "{b:02x}");
                s
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: Option<u64>,
    pub inputs_digest: String,
    pub status: Status,
    pub summary: Fields,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing_ms: u64,
}

impl RunReport {
    pub fn new(command: impl Into<String>, seed: Option<u64>, inputs_digest: String) -> Self {
        RunReport {
            command: command.into(),
            seed,
            inputs_digest,
            status: Status::Ok,
            summary: Fields::default(),
            table: None,
            witness: None,
            error: None,
            timing_ms: 0,
        }
    }

    pub fn violation(&mut self, witness: impl Into<String>) {
        if self.status == Status::Ok {
            self.status = Status::Violation;
        }
        self.witness.get_or_insert_with(|| witness.into());
    }

    pub fn fail(&mut self, error: impl ToString) {
        self.status = Status::Error;
        self.error = Some(error.to_string());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
            Format::Csv => self.csv(),
        }
    }

    fn header(&self) -> Vec<(&str, String)> {
        let mut out = vec![
            ("command", self.command.clone()),
            ("seed", self.seed.map_or_else(String::new, |s| s.to_string())),
            ("inputs_digest", self.inputs_digest.clone()),
            ("status", self.status.name().to_string()),
        ];
        out.extend(self.summary.iter().map(|(k, v)| (k, v.to_string())));
        if let Some(w) = &self.witness {
            out.push(("witness", w.clone()));
        }
        if let Some(e) = &self.error {
            out.push(("error", e.clone()));
        }
        out
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.header() {
            if k == "seed" && v.is_empty() {
                continue;
            }
            let _ = writeln!(s, "{k}: {v}");
        }
        if let Some(t) = &self.table {
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|c| {
                    t.rows
                        .iter()
                        .map(|r| r[c].chars().count())
                        .chain([t.columns[c].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(s, "{}", line(&t.columns));
            for r in &t.rows {
                let _ = writeln!(s, "{}", line(r));
            }
        }
        let _ = writeln!(s, "timing_ms: {}", self.timing_ms);
        s
    }

    /// `key,value` records, then a blank line and the table when present.
    fn csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        w.write_record(["key", "value"]).expect("in-memory write");
        for (k, v) in self.header() {
            w.write_record([k, v.as_str()]).expect("in-memory write");
        }
        w.write_record(["timing_ms", &self.timing_ms.to_string()])
            .expect("in-memory write");
        let mut out = String::from_utf8(w.into_inner().expect("flush")).expect("utf-8");
        if let Some(t) = &self.table {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&t.columns).expect("in-memory write");
            for r in &t.rows {
                w.write_record(r).expect("in-memory write");
            }
            out.push('\n');
            out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf-8"));
        }
        out
    }
}
