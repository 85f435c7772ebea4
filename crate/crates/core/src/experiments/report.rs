use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Write through a temporary file in the same directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Nine significant digits, no exponent for ordinary magnitudes, trailing
/// zeros dropped.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&exp) {
        return format!("{x:.8e}");
    }
    let decimals = (8 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Num(f64),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Text(s) => {
                if s.contains([',', '"', '\n']) {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.clone()
                }
            }
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) => fmt_num(*x),
            Cell::Empty => String::new(),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<i32> for Cell {
    fn from(x: i32) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Int(x as i64)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

/// Build a row from heterogeneous values.
#[macro_export]
macro_rules! row {
    ($($x:expr),* $(,)?) => {
        vec![$($crate::experiments::Cell::from($x)),*]
    };
}

/// A CSV table with a fixed column order.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvTable {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl CsvTable {
    pub fn new(headers: &[&str]) -> Self {
        CsvTable {
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.headers.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.headers.join(",");
        s.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(Cell::render).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    /// Numeric column by header name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.headers.iter().position(|h| h == name)?;
        Some(
            self.rows
                .iter()
                .map(|r| match &r[i] {
                    Cell::Num(x) => *x,
                    Cell::Int(x) => *x as f64,
                    _ => f64::NAN,
                })
                .collect(),
        )
    }
}

/// Everything one study produces.
#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub study: String,
    pub config: Value,
    /// File name to table.
    pub tables: BTreeMap<String, CsvTable>,
    /// Headline numbers, also written to `summary.csv`.
    pub summary: BTreeMap<String, f64>,
    /// Extra files such as plots.
    pub attachments: BTreeMap<String, String>,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn new(study: &str, config: impl Serialize) -> Self {
        ExperimentReport {
            study: study.to_string(),
            config: serde_json::to_value(config).unwrap_or(Value::Null),
            tables: BTreeMap::new(),
            summary: BTreeMap::new(),
            attachments: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn table(&mut self, name: &str, table: CsvTable) {
        self.tables.insert(name.to_string(), table);
    }

    pub fn stat(&mut self, key: impl Into<String>, value: f64) {
        self.summary.insert(key.into(), value);
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.summary.get(key).copied()
    }

    pub fn summary_table(&self) -> CsvTable {
        let mut t = CsvTable::new(&["key", "value"]);
        for (k, v) in &self.summary {
            t.push(crate::row![k.as_str(), *v]);
        }
        t
    }

    /// Write every table, attachment, `summary.csv`, and `manifest.json`
    /// into `dir`. Returns the paths written.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| Error::from(e).in_file(dir))?;
        let mut written = Vec::new();
        let mut put = |name: &str, bytes: &[u8]| -> Result<()> {
            let p = dir.join(name);
            write_atomic(&p, bytes).map_err(|e| e.in_file(&p))?;
            written.push(p);
            Ok(())
        };
        for (name, t) in &self.tables {
            put(name, t.to_csv().as_bytes())?;
        }
        put("summary.csv", self.summary_table().to_csv().as_bytes())?;
        for (name, body) in &self.attachments {
            put(name, body.as_bytes())?;
        }
        let files: Vec<&str> = self
            .tables
            .keys()
            .map(String::as_str)
            .chain(["summary.csv"])
            .chain(self.attachments.keys().map(String::as_str))
            .collect();
        let stamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let manifest = json!({
            "study": self.study,
            "config": self.config,
            "files": files,
            "notes": self.notes,
            "version": env!("CARGO_PKG_VERSION"),
            "created_unix": stamp,
        });
        put("manifest.json", serde_json::to_string_pretty(&manifest)?.as_bytes())?;
        Ok(written)
    }
}
