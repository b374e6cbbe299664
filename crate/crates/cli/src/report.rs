//! Uniform experiment output: a CSV table (RFC-4180 quoting, byte-stable
//! for a fixed config+seed) and a JSON summary carrying the config echo,
//! derived constants, per-assertion results, and a timestamp (the one field
//! excluded from the reproducibility contract).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    /// Config echo + derived constants, deterministically ordered.
    pub header: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub assertions: Vec<Assertion>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            header: BTreeMap::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            assertions: Vec::new(),
        }
    }

    pub fn set<K: Into<String>, V: std::fmt::Display>(&mut self, key: K, value: V) {
        self.header.insert(key.into(), value.to_string());
    }

    pub fn columns<S: Into<String>>(&mut self, cols: Vec<S>) {
        self.columns = cols.into_iter().map(Into::into).collect();
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn check<S: Into<String>, D: Into<String>>(&mut self, name: S, passed: bool, detail: D) {
        self.assertions.push(Assertion { name: name.into(), passed, detail: detail.into() });
    }

    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn write_csv(&self, path: &Path) -> std::io::Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json(&self, path: &Path) -> std::io::Result<()> {
        #[derive(Serialize)]
        struct Summary<'a> {
            command: &'a str,
            generated_at_unix: u64,
            header: &'a BTreeMap<String, String>,
            assertions: &'a [Assertion],
            all_passed: bool,
            row_count: usize,
        }
        let s = Summary {
            command: &self.command,
            generated_at_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            header: &self.header,
            assertions: &self.assertions,
            all_passed: self.all_passed(),
            row_count: self.rows.len(),
        };
        let mut f = std::fs::File::create(path)?;
        writeln!(f, "{}", serde_json::to_string_pretty(&s)?)?;
        Ok(())
    }

    /// Human-readable dump to stdout: header, rows (truncated), assertions.
    pub fn print(&self, max_rows: usize) {
        println!("# {}", self.command);
        for (k, v) in &self.header {
            println!("#   {k} = {v}");
        }
        if !self.columns.is_empty() {
            println!("{}", self.columns.join(","));
            for row in self.rows.iter().take(max_rows) {
                println!("{}", row.join(","));
            }
            if self.rows.len() > max_rows {
                println!("# … {} more rows", self.rows.len() - max_rows);
            }
        }
        for a in &self.assertions {
            println!(
                "{} {} — {}",
                if a.passed { "PASS" } else { "FAIL" },
                a.name,
                a.detail
            );
        }
    }
}

pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}
