use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use hopfweil_core::operation::Check;

pub const SCHEMA: &str = "hopfweil-report/1";

/// A named table of exact values rendered as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push<I: IntoIterator<Item = T>, T: ToString>(&mut self, row: I) {
        let row: Vec<String> = row.into_iter().map(|c| c.to_string()).collect();
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// The machine-readable outcome of one command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub inputs_digest: String,
    pub parameters: BTreeMap<String, String>,
    pub pass: bool,
    pub error: Option<String>,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(command: &str, parameters: BTreeMap<String, String>, inputs: &[u8]) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        for (k, v) in &parameters {
            hasher.update([0]);
            hasher.update(k.as_bytes());
            hasher.update(b"=");
            hasher.update(v.as_bytes());
        }
        hasher.update([0]);
        hasher.update(inputs);
        Self {
            schema: SCHEMA,
            command: command.into(),
            inputs_digest: format!("{:x}", hasher.finalize()),
            parameters,
            pass: true,
            error: None,
            checks: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn checks(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn check(&mut self, name: &str, degree: Option<usize>, ok: bool, witness: impl FnOnce() -> String) {
        self.checks.push(Check::from_bool(name, degree, ok, witness));
    }

    pub fn table(&mut self, table: Table) {
        self.tables.push(table);
    }

    pub fn fail(&mut self, error: String) {
        self.error = Some(error);
    }

    pub fn finish(mut self) -> Self {
        self.pass = self.error.is_none() && self.checks.iter().all(|c| c.pass);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Blocks separated by blank lines: a summary, the checks, then one block per table.
    pub fn to_csv(&self) -> String {
        let mut blocks = Vec::new();
        let mut w = block();
        w.write_record(["schema", "command", "inputs_digest", "pass", "error"]).unwrap();
        w.write_record([self.schema, &self.command, &self.inputs_digest, bool_str(self.pass), self.error.as_deref().unwrap_or("")])
            .unwrap();
        blocks.push(finish(w));
        let mut w = block();
        w.write_record(["check", "degree", "pass", "witness"]).unwrap();
        for c in &self.checks {
            let degree = c.degree.map(|d| d.to_string()).unwrap_or_default();
            w.write_record([c.name.as_str(), &degree, bool_str(c.pass), c.witness.as_deref().unwrap_or("")]).unwrap();
        }
        blocks.push(finish(w));
        for t in &self.tables {
            let mut w = block();
            let header: Vec<String> = std::iter::once(format!("table:{}", t.name)).chain(t.columns.iter().cloned()).collect();
            w.write_record(&header).unwrap();
            for row in &t.rows {
                w.write_record(std::iter::once("").chain(row.iter().map(String::as_str))).unwrap();
            }
            blocks.push(finish(w));
        }
        blocks.join("\n")
    }
}

fn block() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().flexible(true).from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 fields")
}

fn bool_str(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}
