//! Uniform result reporting for every subcommand: an ordered set of
//! key/value data entries, a list of checks (hard requirements) and findings
//! (observations that never affect the exit code), and an optional grid of
//! rows for bulk output.
//!
//! Renderers: human-readable table (default), JSON (stable key order, the
//! only non-deterministic field being the timestamp), and CSV.

use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// A hard requirement: failure flips the process exit code to 1.
    Check,
    /// An observation (e.g. a conjectured bound): reported, never fatal.
    Finding,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    pub kind: Kind,
}

impl Check {
    pub fn new(
        label: impl Into<String>,
        expected: impl Into<String>,
        observed: impl Into<String>,
        pass: bool,
    ) -> Self {
        Check {
            label: label.into(),
            expected: expected.into(),
            observed: observed.into(),
            pass,
            kind: Kind::Check,
        }
    }

    pub fn finding(
        label: impl Into<String>,
        expected: impl Into<String>,
        observed: impl Into<String>,
        pass: bool,
    ) -> Self {
        Check {
            kind: Kind::Finding,
            ..Check::new(label, expected, observed, pass)
        }
    }
}

/// Bulk rows (e.g. the ratio grid).  Rendered verbatim by the CSV format;
/// the table format shows only the scalar data, and JSON carries the rows
/// under their own key.
#[derive(Debug, Clone)]
pub struct Grid {
    pub key: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub data: Vec<(String, Value)>,
    pub checks: Vec<Check>,
    pub grid: Option<Grid>,
    /// JSON-only payload (witness objects and other structures too large or
    /// too nested for the flat formats).
    pub json_extra: Vec<(String, Value)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            data: Vec::new(),
            checks: Vec::new(),
            grid: None,
            json_extra: Vec::new(),
        }
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.data.push((key.to_string(), value.into()));
    }

    /// True when no hard check failed (findings do not count).
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.kind == Kind::Finding || c.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# listcolor {}\n", self.command));
        let width = self
            .data
            .iter()
            .map(|(k, _)| k.len())
            .max()
            .unwrap_or(0)
            .max(12);
        for (key, value) in &self.data {
            out.push_str(&format!("{key:<width$}  {}\n", plain(value)));
        }
        if let Some(grid) = &self.grid {
            out.push_str(&format!(
                "{:<width$}  {} rows (use --format csv or json for the full grid)\n",
                grid.key,
                grid.rows.len()
            ));
        }
        if !self.checks.is_empty() {
            out.push_str("\nchecks:\n");
            for check in &self.checks {
                let status = match (check.kind, check.pass) {
                    (Kind::Check, true) => "PASS",
                    (Kind::Check, false) => "FAIL",
                    (Kind::Finding, true) => "FINDING holds",
                    (Kind::Finding, false) => "FINDING violated",
                };
                out.push_str(&format!(
                    "[{status}] {} | expected {} | observed {}\n",
                    check.label, check.expected, check.observed
                ));
            }
            out.push_str(&format!(
                "\nresult: {}\n",
                if self.passed() { "PASS" } else { "FAIL" }
            ));
        }
        out
    }

    fn render_json(&self) -> String {
        // serde_json's default map is ordered by key, so everything below
        // serializes with a stable key order.
        let mut root = serde_json::Map::new();
        root.insert("command".into(), Value::String(self.command.clone()));
        root.insert(
            "generated_at".into(),
            Value::String(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)),
        );
        root.insert(
            "tool_version".into(),
            Value::String(env!("CARGO_PKG_VERSION").into()),
        );
        let mut data = serde_json::Map::new();
        for (key, value) in self.data.iter().chain(self.json_extra.iter()) {
            data.insert(key.clone(), value.clone());
        }
        if let Some(grid) = &self.grid {
            let rows: Vec<Value> = grid
                .rows
                .iter()
                .map(|row| {
                    let mut object = serde_json::Map::new();
                    for (name, cell) in grid.header.iter().zip(row) {
                        // Grid cells are formatted numbers; keep them as JSON
                        // numbers when they parse cleanly.
                        let value = cell
                            .parse::<f64>()
                            .ok()
                            .and_then(serde_json::Number::from_f64)
                            .map_or_else(|| Value::String(cell.clone()), Value::Number);
                        object.insert((*name).into(), value);
                    }
                    Value::Object(object)
                })
                .collect();
            data.insert(grid.key.into(), Value::Array(rows));
        }
        root.insert("data".into(), Value::Object(data));
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut object = serde_json::Map::new();
                object.insert("label".into(), Value::String(c.label.clone()));
                object.insert("expected".into(), Value::String(c.expected.clone()));
                object.insert("observed".into(), Value::String(c.observed.clone()));
                object.insert(
                    "kind".into(),
                    Value::String(
                        match c.kind {
                            Kind::Check => "check",
                            Kind::Finding => "finding",
                        }
                        .into(),
                    ),
                );
                object.insert("pass".into(), Value::Bool(c.pass));
                Value::Object(object)
            })
            .collect();
        root.insert("checks".into(), Value::Array(checks));
        root.insert("pass".into(), Value::Bool(self.passed()));
        let mut text = serde_json::to_string_pretty(&Value::Object(root))
            .expect("report serialization cannot fail");
        text.push('\n');
        text
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        if let Some(grid) = &self.grid {
            out.push_str(&grid.header.join(","));
            out.push('\n');
            for row in &grid.rows {
                let cells: Vec<String> = row.iter().map(|c| csv_escape(c)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            return out;
        }
        if !self.data.is_empty() {
            out.push_str("key,value\n");
            for (key, value) in &self.data {
                out.push_str(&format!("{},{}\n", csv_escape(key), csv_escape(&plain(value))));
            }
        }
        if !self.checks.is_empty() {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str("label,expected,observed,kind,pass\n");
            for c in &self.checks {
                let kind = match c.kind {
                    Kind::Check => "check",
                    Kind::Finding => "finding",
                };
                out.push_str(&format!(
                    "{},{},{},{kind},{}\n",
                    csv_escape(&c.label),
                    csv_escape(&c.expected),
                    csv_escape(&c.observed),
                    c.pass
                ));
            }
        }
        out
    }
}

/// Render a JSON value without quoting plain strings.
fn plain(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}
