//! The JSON envelope, CSV tables and file output shared by every command.

use std::fs;

use serde_json::{json, Map, Value};
use spherepack_core::Error;

use crate::{Cli, Format};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Rows for `--format csv`; cells are rendered exactly as in the JSON.
#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// What a command produced, before formatting.
#[derive(Debug)]
pub struct Report {
    pub params: Value,
    pub result: Value,
    pub table: Option<Table>,
    pub svg: Option<String>,
}

impl Report {
    pub fn new(params: Value, result: Value) -> Self {
        Self { params, result, table: None, svg: None }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn with_svg(mut self, svg: String) -> Self {
        self.svg = Some(svg);
        self
    }
}

fn envelope(command: &str, params: &Value, result: &Value, artifacts: &[String]) -> Value {
    let mut m = Map::new();
    m.insert("tool".into(), json!("spherepack"));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    m.insert("paramsEcho".into(), params.clone());
    m.insert("result".into(), result.clone());
    if !artifacts.is_empty() {
        m.insert("artifacts".into(), json!(artifacts));
    }
    Value::Object(m)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn emit(cli: &Cli, command: &str, report: Report) -> Result<(), CliError> {
    let mut params = report.params;
    if let Value::Object(m) = &mut params {
        m.insert("format".into(), json!(cli.format.as_str()));
    }
    let body = match cli.format {
        Format::Json => pretty(&envelope(command, &params, &report.result, &[])),
        Format::Csv => report
            .table
            .as_ref()
            .ok_or_else(|| usage(format!("`{command}` has no tabular output; use --format json")))?
            .render(),
        Format::Svg => report
            .svg
            .clone()
            .ok_or_else(|| usage(format!("`{command}` has no SVG rendering")))?,
    };
    match &cli.out {
        None => print!("{body}"),
        Some(path) => {
            fs::write(path, &body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let artifacts = [path.display().to_string()];
            print!("{}", pretty(&envelope(command, &params, &report.result, &artifacts)));
        }
    }
    Ok(())
}
