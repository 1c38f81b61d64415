use std::fs;
use std::io::Write;

use anyhow::{Context, Result};
use serde_json::{Map, Value};
use verbal_core::Error;

use crate::{Cli, Format};

pub const SCHEMA: u64 = 1;

/// A report: the JSON document plus the rows written in CSV mode.
pub struct Report {
    pub json: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut json = Map::new();
        json.insert("schema".into(), SCHEMA.into());
        json.insert("command".into(), command.into());
        Report { json, columns: Vec::new(), rows: Vec::new() }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.json.insert(key.into(), v.into());
    }

    /// Copies every field of a serializable value into the report.
    pub fn merge(&mut self, v: &impl serde::Serialize) -> Result<()> {
        match serde_json::to_value(v)? {
            Value::Object(m) => self.json.extend(m),
            other => anyhow::bail!("expected an object, got {other}"),
        }
        Ok(())
    }

    pub fn table(&mut self, columns: &[&'static str], rows: Vec<Vec<String>>) {
        self.columns = columns.to_vec();
        self.rows = rows;
    }

    fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(&Value::Object(self.json.clone()))? + "\n",
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
        })
    }

    pub fn emit(&self, cli: &Cli) -> Result<()> {
        let text = self.render(cli.format)?;
        match &cli.out {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

pub fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(";"),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Exit code and message: 2 for hypothesis violations, 1 for anything else.
pub fn classify(e: &anyhow::Error) -> (u8, String) {
    match e.downcast_ref::<Error>() {
        Some(err) if err.is_hypothesis() => (2, err.to_string()),
        Some(Error::BudgetExceeded { needed, budget }) => (
            1,
            format!(
                "budget exceeded: {needed} needed, budget {budget}; raise --budget-tuples or VERBAL_BUDGET_TUPLES"
            ),
        ),
        Some(Error::OrderExceedsCap { order, cap }) => (
            1,
            format!("group of order {order} exceeds the index cap {cap}; raise --budget-index or VERBAL_BUDGET_INDEX"),
        ),
        _ => (1, format!("error: {e:#}")),
    }
}
