//! Report model shared by every subcommand, printed as text or JSON.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Property {
    pub anchor: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub properties: Vec<Property>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    pub exit: i32,
    /// Free-form lines for the text format only.
    #[serde(skip)]
    pub lines: Vec<String>,
    /// Replaces the whole text format when set.
    #[serde(skip)]
    pub raw: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            properties: Vec::new(),
            data: None,
            exit: 0,
            lines: Vec::new(),
            raw: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs
            .insert(key.into(), serde_json::to_value(value).expect("serializable input"));
        self
    }

    /// An asserted property.
    pub fn check(&mut self, anchor: &str, holds: bool, detail: impl Into<String>) -> &mut Self {
        self.push(anchor, if holds { Status::Pass } else { Status::Fail }, detail)
    }

    pub fn info(&mut self, anchor: &str, detail: impl Into<String>) -> &mut Self {
        self.push(anchor, Status::Info, detail)
    }

    fn push(&mut self, anchor: &str, status: Status, detail: impl Into<String>) -> &mut Self {
        self.properties.push(Property {
            anchor: anchor.into(),
            status,
            detail: detail.into(),
        });
        self
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    pub fn data(&mut self, value: impl Serialize) -> &mut Self {
        self.data = Some(serde_json::to_value(value).expect("serializable data"));
        self
    }

    /// Sets the exit code from the property statuses.
    pub fn finish(mut self) -> Self {
        if self.exit == 0 && self.properties.iter().any(|p| p.status == Status::Fail) {
            self.exit = 1;
        }
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("serializable report");
            s.push('\n');
            return s;
        }
        if let Some(raw) = &self.raw {
            return raw.clone();
        }
        let mut out = format!("{}\n", self.command);
        for (k, v) in &self.inputs {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("  {k} = {v}\n"));
        }
        for p in &self.properties {
            let tag = match p.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            out.push_str(&format!("{tag} {}: {}\n", p.anchor, p.detail));
        }
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out
    }
}
