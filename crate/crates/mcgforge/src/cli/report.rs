use serde::Serialize;
use serde_json::{json, Map, Value};

use super::config::Config;

pub const SCHEMA_VERSION: &str = "1.0.0";

pub fn report_schema_version() -> &'static str {
    SCHEMA_VERSION
}

/// Line-delimited JSON records followed by `#`-prefixed summary lines.
/// Object keys are sorted, so equal inputs give equal bytes.
pub struct Report {
    command: String,
    records: Vec<Value>,
    summary: Vec<String>,
    pub certificates: usize,
    pub missing: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), records: Vec::new(), summary: Vec::new(), certificates: 0, missing: Vec::new() }
    }

    pub fn record(&mut self, kind: &str, body: impl Serialize) {
        let mut v = serde_json::to_value(body).expect("report bodies serialize");
        if !v.is_object() {
            v = json!({ "value": v });
        }
        let m = v.as_object_mut().expect("object");
        m.insert("record".into(), json!(kind));
        m.insert("schema".into(), json!(SCHEMA_VERSION));
        self.records.push(v);
    }

    /// A certificate slot: `Some` is counted, `None` noted as missing.
    pub fn certificate(&mut self, label: &str, cert: Option<Value>) {
        match cert {
            Some(c) => {
                self.certificates += 1;
                self.record("certificate", json!({ "label": label, "present": true, "certificate": c }));
            }
            None => {
                self.missing.push(label.to_string());
                self.record("certificate", json!({ "label": label, "present": false }));
            }
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    pub fn render(&self, args: &Value, cfg: &Config, environment: Option<Value>) -> String {
        let mut header = Map::new();
        header.insert("record".into(), json!("header"));
        header.insert("schema".into(), json!(SCHEMA_VERSION));
        header.insert("command".into(), json!(self.command));
        header.insert("args".into(), args.clone());
        header.insert("config".into(), serde_json::to_value(cfg).expect("config serializes"));
        header.insert("tool".into(), json!(format!("mcgforge {}", env!("CARGO_PKG_VERSION"))));
        if let Some(e) = environment {
            header.insert("environment".into(), e);
        }
        let mut out = String::new();
        out.push_str(&Value::Object(header).to_string());
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        let done = json!({
            "record": "summary",
            "schema": SCHEMA_VERSION,
            "records": self.records.len(),
            "certificates": self.certificates,
            "missing": self.missing,
        });
        out.push_str(&done.to_string());
        out.push('\n');
        for l in &self.summary {
            out.push_str("# ");
            out.push_str(l);
            out.push('\n');
        }
        out
    }
}
