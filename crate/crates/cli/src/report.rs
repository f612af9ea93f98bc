use std::fmt;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Output of one command: human text plus one structured record.
///
/// The record always carries `command`, `case`, `verdict`, `matrices`,
/// `vectors` and `witnesses`; commands add their own keys next to them.
pub struct Report {
    pub command: &'static str,
    pub case: Option<String>,
    pub verdict: Verdict,
    pub text: String,
    pub matrices: Map<String, Value>,
    pub vectors: Map<String, Value>,
    pub witnesses: Vec<Value>,
    pub extra: Map<String, Value>,
}

impl Report {
    pub fn new(command: &'static str, case: Option<String>) -> Self {
        Self {
            command,
            case,
            verdict: Verdict::Pass,
            text: String::new(),
            matrices: Map::new(),
            vectors: Map::new(),
            witnesses: Vec::new(),
            extra: Map::new(),
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn fail_unless(&mut self, ok: bool) {
        if !ok {
            self.verdict = Verdict::Fail;
        }
    }

    pub fn record(&self) -> Value {
        let mut m = self.extra.clone();
        m.insert("command".into(), json!(self.command));
        m.insert("case".into(), json!(self.case));
        m.insert("verdict".into(), json!(self.verdict.to_string()));
        m.insert("matrices".into(), Value::Object(self.matrices.clone()));
        m.insert("vectors".into(), Value::Object(self.vectors.clone()));
        m.insert("witnesses".into(), Value::Array(self.witnesses.clone()));
        Value::Object(m)
    }

    pub fn print(&self, format: Format) {
        match format {
            Format::Text => {
                print!("{}", self.text);
                println!("verdict: {}", self.verdict);
            }
            Format::Json => println!("{}", self.record()),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input: unreadable file, parse error, invalid arrangement.
    Usage(String),
    /// The computation itself could not be completed.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => m,
        }
    }

    pub fn print(&self, command: &str, format: Format) {
        eprintln!("dp2 {command}: {}", self.message());
        if format == Format::Json {
            let rec = json!({
                "command": command,
                "case": null,
                "verdict": "error",
                "error": self.message(),
                "matrices": {},
                "vectors": {},
                "witnesses": [],
            });
            println!("{rec}");
        }
    }
}
