//! Run reports and their byte encodings.

use merifold_core::Error;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error,
    /// An instance check of a cited lemma failed.
    FalsifiedAxiom,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Error => "error",
            Status::FalsifiedAxiom => "falsified-axiom",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Error => 1,
            Status::FalsifiedAxiom => 2,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub status: Status,
    pub payload: Value,
    pub trace_ref: Option<String>,
    /// Human-readable lines for `--format text`.
    pub summary: Vec<String>,
    pub dot: Option<String>,
}

impl RunReport {
    pub fn ok(payload: Value, summary: Vec<String>) -> RunReport {
        RunReport { status: Status::Ok, payload, trace_ref: None, summary, dot: None }
    }

    pub fn with_dot(mut self, dot: String) -> RunReport {
        self.dot = Some(dot);
        self
    }

    pub fn usage(message: impl Into<String>) -> RunReport {
        let message = message.into();
        RunReport {
            status: Status::Error,
            payload: json!({ "error": "usage", "message": message }),
            trace_ref: None,
            summary: vec![format!("error: {message}")],
            dot: None,
        }
    }

    pub fn from_error(err: &Error) -> RunReport {
        let message = err.to_string();
        let (status, payload) = match err {
            Error::Falsified { axiom, detail } => (
                Status::FalsifiedAxiom,
                json!({ "error": "falsified", "axiom": axiom, "detail": detail, "message": message }),
            ),
            Error::Parse { position, token, reason } => (
                Status::Error,
                json!({ "error": "parse", "position": position, "token": token, "reason": reason, "message": message }),
            ),
            Error::IndexOutOfRange { .. } | Error::RankMismatch { .. } => {
                (Status::Error, json!({ "error": "rank", "message": message }))
            }
            Error::Precondition(_) => (Status::Error, json!({ "error": "precondition", "message": message })),
            Error::Unsupported(_) => (Status::Error, json!({ "error": "unsupported", "message": message })),
            Error::Stall(_) => (Status::Error, json!({ "error": "stall", "message": message })),
        };
        RunReport { status, payload, trace_ref: None, summary: vec![format!("{}: {message}", status.label())], dot: None }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schemaVersion": SCHEMA_VERSION,
            "verdict": self.status.label(),
            "payload": self.payload,
            "traceRef": self.trace_ref,
        })
    }
}

/// Deterministic bytes for a report. Object keys come out sorted.
pub fn emit(report: &RunReport, format: Format) -> Vec<u8> {
    let mut out = match format {
        Format::Json => serde_json::to_string_pretty(&report.to_json()).expect("json values always encode"),
        Format::Dot => match &report.dot {
            Some(d) => d.trim_end().to_string(),
            None => String::from("digraph empty {\n}"),
        },
        Format::Text => {
            let mut lines = vec![format!("verdict: {}", report.status.label())];
            lines.extend(report.summary.iter().cloned());
            if let Some(t) = &report.trace_ref {
                lines.push(format!("trace: {t}"));
            }
            lines.join("\n")
        }
    };
    out.push('\n');
    out.into_bytes()
}
