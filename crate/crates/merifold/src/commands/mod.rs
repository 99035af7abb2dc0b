//! Command dispatch.

mod braid;
mod pattern;
mod satellite;
mod words;

use std::fs;
use std::path::PathBuf;

use merifold_core::{Error, Result, Word};
use serde_json::Value;

use crate::cli::{Cli, Verb};
use crate::report::{emit, Format, RunReport};

/// Settings shared by every command.
#[derive(Clone, Debug, Default)]
pub struct Context {
    pub trace: Option<PathBuf>,
    pub seed: u64,
}

impl Context {
    /// Writes one JSON object per line to `<trace dir>/<name>.jsonl`.
    pub fn write_trace(&self, name: &str, lines: &[Value]) -> Result<Option<String>> {
        let Some(dir) = &self.trace else { return Ok(None) };
        fs::create_dir_all(dir).map_err(io_error)?;
        let path = dir.join(format!("{name}.jsonl"));
        let mut body = String::new();
        for l in lines {
            body.push_str(&l.to_string());
            body.push('\n');
        }
        fs::write(&path, body).map_err(io_error)?;
        Ok(Some(path.display().to_string()))
    }
}

pub(crate) fn io_error(e: std::io::Error) -> Error {
    Error::precondition(format!("i/o: {e}"))
}

/// `a,b` as two positive integers.
pub(crate) fn pair(text: &str) -> Result<(u32, u32)> {
    let bad = |tok: &str| Error::Parse { position: 0, token: tok.into(), reason: "expected two integers `a,b`" };
    let (a, b) = text.split_once(',').ok_or_else(|| bad(text))?;
    let a = a.trim().parse().map_err(|_| bad(a))?;
    let b = b.trim().parse().map_err(|_| bad(b))?;
    Ok((a, b))
}

pub(crate) fn parse_list(text: &str, rank: u32) -> Result<Vec<Word>> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(|s| Word::parse(s, rank)).collect()
}

pub(crate) fn words_json(ws: &[Word]) -> Value {
    Value::from(ws.iter().map(ToString::to_string).collect::<Vec<_>>())
}

pub fn run(cli: &Cli, seed: u64) -> RunReport {
    let ctx = Context { trace: cli.trace.clone(), seed };
    let result = match &cli.verb {
        Verb::Word { op } => words::word(op),
        Verb::Sg { op } => words::sg(op),
        Verb::Pattern { op } => pattern::pattern(op, &ctx),
        Verb::Braid { op } => braid::braid(op),
        Verb::Satellite { op } => satellite::satellite(op, &ctx),
        Verb::Bridge(args) => satellite::bridge(args),
    };
    let report = result.unwrap_or_else(|e| RunReport::from_error(&e));
    if let Verb::Satellite { op: crate::cli::SatelliteOp::Fold { json: Some(path), .. } } = &cli.verb {
        if let Err(e) = fs::write(path, emit(&report, Format::Json)) {
            return RunReport::from_error(&io_error(e));
        }
    }
    report
}
