use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::input::{CliError, CliResult, InputFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Undecided,
    Failed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Records,
}

/// The output of one command: an echo of the normalized command line, a
/// digest of everything that was read, the result records, and the witnesses
/// an independent checker needs.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub digest: String,
    pub status: Status,
    pub records: Vec<(String, String)>,
    pub witnesses: Vec<(String, String)>,
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: String, inputs: &[&InputFile]) -> Report {
        Report {
            digest: input_digest(&command, inputs),
            command,
            status: Status::Ok,
            records: Vec::new(),
            witnesses: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn record(&mut self, key: impl Into<String>, value: impl ToString) {
        self.records.push((key.into(), value.to_string()));
    }

    pub fn witness(&mut self, key: impl Into<String>, value: impl ToString) {
        self.witnesses.push((key.into(), value.to_string()));
    }

    pub fn undecided(&mut self, bound: u64) {
        self.status = Status::Undecided;
        self.record("undecided.bound", bound);
    }

    pub fn render(&self, format: Format) -> String {
        let status = match self.status {
            Status::Ok => "ok",
            Status::Undecided => "undecided",
            Status::Failed => "failed",
        };
        let mut out = String::new();
        match format {
            Format::Records => {
                out.push_str("# galcoh report\n");
                let _ = writeln!(out, "command: {}", self.command);
                let _ = writeln!(out, "input_digest: {}", self.digest);
                let _ = writeln!(out, "status: {status}");
                for (k, v) in &self.records {
                    let _ = writeln!(out, "{k}: {v}");
                }
                out.push_str("# witnesses\n");
                for (k, v) in &self.witnesses {
                    let _ = writeln!(out, "{k}: {v}");
                }
                if let Some(ms) = self.timing_ms {
                    let _ = writeln!(out, "# timing: {ms} ms");
                }
            }
            Format::Text => {
                let width = self
                    .records
                    .iter()
                    .chain(&self.witnesses)
                    .map(|(k, _)| k.chars().count())
                    .max()
                    .unwrap_or(0)
                    .max(12);
                let _ = writeln!(out, "galcoh {}", self.command);
                let _ = writeln!(out, "  {:width$}  {}", "input digest", self.digest);
                let _ = writeln!(out, "  {:width$}  {status}", "status");
                out.push_str("\nResult\n");
                for (k, v) in &self.records {
                    let _ = writeln!(out, "  {k:width$}  {v}");
                }
                if !self.witnesses.is_empty() {
                    out.push_str("\nWitnesses\n");
                    for (k, v) in &self.witnesses {
                        let _ = writeln!(out, "  {k:width$}  {v}");
                    }
                }
                if let Some(ms) = self.timing_ms {
                    let _ = writeln!(out, "\nTiming: {ms} ms");
                }
            }
        }
        out
    }
}

/// SHA-256 over the normalized command and each input's bytes, length-prefixed.
pub fn input_digest(command: &str, inputs: &[&InputFile]) -> String {
    let mut h = Sha256::new();
    h.update((command.len() as u64).to_le_bytes());
    h.update(command.as_bytes());
    for f in inputs {
        h.update((f.bytes.len() as u64).to_le_bytes());
        h.update(&f.bytes);
    }
    format!("sha256:{}", hex::encode(h.finalize()))
}

/// A report read back from disk in the records format.
#[derive(Clone, Debug)]
pub struct ParsedReport {
    pub command: String,
    pub digest: String,
    pub status: String,
    pub records: Vec<(String, String)>,
    pub witnesses: Vec<(String, String)>,
}

impl ParsedReport {
    pub fn parse(path: &str, text: &str) -> CliResult<ParsedReport> {
        let err = |line: usize, m: &str| CliError::Input {
            path: path.to_string(),
            line,
            message: m.to_string(),
        };
        let mut header: Vec<(usize, String, String)> = Vec::new();
        let mut records = Vec::new();
        let mut witnesses = Vec::new();
        let mut in_witnesses = false;
        for (i, line) in text.lines().enumerate() {
            if line.trim() == "# witnesses" {
                in_witnesses = true;
                continue;
            }
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once(": ")
                .or_else(|| line.strip_suffix(':').map(|k| (k, "")))
                .ok_or_else(|| err(i + 1, "expected `key: value`; is this a records-format report?"))?;
            let pair = (k.to_string(), v.to_string());
            if header.len() < 3 {
                header.push((i + 1, pair.0, pair.1));
            } else if in_witnesses {
                witnesses.push(pair);
            } else {
                records.push(pair);
            }
        }
        let field = |idx: usize, name: &str| -> CliResult<String> {
            match header.get(idx) {
                Some((_, k, v)) if k == name => Ok(v.clone()),
                Some((line, k, _)) => Err(err(*line, &format!("expected `{name}`, found `{k}`"))),
                None => Err(err(0, &format!("missing `{name}`"))),
            }
        };
        Ok(ParsedReport {
            command: field(0, "command")?,
            digest: field(1, "input_digest")?,
            status: field(2, "status")?,
            records,
            witnesses,
        })
    }

    pub fn witness(&self, key: &str) -> Option<&str> {
        self.witnesses.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn witnesses_with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = (&'a str, &'a str)> + 'a {
        self.witnesses
            .iter()
            .filter_map(move |(k, v)| k.strip_prefix(prefix).map(|rest| (rest, v.as_str())))
    }
}
