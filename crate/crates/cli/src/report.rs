//! Report envelope, rendering and exit codes.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use kronwebs::io::Conventions;
use kronwebs::par::default_threads;
use kronwebs::selftest::{self, SelftestReport, CRITERIA};
use serde::Serialize;
use thiserror::Error;

use crate::{Common, Format};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error(transparent)]
    Lib(#[from] kronwebs::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for unusable input, 3 for domain errors raised by the analysis.
    pub fn exit_code(&self) -> u8 {
        use kronwebs::Error as E;
        match self {
            CliError::Io(..) | CliError::Usage(_) => 2,
            CliError::Lib(E::Parse(_) | E::Schema(_)) => 2,
            CliError::Lib(_) => 3,
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    seed: u64,
    conventions: Conventions,
    verified: bool,
    result: &'a T,
}

/// A finished command: the JSON report, its text summary and whether every
/// internal check held.
pub struct Output {
    pub json: String,
    pub text: String,
    pub verified: bool,
}

impl Output {
    pub fn new<T: Serialize>(command: &str, common: &Common, verified: bool, result: &T, text: String) -> Self {
        let env = Envelope { command, seed: common.seed, conventions: Conventions::default(), verified, result };
        Output { json: kronwebs::io::to_string_pretty(&env), text, verified }
    }

    pub fn emit(&self, common: &Common) -> Result<(), CliError> {
        let mut body = match common.format {
            Format::Json => self.json.clone(),
            Format::Text => self.text.clone(),
        };
        if !body.ends_with('\n') {
            body.push('\n');
        }
        match &common.output {
            Some(path) => fs::write(path, body).map_err(|e| CliError::Io(path.clone(), e)),
            None => std::io::stdout()
                .write_all(body.as_bytes())
                .map_err(|e| CliError::Io("<stdout>".into(), e)),
        }
    }
}

pub fn selftest_cmd(common: &Common, only: Option<usize>) -> Result<Output, CliError> {
    let threads = default_threads();
    let report = match only {
        None => selftest::run(common.seed, threads),
        Some(id) if (1..=CRITERIA).contains(&id) => SelftestReport {
            seed: common.seed,
            conventions: Conventions::default(),
            criteria: vec![selftest::run_criterion(id, common.seed, threads)],
        },
        Some(id) => return Err(CliError::Usage(format!("criterion must be in 1..={CRITERIA}, got {id}"))),
    };
    let passed = report.criteria.iter().filter(|c| c.passed).count();
    let mut text = report.to_text();
    text.push_str(&format!("{passed}/{} criteria passed (seed {})\n", report.criteria.len(), common.seed));
    Ok(Output { json: report.to_json(), text, verified: report.passed() })
}
