//! Subcommand implementations. Each returns its files in memory so callers
//! can compare runs byte for byte before anything touches the disk.

pub mod all_checks;
pub mod caratheodory;
pub mod eikonal;
pub mod fresnel;
pub mod inversion;
pub mod lattice;
pub mod slits;

use crate::config::ConfigError;
use crate::output::Artifact;

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Model(#[from] mayerfield::Error),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

pub type CommandResult<T> = std::result::Result<T, CommandError>;

/// One machine-readable verdict line.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            passed,
            detail: detail.into(),
        }
    }

    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("{verdict} {}: {}", self.label, self.detail)
    }
}

/// Accumulates report text and checks.
#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn check(&mut self, check: Check) {
        self.lines.push(check.line());
        self.checks.push(check);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self, header: &str) -> String {
        let mut out = header.to_string();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out
    }
}

/// Files plus verdicts from one subcommand.
#[derive(Debug)]
pub struct CommandOutput {
    pub artifacts: Vec<Artifact>,
    pub checks: Vec<Check>,
}

impl CommandOutput {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Places every artifact under `dir/`.
    pub fn nested(mut self, dir: &str) -> Self {
        for a in &mut self.artifacts {
            a.name = format!("{dir}/{}", a.name);
        }
        self
    }
}

pub(crate) fn ratio_in_band(ratio: f64) -> bool {
    (3.5..=4.5).contains(&ratio)
}

pub(crate) fn sci(v: f64) -> String {
    format!("{v:.6e}")
}
