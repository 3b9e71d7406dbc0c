use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::ValueEnum;
use fieldbound_core::bounds::NumericPolicy;

/// Default output directory when `--out` is not given.
pub const OUT_DIR_ENV: &str = "FIELDBOUND_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub epsilon: f64,
    pub high_precision_digits: u32,
    pub method_a_cap: u64,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let p = NumericPolicy::default();
        RunConfig {
            epsilon: p.epsilon,
            high_precision_digits: p.precision_digits,
            method_a_cap: p.method_a_cap,
            output_format: Format::default(),
            output_path: None,
        }
    }
}

impl RunConfig {
    /// Checks the ranges required for a scan.
    pub fn validate(&self) -> Result<()> {
        self.validate_with_max_epsilon(1e-3)
    }

    /// `verify` may probe a coarser epsilon (up to 1) to see which items
    /// become borderline.
    pub fn validate_for_verify(&self) -> Result<()> {
        self.validate_with_max_epsilon(1.0)
    }

    fn validate_with_max_epsilon(&self, max: f64) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon <= max) {
            bail!("--epsilon must lie in (0, {max:e}], got {}", self.epsilon);
        }
        if self.high_precision_digits < 20 {
            bail!(
                "--precision-digits must be at least 20, got {}",
                self.high_precision_digits
            );
        }
        if self.method_a_cap == 0 {
            bail!("--method-a-cap must be positive");
        }
        Ok(())
    }

    pub fn policy(&self) -> NumericPolicy {
        NumericPolicy {
            epsilon: self.epsilon,
            precision_digits: self.high_precision_digits,
            method_a_cap: self.method_a_cap,
        }
    }

    /// Where to write output named `stem`: the explicit path, else a file in
    /// `$FIELDBOUND_OUT_DIR`, else `None` for stdout.
    pub fn resolve_output(&self, stem: &str) -> Option<PathBuf> {
        if let Some(p) = &self.output_path {
            return Some(p.clone());
        }
        let dir = std::env::var_os(OUT_DIR_ENV).filter(|d| !d.is_empty())?;
        Some(PathBuf::from(dir).join(format!("{stem}.{}", self.output_format.extension())))
    }
}
