//! Run configuration: command-line flags merged over an optional key=value file.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

/// Every setting is optional so file values can fill the gaps left by flags.
#[derive(Debug, Clone, Default, Args)]
pub struct RunConfig {
    /// Genus of the fiber surface.
    #[arg(long, global = true)]
    pub genus: Option<u32>,
    /// Degree bound Q.
    #[arg(long, alias = "degree-bound", global = true)]
    pub degree: Option<u32>,
    /// Fiber area; defaults to 4 times the degree bound.
    #[arg(long, global = true)]
    pub fiber_area: Option<f64>,
    /// Half-width of the twist annulus.
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    #[arg(long, global = true)]
    pub morse_pos: Option<u32>,
    #[arg(long, global = true)]
    pub morse_neg: Option<u32>,
    #[arg(long, global = true)]
    pub morse_saddle: Option<u32>,
    /// Orbit set, e.g. "e[1/2]^2 h0".
    #[arg(long, global = true)]
    pub set: Option<String>,
    /// Multiple m of the fiber class.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub fiber_mult: Option<i64>,
    #[arg(long, global = true)]
    pub max_q: Option<u32>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Upper limit on enumerated orbit sets.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Slope p/q for orbit and pairing commands.
    #[arg(long, global = true)]
    pub slope: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub y0: Option<f64>,
    /// Finite-difference step.
    #[arg(long, global = true)]
    pub step: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Cross-check pairings against the polygon count.
    #[arg(long, global = true)]
    pub verify_oracle: bool,
    /// Key=value configuration file; flags take precedence.
    #[arg(long, env = "PFHKIT_CONFIG", global = true)]
    pub config: Option<PathBuf>,
}

fn parse_value<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| CliError::Config(format!("line {line}: bad value {value:?} for {key}: {e}")))
}

impl RunConfig {
    /// Parses the flat file format: `key = value` per line, `#` comments.
    pub fn from_file_text(text: &str) -> Result<RunConfig, CliError> {
        let mut c = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {n}: expected key = value")))?;
            let key = key.trim().replace('_', "-");
            let value = value.trim();
            match key.as_str() {
                "genus" => c.genus = Some(parse_value(n, &key, value)?),
                "degree" | "degree-bound" => c.degree = Some(parse_value(n, &key, value)?),
                "fiber-area" => c.fiber_area = Some(parse_value(n, &key, value)?),
                "lambda" => c.lambda = Some(parse_value(n, &key, value)?),
                "morse-pos" => c.morse_pos = Some(parse_value(n, &key, value)?),
                "morse-neg" => c.morse_neg = Some(parse_value(n, &key, value)?),
                "morse-saddle" => c.morse_saddle = Some(parse_value(n, &key, value)?),
                "set" => c.set = Some(value.trim_matches('"').to_string()),
                "fiber-mult" => c.fiber_mult = Some(parse_value(n, &key, value)?),
                "max-q" => c.max_q = Some(parse_value(n, &key, value)?),
                "samples" => c.samples = Some(parse_value(n, &key, value)?),
                "tol" => c.tol = Some(parse_value(n, &key, value)?),
                "format" => c.format = Some(parse_value(n, &key, value)?),
                "cap" => c.cap = Some(parse_value(n, &key, value)?),
                "slope" => c.slope = Some(value.to_string()),
                "y0" => c.y0 = Some(parse_value(n, &key, value)?),
                "step" => c.step = Some(parse_value(n, &key, value)?),
                "seed" => c.seed = Some(parse_value(n, &key, value)?),
                "verify-oracle" => c.verify_oracle = parse_value(n, &key, value)?,
                _ => return Err(CliError::Config(format!("line {n}: unknown key {key:?}"))),
            }
        }
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_file_text(&text)
    }

    /// Fills unset fields from `file`.
    pub fn merged_over(self, file: RunConfig) -> RunConfig {
        RunConfig {
            genus: self.genus.or(file.genus),
            degree: self.degree.or(file.degree),
            fiber_area: self.fiber_area.or(file.fiber_area),
            lambda: self.lambda.or(file.lambda),
            morse_pos: self.morse_pos.or(file.morse_pos),
            morse_neg: self.morse_neg.or(file.morse_neg),
            morse_saddle: self.morse_saddle.or(file.morse_saddle),
            set: self.set.or(file.set),
            fiber_mult: self.fiber_mult.or(file.fiber_mult),
            max_q: self.max_q.or(file.max_q),
            samples: self.samples.or(file.samples),
            tol: self.tol.or(file.tol),
            format: self.format.or(file.format),
            cap: self.cap.or(file.cap),
            slope: self.slope.or(file.slope),
            y0: self.y0.or(file.y0),
            step: self.step.or(file.step),
            seed: self.seed.or(file.seed),
            verify_oracle: self.verify_oracle || file.verify_oracle,
            config: self.config,
        }
    }

    /// Loads the config file named by the flag or environment, if any.
    pub fn resolve(self) -> Result<RunConfig, CliError> {
        match self.config.clone() {
            Some(path) => {
                let file = Self::from_file(&path)?;
                Ok(self.merged_over(file))
            }
            None => Ok(self),
        }
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn require_degree(&self) -> Result<u32, CliError> {
        self.degree.ok_or(CliError::Missing("--degree"))
    }

    pub fn require_genus(&self) -> Result<u32, CliError> {
        self.genus.ok_or(CliError::Missing("--genus"))
    }

    pub fn morse(&self) -> pfhkit::MorseConfig {
        pfhkit::MorseConfig::new(
            self.morse_pos.unwrap_or(0),
            self.morse_neg.unwrap_or(0),
            self.morse_saddle.unwrap_or(0),
        )
    }

    /// Validated model profile; fiber area falls back to `4Q`.
    pub fn profile(&self) -> Result<pfhkit::TwistProfile, CliError> {
        let g = self.require_genus()?;
        let q = self.require_degree()?;
        let area = self.fiber_area.unwrap_or(4.0 * q as f64);
        let lambda = self.lambda.unwrap_or(pfhkit::profile::DEFAULT_LAMBDA);
        Ok(pfhkit::TwistProfile::new(g, q, area, lambda)?)
    }
}
