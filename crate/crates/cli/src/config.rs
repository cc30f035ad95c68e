//! Run configuration: command-line flags layered over an optional TOML file.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;
use serde::Deserialize;

use pscoh::algebroid::BracketSign;
use pscoh::polyform::BaseModel;
use pscoh::simplicial::DEFAULT_MAX_SIMPLICES;
use pscoh::verify::DEFAULT_CASES;

use crate::CliError;

/// Options shared by every subcommand. Each one may also be set in the
/// `--config` file; a flag given on the command line wins.
#[derive(Args, Clone, Debug, Default)]
pub struct Flags {
    /// TOML file with default values for the options below.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Simplicial complex: a JSON file or `builtin:NAME`.
    #[arg(long, global = true, value_name = "PATH")]
    pub complex: Option<String>,
    /// Lie algebra: a JSON file or `builtin:NAME`.
    #[arg(long, global = true, value_name = "PATH")]
    pub liealg: Option<String>,
    /// Base model of piecewise forms.
    #[arg(long, global = true, value_name = "whitney|pr")]
    pub model: Option<String>,
    /// Polynomial degree `r` of the `pr` model.
    #[arg(long, global = true, value_name = "R")]
    pub poly_degree: Option<u32>,
    /// Sign of `[u,v]` in the section bracket.
    #[arg(long, global = true, value_name = "paper|standard|auto")]
    pub bracket_sign: Option<String>,
    /// Seed of the random generators.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Random cases per property.
    #[arg(long, global = true, value_name = "N")]
    pub cases: Option<usize>,
    /// Largest accepted number of simplices in an input complex.
    #[arg(long, global = true, value_name = "N")]
    pub max_simplices: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pub text: bool,
}

/// The `--config` file. Keys mirror the long flags with underscores.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    complex: Option<String>,
    liealg: Option<String>,
    model: Option<String>,
    poly_degree: Option<u32>,
    bracket_sign: Option<String>,
    seed: Option<u64>,
    cases: Option<usize>,
    max_simplices: Option<usize>,
    out: Option<PathBuf>,
    text: Option<bool>,
}

/// Requested bracket-sign convention; `Auto` runs the bracket-sign experiment
/// on the inputs and uses the convention it selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignChoice {
    Fixed(BracketSign),
    Auto,
}

impl FromStr for SignChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        if s == "auto" {
            return Ok(SignChoice::Auto);
        }
        s.parse().map(SignChoice::Fixed).map_err(|_| {
            CliError::Input(format!("unknown bracket sign {s:?} (expected paper, standard or auto)"))
        })
    }
}

impl std::fmt::Display for SignChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SignChoice::Fixed(s) => write!(f, "{s}"),
            SignChoice::Auto => write!(f, "auto"),
        }
    }
}

/// Fully resolved options.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub complex: Option<String>,
    pub liealg: Option<String>,
    pub model: BaseModel,
    pub bracket_sign: SignChoice,
    pub seed: u64,
    pub cases: usize,
    pub max_simplices: usize,
    pub out: Option<PathBuf>,
    pub text: bool,
}

fn parse_model(name: &str, degree: Option<u32>) -> Result<BaseModel, CliError> {
    match name.to_ascii_lowercase().as_str() {
        "whitney" => Ok(BaseModel::Whitney),
        "pr" => Ok(BaseModel::Pr(degree.unwrap_or(1))),
        _ => Err(CliError::Input(format!("unknown model {name:?} (expected whitney or pr)"))),
    }
}

fn read_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))
}

impl RunConfig {
    pub fn resolve(flags: &Flags) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(p) => read_config(p)?,
            None => FileConfig::default(),
        };
        let model_name = flags.model.clone().or(file.model).unwrap_or_else(|| "whitney".into());
        let model = parse_model(&model_name, flags.poly_degree.or(file.poly_degree))?;
        let bracket_sign = match flags.bracket_sign.clone().or(file.bracket_sign) {
            Some(s) => s.parse()?,
            None => SignChoice::Auto,
        };
        let cases = flags.cases.or(file.cases).unwrap_or(DEFAULT_CASES);
        if cases == 0 {
            return Err(CliError::Input("--cases must be positive".into()));
        }
        Ok(RunConfig {
            complex: flags.complex.clone().or(file.complex),
            liealg: flags.liealg.clone().or(file.liealg),
            model,
            bracket_sign,
            seed: flags.seed.or(file.seed).unwrap_or(0),
            cases,
            max_simplices: flags.max_simplices.or(file.max_simplices).unwrap_or(DEFAULT_MAX_SIMPLICES),
            out: flags.out.clone().or(file.out),
            text: flags.text || file.text.unwrap_or(false),
        })
    }
}
