//! `pscoh`: cohomology of piecewise polynomial forms, Chevalley–Eilenberg
//! complexes and trivial Lie algebroids from the command line.
//!
//! Exit codes: 0 when every verdict passes, 1 when a verdict fails, 2 for
//! input errors and 3 when an internal algebraic identity breaks.

mod config;
mod text;

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use pscoh::algebroid::BracketSign;
use pscoh::fixtures;
use pscoh::liealg::{LieAlgebra, LieAlgebraJson, Violation};
use pscoh::simplicial::{ComplexFile, SimplicialComplex};
use pscoh::verify::{
    algebroid_cohomology_report, betti_report, bracket_sign_suite, cartan_suite, ce_report, kunneth_suite, mv_suite,
    star_suite, structural_suite, subdivision_suite, SuiteOptions, SuiteReport,
};
use pscoh::Error;

use config::{Flags, RunConfig, SignChoice};

#[derive(Parser, Debug)]
#[command(name = "pscoh", version, about = "Exact cohomology of piecewise polynomial forms and trivial Lie algebroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers of a complex from simplicial cochains and from Whitney forms.
    Betti,
    /// Chevalley–Eilenberg cohomology of a Lie algebra with representatives.
    Ce,
    /// Cohomology of the trivial algebroid complex against the Künneth prediction.
    AlgebroidCohomology,
    /// Runs a randomized verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteName,
    },
    /// Lists the built-in complexes and Lie algebras.
    List,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum SuiteName {
    BracketSign,
    Cartan,
    Kunneth,
    Mv,
    Star,
    Structural,
    Subdivision,
    /// Every suite above.
    All,
}

impl SuiteName {
    const EACH: [SuiteName; 7] = [
        SuiteName::BracketSign,
        SuiteName::Cartan,
        SuiteName::Kunneth,
        SuiteName::Mv,
        SuiteName::Star,
        SuiteName::Structural,
        SuiteName::Subdivision,
    ];

    fn uses_bracket_sign(self) -> bool {
        matches!(self, SuiteName::Cartan | SuiteName::Structural | SuiteName::All)
    }

    fn run(self, label: &str, k: &Arc<SimplicialComplex>, g: &Arc<LieAlgebra>, opts: &SuiteOptions) -> pscoh::Result<SuiteReport> {
        let suite = match self {
            SuiteName::BracketSign => bracket_sign_suite,
            SuiteName::Cartan => cartan_suite,
            SuiteName::Kunneth => kunneth_suite,
            SuiteName::Mv => mv_suite,
            SuiteName::Star => star_suite,
            SuiteName::Structural => structural_suite,
            SuiteName::Subdivision => subdivision_suite,
            SuiteName::All => unreachable!("expanded by the caller"),
        };
        suite(label, k, g, opts)
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    InvalidAlgebra { source: String, violation: Violation },
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Integrity(_)) => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::InvalidAlgebra { source, violation } => {
                write!(f, "invalid Lie algebra {source}: {violation}")
            }
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

/// A finished command: its JSON report, text rendering and verdict.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    inputs: BTreeMap<&'a str, String>,
    options: BTreeMap<&'a str, Value>,
    report: Value,
    ok: bool,
}

fn builtin<'a>(table: &'a [(&str, &'a str)], name: &str, kind: &str) -> Result<&'a str, CliError> {
    table.iter().find(|(n, _)| *n == name).map(|(_, s)| *s).ok_or_else(|| {
        let names: Vec<&str> = table.iter().map(|(n, _)| *n).collect();
        CliError::Input(format!("no built-in {kind} named {name:?} (available: {})", names.join(", ")))
    })
}

fn read_source(spec: &str, table: &[(&str, &str)], kind: &str) -> Result<String, CliError> {
    match spec.strip_prefix("builtin:") {
        Some(name) => Ok(builtin(table, name, kind)?.to_string()),
        None => std::fs::read_to_string(spec).map_err(|e| CliError::Input(format!("cannot read {spec}: {e}"))),
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(spec: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Core(Error::Parse(format!("{spec}: {e}"))))
}

fn load_complex(spec: &str, max_simplices: usize) -> Result<Arc<SimplicialComplex>, CliError> {
    let file: ComplexFile = parse_json(spec, &read_source(spec, fixtures::COMPLEXES, "complex")?)?;
    Ok(Arc::new(SimplicialComplex::build_with_limit(&file.maximal_simplices, max_simplices)?))
}

fn load_algebra(spec: &str) -> Result<Arc<LieAlgebra>, CliError> {
    let file: LieAlgebraJson = parse_json(spec, &read_source(spec, fixtures::ALGEBRAS, "Lie algebra")?)?;
    let g = file.build()?;
    if let Some(violation) = g.validate() {
        return Err(CliError::InvalidAlgebra { source: spec.to_string(), violation });
    }
    Ok(Arc::new(g))
}

fn required<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    value.as_deref().ok_or_else(|| CliError::Input(format!("{flag} is required for this command")))
}

/// Short name of an input for report labels: the built-in name or the file stem.
fn short_name(spec: &str) -> String {
    spec.strip_prefix("builtin:").map(str::to_string).unwrap_or_else(|| {
        Path::new(spec).file_stem().map_or_else(|| spec.to_string(), |s| s.to_string_lossy().into_owned())
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn betti(cfg: &RunConfig) -> Result<Output, CliError> {
    let k = load_complex(required(&cfg.complex, "--complex")?, cfg.max_simplices)?;
    let r = betti_report(&k)?;
    Ok(Output { json: to_value(&r), text: text::betti(&r), ok: r.ok })
}

fn ce(cfg: &RunConfig) -> Result<Output, CliError> {
    let g = load_algebra(required(&cfg.liealg, "--liealg")?)?;
    let r = ce_report(&g)?;
    Ok(Output { json: to_value(&r), text: text::ce(&r), ok: true })
}

fn algebroid_cohomology(cfg: &RunConfig) -> Result<Output, CliError> {
    let k = load_complex(required(&cfg.complex, "--complex")?, cfg.max_simplices)?;
    let g = load_algebra(required(&cfg.liealg, "--liealg")?)?;
    let r = algebroid_cohomology_report(&k, &g, cfg.model)?;
    Ok(Output { json: to_value(&r), text: text::algebroid(&r), ok: r.ok })
}

fn verify(suite: SuiteName, cfg: &RunConfig) -> Result<Output, CliError> {
    let (cs, gs) = (required(&cfg.complex, "--complex")?, required(&cfg.liealg, "--liealg")?);
    let k = load_complex(cs, cfg.max_simplices)?;
    let g = load_algebra(gs)?;
    let label = format!("{}×{}", short_name(cs), short_name(gs));
    let mut opts = SuiteOptions { seed: cfg.seed, cases: cfg.cases, model: cfg.model, ..SuiteOptions::default() };
    let mut reports = Vec::new();
    if suite.uses_bracket_sign() {
        match cfg.bracket_sign {
            SignChoice::Fixed(s) => opts.bracket_sign = s,
            SignChoice::Auto => {
                let experiment = bracket_sign_suite(&label, &k, &g, &opts)?;
                let selected = experiment.details["selected"].as_str().map(str::parse::<BracketSign>).transpose()?;
                let resolved = selected.or((g.is_abelian() && experiment.ok).then_some(BracketSign::Standard));
                if suite == SuiteName::All || resolved.is_none() {
                    reports.push(experiment);
                }
                match resolved {
                    Some(s) => opts.bracket_sign = s,
                    None => return Ok(suite_output(suite, reports, opts.bracket_sign)),
                }
            }
        }
    }
    let pending: Vec<SuiteName> = match suite {
        SuiteName::All => {
            SuiteName::EACH.into_iter().filter(|s| !reports.iter().any(|r| r.suite == suite_label(*s))).collect()
        }
        _ => vec![suite],
    };
    let results: Vec<pscoh::Result<SuiteReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = pending.iter().map(|s| scope.spawn(|| s.run(&label, &k, &g, &opts))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    for r in results {
        reports.push(r?);
    }
    Ok(suite_output(suite, reports, opts.bracket_sign))
}

/// Reports sorted by suite name; a single suite is reported unwrapped.
fn suite_output(suite: SuiteName, mut reports: Vec<SuiteReport>, sign: BracketSign) -> Output {
    reports.sort_by(|a, b| a.suite.cmp(&b.suite));
    let ok = reports.iter().all(|r| r.ok);
    let json = match (suite, reports.as_slice()) {
        (SuiteName::All, _) => json!({ "suites": reports }),
        (_, [one]) => to_value(one),
        _ => json!({ "suites": reports }),
    };
    Output { json, text: text::suites(&reports, sign), ok }
}

fn suite_label(s: SuiteName) -> &'static str {
    match s {
        SuiteName::BracketSign => "bracket-sign",
        SuiteName::Cartan => "cartan",
        SuiteName::Kunneth => "kunneth",
        SuiteName::Mv => "mv",
        SuiteName::Star => "star",
        SuiteName::Structural => "structural",
        SuiteName::Subdivision => "subdivision",
        SuiteName::All => "all",
    }
}

fn list() -> Output {
    let names = |t: &[(&str, &str)]| t.iter().map(|(n, _)| format!("builtin:{n}")).collect::<Vec<_>>();
    let (complexes, algebras) = (names(fixtures::COMPLEXES), names(fixtures::ALGEBRAS));
    Output {
        text: format!("complexes: {}\nLie algebras: {}\n", complexes.join(" "), algebras.join(" ")),
        json: json!({ "complexes": complexes, "lie_algebras": algebras }),
        ok: true,
    }
}

fn run(cli: &Cli, cfg: &RunConfig) -> Result<Output, CliError> {
    match &cli.command {
        Command::Betti => betti(cfg),
        Command::Ce => ce(cfg),
        Command::AlgebroidCohomology => algebroid_cohomology(cfg),
        Command::Verify { suite } => verify(*suite, cfg),
        Command::List => Ok(list()),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Betti => "betti",
        Command::Ce => "ce",
        Command::AlgebroidCohomology => "algebroid-cohomology",
        Command::Verify { .. } => "verify",
        Command::List => "list",
    }
}

fn render(cli: &Cli, cfg: &RunConfig, out: Output) -> (String, bool) {
    if cfg.text {
        return (out.text, out.ok);
    }
    let mut inputs = BTreeMap::new();
    if let Some(c) = &cfg.complex {
        inputs.insert("complex", c.clone());
    }
    if let Some(g) = &cfg.liealg {
        inputs.insert("liealg", g.clone());
    }
    let mut options = BTreeMap::new();
    match &cli.command {
        Command::AlgebroidCohomology => {
            options.insert("model", json!(cfg.model.to_string()));
        }
        Command::Verify { suite } => {
            options.insert("suite", json!(suite_label(*suite)));
            options.insert("model", json!(cfg.model.to_string()));
            options.insert("seed", json!(cfg.seed));
            options.insert("cases", json!(cfg.cases));
            options.insert("bracket_sign", json!(cfg.bracket_sign.to_string()));
        }
        _ => {}
    }
    let envelope = Envelope { command: command_name(&cli.command), inputs, options, report: out.json, ok: out.ok };
    (serde_json::to_string_pretty(&envelope).expect("reports serialize") + "\n", out.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::resolve(&cli.flags).and_then(|cfg| run(&cli, &cfg).map(|out| (cfg, out)));
    let (cfg, out) = match result {
        Ok(v) => v,
        Err(e) => {
            eprintln!("pscoh: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let (rendered, ok) = render(&cli, &cfg, out);
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("pscoh: input error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(if ok { 0 } else { 1 })
}
