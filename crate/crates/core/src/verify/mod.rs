//! Verification suites: randomized identity checks with seeded generators,
//! oracle comparisons, and the Mayer–Vietoris and subdivision experiments,
//! all reported as serializable pass/fail records.

pub mod random;
mod reports;
mod suites;

use serde::Serialize;

use crate::error::Result;

pub use reports::{
    algebroid_cohomology_report, betti_report, ce_report, convolve, AlgebroidCohomologyReport, BettiReport,
    CeReport,
};
pub use suites::{
    bracket_sign_suite, cartan_suite, kunneth_suite, mv_suite, star_suite, structural_suite, subdivision_suite,
    SuiteOptions,
};

/// Default number of random cases per property.
pub const DEFAULT_CASES: usize = 200;

/// Outcome of one property over a number of cases.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: String,
    pub cases: usize,
    pub passed: usize,
    /// Whether the cases are random draws rather than an exhaustive check.
    pub randomized: bool,
    /// Description of the first failing case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl PropertyResult {
    pub fn ok(&self) -> bool {
        self.passed == self.cases && self.counterexample.is_none()
    }

    /// A single yes/no check.
    pub fn single(name: &str, ok: bool, failure: impl FnOnce() -> String) -> Self {
        PropertyResult {
            name: name.to_string(),
            cases: 1,
            passed: usize::from(ok),
            randomized: false,
            counterexample: (!ok).then(failure),
        }
    }
}

/// Runs `case` for `cases` indices. A case passes with `Ok(None)`, fails with
/// `Ok(Some(description))`; errors also count as failures. Stops at the
/// first failure.
pub fn run_property(name: &str, cases: usize, mut case: impl FnMut(usize) -> Result<Option<String>>) -> PropertyResult {
    let mut passed = 0;
    let mut counterexample = None;
    for i in 0..cases {
        match case(i) {
            Ok(None) => passed += 1,
            Ok(Some(why)) => {
                counterexample = Some(format!("case {i}: {why}"));
                break;
            }
            Err(e) => {
                counterexample = Some(format!("case {i}: {e}"));
                break;
            }
        }
    }
    PropertyResult { name: name.to_string(), cases, passed, randomized: true, counterexample }
}

/// Report of one suite on one input.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub input: String,
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
    /// Suite-specific data (dimensions, ranks, the selected convention, ...).
    pub details: serde_json::Value,
    pub ok: bool,
}

impl SuiteReport {
    pub fn new(suite: &str, input: &str, seed: u64, properties: Vec<PropertyResult>, details: serde_json::Value) -> Self {
        let ok = properties.iter().all(PropertyResult::ok);
        SuiteReport { suite: suite.to_string(), input: input.to_string(), seed, properties, details, ok }
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.properties.iter().filter(|p| !p.ok())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn runner_stops_at_first_failure() {
        let r = run_property("p", 10, |i| Ok((i == 3).then(|| "boom".to_string())));
        assert_eq!(r.passed, 3);
        assert_eq!(r.counterexample.as_deref(), Some("case 3: boom"));
        assert!(!r.ok());
        let r = run_property("q", 5, |_| Err(Error::Integrity("bad".into())));
        assert_eq!(r.passed, 0);
        assert!(r.counterexample.unwrap().contains("integrity"));
        assert!(run_property("r", 4, |_| Ok(None)).ok());
    }
}
