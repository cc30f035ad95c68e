//! Acceptance criteria, one pass/fail line each. Exits non-zero when any
//! criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use pscoh::fixtures;
use pscoh::liealg::LieAlgebra;
use pscoh::polyform::BaseModel;
use pscoh::simplicial::{barycentric_subdivision, SimplicialComplex};
use pscoh::verify::{
    algebroid_cohomology_report, betti_report, bracket_sign_suite, cartan_suite, kunneth_suite, mv_suite,
    star_suite, structural_suite, subdivision_suite, SuiteOptions, SuiteReport, DEFAULT_CASES,
};

const COMPLEXES: [&str; 4] = ["circle", "sphere", "torus", "solid_simplex"];
const ALGEBRAS: [&str; 4] = ["abelian1", "abelian2", "sl2", "solvable2"];
const SEED: u64 = 20_241_018;

struct Outcome {
    ok: bool,
    detail: String,
}

type Criterion = fn() -> pscoh::Result<Outcome>;

fn complex(name: &str) -> Arc<SimplicialComplex> {
    fixtures::complex(name).expect("built-in complex")
}

fn algebra(name: &str) -> Arc<LieAlgebra> {
    fixtures::algebra(name).expect("built-in algebra")
}

fn opts() -> SuiteOptions {
    SuiteOptions { seed: SEED, cases: DEFAULT_CASES, ..SuiteOptions::default() }
}

fn pairs() -> impl Iterator<Item = (&'static str, &'static str)> {
    COMPLEXES.into_iter().flat_map(|c| ALGEBRAS.into_iter().map(move |g| (c, g)))
}

/// Runs a suite on every listed input and summarizes failures.
fn suites(
    inputs: impl Iterator<Item = (&'static str, &'static str)>,
    run: impl Fn(&str, &Arc<SimplicialComplex>, &Arc<LieAlgebra>) -> pscoh::Result<SuiteReport>,
) -> pscoh::Result<Outcome> {
    let mut failures = Vec::new();
    let mut count = 0;
    let mut min_cases = usize::MAX;
    for (c, g) in inputs {
        let label = format!("{c}×{g}");
        let report = run(&label, &complex(c), &algebra(g))?;
        count += 1;
        for p in &report.properties {
            if p.randomized {
                min_cases = min_cases.min(p.cases);
            }
        }
        failures.extend(report.failures().map(|p| {
            format!("{label}: {} ({})", p.name, p.counterexample.clone().unwrap_or_default())
        }));
        if !report.ok && report.failures().next().is_none() {
            failures.push(format!("{label}: verdict failed: {}", report.details));
        }
    }
    let cases = if min_cases == usize::MAX { String::new() } else { format!(", >= {min_cases} cases per randomized property") };
    Ok(Outcome {
        ok: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{count} inputs{cases}")
        } else {
            failures.join("; ")
        },
    })
}

fn oracle_equivalence() -> pscoh::Result<Outcome> {
    let expected = [
        ("circle", vec![1, 1]),
        ("sphere", vec![1, 0, 1]),
        ("solid_simplex", vec![1, 0, 0]),
        ("torus", vec![1, 2, 1]),
    ];
    let mut bad = Vec::new();
    for (name, betti) in expected {
        let k = complex(name);
        let sd = barycentric_subdivision(&k)?;
        for (label, kk) in [(name.to_string(), k), (format!("sd({name})"), sd.complex)] {
            let r = betti_report(&kk)?;
            if !r.ok || r.whitney != betti {
                bad.push(format!("{label}: whitney {:?}, simplicial {:?}, expected {betti:?}", r.whitney, r.simplicial));
            }
        }
    }
    Ok(Outcome { ok: bad.is_empty(), detail: if bad.is_empty() { "8 complexes".into() } else { bad.join("; ") } })
}

fn main_theorem() -> pscoh::Result<Outcome> {
    let mut bad = Vec::new();
    for (c, g) in pairs() {
        let r = algebroid_cohomology_report(&complex(c), &algebra(g), BaseModel::Whitney)?;
        if !r.ok {
            bad.push(format!("{c}×{g}: computed {:?}, predicted {:?}", r.computed, r.predicted));
        }
    }
    Ok(Outcome { ok: bad.is_empty(), detail: if bad.is_empty() { "16 pairs".into() } else { bad.join("; ") } })
}

fn kunneth() -> pscoh::Result<Outcome> {
    suites(pairs(), |l, k, g| kunneth_suite(l, k, g, &opts()))
}

fn cartan() -> pscoh::Result<Outcome> {
    suites(pairs(), |l, k, g| cartan_suite(l, k, g, &opts()))
}

fn mayer_vietoris() -> pscoh::Result<Outcome> {
    let inputs = ["circle", "sphere"].into_iter().flat_map(|c| ALGEBRAS.into_iter().map(move |g| (c, g)));
    suites(inputs, |l, k, g| mv_suite(l, k, g, &opts()))
}

fn star_contractibility() -> pscoh::Result<Outcome> {
    suites(pairs(), |l, k, g| star_suite(l, k, g, &opts()))
}

fn subdivision() -> pscoh::Result<Outcome> {
    let inputs = ["circle", "solid_simplex"].into_iter().flat_map(|c| ALGEBRAS.into_iter().map(move |g| (c, g)));
    suites(inputs, |l, k, g| subdivision_suite(l, k, g, &opts()))
}

fn structural() -> pscoh::Result<Outcome> {
    suites(pairs(), |l, k, g| structural_suite(l, k, g, &opts()))
}

fn bracket_sign() -> pscoh::Result<Outcome> {
    let report = bracket_sign_suite("solid_simplex×sl2", &complex("solid_simplex"), &algebra("sl2"), &opts())?;
    let selected = report.details["selected"].as_str().map(str::to_string);
    Ok(Outcome {
        ok: report.ok,
        detail: match selected {
            Some(s) if report.ok => format!("consistent convention: {s}; {}", report.details["conventions"]),
            _ => format!("no unique consistent convention: {}", report.details),
        },
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion, Option<Duration>); 9] = [
        ("oracle equivalence (Whitney = simplicial Betti numbers)", oracle_equivalence, Some(Duration::from_secs(10))),
        ("main theorem (H = Betti ⊛ H(g))", main_theorem, Some(Duration::from_secs(60))),
        ("Künneth cochain isomorphism", kunneth, None),
        ("Cartan formula = tensor differential", cartan, None),
        ("Mayer–Vietoris exactness", mayer_vietoris, None),
        ("star contractibility", star_contractibility, None),
        ("subdivision invariance", subdivision, None),
        ("structural identities", structural, None),
        ("bracket-sign experiment", bracket_sign, None),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(o) => (o.ok, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let within = limit.is_none_or(|l| elapsed <= l);
        let limit_note = limit.map_or(String::new(), |l| format!(", limit {}s", l.as_secs()));
        let ok = ok && within;
        failed += usize::from(!ok);
        println!(
            "{} {name}: {detail} [{:.2}s{limit_note}]",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
