//! Plain-text tables for `--text`.

use std::fmt::Write;

use pscoh::algebroid::BracketSign;
use pscoh::liealg::ce_labels;
use pscoh::verify::{AlgebroidCohomologyReport, BettiReport, CeReport, SuiteReport};

fn row(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

pub fn betti(r: &BettiReport) -> String {
    format!(
        "f-vector    {}\nsimplicial  {}\nwhitney     {}\nverdict     {}\n",
        row(&r.f_vector),
        row(&r.simplicial),
        row(&r.whitney),
        verdict(r.ok)
    )
}

pub fn ce(r: &CeReport) -> String {
    let mut out = format!("dim g  {}\nH(g)   {}\n", r.dim, row(&r.cohomology));
    for d in &r.degrees {
        let labels = ce_labels(r.dim, d.degree);
        for rep in &d.representatives {
            let terms: Vec<String> = rep
                .iter()
                .zip(&labels)
                .filter(|(c, _)| c.as_str() != "0")
                .map(|(c, l)| format!("{c}·{l}"))
                .collect();
            let _ = writeln!(out, "H^{}  {}", d.degree, terms.join(" + "));
        }
    }
    out
}

pub fn algebroid(r: &AlgebroidCohomologyReport) -> String {
    format!(
        "model         {}\ncochain dims  {}\nbetti         {}\nH(g)          {}\ncomputed      {}\npredicted     {}\nverdict       {}\n",
        r.model,
        row(&r.complex_dims),
        row(&r.betti),
        row(&r.lie_algebra_cohomology),
        row(&r.computed),
        row(&r.predicted),
        verdict(r.ok)
    )
}

pub fn suites(reports: &[SuiteReport], sign: BracketSign) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "suite {} on {} (seed {}, bracket sign {sign})", r.suite, r.input, r.seed);
        let width = r.properties.iter().map(|p| p.name.chars().count()).max().unwrap_or(0);
        for p in &r.properties {
            let status = if p.ok() { "pass" } else { "FAIL" };
            let _ = writeln!(out, "  {status}  {:<width$}  {}/{}", p.name, p.passed, p.cases);
            if let Some(c) = &p.counterexample {
                let _ = writeln!(out, "        {c}");
            }
        }
        if let Some(selected) = r.details.get("selected") {
            let _ = writeln!(out, "  selected convention: {}", selected.as_str().unwrap_or("none"));
        }
        let _ = writeln!(out, "  verdict: {}", if r.ok { "pass" } else { "FAIL" });
    }
    out
}
