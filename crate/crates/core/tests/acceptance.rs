//! One PASS/FAIL line per acceptance criterion, with its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use laxcomma::cli::suites::{fixture_record, lali_counterexample};
use laxcomma::cli::{run_suite, Record, SuiteOptions, SuiteReport};

struct Outcome {
    ok: bool,
    detail: String,
}

fn suite(name: &str) -> SuiteReport {
    run_suite(name, &SuiteOptions::default()).unwrap_or_else(|e| panic!("suite {name}: {e}"))
}

fn all_pass(name: &str) -> Outcome {
    outcome(&suite(name), |_| true)
}

/// Passes when every record selected by `keep` passes.
fn outcome(rep: &SuiteReport, keep: impl Fn(&Record) -> bool) -> Outcome {
    let sel: Vec<&Record> = rep.records.iter().filter(|r| keep(r)).collect();
    let fails: Vec<&&Record> = sel.iter().filter(|r| !r.pass).collect();
    let mut detail = format!("{}/{} records", sel.len() - fails.len(), sel.len());
    if let Some(f) = fails.first() {
        detail += &format!("; first failure {} [{}]: {}", f.property, f.instance, f.witness.as_deref().unwrap_or(""));
    }
    Outcome { ok: !sel.is_empty() && fails.is_empty(), detail }
}

fn record(r: Record) -> Outcome {
    Outcome { ok: r.pass, detail: r.witness.unwrap_or_else(|| "exact match".into()) }
}

fn main() -> ExitCode {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Option<u64>, Check); 12] = [
        ("comma-universal", Some(60), || all_pass("comma-universal")),
        ("comma-adjunction", Some(60), || all_pass("comma-adjunction")),
        ("kz-coherence", Some(30), || all_pass("kz-coherence")),
        ("coalgebra-iso", Some(30), || all_pass("coalg-iso")),
        ("factorization", Some(60), || all_pass("factorization")),
        ("lax-coequalizers", Some(120), || all_pass("coequalizer")),
        ("lali-counterexample", None, || record(lali_counterexample())),
        ("idempotent-equivalence", None, || all_pass("idempotent-equiv")),
        ("lax-idempotent-equivalence", None, || {
            let rep = suite("kz-equiv");
            let eq = outcome(&rep, |r| r.property != "kz-fixture");
            let fx = fixture_record();
            let ok = eq.ok && fx.pass;
            let detail = format!("{}; fixture: {}", eq.detail, fx.witness.unwrap_or_else(|| "present".into()));
            Outcome { ok, detail }
        }),
        ("cancellation", None, || all_pass("cancellation")),
        ("conical-adjunction", Some(120), || {
            outcome(&suite("ct-final"), |r| r.property == "left-adjoint-iff-cocomplete")
        }),
        ("admissibility", None, || all_pass("admissibility")),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let t = Instant::now();
        let o = check();
        let dt = t.elapsed();
        let in_time = budget.is_none_or(|s| dt <= Duration::from_secs(s));
        let ok = o.ok && in_time;
        failed += usize::from(!ok);
        let limit = budget.map_or(String::new(), |s| format!(" (limit {s} s)"));
        println!("{} {name}: {:.1} s{limit}; {}", if ok { "PASS" } else { "FAIL" }, dt.as_secs_f64(), o.detail);
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
