use std::time::Instant;

use rr_core::check::CheckReport;
use rr_core::lambdaring::{duality_family_check, rde_family_check, tt_family_check};
use rr_core::rrcombinatorics::{
    euler_numbers, euler_vs_bernoulli_check_with, gti_tail_check, kim_check, stirling_check,
    surface_identity_check,
};
use rr_core::Result;
use serde_json::json;

use crate::output::Output;

type Suite<'a> = Box<dyn Fn() -> Result<CheckReport> + 'a>;

/// Runs every identity suite. With `fault`, E_3 is negated in the Euler
/// table handed to the suites that take one.
pub fn run(fault: bool) -> Result<(Output, bool)> {
    let mut euler = euler_numbers(20);
    if fault {
        euler[3] = -euler[3].clone();
    }
    let suites: Vec<(&str, Suite)> = vec![
        ("stirling_first", Box::new(|| Ok(stirling_check(20)))),
        (
            "euler_vs_bernoulli",
            Box::new(|| Ok(euler_vs_bernoulli_check_with(&euler, 20))),
        ),
        (
            "kim_alternating_sums",
            Box::new(|| Ok(kim_check(40, 10, &euler))),
        ),
        (
            "surface_identity",
            Box::new(|| Ok(surface_identity_check())),
        ),
        ("gti_tail", Box::new(|| Ok(gti_tail_check(8, &euler)))),
        ("eqrde", Box::new(|| rde_family_check(4, 3))),
        ("tt_identity", Box::new(|| tt_family_check(5, 12))),
        (
            "sym_lambda_duality",
            Box::new(|| Ok(duality_family_check(3, 6))),
        ),
    ];
    let mut reports = Vec::new();
    let mut timings = Vec::new();
    for (name, f) in &suites {
        let start = Instant::now();
        let rep = f()?;
        timings.push(json!({"name": name, "elapsed_ms": start.elapsed().as_millis()}));
        reports.push(rep);
    }
    let all = reports.iter().all(|r| r.pass);
    let pretty = reports
        .iter()
        .map(|r| {
            let status = if r.pass { "ok  " } else { "FAIL" };
            let detail = r
                .failure
                .as_deref()
                .map(|f| format!("  {f}"))
                .unwrap_or_default();
            format!("{status} {:<22} {:>5} cases{detail}\n", r.name, r.cases)
        })
        .collect::<String>()
        + &format!(
            "{} of {} suites passed\n",
            reports.iter().filter(|r| r.pass).count(),
            reports.len()
        );
    let tsv = reports
        .iter()
        .map(|r| vec![r.name.clone(), r.pass.to_string(), r.cases.to_string()])
        .collect();
    let output = Output {
        data: json!({"pass": all, "suites": reports}),
        meta: Some(json!({"suites": timings})),
        tsv,
        pretty,
    };
    Ok((output, all))
}

pub fn first_failure(out: &Output) -> Option<(String, String)> {
    out.data["suites"]
        .as_array()?
        .iter()
        .find(|s| s["pass"] == false)
        .map(|s| {
            (
                s["name"].as_str().unwrap_or_default().to_string(),
                s["failure"].as_str().unwrap_or_default().to_string(),
            )
        })
}
