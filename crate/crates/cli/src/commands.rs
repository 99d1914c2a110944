use std::path::{Path, PathBuf};
use std::time::Instant;

use rr_core::diagonal::{
    chi_sequence, graded_pieces, gti_chi_report, import_chi, ChiOptions, ChiRun, ChiSequence,
    DiagonalScenario,
};
use rr_core::groebner::{Budget, Ideal};
use rr_core::hilbert::euler_characteristic;
use rr_core::numeric::{Domain, Field, PrimeFieldElement, Rational};
use rr_core::polyring::{parse_polynomial, IdealFile, MonomialOrder, PolyRing};
use rr_core::rrcombinatorics::{euler_numbers, gti_coefficients, stirling_first};
use rr_core::{Error, Result};
use serde_json::{json, Value};

use crate::output::{join, Output};

pub fn gti(delta: usize, lambda: usize) -> Output {
    let g = gti_coefficients(delta, lambda);
    let signs: Vec<String> = g
        .prefix_signs
        .iter()
        .map(|s| if *s > 0 { "+1".into() } else { "-1".into() })
        .collect();
    let mut pretty = format!("δ = {delta}, λ = {lambda}\n");
    pretty += &format!(
        "prefix signs (a_0..a_{{λ-1}}): {}\n",
        if signs.is_empty() {
            "none".into()
        } else {
            signs.join(" ")
        }
    );
    pretty += &format!("tail c_u(δ), u = 0..{delta}: {}\n", join(&g.tail, " "));
    pretty += &format!("tail sign (-1)^λ: {}\n", g.tail_sign());
    let mut tsv = vec![vec!["part".into(), "index".into(), "value".into()]];
    tsv.extend(
        g.prefix_signs
            .iter()
            .enumerate()
            .map(|(k, s)| vec!["prefix".into(), k.to_string(), s.to_string()]),
    );
    tsv.extend(
        g.tail
            .iter()
            .enumerate()
            .map(|(u, c)| vec!["tail".into(), u.to_string(), c.to_string()]),
    );
    Output {
        data: serde_json::to_value(&g).expect("serializable"),
        meta: None,
        tsv,
        pretty,
    }
}

pub fn stirling(l_max: usize) -> Output {
    let s = stirling_first(l_max);
    let rows: Vec<Vec<String>> = (0..=l_max)
        .map(|l| s.row(l).iter().map(ToString::to_string).collect())
        .collect();
    let pretty = rows
        .iter()
        .enumerate()
        .map(|(l, r)| format!("s({l}, ·): {}\n", r.join(" ")))
        .collect();
    let mut tsv = vec![vec!["l".into(), "j".into(), "s".into()]];
    for (l, r) in rows.iter().enumerate() {
        tsv.extend(
            r.iter()
                .enumerate()
                .map(|(j, v)| vec![l.to_string(), j.to_string(), v.clone()]),
        );
    }
    Output {
        data: json!({"l_max": l_max, "rows": rows}),
        meta: None,
        tsv,
        pretty,
    }
}

pub fn euler(j_max: usize) -> Output {
    let e = euler_numbers(j_max);
    let pretty = e
        .iter()
        .enumerate()
        .map(|(j, v)| format!("E_{j} = {v}\n"))
        .collect();
    let mut tsv = vec![vec!["j".into(), "E".into()]];
    tsv.extend(
        e.iter()
            .enumerate()
            .map(|(j, v)| vec![j.to_string(), v.to_string()]),
    );
    Output {
        data: json!({"j_max": j_max, "euler": e}),
        meta: None,
        tsv,
        pretty,
    }
}

fn hilbert_in<C: Field>(file: &IdealFile, order: MonomialOrder, budget: &Budget) -> Result<Output> {
    let ring = file.ring(order)?;
    let ideal = Ideal::new(&ring, file.polynomials::<C>(&ring)?)?;
    let start = Instant::now();
    let hd = euler_characteristic(&ideal, order, budget)?;
    let pretty = format!(
        "Hilbert series numerator: {}\ndimension of the cone: {}\nHilbert polynomial: {}\nχ = {}\n",
        join(&hd.numerator, " "),
        hd.dim,
        hd.hp,
        hd.chi
    );
    let tsv = vec![
        vec!["numerator".into(), join(&hd.numerator, ",")],
        vec!["dim".into(), hd.dim.to_string()],
        vec!["hp".into(), hd.hp.to_string()],
        vec!["chi".into(), hd.chi.to_string()],
    ];
    let mut data = serde_json::to_value(&hd).expect("serializable");
    data["order"] = json!(order.name());
    data["char"] = json!(ring.characteristic());
    data["vars"] = json!(ring.vars());
    Ok(Output {
        data,
        meta: Some(json!({"elapsed_ms": start.elapsed().as_millis()})),
        tsv,
        pretty,
    })
}

pub fn hilbert(path: &Path, order: MonomialOrder, budget: &Budget) -> Result<Output> {
    let file = IdealFile::read(path)?;
    match file.characteristic {
        0 => hilbert_in::<Rational>(&file, order, budget),
        _ => hilbert_in::<PrimeFieldElement>(&file, order, budget),
    }
}

/// Where the χ table comes from.
pub enum Source {
    Curve {
        vars: Vec<String>,
        generators: Vec<String>,
        characteristic: u64,
    },
    P1xP1 {
        characteristic: u64,
    },
    Import(PathBuf),
}

impl Source {
    pub fn from_scenario_file(path: &Path) -> Result<Self> {
        let file = IdealFile::read(path)?;
        match file.scenario.as_deref() {
            Some("segre-square") => Ok(Source::Curve {
                vars: file.vars,
                generators: file.generators.into_iter().map(|(_, g)| g).collect(),
                characteristic: file.characteristic,
            }),
            Some(other) => Err(Error::InvalidInput(format!(
                "unknown scenario type {other:?}"
            ))),
            None => Err(Error::InvalidInput(format!(
                "{} has no [scenario] header",
                path.display()
            ))),
        }
    }

    fn describe(&self) -> Value {
        match self {
            Source::Curve {
                vars,
                generators,
                characteristic,
            } => {
                json!({"type": "segre-square", "vars": vars, "curve": generators, "char": characteristic})
            }
            Source::P1xP1 { characteristic } => json!({"type": "p1xp1", "char": characteristic}),
            Source::Import(p) => json!({"type": "imported", "path": p.display().to_string()}),
        }
    }

    pub fn characteristic(&self) -> Option<u64> {
        match self {
            Source::Curve { characteristic, .. } | Source::P1xP1 { characteristic } => {
                Some(*characteristic)
            }
            Source::Import(_) => None,
        }
    }
}

fn scenario_run<C: Field>(source: &Source, opts: &ChiOptions) -> Result<ChiRun> {
    let scenario = match source {
        Source::Curve {
            vars,
            generators,
            characteristic,
        } => {
            let ring = PolyRing::new(
                vars.iter().cloned(),
                Domain::from_characteristic(*characteristic)?,
                MonomialOrder::Grevlex,
            )?;
            let curve = generators
                .iter()
                .map(|g| parse_polynomial::<C>(g, &ring))
                .collect::<Result<Vec<_>>>()?;
            DiagonalScenario::build(&ring, curve)?
        }
        Source::P1xP1 { characteristic } => {
            DiagonalScenario::p1_squared(Domain::from_characteristic(*characteristic)?)?
        }
        Source::Import(_) => unreachable!("imported tables skip the scenario"),
    };
    chi_sequence(&scenario, opts)
}

fn render_rational_list(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

/// The GTI half of the pipeline, on a χ table from any source.
fn gti_section(
    chi: &ChiSequence,
    delta: usize,
    lambda_max: Option<usize>,
) -> Result<(Value, String, Vec<Vec<String>>)> {
    let a = graded_pieces(chi);
    let mut values = Vec::new();
    let mut stabilization = None;
    let mut reference = chi.get(1);
    if chi.len() > delta {
        let mut rep = gti_chi_report(chi, delta)?;
        if let Some(m) = lambda_max {
            rep.values.truncate(m + 1);
            let r = rep.reference.map(Rational::from);
            rep.stabilization = rr_core::diagonal::detect_stabilization(&rep.values, r.as_ref());
        }
        values = rep.values;
        stabilization = rep.stabilization;
        reference = rep.reference;
    }
    let gti = json!({
        "delta": delta,
        "lambda_start": 0,
        "values": values,
        "stabilization": stabilization,
        "reference": reference,
    });
    let data = json!({"a": a.0, "gti": gti});

    let mut pretty = format!(
        "graded pieces a_k, k = 0..{}: {}\n",
        a.0.len().saturating_sub(1),
        join(&a.0, " ")
    );
    if values.is_empty() {
        pretty += &format!(
            "χ(GTI(δ = {delta}, λ)): table too short, needs χ up to n = {}\n",
            delta + 1
        );
    } else {
        pretty += &format!(
            "χ(GTI(δ = {delta}, λ)), λ = 0..{}: {}\n",
            values.len() - 1,
            render_rational_list(&values).join(" ")
        );
    }
    match &stabilization {
        Some(s) => {
            pretty += &format!(
                "stabilization (empirical): λ* = {}, value {}",
                s.lambda_star, s.value
            );
            if let (Some(r), Some(m)) = (reference, s.matches_reference) {
                pretty += &format!(", {} χ_1 = {r}", if m { "equals" } else { "differs from" });
            }
            pretty.push('\n');
        }
        None if !values.is_empty() => pretty += "stabilization (empirical): none in this window\n",
        None => {}
    }

    let mut tsv: Vec<Vec<String>> =
        a.0.iter()
            .enumerate()
            .map(|(k, v)| vec!["a".into(), k.to_string(), v.to_string()])
            .collect();
    tsv.extend(
        values
            .iter()
            .enumerate()
            .map(|(l, v)| vec!["gti".into(), l.to_string(), v.to_string()]),
    );
    if let Some(s) = &stabilization {
        tsv.push(vec![
            "lambda_star".into(),
            s.lambda_star.to_string(),
            s.value.to_string(),
        ]);
    }
    Ok((data, pretty, tsv))
}

pub struct PipelineArgs {
    pub source: Source,
    pub n_max: u32,
    pub delta: usize,
    pub lambda_max: Option<usize>,
    pub budget: Budget,
    pub cache_dir: Option<PathBuf>,
}

/// Returns the report and whether the χ table is complete.
pub fn pipeline(args: &PipelineArgs) -> Result<(Output, bool)> {
    let start = Instant::now();
    let (chi, run) = match &args.source {
        Source::Import(path) => (import_chi(&std::fs::read_to_string(path)?)?, None),
        source => {
            let opts = ChiOptions {
                n_max: args.n_max,
                budget: args.budget,
                cache_dir: args.cache_dir.clone(),
            };
            let run = match source.characteristic() {
                Some(0) => scenario_run::<Rational>(source, &opts)?,
                _ => scenario_run::<PrimeFieldElement>(source, &opts)?,
            };
            (run.sequence.clone(), Some(run))
        }
    };
    let complete = run.as_ref().is_none_or(|r| r.is_complete());
    let (gti, gti_pretty, gti_tsv) = gti_section(&chi, args.delta, args.lambda_max)?;

    let provenance = chi.provenance().first().copied();
    let mut data = json!({
        "scenario": args.source.describe(),
        "chi": {"n_start": 1, "chi": chi.values(), "provenance": provenance},
        "a": gti["a"],
        "gti": gti["gti"],
        "complete": complete,
    });
    let mut pretty = format!(
        "χ(O/I_Δ^n), n = 1..{}: {}\n",
        chi.len(),
        join(chi.values(), " ")
    );
    let mut meta = json!({});
    if let Some(run) = &run {
        data["requested"] = json!(run.requested);
        data["gap"] = json!(run.gap);
        if let Some(gap) = &run.gap {
            pretty += &format!("incomplete: stopped at n = {} ({})\n", gap.n, gap.reason);
        }
        let entries: Vec<Value> = run
            .entries
            .iter()
            .map(|e| json!({"n": e.n, "cached": e.cached, "elapsed_ms": e.elapsed_ms, "stats": e.stats}))
            .collect();
        meta["entries"] = json!(entries);
        meta["cache_dir"] = json!(args.cache_dir.as_ref().map(|d| d.display().to_string()));
    }
    meta["elapsed_ms"] = json!(start.elapsed().as_millis());
    pretty += &gti_pretty;

    let mut tsv: Vec<Vec<String>> = vec![vec!["section".into(), "index".into(), "value".into()]];
    tsv.extend(
        chi.values()
            .iter()
            .enumerate()
            .map(|(i, v)| vec!["chi".into(), (i + 1).to_string(), v.to_string()]),
    );
    tsv.extend(gti_tsv);
    Ok((
        Output {
            data,
            meta: Some(meta),
            tsv,
            pretty,
        },
        complete,
    ))
}

/// A χ table argument: JSON in the import format, or a scenario file.
pub fn source_from_path(path: &Path) -> Result<Source> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        Ok(Source::Import(path.to_path_buf()))
    } else {
        Source::from_scenario_file(path)
    }
}

pub fn split_curve(curve: &str) -> Vec<String> {
    curve
        .split(',')
        .map(str::trim)
        .filter(|g| !g.is_empty())
        .map(str::to_string)
        .collect()
}
