//! Acceptance criteria, one line each. Exact comparisons throughout;
//! runtime limits are checked where a criterion states one.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rr_core::diagonal::{
    chi_sequence, graded_pieces, gti_chi_report, import_chi, ChiOptions, DiagonalScenario,
};
use rr_core::groebner::{buchberger, Budget, Ideal};
use rr_core::hilbert::{euler_characteristic, HilbertData};
use rr_core::lambdaring::{
    duality_family_check, split_bundles, tt_family_check, verify_rde, TruncatedElement,
    TruncationRing,
};
use rr_core::numeric::{binomial, Domain, PrimeFieldElement, Rational};
use rr_core::polyring::{parse_polynomial, Monomial, MonomialOrder, PolyRing, Polynomial};
use rr_core::rrcombinatorics::{
    alternating_power_sum, euler_numbers, gti_coefficients, gti_tail, kim_formula,
    surface_identity_sides,
};

const CURVE_CHI: [i64; 10] = [3, 5, 7, 7, 5, 0, -7, -16, -27, -40];

#[derive(PartialEq)]
enum Status {
    Pass,
    Fail,
    /// The statement as written is false; the line records the
    /// counterexample and a corrected form is checked separately.
    Refuted,
}

struct Outcome {
    id: &'static str,
    status: Status,
    detail: String,
}

type Check = std::result::Result<String, String>;

fn q(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(id: &'static str, limit: Option<Duration>, f: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let timing = match limit {
        Some(l) => format!("{:.3} s, limit {} s", elapsed.as_secs_f64(), l.as_secs()),
        None => format!("{:.3} s", elapsed.as_secs_f64()),
    };
    match result {
        Ok(detail) if limit.is_none_or(|l| elapsed <= l) => Outcome {
            id,
            status: Status::Pass,
            detail: format!("{detail} ({timing})"),
        },
        Ok(detail) => Outcome {
            id,
            status: Status::Fail,
            detail: format!("{detail}; too slow ({timing})"),
        },
        Err(e) => Outcome {
            id,
            status: Status::Fail,
            detail: format!("{e} ({timing})"),
        },
    }
}

fn strs(xs: &[Rational]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn curve_scenario() -> DiagonalScenario<PrimeFieldElement> {
    let ring = PolyRing::new(
        ["x", "y", "z"],
        Domain::from_characteristic(5).unwrap(),
        MonomialOrder::Grevlex,
    )
    .unwrap();
    let gens = ["z*x", "z^3"]
        .iter()
        .map(|g| parse_polynomial(g, &ring).unwrap())
        .collect();
    DiagonalScenario::build(&ring, gens).unwrap()
}

fn c1() -> Check {
    let d1 = gti_coefficients(1, 0).tail;
    let d3 = gti_coefficients(3, 0).tail;
    ensure(d1 == [q(3, 4), q(-1, 4)], || {
        format!("δ = 1 gives {}", strs(&d1))
    })?;
    ensure(d3 == [q(15, 16), q(-11, 16), q(5, 16), q(-1, 16)], || {
        format!("δ = 3 gives {}", strs(&d3))
    })?;
    Ok(format!("δ=1: {}; δ=3: {}", strs(&d1), strs(&d3)))
}

fn c2() -> Check {
    let chi = import_chi(r#"{"n_start":1,"chi":[3,5,7,7,5,0,-7,-16,-27,-40]}"#)
        .map_err(|e| e.to_string())?;
    let rep = gti_chi_report(&chi, 1).map_err(|e| e.to_string())?;
    let expected = [
        q(7, 4),
        q(2, 1),
        q(5, 2),
        q(5, 2),
        q(11, 4),
        q(3, 1),
        q(3, 1),
        q(3, 1),
        q(3, 1),
    ];
    ensure(rep.values == expected, || {
        format!("g = {}", strs(&rep.values))
    })?;
    let st = rep.stabilization.ok_or("no stabilization detected")?;
    ensure(
        st.lambda_star == 5 && st.value == q(3, 1) && st.matches_reference == Some(true),
        || {
            format!(
                "λ* = {}, value {}, reference match {:?}",
                st.lambda_star, st.value, st.matches_reference
            )
        },
    )?;
    Ok(format!(
        "g = {}; λ* = 5 ({}), stable value 3 = χ_1",
        strs(&rep.values),
        st.status
    ))
}

fn c3() -> Check {
    let s = curve_scenario();
    let mut lines = Vec::new();
    for (n_max, limit) in [(3u32, 60u64), (5, 1800)] {
        let start = Instant::now();
        let run = chi_sequence(
            &s,
            &ChiOptions {
                n_max,
                budget: Budget::with_time(limit as f64),
                cache_dir: None,
            },
        )
        .map_err(|e| e.to_string())?;
        let t = start.elapsed();
        ensure(run.is_complete(), || {
            format!("n = 1..{n_max}: stopped at {:?}", run.gap)
        })?;
        ensure(
            run.sequence.values() == &CURVE_CHI[..n_max as usize],
            || format!("n = 1..{n_max}: {:?}", run.sequence.values()),
        )?;
        ensure(t <= Duration::from_secs(limit), || {
            format!("n = 1..{n_max} took {t:?}, limit {limit} s")
        })?;
        lines.push(format!(
            "n=1..{n_max} in {:.2} s (< {limit} s)",
            t.as_secs_f64()
        ));
    }
    // the uncapped tier
    let start = Instant::now();
    let run = chi_sequence(
        &s,
        &ChiOptions {
            n_max: 10,
            budget: Budget::unlimited(),
            cache_dir: None,
        },
    )
    .map_err(|e| e.to_string())?;
    ensure(run.sequence.values() == CURVE_CHI, || {
        format!("n = 1..10: {:?}", run.sequence.values())
    })?;
    lines.push(format!(
        "n=1..10 uncapped in {:.2} s",
        start.elapsed().as_secs_f64()
    ));
    Ok(format!(
        "χ = {:?}; {}",
        run.sequence.values(),
        lines.join(", ")
    ))
}

fn c4() -> Check {
    let ring = PolyRing::new(
        ["x0", "x1", "x2"],
        Domain::from_characteristic(5).unwrap(),
        MonomialOrder::Grevlex,
    )
    .unwrap();
    let gens = ["x0*x2", "x2^3"]
        .iter()
        .map(|g| parse_polynomial::<PrimeFieldElement>(g, &ring).unwrap())
        .collect();
    let hd = euler_characteristic(
        &Ideal::new(&ring, gens).unwrap(),
        MonomialOrder::Grevlex,
        &Budget::default(),
    )
    .map_err(|e| e.to_string())?;
    ensure(hd.chi == 3, || format!("χ = {}", hd.chi))?;
    Ok(format!("χ(Y, O_Y) = 3, HP = {}", hd.hp))
}

/// `B_0..B_n` from `Σ_{k<=m} C(m+1, k) B_k = 0`.
fn bernoulli_recurrence(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        let s: Rational = (0..m)
            .map(|k| Rational::from_integer(binomial(m as i64 + 1, k as u32)) * &b[k])
            .sum();
        b.push(-s / Rational::from(m as i64 + 1));
    }
    b
}

fn c5() -> Check {
    let e = euler_numbers(20);
    let b = bernoulli_recurrence(21);
    for j in 1..=20usize {
        let pow = Rational::from_integer(BigInt::from(2).pow(1 + j as u32) - 1);
        let expected = q(2, 1) * Rational::sign_power(j as u64) * pow * &b[j + 1]
            / Rational::from(j as i64 + 1);
        ensure(e[j] == expected, || {
            format!("j = {j}: series {}, Bernoulli {expected}", e[j])
        })?;
    }
    Ok(format!("E_1..E_20 agree; E_19 = {}", e[19]))
}

fn c6() -> Check {
    let e = euler_numbers(10);
    for n in 1..=40u64 {
        for j in 0..=10u32 {
            // independent brute force: k runs over 0..n with 0^0 = 1
            let brute: BigInt = (0..n)
                .map(|k| {
                    let p = BigInt::from(k).pow(j);
                    if k % 2 == 0 {
                        p
                    } else {
                        -p
                    }
                })
                .sum();
            ensure(brute == alternating_power_sum(n, j), || {
                format!("library sum differs at n = {n}, j = {j}")
            })?;
            let closed = kim_formula(n, j, &e).map_err(|e| e.to_string())?;
            ensure(closed == Rational::from_integer(brute.clone()), || {
                format!("n = {n}, j = {j}: {closed} vs {brute}")
            })?;
        }
    }
    Ok("440 cases, 1 ≤ n ≤ 40, 0 ≤ j ≤ 10".into())
}

fn c7() -> Check {
    let (lhs, rhs) = surface_identity_sides();
    let diff = lhs.sub(&rhs).map_err(|e| e.to_string())?;
    ensure(diff.is_zero(), || format!("lhs - rhs = {diff}"))?;
    // hand-written sides evaluated on a grid that determines cubics in two variables
    let left = |x: &Rational, y: &Rational| {
        (q(15, 1) - q(11, 1) * (x + y) + q(5, 1) * (x * x + x * y + y * y)
            - (x * x * x + x * x * y + y * y * x + y * y * y))
            / q(16, 1)
    };
    let right = |x: &Rational, y: &Rational| {
        let (u, v, w) = (x - &q(1, 1), y - &q(1, 1), x + y - q(2, 1));
        (q(4, 1) - q(2, 1) * &w - &u * &v + q(2, 1) * (&u * &v * &w) + &w * &w - &w * &w * &w)
            / q(16, 1)
    };
    for a in -2..3 {
        for b in -2..3 {
            let (x, y) = (q(a, 1), q(b, 1));
            let at = [x.clone(), y.clone()];
            let (l, r) = (left(&x, &y), right(&x, &y));
            ensure(l == r, || {
                format!("hand-written sides differ at ({a}, {b})")
            })?;
            ensure(lhs.eval(&at).map_err(|e| e.to_string())? == l, || {
                format!("parsed side differs at ({a}, {b})")
            })?;
        }
    }
    Ok(format!("{} coefficients, 25 grid points", lhs.len()))
}

/// `Π (1 + ℓ_i)^{-1}` and `Σ_u c_u(δ) h_u(ℓ)` with `h_u` the complete
/// homogeneous symmetric polynomial, written out directly.
fn rde_sides(lines: &[TruncatedElement], delta: usize) -> (TruncatedElement, TruncatedElement) {
    let ring = lines[0].ring().clone();
    let one = TruncatedElement::one(&ring);
    let mut lhs = one.clone();
    for l in lines {
        lhs = lhs.mul(&one.add(l).unwrap().invert().unwrap()).unwrap();
    }
    let c = gti_tail(delta);
    let mut rhs = TruncatedElement::zero(&ring);
    for (u, cu) in c.iter().enumerate() {
        rhs = rhs.add(&complete_homogeneous(lines, u).scale(cu)).unwrap();
    }
    (lhs, rhs)
}

fn complete_homogeneous(lines: &[TruncatedElement], u: usize) -> TruncatedElement {
    let ring = lines[0].ring().clone();
    fn go(
        lines: &[TruncatedElement],
        u: usize,
        from: usize,
        acc: TruncatedElement,
        out: &mut TruncatedElement,
    ) {
        if u == 0 {
            *out = out.add(&acc).unwrap();
            return;
        }
        for i in from..lines.len() {
            go(lines, u - 1, i, acc.mul(&lines[i]).unwrap(), out);
        }
    }
    let mut out = TruncatedElement::zero(&ring);
    go(lines, u, 0, TruncatedElement::one(&ring), &mut out);
    out
}

struct RdeSurvey {
    bundles: usize,
    corrected_ok: bool,
    corrected_detail: String,
    at_n_failures: Vec<String>,
    rank_one_at_n_ok: bool,
    n_plus_two_ok: bool,
}

fn survey_rde() -> RdeSurvey {
    let mut s = RdeSurvey {
        bundles: 0,
        corrected_ok: true,
        corrected_detail: String::new(),
        at_n_failures: Vec::new(),
        rank_one_at_n_ok: true,
        n_plus_two_ok: true,
    };
    for n in 0..=4u32 {
        let ring = TruncationRing::new(2, n);
        for v in split_bundles(&ring, 3) {
            s.bundles += 1;
            let lines = v.positive();
            let rank = lines.len();
            let d0 = verify_rde(&v, 0).unwrap().delta0;
            let mut reference = None;
            for delta in [d0, d0 + 2, n as usize + 2] {
                let (lhs, rhs) = rde_sides(lines, delta);
                let lib = verify_rde(&v, delta).unwrap();
                let agrees = reference
                    .as_ref()
                    .is_none_or(|r: &TruncatedElement| *r == rhs);
                if lhs != rhs || !lib.equal || !agrees || d0 > n as usize + rank - 1 {
                    s.corrected_ok = false;
                    s.corrected_detail =
                        format!("N = {n}, rank {rank}, δ = {delta}: {lhs} vs {rhs}");
                }
                if delta == n as usize + 2 && lhs != rhs {
                    s.n_plus_two_ok = false;
                }
                reference.get_or_insert(rhs);
            }
            let (lhs, rhs) = rde_sides(lines, n as usize);
            if lhs != rhs {
                if rank == 1 {
                    s.rank_one_at_n_ok = false;
                }
                s.at_n_failures.push(format!("N={n} rank {rank}"));
            }
        }
    }
    s
}

fn c8_as_stated(s: &RdeSurvey) -> Outcome {
    let trivial = {
        let ring = TruncationRing::new(1, 0);
        let one = TruncatedElement::one(&ring);
        rde_sides(&[one.clone(), one], 0)
    };
    let refuted = !s.at_n_failures.is_empty() && s.rank_one_at_n_ok && trivial.0 != trivial.1;
    Outcome {
        id: "8",
        status: if refuted { Status::Refuted } else if s.at_n_failures.is_empty() && s.n_plus_two_ok { Status::Pass } else { Status::Fail },
        detail: format!(
            "δ = N: {} of {} bundles fail, all of rank ≥ 2 (e.g. O⊕O at N = 0: Θ²⁻¹ = {} but c_0(0)·Sym⁰ = {}); δ = N holds for every line, δ = N+2 holds for all: {}",
            s.at_n_failures.len(),
            s.bundles,
            trivial.0,
            trivial.1,
            s.n_plus_two_ok
        ),
    }
}

fn c8_corrected(s: &RdeSurvey) -> Outcome {
    Outcome {
        id: "8*",
        status: if s.corrected_ok {
            Status::Pass
        } else {
            Status::Fail
        },
        detail: if s.corrected_ok {
            format!(
                "{} bundles of rank ≤ 3, N ≤ 4: identity at δ₀(V), δ₀(V)+2, N+2 with equal sides; δ₀(V) ≤ N + rank − 1",
                s.bundles
            )
        } else {
            s.corrected_detail.clone()
        },
    }
}

fn c9() -> Check {
    for delta in 0..=8usize {
        let c = gti_tail(delta);
        // derivatives at x = 1: Σ_u c_u C(u, k) = (-1)^k / 2^{k+1}
        for k in 0..=delta {
            let lhs: Rational = c
                .iter()
                .enumerate()
                .map(|(u, cu)| cu * &Rational::from_integer(binomial(u as i64, k as u32)))
                .sum();
            let rhs = Rational::sign_power(k as u64)
                / Rational::from_integer(BigInt::from(2).pow(k as u32 + 1));
            ensure(lhs == rhs, || {
                format!("δ = {delta}, k = {k}: {lhs} vs {rhs}")
            })?;
        }
    }
    let duality = duality_family_check(3, 6);
    ensure(duality.pass, || format!("{duality:?}"))?;
    let tt = tt_family_check(5, 12).map_err(|e| e.to_string())?;
    ensure(tt.pass, || format!("{tt:?}"))?;
    Ok(format!(
        "Σ c_u = 1/2 and congruence for δ = 0..8; duality {} cases; TT {} cases",
        duality.cases, tt.cases
    ))
}

fn c10() -> Check {
    let s =
        DiagonalScenario::<PrimeFieldElement>::p1_squared(Domain::from_characteristic(5).unwrap())
            .map_err(|e| e.to_string())?;
    let run = chi_sequence(
        &s,
        &ChiOptions {
            n_max: 6,
            budget: Budget::with_time(60.0),
            cache_dir: None,
        },
    )
    .map_err(|e| e.to_string())?;
    let expected: Vec<i64> = (1..=6).map(|n| n * (2 - n)).collect();
    ensure(run.sequence.values() == expected, || {
        format!("χ = {:?}", run.sequence.values())
    })?;
    let a = graded_pieces(&run.sequence);
    let rep = gti_chi_report(&run.sequence, 1).map_err(|e| e.to_string())?;
    let st = rep.stabilization.ok_or("no stabilization")?;
    ensure(st.lambda_star == 0 && st.value == q(1, 1), || {
        format!("λ* = {}, value {}", st.lambda_star, st.value)
    })?;
    Ok(format!(
        "χ = {:?}, a = {:?}, λ* = 0",
        run.sequence.values(),
        a.0
    ))
}

fn staircase(nvars: usize, lms: &[Monomial], m: u32) -> i64 {
    fn count(nvars: usize, prefix: &mut Vec<u32>, left: u32, lms: &[Monomial]) -> i64 {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            let x = Monomial::new(prefix.iter().copied());
            prefix.pop();
            return i64::from(!lms.iter().any(|g| g.divides(&x)));
        }
        (0..=left)
            .map(|e| {
                prefix.push(e);
                let c = count(nvars, prefix, left - e, lms);
                prefix.pop();
                c
            })
            .sum()
    }
    count(nvars, &mut Vec::new(), m, lms)
}

fn c11() -> Check {
    let fixtures: [(&[&str], &[&str]); 7] = [
        (&["x", "y", "z"], &["x*z", "z^3"]),
        (&["x", "y", "z"], &["x*z - y^2"]),
        (&["x", "y", "z"], &["x^2 + y*z", "y^3 - x*z^2"]),
        (
            &["a", "b", "c", "d"],
            &["a*d - b*c", "b^2 - a*c", "c^2 - b*d"],
        ),
        (&["a", "b", "c", "d"], &["a^2 - b*c", "b^3 + c^2*d - a*d^2"]),
        (&["a", "b", "c", "d"], &["a*b", "b*c", "c*d", "d*a"]),
        (
            &["a", "b", "c", "d", "e"],
            &["a*b - c*d", "b*e - c^2", "a^2*e - d^3"],
        ),
    ];
    let mut degrees = 0;
    for (vars, gens) in fixtures {
        let ring: Arc<PolyRing> = PolyRing::new(
            vars.iter().copied(),
            Domain::from_characteristic(7).unwrap(),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let polys: Vec<Polynomial<PrimeFieldElement>> = gens
            .iter()
            .map(|g| parse_polynomial(g, &ring).unwrap())
            .collect();
        let ideal = Ideal::new(&ring, polys.clone()).unwrap();
        let gb = buchberger(&ideal, MonomialOrder::Grevlex, &Budget::default())
            .map_err(|e| e.to_string())?;
        let hd = HilbertData::of_groebner_basis(&gb).map_err(|e| e.to_string())?;
        let lms = gb.leading_monomials();
        let top = hd.numerator.len() as u32;
        for m in top..top + 5 {
            let count = staircase(vars.len(), &lms, m);
            ensure(hd.hp.eval(&Rational::from(m as i64)) == count, || {
                format!("{gens:?} at m = {m}")
            })?;
            degrees += 1;
        }
        let lex = euler_characteristic(&ideal, MonomialOrder::Lex, &Budget::default())
            .map_err(|e| e.to_string())?;
        ensure(lex.chi == hd.chi && lex.hp == hd.hp, || {
            format!("{gens:?}: lex gives χ = {}", lex.chi)
        })?;
        let mut redundant = polys.clone();
        redundant.push(polys[0].mul(&Polynomial::var(&ring, 0).unwrap()).unwrap());
        redundant.push(
            polys
                .iter()
                .skip(1)
                .fold(polys[0].clone(), |acc, p| acc.add(p).unwrap_or(acc)),
        );
        redundant.push(polys[0].clone());
        let red = euler_characteristic(
            &Ideal::new(&ring, redundant).unwrap(),
            MonomialOrder::Grevlex,
            &Budget::default(),
        )
        .map_err(|e| e.to_string())?;
        ensure(red.chi == hd.chi && red.numerator == hd.numerator, || {
            format!("{gens:?}: redundant generators change χ")
        })?;
    }
    Ok(format!(
        "{} fixtures, {degrees} degree checks, lex and redundancy invariant",
        fixtures.len()
    ))
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let mut outcomes = vec![
        run("1", secs(1), c1),
        run("2", secs(1), c2),
        run("3", None, c3),
        run("4", secs(1), c4),
        run("5", None, c5),
        run("6", secs(5), c6),
        run("7", None, c7),
    ];
    let start = Instant::now();
    let survey = survey_rde();
    let t = start.elapsed().as_secs_f64();
    let mut stated = c8_as_stated(&survey);
    let mut corrected = c8_corrected(&survey);
    stated.detail += &format!(" ({t:.3} s)");
    corrected.detail += &format!(" ({t:.3} s)");
    outcomes.push(stated);
    outcomes.push(corrected);
    outcomes.extend([
        run("9", None, c9),
        run("10", secs(60), c10),
        run("11", None, c11),
    ]);

    for o in &outcomes {
        let tag = match o.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Refuted => "FAIL (refuted as stated)",
        };
        println!("criterion {:<3} {tag}  {}", o.id, o.detail);
    }
    let fails = outcomes.iter().filter(|o| o.status == Status::Fail).count();
    let refuted = outcomes
        .iter()
        .filter(|o| o.status == Status::Refuted)
        .count();
    let passes = outcomes.iter().filter(|o| o.status == Status::Pass).count();
    println!("acceptance: {passes} pass, {fails} fail, {refuted} refuted as stated (corrected form checked as 8*)");
    if fails > 0 {
        std::process::exit(1);
    }
}
