//! Acceptance suite: one PASS/FAIL line per criterion with its runtime.
//! Exits nonzero if any criterion fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use diffalg::basefield::{Poly, RatFunc, Rational};
use diffalg::cli::parse::{parse_diffpoly, parse_ratfunc};
use diffalg::cli::print;
use diffalg::diffpoly::{in_general_ideal, is_reduced, ritt_reduce, DerivVar, DiffPoly, Monomial};
use diffalg::galois::{
    classify_antiderivative_extension, classify_exponential_extension, descriptor_dimension,
    descriptor_trdeg, no_smaller_index, GaloisDescriptor,
};
use diffalg::matgroup::{descriptor_to_matrix_group, gl_invariance_trials, identity_component_dimension};
use diffalg::odeseries::{fundamental_system_series, ode_residual, series_wronskian};
use diffalg::par::Exec;
use diffalg::wronskian::{dependence_certificate, wronskian, LinearODE};
use num_traits::{One, Zero};
use rand::Rng;

type Check = Result<(), String>;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rf(s: &str) -> RatFunc {
    parse_ratfunc(s).unwrap()
}

fn dp(s: &str) -> DiffPoly {
    parse_diffpoly(s).unwrap()
}

fn worked_example() -> Check {
    let p = dp("(x')^2 - 2*x");
    let s = p.separant(0).map_err(|e| e.to_string())?;
    ensure(s == dp("2*x'"), || format!("separant is {s}"))?;
    let d = p.derive();
    ensure(d == dp("2*x'*x'' - 2*x'"), || format!("derivative is {d}"))?;
    let member = |q: &str| in_general_ideal(&dp(q), &p, 0).map_err(|e| e.to_string());
    ensure(member("x'' - 1")?, || "x'' - 1 should be a member".into())?;
    ensure(!member("x")?, || "x should not be a member".into())?;
    ensure(!member("2*x'")?, || "the separant should not be a member".into())
}

fn dependence_equivalence() -> Check {
    let mut g = rng(1);
    let mut dependent_seen = 0;
    for trial in 0..500 {
        let n = g.gen_range(1..=4);
        let mut ps: Vec<Poly> = (0..n).map(|_| rand_poly(&mut g, 4, 9)).collect();
        if g.gen_bool(0.5) {
            // force a relation among the first n - 1 (or make the single one zero)
            let mut comb = Poly::zero();
            for p in &ps[..n - 1] {
                comb = &comb + &p.scale(&q(rand_coeff(&mut g, 3)));
            }
            ps[n - 1] = comb;
        }
        let fs: Vec<RatFunc> = ps.iter().cloned().map(RatFunc::from_poly).collect();
        let oracle_dependent = rank(coefficient_rows(&ps)) < n;
        dependent_seen += oracle_dependent as usize;
        let w = wronskian(&fs).map_err(|e| e.to_string())?;
        ensure(w == det_ratfunc(&wronsky_rows(&fs)), || format!("trial {trial}: Wronskian disagrees with Leibniz expansion"))?;
        ensure(w.is_zero() == oracle_dependent, || format!("trial {trial}: W = {w} but oracle dependent = {oracle_dependent}"))?;
        match dependence_certificate(&fs) {
            Some(c) => {
                ensure(oracle_dependent, || format!("trial {trial}: certificate for an independent tuple"))?;
                ensure(c.iter().any(|x| !x.is_zero()), || format!("trial {trial}: zero certificate"))?;
                let sum = fs.iter().zip(&c).fold(RatFunc::from_int(0), |acc, (f, ci)| acc.add(&f.scale(ci)));
                ensure(sum.is_zero(), || format!("trial {trial}: certificate sum is {sum}"))?;
            }
            None => ensure(!oracle_dependent, || format!("trial {trial}: no certificate for a dependent tuple"))?,
        }
    }
    ensure(dependent_seen > 100, || format!("only {dependent_seen} dependent tuples generated"))
}

fn transform_law() -> Check {
    let mut g = rng(2);
    for trial in 0..200 {
        let n = g.gen_range(1..=4);
        let u: Vec<RatFunc> = (0..n).map(|_| rand_ratfunc(&mut g, 3, 2, 9)).collect();
        let c: Vec<Vec<Rational>> = (0..n).map(|_| (0..n).map(|_| q(rand_coeff(&mut g, 5))).collect()).collect();
        let cu: Vec<RatFunc> = c
            .iter()
            .map(|row| row.iter().zip(&u).fold(RatFunc::from_int(0), |acc, (cij, uj)| acc.add(&uj.scale(cij))))
            .collect();
        let lhs = wronskian(&cu).map_err(|e| e.to_string())?;
        let rhs = wronskian(&u).map_err(|e| e.to_string())?.scale(&det_rational(&c));
        ensure(lhs == rhs, || format!("trial {trial}: W(Cu) = {lhs}, det(C)·W(u) = {rhs}"))?;
    }
    Ok(())
}

/// `P = Σ_{e ≤ d} c_e·(x^(N))^e` with `c_e` of order below `N` and `c_d ≠ 0`.
fn random_modulus<R: Rng>(g: &mut R) -> DiffPoly {
    let order = g.gen_range(0..=2);
    let d = g.gen_range(1..=3);
    let leader = DerivVar::new(0, order);
    let lower = |g: &mut R| {
        if order == 0 || g.gen_bool(0.4) {
            DiffPoly::constant(rand_ratfunc(g, 1, 1, 5), 1)
        } else {
            rand_diffpoly(g, 1, order - 1, 2, 2)
        }
    };
    loop {
        let mut p = DiffPoly::zero(1);
        for e in 0..=d {
            if e < d && g.gen_bool(0.4) {
                continue;
            }
            let c = lower(g);
            p = p.add(&c.mul_monomial(&Monomial::from_factors([(leader, e)])));
        }
        if p.leader_degree(0).ok() == Some(d) && p.order(0) == Some(order as i64) {
            return p;
        }
    }
}

fn ritt_certificates() -> Check {
    let mut g = rng(4);
    for trial in 0..300 {
        let p = random_modulus(&mut g);
        let q_order = p.order(0).unwrap() as usize + 1;
        let qq = rand_diffpoly(&mut g, 1, q_order, 2, 3);
        let red = ritt_reduce(&qq, &p, 0).map_err(|e| format!("trial {trial}: {e}"))?;
        let expanded = red.expand(&qq, &p, 0).map_err(|e| e.to_string())?;
        ensure(expanded == red.remainder, || format!("trial {trial}: certificate identity fails for Q = {qq}, P = {p}"))?;
        let reduced = is_reduced(&red.remainder, &p, 0).map_err(|e| e.to_string())?;
        ensure(reduced, || format!("trial {trial}: remainder {} is not reduced w.r.t. {p}", red.remainder))?;
    }
    Ok(())
}

fn series_existence() -> Check {
    let mut g = rng(5);
    let precision = 16;
    let mut trial = 0;
    while trial < 100 {
        let n = g.gen_range(1..=4);
        let t0 = q(g.gen_range(-3..=3));
        let coeffs: Vec<RatFunc> = (0..n).map(|_| rand_ratfunc(&mut g, 2, 1, 5)).collect();
        if coeffs.iter().any(|a| a.den().eval(&t0).is_zero()) {
            continue;
        }
        let ode = LinearODE::new(coeffs).unwrap();
        let sols = fundamental_system_series(&ode, &t0, precision).map_err(|e| e.to_string())?;
        for (i, s) in sols.iter().enumerate() {
            let r = ode_residual(&ode, s).map_err(|e| e.to_string())?;
            ensure(r.precision() == precision - n, || format!("trial {trial}: residual precision {}", r.precision()))?;
            ensure(r.is_zero(), || format!("trial {trial}: residual of solution {i} is nonzero"))?;
        }
        let w0 = series_wronskian(&sols).map_err(|e| e.to_string())?.coeff(0);
        ensure(w0.is_one(), || format!("trial {trial}: Wronskian constant term {w0}"))?;
        trial += 1;
    }
    Ok(())
}

fn classification_descriptors() -> Result<Vec<GaloisDescriptor>, String> {
    let mut out = Vec::new();

    // u' = 2t: antiderivative t^2 lies in K
    let a = rf("2*t");
    let d = classify_antiderivative_extension(&a);
    match &d {
        GaloisDescriptor::Trivial { witness } => {
            ensure(witness.derive() == a, || format!("witness {witness} is not an antiderivative"))?;
            ensure(witness.sub(&rf("t^2")).is_constant(), || "witness differs from t^2 by a non-constant".into())?;
        }
        other => return Err(format!("2t classified as {other:?}")),
    }
    out.push(d);

    // u' = 1/t: nonzero residue at 0, so no antiderivative in K
    let a = rf("1/t");
    let residues = simple_residues(&a).ok_or("oracle cannot read residues of 1/t")?;
    ensure(residues.iter().any(|(_, r)| !r.is_zero()), || "oracle found no residue".into())?;
    let d = classify_antiderivative_extension(&a);
    ensure(d == GaloisDescriptor::AdditiveGroup, || format!("1/t (antiderivative) classified as {d:?}"))?;
    out.push(d);

    // u' = u: a nonzero polynomial is never n·(f'/f), which vanishes at infinity
    let a = rf("1");
    ensure(a.is_polynomial() && !a.is_zero(), || "oracle precondition".into())?;
    let d = classify_exponential_extension(&a);
    ensure(d == GaloisDescriptor::MultiplicativeGroup, || format!("1 (exponential) classified as {d:?}"))?;
    out.push(d);

    // u' = u/(2t): residue 1/2, so n = 2 and β = t
    let a = rf("1/(2*t)");
    let (n_oracle, beta_oracle) = exponential_index_oracle(&a).ok_or("oracle out of scope for 1/(2t)")?;
    let d = classify_exponential_extension(&a);
    match &d {
        GaloisDescriptor::CyclicOfOrder { n, beta } => {
            ensure(*n == 2 && *n == n_oracle, || format!("cyclic order {n}, oracle {n_oracle}"))?;
            ensure(*beta == rf("t"), || format!("beta is {beta}"))?;
            ensure(beta.div(&beta_oracle).unwrap().is_constant(), || "beta disagrees with oracle".into())?;
            let lhs = beta.derive();
            let rhs = a.mul(beta).scale(&q(*n as i64));
            ensure(lhs == rhs, || format!("beta' = {lhs} but n*a*beta = {rhs}"))?;
            ensure(no_smaller_index(&a, *n), || "a smaller index exists".into())?;
            ensure(d.minimal_polynomial().as_deref() == Some("X^2 - c*t"), || "minimal polynomial".into())?;
        }
        other => return Err(format!("1/(2t) classified as {other:?}")),
    }
    out.push(d);

    // u' = u/t: u = c*t already lies in K
    let a = rf("1/t");
    let (n_oracle, _) = exponential_index_oracle(&a).ok_or("oracle out of scope for 1/t")?;
    ensure(n_oracle == 1, || format!("oracle index {n_oracle}"))?;
    let d = classify_exponential_extension(&a);
    match &d {
        GaloisDescriptor::Trivial { witness } => {
            ensure(witness.derive() == a.mul(witness), || format!("witness {witness} fails beta' = a*beta"))?;
        }
        other => return Err(format!("1/t (exponential) classified as {other:?}")),
    }
    out.push(d);
    Ok(out)
}

fn classification() -> Check {
    classification_descriptors().map(|_| ())
}

fn dimension_consistency() -> Check {
    let mut descriptors = classification_descriptors()?;
    descriptors.extend((1..=4).map(|n| GaloisDescriptor::FullGeneralLinear { n }));
    for d in &descriptors {
        let dim = descriptor_dimension(d);
        let trdeg = descriptor_trdeg(d);
        let group = descriptor_to_matrix_group(d);
        let icd = identity_component_dimension(&group).map_err(|e| e.to_string())?;
        ensure(dim == trdeg && dim == icd, || format!("{d:?}: dimension {dim}, trdeg {trdeg}, identity component {icd}"))?;
    }
    Ok(())
}

fn gl_witness() -> Check {
    for (n, trials) in [(2, 50), (3, 20)] {
        let results = gl_invariance_trials(Exec::Parallel, n, trials, 8).map_err(|e| e.to_string())?;
        let failed = results.iter().filter(|ok| !**ok).count();
        ensure(results.len() == trials && failed == 0, || format!("n = {n}: {failed} of {trials} trials failed"))?;
    }
    Ok(())
}

fn cli_contract() -> Check {
    let mut g = rng(9);
    for k in 0..500 {
        let f = rand_ratfunc(&mut g, 4, 3, 9);
        let text = print::ratfunc(&f);
        let back = parse_ratfunc(&text).map_err(|e| format!("value {k}: {text:?}: {e}"))?;
        ensure(back == f, || format!("value {k}: {text:?} reparsed as {}", print::ratfunc(&back)))?;
    }
    for k in 0..500 {
        let m = g.gen_range(1..=3);
        let p = rand_diffpoly(&mut g, m, 4, 3, 4);
        let text = print::diffpoly(&p);
        let back = parse_diffpoly(&text).map_err(|e| format!("value {k}: {text:?}: {e}"))?;
        ensure(back.clone().with_indeterminates(m) == p, || format!("value {k}: {text:?} reparsed as {back}"))?;
    }
    let cases: [(&[&str], &str); 3] = [
        (&["separant", "(x')^2-2*x"], "2*x'\n"),
        (&["member", "x''-1", "--mod", "(x')^2-2*x"], "true\n"),
        (
            &["classify-exp", "1/(2*t)"],
            "{\"group\":\"cyclic\",\"n\":2,\"beta\":\"t\",\"minimal_polynomial\":\"X^2 - c*t\",\"dimension\":0}\n",
        ),
    ];
    for (args, expected) in cases {
        let out = Command::new(env!("CARGO_BIN_EXE_diffalg")).args(args).output().map_err(|e| e.to_string())?;
        let stdout = String::from_utf8_lossy(&out.stdout);
        ensure(out.status.success() && stdout == expected, || format!("{args:?} printed {stdout:?}"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Worked example (x')^2 - 2*x", 1, worked_example),
        ("Wronskian zero iff linear dependence (500 tuples)", 30, dependence_equivalence),
        ("Wronskian transform law (200 pairs)", 30, transform_law),
        ("Ritt reduction certificate identity (300 pairs)", 60, ritt_certificates),
        ("Series fundamental systems (100 ODEs, N = 16)", 60, series_existence),
        ("Classification witnesses", 1, classification),
        ("Dimension, trdeg and identity component agree", 1, dimension_consistency),
        ("GL(n) invariance witness (50 at n = 2, 20 at n = 3)", 60, gl_witness),
        ("CLI round trip and documented invocations", 30, cli_contract),
    ];
    // numeric arguments select criteria; other arguments (from cargo test) are ignored
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failures = 0;
    let mut ran = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        if !selected.is_empty() && !selected.contains(&(i + 1)) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|_| {
            ensure(elapsed < Duration::from_secs(*limit), || format!("took longer than {limit} s"))
        });
        match outcome {
            Ok(()) => println!("PASS [{}] {name} ({:.3} s, limit {limit} s)", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failures += 1;
                println!("FAIL [{}] {name} ({:.3} s, limit {limit} s): {why}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {ran} criteria passed", ran - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
