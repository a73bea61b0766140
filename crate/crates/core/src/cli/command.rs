//! Command-line verbs, dispatch and rendering.
//!
//! Every invocation renders into a [`Response`] before anything is printed,
//! so an error never leaves a partial result on standard output.

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::parse::{parse_diffpoly, parse_matrix, parse_ratfunc, parse_rational};
use super::print;
use crate::basefield::{RatFunc, Rational};
use crate::diffpoly::{in_general_ideal, ritt_reduce};
use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::galois::{
    classify_antiderivative_extension, classify_exponential_extension, descriptor_dimension,
    GaloisDescriptor,
};
use crate::matgroup::{
    catalog_group, gl_invariance_trials, gl_invariance_witness, group_closure_sample_check,
    group_contains, random_generic_point, ConstMatrix, GroupLabel,
};
use crate::odeseries::{fundamental_system_series, series_wronskian};
use crate::par::{self, Exec};
use crate::wronskian::{
    dependence_certificate, ode_from_fundamental_system, wronskian, FundamentalSystem, LinearODE,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Exact differential algebra over Q(t).
#[derive(Debug, Parser)]
#[command(name = "diffalg", version, args_override_self = true)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Derivative of a differential polynomial.
    Derive {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Order in an indeterminate (-1 if it does not occur).
    Order {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Indeterminate index, 1-based.
        #[arg(long, default_value_t = 1)]
        var: usize,
    },
    /// Separant with respect to the leader.
    Separant {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 1)]
        var: usize,
    },
    /// Ritt reduction with its certificate.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long = "mod", allow_hyphen_values = true)]
        modulus: String,
        #[arg(long, default_value_t = 1)]
        var: usize,
    },
    /// Membership in the ideal of the general solution.
    Member {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long = "mod", allow_hyphen_values = true)]
        modulus: String,
        #[arg(long, default_value_t = 1)]
        var: usize,
    },
    /// Wronskian of rational functions.
    Wronskian {
        #[arg(required = true, allow_negative_numbers = true)]
        elems: Vec<String>,
    },
    /// Linear dependence over the constants, with a certificate.
    Depend {
        #[arg(required = true, allow_negative_numbers = true)]
        elems: Vec<String>,
    },
    /// Monic linear ODE with the given fundamental system.
    OdeFrom {
        #[arg(required = true, allow_negative_numbers = true)]
        elems: Vec<String>,
    },
    /// Power-series fundamental system of y^(n) + a1*y^(n-1) + ... + an*y = 0.
    SolveSeries {
        #[arg(required = true, allow_negative_numbers = true)]
        coeffs: Vec<String>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        base_point: String,
        #[arg(long, default_value_t = crate::odeseries::DEFAULT_PRECISION)]
        precision: usize,
    },
    /// Galois group of u' = a.
    ClassifyInt {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Galois group of u' = a*u.
    ClassifyExp {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Membership of matrices in a catalog group (GL, SL, Ga, Gm, muK).
    GroupCheck {
        label: String,
        #[arg(required = true)]
        matrices: Vec<String>,
        /// Also check products and inverses of the given matrices.
        #[arg(long)]
        closure: bool,
    },
    /// Invariance of the Wronskian-quotient coefficients under GL(n).
    GlWitness {
        n: usize,
        /// Transform to test; random invertible matrices when omitted.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
    /// Run commands read from standard input, one per line.
    Batch,
}

/// Rendered outcome of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Response {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Response {
    fn error(err: &Error, format: Format) -> Response {
        let code = if err.is_syntax() { 2 } else { 1 };
        match format {
            Format::Text => Response { code, stdout: String::new(), stderr: format!("error: {err}\n") },
            Format::Json => {
                let mut obj = json!({ "kind": err.kind(), "message": err.to_string() });
                if let Error::Syntax { column, .. } = err {
                    obj["column"] = json!(column.to_string());
                }
                Response { code, stdout: format!("{}\n", json!({ "error": obj })), stderr: String::new() }
            }
        }
    }
}

/// Result of a verb in both renderings.
struct Output {
    kind: &'static str,
    text: String,
    result: Value,
    witness: Option<Value>,
    certificate: Option<Value>,
}

impl Output {
    fn new(kind: &'static str, text: String, result: Value) -> Self {
        Output { kind, text, result, witness: None, certificate: None }
    }

    fn witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }

    fn certificate(mut self, c: Value) -> Self {
        self.certificate = Some(c);
        self
    }

    fn render(self, format: Format) -> String {
        match format {
            Format::Text => format!("{}\n", self.text),
            Format::Json => {
                let mut obj = json!({ "kind": self.kind, "result": self.result });
                if let Some(w) = self.witness {
                    obj["witness"] = w;
                }
                if let Some(c) = self.certificate {
                    obj["certificate"] = c;
                }
                format!("{obj}\n")
            }
        }
    }
}

fn str_list(items: &[RatFunc]) -> Value {
    Value::Array(items.iter().map(|f| json!(print::ratfunc(f))).collect())
}

fn rat_list(items: &[Rational]) -> Value {
    Value::Array(items.iter().map(|c| json!(print::rational(c))).collect())
}

fn join_rats(items: &[Rational]) -> String {
    items.iter().map(print::rational).collect::<Vec<_>>().join(", ")
}

/// Descriptor object. `plain_numbers` renders counts as JSON numbers, the
/// compact form printed in text mode.
pub fn descriptor_json(d: &GaloisDescriptor, plain_numbers: bool) -> Value {
    let num = |v: u64| if plain_numbers { json!(v) } else { json!(v.to_string()) };
    let mut obj = json!({ "group": d.group_name() });
    match d {
        GaloisDescriptor::Trivial { witness } => obj["witness"] = json!(print::ratfunc(witness)),
        GaloisDescriptor::CyclicOfOrder { n, beta } => {
            obj["n"] = num(*n);
            obj["beta"] = json!(print::ratfunc(beta));
            obj["minimal_polynomial"] = json!(d.minimal_polynomial().unwrap_or_default());
        }
        GaloisDescriptor::FullGeneralLinear { n } => obj["n"] = num(*n as u64),
        GaloisDescriptor::AdditiveGroup | GaloisDescriptor::MultiplicativeGroup => {}
    }
    obj["dimension"] = num(descriptor_dimension(d) as u64);
    obj
}

fn var_index(var: usize) -> Result<usize> {
    var.checked_sub(1).ok_or_else(|| Error::ShapeError("indeterminates are numbered from 1".into()))
}

/// Parses `Q` and `P` over a common set of indeterminates.
fn parse_pair(q: &str, p: &str) -> Result<(DiffPoly, DiffPoly)> {
    let (q, p) = (parse_diffpoly(q)?, parse_diffpoly(p)?);
    let m = q.num_indeterminates().max(p.num_indeterminates());
    Ok((q.with_indeterminates(m), p.with_indeterminates(m)))
}

fn parse_all(items: &[String]) -> Result<Vec<RatFunc>> {
    items.iter().map(|s| parse_ratfunc(s)).collect()
}

fn execute(verb: &Verb, seed: u64) -> Result<Output> {
    Ok(match verb {
        Verb::Derive { poly } => {
            let d = parse_diffpoly(poly)?.derive();
            let s = print::diffpoly(&d);
            Output::new("derive", s.clone(), json!(s))
        }
        Verb::Order { poly, var } => {
            let p = parse_diffpoly(poly)?;
            let o = p.order(var_index(*var)?).ok_or_else(|| Error::NotApplicable("the zero polynomial has no order".into()))?;
            Output::new("order", o.to_string(), json!(o.to_string()))
        }
        Verb::Separant { poly, var } => {
            let s = print::diffpoly(&parse_diffpoly(poly)?.separant(var_index(*var)?)?);
            Output::new("separant", s.clone(), json!(s))
        }
        Verb::Reduce { poly, modulus, var } => {
            let (q, p) = parse_pair(poly, modulus)?;
            let red = ritt_reduce(&q, &p, var_index(*var)?)?;
            let rem = print::diffpoly(&red.remainder);
            let cofactors: Vec<Value> = red
                .certificate
                .iter()
                .map(|(k, c)| json!({ "k": k.to_string(), "cofactor": print::diffpoly(c) }))
                .collect();
            let mut text = format!("{rem}\nsep_power: {}\ninit_power: {}", red.sep_power, red.init_power);
            for (k, c) in &red.certificate {
                text.push_str(&format!("\ncofactor {k}: {}", print::diffpoly(c)));
            }
            Output::new("reduce", text, json!(rem)).certificate(json!({
                "sep_power": red.sep_power.to_string(),
                "init_power": red.init_power.to_string(),
                "cofactors": cofactors,
            }))
        }
        Verb::Member { poly, modulus, var } => {
            let (q, p) = parse_pair(poly, modulus)?;
            let i = var_index(*var)?;
            let member = in_general_ideal(&q, &p, i)?;
            let rem = ritt_reduce(&q, &p, i)?.remainder;
            Output::new("member", member.to_string(), json!(member))
                .witness(json!({ "remainder": print::diffpoly(&rem) }))
        }
        Verb::Wronskian { elems } => {
            let w = print::ratfunc(&wronskian(&parse_all(elems)?)?);
            Output::new("wronskian", w.clone(), json!(w))
        }
        Verb::Depend { elems } => {
            let fs = parse_all(elems)?;
            match dependence_certificate(&fs) {
                Some(c) => Output::new("depend", format!("true\ncertificate: {}", join_rats(&c)), json!(true))
                    .certificate(rat_list(&c)),
                None => {
                    let w = print::ratfunc(&wronskian(&fs)?);
                    Output::new("depend", "false".into(), json!(false)).witness(json!({ "wronskian": w }))
                }
            }
        }
        Verb::OdeFrom { elems } => {
            let ode = ode_from_fundamental_system(&FundamentalSystem::new(parse_all(elems)?)?)?;
            let op = print::linear_operator(ode.coeffs());
            Output::new("ode-from", op.clone(), json!(op)).certificate(str_list(ode.coeffs()))
        }
        Verb::SolveSeries { coeffs, base_point, precision } => {
            let ode = LinearODE::new(parse_all(coeffs)?)?;
            let t0 = parse_rational(base_point)?;
            let sols = fundamental_system_series(&ode, &t0, *precision)?;
            let w0 = series_wronskian(&sols)?.coeff(0);
            let mut text: Vec<String> = sols
                .iter()
                .enumerate()
                .map(|(i, s)| format!("y{}: [{}]", i + 1, join_rats(s.coeffs())))
                .collect();
            text.push(format!("wronskian(t0): {}", print::rational(&w0)));
            let result: Vec<Value> = sols.iter().map(|s| rat_list(s.coeffs())).collect();
            Output::new("solve-series", text.join("\n"), Value::Array(result))
                .witness(json!({ "wronskian_constant_term": print::rational(&w0) }))
        }
        Verb::ClassifyInt { a } => {
            let d = classify_antiderivative_extension(&parse_ratfunc(a)?);
            Output::new("classify-int", descriptor_json(&d, true).to_string(), descriptor_json(&d, false))
        }
        Verb::ClassifyExp { a } => {
            let d = classify_exponential_extension(&parse_ratfunc(a)?);
            Output::new("classify-exp", descriptor_json(&d, true).to_string(), descriptor_json(&d, false))
        }
        Verb::GroupCheck { label, matrices, closure } => {
            let label = GroupLabel::parse(label)
                .ok_or_else(|| Error::NotInCatalog(format!("unknown group label {label:?}")))?;
            let mats: Vec<ConstMatrix> =
                matrices.iter().map(|m| parse_matrix(m).and_then(ConstMatrix::new)).collect::<Result<_>>()?;
            let g = catalog_group(label, mats[0].n())?;
            let members: Vec<bool> = mats.iter().map(|m| group_contains(&g, m)).collect::<Result<_>>()?;
            let all_members = members.iter().all(|&b| b);
            let mut witness = json!({ "members": members });
            let (ok, text) = if *closure {
                let closed = group_closure_sample_check(&g, &mats)?;
                witness["closure"] = json!(closed);
                (all_members && closed, format!("{}\nclosure: {closed}", all_members && closed))
            } else {
                (all_members, all_members.to_string())
            };
            Output::new("group-check", text, json!(ok)).witness(witness)
        }
        Verb::GlWitness { n, matrix, trials } => {
            if *n == 0 {
                return Err(Error::ShapeError("n must be positive".into()));
            }
            let results = match matrix {
                Some(m) => {
                    let t = ConstMatrix::new(parse_matrix(m)?)?;
                    par::map_range(Exec::Parallel, *trials, |k| {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
                        loop {
                            let point = random_generic_point(*n, &mut rng);
                            match gl_invariance_witness(*n, &t, &point) {
                                Err(Error::DegeneratePoint) => continue,
                                other => return other,
                            }
                        }
                    })
                    .into_iter()
                    .collect::<Result<Vec<bool>>>()?
                }
                None => gl_invariance_trials(Exec::Parallel, *n, *trials, seed)?,
            };
            let passed = results.iter().filter(|&&b| b).count();
            let ok = passed == results.len();
            Output::new("gl-witness", ok.to_string(), json!(ok))
                .witness(json!({ "trials": trials.to_string(), "passed": passed.to_string() }))
        }
        Verb::Batch => return Err(Error::NotApplicable("batch cannot be nested".into())),
    })
}

/// Runs one parsed command (not `batch`).
pub fn run(cli: &Cli) -> Response {
    match execute(&cli.verb, cli.seed) {
        Ok(out) => Response { code: 0, stdout: out.render(cli.format), stderr: String::new() },
        Err(e) => Response::error(&e, cli.format),
    }
}

/// Parses `args` (including the program name) and runs them; usage errors
/// exit with 2, help and version with 0.
pub fn run_args<I, T>(args: I) -> Response
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Response { code: 2, stdout: String::new(), stderr: rendered }
            } else {
                Response { code: 0, stdout: rendered, stderr: String::new() }
            }
        }
    }
}

/// Runs every nonblank, non-`#` line of `input` as a command with the outer
/// `--format` and `--seed` as defaults. Output is concatenated in line
/// order; the exit code is the largest one seen.
pub fn run_batch(input: &str, format: Format, seed: u64) -> Response {
    let lines: Vec<&str> =
        input.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    let fmt = match format {
        Format::Text => "text",
        Format::Json => "json",
    };
    let responses = par::map(Exec::Parallel, &lines, |line| match shlex::split(line) {
        Some(words) => {
            let seed = seed.to_string();
            let mut args = vec!["diffalg", "--format", fmt, "--seed", seed.as_str()];
            args.extend(words.iter().map(String::as_str));
            run_args(args)
        }
        None => Response::error(
            &Error::Syntax { column: 1, message: format!("unbalanced quotes in {line:?}") },
            format,
        ),
    });
    let mut out = Response { code: 0, stdout: String::new(), stderr: String::new() };
    for r in responses {
        out.code = out.code.max(r.code);
        out.stdout.push_str(&r.stdout);
        out.stderr.push_str(&r.stderr);
    }
    out
}

