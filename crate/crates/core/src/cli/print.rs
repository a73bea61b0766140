//! Canonical text rendering. Everything printed here parses back to the
//! same value with [`super::parse`].

use num_traits::{One, Signed, Zero};

use crate::basefield::{Poly, RatFunc, Rational};
use crate::diffpoly::{DiffPoly, Monomial};

pub fn rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn monomial_t(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "t".into(),
        k => format!("t^{k}"),
    }
}

/// Polynomial in `t`, descending degree, e.g. `1/2*t^2 - 3`.
pub fn poly(p: &Poly) -> String {
    let terms: Vec<(Rational, usize)> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (c.clone(), k))
        .collect();
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (c, k)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        let body = if *k == 0 {
            rational(&abs)
        } else if abs.is_one() {
            monomial_t(*k)
        } else {
            format!("{}*{}", rational(&abs), monomial_t(*k))
        };
        match (idx, negative) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

fn term_count(p: &Poly) -> usize {
    p.coeffs().iter().filter(|c| !c.is_zero()).count()
}

fn is_bare_power_of_t(p: &Poly) -> bool {
    term_count(p) == 1 && p.leading_coeff().is_one() && p.degree().is_some_and(|d| d >= 1)
}

/// Rational function; denominators are shown with integer coefficients,
/// e.g. `1/(2*t)` or `(t^2 + 1)/(t - 1)`.
pub fn ratfunc(f: &RatFunc) -> String {
    if f.den().is_one() {
        return poly(f.num());
    }
    let (cn, zn) = f.num().to_primitive_integer();
    let (cd, zd) = f.den().to_primitive_integer();
    let ratio = cn / cd;
    let num = Poly::from_bigints(&zn).scale(&Rational::from_integer(ratio.numer().clone()));
    let den = Poly::from_bigints(&zd).scale(&Rational::from_integer(ratio.denom().clone()));
    let num_s = if term_count(&num) > 1 { format!("({})", poly(&num)) } else { poly(&num) };
    let den_s = if is_bare_power_of_t(&den) { poly(&den) } else { format!("({})", poly(&den)) };
    format!("{num_s}/{den_s}")
}

/// Sign of the leading numerator coefficient.
pub fn is_negative(f: &RatFunc) -> bool {
    f.num().leading_coeff().is_negative()
}

/// True when the rendering of `f` has a top-level `+` or binary `-`.
fn is_sum(f: &RatFunc) -> bool {
    f.den().is_one() && term_count(f.num()) > 1
}

fn monomial(m: &Monomial, n: usize) -> String {
    m.factors()
        .iter()
        .map(|(v, e)| {
            if *e == 1 {
                v.name(n)
            } else {
                format!("{}^{}", v.name(n), e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Display order: descending by total degree, then highest variable, then
/// the monomial itself.
pub fn sorted_terms(p: &DiffPoly) -> Vec<(&Monomial, &RatFunc)> {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| {
        let ka = (a.total_degree(), a.highest(), a.factors().iter().rev().collect::<Vec<_>>());
        let kb = (b.total_degree(), b.highest(), b.factors().iter().rev().collect::<Vec<_>>());
        kb.cmp(&ka)
    });
    terms
}

/// Differential polynomial, e.g. `x'^2 - 2*x` or `2*x'*x'' - 2*x'`.
pub fn diffpoly(p: &DiffPoly) -> String {
    let n = p.num_indeterminates();
    let terms = sorted_terms(p);
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (mono, c)) in terms.into_iter().enumerate() {
        let negative = is_negative(c);
        let abs = if negative { c.neg() } else { c.clone() };
        let body = if mono.is_one() {
            let s = ratfunc(&abs);
            // a sum needs no parentheses at the very end of a sum
            if is_sum(&abs) && idx > 0 && negative {
                format!("({s})")
            } else {
                s
            }
        } else if abs.is_one() {
            monomial(mono, n)
        } else if is_sum(&abs) {
            format!("({})*{}", ratfunc(&abs), monomial(mono, n))
        } else {
            format!("{}*{}", ratfunc(&abs), monomial(mono, n))
        };
        match (idx, negative) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                if is_sum(&abs) && mono.is_one() {
                    out.push('(');
                    out.push_str(&body);
                    out.push(')');
                } else {
                    out.push_str(&body);
                }
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

/// `y^(n) + a1*y^(n-1) + ... + an*y`, rendered like a differential polynomial in `y`.
pub fn linear_operator(coeffs: &[RatFunc]) -> String {
    let n = coeffs.len();
    let y = |k: usize| match k {
        0 => "y".to_string(),
        1 => "y'".to_string(),
        2 => "y''".to_string(),
        k => format!("y^({k})"),
    };
    let mut out = y(n);
    for (i, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let order = n - 1 - i;
        let negative = is_negative(a);
        let abs = if negative { a.neg() } else { a.clone() };
        let coeff = if abs.is_one() {
            String::new()
        } else if is_sum(&abs) {
            format!("({})*", ratfunc(&abs))
        } else {
            format!("{}*", ratfunc(&abs))
        };
        out.push_str(if negative { " - " } else { " + " });
        out.push_str(&coeff);
        out.push_str(&y(order));
    }
    out
}
