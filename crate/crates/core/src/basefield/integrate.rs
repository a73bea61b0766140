//! Recognising derivatives and logarithmic derivatives in ℚ(t).
//!
//! `antiderivative_in_field` uses Hermite reduction: whatever survives with a
//! squarefree denominator has only simple poles and therefore cannot be a
//! derivative of a rational function. `log_derivative_decompose` reads the
//! residue at each irreducible factor of the denominator; a logarithmic
//! derivative needs them all to be rational constants.

use num_integer::Integer;
use num_traits::One;

use super::factor::factor_squarefree;
use super::poly::Poly;
use super::ratfunc::{FieldTag, RatFunc};
use super::Rational;

/// One summand `c · p′/p` of a logarithmic-derivative decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogTerm {
    /// Monic irreducible factor of the denominator.
    pub factor: Poly,
    pub coefficient: Rational,
}

/// Hermite reduction of a proper fraction `num/den`: returns `(g, h)` with
/// `num/den = g′ + h` and the denominator of `h` squarefree.
pub fn hermite_reduce(num: &Poly, den: &Poly) -> (RatFunc, RatFunc) {
    let mut a = num.clone();
    let mut d = den.monic();
    a = a.scale(&den.leading_coeff().recip());
    let mut g = RatFunc::from_poly(Poly::zero());
    let parts = d.squarefree_decomposition();
    for (idx, v) in parts.iter().enumerate() {
        let i = idx + 1;
        if i < 2 || v.is_constant() {
            continue;
        }
        let u = d.exact_div(&v.pow(i as u32));
        let uv_prime = &u * &v.derivative();
        for j in (1..i).rev() {
            let jr = Rational::from_integer(j.into());
            let rhs = a.scale(&(-jr.recip()));
            let (b, c) = Poly::diophantine(&uv_prime, v, &rhs)
                .expect("U·V′ and V are coprime for squarefree V");
            let term = RatFunc::normalize(b.clone(), v.pow(j as u32)).expect("nonzero denominator");
            g = g.add(&term);
            a = &c.scale(&(-jr)) - &(&u * &b.derivative());
        }
        d = &u * v;
    }
    let h = RatFunc::normalize(a, d).expect("nonzero denominator");
    (g, h)
}

/// Returns `b` with `b′ = a` when one exists in the base field.
pub fn antiderivative_in_field(a: &RatFunc) -> Option<RatFunc> {
    if a.is_zero() {
        return Some(RatFunc::from_poly(Poly::zero()));
    }
    if a.tag() == FieldTag::ConstantsOnly {
        // zero derivation on ℚ: only 0 is a derivative
        return None;
    }
    let (poly_part, proper) = a.polynomial_part();
    let (g, h) = hermite_reduce(&proper, a.den());
    let (h_poly, h_rest) = h.polynomial_part();
    if !h_rest.is_zero() {
        return None;
    }
    let b = g.add(&RatFunc::from_poly((&poly_part + &h_poly).integral()));
    debug_assert_eq!(b.derive(), *a);
    Some(b)
}

/// Writes `a = Σ cᵢ·pᵢ′/pᵢ` over the monic irreducible factors `pᵢ` of the
/// denominator, or returns `None` when `a` has a polynomial part, a multiple
/// pole, or a non-rational residue.
pub fn log_derivative_decompose(a: &RatFunc) -> Option<Vec<LogTerm>> {
    if a.is_zero() {
        return Some(Vec::new());
    }
    if a.tag() == FieldTag::ConstantsOnly {
        return None;
    }
    let (poly_part, _) = a.polynomial_part();
    if !poly_part.is_zero() || !a.den().is_squarefree() {
        return None;
    }
    let den_prime = a.den().derivative();
    let mut terms = Vec::new();
    for p in factor_squarefree(a.den()) {
        // residue class of num / den′ modulo p must be a constant
        let (g, inv, _) = den_prime.rem(&p).ext_gcd(&p);
        debug_assert!(g.is_one());
        let c = (&a.num().rem(&p) * &inv).rem(&p);
        if !c.is_constant() {
            return None;
        }
        terms.push(LogTerm { factor: p, coefficient: c.coeff(0) });
    }
    (recombine(&terms) == *a).then_some(terms)
}

/// `Σ cᵢ·pᵢ′/pᵢ`.
pub fn recombine(terms: &[LogTerm]) -> RatFunc {
    terms.iter().fold(RatFunc::from_poly(Poly::zero()), |acc, term| {
        let q = RatFunc::normalize(term.factor.derivative(), term.factor.clone())
            .expect("irreducible factor is nonzero");
        acc.add(&q.scale(&term.coefficient))
    })
}

/// Least `n ≥ 1` such that `f′ = n·a·f` has a nonzero solution `f` in the
/// base field, together with such a solution `β = Π pᵢ^(n·cᵢ)`.
pub fn smallest_exponential_index(a: &RatFunc) -> Option<(u64, RatFunc)> {
    let terms = log_derivative_decompose(a)?;
    let n = terms
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, t| acc.lcm(t.coefficient.denom()));
    let n_rat = Rational::from_integer(n.clone());
    let mut beta = RatFunc::from_poly(Poly::one());
    for t in &terms {
        let e = (&t.coefficient * &n_rat).to_integer();
        let e: i64 = e.try_into().expect("exponent fits in i64");
        let p = RatFunc::from_poly(t.factor.clone());
        beta = beta.mul(&p.powi(e).expect("irreducible factor is nonzero"));
    }
    let n: u64 = n.try_into().expect("index fits in u64");
    debug_assert!(!beta.is_zero());
    debug_assert_eq!(beta.derive(), a.scale(&Rational::from_integer(n.into())).mul(&beta));
    Some((n, beta))
}
