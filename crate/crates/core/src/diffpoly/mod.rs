//! The differential polynomial ring K{x₁,…,xₘ} over K = ℚ or ℚ(t).
//!
//! A [`DiffPoly`] is a sparse map from monomials in derivative variables
//! `x_i^(j)` to nonzero [`RatFunc`] coefficients. The derivation extends the
//! one on K by `∂x_i^(j) = x_i^(j+1)`.

mod reduce;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::basefield::{factor, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::ring::{Ring, RingOps};

pub use reduce::{in_general_ideal, is_reduced, ritt_reduce, ReductionResult};

/// The derivative variable `x_i^(j)`.
///
/// Ranked by derivative order first, then by indeterminate index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DerivVar {
    pub indeterminate: usize,
    pub order: usize,
}

impl DerivVar {
    pub fn new(indeterminate: usize, order: usize) -> Self {
        DerivVar { indeterminate, order }
    }

    pub fn derive(self) -> Self {
        DerivVar { order: self.order + 1, ..self }
    }

    /// Display name in a ring with `m` indeterminates: `x`, `x'`, `x''`,
    /// `x^(3)`, or `x2'` etc. when `m > 1`.
    pub fn name(&self, m: usize) -> String {
        let base = if m <= 1 && self.indeterminate == 0 {
            "x".to_string()
        } else {
            format!("x{}", self.indeterminate + 1)
        };
        match self.order {
            0 => base,
            1 => format!("{base}'"),
            2 => format!("{base}''"),
            k => format!("{base}^({k})"),
        }
    }
}

impl Ord for DerivVar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.order, self.indeterminate).cmp(&(other.order, other.indeterminate))
    }
}

impl PartialOrd for DerivVar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A power product of derivative variables, sorted by rank, exponents > 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(DerivVar, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: DerivVar) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (DerivVar, u32)>) -> Self {
        let mut map: BTreeMap<DerivVar, u32> = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn factors(&self) -> &[(DerivVar, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_in(&self, v: DerivVar) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    /// Highest-ranked variable present.
    pub fn highest(&self) -> Option<DerivVar> {
        self.0.last().map(|(v, _)| *v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_factors(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Same monomial with the exponent of `v` replaced.
    pub fn with_degree(&self, v: DerivVar, e: u32) -> Monomial {
        Monomial::from_factors(
            self.0
                .iter()
                .filter(|(w, _)| *w != v)
                .copied()
                .chain(std::iter::once((v, e))),
        )
    }
}

/// Sparse differential polynomial in `num_indeterminates` indeterminates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, RatFunc>,
    num_indeterminates: usize,
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffPoly({})", crate::cli::print::diffpoly(self))
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::cli::print::diffpoly(self))
    }
}

impl DiffPoly {
    pub fn zero(m: usize) -> Self {
        DiffPoly { terms: BTreeMap::new(), num_indeterminates: m.max(1) }
    }

    pub fn constant(c: RatFunc, m: usize) -> Self {
        let mut p = DiffPoly::zero(m);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one(m: usize) -> Self {
        DiffPoly::constant(RatFunc::from_int(1), m)
    }

    pub fn var(v: DerivVar, m: usize) -> Self {
        DiffPoly::term(RatFunc::from_int(1), Monomial::var(v), m.max(v.indeterminate + 1))
    }

    /// `x_i^(j)` in a ring with `m` indeterminates.
    pub fn x(i: usize, j: usize, m: usize) -> Self {
        DiffPoly::var(DerivVar::new(i, j), m)
    }

    pub fn term(c: RatFunc, mono: Monomial, m: usize) -> Self {
        let mut p = DiffPoly::zero(m);
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, RatFunc)>, m: usize) -> Self {
        let mut p = DiffPoly::zero(m);
        for (mono, c) in terms {
            p.add_term(mono, c);
        }
        p
    }

    fn add_term(&mut self, mono: Monomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        for (v, _) in mono.factors() {
            self.num_indeterminates = self.num_indeterminates.max(v.indeterminate + 1);
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn num_indeterminates(&self) -> usize {
        self.num_indeterminates
    }

    /// Same polynomial viewed in a ring with at least `m` indeterminates.
    pub fn with_indeterminates(mut self, m: usize) -> Self {
        self.num_indeterminates = self.num_indeterminates.max(m);
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff the polynomial lies in the base field K.
    pub fn is_in_base_field(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_base_field(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return Some(RatFunc::from_int(0));
        }
        self.is_in_base_field().then(|| self.terms[&Monomial::one()].clone())
    }

    pub fn vars(&self) -> Vec<DerivVar> {
        let mut vs: Vec<DerivVar> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| *v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn add(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out.num_indeterminates = out.num_indeterminates.max(other.num_indeterminates);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
            num_indeterminates: self.num_indeterminates,
        }
    }

    pub fn sub(&self, other: &DiffPoly) -> DiffPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero(self.num_indeterminates.max(other.num_indeterminates));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero(self.num_indeterminates);
        }
        DiffPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
            num_indeterminates: self.num_indeterminates,
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a.clone())).collect(),
            num_indeterminates: self.num_indeterminates,
        }
    }

    pub fn pow(&self, e: u32) -> DiffPoly {
        (0..e).fold(DiffPoly::one(self.num_indeterminates), |acc, _| acc.mul(self))
    }

    /// Total derivative.
    pub fn derive(&self) -> DiffPoly {
        let mut out = DiffPoly::zero(self.num_indeterminates);
        for (mono, c) in &self.terms {
            out.add_term(mono.clone(), c.derive());
            for (idx, &(v, e)) in mono.factors().iter().enumerate() {
                let rest = mono
                    .factors()
                    .iter()
                    .enumerate()
                    .map(|(k, &(w, f))| if k == idx { (w, f - 1) } else { (w, f) });
                let new = Monomial::from_factors(rest.chain(std::iter::once((v.derive(), 1))));
                out.add_term(new, c.scale(&Rational::from_integer(e.into())));
            }
        }
        out
    }

    /// k-th total derivative.
    pub fn derive_n(&self, k: usize) -> DiffPoly {
        (0..k).fold(self.clone(), |p, _| p.derive())
    }

    /// Greatest `j` with `x_i^(j)` present; `-1` when no such variable occurs
    /// in a nonzero polynomial; `None` for the zero polynomial.
    pub fn order(&self, i: usize) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(
            self.vars()
                .iter()
                .filter(|v| v.indeterminate == i)
                .map(|v| v.order as i64)
                .max()
                .unwrap_or(-1),
        )
    }

    pub fn degree_in(&self, v: DerivVar) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    /// Coefficient of `v^e` when viewed as a polynomial in `v`.
    pub fn coeff_of(&self, v: DerivVar, e: u32) -> DiffPoly {
        DiffPoly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.degree_in(v) == e)
                .map(|(m, c)| (m.with_degree(v, 0), c.clone())),
            self.num_indeterminates,
        )
    }

    /// Partial derivative with respect to one derivative variable.
    pub fn partial(&self, v: DerivVar) -> DiffPoly {
        DiffPoly::from_terms(
            self.terms.iter().filter_map(|(m, c)| {
                let e = m.degree_in(v);
                (e > 0).then(|| (m.with_degree(v, e - 1), c.scale(&Rational::from_integer(e.into()))))
            }),
            self.num_indeterminates,
        )
    }

    fn require_order(&self, i: usize) -> Result<usize> {
        match self.order(i) {
            Some(n) if n >= 0 => Ok(n as usize),
            Some(_) => Err(Error::NotApplicable(format!(
                "polynomial has no derivative of {} (order -1)",
                DerivVar::new(i, 0).name(self.num_indeterminates)
            ))),
            None => Err(Error::NotApplicable("the zero polynomial has no order".into())),
        }
    }

    /// The highest derivative `x_i^(N)` of indeterminate `i`.
    pub fn leader(&self, i: usize) -> Result<DerivVar> {
        Ok(DerivVar::new(i, self.require_order(i)?))
    }

    pub fn leader_degree(&self, i: usize) -> Result<u32> {
        Ok(self.degree_in(self.leader(i)?))
    }

    /// Coefficient of the highest power of the leader.
    pub fn initial(&self, i: usize) -> Result<DiffPoly> {
        let v = self.leader(i)?;
        Ok(self.coeff_of(v, self.degree_in(v)))
    }

    /// `∂P/∂x_i^(N)`.
    pub fn separant(&self, i: usize) -> Result<DiffPoly> {
        Ok(self.partial(self.leader(i)?))
    }

    /// Substitutes `x_i^(j) ↦ Σ_k T[i][k]·x_k^(j)`.
    pub fn substitute_linear(&self, t: &[Vec<Rational>]) -> Result<DiffPoly> {
        let m = self.num_indeterminates;
        if t.len() != m || t.iter().any(|row| row.len() != m) {
            return Err(Error::ShapeError(format!(
                "substitution matrix must be {m}x{m} for a polynomial in {m} indeterminate(s)"
            )));
        }
        let mut images: HashMap<DerivVar, DiffPoly> = HashMap::new();
        let mut out = DiffPoly::zero(m);
        for (mono, c) in &self.terms {
            let mut acc = DiffPoly::constant(c.clone(), m);
            for &(v, e) in mono.factors() {
                let image = images.entry(v).or_insert_with(|| {
                    DiffPoly::from_terms(
                        t[v.indeterminate].iter().enumerate().map(|(k, c)| {
                            (Monomial::var(DerivVar::new(k, v.order)), RatFunc::constant(c.clone()))
                        }),
                        m,
                    )
                });
                acc = acc.mul(&image.pow(e));
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Exact evaluation at an assignment of every occurring variable.
    pub fn evaluate(&self, assignment: &HashMap<DerivVar, RatFunc>) -> Result<RatFunc> {
        let mut total = RatFunc::from_int(0);
        for (mono, c) in &self.terms {
            let mut value = c.clone();
            for &(v, e) in mono.factors() {
                let x = assignment
                    .get(&v)
                    .ok_or_else(|| Error::IncompleteAssignment(v.name(self.num_indeterminates)))?;
                value = value.mul(&x.pow(e));
            }
            total = total.add(&value);
        }
        Ok(total)
    }

    /// Cheap irreducibility evidence; see [`Irreducibility`].
    pub fn irreducibility(&self, i: usize) -> Irreducibility {
        let Ok(v) = self.leader(i) else {
            return Irreducibility::Unknown;
        };
        let Ok(init) = self.initial(i) else {
            return Irreducibility::Unknown;
        };
        if self.degree_in(v) == 1 && init.is_in_base_field() {
            return Irreducibility::Irreducible;
        }
        // one variable, constant coefficients: ordinary factorisation over ℚ
        if self.vars().len() == 1 && self.terms.values().all(RatFunc::is_constant) {
            let dense: Vec<Rational> = (0..=self.degree_in(v))
                .map(|e| {
                    self.coeff_of(v, e)
                        .as_base_field()
                        .and_then(|c| c.as_constant())
                        .unwrap_or_else(Rational::zero)
                })
                .collect();
            let poly = crate::basefield::Poly::new(dense);
            return if factor::is_irreducible(&poly) {
                Irreducibility::Irreducible
            } else {
                Irreducibility::Reducible
            };
        }
        Irreducibility::Unknown
    }
}

/// Outcome of the cheap irreducibility checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    /// No cheap check applies; irreducibility is the caller's assertion.
    Unknown,
}

impl Ring for DiffPoly {
    fn zero_el() -> Self {
        DiffPoly::zero(1)
    }
    fn one_el() -> Self {
        DiffPoly::one(1)
    }
}

impl RingOps for DiffPoly {
    fn is_zero_el(&self) -> bool {
        self.is_zero()
    }
    fn add_el(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_el(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_el(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_el(&self) -> Self {
        self.neg()
    }
}

// Free-function forms matching the operation names used elsewhere.

pub fn dp_derive(p: &DiffPoly) -> DiffPoly {
    p.derive()
}

pub fn dp_order(p: &DiffPoly, i: usize) -> Option<i64> {
    p.order(i)
}

pub fn dp_separant(p: &DiffPoly, i: usize) -> Result<DiffPoly> {
    p.separant(i)
}

pub fn dp_leader(p: &DiffPoly, i: usize) -> Result<DerivVar> {
    p.leader(i)
}

pub fn dp_initial(p: &DiffPoly, i: usize) -> Result<DiffPoly> {
    p.initial(i)
}

pub fn dp_leader_degree(p: &DiffPoly, i: usize) -> Result<u32> {
    p.leader_degree(i)
}

pub fn dp_substitute_linear(p: &DiffPoly, t: &[Vec<Rational>]) -> Result<DiffPoly> {
    p.substitute_linear(t)
}

pub fn dp_evaluate(p: &DiffPoly, assignment: &HashMap<DerivVar, RatFunc>) -> Result<RatFunc> {
    p.evaluate(assignment)
}
