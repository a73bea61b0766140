//! Ritt pseudo-reduction with respect to a single differential polynomial.
//!
//! Every proper derivative `∂^k P` (k ≥ 1) is linear in its leader
//! `x^(N+k)` with coefficient the separant `S_P`, so derivatives above the
//! order of `P` are eliminated by pseudo-division by `∂^k P` with multiplier
//! `S_P`. What is left is pseudo-divided by `P` itself in its leader using
//! the initial `I_P`. The result satisfies
//!
//! `S_P^s · I_P^m · Q = Σ_k c_k · ∂^k P + R`
//!
//! with `R` reduced with respect to `P`.

use std::collections::BTreeMap;

use super::{DerivVar, DiffPoly, Monomial};
use crate::error::Result;

/// Remainder of a Ritt reduction together with its membership certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub remainder: DiffPoly,
    /// Power of the separant multiplied into `Q`.
    pub sep_power: u32,
    /// Power of the initial multiplied into `Q`.
    pub init_power: u32,
    /// `(k, c_k)` pairs, ascending in `k`, zero cofactors omitted.
    pub certificate: Vec<(usize, DiffPoly)>,
}

impl ReductionResult {
    /// Expands `S^s·I^m·Q − Σ c_k·∂^k P`; equals the remainder for a valid
    /// certificate.
    pub fn expand(&self, q: &DiffPoly, p: &DiffPoly, i: usize) -> Result<DiffPoly> {
        let s = p.separant(i)?;
        let init = p.initial(i)?;
        let mut lhs = s.pow(self.sep_power).mul(&init.pow(self.init_power)).mul(q);
        for (k, c) in &self.certificate {
            lhs = lhs.sub(&c.mul(&p.derive_n(*k)));
        }
        Ok(lhs)
    }

    /// Checks the certificate identity exactly.
    pub fn verify(&self, q: &DiffPoly, p: &DiffPoly, i: usize) -> Result<bool> {
        Ok(self.expand(q, p, i)? == self.remainder)
    }
}

/// True iff `r` contains no derivative of `x_i` above the order `N` of `p`
/// and has degree in `x_i^(N)` below the leader degree of `p`.
pub fn is_reduced(r: &DiffPoly, p: &DiffPoly, i: usize) -> Result<bool> {
    let leader = p.leader(i)?;
    let d = p.degree_in(leader);
    let order_ok = r.order(i).is_none_or(|o| o <= leader.order as i64);
    Ok(order_ok && r.degree_in(leader) < d)
}

struct Certificate {
    cofactors: BTreeMap<usize, DiffPoly>,
}

impl Certificate {
    fn scale_all(&mut self, by: &DiffPoly) {
        for c in self.cofactors.values_mut() {
            *c = c.mul(by);
        }
    }

    fn add(&mut self, k: usize, c: DiffPoly) {
        let entry = self.cofactors.entry(k).or_insert_with(|| DiffPoly::zero(c.num_indeterminates()));
        *entry = entry.add(&c);
    }

    fn finish(self) -> Vec<(usize, DiffPoly)> {
        self.cofactors.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// One pseudo-division step eliminating the top power of `v` from `q` using
/// `divisor`, whose top power in `v` is `v^d` with coefficient `lead`.
///
/// Returns the new `q`, the certificate contribution, and whether `q` was
/// multiplied by `lead` (false when `lead` is a unit of K).
fn eliminate_top(
    q: &DiffPoly,
    v: DerivVar,
    divisor: &DiffPoly,
    lead: &DiffPoly,
    d: u32,
) -> (DiffPoly, DiffPoly, bool) {
    let e = q.degree_in(v);
    let top = q.coeff_of(v, e);
    let shift = Monomial::from_factors([(v, e - d)]);
    if let Some(unit) = lead.as_base_field() {
        let factor = top
            .scale(&unit.recip().expect("leading coefficient is nonzero"))
            .mul_monomial(&shift);
        (q.sub(&factor.mul(divisor)), factor, false)
    } else {
        let factor = top.mul_monomial(&shift);
        (lead.mul(q).sub(&factor.mul(divisor)), factor, true)
    }
}

/// Ritt-reduces `q` with respect to `p` in indeterminate `i`.
pub fn ritt_reduce(q: &DiffPoly, p: &DiffPoly, i: usize) -> Result<ReductionResult> {
    let leader = p.leader(i)?;
    let n = leader.order;
    let separant = p.separant(i)?;
    let initial = p.initial(i)?;
    let d = p.degree_in(leader);

    let mut cert = Certificate { cofactors: BTreeMap::new() };
    let mut rem = q.clone().with_indeterminates(p.num_indeterminates());
    let (mut s, mut m) = (0u32, 0u32);
    let mut derivatives: Vec<DiffPoly> = vec![p.clone()];

    // proper derivatives first: each ∂^k P is linear in x^(N+k) with coefficient S_P
    while let Some(order) = rem.order(i).filter(|&o| o > n as i64) {
        let k = order as usize - n;
        while derivatives.len() <= k {
            let next = derivatives.last().unwrap().derive();
            derivatives.push(next);
        }
        let w = DerivVar::new(i, order as usize);
        let (next, factor, scaled) = eliminate_top(&rem, w, &derivatives[k], &separant, 1);
        if scaled {
            cert.scale_all(&separant);
            s += 1;
        }
        cert.add(k, factor);
        rem = next;
    }

    // then P itself, in its leader
    while !rem.is_zero() && rem.degree_in(leader) >= d {
        let (next, factor, scaled) = eliminate_top(&rem, leader, p, &initial, d);
        if scaled {
            cert.scale_all(&initial);
            m += 1;
        }
        cert.add(0, factor);
        rem = next;
    }

    Ok(ReductionResult { remainder: rem, sep_power: s, init_power: m, certificate: cert.finish() })
}

/// Membership of `q` in the general-solution ideal I(P).
///
/// `p` must be irreducible; this is the caller's assertion (see
/// [`DiffPoly::irreducibility`] for the cheap checks available).
pub fn in_general_ideal(q: &DiffPoly, p: &DiffPoly, i: usize) -> Result<bool> {
    Ok(ritt_reduce(q, p, i)?.remainder.is_zero())
}
