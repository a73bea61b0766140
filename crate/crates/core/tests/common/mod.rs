//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use diffalg::basefield::{Poly, RatFunc, Rational};
use diffalg::diffpoly::{DerivVar, DiffPoly, Monomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rand_coeff<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

pub fn rand_poly<R: Rng>(rng: &mut R, max_deg: usize, bound: i64) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    Poly::from_ints(&(0..=deg).map(|_| rand_coeff(rng, bound)).collect::<Vec<_>>())
}

pub fn rand_nonzero_poly<R: Rng>(rng: &mut R, max_deg: usize, bound: i64) -> Poly {
    loop {
        let p = rand_poly(rng, max_deg, bound);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn rand_ratfunc<R: Rng>(rng: &mut R, num_deg: usize, den_deg: usize, bound: i64) -> RatFunc {
    let num = rand_poly(rng, num_deg, bound);
    let den = rand_nonzero_poly(rng, den_deg, bound);
    RatFunc::normalize(num, den).unwrap().in_rational_functions()
}

pub fn rand_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::new(rand_coeff(rng, bound).into(), rng.gen_range(1..=bound.max(1)).into())
}

/// Random differential polynomial in `m` indeterminates.
pub fn rand_diffpoly<R: Rng>(rng: &mut R, m: usize, max_order: usize, max_deg: u32, terms: usize) -> DiffPoly {
    let mut out = DiffPoly::zero(m);
    for _ in 0..rng.gen_range(1..=terms) {
        let nfactors = rng.gen_range(0..=2);
        let factors: Vec<(DerivVar, u32)> = (0..nfactors)
            .map(|_| (DerivVar::new(rng.gen_range(0..m), rng.gen_range(0..=max_order)), rng.gen_range(1..=max_deg)))
            .collect();
        let c = rand_ratfunc(rng, 1, 1, 5);
        out = out.add(&DiffPoly::term(c, Monomial::from_factors(factors), m));
    }
    out
}

/// Rank of a rational matrix by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                for j in 0..cols {
                    let v = &f * &rows[r][j];
                    rows[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    if inversions % 2 == 0 { 1 } else { -1 }
}

/// Leibniz permutation expansion.
pub fn det_rational(m: &[Vec<Rational>]) -> Rational {
    permutations(m.len())
        .iter()
        .map(|p| p.iter().enumerate().fold(q(sign(p)), |acc, (i, &j)| acc * &m[i][j]))
        .sum()
}

/// Leibniz expansion over rational functions.
pub fn det_ratfunc(m: &[Vec<RatFunc>]) -> RatFunc {
    permutations(m.len()).iter().fold(RatFunc::from_int(0).in_rational_functions(), |acc, p| {
        let term = p.iter().enumerate().fold(RatFunc::from_int(sign(p)), |t, (i, &j)| t.mul(&m[i][j]));
        acc.add(&term)
    })
}

/// Wronsky matrix built directly from repeated derivatives.
pub fn wronsky_rows(fs: &[RatFunc]) -> Vec<Vec<RatFunc>> {
    let mut rows = vec![fs.to_vec()];
    for _ in 1..fs.len() {
        let next = rows.last().unwrap().iter().map(RatFunc::derive).collect();
        rows.push(next);
    }
    rows
}

/// Coefficient vectors of polynomials, padded to a common length.
pub fn coefficient_rows(ps: &[Poly]) -> Vec<Vec<Rational>> {
    let len = ps.iter().map(|p| p.coeffs().len()).max().unwrap_or(0).max(1);
    ps.iter().map(|p| (0..len).map(|k| p.coeff(k)).collect()).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out
}

/// Rational roots by the rational root theorem.
pub fn rational_roots(p: &Poly) -> Vec<Rational> {
    let (_, ints) = p.to_primitive_integer();
    let mut shift = 0;
    while ints.get(shift).is_some_and(Zero::is_zero) {
        shift += 1;
    }
    let mut roots = if shift > 0 { vec![Rational::zero()] } else { Vec::new() };
    if shift + 1 >= ints.len() {
        return roots;
    }
    let c0 = &ints[shift];
    let lead = ints.last().unwrap();
    for a in divisors(c0) {
        for b in divisors(lead) {
            for s in [1, -1] {
                let r = Rational::new(&a * s, b.clone());
                if p.eval(&r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// For `a` whose denominator splits into distinct rational linear factors
/// and whose numerator has lower degree, the residues `(α, r)` of
/// `a = Σ r/(t − α)`; `None` otherwise.
pub fn simple_residues(a: &RatFunc) -> Option<Vec<(Rational, Rational)>> {
    let den = a.den();
    let roots = rational_roots(den);
    if roots.len() != den.degree().unwrap_or(0) || a.num().degree().is_some_and(|d| d >= den.degree().unwrap_or(0)) {
        return None;
    }
    let dd = den.derivative();
    Some(roots.into_iter().map(|r| (r.clone(), a.num().eval(&r) / dd.eval(&r))).collect())
}

/// Smallest `n ≥ 1` with `f′ = n·a·f` solvable in ℚ(t), and `f`, derived from
/// residues alone; only for `a` accepted by [`simple_residues`] or `a = 0`.
pub fn exponential_index_oracle(a: &RatFunc) -> Option<(u64, RatFunc)> {
    let residues = simple_residues(a)?;
    let n = residues.iter().fold(BigInt::one(), |acc, (_, r)| acc.lcm(r.denom()));
    let n_u64: u64 = n.to_string().parse().unwrap();
    let mut beta = RatFunc::from_int(1).in_rational_functions();
    for (alpha, r) in residues {
        let e = (r * Rational::from_integer(n.clone())).to_integer();
        let e: i64 = e.to_string().parse().unwrap();
        let lin = RatFunc::from_poly(Poly::new(vec![-alpha, Rational::one()]));
        beta = beta.mul(&lin.powi(e).unwrap());
    }
    Some((n_u64, beta))
}
