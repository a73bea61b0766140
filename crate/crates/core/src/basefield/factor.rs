//! Factorisation of univariate polynomials over ℚ.
//!
//! Squarefree parts are made primitive over ℤ and factored with the
//! Zassenhaus method: Cantor–Zassenhaus factorisation modulo a small prime,
//! linear multifactor Hensel lifting past the Mignotte bound, then
//! recombination of lifted factors by exact trial division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use super::Rational;

/// Monic irreducible factors of `f` over ℚ with multiplicities, sorted by
/// degree then coefficients. Constants have no factors.
pub fn factor(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    for (i, part) in f.squarefree_decomposition().into_iter().enumerate() {
        if part.is_constant() {
            continue;
        }
        for q in factor_squarefree(&part) {
            out.push((q, i as u32 + 1));
        }
    }
    out.sort_by_key(|(p, _)| sort_key(p));
    out
}

/// Monic irreducible factors of a squarefree polynomial.
pub fn factor_squarefree(f: &Poly) -> Vec<Poly> {
    if f.is_constant() {
        return Vec::new();
    }
    let (_, z) = f.to_primitive_integer();
    let mut out: Vec<Poly> = zassenhaus(&z)
        .iter()
        .map(|g| Poly::from_bigints(g).monic())
        .collect();
    out.sort_by_key(sort_key);
    out
}

pub fn is_irreducible(f: &Poly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => f.is_squarefree() && factor_squarefree(f).len() == 1,
    }
}

fn sort_key(p: &Poly) -> (usize, Vec<Rational>) {
    (p.degree().unwrap_or(0), p.coeffs().to_vec())
}

// ---------------------------------------------------------------------------
// arithmetic in F_p[t]; p < 2^31 so products fit in u64

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect())
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow_scalar(a, p - 2, p)
}

fn fp_pow_scalar(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn fp_div_rem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero in F_p[t]");
    let mut rem = a.clone();
    if rem.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let db = b.len() - 1;
    let inv = fp_inv(*b.last().unwrap(), p);
    let mut quot = vec![0u64; rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db] * inv % p;
        if c == 0 {
            continue;
        }
        quot[k] = c;
        for (i, &d) in b.iter().enumerate() {
            rem[k + i] = (rem[k + i] + p - c * d % p) % p;
        }
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

fn fp_rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    fp_div_rem(a, b, p).1
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = fp_inv(lc, p);
            a.iter().map(|&c| c * inv % p).collect()
        }
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

/// Inverse of `a` modulo `m` in F_p[t]; requires gcd(a, m) = 1.
fn fp_inv_mod(a: &Fp, m: &Fp, p: u64) -> Fp {
    let (mut r0, mut r1) = (m.clone(), fp_rem(a, m, p));
    let (mut s0, mut s1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_div_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
    }
    assert_eq!(r0.len(), 1, "not invertible modulo");
    let inv = fp_inv(r0[0], p);
    fp_rem(&s0.iter().map(|&c| c * inv % p).collect(), m, p)
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(k, &c)| (k as u64 % p) * c % p).collect())
}

fn fp_powmod(base: &Fp, exp: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let base = fp_rem(base, m, p);
    for i in (0..exp.bits()).rev() {
        acc = fp_rem(&fp_mul(&acc, &acc, p), m, p);
        if exp.bit(i) {
            acc = fp_rem(&fp_mul(&acc, &base, p), m, p);
        }
    }
    acc
}

fn reduce_mod_p(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

/// Distinct-degree factorisation of a monic squarefree polynomial.
fn distinct_degree(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    let pb = BigUint::from(p);
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
            break;
        }
        h = fp_powmod(&h, &pb, &f, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = fp_div_rem(&f, &g, p).0;
            h = fp_rem(&h, &f, p);
            out.push((g, d));
        }
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting (p odd).
fn equal_degree(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    let exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() <= 1 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, &exp, f, p), &vec![1], p);
        let g = fp_gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = fp_div_rem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&fp_monic(&h, p), d, p, rng));
            return out;
        }
    }
}

fn factor_mod_p(f: &Fp, p: u64) -> Vec<Fp> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let f = fp_monic(f, p);
    distinct_degree(&f, p)
        .into_iter()
        .flat_map(|(g, d)| equal_degree(&g, d, p, &mut rng))
        .collect()
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

// ---------------------------------------------------------------------------
// lifting and recombination over ℤ

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn zpoly_mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.iter().map(|c| c.mod_floor(m)).collect()
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lifts `f ≡ lc · Π g_i (mod p)` to monic factors modulo `p^k`.
fn hensel_lift(f: &[BigInt], factors: &[Fp], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let pb = BigInt::from(p);
    let modulus = pb.pow(k);
    let lc_inv = modinv(f.last().unwrap(), &modulus);
    let target: Vec<BigInt> = f.iter().map(|c| (c * &lc_inv).mod_floor(&modulus)).collect();

    // Bezout-type coefficients: Σ s_i · Π_{l≠i} g_l ≡ 1 (mod p)
    let cofactors: Vec<Fp> = (0..factors.len())
        .map(|i| {
            let others = factors
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != i)
                .fold(vec![1u64], |acc, (_, g)| fp_mul(&acc, g, p));
            fp_inv_mod(&others, &factors[i], p)
        })
        .collect();

    let mut lifted: Vec<Vec<BigInt>> = factors
        .iter()
        .map(|g| g.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let prod = lifted.iter().fold(vec![BigInt::one()], |acc, g| zpoly_mul_mod(&acc, g, &next));
        let n = target.len();
        let err: Fp = trim(
            (0..n)
                .map(|i| {
                    let t = &target[i] - prod.get(i).cloned().unwrap_or_else(BigInt::zero);
                    let t = t.mod_floor(&next);
                    debug_assert!((&t % &pj).is_zero());
                    (t / &pj).mod_floor(&pb).to_u64().unwrap()
                })
                .collect(),
        );
        if !err.is_empty() {
            for (i, g) in lifted.iter_mut().enumerate() {
                let delta = fp_rem(&fp_mul(&err, &cofactors[i], p), &factors[i], p);
                for (j, &d) in delta.iter().enumerate() {
                    g[j] += &pj * BigInt::from(d);
                }
            }
        }
        pj = next;
    }
    lifted
}

fn zpoly_divides(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    let (q, r) = Poly::from_bigints(num).div_rem(&Poly::from_bigints(den));
    if !r.is_zero() || !q.coeffs().iter().all(|c| c.is_integer()) {
        return None;
    }
    Some(q.coeffs().iter().map(|c| c.to_integer()).collect())
}

fn primitive_part(f: &[BigInt]) -> Vec<BigInt> {
    let mut g = f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if f.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    f.iter().map(|c| c / &g).collect()
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors over ℤ of a primitive squarefree polynomial with
/// positive leading coefficient.
fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();

    // a few admissible primes; keep the one with the fewest modular factors
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce_mod_p(f, p);
        if fp.len() != n + 1 || fp_gcd(&fp, &fp_derivative(&fp, p), p).len() != 1 {
            continue;
        }
        let facs = factor_mod_p(&fp, p);
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (p, modular) = best.expect("an admissible prime always exists");

    // Mignotte-style bound on coefficients of any factor, times lc
    let max_coeff = f.iter().map(|c| c.abs()).max().unwrap();
    let norm_bound = (BigInt::from(n + 1).sqrt() + 1) * max_coeff;
    let bound = (BigInt::one() << n) * norm_bound * lc.abs();
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= &bound * 2 {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &modular, p, k);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        for subset in subsets(remaining.len(), size) {
            let b = rest.last().unwrap().clone();
            let candidate = subset
                .iter()
                .fold(vec![b], |acc, &i| zpoly_mul_mod(&acc, &lifted[remaining[i]], &pk));
            let candidate: Vec<BigInt> = candidate.iter().map(|c| sym_mod(c, &pk)).collect();
            let candidate = primitive_part(&trim_big(candidate));
            if candidate.len() < 2 {
                continue;
            }
            if let Some(q) = zpoly_divides(&rest, &candidate) {
                out.push(candidate);
                rest = q;
                let chosen: Vec<usize> = subset.iter().map(|&i| remaining[i]).collect();
                remaining.retain(|i| !chosen.contains(i));
                continue 'outer;
            }
        }
        size += 1;
    }
    out.push(primitive_part(&rest));
    out
}

fn trim_big(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}
