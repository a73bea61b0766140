//! Dense univariate polynomials over ℚ in the variable `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Dense polynomial, coefficients by ascending degree. The zero polynomial is
/// the empty vector; otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Poly {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / Rational::from_integer((k + 1).into())),
        );
        Poly::new(coeffs)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `p(t + shift)`, by Horner's rule.
    pub fn shift(&self, shift: &Rational) -> Poly {
        let step = Poly::new(vec![shift.clone(), Rational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * &step) + &Poly::constant(c.clone()))
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    /// Quotient of a division known to be exact.
    ///
    /// Works on primitive integer parts: by Gauss's lemma the quotient of
    /// primitive polynomials is again in ℤ[t].
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        if divisor.coeffs.len() <= 1 || self.coeffs.len() < divisor.coeffs.len() {
            let (q, r) = self.div_rem(divisor);
            debug_assert!(r.is_zero(), "inexact polynomial division");
            return q;
        }
        let (ca, mut a) = self.to_primitive_integer();
        let (cb, b) = divisor.to_primitive_integer();
        let db = b.len() - 1;
        let lb = &b[db];
        let mut quot = vec![BigInt::zero(); a.len() - db];
        for k in (0..quot.len()).rev() {
            let (c, r) = a[k + db].div_rem(lb);
            debug_assert!(r.is_zero(), "inexact polynomial division");
            if c.is_zero() {
                continue;
            }
            for (i, bi) in b.iter().enumerate() {
                a[k + i] -= &c * bi;
            }
            quot[k] = c;
        }
        debug_assert!(a.iter().all(Zero::is_zero), "inexact polynomial division");
        Poly::from_bigints(&quot).scale(&(ca / cb))
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return if self.is_zero() { other.monic() } else { self.monic() };
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        // primitive remainder sequence over ℤ
        let (_, mut a) = self.to_primitive_integer();
        let (_, mut b) = other.to_primitive_integer();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive_part(int_pseudo_rem(a, &b));
            a = b;
            b = r;
        }
        Poly::from_bigints(&a).monic()
    }

    /// Returns `(g, s, u)` with `s·self + u·other = g`, `g` the monic gcd.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut u0, mut u1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let u = &u0 - &(&q * &u1);
            u0 = std::mem::replace(&mut u1, u);
        }
        if r0.is_zero() {
            return (r0, s0, u0);
        }
        let inv = r0.leading_coeff().recip();
        (r0.scale(&inv), s0.scale(&inv), u0.scale(&inv))
    }

    /// Solves `s·a + u·b = c` with `deg s < deg b`, assuming gcd(a, b) divides c.
    pub fn diophantine(a: &Poly, b: &Poly, c: &Poly) -> Option<(Poly, Poly)> {
        let (g, s, _) = a.ext_gcd(b);
        let (cg, r) = c.div_rem(&g);
        if !r.is_zero() {
            return None;
        }
        let s = (&s * &cg).rem(b);
        let u = (c - &(&s * a)).div_rem(b);
        debug_assert!(u.1.is_zero());
        Some((s, u.0))
    }

    /// Yun's squarefree decomposition: returns `[f1, f2, ...]` with
    /// `self = lc · Π fi^i`, each `fi` monic, squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<Poly> {
        if self.is_constant() {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.exact_div(&a);
        let mut c = df.exact_div(&a);
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        loop {
            let g = b.gcd(&d);
            out.push(g.clone());
            b = b.exact_div(&g);
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&g);
            d = &c - &b.derivative();
        }
        while out.last().is_some_and(|p| p.is_one()) {
            out.pop();
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.is_constant() || self.gcd(&self.derivative()).is_constant()
    }

    /// Scales to a primitive integer polynomial with positive leading
    /// coefficient. Returns `(content, integer coefficients)` such that
    /// `self = content · Σ z_k t^k`.
    pub fn to_primitive_integer(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, z| acc.gcd(z));
        if ints.last().is_some_and(|z| z.is_negative()) {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|z| z / &g).collect();
        (Rational::new(g, lcm), prim)
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Poly {
        Poly::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }
}

/// Remainder of `lc(b)^k · a` by `b` over ℤ, trimmed.
fn int_pseudo_rem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let lb = b.last().expect("nonzero divisor");
    while a.len() >= b.len() {
        let la = a.pop().expect("nonempty");
        let shift = a.len() + 1 - b.len();
        for c in a.iter_mut() {
            *c *= lb;
        }
        for (k, bk) in b[..b.len() - 1].iter().enumerate() {
            a[shift + k] -= &la * bk;
        }
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        if a.len() >= b.len() {
            a = primitive_part(a);
        }
    }
    a
}

fn primitive_part(a: Vec<BigInt>) -> Vec<BigInt> {
    let g = a.iter().fold(BigInt::zero(), |acc, z| acc.gcd(z));
    if g.is_zero() || g.is_one() {
        return a;
    }
    a.into_iter().map(|z| z / &g).collect()
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.coeffs.len() > 2 && rhs.coeffs.len() > 2 {
            // convolve primitive integer parts, rescale once
            let (ca, a) = self.to_primitive_integer();
            let (cb, b) = rhs.to_primitive_integer();
            let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            return Poly::from_bigints(&out).scale(&(ca * cb));
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
