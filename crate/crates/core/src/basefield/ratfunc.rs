//! Elements of the differential fields ℚ (zero derivation) and ℚ(t) (d/dt).

use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::Rational;
use crate::error::{Error, Result};
use crate::ring::{Ring, RingOps};

/// Which base field an element was built in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldTag {
    ConstantsOnly,
    RationalFunctions,
}

impl FieldTag {
    fn join(self, other: FieldTag) -> FieldTag {
        if self == FieldTag::ConstantsOnly && other == FieldTag::ConstantsOnly {
            FieldTag::ConstantsOnly
        } else {
            FieldTag::RationalFunctions
        }
    }
}

/// Canonical fraction `num/den`: coprime, `den` monic.
///
/// Equality and hashing compare the value only; the field tag records where
/// the element was built and is promoted to `RationalFunctions` on mixing.
#[derive(Clone)]
pub struct RatFunc {
    tag: FieldTag,
    num: Poly,
    den: Poly,
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for RatFunc {}

impl Hash for RatFunc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({:?} / {:?})", self.num, self.den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::cli::print::ratfunc(self))
    }
}

impl RatFunc {
    /// Builds the canonical form of `num/den` in ℚ(t).
    pub fn normalize(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_tagged(FieldTag::RationalFunctions, num, den))
    }

    /// Canonical form of `num/den` already known to be coprime.
    fn from_coprime(tag: FieldTag, num: Poly, den: Poly) -> RatFunc {
        if num.is_zero() {
            return RatFunc { tag, num, den: Poly::one() };
        }
        let lc = den.leading_coeff().recip();
        RatFunc { tag, num: num.scale(&lc), den: den.scale(&lc) }
    }

    fn normalize_tagged(tag: FieldTag, num: Poly, den: Poly) -> RatFunc {
        if num.is_zero() {
            return RatFunc { tag, num, den: Poly::one() };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g), den.exact_div(&g))
            }
        };
        let lc = den.leading_coeff().recip();
        RatFunc { tag, num: num.scale(&lc), den: den.scale(&lc) }
    }

    /// An element of the constant field ℚ.
    pub fn constant(c: Rational) -> RatFunc {
        RatFunc { tag: FieldTag::ConstantsOnly, num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_int(c: i64) -> RatFunc {
        RatFunc::constant(Rational::from_integer(c.into()))
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc { tag: FieldTag::RationalFunctions, num: p, den: Poly::one() }
    }

    /// The generator `t` of ℚ(t).
    pub fn t() -> RatFunc {
        RatFunc::from_poly(Poly::t())
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    /// Same value, retagged as an element of ℚ(t).
    pub fn in_rational_functions(mut self) -> RatFunc {
        self.tag = FieldTag::RationalFunctions;
        self
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True iff the value lies in ℚ.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The rational value, when constant.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        let tag = self.tag.join(o.tag);
        if self.den == o.den {
            return Self::normalize_tagged(tag, &self.num + &o.num, self.den.clone());
        }
        // with g = gcd(b, d): a/b + c/d = (a·d/g + c·b/g) / (b·d/g), and
        // only factors of g can cancel
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            let num = &(&self.num * &o.den) + &(&o.num * &self.den);
            return Self::from_coprime(tag, num, &self.den * &o.den);
        }
        let (b, d) = (self.den.exact_div(&g), o.den.exact_div(&g));
        let num = &(&self.num * &d) + &(&o.num * &b);
        let h = num.gcd(&g);
        let den = &b * &o.den;
        if h.is_one() {
            return Self::from_coprime(tag, num, den);
        }
        Self::from_coprime(tag, num.exact_div(&h), den.exact_div(&h))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { tag: self.tag, num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        let tag = self.tag.join(o.tag);
        if self.is_zero() || o.is_zero() {
            return RatFunc { tag, num: Poly::zero(), den: Poly::one() };
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { tag, num: &self.num * &o.num, den: Poly::one() };
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1) * &o.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &o.den.exact_div(&g1);
        let lc = den.leading_coeff().recip();
        RatFunc { tag, num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc { tag: self.tag, num: Poly::zero(), den: Poly::one() };
        }
        RatFunc { tag: self.tag, num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_tagged(self.tag, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc { tag: self.tag, num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<RatFunc> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        Ok(base.pow(e.unsigned_abs() as u32))
    }

    /// The derivation: zero on ℚ, d/dt on ℚ(t), by the quotient rule.
    pub fn derive(&self) -> RatFunc {
        if self.is_constant() {
            return RatFunc { tag: self.tag, num: Poly::zero(), den: Poly::one() };
        }
        if self.den.is_one() {
            return RatFunc { tag: self.tag, num: self.num.derivative(), den: Poly::one() };
        }
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::normalize_tagged(self.tag, num, self.den.pow(2))
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Splits into polynomial part and proper remainder: `self = q + r/den`.
    pub fn polynomial_part(&self) -> (Poly, Poly) {
        self.num.div_rem(&self.den)
    }
}

/// Free-function form of the derivation.
pub fn rf_derive(f: &RatFunc) -> RatFunc {
    f.derive()
}

/// Canonical form of `num/den`.
pub fn rf_normalize(num: Poly, den: Poly) -> Result<RatFunc> {
    RatFunc::normalize(num, den)
}

impl Ring for RatFunc {
    fn zero_el() -> Self {
        RatFunc::constant(Rational::zero())
    }
    fn one_el() -> Self {
        RatFunc::constant(Rational::one())
    }
}

impl RingOps for RatFunc {
    fn is_zero_el(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add_el(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub_el(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul_el(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn neg_el(&self) -> Self {
        RatFunc::neg(self)
    }
}

impl Ring for Rational {
    fn zero_el() -> Self {
        Zero::zero()
    }
    fn one_el() -> Self {
        One::one()
    }
}

impl RingOps for Rational {
    fn is_zero_el(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_el(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_el(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_el(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_el(&self) -> Self {
        -self
    }
}
