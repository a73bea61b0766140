//! Formal power-series fundamental systems at an ordinary point.
//!
//! Solutions of `y^(n) + a₁y^(n−1) + … + aₙy = 0` are built coefficient by
//! coefficient from the recurrence the equation induces, starting from
//! identity initial data `u_i^(j)(t₀) = δ_ij`. Their Wronskian then has
//! constant term 1 and is a unit of ℚ[[t − t₀]].

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::basefield::{Poly, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::ring::{determinant_in, RingOps};
use crate::wronskian::LinearODE;

/// Default truncation order.
pub const DEFAULT_PRECISION: usize = 16;

/// `Σ_{k ≤ N} c_k (t − t₀)^k + O((t − t₀)^{N+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    base_point: Rational,
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Pads or truncates `coeffs` to exactly `precision + 1` entries.
    pub fn new(base_point: Rational, mut coeffs: Vec<Rational>, precision: usize) -> Self {
        coeffs.resize(precision + 1, Rational::zero());
        TruncatedSeries { base_point, coeffs }
    }

    pub fn constant(c: Rational, base_point: Rational, precision: usize) -> Self {
        TruncatedSeries::new(base_point, vec![c], precision)
    }

    pub fn base_point(&self) -> &Rational {
        &self.base_point
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// True iff every retained coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, precision: usize) -> Self {
        TruncatedSeries::new(self.base_point.clone(), self.coeffs.clone(), precision.min(self.precision()))
    }

    fn check_base(&self, other: &Self) {
        assert_eq!(self.base_point, other.base_point, "series at different base points");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_base(other);
        let n = self.precision().min(other.precision());
        TruncatedSeries {
            base_point: self.base_point.clone(),
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            base_point: self.base_point.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_base(other);
        let n = self.precision().min(other.precision());
        let coeffs = (0..=n)
            .map(|k| (0..=k).fold(Rational::zero(), |acc, i| acc + &self.coeffs[i] * &other.coeffs[k - i]))
            .collect();
        TruncatedSeries { base_point: self.base_point.clone(), coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            base_point: self.base_point.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Term-by-term derivative; loses one order of precision.
    pub fn derive(&self) -> Result<Self> {
        if self.precision() == 0 {
            return Err(Error::ShapeError("cannot differentiate a series known only to order 0".into()));
        }
        Ok(TruncatedSeries {
            base_point: self.base_point.clone(),
            coeffs: (1..self.coeffs.len())
                .map(|k| &self.coeffs[k] * Rational::from_integer(k.into()))
                .collect(),
        })
    }

    /// Term-by-term antiderivative with constant term `c0`; gains one order.
    pub fn integrate(&self, c0: Rational) -> Self {
        let mut coeffs = vec![c0];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / Rational::from_integer((k + 1).into())),
        );
        TruncatedSeries { base_point: self.base_point.clone(), coeffs }
    }
}

impl RingOps for TruncatedSeries {
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

/// Power series of a polynomial in `s = t − t₀`.
fn shifted(p: &Poly, t0: &Rational) -> Poly {
    p.shift(t0)
}

/// Taylor expansion of `f` at `t₀` through order `precision`.
pub fn series_expand(f: &RatFunc, t0: &Rational, precision: usize) -> Result<TruncatedSeries> {
    let num = shifted(f.num(), t0);
    let den = shifted(f.den(), t0);
    let d0 = den.coeff(0);
    if d0.is_zero() {
        return Err(Error::PoleAtBasePoint(crate::cli::print::rational(t0)));
    }
    let inv = d0.recip();
    let mut out: Vec<Rational> = Vec::with_capacity(precision + 1);
    for k in 0..=precision {
        let mut c = num.coeff(k);
        for i in 1..=k {
            let di = den.coeff(i);
            if !di.is_zero() {
                c -= &di * &out[k - i];
            }
        }
        out.push(c * &inv);
    }
    Ok(TruncatedSeries::new(t0.clone(), out, precision))
}

fn falling_factorial(m: usize, k: usize) -> Rational {
    Rational::from_integer((m + 1 - k..=m).fold(BigInt::one(), |acc, v| acc * BigInt::from(v)))
}

/// `n` series solutions with identity initial data at the ordinary point `t₀`.
pub fn fundamental_system_series(
    ode: &LinearODE,
    t0: &Rational,
    precision: usize,
) -> Result<Vec<TruncatedSeries>> {
    let n = ode.order();
    if precision < n {
        return Err(Error::ShapeError(format!("precision {precision} is below the order {n}")));
    }
    let a: Vec<TruncatedSeries> = ode
        .coeffs()
        .iter()
        .map(|c| series_expand(c, t0, precision))
        .collect::<Result<_>>()?;
    Ok((0..n).map(|i| solve_with_initial_data(&a, n, i, t0, precision)).collect())
}

/// Solution with `y^(j)(t₀) = δ_ij`.
fn solve_with_initial_data(
    a: &[TruncatedSeries],
    n: usize,
    i: usize,
    t0: &Rational,
    precision: usize,
) -> TruncatedSeries {
    let mut c: Vec<Rational> = vec![Rational::zero(); precision + 1];
    // y^(j)(t₀) = j!·c_j
    c[i] = falling_factorial(i, i).recip();
    // coefficient q of y^(d) is c_{q+d}·(q+d)!/q!
    let deriv_coeff = |c: &[Rational], d: usize, q: usize| &c[q + d] * falling_factorial(q + d, d);
    for m in n..=precision {
        let r = m - n;
        let mut rhs = Rational::zero();
        for (k, ak) in a.iter().enumerate() {
            let d = n - 1 - k;
            for l in 0..=r {
                let al = ak.coeff(l);
                if !al.is_zero() {
                    rhs += al * deriv_coeff(&c, d, r - l);
                }
            }
        }
        c[m] = -rhs / falling_factorial(m, n);
    }
    TruncatedSeries::new(t0.clone(), c, precision)
}

/// Determinant of the series Wronsky matrix.
pub fn series_wronskian(series: &[TruncatedSeries]) -> Result<TruncatedSeries> {
    let Some(first) = series.first() else {
        return Err(Error::ShapeError("the Wronskian needs at least one series".into()));
    };
    if series.iter().any(|s| s.base_point != first.base_point) {
        return Err(Error::ShapeError("series are expanded at different base points".into()));
    }
    let n = series.len();
    let min_prec = series.iter().map(TruncatedSeries::precision).min().unwrap();
    if min_prec + 1 < n {
        return Err(Error::ShapeError(format!(
            "precision {min_prec} is too low for a {n}x{n} Wronskian"
        )));
    }
    let mut rows = vec![series.to_vec()];
    for _ in 1..n {
        let next = rows.last().unwrap().iter().map(|s| s.derive()).collect::<Result<Vec<_>>>()?;
        rows.push(next);
    }
    let prec = min_prec + 1 - n;
    let t0 = first.base_point.clone();
    let det = determinant_in(
        &rows,
        TruncatedSeries::constant(Rational::zero(), t0.clone(), prec),
        TruncatedSeries::constant(Rational::one(), t0, prec),
    );
    Ok(det.truncate(prec))
}

/// `y^(n) + a₁y^(n−1) + … + aₙy` for the series `y`, valid through order `N − n`.
pub fn ode_residual(ode: &LinearODE, s: &TruncatedSeries) -> Result<TruncatedSeries> {
    let n = ode.order();
    if s.precision() < n {
        return Err(Error::ShapeError(format!(
            "series precision {} is below the order {n}",
            s.precision()
        )));
    }
    let valid = s.precision() - n;
    let mut derivs = vec![s.clone()];
    for _ in 0..n {
        let next = derivs.last().unwrap().derive()?;
        derivs.push(next);
    }
    let mut acc = derivs[n].truncate(valid);
    for (k, a) in ode.coeffs().iter().enumerate() {
        let ak = series_expand(a, &s.base_point, valid)?;
        acc = acc.add(&ak.mul(&derivs[n - 1 - k]));
    }
    Ok(acc.truncate(valid))
}
