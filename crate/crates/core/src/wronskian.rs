//! Wronsky matrices and determinants, the constant-coefficient dependence
//! test with explicit certificates, and the monic linear ODE whose solution
//! space is spanned by a given fundamental system.

use num_traits::{One, Zero};

use crate::basefield::{Poly, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::ring::determinant;

/// Monic linear ODE `y^(n) + a₁·y^(n−1) + … + aₙ·y = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearODE {
    coeffs: Vec<RatFunc>,
}

impl LinearODE {
    /// `coeffs = [a₁, …, aₙ]`; the order is their number.
    pub fn new(coeffs: Vec<RatFunc>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ShapeError("a linear ODE needs order at least 1".into()));
        }
        Ok(LinearODE { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// Left-hand side evaluated at `f`: `f^(n) + Σ a_k f^(n−k)`.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let n = self.order();
        let mut derivs = vec![f.clone()];
        for _ in 0..n {
            let next = derivs.last().unwrap().derive();
            derivs.push(next);
        }
        self.coeffs
            .iter()
            .enumerate()
            .fold(derivs[n].clone(), |acc, (k, a)| acc.add(&a.mul(&derivs[n - 1 - k])))
    }
}

/// Elements with nonzero Wronskian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalSystem {
    elems: Vec<RatFunc>,
}

impl FundamentalSystem {
    pub fn new(elems: Vec<RatFunc>) -> Result<Self> {
        if wronskian(&elems)?.is_zero() {
            return Err(Error::NotFundamental);
        }
        Ok(FundamentalSystem { elems })
    }

    pub fn elems(&self) -> &[RatFunc] {
        &self.elems
    }
}

/// Derivatives `0..rows` of each element; entry `(j, i)` is `elems[i]^(j)`.
fn derivative_table(elems: &[RatFunc], rows: usize) -> Vec<Vec<RatFunc>> {
    let mut table = vec![elems.to_vec()];
    for _ in 1..rows {
        let next = table.last().unwrap().iter().map(RatFunc::derive).collect();
        table.push(next);
    }
    table
}

/// The `n × n` Wronsky matrix; row `j` holds the `j`-th derivatives.
pub fn wronsky_matrix(elems: &[RatFunc]) -> Result<Vec<Vec<RatFunc>>> {
    if elems.is_empty() {
        return Err(Error::ShapeError("the Wronsky matrix needs at least one element".into()));
    }
    Ok(derivative_table(elems, elems.len()))
}

/// Determinant of a square matrix over ℚ(t) by Bareiss elimination on the
/// polynomial matrix obtained by clearing each column's denominators.
pub fn det_fraction_free(m: &[Vec<RatFunc>]) -> RatFunc {
    let n = m.len();
    if n == 0 {
        return RatFunc::from_int(1);
    }
    let mut scale = RatFunc::from_int(1);
    let mut a: Vec<Vec<Poly>> = vec![vec![Poly::zero(); n]; n];
    for col in 0..n {
        let lcm = (0..n).fold(Poly::one(), |acc, row| {
            let d = m[row][col].den();
            let g = acc.gcd(d);
            (&acc * d).exact_div(&g)
        });
        for row in 0..n {
            let f = &m[row][col];
            a[row][col] = &f.num().clone() * &lcm.exact_div(f.den());
        }
        scale = scale.mul(&RatFunc::from_poly(lcm));
    }
    let mut sign = Rational::one();
    let mut prev = Poly::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return RatFunc::from_int(0);
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.exact_div(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = RatFunc::from_poly(a[n - 1][n - 1].scale(&sign));
    det.div(&scale).expect("column denominators are nonzero")
}

/// Writes every element over the common denominator `D` and uses
/// `W(p₁/D, …, pₙ/D) = W(p₁, …, pₙ)/Dⁿ`, so the determinant is taken over
/// polynomial entries only.
pub fn wronskian(elems: &[RatFunc]) -> Result<RatFunc> {
    if elems.is_empty() {
        return Err(Error::ShapeError("the Wronskian needs at least one element".into()));
    }
    let d = elems.iter().fold(Poly::one(), |acc, f| {
        let g = acc.gcd(f.den());
        (&acc * f.den()).exact_div(&g)
    });
    let nums: Vec<RatFunc> =
        elems.iter().map(|f| RatFunc::from_poly(f.num() * &d.exact_div(f.den()))).collect();
    let w = det_fraction_free(&wronsky_matrix(&nums)?);
    w.div(&RatFunc::from_poly(d.pow(elems.len() as u32)))
}

/// Linear dependence over the constants, decided by the Wronskian.
pub fn dependent_over_constants(elems: &[RatFunc]) -> bool {
    wronskian(elems).map_or(true, |w| w.is_zero())
}

/// Constants `c`, not all zero, with `Σ cᵢ·elemsᵢ = 0`, normalised so the
/// first nonzero entry is 1. Found by exact linear algebra over ℚ on the
/// coefficients of the elements over a common denominator; the Wronskian is
/// never consulted.
pub fn dependence_certificate(elems: &[RatFunc]) -> Option<Vec<Rational>> {
    if elems.is_empty() {
        return None;
    }
    let common = elems.iter().fold(Poly::one(), |acc, f| {
        let g = acc.gcd(f.den());
        (&acc * f.den()).exact_div(&g)
    });
    let cleared: Vec<Poly> = elems
        .iter()
        .map(|f| f.num() * &common.exact_div(f.den()))
        .collect();
    let rows = cleared.iter().filter_map(Poly::degree).max().map_or(0, |d| d + 1);
    let matrix: Vec<Vec<Rational>> = (0..rows)
        .map(|k| cleared.iter().map(|p| p.coeff(k)).collect())
        .collect();
    let kernel = kernel_vector(matrix, elems.len())?;
    Some(kernel)
}

/// A nonzero kernel vector of a `rows × cols` rational matrix, first nonzero
/// entry normalised to 1, or `None` for full column rank.
pub fn kernel_vector(mut m: Vec<Vec<Rational>>, cols: usize) -> Option<Vec<Rational>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..cols {
                    let sub = &f * &m[row][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::zero(); cols];
    v[free] = Rational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[r][free].clone();
    }
    let first = v.iter().find(|c| !c.is_zero()).cloned()?;
    Some(v.into_iter().map(|c| c / &first).collect())
}

/// `C·ū`, componentwise `Σ_j C[i][j]·u_j`.
pub fn apply_constant_matrix(elems: &[RatFunc], c: &[Vec<Rational>]) -> Result<Vec<RatFunc>> {
    let n = elems.len();
    if c.len() != n || c.iter().any(|row| row.len() != n) {
        return Err(Error::ShapeError(format!("constant matrix must be {n}x{n}")));
    }
    Ok(c.iter()
        .map(|row| {
            row.iter()
                .zip(elems)
                .fold(RatFunc::from_int(0), |acc, (cij, u)| acc.add(&u.scale(cij)))
        })
        .collect())
}

/// The monic ODE `W(y, ū)/W(ū) = 0` annihilating every element of `fs`.
///
/// Expands the `(n+1) × (n+1)` Wronskian of `(u₁, …, uₙ, y)` along the `y`
/// column; the coefficient of `y^(j)` is `(−1)^(n+j)` times the minor that
/// drops derivative row `j`, and the minor for `j = n` is `W(ū)`.
pub fn ode_from_fundamental_system(fs: &FundamentalSystem) -> Result<LinearODE> {
    let n = fs.elems.len();
    let table = derivative_table(&fs.elems, n + 1);
    let minor = |skip: usize| -> RatFunc {
        let rows: Vec<Vec<RatFunc>> = (0..=n).filter(|&j| j != skip).map(|j| table[j].clone()).collect();
        det_fraction_free(&rows)
    };
    let w = minor(n);
    if w.is_zero() {
        return Err(Error::NotFundamental);
    }
    let coeffs = (1..=n)
        .map(|k| {
            let m = minor(n - k).div(&w).expect("W is nonzero");
            if k % 2 == 1 {
                m.neg()
            } else {
                m
            }
        })
        .collect();
    LinearODE::new(coeffs)
}

/// Laplace-expansion determinant, for cross-checking the elimination route.
pub fn det_laplace(m: &[Vec<RatFunc>]) -> RatFunc {
    determinant(m)
}
