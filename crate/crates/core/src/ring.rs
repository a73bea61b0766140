//! A minimal commutative-ring interface and the division-free determinant
//! shared by the Wronskian, series and matrix-group code.

use std::collections::HashMap;

/// Commutative ring operations. Types whose identities depend on runtime
/// data (such as truncated series) implement only this.
pub trait RingOps: Clone {
    fn is_zero_el(&self) -> bool;
    fn add_el(&self, other: &Self) -> Self;
    fn sub_el(&self, other: &Self) -> Self;
    fn mul_el(&self, other: &Self) -> Self;

    fn neg_el(&self) -> Self;
}

/// Commutative ring with statically known identities.
pub trait Ring: RingOps {
    fn zero_el() -> Self;
    fn one_el() -> Self;
}

/// Determinant of a square matrix by Laplace expansion over row subsets,
/// memoised on the set of rows already used. Division-free, so it works in
/// any commutative ring; cost is O(2^n · n) ring products.
///
/// Panics if `rows` is not square. The determinant of the empty matrix is 1.
pub fn determinant<R: Ring>(rows: &[Vec<R>]) -> R {
    determinant_in(rows, R::zero_el(), R::one_el())
}

/// [`determinant`] with explicitly supplied identities.
pub fn determinant_in<R: RingOps>(rows: &[Vec<R>], zero: R, one: R) -> R {
    let n = rows.len();
    for r in rows {
        assert_eq!(r.len(), n, "determinant of a non-square matrix");
    }
    if n == 0 {
        return one;
    }
    // Expand column by column; `mask` holds the rows consumed by the columns
    // to the left. minors[mask] = det of rows(mask) x columns 0..popcount(mask).
    let mut minors: HashMap<u32, R> = HashMap::new();
    minors.insert(0, one);
    for col in 0..n {
        let mut next: HashMap<u32, R> = HashMap::new();
        for (&mask, minor) in &minors {
            if minor.is_zero_el() {
                continue;
            }
            for row in 0..n {
                if mask & (1 << row) != 0 {
                    continue;
                }
                let entry = &rows[row][col];
                if entry.is_zero_el() {
                    continue;
                }
                // new inversions: earlier columns that picked a larger row
                let below = (mask & ((1u32 << row) - 1)).count_ones() as usize;
                let term = minor.mul_el(entry);
                let term = if (col - below) % 2 == 1 {
                    term.neg_el()
                } else {
                    term
                };
                let slot = next.entry(mask | (1 << row)).or_insert_with(|| zero.clone());
                *slot = slot.add_el(&term);
            }
        }
        minors = next;
    }
    minors.remove(&((1u32 << n) - 1)).unwrap_or(zero)
}

/// Matrix product over any ring.
pub fn mat_mul<R: Ring>(a: &[Vec<R>], b: &[Vec<R>]) -> Vec<Vec<R>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(R::zero_el(), |acc, k| acc.add_el(&row[k].mul_el(&b[k][j])))
                })
                .collect()
        })
        .collect()
}
