//! Algebraic matrix groups over the constants ℚ.
//!
//! A group is given by a defining set `S` of polynomials in the `n²` entries:
//! its members are the invertible matrices at which every polynomial of `S`
//! vanishes. Five catalog groups cover every group produced by the Galois
//! classification; for these the identity-component dimension is known in
//! closed form.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::basefield::{Poly, RatFunc, Rational};
use crate::diffpoly::{DerivVar, DiffPoly};
use crate::error::{Error, Result};
use crate::galois::GaloisDescriptor;
use crate::par::{self, Exec};
use crate::ring::{determinant, Ring, RingOps};

/// Square matrix of rational constants.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConstMatrix {
    entries: Vec<Vec<Rational>>,
}

impl fmt::Debug for ConstMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl ConstMatrix {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeError("matrix must be square and nonempty".into()));
        }
        Ok(ConstMatrix { entries })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        ConstMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&c| Rational::from_integer(c.into())).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        ConstMatrix {
            entries: (0..n)
                .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    /// Row-major entries, the variable order of defining polynomials.
    pub fn flat(&self) -> Vec<Rational> {
        self.entries.iter().flatten().cloned().collect()
    }

    pub fn mul(&self, other: &ConstMatrix) -> ConstMatrix {
        ConstMatrix { entries: crate::ring::mat_mul(&self.entries, &other.entries) }
    }

    /// Gauss–Jordan; `None` when singular. Also yields the determinant.
    fn eliminate(&self) -> (Rational, Option<ConstMatrix>) {
        let n = self.n();
        let mut a = self.entries.clone();
        let mut inv = ConstMatrix::identity(n).entries;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return (Rational::zero(), None);
            };
            if p != col {
                a.swap(p, col);
                inv.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det *= &pivot;
            let pinv = pivot.recip();
            for j in 0..n {
                a[col][j] *= &pinv;
                inv[col][j] *= &pinv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        let (x, y) = (&f * &a[col][j], &f * &inv[col][j]);
                        a[r][j] -= x;
                        inv[r][j] -= y;
                    }
                }
            }
        }
        (det, Some(ConstMatrix { entries: inv }))
    }

    pub fn det(&self) -> Rational {
        self.eliminate().0
    }

    pub fn inverse(&self) -> Option<ConstMatrix> {
        self.eliminate().1
    }

    pub fn render(&self) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(crate::cli::print::rational).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// Sparse polynomial over ℚ in the matrix entries `x_k`, `k = i·n + j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MatPoly {
    terms: BTreeMap<Vec<(usize, u32)>, Rational>,
}

impl MatPoly {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MatPoly { terms }
    }

    /// The entry variable `x_k`.
    pub fn var(k: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(k, 1)], Rational::one());
        MatPoly { terms }
    }

    /// Entry `(i, j)` of an `n × n` matrix.
    pub fn entry(n: usize, i: usize, j: usize) -> Self {
        MatPoly::var(i * n + j)
    }

    fn insert(&mut self, mono: Vec<(usize, u32)>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn pow(&self, e: u32) -> MatPoly {
        (0..e).fold(MatPoly::constant(Rational::one()), |acc, _| acc.mul_el(self))
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (mono, c)| {
            let v = mono.iter().fold(c.clone(), |v, &(k, e)| v * num_traits::pow(values[k].clone(), e as usize));
            acc + v
        })
    }

    /// Largest variable index used, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().flat_map(|m| m.iter().map(|(k, _)| *k)).max()
    }
}

impl RingOps for MatPoly {
    fn is_zero_el(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_el(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }
    fn sub_el(&self, o: &Self) -> Self {
        self.add_el(&o.neg_el())
    }
    fn mul_el(&self, o: &Self) -> Self {
        let mut out = MatPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let mut merged: BTreeMap<usize, u32> = ma.iter().copied().collect();
                for &(k, e) in mb {
                    *merged.entry(k).or_insert(0) += e;
                }
                out.insert(merged.into_iter().collect(), ca * cb);
            }
        }
        out
    }
    fn neg_el(&self) -> Self {
        MatPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Ring for MatPoly {
    fn zero_el() -> Self {
        MatPoly::default()
    }
    fn one_el() -> Self {
        MatPoly::constant(Rational::one())
    }
}

/// Catalog tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupLabel {
    GeneralLinear,
    SpecialLinear,
    /// `[[1, c], [0, 1]]`, the additive group acting on `(u, 1)`.
    UnipotentGa,
    /// `1 × 1` invertible scalars.
    DiagonalGm,
    /// `1 × 1` scalars with `x^k = 1`.
    RootsOfUnity(u64),
}

impl GroupLabel {
    pub fn name(&self) -> String {
        match self {
            GroupLabel::GeneralLinear => "GL".into(),
            GroupLabel::SpecialLinear => "SL".into(),
            GroupLabel::UnipotentGa => "Ga".into(),
            GroupLabel::DiagonalGm => "Gm".into(),
            GroupLabel::RootsOfUnity(k) => format!("mu{k}"),
        }
    }

    /// Inverse of [`GroupLabel::name`].
    pub fn parse(text: &str) -> Option<GroupLabel> {
        match text {
            "GL" => Some(GroupLabel::GeneralLinear),
            "SL" => Some(GroupLabel::SpecialLinear),
            "Ga" => Some(GroupLabel::UnipotentGa),
            "Gm" => Some(GroupLabel::DiagonalGm),
            _ => text
                .strip_prefix("mu")
                .and_then(|k| k.parse().ok())
                .filter(|&k| k >= 1)
                .map(GroupLabel::RootsOfUnity),
        }
    }
}

/// Invertible `n × n` matrices annihilating `defining_set`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicMatrixGroup {
    n: usize,
    defining_set: Vec<MatPoly>,
    label: Option<GroupLabel>,
}

impl AlgebraicMatrixGroup {
    /// An ad-hoc group from an explicit defining set.
    pub fn from_equations(n: usize, defining_set: Vec<MatPoly>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ShapeError("group size must be positive".into()));
        }
        if defining_set.iter().filter_map(MatPoly::max_var).any(|k| k >= n * n) {
            return Err(Error::ShapeError(format!("defining polynomial uses more than {} entries", n * n)));
        }
        Ok(AlgebraicMatrixGroup { n, defining_set, label: None })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn defining_set(&self) -> &[MatPoly] {
        &self.defining_set
    }

    pub fn label(&self) -> Option<GroupLabel> {
        self.label
    }
}

pub fn group_contains(g: &AlgebraicMatrixGroup, m: &ConstMatrix) -> Result<bool> {
    if m.n() != g.n {
        return Err(Error::ShapeError(format!("expected a {0}x{0} matrix, got {1}x{1}", g.n, m.n())));
    }
    if m.det().is_zero() {
        return Ok(false);
    }
    let values = m.flat();
    Ok(g.defining_set.iter().all(|p| p.eval(&values).is_zero()))
}

pub fn catalog_group(label: GroupLabel, n: usize) -> Result<AlgebraicMatrixGroup> {
    let x = |i, j| MatPoly::entry(n, i, j);
    let one = MatPoly::constant(Rational::one());
    let defining_set = match (label, n) {
        (_, 0) => return Err(Error::NotInCatalog("group size must be positive".into())),
        (GroupLabel::GeneralLinear, _) => Vec::new(),
        (GroupLabel::SpecialLinear, _) => {
            let rows: Vec<Vec<MatPoly>> = (0..n).map(|i| (0..n).map(|j| x(i, j)).collect()).collect();
            vec![determinant(&rows).sub_el(&one)]
        }
        (GroupLabel::UnipotentGa, 2) => vec![x(0, 0).sub_el(&one), x(1, 1).sub_el(&one), x(1, 0)],
        (GroupLabel::DiagonalGm, 1) => Vec::new(),
        (GroupLabel::RootsOfUnity(k), 1) if k >= 1 => vec![x(0, 0).pow(k as u32).sub_el(&one)],
        (label, n) => {
            return Err(Error::NotInCatalog(format!("{} is not defined for n = {n}", label.name())))
        }
    };
    Ok(AlgebraicMatrixGroup { n, defining_set, label: Some(label) })
}

/// Checks that all pairwise products and all inverses of `samples` are
/// members. Fails with `NonMemberSample(i)` if sample `i` is not a member.
pub fn group_closure_sample_check(g: &AlgebraicMatrixGroup, samples: &[ConstMatrix]) -> Result<bool> {
    group_closure_sample_check_with(Exec::Parallel, g, samples)
}

pub fn group_closure_sample_check_with(
    exec: Exec,
    g: &AlgebraicMatrixGroup,
    samples: &[ConstMatrix],
) -> Result<bool> {
    for (i, s) in samples.iter().enumerate() {
        if !group_contains(g, s)? {
            return Err(Error::NonMemberSample(i));
        }
    }
    let k = samples.len();
    let inverses_ok = par::all_range(exec, k, |i| {
        samples[i].inverse().is_some_and(|inv| group_contains(g, &inv).unwrap_or(false))
    });
    Ok(inverses_ok
        && par::all_range(exec, k * k, |idx| {
            let prod = samples[idx / k].mul(&samples[idx % k]);
            group_contains(g, &prod).unwrap_or(false)
        }))
}

pub fn identity_component_dimension(g: &AlgebraicMatrixGroup) -> Result<usize> {
    match g.label {
        Some(GroupLabel::GeneralLinear) => Ok(g.n * g.n),
        Some(GroupLabel::SpecialLinear) => Ok(g.n * g.n - 1),
        Some(GroupLabel::UnipotentGa) | Some(GroupLabel::DiagonalGm) => Ok(1),
        Some(GroupLabel::RootsOfUnity(_)) => Ok(0),
        None => Err(Error::NotInCatalog("dimension is only known for catalog groups".into())),
    }
}

pub fn descriptor_to_matrix_group(d: &GaloisDescriptor) -> AlgebraicMatrixGroup {
    let (label, n) = match d {
        GaloisDescriptor::Trivial { .. } => (GroupLabel::RootsOfUnity(1), 1),
        GaloisDescriptor::AdditiveGroup => (GroupLabel::UnipotentGa, 2),
        GaloisDescriptor::MultiplicativeGroup => (GroupLabel::DiagonalGm, 1),
        GaloisDescriptor::CyclicOfOrder { n, .. } => (GroupLabel::RootsOfUnity(*n), 1),
        GaloisDescriptor::FullGeneralLinear { n } => (GroupLabel::GeneralLinear, *n),
    };
    catalog_group(label, n).expect("descriptor maps into the catalog")
}

fn small_rational<R: Rng>(rng: &mut R, nonzero: bool) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=4);
        if !nonzero || num != 0 {
            return Rational::new(num.into(), den.into());
        }
    }
}

/// A random invertible matrix with small rational entries.
pub fn random_invertible<R: Rng>(n: usize, rng: &mut R) -> ConstMatrix {
    loop {
        let m = ConstMatrix {
            entries: (0..n).map(|_| (0..n).map(|_| small_rational(rng, false)).collect()).collect(),
        };
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// A random member of a catalog group.
pub fn random_member<R: Rng>(g: &AlgebraicMatrixGroup, rng: &mut R) -> Result<ConstMatrix> {
    let n = g.n;
    let scalar = |c: Rational| ConstMatrix { entries: vec![vec![c]] };
    Ok(match g.label {
        Some(GroupLabel::GeneralLinear) => random_invertible(n, rng),
        Some(GroupLabel::SpecialLinear) => {
            // product of transvections
            let mut m = ConstMatrix::identity(n);
            if n > 1 {
                for _ in 0..2 * n {
                    let i = rng.gen_range(0..n);
                    let j = (i + rng.gen_range(1..n)) % n;
                    let mut e = ConstMatrix::identity(n);
                    e.entries[i][j] = small_rational(rng, true);
                    m = m.mul(&e);
                }
            }
            m
        }
        Some(GroupLabel::UnipotentGa) => {
            let mut m = ConstMatrix::identity(2);
            m.entries[0][1] = small_rational(rng, false);
            m
        }
        Some(GroupLabel::DiagonalGm) => scalar(small_rational(rng, true)),
        Some(GroupLabel::RootsOfUnity(k)) => {
            // the rational k-th roots of unity are 1, and -1 for even k
            if k % 2 == 0 && rng.gen_bool(0.5) {
                scalar(-Rational::one())
            } else {
                scalar(Rational::one())
            }
        }
        None => return Err(Error::NotInCatalog("sampling needs a catalog group".into())),
    })
}

/// The `n + 1` maximal minors of the `(n+1) × n` matrix `(x_i^(j))`; minor
/// `j` omits derivative row `j`, and minor `n` is `W(x₁, …, xₙ)`.
pub fn wronskian_minors(n: usize) -> Vec<DiffPoly> {
    let table: Vec<Vec<DiffPoly>> = (0..=n).map(|j| (0..n).map(|i| DiffPoly::x(i, j, n)).collect()).collect();
    (0..=n)
        .map(|skip| {
            let rows: Vec<Vec<DiffPoly>> =
                (0..=n).filter(|&j| j != skip).map(|j| table[j].clone()).collect();
            determinant(&rows).with_indeterminates(n)
        })
        .collect()
}

/// A seeded point for `x₁, …, xₙ`: random rational functions of `t` with
/// derivatives through order `n` filled in consistently.
pub fn random_generic_point<R: Rng>(n: usize, rng: &mut R) -> HashMap<DerivVar, RatFunc> {
    let mut point = HashMap::new();
    for i in 0..n {
        let deg = rng.gen_range(1..=n + 2);
        let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-5..=5)).collect();
        if coeffs[deg] == 0 {
            coeffs[deg] = 1;
        }
        let mut f = RatFunc::from_poly(Poly::from_ints(&coeffs));
        if rng.gen_bool(0.5) {
            let shift: i64 = rng.gen_range(-3..=3);
            f = f.div(&RatFunc::from_poly(Poly::from_ints(&[shift, 1]))).expect("nonzero");
        }
        for j in 0..=n {
            point.insert(DerivVar::new(i, j), f.clone());
            f = f.derive();
        }
    }
    point
}

/// Invariance of the coefficients of `W(y, x̄)/W(x̄)` under `x̄ ↦ T·x̄`,
/// checked exactly at `generic_point`.
pub fn gl_invariance_witness(
    n: usize,
    t: &ConstMatrix,
    generic_point: &HashMap<DerivVar, RatFunc>,
) -> Result<bool> {
    if t.n() != n {
        return Err(Error::ShapeError(format!("transform must be {n}x{n}")));
    }
    if t.det().is_zero() {
        return Err(Error::SingularTransform);
    }
    let minors = wronskian_minors(n);
    let w = minors[n].evaluate(generic_point)?;
    if w.is_zero() {
        return Err(Error::DegeneratePoint);
    }
    let w_t = minors[n].substitute_linear(t.entries())?.evaluate(generic_point)?;
    if w_t.is_zero() {
        return Ok(false);
    }
    for minor in &minors[..n] {
        let before = minor.evaluate(generic_point)?.div(&w)?;
        let after = minor.substitute_linear(t.entries())?.evaluate(generic_point)?.div(&w_t)?;
        if before != after {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs `trials` seeded invariance checks with random invertible `T` and
/// random generic points, retrying degenerate points.
pub fn gl_invariance_trials(exec: Exec, n: usize, trials: usize, seed: u64) -> Result<Vec<bool>> {
    par::map_range(exec, trials, |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(k as u64));
        let t = random_invertible(n, &mut rng);
        loop {
            let point = random_generic_point(n, &mut rng);
            match gl_invariance_witness(n, &t, &point) {
                Err(Error::DegeneratePoint) => continue,
                other => return other,
            }
        }
    })
    .into_iter()
    .collect()
}
