//! Differential Galois groups of first-order extensions `K(u)/K`.
//!
//! * `u′ = a`: the group is trivial when `a` is a derivative in K, otherwise
//!   the additive group of constants and `u` is transcendental.
//! * `u′ = a·u`: if no `f′ = n·a·f` is solvable in K the group is the full
//!   multiplicative group; otherwise, for the least such `n` with solution
//!   `β`, `u` has minimal polynomial `Xⁿ − c·β` and the group is the cyclic
//!   group of `n`-th roots of unity (trivial when `n = 1`).

use crate::basefield::{antiderivative_in_field, smallest_exponential_index, RatFunc, Rational};
use crate::cli::print;
use crate::error::{Error, Result};
use crate::wronskian::LinearODE;

/// The classified group together with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaloisDescriptor {
    /// `witness` is `b` with `b′ = a`, or `β` with `β′ = a·β`.
    Trivial { witness: RatFunc },
    AdditiveGroup,
    MultiplicativeGroup,
    /// `β′ = n·a·β`.
    CyclicOfOrder { n: u64, beta: RatFunc },
    FullGeneralLinear { n: usize },
}

impl GaloisDescriptor {
    /// Short tag used in reports.
    pub fn group_name(&self) -> &'static str {
        match self {
            GaloisDescriptor::Trivial { .. } => "trivial",
            GaloisDescriptor::AdditiveGroup => "additive",
            GaloisDescriptor::MultiplicativeGroup => "multiplicative",
            GaloisDescriptor::CyclicOfOrder { .. } => "cyclic",
            GaloisDescriptor::FullGeneralLinear { .. } => "general_linear",
        }
    }

    /// `X^n - c*β` for the cyclic case; `c` is a free nonzero constant.
    pub fn minimal_polynomial(&self) -> Option<String> {
        match self {
            GaloisDescriptor::CyclicOfOrder { n, beta } => {
                let b = print::ratfunc(beta);
                let bare = b.chars().all(|ch| ch == 't' || ch == '^' || ch.is_ascii_digit());
                let b = if !bare {
                    format!("({b})")
                } else {
                    b
                };
                Some(format!("X^{n} - c*{b}"))
            }
            _ => None,
        }
    }
}

/// Group of `K(u)/K` with `u′ = a`.
pub fn classify_antiderivative_extension(a: &RatFunc) -> GaloisDescriptor {
    match antiderivative_in_field(a) {
        Some(b) => GaloisDescriptor::Trivial { witness: b },
        None => GaloisDescriptor::AdditiveGroup,
    }
}

/// Group of `K(u)/K` with `u′ = a·u`, `u ≠ 0`.
pub fn classify_exponential_extension(a: &RatFunc) -> GaloisDescriptor {
    match smallest_exponential_index(a) {
        None => GaloisDescriptor::MultiplicativeGroup,
        Some((1, beta)) => GaloisDescriptor::Trivial { witness: beta },
        Some((n, beta)) => GaloisDescriptor::CyclicOfOrder { n, beta },
    }
}

/// Dimension of the group: transcendence degree of the coordinate ring of
/// its identity component.
pub fn descriptor_dimension(d: &GaloisDescriptor) -> usize {
    match d {
        GaloisDescriptor::Trivial { .. } => 0,
        GaloisDescriptor::AdditiveGroup => 1,
        GaloisDescriptor::MultiplicativeGroup => 1,
        GaloisDescriptor::CyclicOfOrder { .. } => 0,
        GaloisDescriptor::FullGeneralLinear { n } => n * n,
    }
}

/// Transcendence degree of the classified extension over K. Computed from
/// the extension side (is `u` algebraic?), not from the group.
pub fn descriptor_trdeg(d: &GaloisDescriptor) -> usize {
    match d {
        // u ∈ K
        GaloisDescriptor::Trivial { .. } => 0,
        // u transcendental: one generator
        GaloisDescriptor::AdditiveGroup | GaloisDescriptor::MultiplicativeGroup => 1,
        // u algebraic of degree n
        GaloisDescriptor::CyclicOfOrder { .. } => 0,
        // n generic solutions, each with n independent derivatives x_i^(0..n)
        GaloisDescriptor::FullGeneralLinear { n } => n * n,
    }
}

/// `y″ − (a′/a)·y′ = 0`, solved by `1` and any `u` with `u′ = a`.
pub fn antiderivative_extension_operator(a: &RatFunc) -> Result<LinearODE> {
    if a.is_zero() {
        return Err(Error::NotApplicable("the operator needs a ≠ 0".into()));
    }
    let ratio = a.derive().div(a)?;
    LinearODE::new(vec![ratio.neg(), RatFunc::from_int(0)])
}

/// Exhaustive check that `m·a` is not a logarithmic derivative for any
/// `1 ≤ m < n`, read off the residues of `a`.
pub fn no_smaller_index(a: &RatFunc, n: u64) -> bool {
    let Some(terms) = crate::basefield::log_derivative_decompose(a) else {
        return true;
    };
    (1..n).all(|m| {
        let mr = Rational::from_integer(m.into());
        terms.iter().any(|t| !(&t.coefficient * &mr).is_integer())
    })
}
