use std::fmt;

use num_traits::{Signed, Zero};

use crate::expr::{Expr, Rational};
use crate::geometry::{
    christoffel, lie_derivative_metric, ricci, riemann, walker_metric, Eps, SymTensor2, VectorField,
};

/// `(f, X, λ, eps)`: a Walker metric `g_f` with a vector field and soliton
/// constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolitonCandidate {
    pub f: Expr,
    pub field: VectorField,
    pub lambda: Expr,
    pub eps: Eps,
}

impl SolitonCandidate {
    pub fn new(f: Expr, field: VectorField, lambda: Expr, eps: Eps) -> SolitonCandidate {
        SolitonCandidate {
            f,
            field,
            lambda,
            eps,
        }
    }
}

pub fn ricci_of(f: &Expr, eps: Eps) -> SymTensor2 {
    let m = walker_metric(f, eps);
    let conn = christoffel(&m);
    let curv = riemann(&m, &conn);
    ricci(&m, &curv)
}

/// `L_X g_f + ρ - λ g_f`, which vanishes exactly on Ricci solitons.
pub fn residual(cand: &SolitonCandidate) -> SymTensor2 {
    let m = walker_metric(&cand.f, cand.eps);
    let conn = christoffel(&m);
    let curv = riemann(&m, &conn);
    let rho = ricci(&m, &curv);
    let lie = lie_derivative_metric(&m, &cand.field);
    let scaled = m.g().map(|e| &cand.lambda * e);
    &(&lie + &rho) - &scaled
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Shrinking,
    Steady,
    Expanding,
    Indeterminate,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Shrinking => "shrinking",
            Classification::Steady => "steady",
            Classification::Expanding => "expanding",
            Classification::Indeterminate => "indeterminate",
        })
    }
}

pub fn classify(lambda: &Rational) -> Classification {
    if lambda.is_zero() {
        Classification::Steady
    } else if lambda.is_positive() {
        Classification::Shrinking
    } else {
        Classification::Expanding
    }
}

/// Classification of a possibly symbolic `λ`.
pub fn classify_expr(lambda: &Expr) -> Classification {
    lambda
        .as_constant()
        .map_or(Classification::Indeterminate, |q| classify(&q))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EinsteinCheck {
    pub is_einstein: bool,
    /// Nonzero Ricci entries. `ρ_xx = 0` while `g_xx = eps`, so any Einstein
    /// constant is forced to zero and every nonzero entry is an obstruction.
    pub witness: Vec<(String, Expr)>,
}

/// For the Walker shape `ρ = λ g` forces `λ = 0`, so Einstein is equivalent
/// to Ricci-flat, i.e. `f_tt = f_tx = f_xx = 0`.
pub fn is_einstein(f: &Expr, eps: Eps) -> EinsteinCheck {
    let rho = ricci_of(f, eps);
    debug_assert!(rho.get(crate::expr::Coordinate::X, crate::expr::Coordinate::X).is_zero());
    let witness = rho.nonzero();
    EinsteinCheck {
        is_einstein: witness.is_empty(),
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub is_soliton: bool,
    pub failing_components: Vec<(String, Expr)>,
    pub classification: Classification,
    pub einstein: EinsteinCheck,
}

pub fn verdict(cand: &SolitonCandidate) -> Verdict {
    let failing = residual(cand).nonzero();
    Verdict {
        is_soliton: failing.is_empty(),
        failing_components: failing,
        classification: classify_expr(&cand.lambda),
        einstein: is_einstein(&cand.f, cand.eps),
    }
}
