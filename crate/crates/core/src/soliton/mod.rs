//! Ricci soliton residuals, condition systems and the Walker soliton
//! families, with an audit against their published forms.

mod audit;
mod conditions;
mod families;
mod residual;

use thiserror::Error;

use crate::expr::{Coordinate, Deps, ExprError};

pub use audit::{
    audit_conditions, audit_family, published_readings, uncovered, ConditionComparison, ConditionVariant,
    FamilyAudit, Reading, ReadingOutcome, SystemAudit,
};
pub use conditions::{general_conditions, generic_field, normalize, Condition, ConditionSet, Normalization};
pub use families::{corollary_field, family_constraints, theorem1_field, Family, FamilyInputs};
pub use residual::{
    classify, classify_expr, is_einstein, residual, ricci_of, verdict, Classification, EinsteinCheck,
    SolitonCandidate, Verdict,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolitonError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("input {input} depends on {coordinate}, allowed dependencies are {allowed}")]
    Dependency {
        input: String,
        coordinate: Coordinate,
        allowed: Deps,
    },
    #[error("unknown family or variant `{0}`")]
    UnknownFamily(String),
    #[error("{0}")]
    Invalid(String),
}
