//! Comparison of first-principles results against the condition systems and
//! constraint displays published for these families. The published forms are
//! kept here as text fixtures in the expression grammar; they never feed back
//! into verdicts, they only produce discrepancy notes.

use std::fmt;
use std::str::FromStr;

use crate::expr::{Context, Deps, Expr, ExprError, FuncSymbol, EPS};
use crate::geometry::{Eps, SymTensor2, PAIRS};

use super::conditions::{generic_field, normalize, Condition, ConditionSet};
use super::families::{Family, FamilyInputs};
use super::residual::{residual, SolitonCandidate};
use super::SolitonError;

/// Which published condition system to compare against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConditionVariant {
    /// `f(t,x,y)`, conditions C1-C6.
    General,
    /// `f = a(t) y^2 + b(t) y + d`, conditions C'1-C'6.
    QuadraticY,
    /// `f = alpha y^2 + beta y + gamma`, conditions C''1-C''6.
    Flat,
    /// `f(x,y)`, compared against C''1-C''6.
    Strict,
}

const GENERAL_SYSTEM: [&str; 6] = [
    "C_t",
    "eps*B_t + C_x",
    "A_t + C_y + f*C_t + 1/2*f_tt - lambda",
    "2*eps*B_x - eps*lambda",
    "eps*B_y + f*C_x + A_x + 1/2*f_tx",
    "A*f_t + B*f_x + C*f_y + 2*(f*C_y + 2*A_y) + 1/2*eps*(eps*f*f_tt - f_xx) - lambda*f",
];

const QUADRATIC_SYSTEM: [&str; 6] = [
    "C_t",
    "eps*B_t + C_x",
    "A_t + C_y + f*C_t + 1/2*f_tt - lambda",
    "2*eps*B_x - eps*lambda",
    "A_x + eps*B_y + f*C_x",
    "A*f_t + B*f_x + C*f_y + 2*(f*C_y + 2*A_y) + 1/2*f*f_tt - lambda*f",
];

const FLAT_SYSTEM: [&str; 6] = [
    "C_t",
    "eps*B_t + C_x",
    "A_t + C_y + f*C_t - lambda",
    "2*eps*B_x - eps*lambda",
    "eps*B_y + f*C_x + A_x",
    "A*f_t + B*f_x + C*f_y + 2*(f*C_y + 2*A_y) - lambda*f",
];

impl ConditionVariant {
    pub const ALL: [ConditionVariant; 4] = [
        ConditionVariant::General,
        ConditionVariant::QuadraticY,
        ConditionVariant::Flat,
        ConditionVariant::Strict,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConditionVariant::General => "general",
            ConditionVariant::QuadraticY => "quadratic-y",
            ConditionVariant::Flat => "flat",
            ConditionVariant::Strict => "strict",
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            ConditionVariant::General => "C",
            ConditionVariant::QuadraticY => "C'",
            ConditionVariant::Flat | ConditionVariant::Strict => "C''",
        }
    }

    fn published(self) -> &'static [&'static str; 6] {
        match self {
            ConditionVariant::General => &GENERAL_SYSTEM,
            ConditionVariant::QuadraticY => &QUADRATIC_SYSTEM,
            ConditionVariant::Flat | ConditionVariant::Strict => &FLAT_SYSTEM,
        }
    }

    /// Declarations the default shape needs.
    pub fn shape_declarations(self) -> &'static [&'static str] {
        match self {
            ConditionVariant::General => &["f:(t,x,y)"],
            ConditionVariant::QuadraticY => &["a:(t)", "b:(t)", "d:()"],
            ConditionVariant::Flat => &["alpha:param", "beta:param", "gamma:param"],
            ConditionVariant::Strict => &["f:(x,y)"],
        }
    }

    pub fn default_shape_text(self) -> &'static str {
        match self {
            ConditionVariant::General | ConditionVariant::Strict => "f",
            ConditionVariant::QuadraticY => "a*y^2 + b*y + d",
            ConditionVariant::Flat => "alpha*y^2 + beta*y + gamma",
        }
    }

    pub fn default_shape(self) -> Expr {
        let mut ctx = Context::new();
        for d in self.shape_declarations() {
            ctx.declare(d).expect("static declaration");
        }
        ctx.parse(self.default_shape_text()).expect("static shape")
    }
}

impl FromStr for ConditionVariant {
    type Err = SolitonError;
    fn from_str(s: &str) -> Result<ConditionVariant, SolitonError> {
        ConditionVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| SolitonError::UnknownFamily(s.to_string()))
    }
}

impl fmt::Display for ConditionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every fixture symbol depends on all coordinates so that any validated
/// input can be substituted into it.
fn fixture_context() -> Context {
    let mut ctx = Context::new();
    for name in ["f", "A", "B", "C", "H", "K", "N", "F", "a", "b", "d"] {
        ctx.declare_function(name, Deps::ALL).expect("fixture names are valid");
    }
    ctx.declare_parameter("lambda").expect("fixture names are valid");
    ctx
}

fn fixture_symbol(name: &str) -> FuncSymbol {
    FuncSymbol::new(name, Deps::ALL)
}

fn instantiate(text: &str, subs: &[(&str, &Expr)], lambda: &Expr, eps: Eps) -> Result<Expr, ExprError> {
    let mut e = fixture_context().parse(text)?;
    for (name, value) in subs {
        e = e.substitute(&fixture_symbol(name), value)?;
    }
    e = e.substitute_param("lambda", lambda);
    if eps != Eps::Symbolic {
        e = e.substitute_param(EPS, &eps.to_expr());
    }
    Ok(e)
}

/// Outcome of comparing one derived condition with its published form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionComparison {
    pub label: String,
    pub component: String,
    pub derived: Expr,
    pub published: Expr,
    /// `published - derived`, or zero when the two agree up to a rational or
    /// `eps` factor.
    pub difference: Expr,
}

impl ConditionComparison {
    pub fn agrees(&self) -> bool {
        self.difference.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct SystemAudit {
    pub variant: ConditionVariant,
    pub conditions: ConditionSet,
    pub comparisons: Vec<ConditionComparison>,
    pub notes: Vec<String>,
}

/// Derives the condition system for `f_shape` with a generic field and
/// compares each condition with the published system of `variant`.
pub fn audit_conditions(
    variant: ConditionVariant,
    f_shape: &Expr,
    eps: Eps,
    lambda: &Expr,
) -> Result<SystemAudit, SolitonError> {
    let cand = SolitonCandidate::new(f_shape.clone(), generic_field(), lambda.clone(), eps);
    let res = residual(&cand);
    let prefix = variant.prefix();
    let conditions = ConditionSet::from_tensor(&res, |idx, _| format!("{prefix}{}", idx + 1));

    let field = generic_field();
    let mut comparisons = Vec::new();
    let mut notes = Vec::new();
    for (idx, text) in variant.published().iter().enumerate() {
        let (i, j) = PAIRS[idx];
        let derived = res.get(i, j).clone();
        let published = instantiate(
            text,
            &[("f", f_shape), ("A", &field.a), ("B", &field.b), ("C", &field.c)],
            lambda,
            eps,
        )?;
        let difference = aligned_difference(&derived, &published);
        let label = format!("{prefix}{}", idx + 1);
        let component = format!("{i}{j}");
        if !difference.is_zero() {
            notes.push(format!(
                "{label} ({component}): published form `{}` differs from first principles `{}`; published - derived = `{}`",
                published.to_text(),
                derived.to_text(),
                difference.to_text()
            ));
        }
        comparisons.push(ConditionComparison {
            label,
            component,
            derived,
            published,
            difference,
        });
    }
    Ok(SystemAudit {
        variant,
        conditions,
        comparisons,
        notes,
    })
}

/// Zero when the two agree up to normalization, `published - derived`
/// otherwise. The fixtures are written at the residual's own scale.
fn aligned_difference(derived: &Expr, published: &Expr) -> Expr {
    if normalize(derived).0 == normalize(published).0 {
        Expr::zero()
    } else {
        published - derived
    }
}

/// One reading of a published constraint display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reading {
    pub name: &'static str,
    pub constraints: Vec<(&'static str, &'static str)>,
}

const THEOREM1_C1: &str =
    "(1/2*a_tx - eps*a*H_t)*y^2 + (1/2*b_tx - eps*b*H_t)*y + 1/2*d_tx - eps*d*H_t + eps*H_y + N_x";

/// Published constraints for each family. Theorem 1's second display writes
/// the `A` coefficient as `(λ - t K_y)`, which disagrees with its own field;
/// both readings are kept.
pub fn published_readings(family: Family) -> Vec<Reading> {
    match family {
        Family::Theorem1 => vec![
            Reading {
                name: "as printed, (lambda - t*K_y)",
                constraints: vec![
                    ("c1", THEOREM1_C1),
                    (
                        "c2",
                        "(-eps*H_t*x + K)*f_y + f*(-2*eps*H_ty*x + 2*K_y + lambda + 1/2*f_tt) \
                         + ((lambda - t*K_y) + eps*H_y - 1/2*a_t*y^2 + N)*f_t \
                         + 4*(eps*H_yy + N_y - t*K_yy - a_t*y) - 1/2*eps*f_xx",
                    ),
                ],
            },
            Reading {
                name: "field-consistent, (lambda - K_y)*t",
                constraints: vec![
                    ("c1", THEOREM1_C1),
                    (
                        "c2",
                        "(-eps*H_t*x + K)*f_y + f*(-2*eps*H_ty*x + 2*K_y + lambda + 1/2*f_tt) \
                         + ((lambda - K_y)*t + eps*H_y - 1/2*a_t*y^2 + N)*f_t \
                         + 4*(eps*H_yy + N_y - t*K_yy - a_t*y) - 1/2*eps*f_xx",
                    ),
                ],
            },
        ],
        Family::QuadraticY => vec![Reading {
            name: "as printed",
            constraints: vec![
                ("c1", "eps*H_y + N_x - eps*f*H_t"),
                (
                    "c2",
                    "(K - eps*H_t*x)*f_y + f*(2*K_y - 2*eps*H_ty*x + lambda + 1/2*f_tt) \
                     + ((lambda - K_y)*t + eps*H_y - 1/2*a_t*y^2 + N)*f_t \
                     + 4*(N_y + eps*H_yy - K_yy*t - a_t*y)",
                ),
            ],
        }],
        Family::Flat | Family::FlatProof => vec![Reading {
            name: "as printed",
            constraints: vec![
                ("c1", "2*H_y - eps*f*H_t + F_x"),
                ("c2", "(K - eps*H_t*x)*f_y + 2*eps*H_yy*x - 2*K_yy*t + 2*F_y + f*(2*K_y + lambda)"),
            ],
        }],
        Family::Strict => vec![Reading {
            name: "as printed",
            constraints: vec![
                ("c1", "-eps*a*H_t*y^2 - eps*b*H_t*y - eps*d*H_t + eps*H_y + N_x"),
                (
                    "c2",
                    "(-eps*H_t*x + K)*f_y + f*(2*K_y + lambda - 2*eps*H_ty*x) \
                     + 4*(eps*H_yy + N_y - K_yy*t) - 1/2*eps*f_xx",
                ),
            ],
        }],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadingOutcome {
    pub name: &'static str,
    /// Published constraints after substituting the inputs.
    pub constraints: Vec<(&'static str, Expr)>,
    /// Whether every published constraint vanishes, i.e. the publication
    /// asserts a soliton for these inputs.
    pub claims_soliton: bool,
}

#[derive(Clone, Debug)]
pub struct FamilyAudit {
    pub family: Family,
    pub candidate: SolitonCandidate,
    pub residual: SymTensor2,
    pub constraints: ConditionSet,
    pub readings: Vec<ReadingOutcome>,
    pub notes: Vec<String>,
}

impl FamilyAudit {
    pub fn is_soliton(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Components the published fields are built to satisfy identically.
const BY_CONSTRUCTION: [&str; 4] = ["tt", "tx", "ty", "xx"];

/// Builds the family's field, computes its residual and compares the outcome
/// with every published reading of the family's constraints.
pub fn audit_family(family: Family, inputs: &FamilyInputs) -> Result<FamilyAudit, SolitonError> {
    let candidate = inputs.candidate(family)?;
    let res = residual(&candidate);
    let constraints = ConditionSet::from_tensor(&res, |_, component| component.to_string());
    let f = &candidate.f;
    let field = &candidate.field;
    let subs = [
        ("f", f),
        ("A", &field.a),
        ("B", &field.b),
        ("C", &field.c),
        ("H", &inputs.h),
        ("K", &inputs.k),
        ("N", &inputs.n),
        ("F", &inputs.n),
        ("a", &inputs.a),
        ("b", &inputs.b),
        ("d", &inputs.d),
    ];

    let mut notes = Vec::new();
    for c in constraints.iter().filter(|c| BY_CONSTRUCTION.contains(&c.component.as_str())) {
        notes.push(format!(
            "{family}: displayed field leaves residual {} = `{}`, which the construction claims vanishes",
            c.component,
            c.raw().to_text()
        ));
    }

    let mut readings = Vec::new();
    for reading in published_readings(family) {
        let mut substituted = Vec::new();
        for (label, text) in &reading.constraints {
            substituted.push((*label, instantiate(text, &subs, &inputs.lambda, inputs.eps)?));
        }
        let claims_soliton = substituted.iter().all(|(_, e)| e.is_zero());
        if claims_soliton && !res.is_zero() {
            for c in constraints.iter() {
                notes.push(format!(
                    "{family} ({}): published constraints hold but residual {} = `{}` is nonzero",
                    reading.name,
                    c.component,
                    c.raw().to_text()
                ));
            }
        } else if !claims_soliton && res.is_zero() {
            for (label, e) in substituted.iter().filter(|(_, e)| !e.is_zero()) {
                notes.push(format!(
                    "{family} ({}): residual vanishes but published constraint {label} = `{}` does not",
                    reading.name,
                    e.to_text()
                ));
            }
        }
        readings.push(ReadingOutcome {
            name: reading.name,
            constraints: substituted,
            claims_soliton,
        });
    }
    if matches!(family, Family::Theorem1 | Family::QuadraticY) {
        notes.push(format!(
            "{family}: statement constrains \"H, K, E\" but E never occurs; read as N, the function in A"
        ));
    }

    Ok(FamilyAudit {
        family,
        candidate,
        residual: res,
        constraints,
        readings,
        notes,
    })
}

/// Residual entries not covered by `set`, for callers that want to check a
/// condition set against a tensor.
pub fn uncovered(set: &ConditionSet, tensor: &SymTensor2) -> Vec<String> {
    tensor
        .nonzero()
        .into_iter()
        .filter(|(comp, e)| {
            !set.iter()
                .any(|c: &Condition| &c.component == comp && &c.raw() == e)
        })
        .map(|(comp, _)| comp)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lambda() -> Expr {
        Expr::param("lambda")
    }

    #[test]
    fn general_system_differs_only_in_c6() {
        let v = ConditionVariant::General;
        let audit = audit_conditions(v, &v.default_shape(), Eps::Symbolic, &lambda()).unwrap();
        let disagreeing: Vec<&str> = audit
            .comparisons
            .iter()
            .filter(|c| !c.agrees())
            .map(|c| c.label.as_str())
            .collect();
        assert_eq!(disagreeing, vec!["C6"]);
        let mut ctx = Context::new();
        ctx.declare("A:(t,x,y)").unwrap();
        assert_eq!(audit.comparisons[5].difference, ctx.parse("2*A_y").unwrap());
        assert_eq!(audit.notes.len(), 1);
    }

    #[test]
    fn strict_system_has_no_curvature_terms_in_c3_c5() {
        let v = ConditionVariant::Strict;
        let audit = audit_conditions(v, &v.default_shape(), Eps::Symbolic, &lambda()).unwrap();
        for c in &audit.comparisons[..5] {
            assert!(c.agrees(), "{} disagrees", c.label);
        }
        assert!(!audit.comparisons[5].agrees());
    }

    #[test]
    fn flat_zero_inputs_flag_ty() {
        let inputs = FamilyInputs {
            lambda: lambda(),
            ..FamilyInputs::default()
        };
        let audit = audit_family(Family::Flat, &inputs).unwrap();
        assert!(!audit.is_soliton());
        assert!(audit.readings[0].claims_soliton);
        assert!(audit.notes.iter().any(|n| n.contains("residual ty")));
        let proof = audit_family(Family::FlatProof, &inputs).unwrap();
        assert!(proof.is_soliton());
        assert!(proof.notes.is_empty());
    }

    #[test]
    fn variant_names_parse() {
        for v in ConditionVariant::ALL {
            assert_eq!(v.name().parse::<ConditionVariant>().unwrap(), v);
        }
        assert!("bogus".parse::<ConditionVariant>().is_err());
    }
}
