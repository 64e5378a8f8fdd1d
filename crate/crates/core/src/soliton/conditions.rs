use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::expr::{Atom, Deps, Expr, FuncSymbol, Rational, EPS};
use crate::geometry::{Eps, SymTensor2, VectorField};

use super::residual::{residual, SolitonCandidate};

/// Factor removed by [`normalize`]: `raw = scale * eps^(eps as u8) * normalized`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub scale: Rational,
    pub eps: bool,
}

impl Normalization {
    pub fn identity() -> Normalization {
        Normalization {
            scale: Rational::one(),
            eps: false,
        }
    }

    pub fn apply(&self, e: &Expr) -> Expr {
        let scaled = e.scale(&self.scale);
        if self.eps {
            &scaled * &Expr::eps()
        } else {
            scaled
        }
    }
}

/// Divides out the rational content of `e` (gcd of numerators over lcm of
/// denominators), makes the leading coefficient positive, and removes a
/// common `eps` factor when every term carries one.
pub fn normalize(e: &Expr) -> (Expr, Normalization) {
    let Some((_, lead)) = e.leading_term() else {
        return (Expr::zero(), Normalization::identity());
    };
    let (mut num_gcd, mut den_lcm) = (num_bigint::BigInt::zero(), num_bigint::BigInt::one());
    for (_, q) in e.terms() {
        num_gcd = num_gcd.gcd(q.numer());
        den_lcm = den_lcm.lcm(q.denom());
    }
    let mut scale = Rational::new(num_gcd, den_lcm);
    if lead.is_negative() {
        scale = -scale;
    }
    let eps_atom = Atom::Param(EPS.into());
    let all_eps = e.terms().all(|(m, _)| m.power_of(&eps_atom) == 1);
    let mut normalized = e.scale(&scale.recip());
    if all_eps {
        normalized = &normalized * &Expr::eps();
    }
    (normalized, Normalization { scale, eps: all_eps })
}

/// One required identity `lhs ≡ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub label: String,
    /// Residual component the condition came from, e.g. `"ty"`.
    pub component: String,
    /// Normalized left-hand side.
    pub lhs: Expr,
    pub normalization: Normalization,
}

impl Condition {
    /// The residual component before normalization.
    pub fn raw(&self) -> Expr {
        self.normalization.apply(&self.lhs)
    }
}

/// Ordered list of conditions with unique labels; empty means satisfied.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConditionSet {
    conditions: Vec<Condition>,
}

impl ConditionSet {
    pub fn new() -> ConditionSet {
        ConditionSet::default()
    }

    /// Adds a condition unless its label is already taken; returns whether it
    /// was added.
    pub fn push(&mut self, condition: Condition) -> bool {
        if self.get(&condition.label).is_some() {
            return false;
        }
        self.conditions.push(condition);
        true
    }

    pub fn get(&self, label: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.label == label)
    }

    pub fn by_component(&self, component: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.component == component)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter()
    }

    pub fn len(&self) -> usize {
        self.conditions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conditions.is_empty()
    }

    /// One normalized condition per nonzero component of `tensor`, labelled
    /// by `label(index)` with `index` running over `tt, tx, ty, xx, xy, yy`.
    pub fn from_tensor(tensor: &SymTensor2, mut label: impl FnMut(usize, &str) -> String) -> ConditionSet {
        let mut set = ConditionSet::new();
        for (idx, (component, e)) in tensor.labeled().enumerate() {
            if e.is_zero() {
                continue;
            }
            let (lhs, normalization) = normalize(e);
            set.push(Condition {
                label: label(idx, &component),
                component,
                lhs,
                normalization,
            });
        }
        set
    }
}

/// `A, B, C` as undetermined functions of `(t, x, y)`.
pub fn generic_field() -> VectorField {
    let sym = |n: &str| Expr::func(&FuncSymbol::new(n, Deps::ALL));
    VectorField::new(sym("A"), sym("B"), sym("C"))
}

/// Soliton conditions for a generic field on `g_f`: the residual components,
/// each normalized, labelled `C1` (tt) through `C6` (yy). Components that
/// vanish identically are omitted.
pub fn general_conditions(f_shape: &Expr, eps: Eps, lambda: &Expr) -> ConditionSet {
    let cand = SolitonCandidate::new(f_shape.clone(), generic_field(), lambda.clone(), eps);
    let res = residual(&cand);
    ConditionSet::from_tensor(&res, |idx, _| format!("C{}", idx + 1))
}
