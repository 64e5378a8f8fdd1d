use std::fmt;
use std::str::FromStr;

use crate::expr::{Coordinate, Deps, Expr};
use crate::geometry::{Eps, VectorField};

use super::conditions::ConditionSet;
use super::residual::{residual, SolitonCandidate};
use super::SolitonError;

use Coordinate::{T, X, Y};

/// Walker shapes with an explicit vector-field ansatz.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `f = a(t,x) y^2 + b(t,x) y + d(t,x)`
    Theorem1,
    /// `f = a(t) y^2 + b(t) y + d`
    QuadraticY,
    /// `f = alpha y^2 + beta y + gamma`, field with the `λ/2 t` term
    Flat,
    /// Flat shape, field `A = eps H_y x + (λ - K_y) t + F`
    FlatProof,
    /// `f = a(x) y^2 + b(x) y + d(x)`
    Strict,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Theorem1,
        Family::QuadraticY,
        Family::Flat,
        Family::FlatProof,
        Family::Strict,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Theorem1 => "theorem1",
            Family::QuadraticY => "quadratic-y",
            Family::Flat => "flat",
            Family::FlatProof => "flat-proof",
            Family::Strict => "strict",
        }
    }

    pub fn is_flat(self) -> bool {
        matches!(self, Family::Flat | Family::FlatProof)
    }

    /// Allowed dependencies of the coefficients `(a, b, d)`.
    fn coefficient_deps(self) -> (Deps, Deps) {
        match self {
            Family::Theorem1 => (Deps::of(&[T, X]), Deps::of(&[T, X])),
            Family::QuadraticY => (Deps::of(&[T]), Deps::NONE),
            Family::Strict => (Deps::of(&[X]), Deps::of(&[X])),
            Family::Flat | Family::FlatProof => (Deps::NONE, Deps::NONE),
        }
    }
}

impl FromStr for Family {
    type Err = SolitonError;
    fn from_str(s: &str) -> Result<Family, SolitonError> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| SolitonError::UnknownFamily(s.to_string()))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Free data of a family. `n` is `N` for the quadratic families and `F` for
/// the flat ones; unused entries stay zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInputs {
    pub h: Expr,
    pub k: Expr,
    pub n: Expr,
    pub a: Expr,
    pub b: Expr,
    pub d: Expr,
    pub alpha: Expr,
    pub beta: Expr,
    pub gamma: Expr,
    pub delta: Expr,
    pub lambda: Expr,
    pub eps: Eps,
}

impl Default for FamilyInputs {
    fn default() -> Self {
        FamilyInputs {
            h: Expr::zero(),
            k: Expr::zero(),
            n: Expr::zero(),
            a: Expr::zero(),
            b: Expr::zero(),
            d: Expr::zero(),
            alpha: Expr::zero(),
            beta: Expr::zero(),
            gamma: Expr::zero(),
            delta: Expr::zero(),
            lambda: Expr::zero(),
            eps: Eps::Symbolic,
        }
    }
}

fn check(name: &str, e: &Expr, allowed: Deps) -> Result<(), SolitonError> {
    match e.free_coordinates().iter().find(|&c| !allowed.contains(c)) {
        Some(c) => Err(SolitonError::Dependency {
            input: name.to_string(),
            coordinate: c,
            allowed,
        }),
        None => Ok(()),
    }
}

impl FamilyInputs {
    pub fn validate(&self, family: Family) -> Result<(), SolitonError> {
        check("H", &self.h, Deps::of(&[T, Y]))?;
        check("K", &self.k, Deps::of(&[Y]))?;
        check(if family.is_flat() { "F" } else { "N" }, &self.n, Deps::of(&[X, Y]))?;
        check("lambda", &self.lambda, Deps::NONE)?;
        let (ab, d) = family.coefficient_deps();
        check("a", &self.a, ab)?;
        check("b", &self.b, ab)?;
        check("d", &self.d, d)?;
        for (name, e) in [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("delta", &self.delta),
        ] {
            check(name, e, Deps::NONE)?;
        }
        Ok(())
    }

    /// The defining function of the family's metric.
    pub fn defining_function(&self, family: Family) -> Expr {
        let y = Expr::y();
        let y2 = y.pow(2);
        if family.is_flat() {
            &(&(&self.alpha * &y2) + &(&self.beta * &y)) + &self.gamma
        } else {
            &(&(&self.a * &y2) + &(&self.b * &y)) + &self.d
        }
    }

    pub fn candidate(&self, family: Family) -> Result<SolitonCandidate, SolitonError> {
        let field = corollary_field(family, self)?;
        Ok(SolitonCandidate::new(
            self.defining_function(family),
            field,
            self.lambda.clone(),
            self.eps,
        ))
    }
}

/// `B = λ/2 x + H`, `C = -eps H_t x + K`, shared by every family.
fn common_bc(h: &Expr, k: &Expr, lambda: &Expr, e: &Expr) -> (Expr, Expr) {
    let b = &(&(lambda * &Expr::x()) * &Expr::ratio(1, 2)) + h;
    let c = &(&(-e) * &(&h.differentiate(T) * &Expr::x())) + k;
    (b, c)
}

/// `A = (λ - K_y) t + eps H_y - ½ a_t y^2 + N`, `B = λ/2 x + H`,
/// `C = -eps H_t x + K`.
pub fn theorem1_field(
    h: &Expr,
    k: &Expr,
    n: &Expr,
    a: &Expr,
    lambda: &Expr,
    eps: Eps,
) -> Result<VectorField, SolitonError> {
    let inputs = FamilyInputs {
        h: h.clone(),
        k: k.clone(),
        n: n.clone(),
        a: a.clone(),
        lambda: lambda.clone(),
        eps,
        ..FamilyInputs::default()
    };
    corollary_field(Family::Theorem1, &inputs)
}

/// The displayed field of `family`, built verbatim from its inputs. No claim
/// of validity is made; see [`family_constraints`].
pub fn corollary_field(family: Family, inputs: &FamilyInputs) -> Result<VectorField, SolitonError> {
    inputs.validate(family)?;
    let e = inputs.eps.to_expr();
    let lambda = &inputs.lambda;
    let (t, x, y) = (Expr::t(), Expr::x(), Expr::y());
    let scaling_t = &(lambda - &inputs.k.differentiate(Y)) * &t;
    let a_field = match family {
        Family::Theorem1 | Family::QuadraticY => {
            let quad = &(&Expr::ratio(-1, 2) * &inputs.a.differentiate(T)) * &y.pow(2);
            &(&(&scaling_t + &(&e * &inputs.h.differentiate(Y))) + &quad) + &inputs.n
        }
        Family::Strict => &(&scaling_t + &(&e * &inputs.h.differentiate(Y))) + &inputs.n,
        Family::Flat => {
            // -β/2 (λ/4 y + δ) y + λ/2 t + F
            let inner = &(&(lambda * &Expr::ratio(1, 4)) * &y) + &inputs.delta;
            let first = &(&(&inputs.beta * &Expr::ratio(-1, 2)) * &inner) * &y;
            &(&first + &(&(lambda * &Expr::ratio(1, 2)) * &t)) + &inputs.n
        }
        Family::FlatProof => {
            &(&(&(&e * &inputs.h.differentiate(Y)) * &x) + &scaling_t) + &inputs.n
        }
    };
    let (b, c) = common_bc(&inputs.h, &inputs.k, lambda, &e);
    Ok(VectorField::new(a_field, b, c))
}

/// Residual of the family's field on the family's metric, one normalized
/// condition per nonzero component, labelled by component.
pub fn family_constraints(family: Family, inputs: &FamilyInputs) -> Result<ConditionSet, SolitonError> {
    let cand = inputs.candidate(family)?;
    let res = residual(&cand);
    Ok(ConditionSet::from_tensor(&res, |_, component| component.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{Context, FuncSymbol};

    #[test]
    fn theorem1_zero_inputs_give_scaling_field() {
        let lambda = Expr::param("lambda");
        let z = Expr::zero();
        let x = theorem1_field(&z, &z, &z, &z, &lambda, Eps::Symbolic).unwrap();
        assert_eq!(x.a, &lambda * &Expr::t());
        assert_eq!(x.b, &(&lambda * &Expr::x()) * &Expr::ratio(1, 2));
        assert!(x.c.is_zero());
    }

    #[test]
    fn theorem1_constant_k() {
        let z = Expr::zero();
        let x = theorem1_field(&z, &Expr::integer(3), &z, &z, &z, Eps::Plus).unwrap();
        assert_eq!(x, VectorField::new(z.clone(), z.clone(), Expr::integer(3)));
    }

    #[test]
    fn theorem1_h_equals_y() {
        let z = Expr::zero();
        let x = theorem1_field(&Expr::y(), &z, &z, &z, &z, Eps::Plus).unwrap();
        assert_eq!(x, VectorField::new(Expr::one(), Expr::y(), z));
    }

    #[test]
    fn strict_and_flat_zero_inputs() {
        let lambda = Expr::param("lambda");
        let inputs = FamilyInputs {
            lambda: lambda.clone(),
            ..FamilyInputs::default()
        };
        let half_x = &(&lambda * &Expr::x()) * &Expr::ratio(1, 2);
        let strict = corollary_field(Family::Strict, &inputs).unwrap();
        assert_eq!(strict, VectorField::new(&lambda * &Expr::t(), half_x.clone(), Expr::zero()));
        let flat = corollary_field(Family::Flat, &inputs).unwrap();
        assert_eq!(
            flat,
            VectorField::new(&(&lambda * &Expr::t()) * &Expr::ratio(1, 2), half_x, Expr::zero())
        );
        assert!(corollary_field(Family::QuadraticY, &FamilyInputs::default()).unwrap().is_zero());
    }

    #[test]
    fn flat_zero_inputs_steady_have_no_constraints() {
        let set = family_constraints(Family::Flat, &FamilyInputs::default()).unwrap();
        assert!(set.is_empty());
    }

    #[test]
    fn flat_zero_inputs_fail_ty_for_nonzero_lambda() {
        let inputs = FamilyInputs {
            lambda: Expr::param("lambda"),
            ..FamilyInputs::default()
        };
        let set = family_constraints(Family::Flat, &inputs).unwrap();
        let ty = set.by_component("ty").unwrap();
        assert_eq!(ty.raw(), &Expr::param("lambda") * &Expr::ratio(-1, 2));
        assert!(family_constraints(Family::FlatProof, &inputs).unwrap().is_empty());
    }

    #[test]
    fn theorem1_xy_constraint_terms() {
        let mut ctx = Context::new();
        for d in ["a:(t,x)", "b:(t,x)", "d:(t,x)", "H:(t,y)", "K:(y)", "N:(x,y)"] {
            ctx.declare(d).unwrap();
        }
        let p = |s: &str| ctx.parse(s).unwrap();
        let inputs = FamilyInputs {
            a: p("a"),
            b: p("b"),
            d: p("d"),
            h: p("H"),
            k: p("K"),
            n: p("N"),
            lambda: Expr::param("lambda"),
            ..FamilyInputs::default()
        };
        let set = family_constraints(Family::Theorem1, &inputs).unwrap();
        let xy = set.by_component("xy").unwrap().raw();
        // A_x carries -1/2 a_tx y^2, which cancels the f_tx contribution.
        let expected = p("-eps*a*H_t*y^2 + (1/2*b_tx - eps*b*H_t)*y + 1/2*d_tx - eps*d*H_t + eps*H_y + N_x");
        assert_eq!(xy, expected);
    }

    #[test]
    fn dependency_violations() {
        let inputs = FamilyInputs {
            k: Expr::t(),
            ..FamilyInputs::default()
        };
        assert!(matches!(
            corollary_field(Family::Strict, &inputs),
            Err(SolitonError::Dependency { coordinate: Coordinate::T, .. })
        ));
        let a = FuncSymbol::new("a", Deps::of(&[T, X]));
        let inputs = FamilyInputs {
            a: Expr::func(&a),
            ..FamilyInputs::default()
        };
        assert!(corollary_field(Family::QuadraticY, &inputs).is_err());
        assert!(corollary_field(Family::Theorem1, &inputs).is_ok());
        assert!("nope".parse::<Family>().is_err());
    }
}
