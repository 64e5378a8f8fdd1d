use crate::expr::{Atom, Expr, EPS};
use crate::geometry::Eps;

use super::NumericError;

/// A fully instantiated expression flattened to `(coefficient, [pt, px, py])`
/// terms for fast floating-point evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct Compiled {
    terms: Vec<(f64, [i32; 3])>,
}

impl Compiled {
    /// Fails on function symbols and on parameters other than a numeric `eps`.
    pub fn new(e: &Expr, eps: Eps) -> Result<Compiled, NumericError> {
        let eps_value = eps.value();
        let mut terms = Vec::with_capacity(e.len());
        for (m, q) in e.terms() {
            let mut coeff = to_f64(q);
            let mut powers = [0i32; 3];
            for (atom, p) in m.factors() {
                match atom {
                    Atom::Coord(c) => powers[c.index()] = *p as i32,
                    Atom::Param(name) if &**name == EPS => match eps_value {
                        Some(v) => coeff *= v.powi(*p as i32),
                        None => return Err(NumericError::SymbolicEps),
                    },
                    Atom::Param(name) => return Err(NumericError::UnboundParameter(name.to_string())),
                    Atom::Deriv(d) => return Err(NumericError::FreeFunction(d.symbol().name().to_string())),
                }
            }
            terms.push((coeff, powers));
        }
        Ok(Compiled { terms })
    }

    pub fn zero() -> Compiled {
        Compiled { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, p: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(c, [a, b, d])| c * p[0].powi(*a) * p[1].powi(*b) * p[2].powi(*d))
            .sum()
    }
}

fn to_f64(q: &crate::expr::Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Context;

    #[test]
    fn evaluates_polynomials() {
        let ctx = Context::new();
        let e = ctx.parse("1/2*t^2*y - 3*x + eps").unwrap();
        let c = Compiled::new(&e, Eps::Minus).unwrap();
        assert!((c.eval([2.0, 1.0, 3.0]) - (6.0 - 3.0 - 1.0)).abs() < 1e-15);
        assert!(matches!(Compiled::new(&e, Eps::Symbolic), Err(NumericError::SymbolicEps)));
    }

    #[test]
    fn rejects_free_symbols() {
        let mut ctx = Context::new();
        ctx.declare("a:(t)").unwrap();
        ctx.declare("k:param").unwrap();
        let e = ctx.parse("a*y^2").unwrap();
        assert_eq!(
            Compiled::new(&e, Eps::Plus),
            Err(NumericError::FreeFunction("a".into()))
        );
        let e = ctx.parse("k*y").unwrap();
        assert_eq!(
            Compiled::new(&e, Eps::Plus),
            Err(NumericError::UnboundParameter("k".into()))
        );
    }
}
