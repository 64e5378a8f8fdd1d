use std::fmt;
use std::str::FromStr;

use crate::expr::{Coordinate, Expr};

use super::tensor::SymTensor2;

use Coordinate::{T, X, Y};

/// The sign `eps = ±1` in `g_xx`, either fixed or kept symbolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Eps {
    Plus,
    Minus,
    Symbolic,
}

impl Eps {
    pub fn to_expr(self) -> Expr {
        match self {
            Eps::Plus => Expr::one(),
            Eps::Minus => Expr::integer(-1),
            Eps::Symbolic => Expr::eps(),
        }
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Eps::Plus => Some(1.0),
            Eps::Minus => Some(-1.0),
            Eps::Symbolic => None,
        }
    }
}

impl FromStr for Eps {
    type Err = String;
    fn from_str(s: &str) -> Result<Eps, String> {
        match s.trim() {
            "1" | "+1" => Ok(Eps::Plus),
            "-1" => Ok(Eps::Minus),
            "sym" | "eps" => Ok(Eps::Symbolic),
            other => Err(format!("eps must be 1, -1 or sym, got `{other}`")),
        }
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eps::Plus => "1",
            Eps::Minus => "-1",
            Eps::Symbolic => "sym",
        })
    }
}

/// Walker metric
///
/// ```text
///     | 0  0    1 |
/// g = | 0  eps  0 |
///     | 1  0    f |
/// ```
///
/// together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    g: SymTensor2,
    ginv: SymTensor2,
    eps: Eps,
    f: Expr,
}

/// Builds the metric and its closed-form inverse
/// (`g^tt = -f`, `g^ty = 1`, `g^xx = eps`; `1/eps = eps` since `eps^2 = 1`).
pub fn walker_metric(f: &Expr, eps: Eps) -> Metric {
    let e = eps.to_expr();
    let mut g = SymTensor2::zero();
    g.set(T, Y, Expr::one());
    g.set(X, X, e.clone());
    g.set(Y, Y, f.clone());

    let mut ginv = SymTensor2::zero();
    ginv.set(T, T, -f);
    ginv.set(T, Y, Expr::one());
    ginv.set(X, X, e);

    let metric = Metric {
        g,
        ginv,
        eps,
        f: f.clone(),
    };
    assert!(metric.inverse_defect().is_empty(), "closed-form inverse is wrong");
    metric
}

impl Metric {
    pub fn g(&self) -> &SymTensor2 {
        &self.g
    }

    pub fn ginv(&self) -> &SymTensor2 {
        &self.ginv
    }

    pub fn eps(&self) -> Eps {
        self.eps
    }

    pub fn f(&self) -> &Expr {
        &self.f
    }

    /// Entries of `g * ginv - I` that fail to vanish, as `(row, col, value)`.
    pub fn inverse_defect(&self) -> Vec<(Coordinate, Coordinate, Expr)> {
        let mut out = Vec::new();
        for i in Coordinate::ALL {
            for j in Coordinate::ALL {
                let mut sum: Expr = Coordinate::ALL
                    .iter()
                    .map(|&k| self.g.get(i, k) * self.ginv.get(k, j))
                    .sum();
                if i == j {
                    sum = &sum - &Expr::one();
                }
                if !sum.is_zero() {
                    out.push((i, j, sum));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Context;

    #[test]
    fn entries_match_walker_shape() {
        let mut ctx = Context::new();
        for d in ["a:(t,x)", "b:(t,x)", "d:(t,x)"] {
            ctx.declare(d).unwrap();
        }
        let f = ctx.parse("a*y^2+b*y+d").unwrap();
        let m = walker_metric(&f, Eps::Symbolic);
        assert_eq!(m.g().get(Y, Y), &f);
        assert_eq!(m.g().get(T, Y), &Expr::one());
        assert_eq!(m.g().get(X, X), &Expr::eps());
        assert!(m.g().get(T, T).is_zero());
        assert!(m.g().get(T, X).is_zero());
        assert!(m.g().get(X, Y).is_zero());
    }

    #[test]
    fn zero_f_inverse() {
        let m = walker_metric(&Expr::zero(), Eps::Symbolic);
        assert!(m.ginv().get(T, T).is_zero());
        assert_eq!(m.ginv().get(T, Y), &Expr::one());
        assert_eq!(m.ginv().get(X, X), &Expr::eps());
    }

    #[test]
    fn eps_parsing() {
        assert_eq!("1".parse::<Eps>(), Ok(Eps::Plus));
        assert_eq!("-1".parse::<Eps>(), Ok(Eps::Minus));
        assert_eq!("sym".parse::<Eps>(), Ok(Eps::Symbolic));
        assert!("2".parse::<Eps>().is_err());
    }
}
