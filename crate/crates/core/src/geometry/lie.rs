use std::ops::Add;

use crate::expr::{Coordinate, Expr, Rational};

use super::metric::Metric;
use super::tensor::SymTensor2;

/// `X = A ∂_t + B ∂_x + C ∂_y`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VectorField {
    pub a: Expr,
    pub b: Expr,
    pub c: Expr,
}

impl VectorField {
    pub fn new(a: Expr, b: Expr, c: Expr) -> VectorField {
        VectorField { a, b, c }
    }

    pub fn zero() -> VectorField {
        VectorField::default()
    }

    pub fn component(&self, k: Coordinate) -> &Expr {
        match k {
            Coordinate::T => &self.a,
            Coordinate::X => &self.b,
            Coordinate::Y => &self.c,
        }
    }

    /// `X(h) = A h_t + B h_x + C h_y`.
    pub fn apply(&self, h: &Expr) -> Expr {
        Coordinate::ALL
            .iter()
            .map(|&k| self.component(k) * &h.differentiate(k))
            .sum()
    }

    pub fn scale(&self, q: &Rational) -> VectorField {
        VectorField::new(self.a.scale(q), self.b.scale(q), self.c.scale(q))
    }

    pub fn map(&self, mut f: impl FnMut(&Expr) -> Expr) -> VectorField {
        VectorField::new(f(&self.a), f(&self.b), f(&self.c))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }
}

impl Add<&VectorField> for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField::new(&self.a + &rhs.a, &self.b + &rhs.b, &self.c + &rhs.c)
    }
}

/// `(L_X g)_{ij} = X^k ∂_k g_{ij} + g_{kj} ∂_i X^k + g_{ik} ∂_j X^k`.
pub fn lie_derivative_metric(m: &Metric, field: &VectorField) -> SymTensor2 {
    let g = m.g();
    SymTensor2::from_fn(|i, j| {
        Coordinate::ALL
            .iter()
            .map(|&k| {
                let xk = field.component(k);
                let transport = xk * &g.get(i, j).differentiate(k);
                let left = g.get(k, j) * &xk.differentiate(i);
                let right = g.get(i, k) * &xk.differentiate(j);
                &(&transport + &left) + &right
            })
            .sum()
    })
}
