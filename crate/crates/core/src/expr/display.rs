use std::fmt::{self, Write};

use num_traits::{One, Signed};

use super::atom::{Atom, DerivAtom};
use super::poly::{Expr, Monomial, Rational};

/// How derivative atoms are spelled. Both styles are accepted by the parser.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Style {
    /// `D[f;t,x]`
    #[default]
    Bracket,
    /// `f_tx`
    Subscript,
}

impl Expr {
    /// Renders terms from the greatest monomial down. Within a term,
    /// parameters and function atoms are written before coordinates.
    pub fn render(&self, style: Style) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, q)) in self.terms().rev().enumerate() {
            let negative = q.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            write_term(&mut out, &q.abs(), m, style);
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.render(Style::Subscript)
    }
}

fn write_term(out: &mut String, coeff: &Rational, m: &Monomial, style: Style) {
    let mut parts: Vec<String> = Vec::new();
    let mut coords: Vec<String> = Vec::new();
    for (atom, power) in m.factors() {
        let mut s = atom_string(atom, style);
        if *power > 1 {
            let _ = write!(s, "^{power}");
        }
        match atom {
            Atom::Coord(_) => coords.push(s),
            _ => parts.push(s),
        }
    }
    parts.extend(coords);
    if parts.is_empty() {
        out.push_str(&coeff.to_string());
        return;
    }
    if !coeff.is_one() {
        let _ = write!(out, "{coeff}*");
    }
    out.push_str(&parts.join("*"));
}

fn atom_string(atom: &Atom, style: Style) -> String {
    match atom {
        Atom::Coord(c) => c.name().to_string(),
        Atom::Param(p) => p.to_string(),
        Atom::Deriv(d) => deriv_string(d, style),
    }
}

fn deriv_string(d: &DerivAtom, style: Style) -> String {
    let name = d.symbol().name();
    if d.orders().is_empty() {
        return name.to_string();
    }
    match style {
        Style::Bracket => {
            let orders: Vec<&str> = d.orders().iter().map(|c| c.name()).collect();
            format!("D[{name};{}]", orders.join(","))
        }
        Style::Subscript => {
            let orders: String = d.orders().iter().map(|c| c.name()).collect();
            format!("{name}_{orders}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Bracket))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{Coordinate, Deps, FuncSymbol};

    #[test]
    fn renders_quadratic_in_descending_order() {
        let tx = Deps::of(&[Coordinate::T, Coordinate::X]);
        let a = Expr::func(&FuncSymbol::new("a", tx));
        let b = Expr::func(&FuncSymbol::new("b", tx));
        let d = Expr::func(&FuncSymbol::new("d", tx));
        let f = &(&(&a * &Expr::y().pow(2)) + &(&b * &Expr::y())) + &d;
        assert_eq!(f.to_string(), "a*y^2 + b*y + d");
    }

    #[test]
    fn renders_coefficients_and_derivatives() {
        let f = FuncSymbol::new("f", Deps::ALL);
        let e = &Expr::ratio(-1, 2) * &(&Expr::eps() * &Expr::deriv(&f, &[Coordinate::X, Coordinate::X]));
        assert_eq!(e.to_string(), "-1/2*eps*D[f;x,x]");
        assert_eq!(e.to_text(), "-1/2*eps*f_xx");
        assert_eq!(Expr::zero().to_string(), "0");
        assert_eq!(Expr::ratio(3, 4).to_string(), "3/4");
        assert_eq!((&Expr::t() - &Expr::one()).to_string(), "t - 1");
    }
}
