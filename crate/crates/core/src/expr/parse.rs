//! Recursive-descent parser for the ASCII expression grammar.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | factor
//! factor := base ('^' NAT)?
//! base   := RATIONAL | IDENT | 'D[' IDENT (';' COORD (',' COORD)*)? ']' | '(' expr ')'
//! ```
//!
//! `f_tx` is accepted as shorthand for `D[f;t,x]` when `f` is a declared
//! function symbol. Unary minus binds looser than `^`, so `-x^2` is `-(x^2)`.

use num_bigint::BigInt;

use super::atom::{Coordinate, FuncSymbol};
use super::context::{Context, Declaration};
use super::error::ExprError;
use super::poly::{Expr, Rational};

/// A non-fatal finding, such as a derivative with respect to a coordinate the
/// symbol does not depend on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub pos: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
            toks.push((pos, Tok::Int(digits.parse().expect("ascii digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let ident: String = chars[start..i].iter().map(|(_, c)| c).collect();
            toks.push((pos, Tok::Ident(ident)));
        } else if "+-*/^()[];,".contains(c) {
            toks.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ExprError::Syntax {
                pos,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
    ctx: &'a Context,
    diagnostics: Vec<Diagnostic>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else {
            self.factor()
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let base = self.base()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.idx += 1;
                    let n: u32 = match n.try_into() {
                        Ok(n) => n,
                        Err(_) => return self.error("exponent too large"),
                    };
                    Ok(base.pow(n))
                }
                _ => self.error("expected a natural-number exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Expr, ExprError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.idx += 1;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if d != BigInt::from(0) => {
                            self.idx += 1;
                            Ok(Expr::constant(Rational::new(n, d)))
                        }
                        Some(Tok::Int(_)) => self.error("zero denominator"),
                        _ => self.error("expected an integer denominator"),
                    }
                } else {
                    Ok(Expr::constant(Rational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) if name == "D" && self.toks.get(self.idx + 1).map(|t| &t.1) == Some(&Tok::Sym('[')) => {
                self.idx += 2;
                self.bracket_derivative()
            }
            Some(Tok::Ident(name)) => {
                self.idx += 1;
                self.identifier(&name, pos)
            }
            Some(Tok::Sym('(')) => {
                self.idx += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(_) => self.error("unexpected token"),
            None => self.error("unexpected end of input"),
        }
    }

    fn bracket_derivative(&mut self) -> Result<Expr, ExprError> {
        let pos = self.pos();
        let name = match self.peek().cloned() {
            Some(Tok::Ident(n)) => {
                self.idx += 1;
                n
            }
            _ => return self.error("expected a function symbol"),
        };
        let sym = match self.ctx.get(&name) {
            Some(Declaration::Function(f)) => f.clone(),
            _ => return Err(ExprError::UnknownIdentifier { name, pos }),
        };
        let mut orders = Vec::new();
        if self.eat(';') {
            loop {
                match self.peek().cloned() {
                    Some(Tok::Ident(c)) if Coordinate::from_name(&c).is_some() => {
                        self.idx += 1;
                        orders.push(Coordinate::from_name(&c).unwrap());
                    }
                    _ => return self.error("expected a coordinate"),
                }
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect(']')?;
        Ok(self.derivative(&sym, &orders, pos))
    }

    fn derivative(&mut self, sym: &FuncSymbol, orders: &[Coordinate], pos: usize) -> Expr {
        if let Some(c) = orders.iter().find(|&&c| !sym.deps().contains(c)) {
            self.diagnostics.push(Diagnostic {
                pos,
                message: format!(
                    "`{}` does not depend on `{c}`; its derivative is zero",
                    sym.name()
                ),
            });
        }
        Expr::deriv(sym, orders)
    }

    fn identifier(&mut self, name: &str, pos: usize) -> Result<Expr, ExprError> {
        if let Some(c) = Coordinate::from_name(name) {
            return Ok(Expr::coord(c));
        }
        if self.ctx.is_parameter(name) {
            return Ok(Expr::param(name));
        }
        if let Some(f) = self.ctx.function(name) {
            return Ok(Expr::func(f));
        }
        if let Some((base, suffix)) = name.rsplit_once('_') {
            let orders: Option<Vec<Coordinate>> = suffix.chars().map(Coordinate::from_char).collect();
            if let (Some(f), Some(orders)) = (self.ctx.function(base), orders) {
                if !orders.is_empty() {
                    let f = f.clone();
                    return Ok(self.derivative(&f, &orders, pos));
                }
            }
        }
        Err(ExprError::UnknownIdentifier {
            name: name.to_string(),
            pos,
        })
    }
}

pub fn parse_with_diagnostics(
    text: &str,
    ctx: &Context,
) -> Result<(Expr, Vec<Diagnostic>), ExprError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        idx: 0,
        end: text.len(),
        ctx,
        diagnostics: Vec::new(),
    };
    let e = p.expr()?;
    if p.idx != p.toks.len() {
        return p.error("unexpected trailing input");
    }
    Ok((e, p.diagnostics))
}

pub fn parse(text: &str, ctx: &Context) -> Result<Expr, ExprError> {
    parse_with_diagnostics(text, ctx).map(|(e, _)| e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Deps;
    use Coordinate::{T, X, Y};

    fn ctx() -> Context {
        let mut c = Context::new();
        c.declare("f:(t,x,y)").unwrap();
        c.declare("a:(t,x)").unwrap();
        c.declare("b:(t,x)").unwrap();
        c.declare("d:(t,x)").unwrap();
        c.declare("K:(y)").unwrap();
        c.declare("lambda:param").unwrap();
        c
    }

    #[test]
    fn half_times_derivative() {
        let c = ctx();
        let f = c.function("f").unwrap();
        let e = parse("1/2 * D[f;t]", &c).unwrap();
        assert_eq!(e, &Expr::ratio(1, 2) * &Expr::deriv(f, &[T]));
    }

    #[test]
    fn eps_times_eps() {
        assert_eq!(parse("eps*eps", &ctx()).unwrap(), Expr::one());
    }

    #[test]
    fn quadratic_shape_has_three_terms() {
        let e = parse("a*y^2 + b*y + d", &ctx()).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e.to_string(), "a*y^2 + b*y + d");
    }

    #[test]
    fn subscript_sugar_matches_brackets() {
        let c = ctx();
        assert_eq!(parse("f_tx", &c).unwrap(), parse("D[f;x,t]", &c).unwrap());
        assert_eq!(parse("f_tx", &c).unwrap(), parse("D[f;t,x]", &c).unwrap());
        assert_eq!(parse("D[f]", &c).unwrap(), parse("f", &c).unwrap());
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let c = ctx();
        assert_eq!(parse("-x^2", &c).unwrap(), -&Expr::x().pow(2));
        assert_eq!(parse("(-x)^2", &c).unwrap(), Expr::x().pow(2));
        assert_eq!(parse("2*-y", &c).unwrap(), &Expr::integer(-2) * &Expr::y());
    }

    #[test]
    fn non_dependency_derivative_warns_and_vanishes() {
        let c = ctx();
        let (e, diags) = parse_with_diagnostics("K_t + D[a;y]", &c).unwrap();
        assert!(e.is_zero());
        assert_eq!(diags.len(), 2);
        assert_eq!(diags[0].pos, 0);
    }

    #[test]
    fn syntax_errors_report_position() {
        let c = ctx();
        assert_eq!(
            parse("x + * y", &c),
            Err(ExprError::Syntax { pos: 4, message: "unexpected token".into() })
        );
        assert!(matches!(parse("x^y", &c), Err(ExprError::Syntax { pos: 2, .. })));
        assert!(matches!(parse("(x", &c), Err(ExprError::Syntax { pos: 2, .. })));
        assert!(matches!(parse("1/0", &c), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse("x $", &c), Err(ExprError::Syntax { pos: 2, .. })));
        assert!(matches!(parse("x y", &c), Err(ExprError::Syntax { pos: 2, .. })));
    }

    #[test]
    fn unknown_identifiers() {
        let c = ctx();
        assert_eq!(
            parse("2*q", &c),
            Err(ExprError::UnknownIdentifier { name: "q".into(), pos: 2 })
        );
        assert!(matches!(parse("D[q;t]", &c), Err(ExprError::UnknownIdentifier { .. })));
        assert!(matches!(parse("f_tz", &c), Err(ExprError::UnknownIdentifier { .. })));
    }

    #[test]
    fn rendering_round_trips() {
        let c = ctx();
        for text in [
            "1/2*f*D[f;t,t] - 1/2*eps*D[f;x,x]",
            "-3*lambda*t^2*y + K_yy - 7/5",
            "(a - b)^3*eps",
        ] {
            let e = parse(text, &c).unwrap();
            assert_eq!(parse(&e.to_string(), &c).unwrap(), e);
            assert_eq!(parse(&e.to_text(), &c).unwrap(), e);
        }
    }

    #[test]
    fn independent_of_t() {
        let mut c = Context::new();
        let k = c.declare_function("K", Deps::of(&[Y])).unwrap();
        assert!(parse("D[K;t]", &c).unwrap().is_zero());
        assert!(!Expr::deriv(&k, &[Y]).is_zero());
        let _ = X;
    }
}
