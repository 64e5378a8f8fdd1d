//! Exact symbolic expressions over the chart coordinates `t, x, y`,
//! parameters and formal derivatives of declared function symbols.

mod atom;
mod context;
mod display;
mod error;
mod parse;
mod poly;

pub use atom::{Atom, Coordinate, DerivAtom, Deps, FuncSymbol, EPS};
pub use context::{Context, Declaration};
pub use display::Style;
pub use error::ExprError;
pub use parse::{parse, parse_with_diagnostics, Diagnostic};
pub use poly::{rational, Bindings, Expr, Monomial, Rational};
