use std::collections::BTreeMap;

use super::atom::{Coordinate, Deps, FuncSymbol, EPS};
use super::error::ExprError;
use super::parse::{self, Diagnostic};
use super::poly::Expr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Declaration {
    Function(FuncSymbol),
    Parameter,
}

/// Declaration table for function symbols and parameters. Coordinates are
/// always in scope; `eps` is always a parameter.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context {
    decls: BTreeMap<String, Declaration>,
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    fn insert(&mut self, name: &str, decl: Declaration) -> Result<(), ExprError> {
        if Coordinate::from_name(name).is_some() || name == "D" || name == EPS {
            return Err(ExprError::ReservedName(name.to_string()));
        }
        if !is_identifier(name) {
            return Err(ExprError::InvalidDeclaration(name.to_string()));
        }
        match self.decls.get(name) {
            Some(existing) if *existing != decl => {
                Err(ExprError::ConflictingDeclaration(name.to_string()))
            }
            Some(_) => Ok(()),
            None => {
                self.decls.insert(name.to_string(), decl);
                Ok(())
            }
        }
    }

    pub fn declare_function(&mut self, name: &str, deps: Deps) -> Result<FuncSymbol, ExprError> {
        let sym = FuncSymbol::new(name, deps);
        self.insert(name, Declaration::Function(sym.clone()))?;
        Ok(sym)
    }

    pub fn declare_parameter(&mut self, name: &str) -> Result<(), ExprError> {
        self.insert(name, Declaration::Parameter)
    }

    /// Parses `name:(t,x)`, `name:()` or `name:param`.
    pub fn declare(&mut self, spec: &str) -> Result<(), ExprError> {
        let invalid = || ExprError::InvalidDeclaration(spec.to_string());
        let (name, rhs) = spec.split_once(':').ok_or_else(invalid)?;
        let name = name.trim();
        let rhs: String = rhs.chars().filter(|c| !c.is_whitespace()).collect();
        if rhs == "param" {
            return self.declare_parameter(name);
        }
        let inner = rhs
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(invalid)?;
        let mut deps = Deps::NONE;
        if !inner.is_empty() {
            for part in inner.split(',') {
                let c = Coordinate::from_name(part).ok_or_else(invalid)?;
                deps = deps.with(c);
            }
        }
        self.declare_function(name, deps).map(|_| ())
    }

    pub fn get(&self, name: &str) -> Option<&Declaration> {
        self.decls.get(name)
    }

    pub fn function(&self, name: &str) -> Option<&FuncSymbol> {
        match self.decls.get(name) {
            Some(Declaration::Function(f)) => Some(f),
            _ => None,
        }
    }

    pub fn is_parameter(&self, name: &str) -> bool {
        name == EPS || matches!(self.decls.get(name), Some(Declaration::Parameter))
    }

    /// Declarations in the same `name:(deps)` / `name:param` syntax accepted
    /// by [`Context::declare`], sorted by name.
    pub fn declaration_strings(&self) -> Vec<String> {
        self.decls
            .iter()
            .map(|(name, decl)| match decl {
                Declaration::Function(f) => format!("{name}:{}", f.deps()),
                Declaration::Parameter => format!("{name}:param"),
            })
            .collect()
    }

    pub fn parse(&self, text: &str) -> Result<Expr, ExprError> {
        parse::parse(text, self)
    }

    pub fn parse_with_diagnostics(&self, text: &str) -> Result<(Expr, Vec<Diagnostic>), ExprError> {
        parse::parse_with_diagnostics(text, self)
    }
}
