use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::atom::{Atom, Coordinate, DerivAtom, Deps, FuncSymbol, EPS};
use super::error::ExprError;

pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Product of atoms with positive powers, sorted by atom.
///
/// Monomials are ordered by total degree first, then lexicographically on the
/// sorted `(atom, power)` sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Atom, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn atom(atom: Atom) -> Monomial {
        Monomial(vec![(atom, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, p)| p).sum()
    }

    pub fn factors(&self) -> &[(Atom, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn power_of(&self, atom: &Atom) -> u32 {
        self.0
            .binary_search_by(|(a, _)| a.cmp(atom))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        let mut m = Monomial(out);
        m.reduce_eps();
        m
    }

    fn reduce_eps(&mut self) {
        self.0.retain_mut(|(a, p)| {
            if a.is_eps() {
                *p %= 2;
            }
            *p > 0
        });
    }

    /// The monomial with the factor at `idx` lowered by one power.
    fn without_one(&self, idx: usize) -> Monomial {
        let mut v = self.0.clone();
        if v[idx].1 == 1 {
            v.remove(idx);
        } else {
            v[idx].1 -= 1;
        }
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in coordinates, parameters and derivative atoms with exact
/// rational coefficients, always held in canonical form: fully expanded, like
/// terms merged, no zero coefficients, `eps` with power at most one.
///
/// Structural equality of two `Expr` values is semantic equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Expr {
    terms: BTreeMap<Monomial, Rational>,
}

/// Parameter values used by [`Expr::evaluate`].
pub type Bindings = BTreeMap<String, Rational>;

impl Expr {
    pub fn zero() -> Expr {
        Expr::default()
    }

    pub fn one() -> Expr {
        Expr::constant(Rational::one())
    }

    pub fn constant(q: Rational) -> Expr {
        Expr::term(q, Monomial::one())
    }

    pub fn integer(n: i64) -> Expr {
        Expr::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Expr {
        Expr::constant(rational(numer, denom))
    }

    pub fn term(coeff: Rational, monomial: Monomial) -> Expr {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        Expr { terms }
    }

    pub fn atom(atom: Atom) -> Expr {
        Expr::term(Rational::one(), Monomial::atom(atom))
    }

    pub fn coord(c: Coordinate) -> Expr {
        Expr::atom(Atom::Coord(c))
    }

    pub fn t() -> Expr {
        Expr::coord(Coordinate::T)
    }

    pub fn x() -> Expr {
        Expr::coord(Coordinate::X)
    }

    pub fn y() -> Expr {
        Expr::coord(Coordinate::Y)
    }

    pub fn param(name: &str) -> Expr {
        Expr::atom(Atom::Param(Arc::from(name)))
    }

    pub fn eps() -> Expr {
        Expr::param(EPS)
    }

    /// The undifferentiated function symbol.
    pub fn func(sym: &FuncSymbol) -> Expr {
        Expr::deriv(sym, &[])
    }

    /// `D[sym; orders]`, which is zero when an order is not a dependency.
    pub fn deriv(sym: &FuncSymbol, orders: &[Coordinate]) -> Expr {
        match DerivAtom::new(sym.clone(), orders) {
            Some(d) => Expr::atom(Atom::Deriv(d)),
            None => Expr::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn equals(&self, other: &Expr) -> bool {
        (self - other).is_zero()
    }

    /// The rational value if the expression has no atoms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, q) = self.terms.iter().next().unwrap();
                m.is_one().then(|| q.clone())
            }
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The term with the greatest monomial, i.e. the first one rendered.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, q: &Rational) -> Expr {
        if q.is_zero() {
            return Expr::zero();
        }
        Expr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * q))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Expr {
        let mut acc = Expr::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, monomial: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Formal partial derivative: linear, Leibniz over products, derivative
    /// atoms gain one order (or vanish outside their dependencies).
    pub fn differentiate(&self, c: Coordinate) -> Expr {
        let mut out = Expr::zero();
        for (m, q) in &self.terms {
            for (idx, (atom, power)) in m.factors().iter().enumerate() {
                let d_atom = match atom {
                    Atom::Coord(a) if *a == c => Monomial::one(),
                    Atom::Coord(_) | Atom::Param(_) => continue,
                    Atom::Deriv(d) => match d.differentiate(c) {
                        Some(nd) => Monomial::atom(Atom::Deriv(nd)),
                        None => continue,
                    },
                };
                let rest = m.without_one(idx);
                let coeff = q * Rational::from_integer(BigInt::from(*power));
                out.add_term(rest.mul(&d_atom), coeff);
            }
        }
        out
    }

    pub fn differentiate_by(&self, orders: &[Coordinate]) -> Expr {
        orders
            .iter()
            .fold(self.clone(), |e, &c| e.differentiate(c))
    }

    /// Coordinates the expression may depend on: explicit coordinates plus the
    /// declared dependencies of every function symbol.
    pub fn free_coordinates(&self) -> Deps {
        let mut deps = Deps::NONE;
        for m in self.terms.keys() {
            for (atom, _) in m.factors() {
                match atom {
                    Atom::Coord(c) => deps = deps.with(*c),
                    Atom::Deriv(d) => deps = deps.union(d.symbol().deps()),
                    Atom::Param(_) => {}
                }
            }
        }
        deps
    }

    pub fn function_symbols(&self) -> BTreeSet<FuncSymbol> {
        self.atoms()
            .filter_map(|a| match a {
                Atom::Deriv(d) => Some(d.symbol().clone()),
                _ => None,
            })
            .collect()
    }

    pub fn parameters(&self) -> BTreeSet<String> {
        self.atoms()
            .filter_map(|a| match a {
                Atom::Param(p) => Some(p.to_string()),
                _ => None,
            })
            .collect()
    }

    fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(a, _)| a))
    }

    /// Rebuilds the expression with selected atoms replaced. `replace` returns
    /// `None` to keep an atom as is.
    pub fn map_atoms<F>(&self, mut replace: F) -> Expr
    where
        F: FnMut(&Atom) -> Option<Expr>,
    {
        let mut cache: HashMap<Atom, Option<Expr>> = HashMap::new();
        let mut out = Expr::zero();
        for (m, q) in &self.terms {
            let mut kept = Monomial::one();
            let mut product = Expr::constant(q.clone());
            for (atom, power) in m.factors() {
                let image = cache
                    .entry(atom.clone())
                    .or_insert_with(|| replace(atom))
                    .clone();
                match image {
                    None => kept = kept.mul(&Monomial(vec![(atom.clone(), *power)])),
                    Some(e) => product = &product * &e.pow(*power),
                }
                if product.is_zero() {
                    break;
                }
            }
            for (km, kq) in product.terms {
                out.add_term(km.mul(&kept), kq);
            }
        }
        out
    }

    /// Replaces `sym` and all of its derivative atoms by the corresponding
    /// derivatives of `replacement`.
    pub fn substitute(&self, sym: &FuncSymbol, replacement: &Expr) -> Result<Expr, ExprError> {
        let used = replacement.free_coordinates();
        if let Some(c) = used.iter().find(|&c| !sym.deps().contains(c)) {
            return Err(ExprError::DependencyViolation {
                symbol: sym.name().to_string(),
                coordinate: c.name().to_string(),
            });
        }
        Ok(self.map_atoms(|atom| match atom {
            Atom::Deriv(d) if d.symbol() == sym => Some(replacement.differentiate_by(d.orders())),
            _ => None,
        }))
    }

    pub fn substitute_param(&self, name: &str, value: &Expr) -> Expr {
        self.map_atoms(|atom| match atom {
            Atom::Param(p) if &**p == name => Some(value.clone()),
            _ => None,
        })
    }

    /// Exact evaluation at a rational point. Requires all function symbols to
    /// have been substituted away and every parameter to be bound.
    pub fn evaluate_exact(
        &self,
        point: &[Rational; 3],
        params: &Bindings,
    ) -> Result<Rational, ExprError> {
        if let Some(e) = params.get(EPS) {
            if e.abs() != Rational::one() {
                return Err(ExprError::InvalidEps);
            }
        }
        let mut acc = Rational::zero();
        for (m, q) in &self.terms {
            let mut value = q.clone();
            for (atom, power) in m.factors() {
                let base = match atom {
                    Atom::Coord(c) => &point[c.index()],
                    Atom::Param(p) => params
                        .get(&**p)
                        .ok_or_else(|| ExprError::UnboundParameter(p.to_string()))?,
                    Atom::Deriv(d) => {
                        return Err(ExprError::ResidualFunction(d.symbol().name().to_string()))
                    }
                };
                value *= num_traits::pow(base.clone(), *power as usize);
            }
            acc += value;
        }
        Ok(acc)
    }

    /// Float evaluation. Inputs are converted to exact rationals, the
    /// polynomial is folded exactly, and the result is rounded once.
    pub fn evaluate(
        &self,
        point: [f64; 3],
        params: &BTreeMap<String, f64>,
    ) -> Result<f64, ExprError> {
        let exact_point = point.map(float_to_rational);
        let exact_params: Bindings = params
            .iter()
            .map(|(k, v)| (k.clone(), float_to_rational(*v)))
            .collect();
        let value = self.evaluate_exact(&exact_point, &exact_params)?;
        Ok(value.to_f64().unwrap_or(f64::NAN))
    }
}

fn float_to_rational(v: f64) -> Rational {
    Rational::from_float(v).unwrap_or_else(Rational::zero)
}

impl From<Coordinate> for Expr {
    fn from(c: Coordinate) -> Expr {
        Expr::coord(c)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::integer(n)
    }
}

impl From<Rational> for Expr {
    fn from(q: Rational) -> Expr {
        Expr::constant(q)
    }
}

impl AddAssign<&Expr> for Expr {
    fn add_assign(&mut self, rhs: &Expr) {
        for (m, q) in &rhs.terms {
            self.add_term(m.clone(), q.clone());
        }
    }
}

impl Add<&Expr> for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Expr> for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.add_term(m.clone(), -q);
        }
        out
    }
}

impl Mul<&Expr> for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (m1, q1) in &self.terms {
            for (m2, q2) in &rhs.terms {
                out.add_term(m1.mul(m2), q1 * q2);
            }
        }
        out
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr {
            terms: self
                .terms
                .iter()
                .map(|(m, q)| (m.clone(), -q))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                (&self).$method(rhs)
            }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |mut acc, e| {
            acc += &e;
            acc
        })
    }
}
