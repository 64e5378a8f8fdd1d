use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Name of the distinguished sign parameter; canonical forms reduce `eps^2` to `1`.
pub const EPS: &str = "eps";

/// One of the three chart coordinates. The derived order `t < x < y` is used
/// everywhere a coordinate sequence is sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coordinate {
    T,
    X,
    Y,
}

impl Coordinate {
    pub const ALL: [Coordinate; 3] = [Coordinate::T, Coordinate::X, Coordinate::Y];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Coordinate {
        Self::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Coordinate::T => "t",
            Coordinate::X => "x",
            Coordinate::Y => "y",
        }
    }

    pub fn from_name(s: &str) -> Option<Coordinate> {
        match s {
            "t" => Some(Coordinate::T),
            "x" => Some(Coordinate::X),
            "y" => Some(Coordinate::Y),
            _ => None,
        }
    }

    pub fn from_char(c: char) -> Option<Coordinate> {
        match c {
            't' => Some(Coordinate::T),
            'x' => Some(Coordinate::X),
            'y' => Some(Coordinate::Y),
            _ => None,
        }
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A subset of `{t, x, y}`, stored as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Deps(u8);

impl Deps {
    pub const NONE: Deps = Deps(0);
    pub const ALL: Deps = Deps(0b111);

    pub fn of(coords: &[Coordinate]) -> Deps {
        coords.iter().fold(Deps::NONE, |d, &c| d.with(c))
    }

    pub fn contains(self, c: Coordinate) -> bool {
        self.0 & (1 << c.index()) != 0
    }

    pub fn with(self, c: Coordinate) -> Deps {
        Deps(self.0 | (1 << c.index()))
    }

    pub fn union(self, other: Deps) -> Deps {
        Deps(self.0 | other.0)
    }

    pub fn is_subset(self, other: Deps) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Coordinate> {
        Coordinate::ALL.into_iter().filter(move |&c| self.contains(c))
    }
}

impl fmt::Display for Deps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(Coordinate::name).collect();
        write!(f, "({})", names.join(","))
    }
}

/// A declared function symbol such as `f(t,x,y)` or `K(y)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FuncSymbol {
    name: Arc<str>,
    deps: Deps,
}

impl FuncSymbol {
    pub fn new(name: impl Into<Arc<str>>, deps: Deps) -> FuncSymbol {
        FuncSymbol {
            name: name.into(),
            deps,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn deps(&self) -> Deps {
        self.deps
    }
}

/// A formal partial derivative of a function symbol. The derivative orders are
/// kept as a sorted coordinate sequence, so mixed partials commute by
/// construction. An empty sequence is the undifferentiated symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DerivAtom {
    symbol: FuncSymbol,
    orders: Vec<Coordinate>,
}

impl DerivAtom {
    /// Returns `None` when some order lies outside the symbol's dependencies,
    /// i.e. when the derivative is identically zero.
    pub fn new(symbol: FuncSymbol, orders: &[Coordinate]) -> Option<DerivAtom> {
        if orders.iter().any(|&c| !symbol.deps.contains(c)) {
            return None;
        }
        let mut orders = orders.to_vec();
        orders.sort_unstable();
        Some(DerivAtom { symbol, orders })
    }

    pub fn symbol(&self) -> &FuncSymbol {
        &self.symbol
    }

    pub fn orders(&self) -> &[Coordinate] {
        &self.orders
    }

    pub fn differentiate(&self, c: Coordinate) -> Option<DerivAtom> {
        if !self.symbol.deps.contains(c) {
            return None;
        }
        let pos = self.orders.partition_point(|&o| o <= c);
        let mut orders = self.orders.clone();
        orders.insert(pos, c);
        Some(DerivAtom {
            symbol: self.symbol.clone(),
            orders,
        })
    }
}

impl Ord for DerivAtom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.symbol
            .name
            .cmp(&other.symbol.name)
            .then_with(|| self.orders.cmp(&other.orders))
            .then_with(|| self.symbol.deps.cmp(&other.symbol.deps))
    }
}

impl PartialOrd for DerivAtom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Indeterminates of the polynomial ring. Variant order fixes
/// coordinate < parameter < derivative atom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Coord(Coordinate),
    Param(Arc<str>),
    Deriv(DerivAtom),
}

impl Atom {
    pub fn is_eps(&self) -> bool {
        matches!(self, Atom::Param(p) if &**p == EPS)
    }
}
