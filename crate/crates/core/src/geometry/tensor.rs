use std::fmt;
use std::ops::{Add, Index, Sub};

use crate::expr::{Coordinate, Expr};

/// Unordered coordinate pairs in storage order.
pub const PAIRS: [(Coordinate, Coordinate); 6] = {
    use Coordinate::{T, X, Y};
    [(T, T), (T, X), (T, Y), (X, X), (X, Y), (Y, Y)]
};

pub fn pair_index(i: Coordinate, j: Coordinate) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    match (a.index(), b.index()) {
        (0, 0) => 0,
        (0, 1) => 1,
        (0, 2) => 2,
        (1, 1) => 3,
        (1, 2) => 4,
        _ => 5,
    }
}

pub fn pair_label(i: Coordinate, j: Coordinate) -> String {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    format!("{a}{b}")
}

/// Symmetric rank-2 tensor with one stored entry per unordered index pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymTensor2 {
    entries: [Expr; 6],
}

impl SymTensor2 {
    pub fn zero() -> SymTensor2 {
        SymTensor2::default()
    }

    pub fn from_fn(mut f: impl FnMut(Coordinate, Coordinate) -> Expr) -> SymTensor2 {
        SymTensor2 {
            entries: PAIRS.map(|(i, j)| f(i, j)),
        }
    }

    pub fn get(&self, i: Coordinate, j: Coordinate) -> &Expr {
        &self.entries[pair_index(i, j)]
    }

    pub fn set(&mut self, i: Coordinate, j: Coordinate, value: Expr) {
        self.entries[pair_index(i, j)] = value;
    }

    pub fn map(&self, f: impl FnMut(&Expr) -> Expr) -> SymTensor2 {
        SymTensor2 {
            entries: self.entries.each_ref().map(f),
        }
    }

    /// Entries with their labels (`"tt"`, `"tx"`, ...), in storage order.
    pub fn labeled(&self) -> impl Iterator<Item = (String, &Expr)> {
        PAIRS
            .iter()
            .zip(self.entries.iter())
            .map(|(&(i, j), e)| (pair_label(i, j), e))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((Coordinate, Coordinate), &Expr)> {
        PAIRS.iter().copied().zip(self.entries.iter())
    }

    pub fn nonzero(&self) -> Vec<(String, Expr)> {
        self.labeled()
            .filter(|(_, e)| !e.is_zero())
            .map(|(l, e)| (l, e.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Expr::is_zero)
    }
}

impl Index<(Coordinate, Coordinate)> for SymTensor2 {
    type Output = Expr;
    fn index(&self, (i, j): (Coordinate, Coordinate)) -> &Expr {
        self.get(i, j)
    }
}

impl Add<&SymTensor2> for &SymTensor2 {
    type Output = SymTensor2;
    fn add(self, rhs: &SymTensor2) -> SymTensor2 {
        SymTensor2::from_fn(|i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl Sub<&SymTensor2> for &SymTensor2 {
    type Output = SymTensor2;
    fn sub(self, rhs: &SymTensor2) -> SymTensor2 {
        SymTensor2::from_fn(|i, j| self.get(i, j) - rhs.get(i, j))
    }
}

impl fmt::Display for SymTensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, e) in self.labeled() {
            writeln!(f, "{label}: {e}")?;
        }
        Ok(())
    }
}
