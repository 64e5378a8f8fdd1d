use crate::expr::{Coordinate, Expr};

use super::metric::Metric;
use super::tensor::{pair_index, pair_label, SymTensor2};

/// Christoffel symbols `Γ^k_{ij}` of the Levi-Civita connection, stored once
/// per unordered `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    entries: [SymTensor2; 3],
}

impl Connection {
    pub fn get(&self, k: Coordinate, i: Coordinate, j: Coordinate) -> &Expr {
        self.entries[k.index()].get(i, j)
    }

    /// Components of the upper index `k`, as a symmetric tensor in `(i, j)`.
    pub fn upper(&self, k: Coordinate) -> &SymTensor2 {
        &self.entries[k.index()]
    }

    /// `∇_{∂_i} ∂_j` as its three components along `∂_t, ∂_x, ∂_y`.
    pub fn covariant(&self, i: Coordinate, j: Coordinate) -> [Expr; 3] {
        Coordinate::ALL.map(|k| self.get(k, i, j).clone())
    }

    /// Entries keyed `"k,ij"`, e.g. `"t,ty"` for `Γ^t_{ty}`.
    pub fn labeled(&self) -> impl Iterator<Item = (String, &Expr)> {
        Coordinate::ALL.into_iter().flat_map(move |k| {
            self.entries[k.index()]
                .labeled()
                .map(move |(pair, e)| (format!("{k},{pair}"), e))
        })
    }
}

pub fn christoffel(m: &Metric) -> Connection {
    let g = m.g();
    let ginv = m.ginv();
    let half = Expr::ratio(1, 2);
    let entries = Coordinate::ALL.map(|k| {
        SymTensor2::from_fn(|i, j| {
            let sum: Expr = Coordinate::ALL
                .iter()
                .map(|&l| {
                    let bracket = &(&g.get(j, l).differentiate(i) + &g.get(i, l).differentiate(j))
                        - &g.get(i, j).differentiate(l);
                    ginv.get(k, l) * &bracket
                })
                .sum();
            &half * &sum
        })
    });
    Connection { entries }
}

const ORDERED: [(Coordinate, Coordinate); 3] = {
    use Coordinate::{T, X, Y};
    [(T, X), (T, Y), (X, Y)]
};

fn ordered_index(i: Coordinate, j: Coordinate) -> usize {
    match pair_index(i, j) {
        1 => 0,
        2 => 1,
        _ => 2,
    }
}

/// The (1,3) curvature tensor. `get(l, k, i, j)` is the `∂_l` component of
/// `R(∂_i, ∂_j) ∂_k`; only `i < j` is stored, the rest follows from
/// antisymmetry.
///
/// Sign convention: `R(X, Y) = ∇_Y ∇_X - ∇_X ∇_Y + ∇_{[X,Y]}`, so that in
/// coordinates
/// `R^l_{kij} = ∂_j Γ^l_{ik} - ∂_i Γ^l_{jk} + Γ^m_{ik} Γ^l_{jm} - Γ^m_{jk} Γ^l_{im}`.
/// With this sign `R(∂_t, ∂_y) ∂_t = -½ f_tt ∂_t` and the contraction in
/// [`ricci`] yields `ρ_ty = ½ f_tt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureTensor {
    // [l][k][ordered pair]
    entries: [[[Expr; 3]; 3]; 3],
}

impl CurvatureTensor {
    pub fn get(&self, l: Coordinate, k: Coordinate, i: Coordinate, j: Coordinate) -> Expr {
        if i == j {
            return Expr::zero();
        }
        let e = &self.entries[l.index()][k.index()][ordered_index(i, j)];
        if i < j {
            e.clone()
        } else {
            -e
        }
    }

    /// `R(∂_i, ∂_j) ∂_k` as its components along `∂_t, ∂_x, ∂_y`.
    pub fn apply(&self, i: Coordinate, j: Coordinate, k: Coordinate) -> [Expr; 3] {
        Coordinate::ALL.map(|l| self.get(l, k, i, j))
    }

    /// Lowered component `R_{ijkl} = g(R(∂_i, ∂_j) ∂_k, ∂_l)`.
    pub fn lowered(&self, m: &Metric, i: Coordinate, j: Coordinate, k: Coordinate, l: Coordinate) -> Expr {
        Coordinate::ALL
            .iter()
            .map(|&n| &self.get(n, k, i, j) * m.g().get(n, l))
            .sum()
    }

    /// Stored entries keyed `"l|k,ij"` with `i < j`.
    pub fn labeled(&self) -> impl Iterator<Item = (String, &Expr)> {
        Coordinate::ALL.into_iter().flat_map(move |l| {
            Coordinate::ALL.into_iter().flat_map(move |k| {
                ORDERED.iter().enumerate().map(move |(p, &(i, j))| {
                    (
                        format!("{l}|{k},{}", pair_label(i, j)),
                        &self.entries[l.index()][k.index()][p],
                    )
                })
            })
        })
    }
}

pub fn riemann(_m: &Metric, c: &Connection) -> CurvatureTensor {
    let entries = Coordinate::ALL.map(|l| {
        Coordinate::ALL.map(|k| {
            ORDERED.map(|(i, j)| {
                let derivative = &c.get(l, i, k).differentiate(j) - &c.get(l, j, k).differentiate(i);
                let quadratic: Expr = Coordinate::ALL
                    .iter()
                    .map(|&n| &(c.get(n, i, k) * c.get(l, j, n)) - &(c.get(n, j, k) * c.get(l, i, n)))
                    .sum();
                &derivative + &quadratic
            })
        })
    });
    CurvatureTensor { entries }
}

/// `ρ_{jk} = Σ_i R^i_{kji}`, i.e. the trace of `V ↦ R(∂_j, V) ∂_k`.
pub fn ricci(_m: &Metric, r: &CurvatureTensor) -> SymTensor2 {
    SymTensor2::from_fn(|j, k| Coordinate::ALL.iter().map(|&i| r.get(i, k, j, i)).sum())
}

pub fn scalar_curvature(m: &Metric, ric: &SymTensor2) -> Expr {
    Coordinate::ALL
        .iter()
        .flat_map(|&i| Coordinate::ALL.iter().map(move |&j| (i, j)))
        .map(|(i, j)| m.ginv().get(i, j) * ric.get(i, j))
        .sum()
}

/// Full local geometry of one metric.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub metric: Metric,
    pub connection: Connection,
    pub curvature: CurvatureTensor,
    pub ricci: SymTensor2,
    pub scalar: Expr,
}

impl Geometry {
    pub fn compute(metric: Metric) -> Geometry {
        let connection = christoffel(&metric);
        let curvature = riemann(&metric, &connection);
        let ricci = ricci(&metric, &curvature);
        let scalar = scalar_curvature(&metric, &ricci);
        Geometry {
            metric,
            connection,
            curvature,
            ricci,
            scalar,
        }
    }
}
