use crate::expr::{Coordinate, Expr};
use crate::geometry::{christoffel, ricci, riemann, walker_metric, Eps, PAIRS};
use crate::soliton::{residual, SolitonCandidate};

use super::compiled::Compiled;
use super::fd::{self, Mat3};
use super::sampling::{allowed, SamplePlan};
use super::NumericError;

/// Ratio between the outer step used to difference Christoffels and `h`.
pub const OUTER_FACTOR: f64 = 10.0;

/// How sample points are evaluated. Results are identical either way.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, sequential otherwise.
    Parallel,
}

impl Default for Execution {
    fn default() -> Execution {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

pub(crate) fn map_points<T, F>(exec: Execution, points: &[[f64; 3]], f: F) -> Vec<T>
where
    T: Send,
    F: Fn([f64; 3]) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            points.par_iter().map(|p| f(*p)).collect()
        }
        _ => points.iter().map(|p| f(*p)).collect(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TensorDeviation {
    pub tensor: &'static str,
    pub max_abs_dev: f64,
    /// Deviation relative to `max(|value|, 1)`.
    pub max_rel_dev: f64,
    /// Point with the largest deviation relative to its allowance; `None`
    /// when every deviation is zero.
    pub worst_point: Option<[f64; 3]>,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, Default)]
struct Acc {
    max_abs: f64,
    max_rel: f64,
    worst_ratio: f64,
    pass: bool,
}

impl Acc {
    fn new() -> Acc {
        Acc {
            pass: true,
            ..Acc::default()
        }
    }

    fn record(&mut self, tolerance: f64, symbolic: f64, numeric: f64) {
        let dev = (symbolic - numeric).abs();
        self.max_abs = self.max_abs.max(dev);
        self.max_rel = self.max_rel.max(dev / symbolic.abs().max(1.0));
        let ratio = dev / allowed(tolerance, symbolic);
        self.worst_ratio = self.worst_ratio.max(ratio);
        if !(ratio <= 1.0) {
            self.pass = false;
        }
    }
}

fn merge(tensor: &'static str, per_point: &[([f64; 3], Acc)]) -> TensorDeviation {
    let mut out = TensorDeviation {
        tensor,
        max_abs_dev: 0.0,
        max_rel_dev: 0.0,
        worst_point: None,
        pass: true,
    };
    let mut worst = 0.0;
    for (p, acc) in per_point {
        out.max_abs_dev = out.max_abs_dev.max(acc.max_abs);
        out.max_rel_dev = out.max_rel_dev.max(acc.max_rel);
        out.pass &= acc.pass;
        if acc.worst_ratio > worst || (!acc.pass && out.worst_point.is_none()) {
            worst = acc.worst_ratio;
            out.worst_point = Some(*p);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeometryReport {
    pub tensors: Vec<TensorDeviation>,
    pub points: usize,
    pub h: f64,
    pub tolerance: f64,
    pub seed: u64,
    pub pass: bool,
}

fn numeric_eps(eps: Eps) -> Result<f64, NumericError> {
    eps.value().ok_or(NumericError::SymbolicEps)
}

/// `∂_k g_ij` at `p` by central differences, indexed `[k][i][j]`.
pub fn fd_metric_derivatives(f: &Expr, eps: Eps, p: [f64; 3], h: f64) -> Result<[Mat3; 3], NumericError> {
    let e = numeric_eps(eps)?;
    let fc = Compiled::new(f, eps)?;
    Ok(fd::metric_derivatives(&|q| fc.eval(q), e, p, h))
}

struct SymbolicGeometry {
    gamma: Vec<Compiled>,
    riemann: Vec<Compiled>,
    ricci: Vec<Compiled>,
}

fn idx3(a: usize, b: usize, c: usize) -> usize {
    (a * 3 + b) * 3 + c
}

fn compile_geometry(f: &Expr, eps: Eps) -> Result<SymbolicGeometry, NumericError> {
    let m = walker_metric(f, eps);
    let conn = christoffel(&m);
    let curv = riemann(&m, &conn);
    let rho = ricci(&m, &curv);
    let c = Coordinate::from_index;
    let mut gamma = Vec::with_capacity(27);
    let mut rm = Vec::with_capacity(81);
    let mut rc = Vec::with_capacity(9);
    for a in 0..3 {
        for b in 0..3 {
            rc.push(Compiled::new(rho.get(c(a), c(b)), eps)?);
            for d in 0..3 {
                gamma.push(Compiled::new(conn.get(c(a), c(b), c(d)), eps)?);
                for l in 0..3 {
                    rm.push(Compiled::new(&curv.get(c(a), c(b), c(d), c(l)), eps)?);
                }
            }
        }
    }
    Ok(SymbolicGeometry {
        gamma,
        riemann: rm,
        ricci: rc,
    })
}

/// Compares the symbolic Christoffel symbols, curvature and Ricci tensor of
/// `g_f`, evaluated at the plan's points, against the finite-difference
/// pipeline of [`fd`].
pub fn crosscheck_geometry(
    f: &Expr,
    eps: Eps,
    plan: &SamplePlan,
    exec: Execution,
) -> Result<GeometryReport, NumericError> {
    plan.validate()?;
    let e = numeric_eps(eps)?;
    let fc = Compiled::new(f, eps)?;
    let sym = compile_geometry(f, eps)?;
    let (h, tol) = (plan.h, plan.tolerance);
    let fv = |q: [f64; 3]| fc.eval(q);

    let per_point = map_points(exec, &plan.points, |p| {
        let gamma = fd::christoffel(&fv, e, p, h);
        let r = fd::riemann(&fv, e, p, h, OUTER_FACTOR * h);
        let rho = fd::ricci(&r);
        let mut acc = [Acc::new(); 3];
        for a in 0..3 {
            for b in 0..3 {
                acc[2].record(tol, sym.ricci[a * 3 + b].eval(p), rho[a][b]);
                for d in 0..3 {
                    acc[0].record(tol, sym.gamma[idx3(a, b, d)].eval(p), gamma[a][b][d]);
                    for l in 0..3 {
                        acc[1].record(tol, sym.riemann[idx3(a, b, d) * 3 + l].eval(p), r[a][b][d][l]);
                    }
                }
            }
        }
        (p, acc)
    });

    let tensors: Vec<TensorDeviation> = ["christoffel", "riemann", "ricci"]
        .into_iter()
        .enumerate()
        .map(|(i, name)| {
            let column: Vec<([f64; 3], Acc)> = per_point.iter().map(|(p, a)| (*p, a[i])).collect();
            merge(name, &column)
        })
        .collect();
    let pass = tensors.iter().all(|t| t.pass);
    Ok(GeometryReport {
        tensors,
        points: plan.points.len(),
        h,
        tolerance: tol,
        seed: plan.seed,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentResidual {
    pub component: String,
    pub max_abs_numeric: f64,
    /// Largest gap between the numeric and the symbolic residual.
    pub max_abs_dev: f64,
    pub worst_point: Option<[f64; 3]>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub components: Vec<ComponentResidual>,
    pub symbolic_zero: bool,
    /// Every numeric residual entry is within tolerance of zero.
    pub numeric_zero: bool,
    /// The numeric and symbolic verdicts agree.
    pub agree: bool,
    /// Numeric and symbolic residuals agree pointwise within tolerance.
    pub within_tolerance: bool,
    pub pass: bool,
    pub points: usize,
    pub h: f64,
    pub tolerance: f64,
    pub seed: u64,
}

/// Evaluates `L_X g + ρ - λ g` by finite differences and compares it with the
/// symbolic residual. Needs numeric `λ` and `eps` and no free symbols.
pub fn crosscheck_residual(
    cand: &SolitonCandidate,
    plan: &SamplePlan,
    exec: Execution,
) -> Result<ResidualReport, NumericError> {
    plan.validate()?;
    let e = numeric_eps(cand.eps)?;
    let lambda = cand
        .lambda
        .as_constant()
        .map(|q| num_traits::ToPrimitive::to_f64(&q).unwrap_or(f64::NAN))
        .ok_or(NumericError::SymbolicLambda)?;
    let fc = Compiled::new(&cand.f, cand.eps)?;
    let field = [
        Compiled::new(&cand.field.a, cand.eps)?,
        Compiled::new(&cand.field.b, cand.eps)?,
        Compiled::new(&cand.field.c, cand.eps)?,
    ];
    let res = residual(cand);
    let symbolic: Vec<Compiled> = PAIRS
        .iter()
        .map(|(i, j)| Compiled::new(res.get(*i, *j), cand.eps))
        .collect::<Result<_, _>>()?;
    let (h, tol) = (plan.h, plan.tolerance);
    let fv = |q: [f64; 3]| fc.eval(q);
    let component = |k: usize| {
        let c = &field[k];
        move |q: [f64; 3]| c.eval(q)
    };
    let xs = [component(0), component(1), component(2)];

    let per_point = map_points(exec, &plan.points, |p| {
        let lie = fd::lie_derivative(&fv, &xs, e, p, h);
        let rho = fd::ricci(&fd::riemann(&fv, e, p, h, OUTER_FACTOR * h));
        let g = fd::walker_matrix(fv(p), e);
        let mut out = [(0.0, 0.0); 6];
        for (n, (i, j)) in PAIRS.iter().enumerate() {
            let (a, b) = (i.index(), j.index());
            let numeric = lie[a][b] + rho[a][b] - lambda * g[a][b];
            out[n] = (numeric, symbolic[n].eval(p));
        }
        out
    });

    let mut components = Vec::new();
    let mut numeric_zero = true;
    let mut within = true;
    for (n, (i, j)) in PAIRS.iter().enumerate() {
        let mut c = ComponentResidual {
            component: format!("{i}{j}"),
            max_abs_numeric: 0.0,
            max_abs_dev: 0.0,
            worst_point: None,
        };
        let mut worst = 0.0;
        for (p, vals) in plan.points.iter().zip(&per_point) {
            let (numeric, sym) = vals[n];
            c.max_abs_numeric = c.max_abs_numeric.max(numeric.abs());
            numeric_zero &= numeric.abs() <= tol;
            let dev = (numeric - sym).abs();
            c.max_abs_dev = c.max_abs_dev.max(dev);
            let ratio = dev / allowed(tol, sym);
            within &= ratio <= 1.0;
            if ratio > worst {
                worst = ratio;
                c.worst_point = Some(*p);
            }
        }
        components.push(c);
    }
    let symbolic_zero = res.is_zero();
    let agree = symbolic_zero == numeric_zero;
    Ok(ResidualReport {
        components,
        symbolic_zero,
        numeric_zero,
        agree,
        within_tolerance: within,
        pass: agree && within,
        points: plan.points.len(),
        h,
        tolerance: tol,
        seed: plan.seed,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub h: f64,
    /// Median over points of `dev(h/2) / dev(h)` for the Christoffel symbols.
    pub christoffel_median_ratio: Option<f64>,
    pub ricci_median_ratio: Option<f64>,
    /// Points whose deviation at `h` was large enough to measure a ratio.
    pub samples: usize,
}

/// Deviations below this are treated as rounding noise and not used for
/// ratio estimates.
const RATIO_FLOOR: f64 = 1e-11;

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) })
}

/// Halves the plan's step and reports how the finite-difference error of the
/// Christoffel symbols and the Ricci tensor shrinks; second-order differences
/// give ratios near 1/4.
pub fn convergence(f: &Expr, eps: Eps, plan: &SamplePlan, exec: Execution) -> Result<ConvergenceReport, NumericError> {
    plan.validate()?;
    let e = numeric_eps(eps)?;
    let fc = Compiled::new(f, eps)?;
    let sym = compile_geometry(f, eps)?;
    let fv = |q: [f64; 3]| fc.eval(q);
    let deviations = |p: [f64; 3], h: f64| {
        let gamma = fd::christoffel(&fv, e, p, h);
        let rho = fd::ricci(&fd::riemann(&fv, e, p, h, OUTER_FACTOR * h));
        let mut dg: f64 = 0.0;
        let mut dr: f64 = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                dr = dr.max((sym.ricci[a * 3 + b].eval(p) - rho[a][b]).abs());
                for d in 0..3 {
                    dg = dg.max((sym.gamma[idx3(a, b, d)].eval(p) - gamma[a][b][d]).abs());
                }
            }
        }
        (dg, dr)
    };
    let per_point = map_points(exec, &plan.points, |p| {
        let (g1, r1) = deviations(p, plan.h);
        let (g2, r2) = deviations(p, plan.h / 2.0);
        (
            (g1 > RATIO_FLOOR).then(|| g2 / g1),
            (r1 > RATIO_FLOOR).then(|| r2 / r1),
        )
    });
    let gammas: Vec<f64> = per_point.iter().filter_map(|(g, _)| *g).collect();
    let riccis: Vec<f64> = per_point.iter().filter_map(|(_, r)| *r).collect();
    Ok(ConvergenceReport {
        h: plan.h,
        samples: gammas.len(),
        christoffel_median_ratio: median(gammas),
        ricci_median_ratio: median(riccis),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Context;
    use crate::geometry::VectorField;

    fn parse(s: &str) -> Expr {
        Context::new().parse(s).unwrap()
    }

    #[test]
    fn metric_derivative_examples() {
        let dg = fd_metric_derivatives(&parse("t^2"), Eps::Plus, [1.0, 0.0, 0.0], 1e-4).unwrap();
        assert!((dg[0][2][2] - 2.0).abs() < 1e-6);
        let dg = fd_metric_derivatives(&parse("5/3"), Eps::Plus, [0.4, 1.0, -1.0], 1e-4).unwrap();
        assert!(dg.iter().flatten().flatten().all(|v| v.abs() < 1e-10));
        let dg = fd_metric_derivatives(&parse("y"), Eps::Minus, [0.4, 1.0, -1.0], 1e-4).unwrap();
        assert!((dg[2][2][2] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn geometry_example_passes() {
        let plan = SamplePlan::seeded(100, 7);
        let report = crosscheck_geometry(&parse("t^2*y + x^2"), Eps::Plus, &plan, Execution::default()).unwrap();
        assert!(report.pass, "{report:?}");
        let zero = crosscheck_geometry(&Expr::zero(), Eps::Minus, &plan, Execution::default()).unwrap();
        assert!(zero.tensors.iter().all(|t| t.max_abs_dev == 0.0 && t.worst_point.is_none()));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let plan = SamplePlan::seeded(20, 3);
        let f = parse("t^3*x - 1/2*x*y^2 + t*y");
        let a = crosscheck_geometry(&f, Eps::Minus, &plan, Execution::Sequential).unwrap();
        let b = crosscheck_geometry(&f, Eps::Minus, &plan, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn residual_examples() {
        let plan = SamplePlan::seeded(50, 11);
        let lambda = Expr::integer(2);
        let field = VectorField::new(parse("2*t"), parse("x"), Expr::zero());
        let cand = SolitonCandidate::new(Expr::zero(), field, lambda, Eps::Plus);
        let r = crosscheck_residual(&cand, &plan, Execution::default()).unwrap();
        assert!(r.pass && r.symbolic_zero && r.numeric_zero);
        assert!(r.components.iter().all(|c| c.max_abs_numeric <= 1e-9));

        let cand = SolitonCandidate::new(parse("t^2"), VectorField::zero(), Expr::zero(), Eps::Plus);
        let r = crosscheck_residual(&cand, &plan, Execution::default()).unwrap();
        assert!(r.pass && !r.symbolic_zero);
        let ty = r.components.iter().find(|c| c.component == "ty").unwrap();
        assert!((ty.max_abs_numeric - 1.0).abs() < 1e-5);

        let cand = SolitonCandidate::new(parse("y^2"), VectorField::zero(), Expr::zero(), Eps::Plus);
        assert!(crosscheck_residual(&cand, &plan, Execution::default()).unwrap().numeric_zero);
    }

    #[test]
    fn second_order_convergence() {
        let plan = SamplePlan::seeded(40, 5).with_step(1e-3).unwrap();
        let r = convergence(&parse("t^3*y + x^2*t^2 - y^3"), Eps::Plus, &plan, Execution::default()).unwrap();
        let g = r.christoffel_median_ratio.unwrap();
        assert!(g <= 0.35, "{r:?}");
        let rho = r.ricci_median_ratio.unwrap();
        assert!((rho - 0.25).abs() < 0.05, "{r:?}");
    }

    #[test]
    fn rejects_uninstantiated_input() {
        let mut ctx = Context::new();
        ctx.declare("a:(t)").unwrap();
        let f = ctx.parse("a*y^2").unwrap();
        let plan = SamplePlan::seeded(1, 0);
        assert!(matches!(
            crosscheck_geometry(&f, Eps::Plus, &plan, Execution::Sequential),
            Err(NumericError::FreeFunction(_))
        ));
        assert!(matches!(
            crosscheck_geometry(&Expr::zero(), Eps::Symbolic, &plan, Execution::Sequential),
            Err(NumericError::SymbolicEps)
        ));
    }
}
