use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use walker::expr::{Bindings, Context, Coordinate, Deps, Expr, FuncSymbol, Rational, Style};
use walker::geometry::{
    christoffel, lie_derivative_metric, ricci, riemann, scalar_curvature, walker_metric, Eps, VectorField,
};
use walker::numeric::random_polynomial;
use walker::soliton::{classify, is_einstein, normalize, residual, Classification, SolitonCandidate};

fn ctx() -> Context {
    let mut c = Context::new();
    for d in ["f:(t,x,y)", "g:(t,y)", "k:param"] {
        c.declare(d).unwrap();
    }
    c
}

fn leaf() -> impl Strategy<Value = Expr> {
    let names = ["t", "x", "y", "f", "g", "f_tx", "g_yy", "k", "eps"];
    prop_oneof![
        (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Expr::ratio(n, d)),
        proptest::sample::select(names.to_vec()).prop_map(|s| ctx().parse(s).unwrap()),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(3, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| &a + &b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| &a - &b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| &a * &b),
            (inner, 0u32..3).prop_map(|(a, n)| a.pow(n)),
        ]
    })
}

fn polynomial() -> impl Strategy<Value = Expr> {
    any::<u64>().prop_map(|seed| random_polynomial(&mut ChaCha8Rng::seed_from_u64(seed), 4, 5))
}

fn coordinate() -> impl Strategy<Value = Coordinate> {
    proptest::sample::select(Coordinate::ALL.to_vec())
}

fn eps() -> impl Strategy<Value = Eps> {
    proptest::sample::select(vec![Eps::Plus, Eps::Minus, Eps::Symbolic])
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn render_parse_round_trip(e in expr()) {
        let c = ctx();
        prop_assert_eq!(c.parse(&e.to_text()).unwrap(), e.clone());
        prop_assert_eq!(c.parse(&e.render(Style::Subscript)).unwrap(), e);
    }

    #[test]
    fn ring_axioms(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn clairaut_and_leibniz(a in expr(), b in expr(), u in coordinate(), v in coordinate()) {
        prop_assert_eq!(a.differentiate(u).differentiate(v), a.differentiate(v).differentiate(u));
        prop_assert_eq!(
            (&a * &b).differentiate(u),
            &(&a.differentiate(u) * &b) + &(&a * &b.differentiate(u))
        );
    }

    #[test]
    fn eps_squares_to_one(a in expr()) {
        let e = Expr::eps();
        prop_assert_eq!(&(&e * &e) * &a, a);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        a in polynomial(),
        b in polynomial(),
        p in proptest::array::uniform3(rational()),
        kv in rational(),
    ) {
        let a = &a * &Expr::param("k");
        let mut bind = Bindings::new();
        bind.insert("k".into(), kv);
        let ev = |e: &Expr| e.evaluate_exact(&p, &bind).unwrap();
        prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
        prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
    }

    #[test]
    fn substitution_commutes_with_differentiation(e in expr(), r in polynomial(), c in coordinate()) {
        let f = FuncSymbol::new("f", Deps::ALL);
        let lhs = e.substitute(&f, &r).unwrap().differentiate(c);
        let rhs = e.differentiate(c).substitute(&f, &r).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalization_is_recorded_and_idempotent(e in expr()) {
        let (n, factor) = normalize(&e);
        prop_assert_eq!(factor.apply(&n), e);
        prop_assert_eq!(normalize(&n).0, n);
    }

    #[test]
    fn connection_is_metric_compatible(f in polynomial(), eps in eps()) {
        let m = walker_metric(&f, eps);
        let conn = christoffel(&m);
        let g = m.g();
        for k in Coordinate::ALL {
            for i in Coordinate::ALL {
                for j in Coordinate::ALL {
                    let mut d = g.get(i, j).differentiate(k);
                    for l in Coordinate::ALL {
                        d = &d - &(conn.get(l, k, i) * g.get(l, j));
                        d = &d - &(conn.get(l, k, j) * g.get(i, l));
                    }
                    prop_assert!(d.is_zero(), "∇_{} g_{}{} = {}", k, i, j, d);
                }
            }
        }
    }

    #[test]
    fn parallel_null_distribution(f in polynomial(), eps in eps()) {
        // ∇ ∂t stays in span(∂t)
        let conn = christoffel(&walker_metric(&f, eps));
        for i in Coordinate::ALL {
            for k in [Coordinate::X, Coordinate::Y] {
                prop_assert!(conn.get(k, i, Coordinate::T).is_zero());
            }
        }
    }

    #[test]
    fn curvature_symmetries(f in polynomial(), eps in eps()) {
        let m = walker_metric(&f, eps);
        let r = riemann(&m, &christoffel(&m));
        for l in Coordinate::ALL {
            for k in Coordinate::ALL {
                for i in Coordinate::ALL {
                    for j in Coordinate::ALL {
                        prop_assert!((&r.get(l, k, i, j) + &r.get(l, k, j, i)).is_zero());
                        let cyc = &(&r.get(l, k, i, j) + &r.get(l, i, j, k)) + &r.get(l, j, k, i);
                        prop_assert!(cyc.is_zero());
                    }
                }
            }
        }
        let rho = ricci(&m, &r);
        prop_assert_eq!(scalar_curvature(&m, &rho), f.differentiate_by(&[Coordinate::T, Coordinate::T]));
    }

    #[test]
    fn lie_derivative_is_additive(
        f in polynomial(), eps in eps(),
        a in polynomial(), b in polynomial(), c in polynomial(),
        d in polynomial(), q in rational(),
    ) {
        let m = walker_metric(&f, eps);
        let x = VectorField::new(a.clone(), b, c);
        let y = VectorField::new(d, a, Expr::t());
        prop_assert_eq!(
            lie_derivative_metric(&m, &(&x + &y)),
            &lie_derivative_metric(&m, &x) + &lie_derivative_metric(&m, &y)
        );
        prop_assert_eq!(
            lie_derivative_metric(&m, &x.scale(&q)),
            lie_derivative_metric(&m, &x).map(|e| e.scale(&q))
        );
    }

    #[test]
    fn residual_is_affine(
        f in polynomial(), eps in eps(),
        a in polynomial(), b in polynomial(), l1 in rational(), l2 in rational(),
    ) {
        let x = VectorField::new(a.clone(), b.clone(), Expr::zero());
        let y = VectorField::new(b, Expr::zero(), a);
        let r = |field: VectorField, l: Rational| {
            residual(&SolitonCandidate::new(f.clone(), field, Expr::constant(l), eps))
        };
        let zero = r(VectorField::zero(), Rational::from_integer(0.into()));
        let lhs = &r(&x + &y, &l1 + &l2) + &zero;
        let rhs = &r(x, l1) + &r(y, l2);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn einstein_iff_trivial_steady_soliton(f in polynomial(), eps in eps()) {
        let cand = SolitonCandidate::new(f.clone(), VectorField::zero(), Expr::zero(), eps);
        prop_assert_eq!(is_einstein(&f, eps).is_einstein, residual(&cand).is_zero());
    }

    #[test]
    fn classification_follows_sign(l in rational()) {
        let expected = if l > Rational::from_integer(0.into()) {
            Classification::Shrinking
        } else if l < Rational::from_integer(0.into()) {
            Classification::Expanding
        } else {
            Classification::Steady
        };
        prop_assert_eq!(classify(&l), expected);
    }
}
