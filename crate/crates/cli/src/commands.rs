use walker::expr::{Context, Declaration, Deps, Expr};
use walker::geometry::{walker_metric, Eps, Geometry, VectorField};
use walker::numeric::{crosscheck_geometry, crosscheck_residual, Execution, SamplePlan};
use walker::soliton::{
    audit_conditions, audit_family, classify_expr, verdict, ConditionSet, ConditionVariant, Family, FamilyInputs,
    SolitonCandidate,
};

use crate::report::{Node, Report};
use crate::{CheckArgs, Common, ConditionsArgs, ConstructArgs, CrosscheckArgs, GeometryArgs};

type Outcome = Result<Report, String>;

fn context(common: &Common) -> Result<Context, String> {
    let mut ctx = Context::new();
    for d in &common.declare {
        ctx.declare(d).map_err(|e| format!("--declare {d}: {e}"))?;
    }
    Ok(ctx)
}

fn parse(ctx: &Context, flag: &str, text: &str) -> Result<Expr, String> {
    let (e, diagnostics) = ctx
        .parse_with_diagnostics(text)
        .map_err(|e| format!("--{flag} {text:?}: {e}"))?;
    for d in diagnostics {
        eprintln!("warning: --{flag} at {}: {}", d.pos, d.message);
    }
    Ok(e)
}

fn eps(common: &Common) -> Result<Eps, String> {
    common.eps.parse::<Eps>().map_err(|e| format!("--eps {}: {e}", common.eps))
}

/// `sym` means the parameter `lambda`; anything else must be free of
/// coordinates and functions.
fn lambda(ctx: &mut Context, text: &str) -> Result<Expr, String> {
    if text == "sym" {
        match ctx.get("lambda") {
            None => ctx.declare_parameter("lambda").map_err(|e| e.to_string())?,
            Some(Declaration::Parameter) => {}
            Some(_) => return Err("--lambda sym: `lambda` is declared as a function".into()),
        }
        return Ok(Expr::param("lambda"));
    }
    let e = parse(ctx, "lambda", text)?;
    if !e.free_coordinates().is_empty() || !e.function_symbols().is_empty() {
        return Err(format!("--lambda {text:?}: must be a constant"));
    }
    Ok(e)
}

fn ensure_function(ctx: &mut Context, name: &str, deps: Deps) -> Result<(), String> {
    if ctx.get(name).is_none() {
        ctx.declare_function(name, deps).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn nonzero<'a>(entries: impl Iterator<Item = (String, &'a Expr)>) -> Node {
    Node::exprs(entries.filter(|(_, e)| !e.is_zero()))
}

fn conditions_node(set: &ConditionSet) -> Node {
    Node::List(
        set.iter()
            .map(|c| {
                let factor = walker::soliton::Normalization {
                    scale: c.normalization.scale.clone(),
                    eps: c.normalization.eps,
                }
                .apply(&Expr::one());
                Node::map()
                    .with("label", c.label.as_str())
                    .with("component", c.component.as_str())
                    .with("lhs", &c.lhs)
                    .with("factor", factor)
            })
            .collect(),
    )
}

fn report(name: &str, argv: Vec<String>, ctx: &Context, result: Node, notes: Vec<String>, exit: i32) -> Report {
    Report {
        command: name.to_string(),
        argv,
        context: ctx.declaration_strings(),
        result,
        discrepancy_notes: notes,
        exit,
    }
}

pub fn geometry(args: &GeometryArgs, argv: Vec<String>) -> Outcome {
    let ctx = context(&args.common)?;
    let f = parse(&ctx, "f", &args.f)?;
    let geo = Geometry::compute(walker_metric(&f, eps(&args.common)?));
    let result = Node::map()
        .with("f", &f)
        .with("eps", args.common.eps.as_str())
        .with("metric", nonzero(geo.metric.g().labeled()))
        .with("christoffel", nonzero(geo.connection.labeled()))
        .with("curvature", nonzero(geo.curvature.labeled()))
        .with("ricci", nonzero(geo.ricci.labeled()))
        .with("scalar_curvature", &geo.scalar);
    Ok(report("geometry", argv, &ctx, result, Vec::new(), 0))
}

pub fn check(args: &CheckArgs, argv: Vec<String>) -> Outcome {
    let mut ctx = context(&args.common)?;
    let lambda = lambda(&mut ctx, &args.lambda)?;
    let f = parse(&ctx, "f", &args.f)?;
    let field = VectorField::new(
        parse(&ctx, "A", &args.field.a)?,
        parse(&ctx, "B", &args.field.b)?,
        parse(&ctx, "C", &args.field.c)?,
    );
    let cand = SolitonCandidate::new(f, field, lambda, eps(&args.common)?);
    let v = verdict(&cand);
    let failing: Vec<String> = v.failing_components.iter().map(|(c, _)| c.clone()).collect();
    let result = Node::map()
        .with("f", &cand.f)
        .with(
            "field",
            Node::map().with("A", &cand.field.a).with("B", &cand.field.b).with("C", &cand.field.c),
        )
        .with("lambda", &cand.lambda)
        .with("residual", Node::exprs(v.failing_components.iter().map(|(c, e)| (c.clone(), e))))
        .with("is_soliton", v.is_soliton)
        .with("failing_components", failing)
        .with("classification", v.classification.to_string())
        .with("is_einstein", v.einstein.is_einstein)
        .with("einstein_witness", Node::exprs(v.einstein.witness.iter().map(|(c, e)| (c.clone(), e))));
    let exit = if v.is_soliton { 0 } else { 1 };
    Ok(report("check", argv, &ctx, result, Vec::new(), exit))
}

pub fn conditions(args: &ConditionsArgs, argv: Vec<String>) -> Outcome {
    let variant: ConditionVariant = args.family.parse().map_err(|e| format!("--family: {e}"))?;
    let mut ctx = context(&args.common)?;
    let lambda = lambda(&mut ctx, &args.lambda)?;
    let shape = match &args.f {
        Some(text) => text.clone(),
        None => {
            for d in variant.shape_declarations() {
                let name = d.split(':').next().unwrap_or_default();
                if ctx.get(name).is_none() {
                    ctx.declare(d).map_err(|e| e.to_string())?;
                }
            }
            variant.default_shape_text().to_string()
        }
    };
    let f = parse(&ctx, "f", &shape)?;
    for name in ["A", "B", "C"] {
        ensure_function(&mut ctx, name, Deps::ALL)?;
    }
    let audit = audit_conditions(variant, &f, eps(&args.common)?, &lambda).map_err(|e| e.to_string())?;
    let comparisons: Vec<Node> = audit
        .comparisons
        .iter()
        .map(|c| {
            Node::map()
                .with("label", c.label.as_str())
                .with("component", c.component.as_str())
                .with("agrees", c.agrees())
        })
        .collect();
    let result = Node::map()
        .with("family", variant.name())
        .with("f", &f)
        .with("lambda", &lambda)
        .with("conditions", conditions_node(&audit.conditions))
        .with("published_comparison", comparisons);
    Ok(report("conditions", argv, &ctx, result, audit.notes, 0))
}

pub fn construct(args: &ConstructArgs, argv: Vec<String>) -> Outcome {
    let family: Family = args.family.parse().map_err(|e| format!("--family: {e}"))?;
    let mut ctx = context(&args.common)?;
    let lambda = lambda(&mut ctx, &args.lambda)?;
    let n_text = args.n.as_deref().or(args.big_f.as_deref()).unwrap_or("0");
    let n_flag = if args.big_f.is_some() { "F" } else { "N" };
    let inputs = FamilyInputs {
        h: parse(&ctx, "H", &args.h)?,
        k: parse(&ctx, "K", &args.k)?,
        n: parse(&ctx, n_flag, n_text)?,
        a: parse(&ctx, "a", &args.coeff_a)?,
        b: parse(&ctx, "b", &args.coeff_b)?,
        d: parse(&ctx, "d", &args.coeff_d)?,
        alpha: parse(&ctx, "alpha", &args.alpha)?,
        beta: parse(&ctx, "beta", &args.beta)?,
        gamma: parse(&ctx, "gamma", &args.gamma)?,
        delta: parse(&ctx, "delta", &args.delta)?,
        lambda,
        eps: eps(&args.common)?,
    };
    let audit = audit_family(family, &inputs).map_err(|e| e.to_string())?;
    let field = &audit.candidate.field;
    let readings: Vec<Node> = audit
        .readings
        .iter()
        .map(|r| {
            Node::map()
                .with("reading", r.name)
                .with("claims_soliton", r.claims_soliton)
                .with(
                    "constraints",
                    Node::exprs(r.constraints.iter().map(|(l, e)| (l.to_string(), e))),
                )
        })
        .collect();
    let result = Node::map()
        .with("family", family.name())
        .with("f", &audit.candidate.f)
        .with("lambda", &audit.candidate.lambda)
        .with("field", Node::map().with("A", &field.a).with("B", &field.b).with("C", &field.c))
        .with("residual", Node::exprs(audit.residual.labeled().filter(|(_, e)| !e.is_zero())))
        .with("is_soliton", audit.is_soliton())
        .with("classification", classify_expr(&audit.candidate.lambda).to_string())
        .with("remaining_constraints", conditions_node(&audit.constraints))
        .with("published_readings", readings);
    let exit = if audit.is_soliton() { 0 } else { 1 };
    Ok(report("construct", argv, &ctx, result, audit.notes, exit))
}

fn deviation_node(t: &walker::numeric::TensorDeviation) -> Node {
    Node::map()
        .with("tensor", t.tensor)
        .with("max_abs_dev", t.max_abs_dev)
        .with("max_rel_dev", t.max_rel_dev)
        .with("worst_point", t.worst_point)
        .with("pass", t.pass)
}

pub fn crosscheck(args: &CrosscheckArgs, argv: Vec<String>) -> Outcome {
    let ctx = context(&args.common)?;
    let eps = eps(&args.common)?;
    if eps == Eps::Symbolic {
        return Err("--eps must be 1 or -1 for a numeric crosscheck".into());
    }
    let f = parse(&ctx, "f", &args.f)?;
    let opt = |flag: &str, v: &Option<String>| -> Result<Expr, String> {
        v.as_deref().map_or(Ok(Expr::zero()), |s| parse(&ctx, flag, s))
    };
    let field = VectorField::new(opt("A", &args.a)?, opt("B", &args.b)?, opt("C", &args.c)?);
    let lambda = opt("lambda", &args.lambda)?;
    let plan = SamplePlan::seeded(args.points, args.seed)
        .with_step(args.step)
        .and_then(|p| p.with_tolerance(args.tol))
        .map_err(|e| e.to_string())?;
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let geo = crosscheck_geometry(&f, eps, &plan, exec).map_err(|e| format!("--f: {e}"))?;
    let mut pass = geo.pass;
    let mut result = Node::map()
        .with("f", &f)
        .with("eps", args.common.eps.as_str())
        .with("points", geo.points)
        .with("h", geo.h)
        .with("tolerance", geo.tolerance)
        .with("seed", geo.seed)
        .with(
            "geometry",
            Node::map()
                .with("pass", geo.pass)
                .with("tensors", geo.tensors.iter().map(deviation_node).collect::<Vec<_>>()),
        );
    let wants_residual = args.a.is_some() || args.b.is_some() || args.c.is_some() || args.lambda.is_some();
    if wants_residual {
        let cand = SolitonCandidate::new(f.clone(), field, lambda, eps);
        let res = crosscheck_residual(&cand, &plan, exec).map_err(|e| e.to_string())?;
        pass &= res.pass;
        let components: Vec<Node> = res
            .components
            .iter()
            .map(|c| {
                Node::map()
                    .with("component", c.component.as_str())
                    .with("max_abs_numeric", c.max_abs_numeric)
                    .with("max_abs_dev", c.max_abs_dev)
                    .with("worst_point", c.worst_point)
            })
            .collect();
        result = result.with(
            "residual",
            Node::map()
                .with("pass", res.pass)
                .with("symbolic_zero", res.symbolic_zero)
                .with("numeric_zero", res.numeric_zero)
                .with("agree", res.agree)
                .with("within_tolerance", res.within_tolerance)
                .with("components", components),
        );
    }
    result = result.with("pass", pass);
    let exit = if pass { 0 } else { 1 };
    Ok(report("crosscheck", argv, &ctx, result, Vec::new(), exit))
}
