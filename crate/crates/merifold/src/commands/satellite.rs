use std::fs;
use std::path::Path;

use merifold_core::braidspace::{BraidSpaceGroup, BraidWord};
use merifold_core::satellites::{
    bridge_number, BraidSide, CompanionOracle, ComplexityTame, OutcomeOf, PatternKind, PatternSide, PeripheralVerdict,
    SatEGroup, Satellite, TorusOracle, Verdict, WhiteheadSide,
};
use merifold_core::{Error, Result};
use serde_json::{json, Value};

use super::{io_error, pair, Context};
use crate::cli::{BridgeArgs, SatelliteArgs, SatelliteOp};
use crate::dot;
use crate::report::RunReport;

fn tuple(c: ComplexityTame) -> Value {
    json!([c.0, c.1, c.2])
}

fn companion(text: &str) -> Result<TorusOracle> {
    let spec = text.strip_prefix("torus:").ok_or_else(|| Error::Parse {
        position: 0,
        token: text.into(),
        reason: "expected companion torus:p,q",
    })?;
    let (p, q) = pair(spec)?;
    TorusOracle::new(p, q)
}

enum Built {
    Whitehead(Satellite<WhiteheadSide, TorusOracle>),
    Braid(Satellite<BraidSide, TorusOracle>),
}

fn build(args: &SatelliteArgs) -> Result<Built> {
    let q = companion(&args.companion)?;
    if args.pattern == "whitehead" {
        return Ok(Built::Whitehead(Satellite::new(WhiteheadSide::new(), q)?));
    }
    let group = if let Some(c) = args.pattern.strip_prefix("cable:") {
        let (n, m) = pair(c)?;
        BraidSpaceGroup::cable(n, m)?
    } else if args.pattern == "braid" {
        let (Some(b), Some(n)) = (&args.braid, args.n) else {
            return Err(Error::precondition("--pattern braid needs --braid WORD and -n"));
        };
        BraidSpaceGroup::artin(&BraidWord::parse(b, n)?)?
    } else {
        return Err(Error::Parse {
            position: 0,
            token: args.pattern.clone(),
            reason: "expected pattern whitehead, cable:n,m or braid",
        });
    };
    Ok(Built::Braid(Satellite::new(BraidSide::new(group), q)?))
}

fn group_label(g: SatEGroup) -> &'static str {
    match g {
        SatEGroup::Trivial => "trivial",
        SatEGroup::Meridian => "meridian",
        SatEGroup::Full => "full",
    }
}

fn write_dot(dir: &Path, name: &str, text: &str) -> Result<()> {
    fs::create_dir_all(dir).map_err(io_error)?;
    fs::write(dir.join(name), text).map_err(io_error)
}

type Extra<P, Q> = fn(&Satellite<P, Q>, &OutcomeOf<P, Q>, usize) -> Result<Value>;

fn fold<P: PatternSide, Q: CompanionOracle>(
    sat: &Satellite<P, Q>,
    meridians: &[String],
    ctx: &Context,
    dot_dir: Option<&Path>,
    len: usize,
    extra: Option<Extra<P, Q>>,
) -> Result<RunReport> {
    let paths = meridians.iter().map(|m| sat.parse_path(m)).collect::<Result<Vec<_>>>()?;
    if let Some(dir) = dot_dir {
        let initial = sat.initial_graph(&paths)?;
        write_dot(dir, "initial.dot", &dot::satellite(&sat.pattern, &sat.companion, &initial))?;
    }
    let out = sat.fold_meridional(&paths)?;
    let g = &out.graph;
    let trace: Vec<Value> = out
        .trace
        .iter()
        .map(|s| {
            json!({
                "move": s.kind,
                "site": s.site,
                "complexityBefore": tuple(s.before),
                "complexityAfter": tuple(s.after),
            })
        })
        .collect();
    let edges: Vec<Value> = g
        .edge_ids()
        .into_iter()
        .map(|f| {
            let e = g.edge(f);
            json!({
                "edge": f,
                "u": e.u,
                "y": e.y,
                "o": sat.pattern.show(&e.o),
                "t": sat.companion.show(&e.t),
                "group": group_label(e.group),
            })
        })
        .collect();
    let pattern_vertices: Vec<Value> = g
        .v0_ids()
        .into_iter()
        .map(|u| {
            let s = g.group_u(u);
            json!({ "id": u, "group": sat.pattern.describe(s), "weight": sat.pattern.weight(s) })
        })
        .collect();
    let companion_vertices: Vec<Value> = g
        .v1_ids()
        .into_iter()
        .map(|y| {
            let gens: Vec<String> = g.group_y(y).iter().map(|c| sat.companion.show(c)).collect();
            json!({ "id": y, "meridianConjugators": gens })
        })
        .collect();
    let (verdict, bound) = match &out.verdict {
        Verdict::Folded => ("FOLDED", Value::Null),
        Verdict::BoundExceeded { vertex, weight, history } => {
            ("BOUND_EXCEEDED", json!({ "vertex": vertex, "weight": weight, "history": history }))
        }
    };
    let mut certificates = json!({});
    let mut summary = vec![
        format!("{verdict} after {} moves", out.trace.len()),
        format!("complexity trace length {}", out.trace.len()),
        format!("bridge number {}", sat.bridge_number()),
    ];
    if out.verdict == Verdict::Folded {
        let proper = sat.certify_proper(&out)?;
        summary.push(format!("proper: separator {}", proper.separator));
        certificates["proper"] = json!({
            "separator": proper.separator,
            "trivialEdges": proper.trivial_edges,
            "meridianEdges": proper.meridian_edges,
            "exact": proper.exact,
        });
        if let Some(f) = extra {
            certificates["tameness"] = f(sat, &out, len)?;
        }
    }
    let trace_ref = ctx.write_trace("satellite-fold", &trace)?;
    let final_dot = dot::satellite(&sat.pattern, &sat.companion, g);
    if let Some(dir) = dot_dir {
        write_dot(dir, "final.dot", &final_dot)?;
    }
    let inputs: Vec<String> = out.inputs.iter().map(|p| sat.show_path(p)).collect();
    let mut rep = RunReport::ok(
        json!({
            "verdict": verdict,
            "bound": bound,
            "bridgeNumber": sat.bridge_number(),
            "inputs": inputs,
            "inputsWitnessed": out.inputs_witnessed,
            "exact": out.exact,
            "initial": tuple(out.initial),
            "complexityTrace": trace,
            "edgeGroups": edges,
            "patternVertices": pattern_vertices,
            "companionVertices": companion_vertices,
            "certificates": certificates,
        }),
        summary,
    )
    .with_dot(final_dot);
    rep.trace_ref = trace_ref;
    Ok(rep)
}

fn tameness(sat: &Satellite<BraidSide, TorusOracle>, out: &OutcomeOf<BraidSide, TorusOracle>, len: usize) -> Result<Value> {
    let cert = sat.extract_tameness(out, len)?;
    let meridians: Vec<Value> =
        cert.meridians.iter().map(|m| json!({ "vertex": m.vertex, "element": sat.show_path(&m.element) })).collect();
    let rows: Vec<Value> = cert
        .peripheral
        .iter()
        .map(|r| {
            let v = match r.verdict {
                PeripheralVerdict::Trivial => json!("trivial"),
                PeripheralVerdict::Meridian { index } => json!({ "meridian": index }),
            };
            let witness = r.witness.as_ref().map(|c| sat.show_path(c));
            json!({ "conjugator": sat.show_path(&r.conjugator), "verdict": v, "witness": witness })
        })
        .collect();
    Ok(json!({
        "meridians": meridians,
        "exempt": cert.exempt,
        "conjugatorLength": cert.conjugator_length,
        "conjugacyChecks": cert.conjugacy_checks,
        "peripheral": rows,
    }))
}

pub fn satellite(op: &SatelliteOp, ctx: &Context) -> Result<RunReport> {
    match op {
        SatelliteOp::Fold { space, meridians, json: _, dot, len } => match build(space)? {
            Built::Whitehead(sat) => fold(&sat, meridians, ctx, dot.as_deref(), *len, None),
            Built::Braid(sat) => fold(&sat, meridians, ctx, dot.as_deref(), *len, Some(tameness)),
        },
        SatelliteOp::Reduce { space, path } => Ok(match build(space)? {
            Built::Whitehead(sat) => reduce(&sat, path)?,
            Built::Braid(sat) => reduce(&sat, path)?,
        }),
    }
}

fn reduce<P: PatternSide, Q: CompanionOracle>(sat: &Satellite<P, Q>, text: &str) -> Result<RunReport> {
    let x = sat.reduce(&sat.parse_path(text)?);
    let shown = sat.show_path(&x);
    Ok(RunReport::ok(
        json!({ "path": shown, "depth": x.depth(), "trivial": sat.is_trivial(&x) }),
        vec![shown.clone(), format!("depth {}", x.depth())],
    ))
}

pub fn bridge(args: &BridgeArgs) -> Result<RunReport> {
    let kind = match args.pattern.as_str() {
        "whitehead" => PatternKind::Whitehead,
        "braid" | "cable" => {
            let n = args.n.ok_or_else(|| Error::precondition("--pattern braid needs --n"))?;
            PatternKind::Braid { n: n as u32 }
        }
        other => {
            return Err(Error::Parse { position: 0, token: other.into(), reason: "expected pattern whitehead or braid" })
        }
    };
    let b = bridge_number(kind, args.b1)?;
    Ok(RunReport::ok(json!({ "bridgeNumber": b, "b1": args.b1 }), vec![format!("b = {b}")]))
}
