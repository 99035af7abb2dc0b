use merifold_core::agraphs::{ComplexityGood, Engine, MeridianSpec, PieceKind};
use merifold_core::patternspace::{Decomposition, HnnWord, Lemma4Case, PatternGroup, Side};
use merifold_core::{Error, Result, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{words_json, Context};
use crate::cli::{PatternOp, SideArg};
use crate::dot;
use crate::report::RunReport;

fn tuple(c: ComplexityGood) -> Value {
    json!([c.0, c.1, c.2, c.3])
}

fn decomposition_json(d: &Decomposition) -> Value {
    match d {
        Decomposition::Member { witness } => json!({ "member": witness.to_text_with('y') }),
        Decomposition::Peripheral { u, epsilon, k } => json!({ "u": u.to_string(), "epsilon": epsilon, "k": k }),
        Decomposition::DoubleCoset { u1, epsilon, u2 } => {
            json!({ "u1": u1.to_string(), "epsilon": epsilon, "u2": u2.to_string() })
        }
    }
}

fn spec(text: &str) -> Result<MeridianSpec> {
    match text.split_once(':') {
        Some((g, path)) => {
            let gen = match g.trim() {
                "x1" => 1,
                "x2" => 2,
                other => {
                    return Err(Error::Parse { position: 0, token: other.into(), reason: "expected meridian x1 or x2" })
                }
            };
            MeridianSpec::parse(path, gen)
        }
        None => MeridianSpec::parse(text, 1),
    }
}

pub fn pattern(op: &PatternOp, ctx: &Context) -> Result<RunReport> {
    let group = PatternGroup::new();
    Ok(match op {
        PatternOp::Conjsep => {
            let r = group.conjsep_check();
            let comps: Vec<_> =
                r.components.iter().map(|(rep, basis)| json!({ "rep": rep.to_string(), "basis": words_json(basis) })).collect();
            let payload = json!({
                "literalTrivial": r.literal_trivial,
                "peripheralOnly": r.peripheral_only,
                "components": comps,
            });
            if !r.literal_trivial {
                // The literal statement fails at g = 1; the report keeps the
                // components so the corrected statement can be read off.
                let detail = format!(
                    "U_alpha meets {} conjugate(s) of U_omega nontrivially; peripheral only: {}",
                    r.components.len(),
                    r.peripheral_only
                );
                let mut rep = RunReport::from_error(&Error::falsified("Lemma 3", detail));
                rep.payload["report"] = payload;
                return Ok(rep);
            }
            RunReport::ok(payload, vec!["all intersections trivial".into()])
        }
        PatternOp::Lemma { case, word } => {
            let (c, side) = Lemma4Case::parse(case)?;
            let a = Word::parse(word, 2)?;
            let d = group.lemma4_decide(c, side, &a)?;
            RunReport::ok(
                json!({
                    "case": c.label(side),
                    "verdict": d.holds,
                    "decomposition": d.decomposition.as_ref().map(decomposition_json),
                }),
                vec![format!("{}: {}", c.label(side), d.holds)],
            )
        }
        PatternOp::Subgroup { side } => {
            let side = match side {
                SideArg::Alpha => Side::Alpha,
                SideArg::Omega => Side::Omega,
            };
            let u = group.subgroup(side);
            let n = u.normalizer();
            RunReport::ok(
                json!({
                    "side": side.suffix().to_string(),
                    "basis": words_json(&u.basis()),
                    "vertices": u.vertex_count(),
                    "edges": u.edge_count(),
                    "selfNormalizing": &n == u,
                }),
                vec![format!("{} vertices, {} edges, self-normalizing: {}", u.vertex_count(), u.edge_count(), &n == u)],
            )
            .with_dot(dot::subgroup(if side == Side::Alpha { "u_alpha" } else { "u_omega" }, u))
        }
        PatternOp::Star { word } => {
            let w = Word::parse(word, 2)?;
            let star = group.star_shape(&w);
            let member = group.subgroup(Side::Alpha).contains(&w);
            RunReport::ok(
                json!({ "member": member, "star": star.as_ref().map(|s| s.0.clone()) }),
                vec![format!("member of U_alpha: {member}; shape (*): {}", star.is_some())],
            )
        }
        PatternOp::Britton { word } => {
            let w = group.britton_reduce(&HnnWord::parse(word)?);
            RunReport::ok(json!({ "word": w.to_string(), "stableLetters": w.stable_letters() }), vec![w.to_string()])
        }
        PatternOp::Goodify { meridians } => {
            let specs = meridians.iter().map(|m| spec(m)).collect::<Result<Vec<_>>>()?;
            let engine = Engine::new();
            let out = engine.goodify(&specs)?;
            let trace: Vec<Value> = out
                .trace
                .iter()
                .map(|t| {
                    json!({
                        "move": t.kind,
                        "site": t.site,
                        "complexityBefore": tuple(t.before),
                        "complexityAfter": tuple(t.after),
                    })
                })
                .collect();
            let factors: Vec<Value> = out
                .certificate
                .factors
                .iter()
                .map(|f| {
                    let kind = match f.kind {
                        PieceKind::Cyclic => "cyclic".to_string(),
                        PieceKind::NonCyclic { v_full } => format!("non-cyclic({v_full})"),
                    };
                    json!({ "kind": kind, "generators": f.generators.iter().map(ToString::to_string).collect::<Vec<_>>() })
                })
                .collect();
            let rank = out.certificate.rank();
            let trace_ref = ctx.write_trace("pattern-goodify", &trace)?;
            let mut rep = RunReport::ok(
                json!({
                    "rank": rank,
                    "initial": tuple(out.initial),
                    "complexityTrace": trace,
                    "factors": factors,
                }),
                vec![format!("rank {rank}"), format!("complexity trace length {}", out.trace.len())],
            )
            .with_dot(dot::agraph(&out.graph));
            rep.trace_ref = trace_ref;
            rep
        }
        PatternOp::Sample { pieces, max_full, count } => {
            let engine = Engine::new();
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            let mut rows = Vec::new();
            let mut first = None;
            let mut attempts = 0;
            while rows.len() < *count && attempts < 100 * count.max(&1) {
                attempts += 1;
                let mut pick = |n: usize| rng.random_range(0..n);
                let Some(b) = engine.sample_good(*pieces, *max_full, &mut pick) else { continue };
                let rank = engine.rank_good(&b)?;
                let extracted = engine.extract_generators(&b)?.len();
                let grushko = engine.grushko_sum(&b)?;
                rows.push(json!({
                    "vertices": b.vertex_count(),
                    "edges": b.edge_count(),
                    "rank": rank,
                    "extracted": extracted,
                    "grushko": grushko,
                }));
                first.get_or_insert(b);
            }
            let summary = vec![format!("{} graphs in {attempts} draws, seed {}", rows.len(), ctx.seed)];
            let rep = RunReport::ok(json!({ "seed": ctx.seed, "draws": attempts, "graphs": rows }), summary);
            match first {
                Some(b) => rep.with_dot(dot::agraph(&b)),
                None => rep,
            }
        }
    })
}
