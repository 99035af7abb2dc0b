use merifold_core::{Result, Word};
use serde_json::json;

use super::{parse_list, words_json};
use crate::cli::{Gens, SgOp, WordOp};
use crate::dot;
use crate::report::RunReport;

pub fn word(op: &WordOp) -> Result<RunReport> {
    Ok(match op {
        WordOp::Reduce { word, rank } => {
            let w = Word::parse(word, *rank)?;
            RunReport::ok(
                json!({ "word": w.to_string(), "length": w.len(), "exponentSums": w.exponent_sums().0 }),
                vec![format!("{w}"), format!("length {}", w.len())],
            )
        }
        WordOp::Inverse { word, rank } => {
            let w = Word::parse(word, *rank)?.inverse();
            RunReport::ok(json!({ "word": w.to_string() }), vec![w.to_string()])
        }
        WordOp::Conj { a, b, rank } => {
            let (a, b) = (Word::parse(a, *rank)?, Word::parse(b, *rank)?);
            let c = a.is_conjugate(&b)?;
            let text = c.as_ref().map(Word::to_string);
            let line = match &text {
                Some(c) => format!("conjugate by {c}"),
                None => "not conjugate".into(),
            };
            RunReport::ok(json!({ "conjugate": c.is_some(), "conjugator": text }), vec![line])
        }
        WordOp::Cyclic { word, rank } => {
            let (conj, cyc) = Word::parse(word, *rank)?.cyclic_reduction();
            RunReport::ok(
                json!({ "conjugator": conj.to_string(), "core": cyc.word().to_string(), "canonical": cyc.canonical().to_string() }),
                vec![format!("{conj} . {} . ({conj})^-1", cyc.word())],
            )
        }
    })
}

fn graph_json(g: &merifold_core::SubgroupGraph) -> serde_json::Value {
    let edges: Vec<_> =
        g.edges().iter().map(|e| json!({ "from": e.from, "to": e.to, "gen": format!("x{}", e.gen) })).collect();
    json!({ "vertices": g.vertex_count(), "base": g.base(), "edges": edges })
}

fn build(gens: &Gens) -> Result<merifold_core::SubgroupGraph> {
    merifold_core::SubgroupGraph::from_generators(gens.rank, &parse_list(&gens.h, gens.rank)?)
}

pub fn sg(op: &SgOp) -> Result<RunReport> {
    Ok(match op {
        SgOp::Graph(gens) => {
            let g = build(gens)?;
            let basis = g.basis();
            RunReport::ok(
                json!({ "graph": graph_json(&g), "rank": g.rank(), "basis": words_json(&basis) }),
                vec![format!("{} vertices, {} edges, rank {}", g.vertex_count(), g.edge_count(), g.rank())],
            )
            .with_dot(dot::subgroup("subgroup", &g))
        }
        SgOp::Member { gens, word } => {
            let g = build(gens)?;
            let w = Word::parse(word, gens.rank)?;
            let witness = g.witness(&w).map(|e| e.to_text_with('h'));
            let line = if witness.is_some() { "member" } else { "not a member" };
            RunReport::ok(json!({ "member": witness.is_some(), "witness": witness }), vec![line.into()])
        }
        SgOp::Intersect { gens, k } => {
            let h = build(gens)?;
            let k = merifold_core::SubgroupGraph::from_generators(gens.rank, &parse_list(k, gens.rank)?)?;
            let comps: Vec<_> = h
                .pullback_intersections(&k)
                .into_iter()
                .map(|c| json!({ "rep": c.rep.to_string(), "basis": words_json(&c.intersection.basis()) }))
                .collect();
            let meet = h.intersection(&k);
            let summary = vec![format!("{} nontrivial conjugate intersections", comps.len()), format!("H ∩ K has rank {}", meet.rank())];
            RunReport::ok(json!({ "intersections": comps, "intersection": words_json(&meet.basis()) }), summary)
                .with_dot(dot::subgroup("intersection", &meet))
        }
        SgOp::Normalizer(gens) => {
            let g = build(gens)?;
            let n = g.normalizer();
            RunReport::ok(
                json!({ "basis": words_json(&n.basis()), "selfNormalizing": n == g }),
                vec![format!("normalizer rank {}", n.rank()), format!("self-normalizing: {}", n == g)],
            )
            .with_dot(dot::subgroup("normalizer", &n))
        }
    })
}
