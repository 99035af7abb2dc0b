//! Graphviz output with stable vertex numbering.

use std::fmt::Write;

use merifold_core::agraphs::{AGraph, EGroup, VGroup, VertexClass};
use merifold_core::satellites::{CompanionOracle, PatternSide, SatEGroup, SatGraph};
use merifold_core::SubgroupGraph;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Subgroup graph; the base vertex is double-circled.
pub fn subgroup(name: &str, g: &SubgroupGraph) -> String {
    let mut s = format!("digraph {name} {{\n  rankdir=LR;\n");
    for v in 0..g.vertex_count() {
        let shape = if v == g.base() { "doublecircle" } else { "circle" };
        writeln!(s, "  {v} [shape={shape}];").unwrap();
    }
    for e in g.edges() {
        writeln!(s, "  {} -> {} [label=\"x{}\"];", e.from, e.to, e.gen).unwrap();
    }
    s.push_str("}\n");
    s
}

pub fn vgroup_text(g: &VGroup) -> String {
    match g {
        VGroup::Trivial => "1".into(),
        VGroup::Cyclic { conj, gen } => format!("<{conj} . x{gen} . ({conj})^-1>"),
        VGroup::AlmostFull { conj, side } => format!("{conj} . U_{} . ({conj})^-1", side.suffix()),
        VGroup::Full => "A_v".into(),
    }
}

pub fn egroup_text(g: &EGroup) -> String {
    match g {
        EGroup::Trivial => "1".into(),
        EGroup::Cyclic { conj, gen } => format!("<{conj} . y{gen} . ({conj})^-1>"),
        EGroup::Full => "A_e".into(),
    }
}

fn class_color(c: VertexClass) -> &'static str {
    match c {
        VertexClass::Trivial => "white",
        VertexClass::Cyclic => "lightblue",
        VertexClass::AlmostFull => "gold",
        VertexClass::Full => "salmon",
    }
}

/// A-graph over the pattern graph of groups, vertices colored by class.
pub fn agraph(b: &AGraph) -> String {
    let mut s = String::from("digraph agraph {\n  node [style=filled];\n");
    for u in b.vertex_ids() {
        let g = b.vgroup(u);
        let periph = if u == b.base() { 2 } else { 1 };
        writeln!(
            s,
            "  v{u} [label=\"{u}: {}\", fillcolor={}, peripheries={periph}];",
            escape(&vgroup_text(g)),
            class_color(g.class())
        )
        .unwrap();
    }
    for f in b.edge_ids() {
        let e = b.edge(f);
        let l = if e.sign > 0 { "l" } else { "L" };
        writeln!(
            s,
            "  v{} -> v{} [label=\"{} {l} {} / {}\"];",
            e.from,
            e.to,
            e.o,
            e.t,
            escape(&egroup_text(&e.group))
        )
        .unwrap();
    }
    s.push_str("}\n");
    s
}

/// A-graph over the satellite graph of groups: boxes are pattern-type
/// vertices, ellipses companion-type vertices.
pub fn satellite<P: PatternSide, Q: CompanionOracle>(
    pattern: &P,
    companion: &Q,
    g: &SatGraph<P::Sub, P::Elem, Q::Elem>,
) -> String {
    let mut s = String::from("digraph satellite {\n");
    for u in g.v0_ids() {
        let periph = if u == g.base { 2 } else { 1 };
        writeln!(s, "  u{u} [shape=box, label=\"u{u}: {}\", peripheries={periph}];", escape(&pattern.describe(g.group_u(u))))
            .unwrap();
    }
    for y in g.v1_ids() {
        let gens: Vec<String> = g.group_y(y).iter().map(|c| companion.show(c)).collect();
        let label = if gens.is_empty() { "1".to_string() } else { format!("m^{{{}}}", gens.join(", ")) };
        writeln!(s, "  y{y} [shape=ellipse, label=\"y{y}: {}\"];", escape(&label)).unwrap();
    }
    for f in g.edge_ids() {
        let e = g.edge(f);
        let style = match e.group {
            SatEGroup::Trivial => "dashed",
            SatEGroup::Meridian => "solid",
            SatEGroup::Full => "bold",
        };
        writeln!(
            s,
            "  u{} -> y{} [label=\"{} | e | {}\", style={style}];",
            e.u,
            e.y,
            escape(&pattern.show(&e.o)),
            escape(&companion.show(&e.t))
        )
        .unwrap();
    }
    s.push_str("}\n");
    s
}
