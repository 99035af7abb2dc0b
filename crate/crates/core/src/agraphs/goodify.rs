use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::algebra::{Engine, Violation};
use super::classify::{ComplexityGood, PieceKind};
use super::graph::{AEdge, AGraph, EGroup, VGroup, VertexClass};
use crate::apath::RawAPath;
use crate::error::{Error, Result};
use crate::patternspace::HnnWord;
use crate::word::Word;

/// The meridian conjugate `p · x_gen · p^{-1}` for an A-path `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeridianSpec {
    pub path: HnnWord,
    pub gen: u32,
}

impl MeridianSpec {
    pub fn new(path: HnnWord, gen: u32) -> Result<MeridianSpec> {
        if !(1..=2).contains(&gen) {
            return Err(Error::IndexOutOfRange { index: gen, rank: 2 });
        }
        Ok(MeridianSpec { path, gen })
    }

    /// A-path text over the pattern graph of groups, with the meridian `x_gen`.
    pub fn parse(apath: &str, gen: u32) -> Result<MeridianSpec> {
        let raw = RawAPath::parse(apath)?;
        let pieces = raw.elements.iter().map(|e| Word::parse(e, 2)).collect::<Result<Vec<_>>>()?;
        MeridianSpec::new(HnnWord { pieces, signs: raw.signs }, gen)
    }

    pub fn element(&self) -> HnnWord {
        self.path.conjugate(&HnnWord::base(Word::generator(2, self.gen)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub step: usize,
    pub kind: &'static str,
    pub site: String,
    pub before: ComplexityGood,
    pub after: ComplexityGood,
    pub notes: Vec<String>,
    /// Input generators whose membership the new graph already witnesses.
    pub inputs_traced: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub kind: PieceKind,
    pub generators: Vec<HnnWord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeripheralEntry {
    pub vertex: usize,
    pub class: VertexClass,
    /// `a` with `a m_V a^{-1} ∈ B_u`, if any.
    pub conjugator: Option<Word>,
    pub factor: Option<usize>,
}

/// Free factors `U_1 * ... * U_d` read off the pieces, with the partition of
/// the extracted generators and the location of `m_V` conjugates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodCertificate {
    pub factors: Vec<Factor>,
    pub partition: Vec<Vec<usize>>,
    pub peripheral: Vec<PeripheralEntry>,
}

impl GoodCertificate {
    pub fn rank(&self) -> usize {
        self.partition.iter().map(Vec::len).sum()
    }
}

#[derive(Clone, Debug)]
pub struct Goodified {
    pub graph: AGraph,
    pub certificate: GoodCertificate,
    pub trace: Vec<TraceEntry>,
    pub initial: ComplexityGood,
}

impl Engine {
    /// Wedge of one subdivided interval per spec; the far end carries `⟨x_gen⟩`.
    /// A spec of length zero is routed through `e` and back.
    pub fn build_initial(&self, specs: &[MeridianSpec]) -> AGraph {
        let mut b = AGraph::new();
        for spec in specs {
            let (pieces, signs) = if spec.path.signs.is_empty() {
                (vec![spec.path.pieces[0].clone(), Word::identity(2), Word::identity(2)], vec![1, -1])
            } else {
                (spec.path.pieces.clone(), spec.path.signs.clone())
            };
            let k = signs.len();
            let mut prev = b.base();
            for j in 0..k {
                let g = if j + 1 == k { VGroup::cyclic(Word::identity(2), spec.gen) } else { VGroup::Trivial };
                let v = b.add_vertex(g);
                let t = if j + 1 == k { pieces[k].clone() } else { Word::identity(2) };
                b.add_edge(AEdge { from: prev, to: v, sign: signs[j], o: pieces[j].clone(), t, group: EGroup::Trivial });
                prev = v;
            }
        }
        b
    }

    /// Folds the initial graph of `specs` to a folded good A-graph, checking after
    /// every macro-step that the graph is good and the complexity dropped.
    pub fn goodify(&self, specs: &[MeridianSpec]) -> Result<Goodified> {
        let mut b = self.build_initial(specs);
        let inputs: Vec<HnnWord> = specs.iter().map(MeridianSpec::element).collect();
        let initial = self.complexity(&b)?;
        let mut c = initial;
        let mut trace = Vec::new();
        let bound = (initial.0 + 1) * (initial.1 + 1) * (initial.1 + 1) * (initial.1 + 1);
        for step in 0..=bound {
            let mut sites = self.violations(&b);
            if sites.is_empty() {
                let certificate = self.certificate(&b)?;
                for (i, g) in inputs.iter().enumerate() {
                    if !self.contains(&b, g) {
                        return Err(Error::falsified("Proposition 1", format!("input generator {i} ({g}) is not in the output")));
                    }
                }
                return Ok(Goodified { graph: b, certificate, trace, initial });
            }
            sites.sort_by_key(|v| matches!(v, Violation::Iia(_)));
            // The first site is tried first; later ones only if it fails.
            let mut first_err = None;
            let mut done = None;
            for v in &sites {
                match self.macro_step(&b, v, c) {
                    Ok(r) => {
                        done = Some((v, r));
                        break;
                    }
                    Err(e) => {
                        first_err.get_or_insert(e);
                    }
                }
            }
            let Some((v, (next, notes, after))) = done else {
                let e = first_err.expect("at least one site");
                return Err(match e {
                    Error::Stall(m) => Error::Stall(format!("step {step}: {m}")),
                    e => e,
                });
            };
            let (kind, site) = site_text(&b, v);
            let inputs_traced = inputs.iter().filter(|g| self.contains(&next, g)).count();
            trace.push(TraceEntry { step, kind, site, before: c, after, notes, inputs_traced });
            b = next;
            c = after;
        }
        Err(Error::Stall("step bound exceeded".into()))
    }

    /// One macro step starting at `v`, chaining further folds until the
    /// complexity drops below `c`.
    fn macro_step(&self, b: &AGraph, v: &Violation, c: ComplexityGood) -> Result<(AGraph, Vec<String>, ComplexityGood)> {
        let mut next = b.clone();
        let mut notes = Vec::new();
        match v {
            Violation::Ia(s) => self.macro_ia(&mut next, s, &mut notes)?,
            Violation::Iia(s) => self.macro_iia(&mut next, s, &mut notes, 0)?,
        }
        for _ in 0..=next.edge_count() + 2 {
            self.prune_trivial_leaves(&mut next, &mut notes);
            if let Ok(a) = self.complexity(&next) {
                if a < c {
                    return Ok((next, notes, a));
                }
            }
            if !self.apply_step(&mut next, &mut notes)? {
                break;
            }
        }
        let (kind, site) = site_text(b, v);
        let now = self.complexity(&next).map_err(|e| Error::Stall(format!("{kind} at {site} left a bad graph: {e}")))?;
        Err(Error::Stall(format!("{kind} at {site}: complexity {now:?} not below {c:?}")))
    }

    /// Applies the first IA fold, or else the first IIA fold; false if `b` is folded.
    fn apply_step(&self, b: &mut AGraph, notes: &mut Vec<String>) -> Result<bool> {
        if let Some(s) = self.find_ia(b) {
            self.macro_ia(b, &s, notes)?;
        } else if let Some(s) = self.find_iia(b) {
            self.macro_iia(b, &s, notes, 0)?;
        } else {
            return Ok(false);
        }
        Ok(true)
    }

    pub fn certificate(&self, b: &AGraph) -> Result<GoodCertificate> {
        let pieces = self.classify(b)?;
        let gens = self.extract_generators(b)?;
        let mut factors: Vec<Factor> = pieces.iter().map(|p| Factor { kind: p.kind, generators: Vec::new() }).collect();
        let mut partition = vec![Vec::new(); pieces.len()];
        for (i, (k, g)) in gens.into_iter().enumerate() {
            factors[k].generators.push(g);
            partition[k].push(i);
        }
        let mut peripheral = Vec::new();
        let m_v = self.pattern().m_v();
        for u in b.vertex_ids() {
            let g = b.vgroup(u);
            if g.is_trivial() {
                continue;
            }
            let graph = self.vgroup_graph(g);
            let profile = graph.closed_lift_profile(m_v)?;
            let paths = graph.tree_paths();
            let conjugator = (0..graph.vertex_count()).find(|&v| profile.at(v) == Some(1)).map(|v| paths[v].clone());
            let factor = pieces.iter().position(|p| p.vertices.contains(&u));
            if conjugator.is_some() {
                let k = factor.expect("nontrivial vertex lies in a piece");
                if partition[k].len() < 2 {
                    return Err(Error::falsified(
                        "good subgroup condition (2)",
                        format!("m_V conjugate at vertex {u} in a factor of rank {}", partition[k].len()),
                    ));
                }
            }
            peripheral.push(PeripheralEntry { vertex: u, class: g.class(), conjugator, factor });
        }
        Ok(GoodCertificate { factors, partition, peripheral })
    }
}

fn site_text(b: &AGraph, v: &Violation) -> (&'static str, String) {
    match v {
        Violation::Ia(s) => ("IA", format!("vertex {} edges {} {}", s.vertex, s.h1.edge, s.h2.edge)),
        Violation::Iia(s) => ("IIA", format!("edge {} from vertex {}", s.half.edge, b.source(s.half))),
    }
}
