use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::algebra::Engine;
use super::goodify::MeridianSpec;
use super::graph::{AGraph, EdgeClass, Half, VGroup, VertexClass};
use crate::error::{Error, Result};
use crate::patternspace::{HnnWord, Side};
use crate::stallings::SubgroupGraph;
use crate::word::Word;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PieceKind {
    Cyclic,
    NonCyclic { v_full: usize },
}

/// A connected component of the subgraph carried by nontrivial groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub kind: PieceKind,
}

impl Piece {
    pub fn rank(&self) -> usize {
        match self.kind {
            PieceKind::Cyclic => 1,
            PieceKind::NonCyclic { v_full } => v_full + 1,
        }
    }
}

/// `(rank, |EB|, |EB| - e_full, |EB| - |E_B|)`, compared lexicographically.
/// Edge counts are over oriented edges.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComplexityGood(pub usize, pub usize, pub usize, pub usize);

fn not_good(msg: alloc::string::String) -> Error {
    Error::Precondition(format!("not good: {msg}"))
}

impl Engine {
    /// Components of nontrivial vertices joined by nontrivial edges, ordered by least vertex.
    pub fn components(&self, b: &AGraph) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for u in b.vertex_ids() {
            if b.vgroup(u).class() == VertexClass::Trivial || seen.contains(&u) {
                continue;
            }
            let mut verts = vec![u];
            let mut edges = BTreeSet::new();
            seen.insert(u);
            let mut stack = vec![u];
            while let Some(v) = stack.pop() {
                for h in b.halves_at(v) {
                    if b.egroup(h).class() == EdgeClass::Trivial {
                        continue;
                    }
                    edges.insert(h.edge);
                    let w = b.target(h);
                    if seen.insert(w) {
                        verts.push(w);
                        stack.push(w);
                    }
                }
            }
            verts.sort_unstable();
            out.push((verts, edges.into_iter().collect()));
        }
        out
    }

    fn piece_halves(&self, b: &AGraph, v: usize) -> Vec<Half> {
        b.halves_at(v).into_iter().filter(|&h| b.egroup(h).class() != EdgeClass::Trivial).collect()
    }

    /// Splits the essential subgraph into pieces and validates each against the
    /// cyclic or non-cyclic shape. Errors name the first failing condition.
    pub fn classify(&self, b: &AGraph) -> Result<Vec<Piece>> {
        self.check_compatible(b)?;
        let mut pieces = Vec::new();
        for (verts, edges) in self.components(b) {
            let kind = self.piece_kind(b, &verts, &edges)?;
            for &v in &verts {
                let hs = self.piece_halves(b, v);
                for h in &hs {
                    if self.iia_at(b, *h).is_some() {
                        return Err(not_good(format!("piece edge {} admits a fold of type IIA", h.edge)));
                    }
                }
                let bu = self.vgroup_graph(b.vgroup(v));
                for (i, &h1) in hs.iter().enumerate() {
                    for &h2 in &hs[i + 1..] {
                        if b.sign(h1) == b.sign(h2)
                            && bu.double_coset_decompose(&b.o(h1), self.pattern().subgroup(b.side_out(h1)), &b.o(h2)).is_some()
                        {
                            return Err(not_good(format!("piece edges {} and {} fold (IA)", h1.edge, h2.edge)));
                        }
                    }
                }
            }
            pieces.push(Piece { vertices: verts, edges, kind });
        }
        Ok(pieces)
    }

    fn piece_kind(&self, b: &AGraph, verts: &[usize], edges: &[usize]) -> Result<PieceKind> {
        let class = |v: usize| b.vgroup(v).class();
        let full: Vec<usize> = verts.iter().copied().filter(|&v| class(v) == VertexClass::Full).collect();
        if full.is_empty() {
            for &v in verts {
                if class(v) != VertexClass::Cyclic {
                    return Err(not_good(format!("vertex {v} is almost full without a full vertex in its piece")));
                }
                let hs = self.piece_halves(b, v);
                if hs.len() > 2 {
                    return Err(not_good(format!("cyclic piece branches at vertex {v}")));
                }
                for h in hs {
                    if b.egroup(h).class() != EdgeClass::Cyclic {
                        return Err(not_good(format!("full edge {} in a cyclic piece", h.edge)));
                    }
                    self.image_generates(b, h, v)?;
                }
            }
            return Ok(PieceKind::Cyclic);
        }
        let mut spine_deg = BTreeSet::new();
        for &v in verts {
            let hs = self.piece_halves(b, v);
            let nfull = hs.iter().filter(|h| b.egroup(**h).class() == EdgeClass::Full).count();
            let ncyc = hs.len() - nfull;
            match class(v) {
                VertexClass::Full => {
                    if ncyc > 0 || nfull > 2 {
                        return Err(not_good(format!("full vertex {v} has {ncyc} cyclic and {nfull} full edges")));
                    }
                    spine_deg.insert(v);
                }
                VertexClass::AlmostFull => {
                    if nfull != 1 || ncyc > 2 {
                        return Err(not_good(format!("almost full vertex {v} has {nfull} full and {ncyc} cyclic edges")));
                    }
                    let h = *hs.iter().find(|h| b.egroup(**h).class() == EdgeClass::Full).unwrap();
                    self.image_generates(b, h, v)?;
                    spine_deg.insert(v);
                }
                VertexClass::Cyclic => {
                    if nfull > 0 || ncyc > 2 {
                        return Err(not_good(format!("cyclic vertex {v} is not inside a tail")));
                    }
                    for h in hs {
                        self.image_generates(b, h, v)?;
                    }
                }
                VertexClass::Trivial => unreachable!(),
            }
        }
        // The spine of full edges is one path through the full and almost full vertices.
        let spine: Vec<usize> = spine_deg.iter().copied().collect();
        let mut reached = BTreeSet::from([full[0]]);
        let mut stack = vec![full[0]];
        while let Some(v) = stack.pop() {
            for h in self.piece_halves(b, v) {
                if b.egroup(h).class() == EdgeClass::Full && reached.insert(b.target(h)) {
                    stack.push(b.target(h));
                }
            }
        }
        if reached.len() != spine.len() {
            return Err(not_good(format!("spine of piece at {} is disconnected", full[0])));
        }
        // Tails are intervals hanging off an end: the attachment vertex has one tail edge.
        for &e in edges {
            let h = Half::fwd(e);
            if b.egroup(h).class() != EdgeClass::Cyclic {
                continue;
            }
            let (a, c) = (b.source(h), b.target(h));
            for (end, other) in [(a, c), (c, a)] {
                if class(end) == VertexClass::AlmostFull && class(other) == VertexClass::Cyclic {
                    let tail_edges = self.piece_halves(b, other).len();
                    if tail_edges > 2 {
                        return Err(not_good(format!("tail vertex {other} branches")));
                    }
                }
                if class(end) == VertexClass::AlmostFull && class(other) == VertexClass::AlmostFull {
                    return Err(not_good(format!("cyclic edge {e} joins two almost full vertices")));
                }
            }
        }
        Ok(PieceKind::NonCyclic { v_full: full.len() })
    }

    /// Checks that the image of the edge group generates the group at `v`.
    fn image_generates(&self, b: &AGraph, h: Half, v: usize) -> Result<()> {
        let img = SubgroupGraph::from_generators(2, &self.source_image(b, h))?;
        if img != self.vgroup_graph(b.vgroup(v)) {
            return Err(not_good(format!("edge {} does not carry the whole group of vertex {v}", h.edge)));
        }
        Ok(())
    }

    /// `r + Σ (v_full + 1)` over the pieces.
    pub fn rank_good(&self, b: &AGraph) -> Result<usize> {
        Ok(self.classify(b)?.iter().map(Piece::rank).sum())
    }

    pub fn complexity(&self, b: &AGraph) -> Result<ComplexityGood> {
        let rank = self.rank_good(b)?;
        Ok(self.edge_complexity(b, rank))
    }

    pub fn edge_complexity(&self, b: &AGraph, rank: usize) -> ComplexityGood {
        let eb = 2 * b.edge_count();
        let mut full = 0;
        let mut nontrivial = 0;
        for e in b.edge_ids() {
            match b.edge(e).group.class() {
                EdgeClass::Full => {
                    full += 2;
                    nontrivial += 2;
                }
                EdgeClass::Cyclic => nontrivial += 2,
                EdgeClass::Trivial => {}
            }
        }
        ComplexityGood(rank, eb, eb - full, eb - nontrivial)
    }

    /// One meridian conjugate per unit of rank, grouped by piece.
    pub fn extract_generators(&self, b: &AGraph) -> Result<Vec<(usize, HnnWord)>> {
        let specs = self.extract_specs(b)?;
        Ok(specs.into_iter().map(|(k, s)| (k, self.pattern().britton_reduce(&s.element()))).collect())
    }

    /// The generators of `extract_generators` as conjugator paths of `x1` or `x2`.
    pub fn extract_specs(&self, b: &AGraph) -> Result<Vec<(usize, MeridianSpec)>> {
        let pieces = self.classify(b)?;
        let paths = b.tree_paths();
        let depth = |v: usize| paths[v].as_ref().map_or(usize::MAX, Vec::len);
        let mu = |v: usize| self.path_label(b, paths[v].as_ref().expect("tree"));
        let spec = |m: HnnWord, w: &Word, i: u32| MeridianSpec::new(self.pattern().britton_reduce(&m.mul_base(w)), i);
        let mut out = Vec::new();
        for (k, p) in pieces.iter().enumerate() {
            match p.kind {
                PieceKind::Cyclic => {
                    let v = *p.vertices.iter().min_by_key(|&&v| (depth(v), v)).unwrap();
                    let VGroup::Cyclic { conj, gen } = b.vgroup(v) else {
                        return Err(Error::Stall(format!("cyclic piece rooted at non-cyclic vertex {v}")));
                    };
                    out.push((k, spec(mu(v), conj, *gen)?));
                }
                PieceKind::NonCyclic { .. } => {
                    let fulls: Vec<usize> =
                        p.vertices.iter().copied().filter(|&v| b.vgroup(v).class() == VertexClass::Full).collect();
                    let w = *fulls.iter().min_by_key(|&&v| (depth(v), v)).unwrap();
                    let one = Word::identity(2);
                    out.push((k, spec(mu(w), &one, 1)?));
                    out.push((k, spec(mu(w), &one, 2)?));
                    let mut rest: Vec<usize> = fulls.into_iter().filter(|&v| v != w).collect();
                    rest.sort_by_key(|&v| (depth(v), v));
                    for v in rest {
                        let h = *paths[v].as_ref().unwrap().last().unwrap();
                        let i = if b.side_in(h) == Side::Alpha { 2 } else { 1 };
                        out.push((k, spec(mu(v), &b.t(h).inverse(), i)?));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Rank of `π_1` of every piece computed from abelianizations of the tree of groups,
    /// summed over the pieces.
    pub fn grushko_sum(&self, b: &AGraph) -> Result<usize> {
        let pieces = self.classify(b)?;
        let mut total = 0;
        for p in &pieces {
            let mut offset = alloc::collections::BTreeMap::new();
            let mut cols = 0;
            let mut graphs = alloc::collections::BTreeMap::new();
            for &v in &p.vertices {
                let gens = self.vgroup_gens(b.vgroup(v));
                offset.insert(v, cols);
                cols += gens.len();
                graphs.insert(v, SubgroupGraph::from_generators(2, &gens)?);
            }
            let mut rows: Vec<Vec<i64>> = Vec::new();
            for &e in &p.edges {
                let h = Half::fwd(e);
                for y in self.egroup_gens(b.egroup(h)) {
                    let mut row = vec![0i64; cols];
                    for (end, half, sgn) in [(b.source(h), h, 1i64), (b.target(h), h.flip(), -1)] {
                        let w = self.push_out(b, half, &y);
                        let expr = graphs[&end]
                            .witness(&w)
                            .ok_or_else(|| Error::precondition("edge image outside vertex group"))?;
                        for (j, s) in expr.exponent_sums().0.iter().enumerate() {
                            row[offset[&end] + j] += sgn * s;
                        }
                    }
                    rows.push(row);
                }
            }
            total += cols - matrix_rank(rows);
        }
        Ok(total)
    }
}

/// Rank over `Q` by fraction-free elimination.
pub(crate) fn matrix_rank(mut rows: Vec<Vec<i64>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let (a, b) = (rows[rank][c] as i128, rows[r][c] as i128);
                let g = gcd(a, b);
                let (fa, fb) = (b / g, a / g);
                for k in 0..cols {
                    let v = fb * rows[r][k] as i128 - fa * rows[rank][k] as i128;
                    rows[r][k] = v as i64;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl VGroup {
    pub fn is_trivial(&self) -> bool {
        matches!(self, VGroup::Trivial)
    }
}
