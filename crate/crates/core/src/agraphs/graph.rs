use alloc::vec::Vec;

use crate::patternspace::Side;
use crate::word::Word;

/// Vertex subgroup of `A_v = F(x1, x2)`, typed by shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VGroup {
    Trivial,
    /// `⟨conj · x_gen · conj^{-1}⟩`
    Cyclic { conj: Word, gen: u32 },
    /// `conj · U_side · conj^{-1}`
    AlmostFull { conj: Word, side: Side },
    Full,
}

/// Edge subgroup of `A_e = F(y1, y2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EGroup {
    Trivial,
    /// `⟨conj · y_gen · conj^{-1}⟩`
    Cyclic { conj: Word, gen: u32 },
    Full,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexClass {
    Trivial,
    Cyclic,
    AlmostFull,
    Full,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeClass {
    Trivial,
    Cyclic,
    Full,
}

impl VGroup {
    pub fn class(&self) -> VertexClass {
        match self {
            VGroup::Trivial => VertexClass::Trivial,
            VGroup::Cyclic { .. } => VertexClass::Cyclic,
            VGroup::AlmostFull { .. } => VertexClass::AlmostFull,
            VGroup::Full => VertexClass::Full,
        }
    }

    pub fn cyclic(conj: Word, gen: u32) -> VGroup {
        VGroup::Cyclic { conj: strip_trailing(conj, gen), gen }
    }
}

impl EGroup {
    pub fn class(&self) -> EdgeClass {
        match self {
            EGroup::Trivial => EdgeClass::Trivial,
            EGroup::Cyclic { .. } => EdgeClass::Cyclic,
            EGroup::Full => EdgeClass::Full,
        }
    }

    pub fn cyclic(conj: Word, gen: u32) -> EGroup {
        EGroup::Cyclic { conj: strip_trailing(conj, gen), gen }
    }
}

fn strip_trailing(conj: Word, gen: u32) -> Word {
    let keep = conj.letters().iter().rposition(|g| g.index() != gen).map_or(0, |p| p + 1);
    conj.prefix(keep)
}

/// Edge `f` from `from` to `to` of type `e` (`sign = 1`) or `e^{-1}` (`sign = -1`),
/// labelled `(o, t)` so that `μ(f) = o · l^sign · t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AEdge {
    pub from: usize,
    pub to: usize,
    pub sign: i8,
    pub o: Word,
    pub t: Word,
    pub group: EGroup,
}

/// An edge taken in one of its two orientations.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Half {
    pub edge: usize,
    pub rev: bool,
}

impl Half {
    pub fn fwd(edge: usize) -> Half {
        Half { edge, rev: false }
    }

    pub fn flip(self) -> Half {
        Half { edge: self.edge, rev: !self.rev }
    }
}

/// A tree-shaped A-graph over the pattern graph of groups (one vertex, one edge pair).
/// Vertex and edge ids are stable across moves; removed slots become `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AGraph {
    vertices: Vec<Option<VGroup>>,
    edges: Vec<Option<AEdge>>,
    base: usize,
}

impl Default for AGraph {
    fn default() -> Self {
        AGraph::new()
    }
}

impl AGraph {
    /// Single base vertex with trivial group.
    pub fn new() -> AGraph {
        AGraph { vertices: alloc::vec![Some(VGroup::Trivial)], edges: Vec::new(), base: 0 }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn add_vertex(&mut self, g: VGroup) -> usize {
        self.vertices.push(Some(g));
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, edge: AEdge) -> usize {
        assert!(self.is_vertex(edge.from) && self.is_vertex(edge.to));
        self.edges.push(Some(edge));
        self.edges.len() - 1
    }

    pub fn is_vertex(&self, u: usize) -> bool {
        matches!(self.vertices.get(u), Some(Some(_)))
    }

    pub fn vertex_ids(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&u| self.vertices[u].is_some()).collect()
    }

    pub fn edge_ids(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].is_some()).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.iter().flatten().count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().flatten().count()
    }

    pub fn vgroup(&self, u: usize) -> &VGroup {
        self.vertices[u].as_ref().expect("live vertex")
    }

    pub fn set_vgroup(&mut self, u: usize, g: VGroup) {
        *self.vertices[u].as_mut().expect("live vertex") = g;
    }

    pub fn edge(&self, e: usize) -> &AEdge {
        self.edges[e].as_ref().expect("live edge")
    }

    pub fn edge_mut(&mut self, e: usize) -> &mut AEdge {
        self.edges[e].as_mut().expect("live edge")
    }

    pub fn remove_edge(&mut self, e: usize) {
        self.edges[e] = None;
    }

    pub fn remove_vertex(&mut self, u: usize) {
        assert_ne!(u, self.base, "base vertex cannot be removed");
        self.vertices[u] = None;
    }

    /// Halves leaving `u`, ordered by (edge id, orientation).
    pub fn halves_at(&self, u: usize) -> Vec<Half> {
        let mut out = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if let Some(e) = e {
                if e.from == u {
                    out.push(Half { edge: id, rev: false });
                }
                if e.to == u {
                    out.push(Half { edge: id, rev: true });
                }
            }
        }
        out
    }

    pub fn source(&self, h: Half) -> usize {
        let e = self.edge(h.edge);
        if h.rev { e.to } else { e.from }
    }

    pub fn target(&self, h: Half) -> usize {
        self.source(h.flip())
    }

    pub fn sign(&self, h: Half) -> i8 {
        let s = self.edge(h.edge).sign;
        if h.rev { -s } else { s }
    }

    /// Side of the boundary map at the source: α for type `e`, ω for `e^{-1}`.
    pub fn side_out(&self, h: Half) -> Side {
        if self.sign(h) > 0 { Side::Alpha } else { Side::Omega }
    }

    pub fn side_in(&self, h: Half) -> Side {
        self.side_out(h).other()
    }

    pub fn o(&self, h: Half) -> Word {
        let e = self.edge(h.edge);
        if h.rev { e.t.inverse() } else { e.o.clone() }
    }

    pub fn t(&self, h: Half) -> Word {
        let e = self.edge(h.edge);
        if h.rev { e.o.inverse() } else { e.t.clone() }
    }

    pub fn set_o(&mut self, h: Half, w: Word) {
        let e = self.edge_mut(h.edge);
        if h.rev { e.t = w.inverse() } else { e.o = w }
    }

    pub fn set_t(&mut self, h: Half, w: Word) {
        let e = self.edge_mut(h.edge);
        if h.rev { e.o = w.inverse() } else { e.t = w }
    }

    pub fn egroup(&self, h: Half) -> &EGroup {
        &self.edge(h.edge).group
    }

    pub fn set_egroup(&mut self, h: Half, g: EGroup) {
        self.edge_mut(h.edge).group = g;
    }

    /// True when the underlying graph is a tree.
    pub fn is_tree(&self) -> bool {
        let n = self.vertex_count();
        if self.edge_count() + 1 != n {
            return false;
        }
        self.reachable_from(self.base).len() == n
    }

    fn reachable_from(&self, start: usize) -> Vec<usize> {
        let mut seen = alloc::vec![false; self.vertices.len()];
        let mut stack = alloc::vec![start];
        let mut out = Vec::new();
        seen[start] = true;
        while let Some(u) = stack.pop() {
            out.push(u);
            for h in self.halves_at(u) {
                let v = self.target(h);
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Reduced edge path from the base to every vertex (indexed by vertex id).
    pub fn tree_paths(&self) -> Vec<Option<Vec<Half>>> {
        let mut paths: Vec<Option<Vec<Half>>> = alloc::vec![None; self.vertices.len()];
        paths[self.base] = Some(Vec::new());
        let mut queue = alloc::collections::VecDeque::from([self.base]);
        while let Some(u) = queue.pop_front() {
            let pu = paths[u].clone().unwrap();
            for h in self.halves_at(u) {
                let v = self.target(h);
                if paths[v].is_none() {
                    let mut p = pu.clone();
                    p.push(h);
                    paths[v] = Some(p);
                    queue.push_back(v);
                }
            }
        }
        paths
    }

    /// Distance from the base, for every live vertex.
    pub fn depths(&self) -> Vec<Option<usize>> {
        self.tree_paths().into_iter().map(|p| p.map(|p| p.len())).collect()
    }

    /// Identifier map onto `0..n` in canonical (BFS from base) order, for display.
    pub fn display_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.vertex_ids();
        let depth = self.depths();
        order.sort_by_key(|&u| (depth[u], u));
        order
    }
}
