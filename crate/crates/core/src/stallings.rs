//! Stallings graphs of finitely generated subgroups of free groups.
//!
//! A [`SubgroupGraph`] is a folded, base-pointed core graph whose edges are
//! labelled by generators. Every positive edge also carries a *tag*: a word
//! in the original generating set. Tags are kept consistent under folding by
//! gauge transformations at the vertex being absorbed, so that the tag
//! product along any closed path at the base is an expression in the
//! generators whose image is the path label. This gives membership witnesses
//! without a second solver.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::word::{Gen, Word};

#[derive(Clone, Debug)]
struct RawEdge {
    from: usize,
    to: usize,
    gen: u32,
    tag: Word,
    alive: bool,
}

/// Mutable wedge-and-fold workspace.
struct Folder {
    tag_rank: u32,
    edges: Vec<RawEdge>,
    incident: Vec<Vec<usize>>,
    dead: Vec<bool>,
    protected: BTreeSet<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Side {
    Out,
    In,
}

impl Folder {
    fn new(tag_rank: u32) -> Folder {
        Folder {
            tag_rank,
            edges: Vec::new(),
            incident: Vec::new(),
            dead: Vec::new(),
            protected: BTreeSet::new(),
        }
    }

    fn add_vertex(&mut self) -> usize {
        self.incident.push(Vec::new());
        self.dead.push(false);
        self.incident.len() - 1
    }

    fn add_edge(&mut self, from: usize, to: usize, gen: u32, tag: Word) {
        let id = self.edges.len();
        self.edges.push(RawEdge { from, to, gen, tag, alive: true });
        self.incident[from].push(id);
        if to != from {
            self.incident[to].push(id);
        }
    }

    /// Adds a path spelling `letters` from `start` to `end`, tagging its last
    /// edge with `tag` (in the direction of reading).
    fn add_path(&mut self, start: usize, end: usize, letters: &[Gen], tag: Word) {
        let n = letters.len();
        let mut cur = start;
        for (k, &g) in letters.iter().enumerate() {
            let next = if k + 1 == n { end } else { self.add_vertex() };
            let t = if k + 1 == n { tag.clone() } else { Word::identity(self.tag_rank) };
            if g.is_positive() {
                self.add_edge(cur, next, g.index(), t);
            } else {
                self.add_edge(next, cur, g.index(), t.inverse());
            }
            cur = next;
        }
    }

    fn gauge(&mut self, x: usize, c: &Word) {
        if c.is_identity() {
            return;
        }
        let cinv = c.inverse();
        for &e in &self.incident[x] {
            let edge = &mut self.edges[e];
            if !edge.alive {
                continue;
            }
            let mut t = edge.tag.clone();
            if edge.from == x {
                t = cinv.mul(&t);
            }
            if edge.to == x {
                t = t.mul(c);
            }
            edge.tag = t;
        }
    }

    fn find_pair(&self, v: usize) -> Option<(usize, usize, Side)> {
        let mut seen: BTreeMap<(Side, u32), usize> = BTreeMap::new();
        for &e in &self.incident[v] {
            let edge = &self.edges[e];
            if !edge.alive {
                continue;
            }
            let mut keys = Vec::with_capacity(2);
            if edge.from == v {
                keys.push((Side::Out, edge.gen));
            }
            if edge.to == v {
                keys.push((Side::In, edge.gen));
            }
            for key in keys {
                if let Some(&other) = seen.get(&key) {
                    if other != e {
                        return Some((other, e, key.0));
                    }
                } else {
                    seen.insert(key, e);
                }
            }
        }
        None
    }

    fn fold(&mut self) {
        let mut stack: Vec<usize> = (0..self.incident.len()).collect();
        while let Some(v) = stack.pop() {
            if self.dead[v] {
                continue;
            }
            while let Some((e1, e2, side)) = self.find_pair(v) {
                let far = |e: &RawEdge| if side == Side::Out { e.to } else { e.from };
                let (mut e1, mut e2) = (e1, e2);
                let mut a = far(&self.edges[e1]);
                let mut b = far(&self.edges[e2]);
                if a == b {
                    self.edges[e2].alive = false;
                    stack.push(a);
                    continue;
                }
                // b is absorbed into a; the protected base is never absorbed.
                if self.protected.contains(&b) {
                    core::mem::swap(&mut e1, &mut e2);
                    core::mem::swap(&mut a, &mut b);
                }
                debug_assert!(!self.protected.contains(&b));
                let t1 = self.edges[e1].tag.clone();
                let t2 = self.edges[e2].tag.clone();
                let c = match side {
                    Side::Out => t2.inverse().mul(&t1),
                    Side::In => t2.mul(&t1.inverse()),
                };
                self.gauge(b, &c);
                self.edges[e2].alive = false;
                let moved = core::mem::take(&mut self.incident[b]);
                for e in moved {
                    if !self.edges[e].alive {
                        continue;
                    }
                    let edge = &mut self.edges[e];
                    if edge.from == b {
                        edge.from = a;
                    }
                    if edge.to == b {
                        edge.to = a;
                    }
                    if !self.incident[a].contains(&e) {
                        self.incident[a].push(e);
                    }
                }
                self.dead[b] = true;
                if b == v {
                    stack.push(a);
                    break;
                }
                stack.push(a);
            }
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.incident[v]
            .iter()
            .filter(|&&e| self.edges[e].alive)
            .map(|&e| if self.edges[e].from == self.edges[e].to { 2 } else { 1 })
            .sum()
    }

    fn prune(&mut self) {
        let mut stack: Vec<usize> = (0..self.incident.len()).collect();
        while let Some(v) = stack.pop() {
            if self.dead[v] || self.protected.contains(&v) || self.degree(v) > 1 {
                continue;
            }
            for k in 0..self.incident[v].len() {
                let e = self.incident[v][k];
                if self.edges[e].alive {
                    self.edges[e].alive = false;
                    let other = if self.edges[e].from == v { self.edges[e].to } else { self.edges[e].from };
                    stack.push(other);
                }
            }
            self.dead[v] = true;
        }
    }

    /// Canonical graph: vertices renumbered by breadth-first search from `base`
    /// scanning letters in the order x1, X1, x2, X2, ...
    fn finish(mut self, rank: u32, base: usize, gens: Vec<Word>) -> SubgroupGraph {
        self.fold();
        self.prune();
        let mut out_adj: BTreeMap<usize, BTreeMap<Gen, (usize, usize)>> = BTreeMap::new();
        for (id, e) in self.edges.iter().enumerate() {
            if !e.alive {
                continue;
            }
            out_adj.entry(e.from).or_default().insert(Gen::pos(e.gen), (e.to, id));
            out_adj.entry(e.to).or_default().insert(Gen::neg(e.gen), (e.from, id));
        }
        let mut order = vec![base];
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        index.insert(base, 0);
        let mut k = 0;
        while k < order.len() {
            let v = order[k];
            if let Some(adj) = out_adj.get(&v) {
                for (_, &(to, _)) in adj.iter() {
                    if let alloc::collections::btree_map::Entry::Vacant(slot) = index.entry(to) {
                        slot.insert(order.len());
                        order.push(to);
                    }
                }
            }
            k += 1;
        }
        let n = order.len();
        let mut adj = vec![BTreeMap::new(); n];
        let mut edges = Vec::new();
        for (nv, &v) in order.iter().enumerate() {
            if let Some(a) = out_adj.get(&v) {
                for (&g, &(to, id)) in a.iter() {
                    adj[nv].insert(g, index[&to]);
                    if g.is_positive() {
                        edges.push(GraphEdge {
                            from: nv,
                            to: index[&to],
                            gen: g.index(),
                            tag: self.edges[id].tag.clone(),
                        });
                    }
                }
            }
        }
        SubgroupGraph { rank, adj, edges, gens, tag_rank: self.tag_rank }
    }
}

/// A positive edge of a subgroup graph.
#[derive(Clone, Debug)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub gen: u32,
    /// Expression of the edge in the original generators (see module docs).
    pub tag: Word,
}

/// Folded core graph of a subgroup of a free group, base vertex `0`.
#[derive(Clone, Debug)]
pub struct SubgroupGraph {
    rank: u32,
    adj: Vec<BTreeMap<Gen, usize>>,
    edges: Vec<GraphEdge>,
    gens: Vec<Word>,
    tag_rank: u32,
}

impl PartialEq for SubgroupGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.adj == other.adj
    }
}

impl Eq for SubgroupGraph {}

/// Minimal closing powers of a word at each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftProfile(pub Vec<Option<u32>>);

impl LiftProfile {
    pub fn at(&self, v: usize) -> Option<u32> {
        self.0[v]
    }

    pub fn closed_vertices(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&v| self.0[v].is_some()).collect()
    }
}

/// One nontrivial intersection `H ∩ g K g^{-1}` found by the pullback.
#[derive(Clone, Debug)]
pub struct PullbackComponent {
    /// Representative of the double coset `H g K`.
    pub rep: Word,
    /// Subgroup graph of `H ∩ rep K rep^{-1}`.
    pub intersection: SubgroupGraph,
}

/// Deterministic automaton view used for products and hair extensions.
#[derive(Clone, Debug)]
struct Automaton {
    adj: Vec<BTreeMap<Gen, usize>>,
}

impl Automaton {
    fn read(&self, start: usize, w: &Word) -> core::result::Result<usize, (usize, usize)> {
        let mut v = start;
        for (k, g) in w.letters().iter().enumerate() {
            match self.adj[v].get(g) {
                Some(&next) => v = next,
                None => return Err((v, k)),
            }
        }
        Ok(v)
    }

    /// Reads `w` from `start`, creating fresh vertices for the unread suffix.
    fn extend_by(&mut self, start: usize, w: &Word) -> usize {
        let (mut v, k) = match self.read(start, w) {
            Ok(v) => return v,
            Err(p) => p,
        };
        for &g in &w.letters()[k..] {
            let nv = self.adj.len();
            self.adj.push(BTreeMap::new());
            self.adj[v].insert(g, nv);
            self.adj[nv].insert(g.inverse(), v);
            v = nv;
        }
        v
    }
}

impl SubgroupGraph {
    /// Folded core of the wedge of generator loops.
    pub fn from_generators(rank: u32, gens: &[Word]) -> Result<SubgroupGraph> {
        for g in gens {
            if g.rank() != rank {
                return Err(Error::RankMismatch { left: rank, right: g.rank() });
            }
        }
        let tag_rank = gens.len() as u32;
        let mut f = Folder::new(tag_rank);
        let base = f.add_vertex();
        f.protected.insert(base);
        for (i, g) in gens.iter().enumerate() {
            if g.is_identity() {
                continue;
            }
            f.add_path(base, base, g.letters(), Word::generator(tag_rank, i as u32 + 1));
        }
        Ok(f.finish(rank, base, gens.to_vec()))
    }

    pub fn trivial(rank: u32) -> SubgroupGraph {
        SubgroupGraph::from_generators(rank, &[]).unwrap()
    }

    /// The whole free group of the given rank.
    pub fn full(rank: u32) -> SubgroupGraph {
        let gens: Vec<Word> = (1..=rank).map(|i| Word::generator(rank, i)).collect();
        SubgroupGraph::from_generators(rank, &gens).unwrap()
    }

    pub fn rank_of_alphabet(&self) -> u32 {
        self.rank
    }

    pub fn generators(&self) -> &[Word] {
        &self.gens
    }

    pub fn base(&self) -> usize {
        0
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    /// Geometric edge count.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Rank of the subgroup: `|E| - |V| + 1`.
    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.adj.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.adj.len() == 1 && self.edges.len() == self.rank as usize
    }

    /// Target of the edge labelled `g` at `v`.
    pub fn step(&self, v: usize, g: Gen) -> Option<usize> {
        self.adj[v].get(&g).copied()
    }

    pub fn out_letters(&self, v: usize) -> impl Iterator<Item = (Gen, usize)> + '_ {
        self.adj[v].iter().map(|(&g, &t)| (g, t))
    }

    /// Number of edge ends at `v` (loops count twice).
    pub fn valence(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Vertex reached by reading `w` from `v`, if the whole word reads.
    pub fn read(&self, v: usize, w: &Word) -> Option<usize> {
        let mut cur = v;
        for g in w.letters() {
            cur = *self.adj[cur].get(g)?;
        }
        Some(cur)
    }

    /// Length of the longest prefix of `w` readable from `v`, and where it ends.
    pub fn read_prefix(&self, v: usize, w: &Word) -> (usize, usize) {
        let mut cur = v;
        for (k, g) in w.letters().iter().enumerate() {
            match self.adj[cur].get(g) {
                Some(&n) => cur = n,
                None => return (k, cur),
            }
        }
        (w.len(), cur)
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.rank() == self.rank && self.read(0, w) == Some(0)
    }

    /// Expression of `w` in the original generators, as a word over
    /// `generators().len()` symbols, when `w` is a member.
    pub fn witness(&self, w: &Word) -> Option<Word> {
        if w.rank() != self.rank {
            return None;
        }
        let mut cur = 0;
        let mut expr = Word::identity(self.tag_rank);
        for g in w.letters() {
            let next = *self.adj[cur].get(g)?;
            let edge = if g.is_positive() {
                self.edge_between(cur, next, g.index())
            } else {
                self.edge_between(next, cur, g.index())
            };
            let t = &edge.tag;
            expr = if g.is_positive() { expr.mul(t) } else { expr.mul(&t.inverse()) };
            cur = next;
        }
        (cur == 0).then_some(expr)
    }

    fn edge_between(&self, from: usize, to: usize, gen: u32) -> &GraphEdge {
        self.edges
            .iter()
            .find(|e| e.from == from && e.to == to && e.gen == gen)
            .expect("adjacency and edge list out of sync")
    }

    /// Evaluates a generator expression (as produced by [`witness`](Self::witness)).
    pub fn evaluate(&self, expr: &Word) -> Word {
        expr.substitute(&self.gens, self.rank)
    }

    /// Shortlex-least path labels from the base to every vertex.
    pub fn tree_paths(&self) -> Vec<Word> {
        let n = self.adj.len();
        let mut paths: Vec<Option<Word>> = vec![None; n];
        paths[0] = Some(Word::identity(self.rank));
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let pv = paths[v].clone().unwrap();
            for (&g, &t) in &self.adj[v] {
                if paths[t].is_none() {
                    paths[t] = Some(pv.append_gen(g));
                    queue.push_back(t);
                }
            }
        }
        paths.into_iter().map(|p| p.expect("graph is connected")).collect()
    }

    /// Free basis read off the shortlex spanning tree, one element per non-tree edge.
    pub fn basis(&self) -> Vec<Word> {
        let paths = self.tree_paths();
        let mut out = Vec::new();
        for e in &self.edges {
            let p_from = &paths[e.from];
            let p_to = &paths[e.to];
            let g = Gen::pos(e.gen);
            if p_from.append_gen(g) == *p_to || p_to.append_gen(g.inverse()) == *p_from {
                continue;
            }
            out.push(p_from.append_gen(g).mul(&p_to.inverse()));
        }
        out
    }

    fn automaton(&self) -> Automaton {
        Automaton { adj: self.adj.clone() }
    }

    /// For every vertex, the minimal `p >= 1` such that the path labelled
    /// `w^p` starting there is closed.
    pub fn closed_lift_profile(&self, w: &Word) -> Result<LiftProfile> {
        if w.is_identity() {
            return Err(Error::precondition("closed lift profile of the trivial word"));
        }
        if w.rank() != self.rank {
            return Err(Error::RankMismatch { left: self.rank, right: w.rank() });
        }
        let n = self.adj.len();
        let profile = (0..n)
            .map(|v| {
                let mut cur = v;
                for p in 1..=n as u32 {
                    cur = self.read(cur, w)?;
                    if cur == v {
                        return Some(p);
                    }
                }
                None
            })
            .collect();
        Ok(LiftProfile(profile))
    }

    /// Subgroup graph of `a H a^{-1}`.
    pub fn conjugate(&self, a: &Word) -> SubgroupGraph {
        let gens: Vec<Word> = self.basis().iter().map(|g| a.conjugate(g)).collect();
        SubgroupGraph::from_generators(self.rank, &gens).unwrap()
    }

    /// Minimal `p >= 1` with `a w^p a^{-1}` in the subgroup, if any.
    pub fn conjugate_power_membership(&self, a: &Word, w: &Word) -> Result<Option<u32>> {
        let (c, core) = w.cyclic_reduction();
        let b = a.mul(&c);
        // b core^p b^{-1} in H iff core^p in b^{-1} H b.
        let shifted = self.conjugate(&b.inverse());
        Ok(shifted.closed_lift_profile(core.word())?.at(0))
    }

    /// Shortlex-least element of `H ∩ K g`, where `H = self`.
    pub fn coset_intersection(&self, k: &SubgroupGraph, g: &Word) -> Option<Word> {
        let mut kaut = k.automaton();
        let target = kaut.extend_by(0, g);
        let start = (0usize, 0usize);
        let goal = (0usize, target);
        let mut prev: BTreeMap<(usize, usize), ((usize, usize), Gen)> = BTreeMap::new();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some((u, v)) = queue.pop_front() {
            if (u, v) == goal {
                let mut letters = Vec::new();
                let mut cur = goal;
                while cur != start {
                    let (p, g) = prev[&cur];
                    letters.push(g);
                    cur = p;
                }
                letters.reverse();
                return Some(Word::from_gens(letters, self.rank));
            }
            for (&letter, &u2) in &self.adj[u] {
                if let Some(&v2) = kaut.adj[v].get(&letter) {
                    if seen.insert((u2, v2)) {
                        prev.insert((u2, v2), ((u, v), letter));
                        queue.push_back((u2, v2));
                    }
                }
            }
        }
        None
    }

    /// Decomposes `a = h s k` with `h` in `self`, `k` in `other`, if possible.
    /// `h` is the shortlex-least valid choice.
    pub fn double_coset_decompose(
        &self,
        s: &Word,
        other: &SubgroupGraph,
        a: &Word,
    ) -> Option<(Word, Word)> {
        // h in H ∩ a K s^{-1} = H ∩ (a K a^{-1}) (a s^{-1}).
        let conj = other.conjugate(a);
        let h = self.coset_intersection(&conj, &a.mul(&s.inverse()))?;
        let k = Word::product(self.rank, [&s.inverse(), &h.inverse(), a]);
        debug_assert!(other.contains(&k));
        Some((h, k))
    }

    /// The subgroup `H ∩ K`.
    pub fn intersection(&self, other: &SubgroupGraph) -> SubgroupGraph {
        let comps = product_components(self, other);
        let gens = comps
            .into_iter()
            .find(|c| c.vertices.contains(&(0, 0)))
            .map(|c| c.loops_at((0, 0)))
            .unwrap_or_default();
        SubgroupGraph::from_generators(self.rank, &gens).unwrap()
    }

    /// All nontrivial intersections `H ∩ g K g^{-1}`, one per double coset `H g K`.
    pub fn pullback_intersections(&self, other: &SubgroupGraph) -> Vec<PullbackComponent> {
        let hp = self.tree_paths();
        let kp = other.tree_paths();
        let mut out = Vec::new();
        for comp in product_components(self, other) {
            if comp.rank() == 0 {
                continue;
            }
            let (u, v) = comp
                .vertices
                .iter()
                .copied()
                .min_by(|&(u1, v1), &(u2, v2)| {
                    let a = hp[u1].mul(&kp[v1].inverse());
                    let b = hp[u2].mul(&kp[v2].inverse());
                    a.shortlex_cmp(&b).then((u1, v1).cmp(&(u2, v2)))
                })
                .unwrap();
            let rep = hp[u].mul(&kp[v].inverse());
            let gens: Vec<Word> =
                comp.loops_at((u, v)).iter().map(|l| hp[u].conjugate(l)).collect();
            out.push(PullbackComponent {
                rep,
                intersection: SubgroupGraph::from_generators(self.rank, &gens).unwrap(),
            });
        }
        out.sort_by(|a, b| a.rep.shortlex_cmp(&b.rep));
        out
    }

    /// Rooted isomorphism test: is `(self, v)` isomorphic to `(self, base)`?
    fn rooted_automorphic(&self, v: usize) -> bool {
        let n = self.adj.len();
        let mut map: Vec<Option<usize>> = vec![None; n];
        let mut used = vec![false; n];
        map[0] = Some(v);
        used[v] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let fx = map[x].unwrap();
            if self.adj[x].len() != self.adj[fx].len() {
                return false;
            }
            for (&g, &y) in &self.adj[x] {
                let Some(&fy) = self.adj[fx].get(&g) else { return false };
                match map[y] {
                    Some(m) if m != fy => return false,
                    Some(_) => {}
                    None => {
                        if used[fy] {
                            return false;
                        }
                        used[fy] = true;
                        map[y] = Some(fy);
                        queue.push_back(y);
                    }
                }
            }
        }
        true
    }

    /// The normalizer `{g : g H g^{-1} = H}`.
    pub fn normalizer(&self) -> SubgroupGraph {
        if self.is_trivial() {
            return SubgroupGraph::full(self.rank);
        }
        // Walk the hair from the base to the cyclic core.
        let mut hair = Word::identity(self.rank);
        let mut v = 0;
        let mut came_from: Option<Gen> = None;
        loop {
            let val = self.valence(v);
            let is_hair = if v == 0 { val == 1 } else { val == 2 && came_from.is_some() };
            if !is_hair || (v != 0 && self.adj[v].values().any(|&t| t == v)) {
                break;
            }
            let (&g, &t) = self
                .adj[v]
                .iter()
                .find(|(&g, _)| Some(g) != came_from.map(|c| c.inverse()))
                .unwrap();
            hair = hair.append_gen(g);
            came_from = Some(g);
            v = t;
        }
        let core = self.conjugate(&hair.inverse());
        let core_paths = core.tree_paths();
        let mut gens = core.basis();
        for x in 1..core.vertex_count() {
            if core.rooted_automorphic(x) {
                gens.push(core_paths[x].clone());
            }
        }
        let gens: Vec<Word> = gens.iter().map(|g| hair.conjugate(g)).collect();
        SubgroupGraph::from_generators(self.rank, &gens).unwrap()
    }

    /// Same subgroup, generated by its free basis.
    pub fn with_basis_generators(&self) -> SubgroupGraph {
        SubgroupGraph::from_generators(self.rank, &self.basis()).unwrap()
    }
}

struct ProductComponent {
    vertices: BTreeSet<(usize, usize)>,
    /// Positive edges `((u,v), gen, (u',v'))`.
    edges: Vec<((usize, usize), u32, (usize, usize))>,
    rank_alphabet: u32,
}

impl ProductComponent {
    fn rank(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    /// Free basis of loops at `root`.
    fn loops_at(&self, root: (usize, usize)) -> Vec<Word> {
        let mut adj: BTreeMap<(usize, usize), Vec<(Gen, (usize, usize))>> = BTreeMap::new();
        for &(a, g, b) in &self.edges {
            adj.entry(a).or_default().push((Gen::pos(g), b));
            adj.entry(b).or_default().push((Gen::neg(g), a));
        }
        for list in adj.values_mut() {
            list.sort();
        }
        let mut paths: BTreeMap<(usize, usize), Word> = BTreeMap::new();
        paths.insert(root, Word::identity(self.rank_alphabet));
        let mut queue = VecDeque::from([root]);
        let mut tree: BTreeSet<((usize, usize), Gen)> = BTreeSet::new();
        while let Some(x) = queue.pop_front() {
            let px = paths[&x].clone();
            for &(g, y) in adj.get(&x).map(|v| v.as_slice()).unwrap_or(&[]) {
                if !paths.contains_key(&y) {
                    paths.insert(y, px.append_gen(g));
                    tree.insert((x, g));
                    tree.insert((y, g.inverse()));
                    queue.push_back(y);
                }
            }
        }
        let mut out = Vec::new();
        for &(a, g, b) in &self.edges {
            if tree.contains(&(a, Gen::pos(g))) {
                continue;
            }
            out.push(paths[&a].append_gen(Gen::pos(g)).mul(&paths[&b].inverse()));
        }
        out
    }
}

fn product_components(h: &SubgroupGraph, k: &SubgroupGraph) -> Vec<ProductComponent> {
    let nk = k.vertex_count();
    let idx = |u: usize, v: usize| u * nk + v;
    let total = h.vertex_count() * nk;
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let n = p[c];
            p[c] = r;
            c = n;
        }
        r
    }
    let mut edges = Vec::new();
    for eh in h.edges() {
        for ek in k.edges() {
            if eh.gen == ek.gen {
                let a = (eh.from, ek.from);
                let b = (eh.to, ek.to);
                edges.push((a, eh.gen, b));
                let ra = find(&mut parent, idx(a.0, a.1));
                let rb = find(&mut parent, idx(b.0, b.1));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    let mut comps: BTreeMap<usize, ProductComponent> = BTreeMap::new();
    for u in 0..h.vertex_count() {
        for v in 0..nk {
            let r = find(&mut parent, idx(u, v));
            comps
                .entry(r)
                .or_insert_with(|| ProductComponent {
                    vertices: BTreeSet::new(),
                    edges: Vec::new(),
                    rank_alphabet: h.rank,
                })
                .vertices
                .insert((u, v));
        }
    }
    for e in edges {
        let r = find(&mut parent, idx(e.0 .0, e.0 .1));
        comps.get_mut(&r).unwrap().edges.push(e);
    }
    comps.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn conjugates_of_the_whole_group_fold_to_the_rose() {
        let full = SubgroupGraph::full(2);
        for a in ["X1 x2", "x1 x1 X2", "x2 x1 X2 X1"] {
            let c = full.conjugate(&w(a));
            assert!(c.is_full(), "{a}");
            for x in ["x1", "X2 x1 x2"] {
                let expr = c.witness(&w(x)).unwrap();
                assert_eq!(c.evaluate(&expr), w(x));
            }
        }
        let h = g(&["X1 x2 x1 X2 x1", "X1 x2 x1"]);
        assert!(h.is_full());
    }

    fn g(list: &[&str]) -> SubgroupGraph {
        let gens: Vec<Word> = list.iter().map(|s| w(s)).collect();
        SubgroupGraph::from_generators(2, &gens).unwrap()
    }

    #[test]
    fn u_alpha_shape() {
        let ua = g(&["x2 x1 X2", "x1"]);
        assert_eq!(ua.vertex_count(), 2);
        assert_eq!(ua.edge_count(), 3);
        assert_eq!(ua.rank(), 2);
        assert_eq!(ua.step(0, Gen::pos(1)), Some(0));
        assert_eq!(ua.step(1, Gen::pos(1)), Some(1));
        assert_eq!(ua.step(0, Gen::pos(2)), Some(1));
        // both generating sets of the figure give the same graph
        assert_eq!(ua, g(&["x2 X1 X2", "x1"]));
    }

    #[test]
    fn trivial_and_two_letter() {
        let t = g(&[]);
        assert_eq!(t.vertex_count(), 1);
        assert_eq!(t.rank(), 0);
        let c = g(&["x1 x2"]);
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.rank(), 1);
    }

    #[test]
    fn membership_and_witness() {
        let ua = g(&["x2 x1 X2", "x1"]);
        let mv = w("x2 X1 X2 x1");
        assert!(ua.contains(&mv));
        let expr = ua.witness(&mv).unwrap();
        assert_eq!(ua.evaluate(&expr), mv);
        assert!(!ua.contains(&w("x2")));
        assert!(ua.contains(&w("")));
    }

    #[test]
    fn witness_after_nontrivial_folding() {
        let h = g(&["x1 x2 x1", "x1 x2 X1", "x2 x2"]);
        for s in ["x1 x2 x1 x1 x2 X1", "x2 x2 x1 x2 x1", "X1 X2 X1 x1 x2 X1"] {
            let word = w(s);
            if let Some(e) = h.witness(&word) {
                assert_eq!(h.evaluate(&e), word);
            }
        }
        assert!(h.contains(&w("x1 x2 x1 x1 x2 X1")));
    }

    #[test]
    fn lift_profiles() {
        let ua = g(&["x2 x1 X2", "x1"]);
        let p = ua.closed_lift_profile(&w("x1")).unwrap();
        assert_eq!(p.0, vec![Some(1), Some(1)]);
        let p = ua.closed_lift_profile(&w("x2 X1 X2 x1")).unwrap();
        assert_eq!(p.0, vec![Some(1), None]);
        let p = g(&["x1"]).closed_lift_profile(&w("x2")).unwrap();
        assert_eq!(p.0, vec![None]);
        assert!(ua.closed_lift_profile(&w("")).is_err());
    }

    #[test]
    fn pullbacks() {
        let ua = g(&["x2 X1 X2", "x1"]);
        let uo = g(&["x2 X1 X2 x1 X2", "x2"]);
        // the only nontrivial intersection is the shared boundary curve <m_V> at g = 1
        let cross = ua.pullback_intersections(&uo);
        assert_eq!(cross.len(), 1);
        assert!(cross[0].rep.is_identity());
        assert_eq!(cross[0].intersection, g(&["x2 X1 X2 x1"]));
        let self_int = ua.pullback_intersections(&ua);
        let diag = self_int.iter().find(|c| c.rep.is_identity()).unwrap();
        assert_eq!(diag.intersection.rank(), 2);
        assert!(g(&["x1"]).pullback_intersections(&g(&["x2"])).is_empty());
    }

    #[test]
    fn normalizers() {
        let ua = g(&["x2 X1 X2", "x1"]);
        assert_eq!(ua.normalizer(), ua);
        let uo = g(&["x2 X1 X2 x1 X2", "x2"]);
        assert_eq!(uo.normalizer(), uo);
        let sq = SubgroupGraph::from_generators(1, &[Word::parse("x1 x1", 1).unwrap()]).unwrap();
        assert_eq!(sq.normalizer(), SubgroupGraph::full(1));
        let conj = g(&["x2 x1 x1 X2"]);
        assert_eq!(conj.normalizer(), g(&["x2 x1 X2"]));
    }

    #[test]
    fn full_fiber() {
        let f = SubgroupGraph::full(3);
        assert_eq!(f.rank(), 3);
        assert!(f.is_full());
    }

    #[test]
    fn double_cosets() {
        let ua = g(&["x2 X1 X2", "x1"]);
        let a = w("x1 x2 x1 x1 x1");
        let (h, k) = ua.double_coset_decompose(&w("x2"), &ua, &a).unwrap();
        assert!(ua.contains(&h) && ua.contains(&k));
        assert_eq!(Word::product(2, [&h, &w("x2"), &k]), a);
        assert!(ua.double_coset_decompose(&w(""), &ua, &w("x2 x2")).is_none());
    }

    #[test]
    fn intersections() {
        let h = g(&["x1", "x2 x2"]);
        let k = g(&["x1 x1", "x2"]);
        let i = h.intersection(&k);
        assert!(i.contains(&w("x1 x1")) && i.contains(&w("x2 x2")));
        assert!(!i.contains(&w("x1")));
    }
}
