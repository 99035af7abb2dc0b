use alloc::format;
use alloc::vec::Vec;

use super::graph::{AGraph, EGroup, Half, VGroup};
use crate::error::{Error, Result};
use crate::patternspace::{HnnWord, PatternGroup, Side};
use crate::stallings::SubgroupGraph;
use crate::word::Word;

/// Pair of equally typed halves at a vertex with `o(h2) = b · o(h1) · α_s(c)`,
/// `b ∈ B_u`, `c ∈ A_e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IaSite {
    pub vertex: usize,
    pub h1: Half,
    pub h2: Half,
    pub b: Word,
    pub c: Word,
}

/// Half whose edge group is smaller than the source preimage
/// `α_s^{-1}(o^{-1} B_u o)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IiaSite {
    pub half: Half,
    pub preimage: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Ia(IaSite),
    Iia(IiaSite),
}

/// Group-theoretic queries for A-graphs over the pattern group.
#[derive(Clone, Debug, Default)]
pub struct Engine {
    pg: PatternGroup,
}

fn x(i: u32) -> Word {
    Word::generator(2, i)
}

impl Engine {
    pub fn new() -> Engine {
        Engine { pg: PatternGroup::new() }
    }

    pub fn pattern(&self) -> &PatternGroup {
        &self.pg
    }

    pub fn vgroup_gens(&self, g: &VGroup) -> Vec<Word> {
        match g {
            VGroup::Trivial => Vec::new(),
            VGroup::Cyclic { conj, gen } => alloc::vec![conj.conjugate(&x(*gen))],
            VGroup::AlmostFull { conj, side } => {
                self.pg.images(*side).iter().map(|w| conj.conjugate(w)).collect()
            }
            VGroup::Full => alloc::vec![x(1), x(2)],
        }
    }

    pub fn vgroup_graph(&self, g: &VGroup) -> SubgroupGraph {
        match g {
            VGroup::Trivial => SubgroupGraph::trivial(2),
            VGroup::Full => SubgroupGraph::full(2),
            _ => SubgroupGraph::from_generators(2, &self.vgroup_gens(g)).expect("rank 2 words"),
        }
    }

    pub fn egroup_gens(&self, g: &EGroup) -> Vec<Word> {
        match g {
            EGroup::Trivial => Vec::new(),
            EGroup::Cyclic { conj, gen } => alloc::vec![conj.conjugate(&x(*gen))],
            EGroup::Full => alloc::vec![x(1), x(2)],
        }
    }

    pub fn egroup_graph(&self, g: &EGroup) -> SubgroupGraph {
        SubgroupGraph::from_generators(2, &self.egroup_gens(g)).expect("rank 2 words")
    }

    /// Recognizes the subgroup generated by `gens` as one of the four vertex shapes.
    pub fn type_vgroup(&self, gens: &[Word]) -> Option<VGroup> {
        let h = SubgroupGraph::from_generators(2, gens).ok()?;
        self.type_vgraph(&h)
    }

    pub fn type_vgraph(&self, h: &SubgroupGraph) -> Option<VGroup> {
        if h.is_trivial() {
            return Some(VGroup::Trivial);
        }
        if h.is_full() {
            return Some(VGroup::Full);
        }
        match h.rank() {
            1 => {
                let (c, core) = h.basis()[0].cyclic_reduction();
                let core = core.word();
                (core.len() == 1).then(|| VGroup::cyclic(c, core.letters()[0].index()))
            }
            2 => {
                let paths = h.tree_paths();
                for side in [Side::Alpha, Side::Omega] {
                    for p in &paths {
                        if h.conjugate(&p.inverse()) == *self.pg.subgroup(side) {
                            return Some(VGroup::AlmostFull { conj: p.clone(), side });
                        }
                    }
                }
                None
            }
            _ => None,
        }
    }

    pub fn type_egroup(&self, gens: &[Word]) -> Option<EGroup> {
        let h = SubgroupGraph::from_generators(2, gens).ok()?;
        if h.is_trivial() {
            return Some(EGroup::Trivial);
        }
        if h.is_full() {
            return Some(EGroup::Full);
        }
        if h.rank() == 1 {
            let (c, core) = h.basis()[0].cyclic_reduction();
            let core = core.word();
            if core.len() == 1 {
                return Some(EGroup::cyclic(c, core.letters()[0].index()));
            }
        }
        None
    }

    pub fn same_vgroup(&self, a: &VGroup, b: &VGroup) -> bool {
        a.class() == b.class() && self.vgroup_graph(a) == self.vgroup_graph(b)
    }

    pub fn same_egroup(&self, a: &EGroup, b: &EGroup) -> bool {
        a.class() == b.class() && self.egroup_graph(a) == self.egroup_graph(b)
    }

    /// Source map applied to a word in `y1, y2`: `o · α_s(y) · o^{-1}`.
    pub fn push_out(&self, b: &AGraph, h: Half, y: &Word) -> Word {
        b.o(h).conjugate(&self.pg.boundary_map(b.side_out(h), y))
    }

    /// Target map: `t^{-1} · ω_s(y) · t`.
    pub fn push_in(&self, b: &AGraph, h: Half, y: &Word) -> Word {
        b.t(h).inverse().conjugate(&self.pg.boundary_map(b.side_in(h), y))
    }

    /// Inverse of [`push_out`](Self::push_out) on its image.
    pub fn pull_out(&self, b: &AGraph, h: Half, w: &Word) -> Option<Word> {
        let o = b.o(h);
        self.pg.preimage(b.side_out(h), &Word::product(2, [&o.inverse(), w, &o]))
    }

    pub fn pull_in(&self, b: &AGraph, h: Half, w: &Word) -> Option<Word> {
        self.pull_out(b, h.flip(), w)
    }

    pub fn source_image(&self, b: &AGraph, h: Half) -> Vec<Word> {
        self.egroup_gens(b.egroup(h)).iter().map(|y| self.push_out(b, h, y)).collect()
    }

    pub fn target_image(&self, b: &AGraph, h: Half) -> Vec<Word> {
        self.source_image(b, h.flip())
    }

    /// Basis of `α_s^{-1}(o^{-1} B_u o ∩ U_s)` as words in `y1, y2`.
    pub fn source_preimage(&self, b: &AGraph, h: Half) -> Vec<Word> {
        let u = b.source(h);
        let side = b.side_out(h);
        let bu = self.vgroup_graph(b.vgroup(u));
        let conj = bu.conjugate(&b.o(h).inverse());
        let inter = conj.intersection(self.pg.subgroup(side));
        inter.basis().iter().map(|w| self.pg.preimage(side, w).expect("member of U_side")).collect()
    }

    /// Edge images lie in the adjacent vertex groups.
    pub fn check_compatible(&self, b: &AGraph) -> Result<()> {
        if !b.is_tree() {
            return Err(Error::precondition("A-graph is not a tree"));
        }
        for u in b.vertex_ids() {
            let bu = self.vgroup_graph(b.vgroup(u));
            for h in b.halves_at(u) {
                for w in self.source_image(b, h) {
                    if !bu.contains(&w) {
                        return Err(Error::precondition(format!(
                            "edge {} image {w} not in vertex {u} group",
                            h.edge
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `μ(h) = o · l^s · t`.
    pub fn half_label(&self, b: &AGraph, h: Half) -> HnnWord {
        HnnWord::base(b.o(h)).mul(&HnnWord::stable(b.sign(h))).mul_base(&b.t(h))
    }

    pub fn path_label(&self, b: &AGraph, path: &[Half]) -> HnnWord {
        path.iter().fold(HnnWord::identity(), |acc, &h| acc.mul(&self.half_label(b, h)))
    }

    /// Generators of `π_1(B, u0)` coming from vertex groups, conjugated by tree paths.
    pub fn represented_generators(&self, b: &AGraph) -> Vec<HnnWord> {
        let paths = b.tree_paths();
        let mut out = Vec::new();
        for u in b.vertex_ids() {
            let mu = self.path_label(b, paths[u].as_ref().expect("tree"));
            for g in self.vgroup_gens(b.vgroup(u)) {
                out.push(self.pg.britton_reduce(&mu.conjugate(&HnnWord::base(g))));
            }
        }
        out
    }

    /// Membership in the represented subgroup, by reading the Britton-reduced form
    /// along the graph. Exact when `b` is folded; a `true` answer is always sound.
    pub fn contains(&self, b: &AGraph, g: &HnnWord) -> bool {
        let g = self.pg.britton_reduce(g);
        self.read(b, &g, b.base(), 0, &Word::identity(2))
    }

    fn read(&self, b: &AGraph, g: &HnnWord, u: usize, k: usize, pending: &Word) -> bool {
        let x = pending.mul(&g.pieces[k]);
        let bu = self.vgroup_graph(b.vgroup(u));
        if k == g.signs.len() {
            return u == b.base() && bu.contains(&x);
        }
        let s = g.signs[k];
        for h in b.halves_at(u) {
            if b.sign(h) != s {
                continue;
            }
            let side = b.side_out(h);
            if let Some((_, kk)) = bu.double_coset_decompose(&b.o(h), self.pg.subgroup(side), &x) {
                let c = self.pg.preimage(side, &kk).expect("member of U_side");
                let next = b.t(h).inverse().mul(&self.pg.boundary_map(b.side_in(h), &c));
                if self.read(b, g, b.target(h), k + 1, &next) {
                    return true;
                }
            }
        }
        false
    }

    pub fn find_ia(&self, b: &AGraph) -> Option<IaSite> {
        for u in b.vertex_ids() {
            if let Some(site) = self.find_ia_at(b, u) {
                return Some(site);
            }
        }
        None
    }

    pub fn find_ia_at(&self, b: &AGraph, u: usize) -> Option<IaSite> {
        let halves = b.halves_at(u);
        let bu = self.vgroup_graph(b.vgroup(u));
        for (i, &h1) in halves.iter().enumerate() {
            for &h2 in &halves[i + 1..] {
                if let Some(site) = self.ia_pair(b, &bu, h1, h2) {
                    return Some(site);
                }
            }
        }
        None
    }

    fn ia_pair(&self, b: &AGraph, bu: &SubgroupGraph, h1: Half, h2: Half) -> Option<IaSite> {
        if b.sign(h1) != b.sign(h2) {
            return None;
        }
        let side = b.side_out(h1);
        let (bb, k) = bu.double_coset_decompose(&b.o(h1), self.pg.subgroup(side), &b.o(h2))?;
        let c = self.pg.preimage(side, &k).expect("member of U_side");
        Some(IaSite { vertex: b.source(h1), h1, h2, b: bb, c })
    }

    pub fn find_iia(&self, b: &AGraph) -> Option<IiaSite> {
        for u in b.vertex_ids() {
            for h in b.halves_at(u) {
                if let Some(site) = self.iia_at(b, h) {
                    return Some(site);
                }
            }
        }
        None
    }

    pub fn iia_at(&self, b: &AGraph, h: Half) -> Option<IiaSite> {
        let pre = self.source_preimage(b, h);
        let pg = SubgroupGraph::from_generators(2, &pre).expect("rank 2");
        (pg != self.egroup_graph(b.egroup(h))).then_some(IiaSite { half: h, preimage: pre })
    }

    pub fn violations(&self, b: &AGraph) -> Vec<Violation> {
        let mut out = Vec::new();
        for u in b.vertex_ids() {
            let halves = b.halves_at(u);
            let bu = self.vgroup_graph(b.vgroup(u));
            for (i, &h1) in halves.iter().enumerate() {
                for &h2 in &halves[i + 1..] {
                    if let Some(site) = self.ia_pair(b, &bu, h1, h2) {
                        out.push(Violation::Ia(site));
                    }
                }
            }
        }
        for u in b.vertex_ids() {
            for h in b.halves_at(u) {
                if let Some(site) = self.iia_at(b, h) {
                    out.push(Violation::Iia(site));
                }
            }
        }
        out
    }

    pub fn is_folded(&self, b: &AGraph) -> bool {
        self.find_ia(b).is_none() && self.find_iia(b).is_none()
    }
}
