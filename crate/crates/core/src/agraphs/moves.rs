use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::algebra::{Engine, IaSite, IiaSite};
use super::classify::PieceKind;
use super::graph::{AGraph, EGroup, EdgeClass, Half, VGroup, VertexClass};
use crate::error::{Error, Result};
use crate::patternspace::Side;
use crate::stallings::SubgroupGraph;
use crate::word::Word;

fn stall(msg: String) -> Error {
    Error::Stall(msg)
}

/// Index `i` with `A_v = ⟨α_s(y2), x_i⟩`: `α(y2) = x1`, `ω(y2) = x2`.
fn complement_index(side: Side) -> u32 {
    match side {
        Side::Alpha => 2,
        Side::Omega => 1,
    }
}

fn class_order(c: VertexClass) -> u8 {
    match c {
        VertexClass::Trivial => 0,
        VertexClass::Cyclic => 1,
        VertexClass::AlmostFull => 2,
        VertexClass::Full => 3,
    }
}

impl Engine {
    pub fn conj_vgroup(&self, d: &Word, g: &VGroup) -> VGroup {
        match g {
            VGroup::Trivial => VGroup::Trivial,
            VGroup::Full => VGroup::Full,
            VGroup::Cyclic { conj, gen } => VGroup::cyclic(d.mul(conj), *gen),
            VGroup::AlmostFull { conj, side } => VGroup::AlmostFull { conj: d.mul(conj), side: *side },
        }
    }

    pub fn conj_egroup(&self, c: &Word, g: &EGroup) -> EGroup {
        match g {
            EGroup::Trivial => EGroup::Trivial,
            EGroup::Full => EGroup::Full,
            EGroup::Cyclic { conj, gen } => EGroup::cyclic(c.mul(conj), *gen),
        }
    }

    /// A0: replaces `B_u` by `d B_u d^{-1}` and every outgoing `o` by `d · o`.
    pub fn move_a0(&self, b: &mut AGraph, u: usize, d: &Word) -> Result<()> {
        if u == b.base() && !self.vgroup_graph(b.vgroup(u)).contains(d) {
            return Err(Error::precondition("A0 at the base needs an element of the base group"));
        }
        let g = self.conj_vgroup(d, b.vgroup(u));
        b.set_vgroup(u, g);
        for h in b.halves_at(u) {
            let o = d.mul(&b.o(h));
            b.set_o(h, o);
        }
        Ok(())
    }

    /// A2 combined with A1: `o ↦ bb^{-1} · o · α_s(c)^{-1}`, `t ↦ ω_s(c) · t`,
    /// `B_f ↦ c B_f c^{-1}`, for `bb ∈ B_u` and `c ∈ A_e`.
    pub fn move_a2(&self, b: &mut AGraph, h: Half, bb: &Word, c: &Word) -> Result<()> {
        let u = b.source(h);
        if !self.vgroup_graph(b.vgroup(u)).contains(bb) {
            return Err(Error::precondition("A2 element outside the vertex group"));
        }
        let pg = self.pattern();
        let a_c = pg.boundary_map(b.side_out(h), c);
        let w_c = pg.boundary_map(b.side_in(h), c);
        let o = Word::product(2, [&bb.inverse(), &b.o(h), &a_c.inverse()]);
        let t = w_c.mul(&b.t(h));
        let g = self.conj_egroup(c, b.egroup(h));
        b.set_o(h, o);
        b.set_t(h, t);
        b.set_egroup(h, g);
        Ok(())
    }

    fn nontrivial_halves(&self, b: &AGraph, v: usize) -> Vec<Half> {
        b.halves_at(v).into_iter().filter(|&h| b.egroup(h).class() != EdgeClass::Trivial).collect()
    }

    fn component_of(&self, b: &AGraph, u: usize) -> (Vec<usize>, Vec<usize>) {
        self.components(b)
            .into_iter()
            .find(|(vs, _)| vs.contains(&u))
            .unwrap_or_else(|| (vec![u], Vec::new()))
    }

    /// Makes every group reached from `u` through `g` (without returning to `u`)
    /// along nontrivial edges trivial, including `g` itself.
    pub fn trivialize_beyond(&self, b: &mut AGraph, u: usize, g: Half) {
        let mut stack = vec![g];
        while let Some(h) = stack.pop() {
            let v = b.target(h);
            b.set_egroup(h, EGroup::Trivial);
            if v == u {
                continue;
            }
            for k in self.nontrivial_halves(b, v) {
                stack.push(k);
            }
            b.set_vgroup(v, VGroup::Trivial);
        }
    }

    /// Deletes non-base leaves whose vertex group is trivial; the represented
    /// subgroup does not change.
    pub fn prune_trivial_leaves(&self, b: &mut AGraph, log: &mut Vec<String>) {
        loop {
            let leaf = b.vertex_ids().into_iter().find(|&v| {
                v != b.base() && b.vgroup(v).class() == VertexClass::Trivial && b.halves_at(v).len() == 1
            });
            let Some(v) = leaf else { return };
            let e = b.halves_at(v)[0].edge;
            b.remove_edge(e);
            b.remove_vertex(v);
            log.push(format!("prune trivial leaf {v} with edge {e}"));
        }
    }

    /// Collapses the essential piece containing `into` by repeatedly unfolding along
    /// the edge at an admissible leaf. Labels are unchanged.
    pub fn collapse(&self, b: &mut AGraph, into: usize, log: &mut Vec<String>) -> Result<()> {
        loop {
            let (verts, edges) = self.component_of(b, into);
            if edges.is_empty() {
                return Ok(());
            }
            let leaf = verts
                .iter()
                .copied()
                .filter(|&v| v != into && self.nontrivial_halves(b, v).len() == 1)
                .min_by_key(|&v| (class_order(b.vgroup(v).class()), v))
                .ok_or_else(|| stall(format!("piece at {into} has no admissible leaf")))?;
            let h = self.nontrivial_halves(b, leaf)[0];
            let far = b.target(h);
            if b.vgroup(leaf).class() != VertexClass::Full {
                b.set_vgroup(leaf, VGroup::Trivial);
                b.set_egroup(h, EGroup::Trivial);
                log.push(format!("unfold edge {} at leaf {leaf}", h.edge));
                continue;
            }
            let far_class = b.vgroup(far).class();
            if far_class == VertexClass::AlmostFull && far != into {
                let f2 = self
                    .nontrivial_halves(b, far)
                    .into_iter()
                    .find(|&k| k != h.flip())
                    .ok_or_else(|| stall(format!("almost full vertex {far} without tail")))?;
                let z = self.source_image(b, f2).remove(0);
                let y = self.pull_in(b, h, &z).ok_or_else(|| stall(format!("tail element at {far} not carried by edge {}", h.edge)))?;
                let zl = self.push_out(b, h, &y);
                let (c, core) = zl.cyclic_reduction();
                if core.word().len() != 1 {
                    return Err(stall(format!("carried element {zl} is not a meridian conjugate")));
                }
                let k = core.word().letters()[0].index();
                b.set_vgroup(leaf, VGroup::cyclic(c, 3 - k));
            } else {
                let i = complement_index(b.side_out(h));
                b.set_vgroup(leaf, VGroup::cyclic(b.o(h), i));
                if far_class == VertexClass::AlmostFull {
                    let z = self.push_in(b, h, &Word::generator(2, 2));
                    let g = self.type_vgroup(&[z]).expect("meridian conjugate");
                    b.set_vgroup(far, g);
                }
            }
            b.set_egroup(h, EGroup::Trivial);
            log.push(format!("unfold full edge {} at leaf {leaf}", h.edge));
        }
    }

    /// Identifies the targets of two halves with equal `o` and type.
    /// The merged groups are the joins; a non-cyclic vertex join becomes `A_v`.
    pub fn elementary_fold(&self, b: &mut AGraph, h1: Half, h2: Half) -> Result<usize> {
        if b.source(h1) != b.source(h2) || b.sign(h1) != b.sign(h2) || b.o(h1) != b.o(h2) {
            return Err(Error::precondition("elementary fold needs equal source, type and o-label"));
        }
        let (u1, u2) = (b.target(h1), b.target(h2));
        let (hk, hg, keep, gone) = if u2 != b.base() { (h1, h2, u1, u2) } else { (h2, h1, u2, u1) };
        let d = b.t(hk).inverse().mul(&b.t(hg));
        self.move_a0(b, gone, &d)?;
        debug_assert_eq!(b.t(hk), b.t(hg));
        let mut gens = self.vgroup_gens(b.vgroup(keep));
        gens.extend(self.vgroup_gens(b.vgroup(gone)));
        let vg = match self.type_vgroup(&gens) {
            Some(g @ (VGroup::Trivial | VGroup::Cyclic { .. })) => g,
            _ => VGroup::Full,
        };
        let mut egens = self.egroup_gens(b.egroup(hk));
        egens.extend(self.egroup_gens(b.egroup(hg)));
        let eg = self.type_egroup(&egens).unwrap_or(EGroup::Full);
        for h in b.halves_at(gone) {
            if h.edge == hg.edge {
                continue;
            }
            let e = b.edge_mut(h.edge);
            if h.rev { e.to = keep } else { e.from = keep }
        }
        b.remove_edge(hg.edge);
        b.remove_vertex(gone);
        b.set_vgroup(keep, vg);
        b.set_egroup(hk, eg);
        Ok(keep)
    }

    /// Normalizes the pair by A2 and folds it without collapsing.
    pub fn fold_pair(&self, b: &mut AGraph, h1: Half, h2: Half) -> Result<usize> {
        let u = b.source(h1);
        let bu = self.vgroup_graph(b.vgroup(u));
        let site = self.ia_site(b, &bu, h1, h2).ok_or_else(|| stall(format!("edges {} and {} do not fold", h1.edge, h2.edge)))?;
        self.move_a2(b, h2, &site.b, &site.c)?;
        self.elementary_fold(b, h1, h2)
    }

    pub(crate) fn ia_site(&self, b: &AGraph, bu: &SubgroupGraph, h1: Half, h2: Half) -> Option<IaSite> {
        if b.sign(h1) != b.sign(h2) {
            return None;
        }
        let side = b.side_out(h1);
        let (bb, k) = bu.double_coset_decompose(&b.o(h1), self.pattern().subgroup(side), &b.o(h2))?;
        let c = self.pattern().preimage(side, &k).expect("member of U_side");
        Some(IaSite { vertex: b.source(h1), h1, h2, b: bb, c })
    }

    /// Fold of type IA: normalize labels, collapse the pieces at both targets, fold.
    pub fn macro_ia(&self, b: &mut AGraph, site: &IaSite, log: &mut Vec<String>) -> Result<()> {
        self.move_a2(b, site.h2, &site.b, &site.c)?;
        log.push(format!("A2 on edge {} by ({}, {})", site.h2.edge, site.b, site.c.to_text_with('y')));
        let (u1, u2) = (b.target(site.h1), b.target(site.h2));
        self.collapse(b, u1, log)?;
        self.collapse(b, u2, log)?;
        let keep = self.elementary_fold(b, site.h1, site.h2)?;
        log.push(format!("IA fold of edges {} and {} into vertex {keep}", site.h1.edge, site.h2.edge));
        Ok(())
    }

    fn piece_kind_of(&self, b: &AGraph, u: usize) -> Result<PieceKind> {
        let pieces = self.classify(b)?;
        pieces
            .into_iter()
            .find(|p| p.vertices.contains(&u))
            .map(|p| p.kind)
            .ok_or_else(|| stall(format!("vertex {u} lies in no piece")))
    }

    fn full_half(&self, b: &AGraph, u: usize) -> Result<Half> {
        self.nontrivial_halves(b, u)
            .into_iter()
            .find(|&h| b.egroup(h).class() == EdgeClass::Full)
            .ok_or_else(|| stall(format!("vertex {u} has no full edge")))
    }

    fn strip_tails(&self, b: &mut AGraph, u: usize, keep: Half) {
        for g in self.nontrivial_halves(b, u) {
            if g != keep {
                self.trivialize_beyond(b, u, g);
            }
        }
    }

    /// Fold of type IIA, by the case analysis on the classes of both endpoints.
    pub fn macro_iia(&self, b: &mut AGraph, site: &IiaSite, log: &mut Vec<String>, depth: u8) -> Result<()> {
        if depth > 3 {
            return Err(stall("IIA reduction does not terminate".into()));
        }
        let h = site.half;
        let (u, u2) = (b.source(h), b.target(h));
        if b.egroup(h).class() != EdgeClass::Trivial {
            return Err(stall(format!("IIA at edge {} with nontrivial group", h.edge)));
        }
        let (cu, cu2) = (b.vgroup(u).class(), b.vgroup(u2).class());
        if self.type_egroup(&site.preimage).is_none() {
            let shown: Vec<String> = site.preimage.iter().map(|y| y.to_text_with('y')).collect();
            return Err(Error::falsified(
                "Lemma 3",
                format!(
                    "edge {} at vertex {u} has boundary intersection ⟨{}⟩, not a conjugate of y1 or y2",
                    h.edge,
                    shown.join(", ")
                ),
            ));
        }
        if cu2 == VertexClass::Trivial {
            let eg = self.type_egroup(&site.preimage).expect("typed above");
            let img: Vec<Word> = site.preimage.iter().map(|y| self.push_in(b, h, y)).collect();
            let vg = self.type_vgroup(&img).ok_or_else(|| stall("target image has no type".into()))?;
            b.set_egroup(h, eg);
            b.set_vgroup(u2, vg);
            log.push(format!("IIA: grow edge {} and vertex {u2}", h.edge));
            return Ok(());
        }
        if let Some(absorbed) = self.try_absorb(b, site)? {
            *b = absorbed;
            log.push(format!("IIA: edge {} grows into vertex {u2}, which already holds the image", h.edge));
            return Ok(());
        }
        if cu2 == VertexClass::Full && cu != VertexClass::Full {
            let back = self.iia_at(b, h.flip()).ok_or_else(|| stall(format!("no IIA from full vertex {u2}")))?;
            return self.macro_iia(b, &back, log, depth + 1);
        }
        match cu {
            VertexClass::Full => match cu2 {
                VertexClass::Full => {
                    b.set_egroup(h, EGroup::Full);
                    log.push(format!("IIA: edge {} between full vertices becomes full", h.edge));
                }
                VertexClass::Cyclic => {
                    self.collapse(b, u2, log)?;
                    b.set_egroup(h, EGroup::Full);
                    b.set_vgroup(u2, VGroup::Full);
                    log.push(format!("IIA: vertex {u2} and edge {} become full", h.edge));
                }
                _ => {
                    let k = self.full_half(b, u2)?;
                    self.strip_tails(b, u2, k);
                    if b.sign(k) != b.sign(h.flip()) {
                        b.set_egroup(h, EGroup::Full);
                        b.set_vgroup(u2, VGroup::Full);
                        log.push(format!("IIA: almost full vertex {u2} becomes full"));
                    } else {
                        self.collapse(b, u, log)?;
                        let o = b.o(h);
                        self.move_a2(b, h, &o, &Word::identity(2))?;
                        b.set_vgroup(u, VGroup::cyclic(Word::identity(2), complement_index(b.side_out(h))));
                        b.set_vgroup(u2, VGroup::Full);
                        let keep = self.fold_pair(b, h.flip(), k)?;
                        log.push(format!("IIA: push full group across edge {} and fold into {keep}", h.edge));
                    }
                }
            },
            VertexClass::AlmostFull => {
                self.collapse(b, u2, log)?;
                let k = self.full_half(b, u)?;
                self.strip_tails(b, u, k);
                if b.sign(k) != b.sign(h) {
                    return Err(stall(format!("edges {} and {} at almost full vertex {u} differ in type", h.edge, k.edge)));
                }
                b.set_vgroup(u, VGroup::Full);
                let keep = self.fold_pair(b, h, k)?;
                log.push(format!("IIA: vertex {u} becomes full, fold into {keep}"));
            }
            VertexClass::Cyclic => {
                let ku = self.piece_kind_of(b, u)?;
                let ku2 = self.piece_kind_of(b, u2)?;
                match (ku, ku2) {
                    (PieceKind::Cyclic, PieceKind::Cyclic) => {
                        self.collapse(b, u, log)?;
                        self.collapse(b, u2, log)?;
                        b.set_vgroup(u, VGroup::AlmostFull { conj: b.o(h), side: b.side_out(h) });
                        b.set_vgroup(u2, VGroup::Full);
                        b.set_egroup(h, EGroup::Full);
                        log.push(format!("IIA: cyclic pieces at edge {} merge into a full edge", h.edge));
                    }
                    (PieceKind::NonCyclic { .. }, _) => {
                        let before = self.complexity(b)?;
                        self.collapse(b, u2, log)?;
                        self.collapse(b, u, log)?;
                        b.set_vgroup(u, VGroup::Full);
                        b.set_vgroup(u2, VGroup::Full);
                        b.set_egroup(h, EGroup::Full);
                        log.push(format!("IIA: vertices {u}, {u2} and edge {} become full", h.edge));
                        self.fold_down(b, before, log)?;
                    }
                    (PieceKind::Cyclic, PieceKind::NonCyclic { .. }) => {
                        let before = self.complexity(b)?;
                        let keep = match b.vgroup(u2).class() {
                            VertexClass::AlmostFull => self.full_half(b, u2)?,
                            _ => self.toward_spine(b, u2)?,
                        };
                        self.strip_tails(b, u2, keep);
                        let z = self.push_in(b, h, &site.preimage[0]);
                        let (verts, _) = self.component_of(b, u);
                        for v in verts {
                            for g in self.nontrivial_halves(b, v) {
                                b.set_egroup(g, EGroup::Trivial);
                            }
                            b.set_vgroup(v, VGroup::Trivial);
                        }
                        let vg = self.type_vgroup(&[z]).ok_or_else(|| stall("carried element has no type".into()))?;
                        b.set_vgroup(u2, vg);
                        b.set_egroup(keep, EGroup::Trivial);
                        log.push(format!("IIA: move cyclic piece across edge {} onto {u2}", h.edge));
                        let next = [keep, keep.flip()]
                            .into_iter()
                            .find_map(|k| self.iia_at(b, k))
                            .ok_or_else(|| stall(format!("no fold at edge {} after reduction", keep.edge)))?;
                        self.macro_iia(b, &next, log, depth + 1)?;
                        self.prune_trivial_leaves(b, log);
                        self.fold_down(b, before, log)?;
                    }
                }
            }
            VertexClass::Trivial => return Err(stall(format!("IIA from trivial vertex {u}"))),
        }
        Ok(())
    }

    /// Raises only the edge group when the far vertex already contains the image;
    /// kept if the result is good and of smaller complexity.
    fn try_absorb(&self, b: &AGraph, site: &IiaSite) -> Result<Option<AGraph>> {
        let h = site.half;
        let Some(eg) = self.type_egroup(&site.preimage) else { return Ok(None) };
        let far = self.vgroup_graph(b.vgroup(b.target(h)));
        if !site.preimage.iter().all(|y| far.contains(&self.push_in(b, h, y))) {
            return Ok(None);
        }
        let Ok(before) = self.complexity(b) else { return Ok(None) };
        let mut next = b.clone();
        next.set_egroup(h, eg);
        Ok(match self.complexity(&next) {
            Ok(c) if c < before => Some(next),
            _ => None,
        })
    }

    /// The nontrivial half at a tail vertex that leads toward the spine.
    fn toward_spine(&self, b: &AGraph, v: usize) -> Result<Half> {
        for h in self.nontrivial_halves(b, v) {
            let mut prev = v;
            let mut cur = h;
            loop {
                let w = b.target(cur);
                if b.vgroup(w).class() == VertexClass::AlmostFull {
                    return Ok(h);
                }
                match self.nontrivial_halves(b, w).into_iter().find(|k| b.target(*k) != prev) {
                    Some(k) => {
                        prev = w;
                        cur = k;
                    }
                    None => break,
                }
            }
        }
        Err(stall(format!("tail vertex {v} does not reach an almost full vertex")))
    }

    /// Plain IA folds until the graph is good with complexity below `target`.
    pub fn fold_down(&self, b: &mut AGraph, target: super::classify::ComplexityGood, log: &mut Vec<String>) -> Result<()> {
        for _ in 0..=b.edge_count() {
            if let Ok(c) = self.complexity(b) {
                if c < target {
                    return Ok(());
                }
            }
            let site = self.find_ia(b).ok_or_else(|| stall("rank not restored: no fold available".into()))?;
            let keep = self.fold_pair(b, site.h1, site.h2)?;
            log.push(format!("fold edges {} and {} into {keep}", site.h1.edge, site.h2.edge));
        }
        Err(stall("rank not restored".into()))
    }
}
