use alloc::vec::Vec;

use super::algebra::Engine;
use super::graph::{AEdge, AGraph, EGroup, EdgeClass, Half, VGroup, VertexClass};
use crate::patternspace::Side;
use crate::word::Word;

/// Source of choices: `pick(n)` returns a value in `0..n`.
pub type Pick<'a> = &'a mut dyn FnMut(usize) -> usize;

fn random_word(pick: Pick, max: usize) -> Word {
    let len = pick(max + 1);
    let ints: Vec<i32> = (0..len).map(|_| [1, -1, 2, -2][pick(4)]).collect();
    Word::from_ints(2, &ints)
}

fn sign(pick: Pick) -> i8 {
    if pick(2) == 0 {
        1
    } else {
        -1
    }
}

fn side_out_of(s: i8) -> Side {
    if s > 0 {
        Side::Alpha
    } else {
        Side::Omega
    }
}

impl Engine {
    /// A random good A-graph with `pieces` essential pieces; non-cyclic pieces
    /// have at most `max_full` full vertices. Pieces hang off trivial vertices
    /// by trivial edges. Returns `None` when a draw fails the goodness check.
    pub fn sample_good(&self, pieces: usize, max_full: usize, pick: Pick) -> Option<AGraph> {
        let mut b = AGraph::new();
        for _ in 0..pieces {
            let ids = b.vertex_ids();
            let anchor = ids[pick(ids.len())];
            let hub = if b.vgroup(anchor).class() == VertexClass::Trivial {
                anchor
            } else {
                let v = b.add_vertex(VGroup::Trivial);
                self.link(&mut b, anchor, v, pick);
                v
            };
            let start = if pick(2) == 0 { self.cyclic_piece(&mut b, pick) } else { self.spine_piece(&mut b, max_full, pick) };
            self.link(&mut b, hub, start, pick);
        }
        (self.classify(&b).is_ok() && self.check_compatible(&b).is_ok()).then_some(b)
    }

    fn link(&self, b: &mut AGraph, from: usize, to: usize, pick: Pick) {
        let (o, t) = (random_word(pick, 2), random_word(pick, 2));
        b.add_edge(AEdge { from, to, sign: sign(pick), o, t, group: EGroup::Trivial });
    }

    /// Grows a cyclic edge out of `u` when a label with cyclic preimage is found.
    fn grow_cyclic(&self, b: &mut AGraph, u: usize, pick: Pick) -> Option<usize> {
        let conj = match b.vgroup(u) {
            VGroup::Cyclic { conj, .. } | VGroup::AlmostFull { conj, .. } => conj.clone(),
            _ => return None,
        };
        let s = sign(pick);
        let o = conj.mul(&[Word::identity(2), Word::from_ints(2, &[-2]), Word::from_ints(2, &[1])][pick(3)]);
        let t = random_word(pick, 2);
        let v = b.add_vertex(VGroup::Trivial);
        let e = b.add_edge(AEdge { from: u, to: v, sign: s, o, t, group: EGroup::Trivial });
        let h = Half::fwd(e);
        let pre = self.source_preimage(b, h);
        match self.type_egroup(&pre) {
            Some(g) if g.class() == EdgeClass::Cyclic => {
                let img: Vec<Word> = pre.iter().map(|y| self.push_in(b, h, y)).collect();
                let vg = self.type_vgroup(&img)?;
                b.set_egroup(h, g);
                b.set_vgroup(v, vg);
                Some(v)
            }
            _ => {
                b.remove_edge(e);
                b.remove_vertex(v);
                None
            }
        }
    }

    fn tail(&self, b: &mut AGraph, mut u: usize, len: usize, pick: Pick) {
        for _ in 0..len {
            match self.grow_cyclic(b, u, pick) {
                Some(v) => u = v,
                None => return,
            }
        }
    }

    fn cyclic_piece(&self, b: &mut AGraph, pick: Pick) -> usize {
        let u = b.add_vertex(VGroup::cyclic(random_word(pick, 2), 1 + pick(2) as u32));
        let len = pick(3);
        self.tail(b, u, len, pick);
        u
    }

    fn spine_piece(&self, b: &mut AGraph, max_full: usize, pick: Pick) -> usize {
        let d = 1 + pick(max_full.max(1));
        let s = sign(pick);
        let first = b.add_vertex(VGroup::Full);
        let mut last = first;
        for _ in 1..d {
            let v = b.add_vertex(VGroup::Full);
            let (o, t) = (random_word(pick, 2), random_word(pick, 2));
            b.add_edge(AEdge { from: last, to: v, sign: s, o, t, group: EGroup::Full });
            last = v;
        }
        if pick(2) == 0 {
            let (o, t) = (random_word(pick, 2), random_word(pick, 2));
            let side = side_out_of(s).other();
            let v = b.add_vertex(VGroup::AlmostFull { conj: t.inverse(), side });
            b.add_edge(AEdge { from: last, to: v, sign: s, o, t, group: EGroup::Full });
            let len = pick(3);
            self.tail(b, v, len, pick);
        }
        if pick(2) == 0 {
            let (o, t) = (random_word(pick, 2), random_word(pick, 2));
            let side = side_out_of(s);
            let v = b.add_vertex(VGroup::AlmostFull { conj: o.clone(), side });
            b.add_edge(AEdge { from: v, to: first, sign: s, o, t, group: EGroup::Full });
            let len = pick(3);
            self.tail(b, v, len, pick);
        }
        first
    }
}
