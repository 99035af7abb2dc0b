use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::agraphs::{AGraph, Engine, MeridianSpec};
use crate::braidspace::{BraidSpaceGroup, SemidirectElement};
use crate::error::{Error, Result};
use crate::patternspace::HnnWord;
use crate::stallings::SubgroupGraph;
use crate::word::Word;

/// Which descent a pattern space supports.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Pipeline {
    Tame,
    Benign,
}

/// The pattern side `A_{v0}` of a satellite, with its meridional vertex groups.
pub trait PatternSide {
    type Elem: Clone + Debug;
    type Sub: Clone + Debug;

    fn pipeline(&self) -> Pipeline;
    /// `b(k) / b(k_1)`.
    fn bridge_factor(&self) -> usize;
    /// Least weight of a vertex group containing a conjugate of `m_V`.
    fn peripheral_weight(&self) -> usize;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
    fn is_identity(&self, a: &Self::Elem) -> bool;
    fn parse(&self, text: &str) -> Result<Self::Elem>;
    fn show(&self, a: &Self::Elem) -> String;
    fn generators(&self) -> Vec<Self::Elem>;

    /// The meridian `x1`.
    fn meridian(&self) -> Self::Elem;
    /// `m_V^a l_V^b`.
    fn peripheral(&self, a: i64, b: i64) -> Self::Elem;
    fn peripheral_coords(&self, x: &Self::Elem) -> Option<(i64, i64)>;

    fn trivial(&self) -> Self::Sub;
    /// `⟨g x1 g^{-1}⟩`.
    fn meridian_subgroup(&self, g: &Self::Elem) -> Result<Self::Sub>;
    fn conjugate_sub(&self, s: &Self::Sub, d: &Self::Elem) -> Result<Self::Sub>;
    fn join(&self, a: &Self::Sub, b: &Self::Sub) -> Result<Self::Sub>;
    /// `w̄` for good subgroups, rank for fiber subgroups.
    fn weight(&self, s: &Self::Sub) -> usize;
    fn contains(&self, s: &Self::Sub, x: &Self::Elem) -> bool;
    /// `(β, c)` with `target = β · source · m_V^{c.0} l_V^{c.1}` and `β ∈ s`.
    fn double_coset(&self, s: &Self::Sub, target: &Self::Elem, source: &Self::Elem) -> Result<Option<(Self::Elem, (i64, i64))>>;
    /// Whether `double_coset` is a decision procedure rather than a bounded search.
    fn exact(&self) -> bool;
    fn describe(&self, s: &Self::Sub) -> String;

    fn conj(&self, g: &Self::Elem, x: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(g, x), &self.inverse(g))
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_identity(&self.mul(a, &self.inverse(b)))
    }
}

/// The Whitehead pattern space `π_1(E)`; vertex groups are good subgroups
/// `conj · Ū · conj^{-1}` produced by `goodify`.
#[derive(Clone, Debug, Default)]
pub struct WhiteheadSide {
    engine: Engine,
}

#[derive(Clone, Debug)]
pub enum GoodSub {
    Trivial,
    Good { conj: HnnWord, specs: Vec<MeridianSpec>, graph: AGraph, rank: usize },
}

/// Search radius for the `m_V` exponent in a double coset of a good subgroup.
const MV_RADIUS: i64 = 4;

impl WhiteheadSide {
    pub fn new() -> WhiteheadSide {
        WhiteheadSide { engine: Engine::new() }
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    fn reduce(&self, w: &HnnWord) -> HnnWord {
        self.engine.pattern().britton_reduce(w)
    }

    fn l_exponent(w: &HnnWord) -> i64 {
        w.signs.iter().map(|&s| s as i64).sum()
    }

    fn good(&self, specs: Vec<MeridianSpec>) -> Result<GoodSub> {
        if specs.is_empty() {
            return Ok(GoodSub::Trivial);
        }
        let g = self.engine.goodify(&specs)?;
        let rank = g.certificate.rank();
        let specs = self.engine.extract_specs(&g.graph)?.into_iter().map(|(_, s)| s).collect();
        Ok(GoodSub::Good { conj: HnnWord::identity(), specs, graph: g.graph, rank })
    }

    fn conjugated_specs(&self, s: &GoodSub) -> Vec<MeridianSpec> {
        match s {
            GoodSub::Trivial => Vec::new(),
            GoodSub::Good { conj, specs, .. } => specs
                .iter()
                .map(|x| MeridianSpec { path: self.reduce(&conj.mul(&x.path)), gen: x.gen })
                .collect(),
        }
    }
}

impl PatternSide for WhiteheadSide {
    type Elem = HnnWord;
    type Sub = GoodSub;

    fn pipeline(&self) -> Pipeline {
        Pipeline::Tame
    }

    fn bridge_factor(&self) -> usize {
        2
    }

    fn peripheral_weight(&self) -> usize {
        2
    }

    fn identity(&self) -> HnnWord {
        HnnWord::identity()
    }

    fn mul(&self, a: &HnnWord, b: &HnnWord) -> HnnWord {
        self.reduce(&a.mul(b))
    }

    fn inverse(&self, a: &HnnWord) -> HnnWord {
        a.inverse()
    }

    fn is_identity(&self, a: &HnnWord) -> bool {
        let r = self.reduce(a);
        r.is_base() && r.pieces[0].is_identity()
    }

    fn parse(&self, text: &str) -> Result<HnnWord> {
        Ok(self.reduce(&HnnWord::parse(text)?))
    }

    fn show(&self, a: &HnnWord) -> String {
        a.to_string()
    }

    fn generators(&self) -> Vec<HnnWord> {
        alloc::vec![HnnWord::base(Word::generator(2, 1)), HnnWord::base(Word::generator(2, 2)), HnnWord::stable(1)]
    }

    fn meridian(&self) -> HnnWord {
        HnnWord::base(Word::generator(2, 1))
    }

    fn peripheral(&self, a: i64, b: i64) -> HnnWord {
        let mv = HnnWord::base(self.engine.pattern().m_v().pow(a));
        let l = if b >= 0 { HnnWord::stable(1) } else { HnnWord::stable(-1) };
        let mut out = mv;
        for _ in 0..b.unsigned_abs() {
            out = out.mul(&l);
        }
        out
    }

    fn peripheral_coords(&self, x: &HnnWord) -> Option<(i64, i64)> {
        let x = self.reduce(x);
        let b = Self::l_exponent(&x);
        let y = self.reduce(&x.mul(&self.peripheral(0, -b)));
        if !y.is_base() {
            return None;
        }
        let mv = self.engine.pattern().m_v();
        let a = (y.pieces[0].len() / mv.len()) as i64;
        [a, -a].into_iter().find(|&k| mv.pow(k) == y.pieces[0]).map(|a| (a, b))
    }

    fn trivial(&self) -> GoodSub {
        GoodSub::Trivial
    }

    fn meridian_subgroup(&self, g: &HnnWord) -> Result<GoodSub> {
        self.good(alloc::vec![MeridianSpec::new(g.clone(), 1)?])
    }

    fn conjugate_sub(&self, s: &GoodSub, d: &HnnWord) -> Result<GoodSub> {
        Ok(match s {
            GoodSub::Trivial => GoodSub::Trivial,
            GoodSub::Good { conj, specs, graph, rank } => GoodSub::Good {
                conj: self.mul(d, conj),
                specs: specs.clone(),
                graph: graph.clone(),
                rank: *rank,
            },
        })
    }

    /// A good subgroup containing both, of weight at most the sum.
    fn join(&self, a: &GoodSub, b: &GoodSub) -> Result<GoodSub> {
        match (a, b) {
            (GoodSub::Trivial, _) => Ok(b.clone()),
            (_, GoodSub::Trivial) => Ok(a.clone()),
            _ => self.good([self.conjugated_specs(a), self.conjugated_specs(b)].concat()),
        }
    }

    fn weight(&self, s: &GoodSub) -> usize {
        match s {
            GoodSub::Trivial => 0,
            GoodSub::Good { rank, .. } => *rank,
        }
    }

    fn contains(&self, s: &GoodSub, x: &HnnWord) -> bool {
        match s {
            GoodSub::Trivial => self.is_identity(x),
            GoodSub::Good { conj, graph, .. } => {
                self.engine.contains(graph, &conj.inverse().mul(x).mul(conj))
            }
        }
    }

    fn double_coset(&self, s: &GoodSub, target: &HnnWord, source: &HnnWord) -> Result<Option<(HnnWord, (i64, i64))>> {
        let st = self.mul(&source.inverse(), target);
        if let GoodSub::Trivial = s {
            return Ok(self.peripheral_coords(&st).map(|c| (HnnWord::identity(), c)));
        }
        // β is meridional, so the l-exponent of c is forced by H_1.
        let b = Self::l_exponent(target) - Self::l_exponent(source);
        for a in (0..=MV_RADIUS).flat_map(|a| [a, -a]).skip(1) {
            let beta = self.mul(target, &self.mul(source, &self.peripheral(a, b)).inverse());
            if self.contains(s, &beta) {
                return Ok(Some((beta, (a, b))));
            }
        }
        Ok(None)
    }

    fn exact(&self) -> bool {
        false
    }

    fn describe(&self, s: &GoodSub) -> String {
        match s {
            GoodSub::Trivial => "1".to_string(),
            GoodSub::Good { .. } => {
                let gens: Vec<String> = self.conjugated_specs(s).iter().map(|x| self.reduce(&x.element()).to_string()).collect();
                format!("<{}>", gens.join(", "))
            }
        }
    }
}

/// A braid or cable space `F_n ⋊ ⟨t⟩`; vertex groups are meridional
/// subgroups of the fiber, kept with their defining conjugators.
#[derive(Clone, Debug)]
pub struct BraidSide {
    group: BraidSpaceGroup,
    m_v: Word,
    l_v: SemidirectElement,
}

#[derive(Clone, Debug)]
pub struct FiberSub {
    pub conjugators: Vec<SemidirectElement>,
    pub graph: SubgroupGraph,
    pub rank: usize,
}

impl BraidSide {
    pub fn new(group: BraidSpaceGroup) -> BraidSide {
        let pd = group.peripheral_data();
        BraidSide { group, m_v: pd.m_v, l_v: pd.l_v }
    }

    pub fn group(&self) -> &BraidSpaceGroup {
        &self.group
    }

    fn n(&self) -> u32 {
        self.group.strands()
    }

    fn l_power(&self, b: i64) -> SemidirectElement {
        let step = if b >= 0 { self.l_v.clone() } else { self.group.inverse(&self.l_v) };
        (0..b.unsigned_abs()).fold(self.group.identity(), |acc, _| self.group.multiply(&acc, &step))
    }

    fn fiber_sub(&self, conjugators: Vec<SemidirectElement>) -> Result<FiberSub> {
        let report = self.group.verify_c1(&conjugators)?;
        let graph = SubgroupGraph::from_generators(self.n(), &report.generators)?;
        Ok(FiberSub { conjugators, graph, rank: report.rank })
    }

    /// `k` with `w = g^k` for a nontrivial `g`.
    fn power_of(w: &Word, g: &Word) -> Option<i64> {
        if w.is_identity() {
            return Some(0);
        }
        let (_, core) = g.cyclic_reduction();
        let k = ((w.len() + core.word().len()).saturating_sub(g.len()) / core.word().len().max(1)) as i64;
        [k, -k].into_iter().find(|&k| &g.pow(k) == w)
    }
}

impl PatternSide for BraidSide {
    type Elem = SemidirectElement;
    type Sub = FiberSub;

    fn pipeline(&self) -> Pipeline {
        Pipeline::Benign
    }

    fn bridge_factor(&self) -> usize {
        self.n() as usize
    }

    /// Only the whole fiber holds a conjugate of `m_V`.
    fn peripheral_weight(&self) -> usize {
        self.n() as usize
    }

    fn identity(&self) -> SemidirectElement {
        self.group.identity()
    }

    fn mul(&self, a: &SemidirectElement, b: &SemidirectElement) -> SemidirectElement {
        self.group.multiply(a, b)
    }

    fn inverse(&self, a: &SemidirectElement) -> SemidirectElement {
        self.group.inverse(a)
    }

    fn is_identity(&self, a: &SemidirectElement) -> bool {
        a.shift == 0 && a.fiber.is_identity()
    }

    /// Fiber letters `x_i` / `X_i` and `t` / `T` for the stable letter.
    fn parse(&self, text: &str) -> Result<SemidirectElement> {
        let mut out = self.group.identity();
        for tok in text.split_whitespace() {
            let g = match tok {
                "t" => SemidirectElement::new(Word::identity(self.n()), 1),
                "T" => SemidirectElement::new(Word::identity(self.n()), -1),
                "1" => continue,
                _ => SemidirectElement::fiber(Word::parse(tok, self.n())?),
            };
            out = self.group.multiply(&out, &g);
        }
        Ok(out)
    }

    fn show(&self, a: &SemidirectElement) -> String {
        let mut parts = Vec::new();
        if !a.fiber.is_identity() {
            parts.push(a.fiber.to_string());
        }
        let t = if a.shift > 0 { "t" } else { "T" };
        parts.extend((0..a.shift.unsigned_abs()).map(|_| t.to_string()));
        if parts.is_empty() {
            return "1".into();
        }
        parts.join(" ")
    }

    fn generators(&self) -> Vec<SemidirectElement> {
        let mut g: Vec<SemidirectElement> =
            (1..=self.n()).map(|j| SemidirectElement::fiber(Word::generator(self.n(), j))).collect();
        g.push(SemidirectElement::new(Word::identity(self.n()), 1));
        g
    }

    fn meridian(&self) -> SemidirectElement {
        SemidirectElement::fiber(Word::generator(self.n(), 1))
    }

    fn peripheral(&self, a: i64, b: i64) -> SemidirectElement {
        self.group.multiply(&SemidirectElement::fiber(self.m_v.pow(a)), &self.l_power(b))
    }

    fn peripheral_coords(&self, x: &SemidirectElement) -> Option<(i64, i64)> {
        let b = x.shift;
        let y = self.group.multiply(x, &self.l_power(-b));
        debug_assert_eq!(y.shift, 0);
        Self::power_of(&y.fiber, &self.m_v).map(|a| (a, b))
    }

    fn trivial(&self) -> FiberSub {
        FiberSub { conjugators: Vec::new(), graph: SubgroupGraph::trivial(self.n()), rank: 0 }
    }

    fn meridian_subgroup(&self, g: &SemidirectElement) -> Result<FiberSub> {
        self.fiber_sub(alloc::vec![g.clone()])
    }

    fn conjugate_sub(&self, s: &FiberSub, d: &SemidirectElement) -> Result<FiberSub> {
        if s.conjugators.is_empty() {
            return Ok(s.clone());
        }
        self.fiber_sub(s.conjugators.iter().map(|g| self.mul(d, g)).collect())
    }

    fn join(&self, a: &FiberSub, b: &FiberSub) -> Result<FiberSub> {
        if b.conjugators.is_empty() {
            return Ok(a.clone());
        }
        self.fiber_sub([a.conjugators.clone(), b.conjugators.clone()].concat())
    }

    fn weight(&self, s: &FiberSub) -> usize {
        s.rank
    }

    fn contains(&self, s: &FiberSub, x: &SemidirectElement) -> bool {
        x.shift == 0 && s.graph.contains(&x.fiber)
    }

    fn double_coset(
        &self,
        s: &FiberSub,
        target: &SemidirectElement,
        source: &SemidirectElement,
    ) -> Result<Option<(SemidirectElement, (i64, i64))>> {
        // The shift fixes the l_V exponent; the rest is a double coset
        // B · w · ⟨φ^z(m_V)⟩ in the free fiber.
        let b = target.shift - source.shift;
        let e = self.mul(source, &self.l_power(b));
        let k0 = self.group.act(&self.m_v, e.shift);
        let cyc = SubgroupGraph::from_generators(self.n(), &[k0.clone()])?;
        let Some((h, k)) = s.graph.double_coset_decompose(&e.fiber, &cyc, &target.fiber) else {
            return Ok(None);
        };
        let a = Self::power_of(&k, &k0)
            .ok_or_else(|| Error::Stall(format!("double coset factor {k} is not a power of {k0}")))?;
        Ok(Some((SemidirectElement::fiber(h), (a, b))))
    }

    fn exact(&self) -> bool {
        true
    }

    fn describe(&self, s: &FiberSub) -> String {
        let gens: Vec<String> = s.graph.basis().iter().map(|w| w.to_string()).collect();
        format!("<{}>", gens.join(", "))
    }
}
