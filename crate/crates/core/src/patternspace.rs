//! The Whitehead pattern group: an HNN extension of `F(x1, x2)` over
//! `F(y1, y2)` with stable letter `l_V` and `l_V ω(y) l_V^{-1} = α(y)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::stallings::SubgroupGraph;
use crate::word::Word;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Alpha,
    Omega,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Alpha => Side::Omega,
            Side::Omega => Side::Alpha,
        }
    }

    pub fn suffix(self) -> char {
        match self {
            Side::Alpha => 'a',
            Side::Omega => 'w',
        }
    }
}

/// The three statements about peripheral intersections.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lemma4Case {
    /// `a <m_V> a^{-1} ∩ U ≠ 1`
    Boundary,
    /// `a <x> a^{-1} ∩ U ≠ 1` with `x = x1` (α) or `x2` (ω)
    Meridian,
    /// `a U a^{-1} ∩ U ≠ 1`
    SelfConjugate,
}

impl Lemma4Case {
    pub const ALL: [Lemma4Case; 3] = [Lemma4Case::Boundary, Lemma4Case::Meridian, Lemma4Case::SelfConjugate];

    /// Parses `1a`, `2w`, ... (also accepts `1α`, `1ω`).
    pub fn parse(text: &str) -> Result<(Lemma4Case, Side)> {
        let bad = || Error::Parse { position: 0, token: text.into(), reason: "expected 1a, 1w, 2a, 2w, 3a or 3w" };
        let mut chars = text.chars();
        let case = match chars.next() {
            Some('1') => Lemma4Case::Boundary,
            Some('2') => Lemma4Case::Meridian,
            Some('3') => Lemma4Case::SelfConjugate,
            _ => return Err(bad()),
        };
        let side = match chars.as_str() {
            "a" | "α" | "alpha" => Side::Alpha,
            "w" | "ω" | "omega" => Side::Omega,
            _ => return Err(bad()),
        };
        Ok((case, side))
    }

    pub fn label(self, side: Side) -> String {
        let n = match self {
            Lemma4Case::Boundary => 1,
            Lemma4Case::Meridian => 2,
            Lemma4Case::SelfConjugate => 3,
        };
        format!("{n}{}", side.suffix())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// `a ∈ U`, with `a = image(witness)` for a word `witness` in `y1, y2`.
    Member { witness: Word },
    /// `a = u s^ε x^k` with `s` the swap element of the side.
    Peripheral { u: Word, epsilon: i8, k: i64 },
    /// `a = u1 s^ε u2`.
    DoubleCoset { u1: Word, epsilon: i8, u2: Word },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma4Decision {
    pub holds: bool,
    pub decomposition: Option<Decomposition>,
}

/// Exponents of a word of shape `x1^{n0} · x2 x1^{n1} X2 · x1^{n2} · ...`.
/// Even positions are outer `x1` runs, odd positions are conjugated runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormStar(pub Vec<i64>);

impl NormalFormStar {
    /// Recognizes the shape on a reduced word over rank 2.
    pub fn recognize(w: &Word) -> Option<NormalFormStar> {
        let l = w.letters();
        let mut out = vec![0i64];
        let mut i = 0;
        while i < l.len() {
            let g = l[i];
            if g.index() == 1 {
                *out.last_mut().unwrap() += g.sign() as i64;
                i += 1;
                continue;
            }
            if !g.is_positive() {
                return None;
            }
            i += 1;
            let mut run = 0i64;
            while i < l.len() && l[i].index() == 1 {
                run += l[i].sign() as i64;
                i += 1;
            }
            if run == 0 || i == l.len() || l[i].index() != 2 || l[i].is_positive() {
                return None;
            }
            i += 1;
            out.push(run);
            out.push(0);
        }
        Some(NormalFormStar(out))
    }

    pub fn word(&self) -> Word {
        let x1 = Word::generator(2, 1);
        let x2 = Word::generator(2, 2);
        let mut w = Word::identity(2);
        for (k, &n) in self.0.iter().enumerate() {
            let run = x1.pow(n);
            w = w.mul(&if k % 2 == 0 { run } else { x2.conjugate(&run) });
        }
        w
    }
}

/// Alternating word `a0 l^{e1} a1 ... l^{ek} ak`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnnWord {
    pub pieces: Vec<Word>,
    pub signs: Vec<i8>,
}

impl HnnWord {
    pub fn base(a: Word) -> HnnWord {
        HnnWord { pieces: vec![a], signs: Vec::new() }
    }

    pub fn identity() -> HnnWord {
        HnnWord::base(Word::identity(2))
    }

    /// `l_V^s`.
    pub fn stable(s: i8) -> HnnWord {
        HnnWord { pieces: vec![Word::identity(2), Word::identity(2)], signs: vec![s] }
    }

    pub fn stable_letters(&self) -> usize {
        self.signs.len()
    }

    pub fn is_base(&self) -> bool {
        self.signs.is_empty()
    }

    /// Concatenation (no Britton reduction).
    pub fn mul(&self, other: &HnnWord) -> HnnWord {
        let mut pieces = self.pieces[..self.pieces.len() - 1].to_vec();
        pieces.push(self.pieces.last().unwrap().mul(&other.pieces[0]));
        pieces.extend_from_slice(&other.pieces[1..]);
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        HnnWord { pieces, signs }
    }

    pub fn mul_base(&self, w: &Word) -> HnnWord {
        self.mul(&HnnWord::base(w.clone()))
    }

    pub fn inverse(&self) -> HnnWord {
        HnnWord {
            pieces: self.pieces.iter().rev().map(|p| p.inverse()).collect(),
            signs: self.signs.iter().rev().map(|s| -s).collect(),
        }
    }

    /// `self · w · self^{-1}`.
    pub fn conjugate(&self, w: &HnnWord) -> HnnWord {
        self.mul(w).mul(&self.inverse())
    }

    pub fn product<'a, I: IntoIterator<Item = &'a HnnWord>>(items: I) -> HnnWord {
        items.into_iter().fold(HnnWord::identity(), |acc, w| acc.mul(w))
    }

    /// Parses tokens of base words interleaved with `l` / `L` for `l_V^{±1}`.
    pub fn parse(text: &str) -> Result<HnnWord> {
        let mut pieces = vec![String::new()];
        let mut signs = Vec::new();
        for tok in text.split_whitespace() {
            match tok {
                "l" => {
                    signs.push(1);
                    pieces.push(String::new());
                }
                "L" => {
                    signs.push(-1);
                    pieces.push(String::new());
                }
                _ => {
                    let cur = pieces.last_mut().unwrap();
                    cur.push(' ');
                    cur.push_str(tok);
                }
            }
        }
        let pieces = pieces.iter().map(|p| Word::parse(p, 2)).collect::<Result<Vec<_>>>()?;
        Ok(HnnWord { pieces, signs })
    }
}

impl fmt::Display for HnnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (k, p) in self.pieces.iter().enumerate() {
            if !p.is_identity() || self.pieces.len() == 1 {
                parts.push(format!("{p}"));
            }
            if k < self.signs.len() {
                parts.push(String::from(if self.signs[k] > 0 { "l" } else { "L" }));
            }
        }
        f.write_str(&parts.join(" "))
    }
}

/// Result of the pullback test for `U_α` against `U_ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjSepReport {
    /// Every intersection `U_α ∩ g U_ω g^{-1}` is trivial.
    pub literal_trivial: bool,
    /// `(double coset representative, generator of the intersection)`.
    pub components: Vec<(Word, Vec<Word>)>,
    /// Every nontrivial intersection is cyclic, generated by a conjugate of
    /// `m_V^{±1}`, and its representative lies in `U_α U_ω`.
    pub peripheral_only: bool,
}

#[derive(Clone, Debug)]
pub struct PatternGroup {
    alpha_images: [Word; 2],
    omega_images: [Word; 2],
    u_alpha: SubgroupGraph,
    u_omega: SubgroupGraph,
    m_v: Word,
}

impl PatternGroup {
    pub fn new() -> PatternGroup {
        let p = |s: &str| Word::parse(s, 2).unwrap();
        let alpha_images = [p("x2 X1 X2"), p("x1")];
        let omega_images = [p("x2 X1 X2 x1 X2"), p("x2")];
        let u_alpha = SubgroupGraph::from_generators(2, &alpha_images).unwrap();
        let u_omega = SubgroupGraph::from_generators(2, &omega_images).unwrap();
        let m_v = alpha_images[0].mul(&alpha_images[1]);
        assert_eq!(m_v, omega_images[0].mul(&omega_images[1]));
        assert_eq!(u_alpha.rank(), 2);
        assert_eq!(u_omega.rank(), 2);
        PatternGroup { alpha_images, omega_images, u_alpha, u_omega, m_v }
    }

    pub fn m_v(&self) -> &Word {
        &self.m_v
    }

    pub fn subgroup(&self, side: Side) -> &SubgroupGraph {
        match side {
            Side::Alpha => &self.u_alpha,
            Side::Omega => &self.u_omega,
        }
    }

    pub fn images(&self, side: Side) -> &[Word; 2] {
        match side {
            Side::Alpha => &self.alpha_images,
            Side::Omega => &self.omega_images,
        }
    }

    /// Image of a word in `y1, y2` under `α` or `ω`.
    pub fn boundary_map(&self, side: Side, y: &Word) -> Word {
        y.substitute(self.images(side), 2)
    }

    /// Preimage in `F(y1, y2)` of a member of `U_side`.
    pub fn preimage(&self, side: Side, a: &Word) -> Option<Word> {
        self.subgroup(side).witness(a)
    }

    /// The meridian whose peripheral intersections case 2 describes.
    pub fn meridian(&self, side: Side) -> Word {
        match side {
            Side::Alpha => Word::generator(2, 1),
            Side::Omega => Word::generator(2, 2),
        }
    }

    /// `x2` for α, `x2 X1` for ω.
    pub fn swap(&self, side: Side) -> Word {
        match side {
            Side::Alpha => Word::parse("x2", 2).unwrap(),
            Side::Omega => Word::parse("x2 X1", 2).unwrap(),
        }
    }

    pub fn britton_reduce(&self, w: &HnnWord) -> HnnWord {
        let mut pieces: Vec<Word> = vec![w.pieces[0].clone()];
        let mut signs: Vec<i8> = Vec::new();
        for (k, &s) in w.signs.iter().enumerate() {
            let next = &w.pieces[k + 1];
            if let Some(&last) = signs.last() {
                if last == -s {
                    let middle = pieces.last().unwrap();
                    // l a L with a ∈ U_ω becomes α(ω^{-1}(a)); L a l symmetric.
                    let (from, to) = if last > 0 { (Side::Omega, Side::Alpha) } else { (Side::Alpha, Side::Omega) };
                    if let Some(y) = self.preimage(from, middle) {
                        let image = self.boundary_map(to, &y);
                        pieces.pop();
                        signs.pop();
                        let before = pieces.pop().unwrap();
                        pieces.push(Word::product(2, [&before, &image, next]));
                        continue;
                    }
                }
            }
            signs.push(s);
            pieces.push(next.clone());
        }
        HnnWord { pieces, signs }
    }

    /// Equality in the HNN extension, decided by Britton's lemma.
    pub fn hnn_equal(&self, a: &HnnWord, b: &HnnWord) -> bool {
        let r = self.britton_reduce(&a.mul(&b.inverse()));
        r.is_base() && r.pieces[0].is_identity()
    }

    /// Decides one of the three peripheral-intersection statements for `a`,
    /// cross-checking the direct computation against the decomposition.
    pub fn lemma4_decide(&self, case: Lemma4Case, side: Side, a: &Word) -> Result<Lemma4Decision> {
        let u = self.subgroup(side);
        let (direct, decomposition) = match case {
            Lemma4Case::Boundary => {
                let direct = u.conjugate_power_membership(a, &self.m_v)?.is_some();
                let d = self.preimage(side, a).map(|witness| Decomposition::Member { witness });
                (direct, d)
            }
            Lemma4Case::Meridian => {
                let x = self.meridian(side);
                let direct = u.conjugate_power_membership(a, &x)?.is_some();
                let cyclic = SubgroupGraph::from_generators(2, &[x.clone()])?;
                let mut best: Option<Decomposition> = None;
                for eps in [0i8, 1] {
                    let s = self.swap(side).pow(eps as i64);
                    if let Some((h, k)) = u.double_coset_decompose(&s, &cyclic, a) {
                        let kk = k.exponent_sum(x.letters()[0].index());
                        let cand = Decomposition::Peripheral { u: h, epsilon: eps, k: kk };
                        best = Some(pick_shorter(best, cand));
                    }
                }
                (direct, best)
            }
            Lemma4Case::SelfConjugate => {
                let direct = u.intersection(&u.conjugate(a)).rank() > 0;
                let mut best: Option<Decomposition> = None;
                for eps in [0i8, 1, -1] {
                    let s = self.swap(side).pow(eps as i64);
                    if let Some((u1, u2)) = u.double_coset_decompose(&s, u, a) {
                        best = Some(pick_shorter(best, Decomposition::DoubleCoset { u1, epsilon: eps, u2 }));
                    }
                }
                (direct, best)
            }
        };
        if direct != decomposition.is_some() {
            return Err(Error::falsified(
                "Lemma 4",
                format!("case {} for a = {a}: direct test {direct}, decomposition found {}", case.label(side), decomposition.is_some()),
            ));
        }
        Ok(Lemma4Decision { holds: direct, decomposition })
    }

    /// Recomputes `a` from a decomposition.
    pub fn recompose(&self, side: Side, d: &Decomposition) -> Word {
        match d {
            Decomposition::Member { witness } => self.boundary_map(side, witness),
            Decomposition::Peripheral { u, epsilon, k } => Word::product(
                2,
                [u, &self.swap(side).pow(*epsilon as i64), &self.meridian(side).pow(*k)],
            ),
            Decomposition::DoubleCoset { u1, epsilon, u2 } => {
                Word::product(2, [u1, &self.swap(side).pow(*epsilon as i64), u2])
            }
        }
    }

    pub fn conjsep_check(&self) -> ConjSepReport {
        let comps = self.u_alpha.pullback_intersections(&self.u_omega);
        let mut peripheral_only = true;
        let mut components = Vec::new();
        for c in comps {
            let basis = c.intersection.basis();
            let boundary = basis.len() == 1
                && (basis[0].is_conjugate(&self.m_v).ok().flatten().is_some()
                    || basis[0].is_conjugate(&self.m_v.inverse()).ok().flatten().is_some());
            let in_product = self.u_alpha.double_coset_decompose(&Word::identity(2), &self.u_omega, &c.rep).is_some();
            peripheral_only &= boundary && in_product;
            components.push((c.rep, basis));
        }
        ConjSepReport { literal_trivial: components.is_empty(), components, peripheral_only }
    }

    /// Whether `w` has the normal form (*) of elements of `U_α`.
    pub fn star_shape(&self, w: &Word) -> Option<NormalFormStar> {
        NormalFormStar::recognize(w)
    }
}

impl Default for PatternGroup {
    fn default() -> Self {
        PatternGroup::new()
    }
}

fn size(d: &Decomposition) -> (usize, usize) {
    match d {
        Decomposition::Member { witness } => (witness.len(), 0),
        Decomposition::Peripheral { u, epsilon, .. } => (u.len(), epsilon.unsigned_abs() as usize),
        Decomposition::DoubleCoset { u1, epsilon, .. } => (u1.len(), epsilon.unsigned_abs() as usize),
    }
}

fn pick_shorter(best: Option<Decomposition>, cand: Decomposition) -> Decomposition {
    match best {
        Some(b) if size(&b) <= size(&cand) => b,
        _ => cand,
    }
}

/// The automorphism `x1 ↦ x2, x2 ↦ x2 X1`, which carries `U_α` onto `U_ω`.
pub fn theta(w: &Word) -> Word {
    w.substitute(&[Word::parse("x2", 2).unwrap(), Word::parse("x2 X1", 2).unwrap()], 2)
}

pub fn theta_inverse(w: &Word) -> Word {
    w.substitute(&[Word::parse("X2 x1", 2).unwrap(), Word::parse("x1", 2).unwrap()], 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn boundary_maps() {
        let g = PatternGroup::new();
        let y = |s: &str| Word::parse_with(s, 2, 'y').unwrap();
        assert_eq!(g.boundary_map(Side::Alpha, &y("y1 y2")), w("x2 X1 X2 x1"));
        assert_eq!(g.boundary_map(Side::Omega, &y("y1 y2")), w("x2 X1 X2 x1"));
        assert!(g.boundary_map(Side::Alpha, &y("")).is_identity());
    }

    #[test]
    fn theta_carries_alpha_to_omega() {
        let g = PatternGroup::new();
        for i in 0..2 {
            assert_eq!(theta(&g.images(Side::Alpha)[i]), g.images(Side::Omega)[i]);
        }
        assert_eq!(theta_inverse(&theta(&w("x1 x2 X1 x2"))), w("x1 x2 X1 x2"));
    }

    #[test]
    fn britton() {
        let g = PatternGroup::new();
        let r = g.britton_reduce(&HnnWord::parse("l x2 L").unwrap());
        assert_eq!(r, HnnWord::base(w("x1")));
        let r = g.britton_reduce(&HnnWord::parse("l x1 L").unwrap());
        assert_eq!(r.stable_letters(), 2);
        assert_eq!(g.britton_reduce(&HnnWord::parse("x1 x2").unwrap()), HnnWord::base(w("x1 x2")));
        let r = g.britton_reduce(&HnnWord::parse("x2 L x1 l x1").unwrap());
        assert_eq!(r, HnnWord::base(w("x2 x2 x1")));
        assert_eq!(HnnWord::parse("l x1 L").unwrap().to_string(), "l x1 L");
    }

    #[test]
    fn lemma4_examples() {
        let g = PatternGroup::new();
        let d = g.lemma4_decide(Lemma4Case::Boundary, Side::Alpha, &w("x1")).unwrap();
        assert!(d.holds);
        let d = g.lemma4_decide(Lemma4Case::Meridian, Side::Alpha, &w("x2 x1 x1 x1")).unwrap();
        assert_eq!(d.decomposition, Some(Decomposition::Peripheral { u: w(""), epsilon: 1, k: 3 }));
        let d = g.lemma4_decide(Lemma4Case::SelfConjugate, Side::Alpha, &w("x2 x2")).unwrap();
        assert!(!d.holds);
        let d = g.lemma4_decide(Lemma4Case::SelfConjugate, Side::Omega, &w("x2 X1")).unwrap();
        assert!(d.holds);
        let a = w("x1 x2 x1 X2 x2 x1");
        for case in Lemma4Case::ALL {
            for side in [Side::Alpha, Side::Omega] {
                if let Some(dec) = g.lemma4_decide(case, side, &a).unwrap().decomposition {
                    assert_eq!(g.recompose(side, &dec), a);
                }
            }
        }
    }

    #[test]
    fn case_labels() {
        assert_eq!(Lemma4Case::parse("2a").unwrap(), (Lemma4Case::Meridian, Side::Alpha));
        assert_eq!(Lemma4Case::parse("3ω").unwrap(), (Lemma4Case::SelfConjugate, Side::Omega));
        assert!(Lemma4Case::parse("4a").is_err());
        assert_eq!(Lemma4Case::Boundary.label(Side::Omega), "1w");
    }

    #[test]
    fn star_shapes() {
        assert_eq!(NormalFormStar::recognize(&w("x1 x1 x2 X1 X2")), Some(NormalFormStar(vec![2, -1, 0])));
        assert!(NormalFormStar::recognize(&w("x2")).is_none());
        assert!(NormalFormStar::recognize(&w("X2 x1 x2")).is_none());
        let s = NormalFormStar(vec![0, 3, -1, 2, 0]);
        assert_eq!(NormalFormStar::recognize(&s.word()), Some(s));
    }

    #[test]
    fn conjsep() {
        let r = PatternGroup::new().conjsep_check();
        assert!(!r.literal_trivial);
        assert!(r.peripheral_only);
        assert_eq!(r.components.len(), 1);
    }
}
