//! Braid and cable spaces: the groups `F_n ⋊ Z` where the generator `t`
//! acts on the fiber by a braid automorphism.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::stallings::SubgroupGraph;
use crate::word::{Gen, Word};

/// A braid word on `n` strands; letters are `(i, sign)` for `σ_i^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<(u32, i8)>,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<(u32, i8)>) -> Result<BraidWord> {
        if strands < 2 {
            return Err(Error::precondition("a braid needs at least two strands"));
        }
        for &(i, s) in &letters {
            if i == 0 || i >= strands {
                return Err(Error::IndexOutOfRange { index: i, rank: strands - 1 });
            }
            if s != 1 && s != -1 {
                return Err(Error::precondition("braid letter sign must be 1 or -1"));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses `s2 S1 s2 s2` (`s<i>` is σ_i, `S<i>` its inverse).
    pub fn parse(text: &str, strands: u32) -> Result<BraidWord> {
        let mut letters = Vec::new();
        let mut pos = 0;
        for tok in text.split_whitespace() {
            let start = text[pos..].find(tok).map(|o| o + pos).unwrap_or(pos);
            pos = start + tok.len();
            let bad = |reason| Error::Parse { position: start, token: tok.into(), reason };
            let (sign, digits) = match tok.as_bytes()[0] {
                b's' => (1, &tok[1..]),
                b'S' => (-1, &tok[1..]),
                _ => return Err(bad("expected s<i> or S<i>")),
            };
            let i: u32 = digits.parse().map_err(|_| bad("missing strand index"))?;
            if i == 0 || i >= strands {
                return Err(bad("strand index out of range"));
            }
            letters.push((i, sign));
        }
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[(u32, i8)] {
        &self.letters
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(i, s)) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", if s > 0 { 's' } else { 'S' }, i)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flavor {
    Braid(BraidWord),
    Cable { n: u32, m: u32 },
}

/// `F_n ⋊ <t>` with `t w t^{-1} = φ(w)`.
#[derive(Clone, Debug)]
pub struct BraidSpaceGroup {
    n: u32,
    tau: Vec<u32>,
    action: Vec<Word>,
    inverse_action: Vec<Word>,
    flavor: Flavor,
}

/// Normal form `w t^z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemidirectElement {
    pub fiber: Word,
    pub shift: i64,
}

impl SemidirectElement {
    pub fn new(fiber: Word, shift: i64) -> SemidirectElement {
        SemidirectElement { fiber, shift }
    }

    pub fn fiber(w: Word) -> SemidirectElement {
        SemidirectElement { fiber: w, shift: 0 }
    }
}

impl fmt::Display for SemidirectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.fiber.is_identity(), self.shift) {
            (_, 0) => write!(f, "{}", self.fiber),
            (true, z) => write!(f, "t^{z}"),
            (false, z) => write!(f, "{} t^{z}", self.fiber),
        }
    }
}

fn sigma(n: u32, i: u32, sign: i8) -> Vec<Word> {
    let x = |j: u32| Word::generator(n, j);
    let mut images: Vec<Word> = (1..=n).map(x).collect();
    let (xi, xj) = (x(i), x(i + 1));
    if sign > 0 {
        images[i as usize - 1] = xi.conjugate(&xj);
        images[i as usize] = xi;
    } else {
        images[i as usize - 1] = xj.clone();
        images[i as usize] = xj.inverse().conjugate(&xi);
    }
    images
}

fn compose(first: &[Word], then: &[Word], n: u32) -> Vec<Word> {
    first.iter().map(|w| w.substitute(then, n)).collect()
}

impl BraidSpaceGroup {
    /// Braid space of a braid whose closure is a knot.
    pub fn artin(beta: &BraidWord) -> Result<BraidSpaceGroup> {
        let n = beta.strands;
        let mut action: Vec<Word> = (1..=n).map(|j| Word::generator(n, j)).collect();
        let mut inverse: Vec<Word> = action.clone();
        for &(i, s) in &beta.letters {
            action = compose(&action, &sigma(n, i, s), n);
        }
        for &(i, s) in beta.letters.iter().rev() {
            inverse = compose(&inverse, &sigma(n, i, -s), n);
        }
        let tau = action
            .iter()
            .map(|w| {
                let (_, core) = w.cyclic_reduction();
                core.word().first().unwrap().index()
            })
            .collect();
        let g = BraidSpaceGroup { n, tau, action, inverse_action: inverse, flavor: Flavor::Braid(beta.clone()) };
        g.require_cycle()?;
        Ok(g)
    }

    /// Cable space: `t x_i t^{-1} = x_{i+m}` (indices mod n).
    pub fn cable(n: u32, m: u32) -> Result<BraidSpaceGroup> {
        if n < 2 {
            return Err(Error::precondition("a cable space needs n >= 2"));
        }
        let tau: Vec<u32> = (0..n).map(|i| (i + m) % n + 1).collect();
        let action: Vec<Word> = tau.iter().map(|&j| Word::generator(n, j)).collect();
        let mut inverse = vec![Word::identity(n); n as usize];
        for (i, &j) in tau.iter().enumerate() {
            inverse[j as usize - 1] = Word::generator(n, i as u32 + 1);
        }
        let g = BraidSpaceGroup { n, tau, action, inverse_action: inverse, flavor: Flavor::Cable { n, m } };
        g.require_cycle()?;
        Ok(g)
    }

    fn require_cycle(&self) -> Result<()> {
        let mut j = 1;
        for step in 1..=self.n {
            j = self.tau[j as usize - 1];
            if j == 1 && step < self.n {
                return Err(Error::precondition(format!(
                    "closure is a link, not a knot (permutation has a cycle of length {step})"
                )));
            }
        }
        Ok(())
    }

    pub fn strands(&self) -> u32 {
        self.n
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    pub fn is_cable(&self) -> bool {
        matches!(self.flavor, Flavor::Cable { .. })
    }

    /// `τ(i)` for `i` in `1..=n`.
    pub fn tau(&self, i: u32) -> u32 {
        self.tau[i as usize - 1]
    }

    pub fn tau_power(&self, i: u32, z: i64) -> u32 {
        let k = z.rem_euclid(self.n as i64);
        let mut j = i;
        for _ in 0..k {
            j = self.tau(j);
        }
        j
    }

    /// The words `a_i` with `φ(x_i) = a_i x_τ(i) a_i^{-1}`.
    pub fn action_conjugators(&self) -> Vec<Word> {
        self.action.iter().map(|w| w.prefix((w.len() - 1) / 2)).collect()
    }

    pub fn action_images(&self) -> &[Word] {
        &self.action
    }

    /// `t^z w t^{-z}`.
    pub fn act(&self, w: &Word, z: i64) -> Word {
        let images = if z >= 0 { &self.action } else { &self.inverse_action };
        let mut out = w.clone();
        for _ in 0..z.unsigned_abs() {
            out = out.substitute(images, self.n);
        }
        out
    }

    pub fn multiply(&self, g: &SemidirectElement, h: &SemidirectElement) -> SemidirectElement {
        SemidirectElement { fiber: g.fiber.mul(&self.act(&h.fiber, g.shift)), shift: g.shift + h.shift }
    }

    pub fn inverse(&self, g: &SemidirectElement) -> SemidirectElement {
        SemidirectElement { fiber: self.act(&g.fiber.inverse(), -g.shift), shift: -g.shift }
    }

    pub fn identity(&self) -> SemidirectElement {
        SemidirectElement::fiber(Word::identity(self.n))
    }

    /// `g x1^k g^{-1}`, which always lies in the fiber.
    pub fn push_into_fiber(&self, g: &SemidirectElement, k: i64) -> Word {
        let x1k = Word::generator(self.n, 1).pow(k);
        g.fiber.conjugate(&self.act(&x1k, g.shift))
    }

    /// Whether `g` commutes with `x1`; cable spaces only.
    pub fn centralizer_of_meridian(&self, g: &SemidirectElement) -> Result<bool> {
        if !self.is_cable() {
            return Err(Error::Unsupported("meridian centralizer is decided for cable spaces only".into()));
        }
        let on_shift = g.shift.rem_euclid(self.n as i64) == 0;
        let in_x1 = g.fiber.letters().iter().all(|l| l.index() == 1);
        Ok(on_shift && in_x1)
    }

    pub fn peripheral_data(&self) -> PeripheralData {
        let n = self.n;
        let m_v = Word::product(n, (1..=n).map(|j| Word::generator(n, j)).collect::<Vec<_>>().iter());
        // t fixes m_V for a braid; a cable rotates it, and x1...x_m t undoes the rotation.
        let twist = match self.flavor {
            Flavor::Cable { m, .. } => (m % n) as usize,
            Flavor::Braid(_) => 0,
        };
        let l_v = SemidirectElement::new(Word::from_gens(m_v.letters()[..twist].iter().copied(), n), 1);
        PeripheralData {
            p_v: [SemidirectElement::fiber(Word::generator(n, 1)), SemidirectElement::new(Word::identity(n), n as i64)],
            c_v: [SemidirectElement::fiber(m_v.clone()), l_v.clone()],
            m_v,
            l_v,
        }
    }

    /// Instance check of the structure of meridional subgroups of the fiber.
    pub fn verify_c1(&self, conjugators: &[SemidirectElement]) -> Result<C1Report> {
        let n = self.n;
        let gens: Vec<Word> = conjugators.iter().map(|g| self.push_into_fiber(g, 1)).collect();
        let graph = SubgroupGraph::from_generators(n, &gens)?;
        if graph.is_full() {
            let witnesses = (1..=n)
                .map(|j| {
                    graph
                        .witness(&Word::generator(n, j))
                        .ok_or_else(|| Error::falsified("C1", "full fiber graph misses a generator"))
                })
                .collect::<Result<Vec<_>>>()?;
            if conjugators.len() < n as usize {
                return Err(Error::falsified(
                    "C1",
                    format!("{} meridians generate the whole fiber of rank {n}", conjugators.len()),
                ));
            }
            return Ok(C1Report { generators: gens, verdict: C1Verdict::FullFiber { witnesses }, rank: n as usize });
        }
        let paths = graph.tree_paths();
        let mut basis = Vec::new();
        for e in graph.edges() {
            let g = Gen::pos(e.gen);
            let tree = paths[e.from].append_gen(g) == paths[e.to] || paths[e.to].append_gen(g.inverse()) == paths[e.from];
            if tree {
                continue;
            }
            if e.from != e.to {
                return Err(Error::falsified("C1", "folded graph has a cycle that is not a meridian loop"));
            }
            basis.push(MeridianConjugate { conjugator: paths[e.from].clone(), index: e.gen, vertex: e.from });
        }
        if basis.len() > conjugators.len() || basis.len() != graph.rank() {
            return Err(Error::falsified("C1", "basis of meridian conjugates larger than generating set"));
        }
        let mut peripheral = Vec::new();
        for v in 0..graph.vertex_count() {
            for j in 1..=n {
                let profile = graph.closed_lift_profile(&Word::generator(n, j))?;
                let class = match profile.at(v) {
                    None => PeripheralClass::Trivial,
                    Some(1) => {
                        let pos = basis
                            .iter()
                            .position(|b| b.vertex == v && b.index == j)
                            .ok_or_else(|| Error::falsified("C1", "closed meridian lift is not a basis loop"))?;
                        PeripheralClass::Meridian { basis_position: pos }
                    }
                    Some(p) => {
                        return Err(Error::falsified(
                            "C1",
                            format!("proper power x{j}^{p} lifts closed at vertex {v}"),
                        ))
                    }
                };
                peripheral.push(PeripheralEntry { vertex: v, index: j, class });
            }
        }
        let m_v = self.peripheral_data().m_v;
        let mv_profile = graph.closed_lift_profile(&m_v)?;
        if let Some(v) = mv_profile.closed_vertices().first() {
            return Err(Error::falsified("C1", format!("a power of m_V lifts closed at vertex {v}")));
        }
        Ok(C1Report {
            generators: gens,
            rank: graph.rank(),
            verdict: C1Verdict::Basis { basis, peripheral },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeripheralData {
    pub m_v: Word,
    pub l_v: SemidirectElement,
    pub p_v: [SemidirectElement; 2],
    pub c_v: [SemidirectElement; 2],
}

/// `conjugator · x_index · conjugator^{-1}`, a loop at `vertex` of the fiber graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeridianConjugate {
    pub conjugator: Word,
    pub index: u32,
    pub vertex: usize,
}

impl MeridianConjugate {
    pub fn word(&self, n: u32) -> Word {
        self.conjugator.conjugate(&Word::generator(n, self.index))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeripheralClass {
    Trivial,
    Meridian { basis_position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeripheralEntry {
    pub vertex: usize,
    pub index: u32,
    pub class: PeripheralClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum C1Verdict {
    FullFiber { witnesses: Vec<Word> },
    Basis { basis: Vec<MeridianConjugate>, peripheral: Vec<PeripheralEntry> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C1Report {
    pub generators: Vec<Word>,
    pub rank: usize,
    pub verdict: C1Verdict,
}

impl C1Report {
    pub fn basis_size(&self) -> usize {
        match &self.verdict {
            C1Verdict::FullFiber { witnesses } => witnesses.len(),
            C1Verdict::Basis { basis, .. } => basis.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(s: &str, n: u32) -> Word {
        Word::parse(s, n).unwrap()
    }

    #[test]
    fn figure_two_braid() {
        let b = BraidWord::parse("s2 S1 s2 s2", 3).unwrap();
        let g = BraidSpaceGroup::artin(&b).unwrap();
        assert_eq!((g.tau(1), g.tau(2), g.tau(3)), (2, 3, 1));
        assert_eq!(b.to_string(), "s2 S1 s2 s2");
    }

    #[test]
    fn single_crossing() {
        let g = BraidSpaceGroup::artin(&BraidWord::parse("s1", 2).unwrap()).unwrap();
        assert_eq!(g.action_images()[0], w("x1 x2 X1", 2));
        assert_eq!(g.action_images()[1], w("x1", 2));
        assert_eq!(g.action_conjugators(), vec![w("x1", 2), w("", 2)]);
    }

    #[test]
    fn links_rejected() {
        assert!(BraidSpaceGroup::artin(&BraidWord::parse("s1 s1", 2).unwrap()).is_err());
        assert!(BraidSpaceGroup::cable(4, 2).is_err());
        assert!(BraidWord::parse("s3", 3).is_err());
    }

    #[test]
    fn cable_multiply() {
        let g = BraidSpaceGroup::cable(3, 1).unwrap();
        let t = SemidirectElement::new(w("", 3), 1);
        let p = g.multiply(&t, &SemidirectElement::fiber(w("x2", 3)));
        assert_eq!(p, SemidirectElement::new(w("x3", 3), 1));
        let a = SemidirectElement::new(w("x1", 3), 1);
        assert_eq!(g.multiply(&a, &g.inverse(&a)), g.identity());
    }

    #[test]
    fn inverse_action_is_inverse() {
        let g = BraidSpaceGroup::artin(&BraidWord::parse("s2 S1 s2 s2", 3).unwrap()).unwrap();
        for j in 1..=3 {
            let x = Word::generator(3, j);
            assert_eq!(g.act(&g.act(&x, 1), -1), x);
            assert_eq!(g.act(&g.act(&x, -2), 2), x);
        }
        let pd = g.peripheral_data();
        assert_eq!(g.act(&pd.m_v, 1), pd.m_v);
    }

    #[test]
    fn pushes() {
        let g = BraidSpaceGroup::cable(3, 1).unwrap();
        assert_eq!(g.push_into_fiber(&SemidirectElement::new(w("", 3), 1), 1), w("x2", 3));
        assert_eq!(g.push_into_fiber(&g.identity(), 1), w("x1", 3));
        assert_eq!(g.push_into_fiber(&SemidirectElement::fiber(w("x2", 3)), 2), w("x2 x1 x1 X2", 3));
    }

    #[test]
    fn centralizer() {
        let g = BraidSpaceGroup::cable(3, 1).unwrap();
        assert!(g.centralizer_of_meridian(&SemidirectElement::new(w("x1 x1", 3), 3)).unwrap());
        assert!(!g.centralizer_of_meridian(&SemidirectElement::new(w("", 3), 1)).unwrap());
        assert!(!g.centralizer_of_meridian(&SemidirectElement::fiber(w("x2", 3))).unwrap());
        let b = BraidSpaceGroup::artin(&BraidWord::parse("s1", 2).unwrap()).unwrap();
        assert!(matches!(b.centralizer_of_meridian(&b.identity()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn peripheral() {
        let g = BraidSpaceGroup::cable(2, 1).unwrap();
        let pd = g.peripheral_data();
        assert_eq!(pd.m_v, w("x1 x2", 2));
        assert_eq!(pd.l_v.shift, 1);
        let lm = g.multiply(&pd.l_v, &SemidirectElement::fiber(pd.m_v.clone()));
        assert_eq!(g.multiply(&lm, &g.inverse(&pd.l_v)).fiber, pd.m_v);
        let g3 = BraidSpaceGroup::cable(3, 2).unwrap();
        let pd3 = g3.peripheral_data();
        let lm = g3.multiply(&pd3.l_v, &SemidirectElement::fiber(pd3.m_v.clone()));
        assert_eq!(g3.multiply(&lm, &g3.inverse(&pd3.l_v)).fiber, pd3.m_v);
        assert_eq!(pd.p_v[1].shift, 2);
        assert_eq!(BraidSpaceGroup::cable(3, 1).unwrap().peripheral_data().m_v, w("x1 x2 x3", 3));
    }

    #[test]
    fn c1_instances() {
        let g = BraidSpaceGroup::cable(3, 1).unwrap();
        let shifts: Vec<SemidirectElement> =
            (0..3).map(|z| SemidirectElement::new(w("", 3), z)).collect();
        let full = g.verify_c1(&shifts).unwrap();
        assert!(matches!(full.verdict, C1Verdict::FullFiber { .. }));

        let one = g.verify_c1(&[g.identity()]).unwrap();
        assert_eq!(one.basis_size(), 1);
        match &one.verdict {
            C1Verdict::Basis { peripheral, .. } => {
                let closed: Vec<_> =
                    peripheral.iter().filter(|e| e.class != PeripheralClass::Trivial).collect();
                assert_eq!(closed.len(), 1);
                assert_eq!(closed[0].index, 1);
            }
            _ => panic!("expected a basis"),
        }

        let two = g
            .verify_c1(&[SemidirectElement::fiber(w("x2", 3)), g.identity()])
            .unwrap();
        assert_eq!(two.basis_size(), 2);
        assert_eq!(two.rank, 2);
    }
}
