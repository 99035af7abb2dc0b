use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::fold::{OutcomeOf, PathOf, SatEGroup, Verdict};
use super::path::SatPath;
use super::sides::{BraidSide, PatternSide};
use super::torus::CompanionOracle;
use super::Satellite;
use crate::braidspace::{C1Verdict, SemidirectElement};
use crate::error::{Error, Result};
use crate::word::Word;

/// `U(B, u_0) ≠ G(k)`, witnessed by an element outside the folded subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropernessCertificate {
    pub separator: String,
    pub trivial_edges: usize,
    pub meridian_edges: usize,
    /// False when some double coset in the pattern space was searched only
    /// within a bounded radius.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TameMeridian<A, B> {
    pub vertex: usize,
    pub element: SatPath<A, B>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeripheralVerdict {
    Trivial,
    /// `g⟨m⟩g^{-1}`; `index` names the meridian of the set conjugate in `U`
    /// to `g m g^{-1}`.
    Meridian { index: Option<usize> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeripheralRow<A, B> {
    pub conjugator: SatPath<A, B>,
    pub verdict: PeripheralVerdict,
    /// `c ∈ U` with `c s_index c^{-1} = g m g^{-1}`.
    pub witness: Option<SatPath<A, B>>,
}

/// A meridional generating set of minimal size, checked pairwise
/// non-conjugate in `U`, with the peripheral intersections of sampled
/// conjugates of `P(k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TamenessCertificate<A, B> {
    pub meridians: Vec<TameMeridian<A, B>>,
    /// Pattern vertices whose group is the whole fiber.
    pub exempt: Vec<usize>,
    pub conjugator_length: usize,
    pub conjugacy_checks: usize,
    pub peripheral: Vec<PeripheralRow<A, B>>,
}

pub type TamenessOf<P, Q> = TamenessCertificate<<P as PatternSide>::Elem, <Q as CompanionOracle>::Elem>;

impl<P: PatternSide, Q: CompanionOracle> Satellite<P, Q> {
    pub fn certify_proper(&self, out: &OutcomeOf<P, Q>) -> Result<PropernessCertificate> {
        if out.verdict != Verdict::Folded {
            return Err(Error::precondition("properness needs a folded outcome"));
        }
        let g = &out.graph;
        let groups: Vec<SatEGroup> = g.edge_ids().iter().map(|&f| g.edge(f).group).collect();
        if groups.contains(&SatEGroup::Full) {
            return Err(Error::precondition("an edge group equals A_e"));
        }
        if self.next_move(g)?.is_some() {
            return Err(Error::precondition("graph admits a fold"));
        }
        let l = self.lift(self.pattern.peripheral(0, 1));
        if self.member(g, &l)? {
            return Err(Error::falsified("properness", "l_V lies in the folded subgroup"));
        }
        Ok(PropernessCertificate {
            separator: self.describe_path(&l),
            trivial_edges: groups.iter().filter(|&&e| e == SatEGroup::Trivial).count(),
            meridian_edges: groups.iter().filter(|&&e| e == SatEGroup::Meridian).count(),
            exact: out.exact,
        })
    }
}

impl<Q: CompanionOracle> Satellite<BraidSide, Q> {
    /// Reads a minimal meridional generating set off a folded benign graph and
    /// re-validates it by brute force with conjugators of length at most `len`.
    pub fn extract_tameness(&self, out: &OutcomeOf<BraidSide, Q>, len: usize) -> Result<TamenessOf<BraidSide, Q>> {
        if out.verdict != Verdict::Folded {
            return Err(Error::precondition("tameness needs a folded outcome"));
        }
        let g = &out.graph;
        let group = self.pattern.group();
        let n = group.strands();
        let mut meridians = Vec::new();
        let mut exempt = Vec::new();
        for u in g.v0_ids() {
            let sub = g.group_u(u);
            if sub.conjugators.is_empty() {
                continue;
            }
            let report = group.verify_c1(&sub.conjugators)?;
            let gamma = self.vertex_path(g, u).ok_or_else(|| Error::Stall(format!("vertex {u} unreachable")))?;
            let locals: Vec<Word> = match &report.verdict {
                C1Verdict::FullFiber { .. } => {
                    exempt.push(u);
                    (1..=n).map(|j| Word::generator(n, j)).collect()
                }
                C1Verdict::Basis { basis, .. } => basis.iter().map(|b| b.word(n)).collect(),
            };
            for w in locals {
                let element = self.path_conj(&gamma, &self.lift(SemidirectElement::fiber(w)));
                meridians.push(TameMeridian { vertex: u, element });
            }
        }
        let c1 = self.complexity(g).0;
        if meridians.len() != c1 {
            return Err(Error::falsified("Theorem 2", format!("{} meridians for c_1 = {c1}", meridians.len())));
        }
        let s: Vec<PathOf<BraidSide, Q>> = meridians.iter().map(|m| m.element.clone()).collect();
        for (i, x) in s.iter().enumerate() {
            if !self.member(g, x)? {
                return Err(Error::falsified("Theorem 2", format!("meridian {i} is not in U")));
            }
        }
        let mut checks = 0;
        let words = self.words_up_to(&s, len);
        for c in &words {
            for i in 0..s.len() {
                let x = self.path_conj(c, &s[i]);
                for (j, y) in s.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    checks += 1;
                    if self.path_equal(&x, y) {
                        return Err(Error::falsified(
                            "Theorem 2",
                            format!("meridians {i} and {j} are conjugate by {}", self.describe_path(c)),
                        ));
                    }
                }
            }
        }
        let peripheral = self.peripheral_table(g, &meridians)?;
        Ok(TamenessCertificate { meridians, exempt, conjugator_length: len, conjugacy_checks: checks, peripheral })
    }

    /// For each generator-or-identity `g`: `g P g^{-1} ∩ U` on a box of
    /// peripheral elements, which must be trivial or `g⟨m⟩g^{-1}`.
    fn peripheral_table(
        &self,
        g: &super::fold::GraphOf<BraidSide, Q>,
        meridians: &[TameMeridian<SemidirectElement, Q::Elem>],
    ) -> Result<Vec<PeripheralRow<SemidirectElement, Q::Elem>>> {
        let p = &self.pattern;
        let pd = p.group().peripheral_data();
        let (x1, tn) = (pd.p_v[0].clone(), pd.p_v[1].clone());
        let mut rows = Vec::new();
        for c in self.words_up_to(&self.group_generators(), 1) {
            let mut meridian_power = false;
            for (a, b) in [(1, 0), (-1, 0), (2, 0), (0, 1), (0, -1), (1, 1), (1, -1)] {
                let elt = p.mul(&SemidirectElement::fiber(x1.fiber.pow(a)), &p_power(p, &tn, b));
                if self.member(g, &self.path_conj(&c, &self.lift(elt)))? {
                    if b != 0 {
                        return Err(Error::falsified(
                            "Theorem 2",
                            format!("U meets a conjugate of P(k) by {} outside the meridian", self.describe_path(&c)),
                        ));
                    }
                    meridian_power = true;
                }
            }
            let mut witness = None;
            let verdict = if meridian_power {
                let m = self.meridian_of(&c);
                if !self.member(g, &m)? {
                    return Err(Error::falsified("Theorem 2", "U contains a proper power of a meridian only"));
                }
                let found = self.u_conjugate_index(g, meridians, &m)?;
                let index = found.as_ref().map(|f| f.0);
                witness = found.map(|f| f.1);
                PeripheralVerdict::Meridian { index }
            } else {
                PeripheralVerdict::Trivial
            };
            rows.push(PeripheralRow { conjugator: c, verdict, witness });
        }
        Ok(rows)
    }

    /// Index `j` and `c ∈ U` with `c S_j c^{-1} = z`, for an elliptic `z ∈ U`. The midpoint of the reading of `z` is the
    /// vertex it fixes; conjugacy is then decided in the free group `B_u`.
    fn u_conjugate_index(
        &self,
        g: &super::fold::GraphOf<BraidSide, Q>,
        meridians: &[TameMeridian<SemidirectElement, Q::Elem>],
        z: &PathOf<BraidSide, Q>,
    ) -> Result<Option<(usize, PathOf<BraidSide, Q>)>> {
        let z = self.reduce(z);
        if z.depth() % 2 == 1 {
            return Ok(None);
        }
        let Some(trail) = self.reading(g, &z)? else { return Ok(None) };
        let d = z.depth() / 2;
        let (u, acc) = &trail[d];
        let prefix = SatPath { v0: z.v0[..=d].to_vec(), v1: z.v1[..d].to_vec() };
        let p_d = self.path_mul(&prefix, &self.lift(self.pattern.inverse(acc)));
        let Some(w) = self.local(&p_d, &z) else { return Ok(None) };
        let sub = g.group_u(*u);
        if !self.pattern.contains(sub, &w) {
            return Ok(None);
        }
        let gb = sub.graph.with_basis_generators();
        let Some(ew) = gb.witness(&w.fiber) else { return Ok(None) };
        let Some(gamma) = self.vertex_path(g, *u) else { return Ok(None) };
        for (j, m) in meridians.iter().enumerate() {
            if m.vertex != *u {
                continue;
            }
            let Some(sj) = self.local(&gamma, &m.element) else { continue };
            let Some(ej) = gb.witness(&sj.fiber) else { continue };
            if let Some(k) = ew.is_conjugate(&ej)? {
                let k = self.lift(SemidirectElement::fiber(gb.evaluate(&k)));
                let c = self.path_mul(&self.path_mul(&p_d, &k), &self.path_inverse(&gamma));
                return Ok(Some((j, c)));
            }
        }
        Ok(None)
    }

    /// `c^{-1} x c` when it lies in the pattern vertex group.
    fn local(&self, c: &PathOf<BraidSide, Q>, x: &PathOf<BraidSide, Q>) -> Option<SemidirectElement> {
        let w = self.reduce(&self.path_conj(&self.path_inverse(c), x));
        (w.depth() == 0).then(|| w.v0[0].clone())
    }
}

fn p_power(p: &BraidSide, x: &SemidirectElement, k: i64) -> SemidirectElement {
    let step = if k >= 0 { x.clone() } else { p.inverse(x) };
    (0..k.unsigned_abs()).fold(p.identity(), |acc, _| p.mul(&acc, &step))
}
