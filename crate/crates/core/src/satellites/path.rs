use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::sides::PatternSide;
use super::torus::CompanionOracle;
use super::Satellite;
use crate::apath::RawAPath;
use crate::error::{Error, Result};

/// Reduced or unreduced element `a_0 e b_0 E a_1 ... e b_{k-1} E a_k` of
/// `π_1(A, v0)`, with `a_i ∈ A_{v0}` and `b_i ∈ A_{v1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SatPath<A, B> {
    pub v0: Vec<A>,
    pub v1: Vec<B>,
}

impl<A, B> SatPath<A, B> {
    /// Number of `e E` round trips.
    pub fn depth(&self) -> usize {
        self.v1.len()
    }
}

impl<P: PatternSide, Q: CompanionOracle> Satellite<P, Q> {
    /// Parses `word ( '|' edge word )*`; edges must alternate `e`, `E`, starting
    /// and ending at the pattern vertex.
    pub fn parse_path(&self, text: &str) -> Result<SatPath<P::Elem, Q::Elem>> {
        let raw = RawAPath::parse(text)?;
        for (k, &s) in raw.signs.iter().enumerate() {
            let want = if k % 2 == 0 { 1 } else { -1 };
            if s != want {
                return Err(Error::Parse {
                    position: k,
                    token: String::from(if s > 0 { "e" } else { "E" }),
                    reason: "edges must alternate e, E starting at the pattern vertex",
                });
            }
        }
        if raw.signs.len() % 2 == 1 {
            return Err(Error::Parse {
                position: raw.signs.len(),
                token: "e".into(),
                reason: "path must return to the pattern vertex",
            });
        }
        let mut out = SatPath { v0: Vec::new(), v1: Vec::new() };
        for (k, text) in raw.elements.iter().enumerate() {
            if k % 2 == 0 {
                out.v0.push(self.pattern.parse(text)?);
            } else {
                out.v1.push(self.companion.parse(text)?);
            }
        }
        Ok(out)
    }

    pub fn show_path(&self, x: &SatPath<P::Elem, Q::Elem>) -> String {
        let mut s = self.pattern.show(&x.v0[0]);
        for (b, a) in x.v1.iter().zip(&x.v0[1..]) {
            s = format!("{s} | e {} | E {}", self.companion.show(b), self.pattern.show(a));
        }
        s
    }

    pub fn lift(&self, a: P::Elem) -> SatPath<P::Elem, Q::Elem> {
        SatPath { v0: vec![a], v1: Vec::new() }
    }

    /// `e b E`.
    pub fn lift_companion(&self, b: Q::Elem) -> SatPath<P::Elem, Q::Elem> {
        SatPath { v0: vec![self.pattern.identity(), self.pattern.identity()], v1: vec![b] }
    }

    pub fn path_identity(&self) -> SatPath<P::Elem, Q::Elem> {
        self.lift(self.pattern.identity())
    }

    pub fn path_mul(&self, x: &SatPath<P::Elem, Q::Elem>, y: &SatPath<P::Elem, Q::Elem>) -> SatPath<P::Elem, Q::Elem> {
        let mut v0 = x.v0[..x.v0.len() - 1].to_vec();
        v0.push(self.pattern.mul(x.v0.last().unwrap(), &y.v0[0]));
        v0.extend_from_slice(&y.v0[1..]);
        SatPath { v0, v1: [x.v1.clone(), y.v1.clone()].concat() }
    }

    pub fn path_inverse(&self, x: &SatPath<P::Elem, Q::Elem>) -> SatPath<P::Elem, Q::Elem> {
        SatPath {
            v0: x.v0.iter().rev().map(|a| self.pattern.inverse(a)).collect(),
            v1: x.v1.iter().rev().map(|b| self.companion.inverse(b)).collect(),
        }
    }

    pub fn path_conj(&self, g: &SatPath<P::Elem, Q::Elem>, x: &SatPath<P::Elem, Q::Elem>) -> SatPath<P::Elem, Q::Elem> {
        self.path_mul(&self.path_mul(g, x), &self.path_inverse(g))
    }

    /// `p · x1 · p^{-1}`.
    pub fn meridian_of(&self, p: &SatPath<P::Elem, Q::Elem>) -> SatPath<P::Elem, Q::Elem> {
        self.path_conj(p, &self.lift(self.pattern.meridian()))
    }

    /// Removes every subpath `e b E` with `b ∈ P(k_1)` and `E a e` with `a ∈ C_V`.
    pub fn reduce(&self, x: &SatPath<P::Elem, Q::Elem>) -> SatPath<P::Elem, Q::Elem> {
        let (mut v0, mut v1) = (x.v0.clone(), x.v1.clone());
        'outer: loop {
            for i in 0..v1.len() {
                if let Some((a, b)) = self.companion.peripheral_coords(&v1[i]) {
                    let right = v0.remove(i + 1);
                    v1.remove(i);
                    v0[i] = self.pattern.mul(&self.pattern.mul(&v0[i], &self.pattern.peripheral(a, b)), &right);
                    continue 'outer;
                }
            }
            for i in 1..v0.len().saturating_sub(1) {
                if let Some((a, b)) = self.pattern.peripheral_coords(&v0[i]) {
                    v0.remove(i);
                    let right = v1.remove(i);
                    v1[i - 1] = self.companion.mul(&self.companion.mul(&v1[i - 1], &self.companion.peripheral(a, b)), &right);
                    continue 'outer;
                }
            }
            return SatPath { v0, v1 };
        }
    }

    /// Word problem in `G(k)`: a reduced path of positive depth is never trivial.
    pub fn is_trivial(&self, x: &SatPath<P::Elem, Q::Elem>) -> bool {
        let r = self.reduce(x);
        r.v1.is_empty() && self.pattern.is_identity(&r.v0[0])
    }

    pub fn path_equal(&self, x: &SatPath<P::Elem, Q::Elem>, y: &SatPath<P::Elem, Q::Elem>) -> bool {
        self.is_trivial(&self.path_mul(x, &self.path_inverse(y)))
    }

    /// Generators of `G(k)`: those of `A_{v0}` and `e b E` for generators `b` of `A_{v1}`.
    pub fn group_generators(&self) -> Vec<SatPath<P::Elem, Q::Elem>> {
        let mut out: Vec<_> = self.pattern.generators().into_iter().map(|a| self.lift(a)).collect();
        out.extend(self.companion.generators().into_iter().map(|b| self.lift_companion(b)));
        out
    }

    /// All products of at most `len` generators and inverses, without
    /// immediate cancellation.
    pub fn words_up_to(&self, gens: &[SatPath<P::Elem, Q::Elem>], len: usize) -> Vec<SatPath<P::Elem, Q::Elem>> {
        let letters: Vec<SatPath<P::Elem, Q::Elem>> =
            gens.iter().flat_map(|g| [g.clone(), self.path_inverse(g)]).collect();
        let mut out = vec![(self.path_identity(), usize::MAX)];
        let mut frontier = out.clone();
        for _ in 0..len {
            let mut next = Vec::new();
            for (w, last) in &frontier {
                for (k, l) in letters.iter().enumerate() {
                    if *last != usize::MAX && k == (*last ^ 1) {
                        continue;
                    }
                    next.push((self.path_mul(w, l), k));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.into_iter().map(|(w, _)| w).collect()
    }

    pub fn describe_path(&self, x: &SatPath<P::Elem, Q::Elem>) -> String {
        let r = self.reduce(x);
        if r.v1.is_empty() {
            self.pattern.show(&r.v0[0])
        } else {
            self.show_path(&r).to_string()
        }
    }
}
