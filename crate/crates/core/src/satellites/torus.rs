use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::error::{Error, Result};
use crate::word::{Gen, Word};

/// The companion side of a satellite: a knot group answering the queries the
/// folding descent needs about meridional subgroups `⟨h_i m h_i^{-1}⟩`, each
/// given by its list of conjugators `h_i` (a free basis of meridians).
pub trait CompanionOracle {
    type Elem: Clone + Debug + PartialEq;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn parse(&self, text: &str) -> Result<Self::Elem>;
    fn show(&self, a: &Self::Elem) -> String;
    /// Generators of the group, for enumeration.
    fn generators(&self) -> Vec<Self::Elem>;
    fn bridge_number(&self) -> usize;

    /// `m^a λ^b`.
    fn peripheral(&self, a: i64, b: i64) -> Self::Elem;
    /// `(a, b)` with `x = m^a λ^b`, or `None` when `x ∉ P`.
    fn peripheral_coords(&self, x: &Self::Elem) -> Option<(i64, i64)>;

    /// Index `i` with `g P g^{-1} ∩ U = g⟨m⟩g^{-1}` and `g m g^{-1}` conjugate in `U`
    /// to `h_i m h_i^{-1}`; `None` when the intersection is trivial.
    fn peripheral_intersection(&self, sub: &[Self::Elem], g: &Self::Elem) -> Result<Option<usize>>;
    /// `(a, c)` with `target = a · source · m^{c.0} λ^{c.1}` and `a ∈ U`.
    fn factor(&self, sub: &[Self::Elem], target: &Self::Elem, source: &Self::Elem) -> Result<Option<(Self::Elem, (i64, i64))>>;
    /// Basis of `⟨U, h m h^{-1}⟩`; the second value is false when the new meridian
    /// was already in `U` up to conjugacy in `U`.
    fn join(&self, sub: &[Self::Elem], h: &Self::Elem) -> Result<(Vec<Self::Elem>, bool)>;

    fn meridian(&self) -> Self::Elem {
        self.peripheral(1, 0)
    }

    fn longitude(&self) -> Self::Elem {
        self.peripheral(0, 1)
    }

    fn conj(&self, g: &Self::Elem, x: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(g, x), &self.inverse(g))
    }
}

/// `⟨a, b | a^p = b^q⟩`, embedded in `(Z_p * Z_q) × Z` by the quotient by the
/// centre and the abelianization `a ↦ q`, `b ↦ p`.
#[derive(Clone, Debug)]
pub struct TorusOracle {
    p: i64,
    q: i64,
    r: i64,
    s: i64,
}

/// Syllable `(generator, exponent)` of the free product normal form.
type Syllable = (u32, i64);

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl TorusOracle {
    pub fn new(p: u32, q: u32) -> Result<TorusOracle> {
        if p < 2 || q < 2 || gcd(p as i64, q as i64) != 1 {
            return Err(Error::precondition(format!("torus knot needs coprime p, q >= 2, got ({p}, {q})")));
        }
        let (p, q) = (p as i64, q as i64);
        // r q + s p = 1 with 0 < r < p.
        let r = (1..p).find(|r| (r * q - 1) % p == 0).unwrap();
        let s = (1 - r * q) / p;
        Ok(TorusOracle { p, q, r, s })
    }

    pub fn pq(&self) -> (u32, u32) {
        (self.p as u32, self.q as u32)
    }

    /// Image in `H_1 = Z`.
    pub fn abelian(&self, x: &Word) -> i64 {
        self.q * x.exponent_sum(1) + self.p * x.exponent_sum(2)
    }

    fn order(&self, g: u32) -> i64 {
        if g == 1 {
            self.p
        } else {
            self.q
        }
    }

    /// Normal form of the image in `Z_p * Z_q`.
    pub fn quotient_form(&self, x: &Word) -> Vec<Syllable> {
        let mut out: Vec<Syllable> = Vec::new();
        for l in x.letters() {
            let g = l.index();
            let k = l.sign() as i64;
            match out.last_mut() {
                Some(last) if last.0 == g => {
                    last.1 = (last.1 + k).rem_euclid(self.order(g));
                    if last.1 == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, k.rem_euclid(self.order(g)))),
            }
        }
        out
    }

    /// `k` with the quotient image of `x` equal to `m̄^k`.
    fn meridian_power(&self, x: &Word) -> Option<i64> {
        let nf = self.quotient_form(x);
        if nf.len() % 2 == 1 {
            return None;
        }
        let k = (nf.len() / 2) as i64;
        let (ra, sb) = (self.r.rem_euclid(self.p), self.s.rem_euclid(self.q));
        let up: Vec<Syllable> = (0..k).flat_map(|_| [(1, ra), (2, sb)]).collect();
        let down: Vec<Syllable> = (0..k).flat_map(|_| [(2, self.q - sb), (1, self.p - ra)]).collect();
        if nf == up {
            Some(k)
        } else if nf == down {
            Some(-k)
        } else {
            None
        }
    }

    fn in_p(&self, x: &Word) -> bool {
        self.meridian_power(x).is_some()
    }

    fn syllables(&self, x: &Word) -> usize {
        self.quotient_form(x).len()
    }
}

fn gen_char(g: Gen) -> char {
    match (g.index(), g.is_positive()) {
        (1, true) => 'a',
        (1, false) => 'A',
        (_, true) => 'b',
        (_, false) => 'B',
    }
}

impl CompanionOracle for TorusOracle {
    type Elem = Word;

    fn identity(&self) -> Word {
        Word::identity(2)
    }

    fn mul(&self, a: &Word, b: &Word) -> Word {
        a.mul(b)
    }

    fn inverse(&self, a: &Word) -> Word {
        a.inverse()
    }

    fn equal(&self, a: &Word, b: &Word) -> bool {
        let d = a.mul(&b.inverse());
        self.abelian(&d) == 0 && self.quotient_form(&d).is_empty()
    }

    /// Letters `a`, `b` and inverses `A`, `B`, optionally separated by spaces;
    /// `1` or the empty string is the identity.
    fn parse(&self, text: &str) -> Result<Word> {
        let mut gens = Vec::new();
        for (i, c) in text.char_indices() {
            match c {
                'a' => gens.push(Gen::pos(1)),
                'A' => gens.push(Gen::neg(1)),
                'b' => gens.push(Gen::pos(2)),
                'B' => gens.push(Gen::neg(2)),
                '1' if text.trim() == "1" => {}
                c if c.is_whitespace() => {}
                _ => {
                    return Err(Error::Parse { position: i, token: c.into(), reason: "expected a, b, A or B" });
                }
            }
        }
        Ok(Word::from_gens(gens, 2))
    }

    fn show(&self, a: &Word) -> String {
        if a.is_identity() {
            return "1".into();
        }
        a.letters().iter().map(|&g| gen_char(g)).collect()
    }

    fn generators(&self) -> Vec<Word> {
        alloc::vec![Word::generator(2, 1), Word::generator(2, 2)]
    }

    fn bridge_number(&self) -> usize {
        self.p.min(self.q) as usize
    }

    fn peripheral(&self, a: i64, b: i64) -> Word {
        let m = Word::generator(2, 1).pow(self.r).mul(&Word::generator(2, 2).pow(self.s));
        let lambda = Word::generator(2, 1).pow(self.p).mul(&m.pow(-self.p * self.q));
        m.pow(a).mul(&lambda.pow(b))
    }

    fn peripheral_coords(&self, x: &Word) -> Option<(i64, i64)> {
        let a = self.abelian(x);
        let y = x.mul(&self.peripheral(-a, 0));
        let j = self.meridian_power(&y)?;
        // ȳ = λ̄^b = m̄^{-pqb}
        let pq = self.p * self.q;
        (j % pq == 0).then_some((a, -j / pq))
    }

    fn peripheral_intersection(&self, sub: &[Word], g: &Word) -> Result<Option<usize>> {
        match sub {
            [] => Ok(None),
            [h] => Ok(self.in_p(&g.inverse().mul(h)).then_some(0)),
            _ => Err(Error::Unsupported(format!("peripheral intersection with a subgroup of meridional rank {}", sub.len()))),
        }
    }

    fn factor(&self, sub: &[Word], target: &Word, source: &Word) -> Result<Option<(Word, (i64, i64))>> {
        match sub {
            [] => Ok(self.peripheral_coords(&source.inverse().mul(target)).map(|c| (Word::identity(2), c))),
            [h] => {
                // Powers of h m h^{-1} beyond the total syllable length cannot
                // cancel into a peripheral element.
                let bound = (self.syllables(target) + self.syllables(source) + 2 * self.syllables(h) + 2) as i64;
                let m = self.meridian();
                for k in (0..=bound).flat_map(|k| [k, -k]).skip(1) {
                    let a = h.mul(&m.pow(k)).mul(&h.inverse());
                    if let Some(c) = self.peripheral_coords(&Word::product(2, [&source.inverse(), &a.inverse(), target])) {
                        return Ok(Some((a, c)));
                    }
                }
                Ok(None)
            }
            _ => Err(Error::Unsupported(format!("double coset in a subgroup of meridional rank {}", sub.len()))),
        }
    }

    fn join(&self, sub: &[Word], h: &Word) -> Result<(Vec<Word>, bool)> {
        match sub {
            [] => Ok((alloc::vec![h.clone()], true)),
            [g] if self.in_p(&g.inverse().mul(h)) => Ok((sub.to_vec(), false)),
            [_] => Ok(([sub, &[h.clone()]].concat(), true)),
            _ => Err(Error::Unsupported(format!("join into a subgroup of meridional rank {}", sub.len()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::reduced_words_up_to;

    #[test]
    fn meridian_and_longitude_abelianize() {
        for (p, q) in [(2, 3), (3, 2), (2, 5), (3, 4)] {
            let t = TorusOracle::new(p, q).unwrap();
            assert_eq!(t.abelian(&t.meridian()), 1);
            assert_eq!(t.abelian(&t.longitude()), 0);
            let ml = t.mul(&t.meridian(), &t.longitude());
            let lm = t.mul(&t.longitude(), &t.meridian());
            assert!(t.equal(&ml, &lm));
        }
        let t = TorusOracle::new(2, 3).unwrap();
        assert_eq!(t.show(&t.meridian()), "aB");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(TorusOracle::new(2, 4).is_err());
        assert!(TorusOracle::new(1, 3).is_err());
    }

    #[test]
    fn centre_and_relation() {
        let t = TorusOracle::new(2, 3).unwrap();
        let a2 = t.parse("aa").unwrap();
        let b3 = t.parse("bbb").unwrap();
        assert!(t.equal(&a2, &b3));
        let b = t.parse("b").unwrap();
        assert!(t.equal(&t.conj(&b, &a2), &a2));
        assert!(!t.equal(&t.parse("ab").unwrap(), &t.parse("ba").unwrap()));
    }

    #[test]
    fn peripheral_coordinates_round_trip() {
        let t = TorusOracle::new(2, 3).unwrap();
        for a in -3..=3 {
            for b in -2..=2 {
                assert_eq!(t.peripheral_coords(&t.peripheral(a, b)), Some((a, b)));
            }
        }
        assert_eq!(t.peripheral_coords(&t.parse("b").unwrap()), None);
    }

    #[test]
    fn meridian_centralizer_is_peripheral() {
        // g m g^{-1} = m iff g ∈ P; a ⟨m⟩ meets g P g^{-1} iff g ∈ P.
        let t = TorusOracle::new(2, 3).unwrap();
        let m = t.meridian();
        for g in reduced_words_up_to(2, 4) {
            let in_p = t.peripheral_coords(&g).is_some();
            assert_eq!(t.equal(&t.conj(&g, &m), &m), in_p, "{}", t.show(&g));
            assert_eq!(t.peripheral_intersection(&[t.identity()], &g).unwrap().is_some(), in_p);
        }
    }

    #[test]
    fn factor_and_join() {
        let t = TorusOracle::new(2, 3).unwrap();
        let g = t.parse("ab").unwrap();
        assert_eq!(t.factor(&[], &g, &g).unwrap(), Some((t.identity(), (0, 0))));
        let h = t.parse("b").unwrap();
        let x = t.mul(&t.conj(&h, &t.meridian().pow(2)), &t.mul(&g, &t.peripheral(1, -1)));
        let (a, c) = t.factor(&[h.clone()], &x, &g).unwrap().unwrap();
        assert_eq!(c, (1, -1));
        assert!(t.equal(&t.mul(&t.mul(&a, &g), &t.peripheral(c.0, c.1)), &x));
        let (basis, grew) = t.join(&[h.clone()], &t.mul(&h, &t.meridian())).unwrap();
        assert_eq!((basis.len(), grew), (1, false));
        assert_eq!(t.join(&[h.clone()], &g).unwrap().0.len(), 2);
        assert!(matches!(t.join(&[h.clone(), g.clone()], &g), Err(Error::Unsupported(_))));
    }
}
