//! Reduced words in finitely generated free groups.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;

/// A generator or its inverse: `x_i` is stored as `+i`, `x_i^{-1}` as `-i`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gen(i32);

impl Gen {
    pub fn new(index: u32, positive: bool) -> Gen {
        assert!(index > 0, "generator indices start at 1");
        let i = index as i32;
        Gen(if positive { i } else { -i })
    }

    pub fn pos(index: u32) -> Gen {
        Gen::new(index, true)
    }

    pub fn neg(index: u32) -> Gen {
        Gen::new(index, false)
    }

    pub fn index(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn sign(self) -> i32 {
        self.0.signum()
    }

    pub fn inverse(self) -> Gen {
        Gen(-self.0)
    }

    pub fn raw(self) -> i32 {
        self.0
    }

    /// Position in the order x1 < X1 < x2 < X2 < ...
    pub fn order_key(self) -> u32 {
        2 * (self.index() - 1) + u32::from(!self.is_positive())
    }

    pub fn from_order_key(key: u32) -> Gen {
        Gen::new(key / 2 + 1, key % 2 == 0)
    }
}

impl Ord for Gen {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A freely reduced word over an alphabet of `rank` generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Gen>,
    rank: u32,
}

/// Exponent-sum vector of a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianImage(pub Vec<i64>);

impl AbelianImage {
    pub fn zero(rank: u32) -> Self {
        AbelianImage(alloc::vec![0; rank as usize])
    }

    pub fn add(&self, other: &AbelianImage) -> AbelianImage {
        AbelianImage(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }
}

fn push_reduced(out: &mut Vec<Gen>, g: Gen) {
    if out.last() == Some(&g.inverse()) {
        out.pop();
    } else {
        out.push(g);
    }
}

impl Word {
    pub fn identity(rank: u32) -> Word {
        Word { letters: Vec::new(), rank }
    }

    pub fn generator(rank: u32, index: u32) -> Word {
        assert!(index >= 1 && index <= rank, "generator x{index} outside rank {rank}");
        Word { letters: alloc::vec![Gen::pos(index)], rank }
    }

    /// Freely reduces `raw` and checks every index against `rank`.
    pub fn reduce<I: IntoIterator<Item = Gen>>(raw: I, rank: u32) -> Result<Word, Error> {
        let mut out = Vec::new();
        for g in raw {
            if g.index() > rank {
                return Err(Error::IndexOutOfRange { index: g.index(), rank });
            }
            push_reduced(&mut out, g);
        }
        Ok(Word { letters: out, rank })
    }

    /// Like [`Word::reduce`] for letters already known to lie in range.
    pub fn from_gens<I: IntoIterator<Item = Gen>>(raw: I, rank: u32) -> Word {
        Word::reduce(raw, rank).expect("letter outside alphabet")
    }

    /// Builds a word from signed indices (`2` is x2, `-1` is X1).
    pub fn from_ints(rank: u32, ints: &[i32]) -> Word {
        Word::from_gens(ints.iter().map(|&i| Gen(i)), rank)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[Gen] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Gen> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Gen> {
        self.letters.last().copied()
    }

    fn check_rank(&self, other: &Word) -> Result<(), Error> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    /// Product `self * other`; panics on rank mismatch.
    pub fn mul(&self, other: &Word) -> Word {
        self.try_mul(other).expect("rank mismatch in word product")
    }

    pub fn try_mul(&self, other: &Word) -> Result<Word, Error> {
        self.check_rank(other)?;
        let mut out = self.letters.clone();
        for &g in &other.letters {
            push_reduced(&mut out, g);
        }
        Ok(Word { letters: out, rank: self.rank })
    }

    /// Product of a sequence of words of a common rank.
    pub fn product<'a, I: IntoIterator<Item = &'a Word>>(rank: u32, words: I) -> Word {
        let mut out = Vec::new();
        for w in words {
            assert_eq!(w.rank, rank, "rank mismatch in word product");
            for &g in &w.letters {
                push_reduced(&mut out, g);
            }
        }
        Word { letters: out, rank }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|g| g.inverse()).collect(),
            rank: self.rank,
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `self * w * self^{-1}`.
    pub fn conjugate(&self, w: &Word) -> Word {
        Word::product(self.rank, [self, w, &self.inverse()])
    }

    pub fn append_gen(&self, g: Gen) -> Word {
        let mut out = self.letters.clone();
        push_reduced(&mut out, g);
        Word { letters: out, rank: self.rank }
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word { letters: self.letters[..n].to_vec(), rank: self.rank }
    }

    pub fn suffix_from(&self, n: usize) -> Word {
        Word { letters: self.letters[n..].to_vec(), rank: self.rank }
    }

    /// Same letters viewed over a larger alphabet.
    pub fn widen(&self, rank: u32) -> Word {
        assert!(rank >= self.rank);
        Word { letters: self.letters.clone(), rank }
    }

    pub fn exponent_sums(&self) -> AbelianImage {
        let mut v = alloc::vec![0i64; self.rank as usize];
        for g in &self.letters {
            v[(g.index() - 1) as usize] += i64::from(g.sign());
        }
        AbelianImage(v)
    }

    /// Signed exponent sum of one generator.
    pub fn exponent_sum(&self, index: u32) -> i64 {
        self.letters
            .iter()
            .filter(|g| g.index() == index)
            .map(|g| i64::from(g.sign()))
            .sum()
    }

    /// Returns `(c, core)` with `self = c * core * c^{-1}` and `core` cyclically reduced.
    pub fn cyclic_reduction(&self) -> (Word, CyclicWord) {
        let n = self.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == self.letters[n - 1 - k].inverse() {
            k += 1;
        }
        let conj = Word { letters: self.letters[..k].to_vec(), rank: self.rank };
        let core = Word { letters: self.letters[k..n - k].to_vec(), rank: self.rank };
        (conj, CyclicWord(core))
    }

    /// Some `c` with `c * other * c^{-1} = self`, if the two words are conjugate.
    pub fn is_conjugate(&self, other: &Word) -> Result<Option<Word>, Error> {
        self.check_rank(other)?;
        let (cu, ku) = self.cyclic_reduction();
        let (cv, kv) = other.cyclic_reduction();
        // self = cu ku cu^-1, other = cv kv cv^-1; ku = r kv r^-1 for a rotation r.
        Ok(ku.rotation_to(&kv).map(|r| Word::product(self.rank, [&cu, &r, &cv.inverse()])))
    }

    /// Applies the homomorphism sending generator `i` to `images[i-1]`.
    pub fn substitute(&self, images: &[Word], target_rank: u32) -> Word {
        let mut out = Vec::new();
        for g in &self.letters {
            let img = &images[(g.index() - 1) as usize];
            assert_eq!(img.rank, target_rank, "image rank mismatch");
            if g.is_positive() {
                for &h in &img.letters {
                    push_reduced(&mut out, h);
                }
            } else {
                for &h in img.letters.iter().rev() {
                    push_reduced(&mut out, h.inverse());
                }
            }
        }
        Word { letters: out, rank: target_rank }
    }

    /// Shortlex order: shorter first, then letterwise x1 < X1 < x2 < X2 < ...
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.letters.cmp(&other.letters))
    }

    /// Text form with an explicit symbol, `1` for the identity.
    pub fn to_text_with(&self, symbol: char) -> String {
        if self.letters.is_empty() {
            return String::from("1");
        }
        let upper = symbol.to_ascii_uppercase();
        let mut s = String::new();
        for (k, g) in self.letters.iter().enumerate() {
            if k > 0 {
                s.push(' ');
            }
            s.push(if g.is_positive() { symbol } else { upper });
            s.push_str(&alloc::format!("{}", g.index()));
        }
        s
    }

    /// Parses the word grammar: tokens `x<digits>`/`X<digits>` or single letters
    /// `a..z`/`A..Z` (for rank at most 26), separated by optional whitespace.
    /// The token `1` denotes the identity.
    pub fn parse(text: &str, rank: u32) -> Result<Word, Error> {
        Word::parse_with(text, rank, 'x')
    }

    /// Parses words whose indexed symbol is `symbol` (e.g. `y1 Y2`).
    pub fn parse_with(text: &str, rank: u32, symbol: char) -> Result<Word, Error> {
        let lower = symbol.to_ascii_lowercase();
        let chars: Vec<char> = text.chars().collect();
        let mut gens = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || c == '*' || c == '.' {
                i += 1;
                continue;
            }
            if c == '1' && (i + 1 == chars.len() || !chars[i + 1].is_ascii_digit()) {
                i += 1;
                continue;
            }
            if c.to_ascii_lowercase() == lower
                && i + 1 < chars.len()
                && chars[i + 1].is_ascii_digit()
            {
                let start = i;
                i += 1;
                let mut idx: u32 = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    idx = idx
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(chars[i].to_digit(10).unwrap()))
                        .ok_or_else(|| Error::Parse {
                            position: start,
                            token: chars[start..i].iter().collect(),
                            reason: "index overflow",
                        })?;
                    i += 1;
                }
                if idx == 0 || idx > rank {
                    return Err(Error::Parse {
                        position: start,
                        token: chars[start..i].iter().collect(),
                        reason: "generator index out of range",
                    });
                }
                gens.push(Gen::new(idx, c.is_ascii_lowercase()));
                continue;
            }
            if c.is_ascii_alphabetic() && rank <= 26 {
                let idx = (c.to_ascii_lowercase() as u32) - ('a' as u32) + 1;
                if idx > rank {
                    return Err(Error::Parse {
                        position: i,
                        token: c.into(),
                        reason: "generator letter out of range",
                    });
                }
                gens.push(Gen::new(idx, c.is_ascii_lowercase()));
                i += 1;
                continue;
            }
            return Err(Error::Parse { position: i, token: c.into(), reason: "unexpected character" });
        }
        Word::reduce(gens, rank)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_with('x'))
    }
}

/// A cyclically reduced word, considered up to rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicWord(Word);

impl CyclicWord {
    pub fn word(&self) -> &Word {
        &self.0
    }

    /// Some `r` with `r * other * r^{-1} = self` (as words), if `self` is a rotation of `other`.
    pub fn rotation_to(&self, other: &CyclicWord) -> Option<Word> {
        let a = &self.0.letters;
        let b = &other.0.letters;
        if a.len() != b.len() {
            return None;
        }
        if a.is_empty() {
            return Some(Word::identity(self.0.rank));
        }
        let n = a.len();
        // other = b, self = b[k..] b[..k] = (b[..k])^{-1} b (b[..k]).
        (0..n)
            .find(|&k| (0..n).all(|j| a[j] == b[(j + k) % n]))
            .map(|k| Word { letters: b[..k].to_vec(), rank: self.0.rank }.inverse())
    }

    /// Lexicographically least rotation; equal for conjugate words.
    pub fn canonical(&self) -> Word {
        let n = self.0.len();
        (0..n)
            .map(|k| {
                let mut l = self.0.letters[k..].to_vec();
                l.extend_from_slice(&self.0.letters[..k]);
                Word { letters: l, rank: self.0.rank }
            })
            .min_by(|a, b| a.letters.cmp(&b.letters))
            .unwrap_or_else(|| self.0.clone())
    }
}

/// All freely reduced words of length exactly `len` over `rank` generators, in shortlex order.
pub fn reduced_words_of_length(rank: u32, len: usize) -> Vec<Word> {
    let alphabet: Vec<Gen> = (0..2 * rank).map(Gen::from_order_key).collect();
    let mut layer = alloc::vec![Word::identity(rank)];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for &g in &alphabet {
                if w.last() != Some(g.inverse()) {
                    let mut l = w.letters.clone();
                    l.push(g);
                    next.push(Word { letters: l, rank });
                }
            }
        }
        layer = next;
    }
    layer
}

/// All freely reduced words of length at most `max_len`.
pub fn reduced_words_up_to(rank: u32, max_len: usize) -> Vec<Word> {
    (0..=max_len).flat_map(|l| reduced_words_of_length(rank, l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn cancellation_and_identity() {
        assert!(w("x1 X1").is_identity());
        assert!(w("").is_identity());
        assert!(w("1").is_identity());
        let omega_y1 = w("x2 X1 X2 x1 X2");
        assert_eq!(omega_y1.len(), 5);
        assert_eq!(omega_y1.to_string(), "x2 X1 X2 x1 X2");
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert!(matches!(Word::parse("x3", 2), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(
            Word::reduce([Gen::pos(4)], 3),
            Err(Error::IndexOutOfRange { index: 4, rank: 3 })
        ));
        assert!(matches!(Word::parse("x1 ?", 2), Err(Error::Parse { position: 3, .. })));
    }

    #[test]
    fn letter_tokens() {
        assert_eq!(Word::parse("abA", 2).unwrap(), w("x1 x2 X1"));
        assert_eq!(Word::parse("x1X2x1", 2).unwrap(), w("x1 X2 x1"));
    }

    #[test]
    fn conjugacy_examples() {
        let c = w("x1").is_conjugate(&w("x2 x1 X2")).unwrap().unwrap();
        assert_eq!(c.conjugate(&w("x2 x1 X2")), w("x1"));
        assert_eq!(c, w("X2"));
        assert_eq!(w("x1").is_conjugate(&w("x2")).unwrap(), None);
        assert_eq!(w("x1").is_conjugate(&w("X1")).unwrap(), None);
        assert!(matches!(
            w("x1").is_conjugate(&Word::parse("x1", 3).unwrap()),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(w("x2 X1 X2 x1").exponent_sums().0, [0, 0]);
        assert_eq!(w("x2 X1 X2 x1 X2").exponent_sums().0, [0, -1]);
        assert_eq!(w("").exponent_sums().0, [0, 0]);
    }

    #[test]
    fn word_counts() {
        // 1 + 4 + 12 + 36 + 108 + 324 + 972 = 1457 for length <= 6 over rank 2
        assert_eq!(reduced_words_up_to(2, 6).len(), 1457);
        assert_eq!(reduced_words_of_length(2, 3).len(), 36);
    }
}
