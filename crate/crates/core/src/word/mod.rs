//! Words in a universal Coxeter group.
//!
//! In a universal Coxeter system every product `st` with `s != t` has infinite
//! order, so the only relations are `s^2 = 1`. Each element then has exactly
//! one reduced word, namely the one with no two equal adjacent letters, and a
//! [`Word`] always stores that form.

mod spec;
mod twisted;

use std::cmp::Ordering;
use std::fmt;

pub use spec::CoxeterSpec;
pub use twisted::{TwistKind, TwistedInvolution};

use crate::error::{Error, Result};

/// Generator index. Rendered as the letters `a`..`z`.
pub type Gen = u8;

/// Largest supported number of generators.
pub const MAX_GENS: usize = 26;

/// Default element cap for enumerations.
pub const DEFAULT_CAP: usize = 1_000_000;

pub fn gen_letter(g: Gen) -> char {
    (b'a' + g) as char
}

pub fn letter_gen(c: char) -> Option<Gen> {
    if c.is_ascii_lowercase() {
        Some(c as u8 - b'a')
    } else {
        None
    }
}

/// A reduced word, which doubles as the group element it represents.
///
/// Ordering is by length first and lexicographic within a length; this is the
/// canonical order used by every table and report.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Gen>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(s: Gen) -> Self {
        Word(vec![s])
    }

    /// Cancels equal adjacent pairs until none remain.
    pub fn reduce<I: IntoIterator<Item = Gen>>(letters: I) -> Self {
        let mut out: Vec<Gen> = Vec::new();
        for g in letters {
            if out.last() == Some(&g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        Word(out)
    }

    /// Wraps letters that are already reduced. Returns `None` otherwise.
    pub fn from_reduced(letters: Vec<Gen>) -> Option<Self> {
        if letters.windows(2).any(|p| p[0] == p[1]) {
            None
        } else {
            Some(Word(letters))
        }
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Same as [`Word::is_identity`].
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Gen> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Gen> {
        self.0.last().copied()
    }

    /// The unique left descent, if any.
    pub fn left_descent(&self) -> Option<Gen> {
        self.first()
    }

    /// The unique right descent, if any.
    pub fn right_descent(&self) -> Option<Gen> {
        self.last()
    }

    /// Left and right descent sets; each has at most one element.
    pub fn descents(&self) -> (Option<Gen>, Option<Gen>) {
        (self.first(), self.last())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        let mut rest = other.0.iter().copied().peekable();
        while let (Some(&a), Some(&b)) = (out.last(), rest.peek()) {
            if a != b {
                break;
            }
            out.pop();
            rest.next();
        }
        out.extend(rest);
        Word(out)
    }

    /// `s * self`.
    pub fn left_mul(&self, s: Gen) -> Word {
        if self.first() == Some(s) {
            Word(self.0[1..].to_vec())
        } else {
            let mut v = Vec::with_capacity(self.len() + 1);
            v.push(s);
            v.extend_from_slice(&self.0);
            Word(v)
        }
    }

    /// `self * s`.
    pub fn right_mul(&self, s: Gen) -> Word {
        if self.last() == Some(s) {
            Word(self.0[..self.len() - 1].to_vec())
        } else {
            let mut v = self.0.clone();
            v.push(s);
            Word(v)
        }
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Bruhat order: `self <= w` iff the reduced word of `self` is a
    /// subsequence of the reduced word of `w`.
    pub fn bruhat_leq(&self, w: &Word) -> bool {
        is_subsequence(&self.0, &w.0)
    }

    /// All `y <= self`, in canonical order.
    pub fn lower_interval(&self) -> Vec<Word> {
        let mut found = std::collections::BTreeSet::new();
        let mut cur = Vec::new();
        reduced_subsequences(&self.0, 0, &mut cur, &mut found);
        found.into_iter().collect()
    }

    /// Whether all letters come from at most two generators.
    pub fn is_dihedral(&self) -> bool {
        let mut seen: Vec<Gen> = Vec::new();
        for &g in &self.0 {
            if !seen.contains(&g) {
                seen.push(g);
                if seen.len() > 2 {
                    return false;
                }
            }
        }
        true
    }

    /// Parses a literal such as `"e"` or `"abacb"` without checking the
    /// generator bound. Non-reduced input is reduced.
    pub fn parse_unchecked(s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(Word::identity());
        }
        let letters = s
            .chars()
            .map(|c| letter_gen(c).ok_or_else(|| Error::InvalidGenerator(c.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word::reduce(letters))
    }
}

pub(crate) fn is_subsequence<T: PartialEq>(needle: &[T], hay: &[T]) -> bool {
    let mut it = hay.iter();
    needle.iter().all(|x| it.any(|h| h == x))
}

fn reduced_subsequences(
    w: &[Gen],
    from: usize,
    cur: &mut Vec<Gen>,
    out: &mut std::collections::BTreeSet<Word>,
) {
    out.insert(Word(cur.clone()));
    for i in from..w.len() {
        if cur.last() == Some(&w[i]) {
            continue;
        }
        cur.push(w[i]);
        reduced_subsequences(w, i + 1, cur, out);
        cur.pop();
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for &g in &self.0 {
            write!(f, "{}", gen_letter(g))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse_unchecked(s).unwrap()
    }

    #[test]
    fn reduce_cancels_pairs() {
        assert_eq!(w("abba"), Word::identity());
        assert_eq!(w("aba").to_string(), "aba");
        assert_eq!(w("abbac").to_string(), "c");
    }

    #[test]
    fn multiply() {
        assert_eq!(w("ab").mul(&w("ba")), Word::identity());
        assert_eq!(w("ab").mul(&w("ab")).to_string(), "abab");
        assert_eq!(w("aba").mul(&w("ac")).to_string(), "abc");
        assert_eq!(w("a").left_mul(0), Word::identity());
        assert_eq!(w("b").right_mul(0).to_string(), "ba");
    }

    #[test]
    fn inverse_and_descents() {
        assert_eq!(w("abc").inverse().to_string(), "cba");
        assert_eq!(w("aba").descents(), (Some(0), Some(0)));
        assert_eq!(w("e").descents(), (None, None));
        assert_eq!(w("abc").descents(), (Some(0), Some(2)));
    }

    #[test]
    fn bruhat() {
        assert!(w("ba").bruhat_leq(&w("aba")));
        assert!(!w("bab").bruhat_leq(&w("aba")));
        assert!(w("abc").bruhat_leq(&w("abc")));
        let iv: Vec<String> = w("aba")
            .lower_interval()
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(iv, ["e", "a", "b", "ab", "ba", "aba"]);
    }

    #[test]
    fn canonical_order() {
        let mut v = [w("b"), w("ab"), w("e"), w("a"), w("ba")];
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["e", "a", "b", "ab", "ba"]);
    }

    #[test]
    fn dihedral() {
        assert!(w("ababab").is_dihedral());
        assert!(!w("abc").is_dihedral());
    }
}
