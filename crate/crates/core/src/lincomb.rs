//! Finite linear combinations of basis elements with Laurent coefficients.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::laurent::LaurentPoly;
use crate::word::{TwistedInvolution, Word};

/// A basis index with an underlying word.
pub trait BasisIndex: Ord + Clone + fmt::Display {
    fn word(&self) -> &Word;
}

impl BasisIndex for Word {
    fn word(&self) -> &Word {
        self
    }
}

impl BasisIndex for TwistedInvolution {
    fn word(&self) -> &Word {
        TwistedInvolution::word(self)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, LaurentPoly>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: BasisIndex> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, LaurentPoly::one())
    }

    pub fn term(k: K, p: LaurentPoly) -> Self {
        let mut out = Self::zero();
        if !p.is_zero() {
            out.terms.insert(k, p);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, k: &K) -> LaurentPoly {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    /// Iterates in canonical `(length, lex)` order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl DoubleEndedIterator<Item = &K> {
        self.terms.keys()
    }

    /// Terms in output order: length descending, then lex ascending.
    pub fn display_terms(&self) -> Vec<(&K, &LaurentPoly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| (Reverse(a.0.word().len()), a.0).cmp(&(Reverse(b.0.word().len()), b.0)));
        v
    }

    pub fn add_term(&mut self, k: K, p: &LaurentPoly) -> Result<()> {
        if p.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&k) {
            Some(c) => {
                let s = c.checked_add(p)?;
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(k, p.clone());
            }
        }
        Ok(())
    }

    /// `self += f * other`.
    pub fn add_scaled(&mut self, other: &Self, f: &LaurentPoly) -> Result<()> {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), &c.checked_mul(f)?)?;
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &LaurentPoly::one())?;
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &LaurentPoly::constant(-1))?;
        Ok(out)
    }

    pub fn scale(&self, f: &LaurentPoly) -> Result<Self> {
        let mut out = Self::zero();
        out.add_scaled(self, f)?;
        Ok(out)
    }

    /// Applies `f` to every coefficient and `g` to every index.
    pub fn map<K2: BasisIndex>(
        &self,
        mut g: impl FnMut(&K) -> K2,
        mut f: impl FnMut(&LaurentPoly) -> LaurentPoly,
    ) -> Result<LinComb<K2>> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(g(k), &f(c))?;
        }
        Ok(out)
    }

    pub fn remove(&mut self, k: &K) -> Option<LaurentPoly> {
        self.terms.remove(k)
    }

    /// The largest index in canonical order.
    pub fn top(&self) -> Option<(&K, &LaurentPoly)> {
        self.terms.iter().next_back()
    }

    /// One `index TAB poly` line per term.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, c) in self.display_terms() {
            s.push_str(&format!("{k}\t{c}\n"));
        }
        s
    }

    pub fn to_json(&self, basis: &str) -> serde_json::Value {
        #[derive(Serialize)]
        struct Out<'a> {
            basis: &'a str,
            terms: Vec<(String, String)>,
        }
        let terms = self
            .display_terms()
            .into_iter()
            .map(|(k, c)| (k.to_string(), c.to_string()))
            .collect();
        serde_json::to_value(Out { basis, terms }).expect("plain data serializes")
    }
}

impl<K: BasisIndex> FromIterator<(K, LaurentPoly)> for LinComb<K> {
    /// Panics on coefficient overflow, like the arithmetic operators.
    fn from_iter<I: IntoIterator<Item = (K, LaurentPoly)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, &c).expect("coefficient overflow");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse_unchecked(s).unwrap()
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut x = LinComb::basis(w("ab"));
        x.add_term(w("ab"), &LaurentPoly::constant(-1)).unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn display_order() {
        let x: LinComb<Word> = [
            (w("a"), LaurentPoly::one()),
            (w("aba"), LaurentPoly::one()),
            (w("e"), LaurentPoly::v_pow(1)),
            (w("b"), LaurentPoly::one()),
        ]
        .into_iter()
        .collect();
        assert_eq!(x.to_text(), "aba\t1\na\t1\nb\t1\ne\tv\n");
        let j = x.to_json("c");
        assert_eq!(j["basis"], "c");
        assert_eq!(j["terms"][0][0], "aba");
        assert_eq!(j["terms"][3][1], "v");
        assert_eq!(x.top().unwrap().0, &w("aba"));
    }
}
