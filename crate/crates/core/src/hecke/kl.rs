use std::collections::{BTreeMap, HashMap};

use super::{HeckeElt, HeckeParam};
use crate::error::{Error, Result};
use crate::laurent::{Coeff, LaurentPoly, QPoly};
use crate::lincomb::LinComb;
use crate::word::Word;

/// Memo of KL polynomials `P_{y,w}` and the data needed to compute them.
///
/// A table is a single-writer cache. Parallel sweeps give each worker its
/// own table.
#[derive(Default, Debug, Clone)]
pub struct KlTable {
    memo: HashMap<(Word, Word), QPoly>,
    diff_memo: HashMap<(Word, Word, Word), QPoly>,
    bar_t: HashMap<Word, LinComb<Word>>,
}

/// Splits `w = (s r s r …)(k+1 letters) · u` with `k >= 1`.
/// Returns `(k, a, a·w)` where `a` is the first `k` letters reversed.
pub(crate) fn alternating_split(w: &Word) -> (usize, Word, Word) {
    let l = w.letters();
    debug_assert!(l.len() >= 2);
    let (s, r) = (l[0], l[1]);
    let mut m = 2;
    while m < l.len() && l[m] == if m % 2 == 0 { s } else { r } {
        m += 1;
    }
    let k = m - 1;
    let a = Word::from_reduced(l[..k].iter().rev().copied().collect()).expect("reduced");
    let aw = Word::from_reduced(l[k..].to_vec()).expect("reduced");
    (k, a, aw)
}

fn indicator(b: bool) -> QPoly {
    if b {
        QPoly::one()
    } else {
        QPoly::zero()
    }
}

impl KlTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// Memoized entries in canonical `(w, y)` order.
    pub fn entries(&self) -> Vec<(&Word, &Word, &QPoly)> {
        let mut v: Vec<_> = self.memo.iter().map(|((y, w), p)| (y, w, p)).collect();
        v.sort_by(|a, b| (a.1, a.0).cmp(&(b.1, b.0)));
        v
    }

    /// Seeds the memo, e.g. from a cache file.
    pub fn insert(&mut self, y: Word, w: Word, p: QPoly) {
        self.memo.insert((y, w), p);
    }

    /// `P_{y,w}` via the universal recurrences.
    pub fn kl_fast(&mut self, y: &Word, w: &Word) -> Result<QPoly> {
        if y == w {
            return Ok(QPoly::one());
        }
        if !y.bruhat_leq(w) {
            return Ok(QPoly::zero());
        }
        let key = (y.clone(), w.clone());
        if let Some(p) = self.memo.get(&key) {
            return Ok(p.clone());
        }
        let s = w.first().expect("w > y >= e");
        let t = w.last().expect("w > y >= e");
        let val = if y.first() == Some(s) {
            self.kl_fast(&y.left_mul(s), w)?
        } else if y.last() == Some(t) {
            self.kl_fast(&y.right_mul(t), w)?
        } else if w.len() == 1 {
            QPoly::one()
        } else {
            let (k, a, aw) = alternating_split(w);
            let p1 = self.kl_fast(y, &w.left_mul(s))?;
            let p2 = self.kl_fast(&a.mul(y), &aw)?;
            p1.checked_add(&p2.checked_mul_monomial(1, k as u32)?)?
        };
        self.memo.insert(key, val.clone());
        Ok(val)
    }

    /// `P_{y,w} - P_{z,w}` for `y <= z`, by the difference recurrence alone.
    pub fn kl_diff(&mut self, y: &Word, z: &Word, w: &Word) -> Result<QPoly> {
        if !y.bruhat_leq(z) {
            return Err(Error::Order(format!("{y} is not below {z}")));
        }
        if y == z {
            return Ok(QPoly::zero());
        }
        if w.len() <= 1 {
            return indicator(y.bruhat_leq(w)).checked_sub(&indicator(z.bruhat_leq(w)));
        }
        let key = (y.clone(), z.clone(), w.clone());
        if let Some(p) = self.diff_memo.get(&key) {
            return Ok(p.clone());
        }
        let s = w.first().expect("nonempty");
        let strip = |x: &Word| {
            if x.first() == Some(s) {
                x.left_mul(s)
            } else {
                x.clone()
            }
        };
        let (y1, z1) = (strip(y), strip(z));
        if !y1.bruhat_leq(&z1) {
            return Err(Error::Internal(format!(
                "normalizing ({y},{z}) by {} broke the order",
                crate::word::gen_letter(s)
            )));
        }
        let (k, a, aw) = alternating_split(w);
        let d1 = self.kl_diff(&y1, &z1, &w.left_mul(s))?;
        let d2 = self.kl_diff(&a.mul(&y1), &a.mul(&z1), &aw)?;
        let val = d1.checked_add(&d2.checked_mul_monomial(1, k as u32)?)?;
        self.diff_memo.insert(key, val.clone());
        Ok(val)
    }

    /// `bar(t_w)` in `H_q`.
    pub fn bar_t(&mut self, w: &Word) -> Result<&LinComb<Word>> {
        if !self.bar_t.contains_key(w) {
            let val = match w.first() {
                None => LinComb::basis(Word::identity()),
                Some(s) => {
                    let rest = self.bar_t(&w.left_mul(s))?.clone();
                    HeckeElt::from_terms(HeckeParam::Q, rest)
                        .gen_inv_mul_left(s)?
                        .into_terms()
                }
            };
            self.bar_t.insert(w.clone(), val);
        }
        Ok(&self.bar_t[w])
    }

    /// The column `y -> P_{y,w}` by solving `bar(c_w) = c_w` top-down.
    ///
    /// Independent of [`KlTable::kl_fast`]; nothing here reads the memo.
    pub fn kl_oracle(&mut self, w: &Word) -> Result<BTreeMap<Word, QPoly>> {
        let interval = w.lower_interval();
        let lw = w.len() as i32;
        // acc = sum of bar(p_x) bar(t_x) over the x solved so far.
        let mut acc: LinComb<Word> = LinComb::zero();
        let mut coeffs: LinComb<Word> = LinComb::zero();
        let mut out = BTreeMap::new();
        for y in interval.iter().rev() {
            let ly = y.len() as i32;
            let py = if y == w {
                LaurentPoly::v_pow(-lw)
            } else {
                let rhs = acc.get(y).shift(ly);
                if rhs.coeff(0) != 0 {
                    return Err(Error::Internal(format!(
                        "oracle for {w}: nonzero constant term at {y}"
                    )));
                }
                rhs.negative_part().shift(-ly)
            };
            let big_p = py.shift(lw);
            let big_p: QPoly = big_p
                .try_into()
                .map_err(|e: Error| Error::Internal(format!("oracle for {w}: P at {y} is {e}")))?;
            if y != w {
                let bound = (lw - ly - 1) / 2;
                if big_p.degree().is_none_or(|d| d > bound) {
                    return Err(Error::Internal(format!(
                        "oracle for {w}: P at {y} = {big_p} breaks the degree bound"
                    )));
                }
            }
            if big_p.coeff_q(0) != 1 {
                return Err(Error::Internal(format!(
                    "oracle for {w}: P at {y} = {big_p} has constant term != 1"
                )));
            }
            let bt = self.bar_t(y)?.clone();
            acc.add_scaled(&bt, &py.bar())?;
            coeffs.add_term(y.clone(), &py)?;
            out.insert(y.clone(), big_p);
        }
        if acc != coeffs {
            return Err(Error::Internal(format!(
                "oracle for {w}: c_w is not bar-invariant"
            )));
        }
        Ok(out)
    }

    /// Coefficient of `q^{(l(w)-l(y)-1)/2}` in `P_{y,w}`, or 0 for even gaps.
    pub fn mu(&mut self, y: &Word, w: &Word) -> Result<Coeff> {
        let (ly, lw) = (y.len() as i32, w.len() as i32);
        let gap = lw - ly;
        if gap < 1 || gap % 2 == 0 {
            return Ok(0);
        }
        Ok(self.kl_fast(y, w)?.coeff_q((gap - 1) / 2))
    }

    /// `c_w` (for `Q`) or `C_w` (for `Q2`) in the standard basis.
    pub fn kl_basis_element(&mut self, w: &Word, param: HeckeParam) -> Result<HeckeElt> {
        let e = param.exponent();
        let shift = -e * w.len() as i32;
        let mut terms = LinComb::zero();
        for y in w.lower_interval() {
            let p = self.kl_fast(&y, w)?;
            let p = match param {
                HeckeParam::Q => p,
                HeckeParam::Q2 => p.substitute_q_squared(),
            };
            terms.add_term(y, &p.as_laurent().shift(shift))?;
        }
        Ok(HeckeElt::from_terms(param, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::CoxeterSpec;

    fn w(s: &str) -> Word {
        Word::parse_unchecked(s).unwrap()
    }

    #[test]
    fn split() {
        let (k, a, aw) = alternating_split(&w("abac"));
        assert_eq!(
            (k, a.to_string(), aw.to_string()),
            (2, "ba".into(), "ac".into())
        );
        let (k, a, aw) = alternating_split(&w("ab"));
        assert_eq!(
            (k, a.to_string(), aw.to_string()),
            (1, "a".into(), "b".into())
        );
        let (k, a, aw) = alternating_split(&w("abca"));
        assert_eq!(
            (k, a.to_string(), aw.to_string()),
            (1, "a".into(), "bca".into())
        );
    }

    #[test]
    fn small_values() {
        let mut t = KlTable::new();
        assert!(t.kl_fast(&w("aba"), &w("aba")).unwrap() == QPoly::one());
        assert!(t.kl_fast(&w("b"), &w("aba")).unwrap() == QPoly::one());
        assert!(t.kl_fast(&w("c"), &w("aba")).unwrap().is_zero());
        let col = t.kl_oracle(&w("aba")).unwrap();
        assert_eq!(col.len(), 6);
        assert!(col.values().all(|p| *p == QPoly::one()));
        assert_eq!(t.kl_oracle(&w("e")).unwrap().len(), 1);
    }

    #[test]
    fn abcba_column() {
        let mut t = KlTable::new();
        let top = w("abcba");
        let col = t.kl_oracle(&top).unwrap();
        for (y, p) in &col {
            assert_eq!(*p, t.kl_fast(y, &top).unwrap(), "{y}");
        }
        assert_eq!(col[&w("e")].to_string(), "1+q");
        assert_eq!(col[&w("a")].to_string(), "1+q");
        assert_eq!(col[&w("aba")].to_string(), "1");
    }

    #[test]
    fn diff_examples() {
        let mut t = KlTable::new();
        assert!(t.kl_diff(&w("ab"), &w("ab"), &w("abc")).unwrap().is_zero());
        assert!(t.kl_diff(&w("e"), &w("b"), &w("aba")).unwrap().is_zero());
        assert!(matches!(
            t.kl_diff(&w("b"), &w("a"), &w("aba")),
            Err(Error::Order(_))
        ));
        let top = w("abcba");
        let d = t.kl_diff(&w("e"), &w("aba"), &top).unwrap();
        assert_eq!(d.to_string(), "q");
    }

    #[test]
    fn mu_examples() {
        let mut t = KlTable::new();
        assert_eq!(t.mu(&w("e"), &w("a")).unwrap(), 1);
        assert_eq!(t.mu(&w("a"), &w("aba")).unwrap(), 0);
        assert_eq!(t.mu(&w("ba"), &w("aba")).unwrap(), 1);
    }

    #[test]
    fn basis_elements() {
        let mut t = KlTable::new();
        let ce = t.kl_basis_element(&w("e"), HeckeParam::Q).unwrap();
        assert_eq!(ce, HeckeElt::one(HeckeParam::Q));
        let ca = t.kl_basis_element(&w("a"), HeckeParam::Q).unwrap();
        assert_eq!(ca.to_string(), "a\tv^-1\ne\tv^-1\n");
        let big = t.kl_basis_element(&w("a"), HeckeParam::Q2).unwrap();
        assert_eq!(
            big.to_string(),
            "a\tq^-1\ne\tq^-1\n".replace("q^-1", "v^-2")
        );
        let spec = CoxeterSpec::untwisted(3).unwrap();
        for x in spec.enumerate_words(4, 1000).unwrap() {
            for param in [HeckeParam::Q, HeckeParam::Q2] {
                let c = t.kl_basis_element(&x, param).unwrap();
                assert_eq!(c.bar().unwrap(), c, "{x}");
            }
            let c = t.kl_basis_element(&x, HeckeParam::Q).unwrap();
            let cd = t.kl_basis_element(&spec.dagger(&x), HeckeParam::Q).unwrap();
            assert_eq!(c.dagger(&spec).unwrap(), cd);
        }
    }
}
