//! Structure constants of the KL basis of `H_q`.

use super::{HeckeElt, HeckeParam, KlTable, KlVector};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::lincomb::LinComb;
use crate::word::{CoxeterSpec, Word};

/// Dyer's correction term `c(w, j)`, with `j` 1-indexed into the reduced word.
pub fn c_of(w: &Word, j: i64) -> KlVector {
    let mut out = KlVector::zero();
    let mut cur = w.letters().to_vec();
    let mut j = j;
    // Each step of the recursion adds c_{w'} and continues with (w', j-1).
    loop {
        let n = cur.len() as i64;
        if !(2 <= j && j < n) {
            break;
        }
        let ju = j as usize;
        if cur[ju - 2] != cur[ju] {
            break;
        }
        cur.drain(ju - 1..=ju);
        let next = Word::from_reduced(cur.clone()).expect("deleting s_j s_{j+1} keeps it reduced");
        out.add_term(next, &LaurentPoly::one())
            .expect("small multiplicities");
        j -= 1;
    }
    out
}

/// `c_x c_y` in the KL basis, by the closed product formula.
pub fn kl_product(x: &Word, y: &Word) -> KlVector {
    let n = x.len() as i64;
    match (x.last(), y.first()) {
        (Some(s), Some(t)) if s == t => {
            let xsy = x.right_mul(s).mul(y);
            let mut v = c_of(&xsy, n);
            v.add_term(xsy, &LaurentPoly::one())
                .expect("small multiplicities");
            v.scale(&LaurentPoly::v_plus_v_inv())
                .expect("small multiplicities")
        }
        _ => {
            let xy = x.mul(y);
            let mut v = c_of(&xy, n);
            v = v
                .checked_add(&c_of(&xy, n + 1))
                .expect("small multiplicities");
            v.add_term(xy, &LaurentPoly::one())
                .expect("small multiplicities");
            v
        }
    }
}

/// Rewrites a standard-basis element of `H_q` in the KL basis by top-down
/// elimination.
pub fn to_kl_basis(table: &mut KlTable, h: &HeckeElt) -> Result<KlVector> {
    let param = h.param();
    let e = param.exponent();
    let mut rest = h.terms().clone();
    let mut out = KlVector::zero();
    while let Some(z) = top_index(&rest) {
        let coeff = rest.get(&z);
        // The t_z coefficient of c_z is v^{-e l(z)}.
        let f = coeff.shift(e * z.len() as i32);
        let cz = table.kl_basis_element(&z, param)?;
        rest.add_scaled(cz.terms(), &f.checked_neg()?)?;
        if rest.get(&z) != LaurentPoly::zero() {
            return Err(Error::Internal(format!("elimination at {z} did not clear")));
        }
        out.add_term(z, &f)?;
    }
    Ok(out)
}

/// The longest index, lex-first among ties.
pub(crate) fn top_index<K: crate::lincomb::BasisIndex>(v: &LinComb<K>) -> Option<K> {
    let (k, _) = v.display_terms().into_iter().next()?;
    Some(k.clone())
}

impl KlTable {
    /// `c_x c_y` computed in the standard basis and re-expanded.
    pub fn kl_product_direct(&mut self, x: &Word, y: &Word) -> Result<KlVector> {
        let cx = self.kl_basis_element(x, HeckeParam::Q)?;
        let cy = self.kl_basis_element(y, HeckeParam::Q)?;
        to_kl_basis(self, &cx.mul(&cy)?)
    }
}

/// All `h~_{x,y;z}`: the expansion of `c_x c_y c_{x†}`.
pub fn h_tilde(spec: &CoxeterSpec, x: &Word, y: &Word) -> Result<KlVector> {
    if !spec.is_twisted_involution(y) {
        return Err(Error::Domain(format!("{y} is not a twisted involution")));
    }
    let xd = spec.dagger(x);
    let mut out = KlVector::zero();
    for (z, f) in kl_product(x, y).iter() {
        out.add_scaled(&kl_product(z, &xd), f)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse_unchecked(s).unwrap()
    }

    #[test]
    fn c_of_examples() {
        assert!(c_of(&w("ab"), 1).is_zero());
        assert_eq!(c_of(&w("aba"), 2), KlVector::basis(w("a")));
        let v = c_of(&w("ababa"), 3);
        assert_eq!(v.to_text(), "aba\t1\na\t1\n");
        assert!(c_of(&w("abc"), 2).is_zero());
        assert!(c_of(&w("aba"), -4).is_zero());
        assert!(c_of(&w("aba"), 3).is_zero());
    }

    #[test]
    fn product_examples() {
        assert_eq!(kl_product(&w("a"), &w("b")), KlVector::basis(w("ab")));
        let vv = LaurentPoly::v_plus_v_inv();
        assert_eq!(
            kl_product(&w("a"), &w("ab")),
            KlVector::term(w("ab"), vv.clone())
        );
        assert_eq!(kl_product(&w("a"), &w("a")), KlVector::term(w("a"), vv));
        assert_eq!(kl_product(&w("e"), &w("cab")), KlVector::basis(w("cab")));
    }

    #[test]
    fn product_matches_direct() {
        let spec = CoxeterSpec::untwisted(3).unwrap();
        let mut t = KlTable::new();
        let words = spec.enumerate_words(3, 1000).unwrap();
        for x in &words {
            for y in &words {
                assert_eq!(
                    kl_product(x, y),
                    t.kl_product_direct(x, y).unwrap(),
                    "{x} {y}"
                );
            }
        }
    }

    #[test]
    fn h_tilde_examples() {
        let spec = CoxeterSpec::untwisted(3).unwrap();
        let e = Word::identity();
        assert_eq!(
            h_tilde(&spec, &e, &w("aba")).unwrap(),
            KlVector::basis(w("aba"))
        );
        assert_eq!(
            h_tilde(&spec, &w("a"), &e).unwrap(),
            KlVector::term(w("a"), LaurentPoly::v_plus_v_inv())
        );
        assert!(matches!(
            h_tilde(&spec, &w("a"), &w("ab")),
            Err(Error::Domain(_))
        ));
    }
}
