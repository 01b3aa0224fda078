use std::collections::{BTreeMap, HashMap};

use super::{bar_basis, ModuleElt};
use crate::error::{Error, Result};
use crate::hecke::KlTable;
use crate::laurent::{Coeff, LaurentPoly, QPoly};
use crate::word::{CoxeterSpec, Gen, TwistKind, TwistedInvolution};

type Ti = TwistedInvolution;

/// Memo of twisted KL polynomials `P^σ_{y,w}` for one [`CoxeterSpec`].
///
/// Carries its own untwisted [`KlTable`] for the checks that compare the
/// two families. Single-writer, like `KlTable`.
#[derive(Debug, Clone)]
pub struct TklTable {
    spec: CoxeterSpec,
    memo: HashMap<(Ti, Ti), QPoly>,
    pub(super) diff_memo: HashMap<(Ti, Ti, Ti), QPoly>,
    bar_a: HashMap<Ti, ModuleElt>,
    pub kl: KlTable,
}

impl TklTable {
    pub fn new(spec: CoxeterSpec) -> Self {
        TklTable {
            spec,
            memo: HashMap::new(),
            diff_memo: HashMap::new(),
            bar_a: HashMap::new(),
            kl: KlTable::new(),
        }
    }

    pub fn spec(&self) -> &CoxeterSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// Memoized entries in canonical `(w, y)` order.
    pub fn entries(&self) -> Vec<(&Ti, &Ti, &QPoly)> {
        let mut v: Vec<_> = self.memo.iter().map(|((y, w), p)| (y, w, p)).collect();
        v.sort_by(|a, b| (a.1, a.0).cmp(&(b.1, b.0)));
        v
    }

    pub fn insert(&mut self, y: Ti, w: Ti, p: QPoly) {
        self.memo.insert((y, w), p);
    }

    /// `bar(a_w)`, cached.
    pub fn bar_a(&mut self, w: &Ti) -> Result<&ModuleElt> {
        if !self.bar_a.contains_key(w) {
            let val = bar_basis(&self.spec, w)?;
            let lead = val.get(w);
            if lead != LaurentPoly::v_pow(-2 * w.len() as i32) {
                return Err(Error::Internal(format!(
                    "bar(a_{w}) has leading coefficient {lead}"
                )));
            }
            self.bar_a.insert(w.clone(), val);
        }
        Ok(&self.bar_a[w])
    }

    /// The bar operator on `M_{q^2}`.
    pub fn bar_module(&mut self, m: &ModuleElt) -> Result<ModuleElt> {
        let mut out = ModuleElt::zero();
        for (w, c) in m.iter() {
            let b = self.bar_a(w)?.clone();
            out.add_scaled(&b, &c.bar())?;
        }
        Ok(out)
    }

    /// The column `y -> P^σ_{y,w}` by solving `bar(A_w) = A_w` top-down.
    ///
    /// Independent of [`TklTable::tkl_fast`].
    pub fn tkl_oracle(&mut self, w: &Ti) -> Result<BTreeMap<Ti, QPoly>> {
        let interval = self.spec.twisted_lower_interval(w);
        let lw = w.len() as i32;
        let mut acc = ModuleElt::zero();
        let mut coeffs = ModuleElt::zero();
        let mut out = BTreeMap::new();
        for y in interval.iter().rev() {
            let ly = y.len() as i32;
            let py = if y == w {
                LaurentPoly::v_pow(-lw)
            } else {
                let rhs = acc.get(y).shift(ly);
                if rhs.coeff(0) != 0 {
                    return Err(Error::Internal(format!(
                        "twisted oracle for {w}: nonzero constant term at {y}"
                    )));
                }
                rhs.negative_part().shift(-ly)
            };
            let big_p: QPoly = py.shift(lw).try_into().map_err(|e: Error| {
                Error::Internal(format!("twisted oracle for {w}: P at {y} is {e}"))
            })?;
            if y != w {
                let bound = (lw - ly - 1).div_euclid(2);
                if big_p.degree().is_some_and(|d| d > bound) {
                    return Err(Error::Internal(format!(
                        "twisted oracle for {w}: P at {y} = {big_p} breaks the degree bound"
                    )));
                }
            }
            if big_p.coeff_q(0) != 1 {
                return Err(Error::Internal(format!(
                    "twisted oracle for {w}: P at {y} = {big_p} has constant term != 1"
                )));
            }
            let b = self.bar_a(y)?.clone();
            acc.add_scaled(&b, &py.bar())?;
            coeffs.add_term(y.clone(), &py)?;
            out.insert(y.clone(), big_p);
        }
        if acc != coeffs {
            return Err(Error::Internal(format!(
                "twisted oracle for {w}: A_w is not bar-invariant"
            )));
        }
        Ok(out)
    }

    /// `P^σ_{y,w}` via descent normalization and the universal recurrence.
    pub fn tkl_fast(&mut self, y: &Ti, w: &Ti) -> Result<QPoly> {
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
        let val = if y.first() == Some(s) {
            let sy = self.spec.twist(s, y);
            self.tkl_fast(&sy, w)?
        } else if self.spec.rho(w) <= 1 {
            QPoly::one()
        } else {
            self.universal_step(y, w, s)?
        };
        self.memo.insert(key, val.clone());
        Ok(val)
    }

    /// One step of the recurrence for `sy > y`, `rs⋉w < s⋉w < w`.
    fn universal_step(&mut self, y: &Ti, w: &Ti, s: Gen) -> Result<QPoly> {
        let spec = self.spec.clone();
        let w1 = spec.twist(s, w);
        let r = w1.first().expect("rho(w) >= 2");
        let w2 = spec.twist(r, &w1);
        let sy = spec.twist(s, y);
        let mut val = self.tkl_fast(y, &w1)?;
        val = val.checked_add(&self.tkl_fast(&sy, &w1)?.checked_mul_monomial(1, 2)?)?;
        if w2.first() == Some(s) {
            val = val.checked_sub(&self.tkl_fast(&sy, &w2)?.checked_mul_monomial(1, 2)?)?;
        }
        let delta2 = y.is_identity() && spec.is_star_fixed(s) && w.letters() != [s, r, s];
        if delta2 {
            let e = Ti::identity();
            let one_s = spec.twist(s, &e);
            let d = self
                .tkl_fast(&e, &w1)?
                .checked_sub(&self.tkl_fast(&one_s, &w1)?)?;
            val = val.checked_add(&d.checked_mul_monomial(1, 1)?)?;
        }
        Ok(val)
    }

    /// Coefficient of `v^{l(w)-l(y)-1}` in `P^σ_{y,w}`.
    pub fn mu_sigma(&mut self, y: &Ti, w: &Ti) -> Result<Coeff> {
        self.top_coeff(y, w, 1)
    }

    /// Coefficient of `v^{l(w)-l(y)-2}` in `P^σ_{y,w}`.
    pub fn nu_sigma(&mut self, y: &Ti, w: &Ti) -> Result<Coeff> {
        self.top_coeff(y, w, 2)
    }

    fn top_coeff(&mut self, y: &Ti, w: &Ti, drop: i32) -> Result<Coeff> {
        let e = w.len() as i32 - y.len() as i32 - drop;
        if e < 0 || e % 2 != 0 {
            return Ok(0);
        }
        Ok(self.tkl_fast(y, w)?.coeff_q(e / 2))
    }

    fn check_descent(&self, y: &Ti, w: &Ti, s: Gen) -> Result<()> {
        self.spec.check_gen(s)?;
        if y.first() == Some(s) && w.first() != Some(s) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{} must be a left descent of {y} and not of {w}",
                crate::word::gen_letter(s)
            )))
        }
    }

    /// `μ^σ(y,w;s)`, for `s ∈ Des_L(y) \ Des_L(w)`.
    pub fn mu_sigma_s(&mut self, y: &Ti, w: &Ti, s: Gen) -> Result<Coeff> {
        self.check_descent(y, w, s)?;
        let spec = self.spec.clone();
        let mut val = self.nu_sigma(y, w)?;
        if spec.twist_kind(s, y) == TwistKind::Mul {
            let sy = spec.twist(s, y);
            val = add(val, self.mu_sigma(&sy, w)?)?;
        }
        if spec.twist_kind(s, w) == TwistKind::Mul {
            let sw = spec.twist(s, w);
            val = sub(val, self.mu_sigma(y, &sw)?)?;
        }
        // Only y < x < w contribute.
        for x in spec.twisted_lower_interval(w) {
            if x.first() != Some(s) || x == *w || x == *y || !y.bruhat_leq(&x) {
                continue;
            }
            let m = self.mu_sigma(y, &x)?;
            if m != 0 {
                let prod = m
                    .checked_mul(self.mu_sigma(&x, w)?)
                    .ok_or(Error::Overflow)?;
                val = sub(val, prod)?;
            }
        }
        Ok(val)
    }

    /// `m^σ(y -s-> w)`.
    pub fn m_sigma(&mut self, y: &Ti, w: &Ti, s: Gen) -> Result<LaurentPoly> {
        self.check_descent(y, w, s)?;
        let gap = w.len() as i64 - y.len() as i64;
        if gap.rem_euclid(2) == 1 {
            Ok(LaurentPoly::v_plus_v_inv().checked_scale(self.mu_sigma(y, w)?)?)
        } else {
            Ok(LaurentPoly::constant(self.mu_sigma_s(y, w, s)?))
        }
    }

    /// `A_w` in the `a` basis.
    pub fn a_basis_element(&mut self, w: &Ti) -> Result<ModuleElt> {
        let shift = -(w.len() as i32);
        let mut out = ModuleElt::zero();
        for y in self.spec.twisted_lower_interval(w) {
            let p = self.tkl_fast(&y, w)?;
            out.add_term(y, &p.as_laurent().shift(shift))?;
        }
        Ok(out)
    }

    /// Rewrites an `a`-basis element in the `A` basis by top-down elimination.
    pub fn to_a_basis(&mut self, m: &ModuleElt) -> Result<ModuleElt> {
        let mut rest = m.clone();
        let mut out = ModuleElt::zero();
        while let Some(z) = crate::hecke::top_index(&rest) {
            let f = rest.get(&z).shift(z.len() as i32);
            let az = self.a_basis_element(&z)?;
            rest.add_scaled(&az, &f.checked_neg()?)?;
            if !rest.get(&z).is_zero() {
                return Err(Error::Internal(format!("elimination at {z} did not clear")));
            }
            out.add_term(z, &f)?;
        }
        Ok(out)
    }
}

fn add(a: Coeff, b: Coeff) -> Result<Coeff> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn sub(a: Coeff, b: Coeff) -> Result<Coeff> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id3() -> CoxeterSpec {
        CoxeterSpec::untwisted(3).unwrap()
    }

    #[test]
    fn small_columns() {
        let spec = id3();
        let mut t = TklTable::new(spec.clone());
        let e = Ti::identity();
        let col = t.tkl_oracle(&e).unwrap();
        assert_eq!(col.len(), 1);
        let a = spec.parse_involution("a").unwrap();
        let col = t.tkl_oracle(&a).unwrap();
        assert_eq!(col[&e], QPoly::one());
        let aa = t.a_basis_element(&a).unwrap();
        assert_eq!(aa.to_text(), "a\tv^-1\ne\tv^-1\n");
    }

    #[test]
    fn fast_matches_oracle() {
        for spec in [
            id3(),
            CoxeterSpec::with_star_literal(2, "(a b)").unwrap(),
            CoxeterSpec::with_star_literal(3, "(a b)").unwrap(),
        ] {
            let mut t = TklTable::new(spec.clone());
            for w in spec.enumerate_involutions(4, 10_000).unwrap() {
                let col = t.tkl_oracle(&w).unwrap();
                for y in spec.enumerate_involutions(4, 10_000).unwrap() {
                    let expected = col.get(&y).cloned().unwrap_or_else(QPoly::zero);
                    assert_eq!(t.tkl_fast(&y, &w).unwrap(), expected, "{spec} {y} {w}");
                }
            }
        }
    }

    #[test]
    fn a_basis_is_bar_invariant() {
        let spec = CoxeterSpec::with_star_literal(3, "(a c)").unwrap();
        let mut t = TklTable::new(spec.clone());
        for w in spec.enumerate_involutions(3, 1000).unwrap() {
            let aw = t.a_basis_element(&w).unwrap();
            assert_eq!(t.bar_module(&aw).unwrap(), aw, "{w}");
            assert_eq!(t.to_a_basis(&aw).unwrap(), ModuleElt::basis(w.clone()));
        }
    }

    #[test]
    fn bar_is_an_involution() {
        let spec = id3();
        let mut t = TklTable::new(spec.clone());
        for w in spec.enumerate_involutions(3, 1000).unwrap() {
            let m = ModuleElt::term(w.clone(), "2v^3-v^-1".parse().unwrap());
            let b = t.bar_module(&m).unwrap();
            assert_eq!(t.bar_module(&b).unwrap(), m, "{w}");
        }
        let e = ModuleElt::term(Ti::identity(), LaurentPoly::v_pow(1));
        assert_eq!(
            t.bar_module(&e).unwrap(),
            ModuleElt::term(Ti::identity(), LaurentPoly::v_pow(-1))
        );
    }

    #[test]
    fn mu_examples() {
        let spec = id3();
        let mut t = TklTable::new(spec.clone());
        let i = |s: &str| spec.parse_involution(s).unwrap();
        assert_eq!(t.mu_sigma(&i("e"), &i("a")).unwrap(), 1);
        assert_eq!(t.mu_sigma(&i("e"), &i("aba")).unwrap(), 0);
        assert_eq!(t.mu_sigma_s(&i("a"), &i("b"), 0).unwrap(), 1);
        assert_eq!(t.m_sigma(&i("a"), &i("b"), 0).unwrap(), LaurentPoly::one());
        assert_eq!(
            t.m_sigma(&i("b"), &i("aba"), 1).unwrap(),
            LaurentPoly::one()
        );
        assert_eq!(
            t.m_sigma(&i("c"), &i("aba"), 2).unwrap(),
            LaurentPoly::zero()
        );
        assert!(matches!(
            t.mu_sigma_s(&i("a"), &i("a"), 0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            t.m_sigma(&i("b"), &i("a"), 0),
            Err(Error::Domain(_))
        ));
    }
}
