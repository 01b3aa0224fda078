//! The difference recursion for `P^σ_{y,w} - P^σ_{z,w}` and the checked
//! identities that accompany it.

use super::TklTable;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, QPoly};
use crate::word::{gen_letter, CoxeterSpec, Gen, TwistKind, TwistedInvolution, Word};

type Ti = TwistedInvolution;

/// Which branch of the difference recursion applies to `(y, z, w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropCase {
    /// `w` lies in a dihedral parabolic subgroup.
    Dihedral,
    /// `y != 1` or `s != s*`.
    Generic,
    /// `y = 1 != z`, `s = s*`, `r = r*`.
    FixedPair,
    /// `y = 1 != z`, `s = s*`, `r != r*`.
    MixedPair,
}

/// Both sides of an identity, evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    /// The auxiliary elements built with and without `*` were different.
    pub star_elements_differ: bool,
    /// ... and the identity evaluated to a different value without `*`.
    pub star_values_differ: bool,
}

impl IdentityCheck {
    fn plain(lhs: LaurentPoly, rhs: LaurentPoly) -> Self {
        IdentityCheck {
            lhs,
            rhs,
            star_elements_differ: false,
            star_values_differ: false,
        }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Normalized data for one step: `w = (s r s …)(k+1) ⋉ u`, `a = (… r s)(k)`.
#[derive(Clone, Debug)]
pub(crate) struct Setup {
    pub case: PropCase,
    pub y: Ti,
    pub z: Ti,
    pub s: Gen,
    pub r: Gen,
    pub k: usize,
    pub a: Word,
    pub sws: Ti,
    pub yp: Ti,
    pub zp: Ti,
    pub wp: Ti,
}

/// `n` alternating letters ending in `last`.
fn alt_ending(last: Gen, other: Gen, n: usize) -> Vec<Gen> {
    (0..n)
        .rev()
        .map(|j| if j % 2 == 0 { last } else { other })
        .collect()
}

/// `n` alternating letters starting with `first`.
fn alt_starting(first: Gen, other: Gen, n: usize) -> Vec<Gen> {
    (0..n)
        .map(|j| if j % 2 == 0 { first } else { other })
        .collect()
}

fn word(letters: Vec<Gen>) -> Word {
    Word::from_reduced(letters).expect("alternating letters are reduced")
}

fn indicator(b: bool) -> QPoly {
    if b {
        QPoly::one()
    } else {
        QPoly::zero()
    }
}

/// The auxiliary sequences `u_0..u_k` and `z_1..z_k`, plus `y'', z'', w''`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Auxiliary {
    pub u: Vec<Ti>,
    /// `z[i-1]` is `z_i`.
    pub z: Vec<Word>,
    pub y2: Word,
    pub z2: Word,
    pub w2: Word,
}

pub(crate) fn auxiliary(spec: &CoxeterSpec, st: &Setup, w: &Ti, starred: bool) -> Auxiliary {
    let (s, r, k) = (st.s, st.r, st.k);
    let star = |g: Gen| if starred { spec.star_gen(g) } else { g };
    let star_word = |x: &Word| if starred { spec.star(x) } else { x.clone() };
    let u = (0..=k)
        .map(|i| {
            let letters = if (k - i) % 2 == 0 {
                alt_ending(s, r, i)
            } else {
                alt_ending(r, s, i)
            };
            spec.fold_expression(&letters)
        })
        .collect();
    let mut zt = st.a.mul(st.z.word());
    let mut z = vec![Word::identity(); k];
    for i in (1..=k).rev() {
        let even = (k - i) % 2 == 0;
        let g = if even { star(r) } else { star(s) };
        let cand = zt.right_mul(g);
        if cand.len() < zt.len() {
            zt = cand;
        }
        let tail = if even {
            alt_starting(r, s, i - 1)
        } else {
            alt_starting(s, r, i - 1)
        };
        z[i - 1] = zt.mul(&star_word(&word(tail)));
    }
    let az = st.a.mul(st.z.word());
    let rs = star(r);
    let z2 = if st.z.right_mul(rs).len() < st.z.len() {
        az.right_mul(rs)
    } else {
        az
    };
    let w2 = st.a.mul(w.word()).right_mul(s).right_mul(rs);
    Auxiliary {
        u,
        z,
        y2: st.a.clone(),
        z2,
        w2,
    }
}

impl TklTable {
    /// Normalizes `(y, z)` against the first letter of `w` and splits `w`.
    /// `None` when `w` is dihedral or the pair collapses.
    pub(crate) fn setup(&self, y: &Ti, z: &Ti, w: &Ti) -> Result<Option<Setup>> {
        if w.is_dihedral() {
            return Ok(None);
        }
        let spec = self.spec();
        let expr = spec.istar_expression(w);
        let (s, r) = (expr[0], expr[1]);
        let mut m = 2;
        while m < expr.len() && expr[m] == if m % 2 == 0 { s } else { r } {
            m += 1;
        }
        let k = m - 1;
        let strip = |x: &Ti| {
            if x.first() == Some(s) {
                spec.twist(s, x)
            } else {
                x.clone()
            }
        };
        let (y1, z1) = (strip(y), strip(z));
        if y1 == z1 {
            return Ok(None);
        }
        if !y1.bruhat_leq(&z1) {
            return Err(Error::Internal(format!(
                "normalizing ({y},{z}) by {} broke the order",
                gen_letter(s)
            )));
        }
        let case = if !y1.is_identity() || !spec.is_star_fixed(s) {
            PropCase::Generic
        } else if spec.is_star_fixed(r) {
            PropCase::FixedPair
        } else {
            PropCase::MixedPair
        };
        let a = word(alt_ending(s, r, k));
        let yp = spec.twist_word(&a, &y1);
        let zp = spec.twist_word(&a, &z1);
        let wp = spec.twist_word(&a, w);
        let sws = spec.twist(s, w);
        Ok(Some(Setup {
            case,
            y: y1,
            z: z1,
            s,
            r,
            k,
            a,
            sws,
            yp,
            zp,
            wp,
        }))
    }

    /// Which branch applies, or `None` if the difference is trivially 0.
    pub fn prop_case(&self, y: &Ti, z: &Ti, w: &Ti) -> Result<Option<PropCase>> {
        if !y.bruhat_leq(z) {
            return Err(Error::Order(format!("{y} is not below {z}")));
        }
        if y == z {
            return Ok(None);
        }
        if w.is_dihedral() {
            return Ok(Some(PropCase::Dihedral));
        }
        Ok(self.setup(y, z, w)?.map(|st| st.case))
    }

    /// `P^σ_{y,w} - P^σ_{z,w}` for `y <= z`, by the difference recursion alone.
    ///
    /// Every intermediate value is checked to lie in `N[q]`.
    pub fn tkl_diff_recursive(&mut self, y: &Ti, z: &Ti, w: &Ti) -> Result<QPoly> {
        if !y.bruhat_leq(z) {
            return Err(Error::Order(format!("{y} is not below {z}")));
        }
        if y == z {
            return Ok(QPoly::zero());
        }
        if w.is_dihedral() {
            return indicator(y.bruhat_leq(w)).checked_sub(&indicator(z.bruhat_leq(w)));
        }
        let key = (y.clone(), z.clone(), w.clone());
        if let Some(p) = self.diff_memo.get(&key) {
            return Ok(p.clone());
        }
        let val = match self.setup(y, z, w)? {
            None => QPoly::zero(),
            Some(st) => self.diff_step(&st, w)?,
        };
        if !val.is_nonnegative() {
            return Err(Error::Internal(format!(
                "difference ({y},{z};{w}) = {val} is not in N[q]"
            )));
        }
        self.diff_memo.insert(key, val.clone());
        Ok(val)
    }

    fn diff_child(&mut self, y: &Ti, z: &Ti, w: &Ti) -> Result<QPoly> {
        self.tkl_diff_recursive(y, z, w).map_err(|e| match e {
            Error::Order(m) => {
                Error::Internal(format!("recursion produced an unordered pair: {m}"))
            }
            e => e,
        })
    }

    fn diff_step(&mut self, st: &Setup, w: &Ti) -> Result<QPoly> {
        let k = st.k as u32;
        let mut val = self.diff_child(&st.y, &st.z, &st.sws)?;
        let tail = self.diff_child(&st.yp, &st.zp, &st.wp)?;
        val = val.checked_add(&tail.checked_mul_monomial(1, 2 * k)?)?;
        match st.case {
            PropCase::Generic | PropCase::Dihedral => {}
            PropCase::FixedPair => {
                let aux = auxiliary(&self.spec().clone(), st, w, true);
                for i in 0..st.k {
                    let d = self.diff_child(&aux.u[i], &aux.u[i + 1], &st.wp)?;
                    val = val.checked_add(&d.checked_mul_monomial(1, i as u32 + k)?)?;
                }
            }
            PropCase::MixedPair => {
                let aux = auxiliary(&self.spec().clone(), st, w, true);
                let d = self.diff_child(&aux.u[st.k - 1], &aux.u[st.k], &st.wp)?;
                val = val.checked_add(&d.checked_mul_monomial(1, 2 * k - 1)?)?;
            }
        }
        Ok(val)
    }

    /// The untwisted companion identity of the branch that applies to
    /// `(y, z, w)`, with both sides evaluated by the untwisted difference
    /// recursion.
    pub fn untwisted_diff_identity(&mut self, y: &Ti, z: &Ti, w: &Ti) -> Result<IdentityCheck> {
        if !y.bruhat_leq(z) {
            return Err(Error::Order(format!("{y} is not below {z}")));
        }
        let lhs = self.kl.kl_diff(y, z, w)?.into_laurent();
        if y == z {
            return Ok(IdentityCheck::plain(lhs, LaurentPoly::zero()));
        }
        if w.is_dihedral() {
            let rhs = indicator(y.bruhat_leq(w) && !z.bruhat_leq(w)).into_laurent();
            return Ok(IdentityCheck::plain(lhs, rhs));
        }
        let Some(st) = self.setup(y, z, w)? else {
            return Ok(IdentityCheck::plain(lhs, LaurentPoly::zero()));
        };
        let base = self.untwisted_base(&st)?;
        let spec = self.spec().clone();
        match st.case {
            PropCase::Generic | PropCase::Dihedral => {
                let sstar = spec.star_gen(st.s);
                let aw = st.a.mul(w.word()).right_mul(sstar);
                let d = self
                    .kl
                    .kl_diff(&st.a.mul(st.y.word()), &st.a.mul(st.z.word()), &aw)?;
                let rhs = base.checked_add(&d.checked_mul_monomial(2, st.k as u32)?)?;
                Ok(IdentityCheck::plain(lhs, rhs.into_laurent()))
            }
            PropCase::FixedPair | PropCase::MixedPair => {
                let starred = auxiliary(&spec, &st, w, true);
                let plain = auxiliary(&spec, &st, w, false);
                let rhs = self.untwisted_tail(&st, &starred, base.clone())?;
                let differ = starred != plain;
                let values_differ = differ
                    && self
                        .untwisted_tail(&st, &plain, base)
                        .map_or(true, |alt| alt != rhs);
                Ok(IdentityCheck {
                    lhs,
                    rhs: rhs.into_laurent(),
                    star_elements_differ: differ,
                    star_values_differ: values_differ,
                })
            }
        }
    }

    /// `P_{y,z;sws*} + q^{2k} P_{y',z';w'}`.
    fn untwisted_base(&mut self, st: &Setup) -> Result<QPoly> {
        let d1 = self.kl.kl_diff(&st.y, &st.z, &st.sws)?;
        let d2 = self.kl.kl_diff(&st.yp, &st.zp, &st.wp)?;
        d1.checked_add(&d2.checked_mul_monomial(1, 2 * st.k as u32)?)
    }

    fn untwisted_tail(&mut self, st: &Setup, aux: &Auxiliary, base: QPoly) -> Result<QPoly> {
        let k = st.k;
        let wp = st.wp.word();
        let mut val = base;
        let range: Vec<usize> = match st.case {
            PropCase::FixedPair => (0..k).collect(),
            _ => vec![k - 1],
        };
        for i in range {
            let e = if st.case == PropCase::FixedPair {
                (i + k) as u32
            } else {
                2 * k as u32 - 1
            };
            let d1 = self.kl.kl_diff(&aux.u[i], &aux.u[i + 1], wp)?;
            let d2 = self.kl.kl_diff(&aux.u[i + 1], &aux.z[i], wp)?;
            let term = d1.checked_add(&d2.checked_mul_monomial(2, 0)?)?;
            val = val.checked_add(&term.checked_mul_monomial(1, e)?)?;
        }
        if st.case == PropCase::MixedPair && k > 1 {
            let d = self.kl.kl_diff(&aux.y2, &aux.z2, &aux.w2)?;
            val = val.checked_add(&d.checked_mul_monomial(2, k as u32)?)?;
        }
        Ok(val)
    }

    /// Both sides of the `C_s`-recurrence for `P^σ_{y,w}` with
    /// `s ∈ Des_L(y) ∩ Des_L(w)`, all values taken from the table.
    pub fn descent_identity(&mut self, y: &Ti, w: &Ti, s: Gen) -> Result<IdentityCheck> {
        let spec = self.spec().clone();
        spec.check_gen(s)?;
        if y.first() != Some(s) || w.first() != Some(s) || !y.bruhat_leq(w) {
            return Err(Error::Domain(format!(
                "need {y} <= {w} with common left descent {}",
                gen_letter(s)
            )));
        }
        let c = spec.twist_kind(s, w) == TwistKind::Mul;
        let d = spec.twist_kind(s, y) == TwistKind::Mul;
        let w1 = spec.twist(s, w);
        let sy = spec.twist(s, y);
        let q1 = "1+q".parse::<LaurentPoly>().expect("literal");
        let pow = |b: bool| if b { q1.clone() } else { LaurentPoly::one() };
        let lhs = pow(c).checked_mul(self.tkl_fast(y, w)?.as_laurent())?;
        let mut rhs = pow(d).checked_mul(self.tkl_fast(&sy, &w1)?.as_laurent())?;
        let qq = LaurentPoly::q_pow(1)
            .checked_mul(&(&LaurentPoly::q_pow(1) - &LaurentPoly::constant(d as i64)))?;
        rhs = rhs.checked_add(&qq.checked_mul(self.tkl_fast(y, &w1)?.as_laurent())?)?;
        for x in spec.twisted_lower_interval(w) {
            if x.first() != Some(s) || x == *w || !y.bruhat_leq(&x) {
                continue;
            }
            let m = self.m_sigma(&x, &w1, s)?;
            if m.is_zero() {
                continue;
            }
            let e = w.len() as i32 - x.len() as i32 + c as i32;
            let term = m.shift(e).checked_mul(self.tkl_fast(y, &x)?.as_laurent())?;
            rhs = rhs.checked_sub(&term)?;
        }
        Ok(IdentityCheck::plain(lhs, rhs))
    }
}
