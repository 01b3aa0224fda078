//! The `H_{q^2}`-module `M_{q^2}` spanned by `a_w` for twisted involutions `w`.

mod recurrence;
mod structure;
mod tkl;

pub use recurrence::{IdentityCheck, PropCase};
pub use structure::{a_of, cs_closed_form, h_sigma, to_a_basis};
pub use tkl::TklTable;

use crate::error::{Error, Result};
use crate::hecke::{HeckeElt, HeckeParam};
use crate::laurent::LaurentPoly;
use crate::lincomb::LinComb;
use crate::word::{CoxeterSpec, Gen, TwistKind, TwistedInvolution};

/// An element of `M_{q^2}`, in the `a` basis or (by context) the `A` basis.
pub type ModuleElt = LinComb<TwistedInvolution>;

/// `T_s · m`.
pub fn gen_action(spec: &CoxeterSpec, s: Gen, m: &ModuleElt) -> Result<ModuleElt> {
    let q = LaurentPoly::q_pow(1);
    let q2 = LaurentPoly::q_pow(2);
    let one = LaurentPoly::one();
    let mut out = ModuleElt::zero();
    for (w, c) in m.iter() {
        let t = spec.twist(s, w);
        let up = t.len() > w.len();
        let (ct, cw) = match (spec.twist_kind(s, w), up) {
            (TwistKind::Conj, true) => (one.clone(), LaurentPoly::zero()),
            (TwistKind::Mul, true) => (&q + &one, q.clone()),
            (TwistKind::Mul, false) => (&q2 - &q, &(&q2 - &q) - &one),
            (TwistKind::Conj, false) => (q2.clone(), &q2 - &one),
        };
        out.add_term(t, &c.checked_mul(&ct)?)?;
        out.add_term(w.clone(), &c.checked_mul(&cw)?)?;
    }
    Ok(out)
}

/// `T_s^{-1} · m`, using `T_s^{-1} = q^{-2} T_s + (q^{-2} - 1)`.
pub fn gen_inv_action(spec: &CoxeterSpec, s: Gen, m: &ModuleElt) -> Result<ModuleElt> {
    let qi2 = LaurentPoly::q_pow(-2);
    let mut out = gen_action(spec, s, m)?.scale(&qi2)?;
    out.add_scaled(m, &(&qi2 - &LaurentPoly::one()))?;
    Ok(out)
}

/// `h · m` for `h` in `H_{q^2}`.
pub fn hecke_action(spec: &CoxeterSpec, h: &HeckeElt, m: &ModuleElt) -> Result<ModuleElt> {
    if h.param() != HeckeParam::Q2 {
        return Err(Error::Domain("the module is over H_{q^2}".into()));
    }
    let mut out = ModuleElt::zero();
    for (x, c) in h.terms().iter() {
        let mut cur = m.clone();
        for &s in x.letters().iter().rev() {
            cur = gen_action(spec, s, &cur)?;
        }
        out.add_scaled(&cur, c)?;
    }
    Ok(out)
}

/// `bar(a_w) = (-1)^{l(w)} (T_{w^{-1}})^{-1} a_{w^{-1}}`, uncached.
pub fn bar_basis(spec: &CoxeterSpec, w: &TwistedInvolution) -> Result<ModuleElt> {
    let winv = TwistedInvolution::new(spec, w.inverse())?;
    let mut cur = ModuleElt::basis(winv);
    // (T_{w^{-1}})^{-1} = T_{s_1}^{-1} ... T_{s_n}^{-1} for w = s_1 ... s_n.
    for &s in w.letters().iter().rev() {
        cur = gen_inv_action(spec, s, &cur)?;
    }
    if w.len() % 2 == 1 {
        cur = cur.scale(&LaurentPoly::constant(-1))?;
    }
    Ok(cur)
}
