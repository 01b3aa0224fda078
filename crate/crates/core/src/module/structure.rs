//! `C_s A_w`, the correction terms `A(w, j)`, and `C_x A_y`.

use super::{hecke_action, ModuleElt, TklTable};
use crate::error::Result;
use crate::hecke::{HeckeElt, HeckeParam};
use crate::laurent::LaurentPoly;
use crate::word::{CoxeterSpec, Gen, TwistKind, TwistedInvolution, Word};

type Ti = TwistedInvolution;

/// The correction term `A(w, j)`, with `j` 1-indexed into the reduced
/// I_*-expression of `w`.
pub fn a_of(spec: &CoxeterSpec, w: &Ti, j: i64) -> ModuleElt {
    a_of_expression(spec, spec.istar_expression(w), j)
}

fn a_of_expression(spec: &CoxeterSpec, mut cur: Vec<Gen>, mut j: i64) -> ModuleElt {
    let mut out = ModuleElt::zero();
    loop {
        let n = cur.len() as i64;
        if 2 <= j && j < n && cur[j as usize - 2] == cur[j as usize] {
            let ju = j as usize;
            cur.drain(ju - 1..=ju);
            j -= 1;
        } else if j == n
            && n >= 2
            && spec.is_star_fixed(cur[n as usize - 2])
            && spec.is_star_fixed(cur[n as usize - 1])
        {
            cur.pop();
            j = n - 1;
        } else {
            break;
        }
        out.add_term(spec.fold_expression(&cur), &LaurentPoly::one())
            .expect("small multiplicities");
    }
    out
}

/// `C_x A_y` in the `A` basis, by the closed formula for universal systems.
pub fn h_sigma(spec: &CoxeterSpec, x: &Word, y: &Ti) -> ModuleElt {
    let n = x.len() as i64;
    let one = LaurentPoly::one();
    let expr_y = spec.istar_expression(y);
    let with = |prefix: &[Gen]| {
        let mut e = prefix.to_vec();
        e.extend_from_slice(&expr_y);
        e
    };
    match (x.last(), y.first()) {
        (Some(s), Some(t)) if s == t => {
            let e = with(&x.letters()[..x.len() - 1]);
            let mut v = a_of_expression(spec, e.clone(), n);
            v.add_term(spec.fold_expression(&e), &one)
                .expect("small multiplicities");
            v.scale(&LaurentPoly::q_plus_q_inv())
                .expect("small multiplicities")
        }
        (Some(s), None) if spec.is_star_fixed(s) => {
            let e = x.letters().to_vec();
            let mut v = a_of_expression(spec, e.clone(), n);
            v.add_term(spec.fold_expression(&e), &one)
                .expect("small multiplicities");
            v.scale(&LaurentPoly::v_plus_v_inv())
                .expect("small multiplicities")
        }
        _ => {
            let e = with(x.letters());
            let mut v = a_of_expression(spec, e.clone(), n);
            v = v
                .checked_add(&a_of_expression(spec, e.clone(), n + 1))
                .expect("small multiplicities");
            v.add_term(spec.fold_expression(&e), &one)
                .expect("small multiplicities");
            v
        }
    }
}

/// Rewrites an `a`-basis element in the `A` basis.
pub fn to_a_basis(table: &mut TklTable, m: &ModuleElt) -> Result<ModuleElt> {
    table.to_a_basis(m)
}

impl TklTable {
    /// `C_s A_w` in the `A` basis from the `m^σ` coefficients.
    pub fn cs_times_a(&mut self, s: Gen, w: &Ti) -> Result<ModuleElt> {
        let spec = self.spec().clone();
        spec.check_gen(s)?;
        if w.first() == Some(s) {
            return Ok(ModuleElt::term(w.clone(), LaurentPoly::q_plus_q_inv()));
        }
        let t = spec.twist(s, w);
        let lead = match spec.twist_kind(s, w) {
            TwistKind::Mul => LaurentPoly::v_plus_v_inv(),
            TwistKind::Conj => LaurentPoly::one(),
        };
        let mut out = ModuleElt::term(t.clone(), lead);
        for y in spec.twisted_lower_interval(&t) {
            if y == t || y.first() != Some(s) {
                continue;
            }
            let m = self.m_sigma(&y, w, s)?;
            out.add_term(y, &m)?;
        }
        Ok(out)
    }

    /// `C_s A_w` through the standard basis.
    pub fn cs_times_a_direct(&mut self, s: Gen, w: &Ti) -> Result<ModuleElt> {
        let spec = self.spec().clone();
        spec.check_gen(s)?;
        let ts = HeckeElt::basis(HeckeParam::Q2, Word::generator(s));
        let cs = ts
            .checked_add(&HeckeElt::one(HeckeParam::Q2))?
            .scale(&LaurentPoly::q_pow(-1))?;
        let aw = self.a_basis_element(w)?;
        let prod = hecke_action(&spec, &cs, &aw)?;
        self.to_a_basis(&prod)
    }

    /// `C_x A_y` through the standard basis.
    pub fn h_sigma_direct(&mut self, x: &Word, y: &Ti) -> Result<ModuleElt> {
        let spec = self.spec().clone();
        spec.check_word(x)?;
        let cx = self.kl.kl_basis_element(x, HeckeParam::Q2)?;
        let ay = self.a_basis_element(y)?;
        let prod = hecke_action(&spec, &cx, &ay)?;
        self.to_a_basis(&prod)
    }
}

/// The four-case closed form for `C_s A_w` when `s` is not a left descent.
pub fn cs_closed_form(spec: &CoxeterSpec, s: Gen, w: &Ti) -> ModuleElt {
    if w.first() == Some(s) {
        return ModuleElt::term(w.clone(), LaurentPoly::q_plus_q_inv());
    }
    let one = LaurentPoly::one();
    let sws = spec.twist(s, w);
    let s_elt = || spec.twist(s, &Ti::identity());
    let fixed = spec.is_star_fixed(s);
    if w.is_identity() && fixed {
        return ModuleElt::term(s_elt(), LaurentPoly::v_plus_v_inv());
    }
    let mut out = ModuleElt::basis(sws);
    if let Some(r) = w.first() {
        let rwr = spec.conj(r, w);
        if rwr.first() == Some(s) {
            out.add_term(Ti::new(spec, rwr).expect("conjugates stay in I_*"), &one)
                .expect("small multiplicities");
        } else if w.len() == 1 && fixed {
            out.add_term(s_elt(), &one).expect("small multiplicities");
        }
    }
    out
}
