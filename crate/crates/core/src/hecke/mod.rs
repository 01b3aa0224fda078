//! The Hecke algebras `H_q` (basis `t_w`) and `H_{q^2}` (basis `T_w`).

mod kl;
mod structure;

use std::fmt;

pub use kl::KlTable;
pub(crate) use structure::top_index;
pub use structure::{c_of, h_tilde, kl_product, to_kl_basis};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::lincomb::LinComb;
use crate::word::{CoxeterSpec, Gen, Word};

/// Vector of coefficients in the KL basis `c_w` (or `C_w`).
pub type KlVector = LinComb<Word>;

/// Selects the parameter `q^e` of the quadratic relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HeckeParam {
    /// `e = 1`: `H_q`, standard basis `t_w`, KL basis `c_w`.
    Q,
    /// `e = 2`: `H_{q^2}`, standard basis `T_w`, KL basis `C_w`.
    Q2,
}

impl HeckeParam {
    pub fn exponent(self) -> i32 {
        match self {
            HeckeParam::Q => 1,
            HeckeParam::Q2 => 2,
        }
    }

    /// `q^e` as a Laurent polynomial in `v`.
    pub fn q_e(self) -> LaurentPoly {
        LaurentPoly::v_pow(2 * self.exponent())
    }

    pub fn standard_tag(self) -> &'static str {
        match self {
            HeckeParam::Q => "t",
            HeckeParam::Q2 => "T",
        }
    }

    pub fn kl_tag(self) -> &'static str {
        match self {
            HeckeParam::Q => "c",
            HeckeParam::Q2 => "C",
        }
    }
}

/// An element of `H_{q^e}` in the standard basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeckeElt {
    param: HeckeParam,
    terms: LinComb<Word>,
}

impl HeckeElt {
    pub fn zero(param: HeckeParam) -> Self {
        HeckeElt {
            param,
            terms: LinComb::zero(),
        }
    }

    pub fn one(param: HeckeParam) -> Self {
        Self::basis(param, Word::identity())
    }

    pub fn basis(param: HeckeParam, w: Word) -> Self {
        HeckeElt {
            param,
            terms: LinComb::basis(w),
        }
    }

    pub fn from_terms(param: HeckeParam, terms: LinComb<Word>) -> Self {
        HeckeElt { param, terms }
    }

    pub fn param(&self) -> HeckeParam {
        self.param
    }

    pub fn terms(&self) -> &LinComb<Word> {
        &self.terms
    }

    pub fn into_terms(self) -> LinComb<Word> {
        self.terms
    }

    pub fn coeff(&self, w: &Word) -> LaurentPoly {
        self.terms.get(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    fn same_param(&self, other: &HeckeElt) -> Result<()> {
        if self.param == other.param {
            Ok(())
        } else {
            Err(Error::Domain("Hecke parameters differ".into()))
        }
    }

    pub fn checked_add(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.same_param(other)?;
        Ok(HeckeElt {
            param: self.param,
            terms: self.terms.checked_add(&other.terms)?,
        })
    }

    pub fn checked_sub(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.same_param(other)?;
        Ok(HeckeElt {
            param: self.param,
            terms: self.terms.checked_sub(&other.terms)?,
        })
    }

    pub fn scale(&self, f: &LaurentPoly) -> Result<HeckeElt> {
        Ok(HeckeElt {
            param: self.param,
            terms: self.terms.scale(f)?,
        })
    }

    /// `t_s · self`.
    pub fn gen_mul_left(&self, s: Gen) -> Result<HeckeElt> {
        let qe = self.param.q_e();
        let qe1 = &qe - &LaurentPoly::one();
        let mut out = LinComb::zero();
        for (w, c) in self.terms.iter() {
            let sw = w.left_mul(s);
            if sw.len() > w.len() {
                out.add_term(sw, c)?;
            } else {
                out.add_term(sw, &c.checked_mul(&qe)?)?;
                out.add_term(w.clone(), &c.checked_mul(&qe1)?)?;
            }
        }
        Ok(HeckeElt {
            param: self.param,
            terms: out,
        })
    }

    /// `self · t_s`.
    pub fn gen_mul_right(&self, s: Gen) -> Result<HeckeElt> {
        let qe = self.param.q_e();
        let qe1 = &qe - &LaurentPoly::one();
        let mut out = LinComb::zero();
        for (w, c) in self.terms.iter() {
            let ws = w.right_mul(s);
            if ws.len() > w.len() {
                out.add_term(ws, c)?;
            } else {
                out.add_term(ws, &c.checked_mul(&qe)?)?;
                out.add_term(w.clone(), &c.checked_mul(&qe1)?)?;
            }
        }
        Ok(HeckeElt {
            param: self.param,
            terms: out,
        })
    }

    /// `t_s^{-1} · self`, using `t_s^{-1} = q^{-e} t_s + (q^{-e} - 1)`.
    pub fn gen_inv_mul_left(&self, s: Gen) -> Result<HeckeElt> {
        let qinv = self.param.q_e().bar();
        let ts = self.gen_mul_left(s)?.scale(&qinv)?;
        let rest = self.scale(&(&qinv - &LaurentPoly::one()))?;
        ts.checked_add(&rest)
    }

    pub fn mul(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.same_param(other)?;
        let mut out = HeckeElt::zero(self.param);
        for (x, c) in self.terms.iter() {
            let mut prod = other.clone();
            for &s in x.letters().iter().rev() {
                prod = prod.gen_mul_left(s)?;
            }
            out.terms.add_scaled(&prod.terms, c)?;
        }
        Ok(out)
    }

    /// `(t_w)^{-1}`.
    pub fn t_inverse(param: HeckeParam, w: &Word) -> Result<HeckeElt> {
        let mut x = HeckeElt::one(param);
        for &s in w.letters() {
            x = x.gen_inv_mul_left(s)?;
        }
        Ok(x)
    }

    /// The bar involution: `v -> v^{-1}` on coefficients and
    /// `t_w -> (t_{w^{-1}})^{-1}`.
    pub fn bar(&self) -> Result<HeckeElt> {
        let mut out = HeckeElt::zero(self.param);
        for (w, c) in self.terms.iter() {
            let inv = HeckeElt::t_inverse(self.param, &w.inverse())?;
            out.terms.add_scaled(&inv.terms, &c.bar())?;
        }
        Ok(out)
    }

    /// The anti-automorphism `t_w -> t_{w†}`.
    pub fn dagger(&self, spec: &CoxeterSpec) -> Result<HeckeElt> {
        let terms = self.terms.map(|w| spec.dagger(w), |c| c.clone())?;
        Ok(HeckeElt {
            param: self.param,
            terms,
        })
    }
}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.terms.to_text())
    }
}
