//! Half-sums and half-differences of the untwisted and twisted families,
//! and the sweeps that check their properties.

mod report;
mod verify;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::h_tilde;
use crate::laurent::LaurentPoly;
use crate::module::{h_sigma, TklTable};
use crate::word::{TwistedInvolution, Word};

pub use report::{Bounds, SweepReport, Violation};
pub use verify::{verify, Check};

/// `(f + g) / 2` and `(f - g) / 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlusMinus {
    pub plus: LaurentPoly,
    pub minus: LaurentPoly,
}

impl PlusMinus {
    pub fn new(untwisted: &LaurentPoly, twisted: &LaurentPoly) -> Result<Self> {
        Ok(PlusMinus {
            plus: untwisted.halve_sum(twisted, true)?,
            minus: untwisted.halve_sum(twisted, false)?,
        })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.plus.is_nonnegative() && self.minus.is_nonnegative()
    }
}

/// `P^±_{y,w}`.
pub fn p_plus_minus(
    table: &mut TklTable,
    y: &TwistedInvolution,
    w: &TwistedInvolution,
) -> Result<PlusMinus> {
    let p = table.kl.kl_fast(y.word(), w.word())?;
    let ps = table.tkl_fast(y, w)?;
    PlusMinus::new(p.as_laurent(), ps.as_laurent())
        .map_err(|e| witness(e, format!("P at ({y},{w}): {p} vs {ps}")))
}

/// `h^±_{x,y;z}` for every `z ∈ I_*` where either side is nonzero.
pub fn h_plus_minus(
    table: &TklTable,
    x: &Word,
    y: &TwistedInvolution,
) -> Result<BTreeMap<TwistedInvolution, PlusMinus>> {
    let spec = table.spec();
    let untwisted = h_tilde(spec, x, y.word())?;
    let twisted = h_sigma(spec, x, y);
    let mut keys: Vec<TwistedInvolution> = twisted.keys().cloned().collect();
    for z in untwisted.keys() {
        if let Ok(t) = TwistedInvolution::new(spec, z.clone()) {
            keys.push(t);
        }
    }
    keys.sort();
    keys.dedup();
    let mut out = BTreeMap::new();
    for z in keys {
        let a = untwisted.get(z.word());
        let b = twisted.get(&z);
        let pm = PlusMinus::new(&a, &b)
            .map_err(|e| witness(e, format!("h at ({x},{y};{z}): {a} vs {b}")))?;
        out.insert(z, pm);
    }
    Ok(out)
}

fn witness(e: Error, what: String) -> Error {
    match e {
        Error::ParityViolation(_) => Error::ParityViolation(what),
        e => e,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::CoxeterSpec;

    #[test]
    fn pm_examples() {
        let spec = CoxeterSpec::untwisted(3).unwrap();
        let mut t = TklTable::new(spec.clone());
        let i = |s: &str| spec.parse_involution(s).unwrap();
        let pm = p_plus_minus(&mut t, &i("aba"), &i("aba")).unwrap();
        assert_eq!(
            (pm.plus.to_string(), pm.minus.to_string()),
            ("1".into(), "0".into())
        );
        let pm = p_plus_minus(&mut t, &i("e"), &i("a")).unwrap();
        assert_eq!(
            (pm.plus.to_string(), pm.minus.to_string()),
            ("1".into(), "0".into())
        );
    }

    #[test]
    fn hpm_examples() {
        let spec = CoxeterSpec::untwisted(3).unwrap();
        let t = TklTable::new(spec.clone());
        let i = |s: &str| spec.parse_involution(s).unwrap();
        let e = Word::identity();
        let m = h_plus_minus(&t, &e, &i("aba")).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m[&i("aba")].plus.is_one() && m[&i("aba")].minus.is_zero());
        let a = Word::generator(0);
        let m = h_plus_minus(&t, &a, &i("e")).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[&i("a")].plus, LaurentPoly::v_plus_v_inv());
        assert!(m[&i("a")].minus.is_zero());
    }
}
