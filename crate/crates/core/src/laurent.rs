//! Integer Laurent polynomials in `v`, with `q = v^2`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficient type. Every arithmetic path goes through its checked methods.
pub type Coeff = i64;

/// A sparse Laurent polynomial, stored as `(exponent, coefficient)` pairs
/// sorted by exponent with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i32, Coeff)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(c, 0)
    }

    /// `c v^e`.
    pub fn monomial(c: Coeff, e: i32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            LaurentPoly {
                terms: vec![(e, c)],
            }
        }
    }

    pub fn v_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, 2 * e)
    }

    /// `v + v^{-1}`.
    pub fn v_plus_v_inv() -> Self {
        LaurentPoly {
            terms: vec![(-1, 1), (1, 1)],
        }
    }

    /// `q + q^{-1}`.
    pub fn q_plus_q_inv() -> Self {
        LaurentPoly {
            terms: vec![(-2, 1), (2, 1)],
        }
    }

    /// Builds a polynomial from arbitrary pairs, merging repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i32, Coeff)>>(pairs: I) -> Result<Self> {
        let mut v: Vec<(i32, Coeff)> = pairs.into_iter().collect();
        v.sort_by_key(|&(e, _)| e);
        let mut out: Vec<(i32, Coeff)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => {
                    last.1 = last.1.checked_add(c).ok_or(Error::Overflow)?;
                }
                _ => out.push((e, c)),
            }
        }
        out.retain(|&(_, c)| c != 0);
        Ok(LaurentPoly { terms: out })
    }

    pub fn terms(&self) -> &[(i32, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [(0, 1)]
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// Coefficient of `v^k`.
    pub fn coeff(&self, k: i32) -> Coeff {
        match self.terms.binary_search_by_key(&k, |t| t.0) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    /// Coefficient of `q^k`.
    pub fn coeff_q(&self, k: i32) -> Coeff {
        self.coeff(2 * k)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.checked_add(b[j].1).ok_or(Error::Overflow)?;
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(LaurentPoly { terms: out })
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|&(e, c)| c.checked_neg().map(|c| (e, c)).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(LaurentPoly { terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        if other.terms.len() == 1 {
            let (e, c) = other.terms[0];
            return self.checked_scale(c).map(|p| p.shift(e));
        }
        if self.terms.len() == 1 {
            return other.checked_mul(self);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let mut dense = vec![0 as Coeff; (hi - lo + 1) as usize];
        for &(ea, ca) in &self.terms {
            for &(eb, cb) in &other.terms {
                let slot = &mut dense[(ea + eb - lo) as usize];
                let prod = ca.checked_mul(cb).ok_or(Error::Overflow)?;
                *slot = slot.checked_add(prod).ok_or(Error::Overflow)?;
            }
        }
        let terms = dense
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .map(|(i, c)| (lo + i as i32, c))
            .collect();
        Ok(LaurentPoly { terms })
    }

    pub fn checked_scale(&self, k: Coeff) -> Result<Self> {
        if k == 0 {
            return Ok(Self::zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|&(e, c)| c.checked_mul(k).map(|c| (e, c)).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(LaurentPoly { terms })
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|&(e, c)| (e + k, c)).collect(),
        }
    }

    /// `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().rev().map(|&(e, c)| (-e, c)).collect(),
        }
    }

    /// The part with strictly negative exponents.
    pub fn negative_part(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().copied().filter(|t| t.0 < 0).collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.iter().all(|t| t.1 > 0)
    }

    pub fn is_q_poly(&self) -> bool {
        self.terms.iter().all(|&(e, _)| e >= 0 && e % 2 == 0)
    }

    pub fn as_q_poly(&self) -> Result<QPoly> {
        if self.is_q_poly() {
            Ok(QPoly(self.clone()))
        } else {
            Err(Error::NotQPoly(self.to_string()))
        }
    }

    /// Whether `self - other` has only even coefficients.
    pub fn parity_equal(&self, other: &Self) -> bool {
        let mut i = 0;
        let mut j = 0;
        let (a, b) = (&self.terms, &other.terms);
        loop {
            let ea = a.get(i).map(|t| t.0);
            let eb = b.get(j).map(|t| t.0);
            let odd = match (ea, eb) {
                (None, None) => return true,
                (Some(x), Some(y)) if x == y => {
                    let r = (a[i].1 ^ b[j].1) & 1 != 0;
                    i += 1;
                    j += 1;
                    r
                }
                (Some(x), Some(y)) if x < y => {
                    i += 1;
                    a[i - 1].1 & 1 != 0
                }
                (Some(_), None) => {
                    i += 1;
                    a[i - 1].1 & 1 != 0
                }
                _ => {
                    j += 1;
                    b[j - 1].1 & 1 != 0
                }
            };
            if odd {
                return false;
            }
        }
    }

    /// `(self ± other) / 2`. Fails if any coefficient of the sum is odd.
    pub fn halve_sum(&self, other: &Self, plus: bool) -> Result<Self> {
        let s = if plus {
            self.checked_add(other)?
        } else {
            self.checked_sub(other)?
        };
        if s.terms.iter().any(|t| t.1 % 2 != 0) {
            return Err(Error::ParityViolation(s.to_string()));
        }
        Ok(LaurentPoly {
            terms: s.terms.into_iter().map(|(e, c)| (e, c / 2)).collect(),
        })
    }

    /// Whether every exponent has the given parity.
    pub fn has_parity(&self, odd: bool) -> bool {
        self.terms.iter().all(|t| (t.0 & 1 != 0) == odd)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("coefficient overflow")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("coefficient overflow")
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self - rhs;
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("coefficient overflow")
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.checked_neg().expect("coefficient overflow")
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<Coeff> for LaurentPoly {
    fn from(c: Coeff) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let q_form = self.is_q_poly();
        let (var, div) = if q_form { ('q', 2) } else { ('v', 1) };
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            if i > 0 && c > 0 {
                f.write_str("+")?;
            }
            let k = e / div;
            if k == 0 {
                write!(f, "{c}")?;
                continue;
            }
            match c {
                1 => {}
                -1 => f.write_str("-")?,
                _ => write!(f, "{c}")?,
            }
            if k == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = || Error::Parse(format!("bad polynomial `{s}`"));
        let bytes = src.as_bytes();
        let mut pairs = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign: Coeff = 1;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos > 0 {
                return Err(bad());
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: Option<Coeff> = if pos > start {
                Some(src[start..pos].parse().map_err(|_| Error::Overflow)?)
            } else {
                None
            };
            let mut exp = 0i32;
            let has_var = pos < bytes.len() && (bytes[pos] == b'v' || bytes[pos] == b'q');
            if has_var {
                let scale = if bytes[pos] == b'q' { 2 } else { 1 };
                pos += 1;
                let mut k = 1i32;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let es = pos;
                    if pos < bytes.len() && bytes[pos] == b'-' {
                        pos += 1;
                    }
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    k = src[es..pos].parse().map_err(|_| bad())?;
                }
                exp = k.checked_mul(scale).ok_or_else(bad)?;
            } else if coeff.is_none() {
                return Err(bad());
            }
            let c = coeff
                .unwrap_or(1)
                .checked_mul(sign)
                .ok_or(Error::Overflow)?;
            pairs.push((exp, c));
        }
        Self::from_terms(pairs)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A Laurent polynomial known to lie in `Z[q]`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QPoly(LaurentPoly);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        QPoly(LaurentPoly::one())
    }

    pub fn q_pow(k: u32) -> Self {
        QPoly(LaurentPoly::q_pow(k as i32))
    }

    pub fn as_laurent(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_laurent(self) -> LaurentPoly {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Degree in `q`; `None` for zero.
    pub fn degree(&self) -> Option<i32> {
        self.0.max_exp().map(|e| e / 2)
    }

    pub fn coeff_q(&self, k: i32) -> Coeff {
        self.0.coeff_q(k)
    }

    /// `P(q) -> P(q^2)`.
    pub fn substitute_q_squared(&self) -> QPoly {
        QPoly(LaurentPoly {
            terms: self.0.terms.iter().map(|&(e, c)| (2 * e, c)).collect(),
        })
    }

    pub fn checked_add(&self, other: &QPoly) -> Result<QPoly> {
        self.0.checked_add(&other.0).map(QPoly)
    }

    pub fn checked_sub(&self, other: &QPoly) -> Result<QPoly> {
        self.0.checked_sub(&other.0).map(QPoly)
    }

    /// Product with `q^k · c`.
    pub fn checked_mul_monomial(&self, c: Coeff, k: u32) -> Result<QPoly> {
        self.0
            .checked_scale(c)
            .map(|p| QPoly(p.shift(2 * k as i32)))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.is_nonnegative()
    }
}

impl TryFrom<LaurentPoly> for QPoly {
    type Error = Error;
    fn try_from(p: LaurentPoly) -> Result<QPoly> {
        if p.is_q_poly() {
            Ok(QPoly(p))
        } else {
            Err(Error::NotQPoly(p.to_string()))
        }
    }
}

impl From<QPoly> for LaurentPoly {
    fn from(p: QPoly) -> LaurentPoly {
        p.0
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({})", self.0)
    }
}

impl FromStr for QPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.parse::<LaurentPoly>()?.as_q_poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn ring_examples() {
        let x = LaurentPoly::v_plus_v_inv();
        assert_eq!(&x * &x, p("v^-2+2+v^2"));
        assert!((&x - &x).is_zero());
        assert_eq!(p("1+q").shift(-2), p("v^-2+1"));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(p("v^2").bar(), p("v^-2"));
        assert_eq!(
            LaurentPoly::v_plus_v_inv().bar(),
            LaurentPoly::v_plus_v_inv()
        );
        assert_eq!(p("3").bar(), p("3"));
    }

    #[test]
    fn q_views() {
        assert_eq!(p("1+v^2").as_q_poly().unwrap().to_string(), "1+q");
        let sq = p("1+q").as_q_poly().unwrap().substitute_q_squared();
        assert_eq!(sq.to_string(), "1+q^2");
        assert!(matches!(p("v").as_q_poly(), Err(Error::NotQPoly(_))));
        assert!(p("v^-2").as_q_poly().is_err());
    }

    #[test]
    fn parity_and_halving() {
        assert!(p("1+3q").parity_equal(&p("1+q")));
        assert!(!p("1+2q").parity_equal(&p("1+q")));
        assert!(p("q^3").parity_equal(&p("3q^3+2")));
        assert_eq!(p("1+q").halve_sum(&p("1-q"), true).unwrap(), p("1"));
        assert_eq!(p("1+q").halve_sum(&p("1-q"), false).unwrap(), p("q"));
        assert!(matches!(
            p("1").halve_sum(&p("q"), true),
            Err(Error::ParityViolation(_))
        ));
    }

    #[test]
    fn inspection() {
        assert!(p("1+q").is_nonnegative());
        assert!(!p("1-q").is_nonnegative());
        assert_eq!(p("v+2v^3").coeff(3), 2);
        assert_eq!(p("v+2v^3").coeff(2), 0);
    }

    #[test]
    fn text_form() {
        for s in [
            "0",
            "1",
            "-1",
            "q",
            "1+q^2",
            "v^-1+v",
            "-v^-3+2v-7v^5",
            "-2q+q^3",
            "5",
        ] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("q^-1").to_string(), "v^-2");
        assert_eq!(p("v^2 + 1").to_string(), "1+q");
        assert_eq!(p("2v - v + 0").to_string(), "v");
        assert_eq!(p("-v^-1").to_string(), "-v^-1");
        for bad in ["", "x", "1++q", "v^", "q^a", "2v^1.5"] {
            assert!(bad.parse::<LaurentPoly>().is_err(), "{bad}");
        }
    }

    #[test]
    fn overflow_is_detected() {
        let big = LaurentPoly::constant(Coeff::MAX);
        assert_eq!(big.checked_add(&LaurentPoly::one()), Err(Error::Overflow));
        assert_eq!(big.checked_mul(&p("2")), Err(Error::Overflow));
        assert_eq!(
            LaurentPoly::constant(Coeff::MIN).checked_neg(),
            Err(Error::Overflow)
        );
    }

    #[test]
    fn json_round_trip() {
        let x = p("v^-1+v");
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, "\"v^-1+v\"");
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
