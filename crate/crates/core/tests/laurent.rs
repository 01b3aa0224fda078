use std::collections::BTreeMap;

use proptest::prelude::*;
use tklwb::LaurentPoly;

/// Dense reference: exponent -> coefficient, zeros dropped.
type Dense = BTreeMap<i32, i128>;

fn dense(p: &LaurentPoly) -> Dense {
    p.terms().iter().map(|&(e, c)| (e, c as i128)).collect()
}

fn clean(mut d: Dense) -> Dense {
    d.retain(|_, c| *c != 0);
    d
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i32..7, -50i64..51), 0..6)
        .prop_map(|t| LaurentPoly::from_terms(t).unwrap())
}

proptest! {
    #[test]
    fn add_matches_dense(a in poly(), b in poly()) {
        let mut d = dense(&a);
        for (e, c) in dense(&b) {
            *d.entry(e).or_default() += c;
        }
        prop_assert_eq!(dense(&a.checked_add(&b).unwrap()), clean(d));
    }

    #[test]
    fn mul_matches_dense(a in poly(), b in poly()) {
        let mut d = Dense::new();
        for (e1, c1) in dense(&a) {
            for (e2, c2) in dense(&b) {
                *d.entry(e1 + e2).or_default() += c1 * c2;
            }
        }
        prop_assert_eq!(dense(&a.checked_mul(&b).unwrap()), clean(d));
    }

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        let ab_c = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
        let a_bc = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let lhs = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
        let rhs = a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.checked_sub(&a).unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn bar_is_a_ring_involution(a in poly(), b in poly()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.checked_mul(&b).unwrap().bar(), a.bar().checked_mul(&b.bar()).unwrap());
    }

    #[test]
    fn text_round_trips(a in poly()) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<LaurentPoly>().unwrap(), a);
    }

    #[test]
    fn halves_recombine(a in poly(), b in poly()) {
        match (a.halve_sum(&b, true), a.halve_sum(&b, false)) {
            (Ok(p), Ok(m)) => {
                prop_assert!(a.parity_equal(&b));
                prop_assert_eq!(p.checked_add(&m).unwrap(), a.clone());
                prop_assert_eq!(p.checked_sub(&m).unwrap(), b.clone());
            }
            _ => prop_assert!(!a.parity_equal(&b)),
        }
    }
}

#[test]
fn overflow_is_reported() {
    let big = LaurentPoly::constant(i64::MAX);
    assert!(big.checked_add(&LaurentPoly::one()).is_err());
    assert!(big.checked_mul(&LaurentPoly::constant(2)).is_err());
}

#[test]
fn q_sugar() {
    let p = LaurentPoly::from_terms([(0, 1), (2, 2), (4, 1)]).unwrap();
    assert_eq!(p.to_string(), "1+2q+q^2");
    assert_eq!("1+2q+q^2".parse::<LaurentPoly>().unwrap(), p);
    assert_eq!(LaurentPoly::v_plus_v_inv().to_string(), "v^-1+v");
}
