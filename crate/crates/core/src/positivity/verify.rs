use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use super::{h_plus_minus, p_plus_minus, Bounds, SweepReport, Violation};
use crate::error::{Error, Result};
use crate::hecke::{h_tilde, kl_product, KlTable};
use crate::laurent::LaurentPoly;
use crate::lincomb::LinComb;
use crate::module::{cs_closed_form, h_sigma, ModuleElt, TklTable};
use crate::word::{CoxeterSpec, TwistedInvolution, Word};

type Ti = TwistedInvolution;

macro_rules! checks {
    ($($v:ident => $id:literal,)*) => {
        /// A property swept by [`verify`].
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum Check { $($v,)* }

        impl Check {
            pub const ALL: &'static [Check] = &[$(Check::$v,)*];

            pub fn id(self) -> &'static str {
                match self { $(Check::$v => $id,)* }
            }
        }
    };
}

checks! {
    APrime => "a-prime",
    BPrime => "b-prime",
    CPrime => "c-prime",
    A => "a",
    B => "b",
    C => "c",
    TwistedPositivity => "twisted-positivity",
    ParityP => "parity-p",
    ParityH => "parity-h",
    OracleEquivalence => "oracle-equivalence",
    RhoGrading => "rho-grading",
    BruhatAgreement => "bruhat-agreement",
    RegularEmbedding => "regular-embedding",
    MsigmaClosedForm => "msigma-closed-form",
    MultFormula => "mult-formula",
    Structure => "structure",
    DiffRecursion => "diff-recursion",
    DescentRecurrence => "descent-recurrence",
    BarInvariance => "bar-invariance",
    Symmetry => "symmetry",
    DaggerSymmetry => "dagger-symmetry",
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut norm = s.trim().to_ascii_lowercase().replace('_', "-");
        if let Some(base) = norm.strip_suffix('\'') {
            norm = format!("{base}-prime");
        }
        Check::ALL
            .iter()
            .copied()
            .find(|c| c.id() == norm)
            .ok_or_else(|| {
                let ids: Vec<_> = Check::ALL.iter().map(|c| c.id()).collect();
                Error::Parse(format!(
                    "unknown check `{s}`; expected one of {}",
                    ids.join(", ")
                ))
            })
    }
}

/// Per-worker accumulator.
struct Sink {
    check: Check,
    tuples: u64,
    violations: Vec<Violation>,
    notes: BTreeMap<String, u64>,
}

impl Sink {
    fn new(check: Check) -> Self {
        Sink {
            check,
            tuples: 0,
            violations: Vec::new(),
            notes: BTreeMap::new(),
        }
    }

    /// Runs one tuple. `Ok(None)` passes; anything else is recorded.
    fn tuple(&mut self, witness: &[&dyn fmt::Display], f: impl FnOnce() -> Result<Option<String>>) {
        self.tuples += 1;
        let detail = match f() {
            Ok(None) => return,
            Ok(Some(d)) => d,
            Err(e) => e.to_string(),
        };
        self.violations.push(Violation {
            check: self.check.id().to_string(),
            witness: witness.iter().map(|w| w.to_string()).collect(),
            detail,
        });
    }

    fn note(&mut self, label: impl Into<String>) {
        *self.notes.entry(label.into()).or_default() += 1;
    }

    fn merge(&mut self, other: Sink) {
        self.tuples += other.tuples;
        self.violations.extend(other.violations);
        for (k, v) in other.notes {
            *self.notes.entry(k).or_default() += v;
        }
    }
}

fn fail_if(bad: bool, detail: impl FnOnce() -> String) -> Result<Option<String>> {
    Ok(if bad { Some(detail()) } else { None })
}

/// Runs `f` on every item with a private table per worker and merges the
/// results in item order.
fn sweep<T: Sync>(
    spec: &CoxeterSpec,
    check: Check,
    items: &[T],
    f: impl Fn(&mut TklTable, &T, &mut Sink) + Sync,
) -> Sink {
    let parts: Vec<Sink> = items
        .par_iter()
        .map_init(
            || TklTable::new(spec.clone()),
            |table, item| {
                let mut sink = Sink::new(check);
                f(table, item, &mut sink);
                sink
            },
        )
        .collect();
    let mut out = Sink::new(check);
    for p in parts {
        out.merge(p);
    }
    out
}

fn pairs_below<'a>(v: &'a [Ti]) -> impl Iterator<Item = (&'a Ti, &'a Ti)> + 'a {
    v.iter()
        .flat_map(move |y| v.iter().map(move |z| (y, z)))
        .filter(|(y, z)| y.bruhat_leq(z))
}

fn word_pairs_below(v: &[Word]) -> impl Iterator<Item = (&Word, &Word)> + '_ {
    v.iter()
        .flat_map(move |y| v.iter().map(move |z| (y, z)))
        .filter(|(y, z)| y.bruhat_leq(z))
}

fn nonneg_q(p: &LaurentPoly) -> bool {
    p.is_q_poly() && p.is_nonnegative()
}

fn all_nonneg<K: crate::lincomb::BasisIndex>(v: &LinComb<K>) -> Option<String> {
    v.iter()
        .find(|(_, c)| !c.is_nonnegative())
        .map(|(k, c)| format!("coefficient at {k} is {c}"))
}

/// `v -> v^2`.
fn double_exponents(p: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms(p.terms().iter().map(|&(e, c)| (2 * e, c))).expect("same coefficients")
}

/// Exhaustively checks one property over all tuples within `bounds`.
///
/// Violations are collected, never short-circuited. Only enumeration
/// past `cap` aborts.
pub fn verify(spec: &CoxeterSpec, check: Check, bounds: Bounds, cap: usize) -> Result<SweepReport> {
    let start = Instant::now();
    let inv = || spec.enumerate_involutions(bounds.max_rho, cap);
    let words = || spec.enumerate_words(bounds.max_len, cap);
    let sink = match check {
        Check::APrime => sweep(spec, check, &inv()?, |t, w, sink| {
            for y in t.spec().twisted_lower_interval(w) {
                sink.tuple(&[&y, w], || {
                    let pm = p_plus_minus(t, &y, w)?;
                    if !nonneg_q(&pm.plus) || !nonneg_q(&pm.minus) {
                        return Ok(Some(format!("plus {} minus {}", pm.plus, pm.minus)));
                    }
                    fail_if(pm.plus.coeff(0) != 1 || pm.minus.coeff(0) != 0, || {
                        format!("constant terms: plus {} minus {}", pm.plus, pm.minus)
                    })
                });
            }
        }),
        Check::BPrime => sweep(spec, check, &inv()?, |t, w, sink| {
            let below = t.spec().twisted_lower_interval(w);
            for (y, z) in pairs_below(&below) {
                if y == z {
                    continue;
                }
                sink.tuple(&[y, z, w], || {
                    let a = p_plus_minus(t, y, w)?;
                    let b = p_plus_minus(t, z, w)?;
                    let dp = a.plus.checked_sub(&b.plus)?;
                    let dm = a.minus.checked_sub(&b.minus)?;
                    fail_if(!nonneg_q(&dp) || !nonneg_q(&dm), || {
                        format!("plus {dp} minus {dm}")
                    })
                });
            }
        }),
        Check::TwistedPositivity => sweep(spec, check, &inv()?, |t, w, sink| {
            let below = t.spec().twisted_lower_interval(w);
            for (y, z) in pairs_below(&below) {
                sink.tuple(&[y, z, w], || {
                    let d = t.tkl_fast(y, w)?.checked_sub(&t.tkl_fast(z, w)?)?;
                    let p = t.tkl_fast(y, w)?;
                    fail_if(!d.is_nonnegative() || !p.is_nonnegative(), || {
                        format!("{p}; diff {d}")
                    })
                });
            }
        }),
        Check::A => sweep(spec, check, &words()?, |t, w, sink| {
            for y in w.lower_interval() {
                sink.tuple(&[&y, w], || {
                    let p = t.kl.kl_fast(&y, w)?;
                    fail_if(!p.is_nonnegative(), || p.to_string())
                });
            }
        }),
        Check::B => sweep(spec, check, &words()?, |t, w, sink| {
            let below = w.lower_interval();
            for (y, z) in word_pairs_below(&below) {
                if y == z {
                    continue;
                }
                sink.tuple(&[y, z, w], || {
                    let d = t.kl.kl_fast(y, w)?.checked_sub(&t.kl.kl_fast(z, w)?)?;
                    fail_if(!d.is_nonnegative(), || d.to_string())
                });
            }
        }),
        Check::C => {
            let all = words()?;
            sweep(spec, check, &all, |_, x, sink| {
                for y in &all {
                    sink.tuple(&[x, y], || Ok(all_nonneg(&kl_product(x, y))));
                }
            })
        }
        Check::CPrime | Check::ParityH => {
            let ys = inv()?;
            sweep(spec, check, &words()?, |t, x, sink| {
                for y in &ys {
                    sink.tuple(&[x, y], || {
                        let m = h_plus_minus(t, x, y)?;
                        if check == Check::ParityH {
                            return Ok(None);
                        }
                        Ok(m.iter()
                            .find(|(_, pm)| !pm.is_nonnegative())
                            .map(|(z, pm)| format!("at {z}: plus {} minus {}", pm.plus, pm.minus)))
                    });
                }
            })
        }
        Check::ParityP => sweep(spec, check, &inv()?, |t, w, sink| {
            for y in t.spec().twisted_lower_interval(w) {
                sink.tuple(&[&y, w], || {
                    let p = t.kl.kl_fast(y.word(), w.word())?;
                    let ps = t.tkl_fast(&y, w)?;
                    fail_if(!p.as_laurent().parity_equal(ps.as_laurent()), || {
                        format!("{p} vs {ps}")
                    })
                });
            }
        }),
        Check::OracleEquivalence => {
            let all = inv()?;
            let mut sink = sweep(spec, check, &all, |t, w, sink| {
                let col = match t.tkl_oracle(w) {
                    Ok(c) => c,
                    Err(e) => {
                        sink.tuple(&[w], || Err(e));
                        return;
                    }
                };
                for y in &all {
                    sink.tuple(&[y, w], || {
                        let fast = t.tkl_fast(y, w)?;
                        let oracle = col.get(y).cloned().unwrap_or_default();
                        fail_if(fast != oracle, || {
                            format!("twisted: fast {fast} oracle {oracle}")
                        })
                    });
                }
            });
            let ws = words()?;
            sink.merge(sweep(spec, check, &ws, |t, w, sink| {
                let mut kl = KlTable::new();
                let col = match kl.kl_oracle(w) {
                    Ok(c) => c,
                    Err(e) => {
                        sink.tuple(&[w], || Err(e));
                        return;
                    }
                };
                for (y, oracle) in &col {
                    sink.tuple(&[y, w], || {
                        let fast = t.kl.kl_fast(y, w)?;
                        fail_if(fast != *oracle, || {
                            format!("untwisted: fast {fast} oracle {oracle}")
                        })
                    });
                }
            }));
            sink
        }
        Check::RhoGrading => sweep(spec, check, &inv()?, |t, w, sink| {
            sink.tuple(&[w], || {
                let (rho, star) = (t.spec().rho(w), t.spec().ell_star(w));
                fail_if(2 * rho != w.len() + star, || {
                    format!("rho {rho} len {} ell* {star}", w.len())
                })
            });
        }),
        Check::BruhatAgreement => {
            let all = inv()?;
            sweep(spec, check, &all, |t, w, sink| {
                for y in &all {
                    sink.tuple(&[y, w], || {
                        let a = t.spec().bruhat_leq_twisted(y, w);
                        let b = y.bruhat_leq(w);
                        fail_if(a != b, || format!("twisted subword {a}, bruhat {b}"))
                    });
                }
            })
        }
        Check::RegularEmbedding => {
            if spec.generators().any(|s| spec.is_star_fixed(s)) {
                return Err(Error::Domain(
                    "regular-embedding needs a fixed-point-free star".into(),
                ));
            }
            let ws = words()?;
            let xs: Vec<Word> = ws.iter().filter(|x| x.len() <= 2).cloned().collect();
            sweep(spec, check, &ws, |t, w, sink| {
                let spec = t.spec().clone();
                let embed = |u: &Word| Ti::new(&spec, spec.star(u).mul(&u.inverse()));
                for y in w.lower_interval() {
                    sink.tuple(&[&y, w], || {
                        let expected = t.kl.kl_fast(&y, w)?.substitute_q_squared();
                        let got = t.tkl_fast(&embed(&y)?, &embed(w)?)?;
                        fail_if(got != expected, || {
                            format!("twisted {got}, untwisted at q^2 {expected}")
                        })
                    });
                }
                for x in &xs {
                    sink.tuple(&[x, w], || {
                        let got = h_sigma(&spec, x, &embed(w)?);
                        let mut expected = ModuleElt::zero();
                        for (u, c) in kl_product(x, &spec.star(w)).iter() {
                            let z = Ti::new(&spec, u.mul(&spec.star(u).inverse()))?;
                            expected.add_term(z, &double_exponents(c))?;
                        }
                        fail_if(got != expected, || {
                            format!(
                                "twisted {}, untwisted {}",
                                got.to_text(),
                                expected.to_text()
                            )
                        })
                    });
                }
            })
        }
        Check::MsigmaClosedForm => sweep(spec, check, &inv()?, |t, w, sink| {
            let Some(r) = w.first() else { return };
            for y in t.spec().twisted_lower_interval(w) {
                let Some(s) = y.first() else { continue };
                if s == r {
                    continue;
                }
                sink.tuple(&[&y, w], || {
                    let m = t.m_sigma(&y, w, s)?;
                    let rwr = t.spec().conj(r, w);
                    let hit = *y.word() == rwr || (y.letters() == [s] && w.letters() == [r]);
                    let expected = LaurentPoly::constant(hit as i64);
                    fail_if(m != expected, || {
                        format!("m^σ = {m}, closed form {expected}")
                    })
                });
            }
        }),
        Check::MultFormula => sweep(spec, check, &inv()?, |t, w, sink| {
            for s in t.spec().generators() {
                let g = Word::generator(s);
                sink.tuple(&[&g, w], || {
                    let fast = t.cs_times_a(s, w)?;
                    let closed = cs_closed_form(t.spec(), s, w);
                    let direct = t.cs_times_a_direct(s, w)?;
                    fail_if(fast != closed || fast != direct, || {
                        format!(
                            "coefficients {} closed {} direct {}",
                            fast.to_text(),
                            closed.to_text(),
                            direct.to_text()
                        )
                    })
                });
            }
        }),
        Check::Structure => {
            let ys = inv()?;
            let all = words()?;
            sweep(spec, check, &all, |t, x, sink| {
                for y in &ys {
                    sink.tuple(&[x, y], || {
                        let closed = h_sigma(t.spec(), x, y);
                        let direct = t.h_sigma_direct(x, y)?;
                        fail_if(closed != direct, || {
                            format!(
                                "module: closed {} direct {}",
                                closed.to_text(),
                                direct.to_text()
                            )
                        })
                    });
                }
                for y in &all {
                    sink.tuple(&[x, y], || {
                        let closed = kl_product(x, y);
                        let direct = t.kl.kl_product_direct(x, y)?;
                        fail_if(closed != direct, || {
                            format!(
                                "algebra: closed {} direct {}",
                                closed.to_text(),
                                direct.to_text()
                            )
                        })
                    });
                }
            })
        }
        Check::DiffRecursion => {
            let all = inv()?;
            sweep(spec, check, &all, |t, w, sink| {
                for (y, z) in pairs_below(&all) {
                    if let Ok(Some(c)) = t.prop_case(y, z, w) {
                        sink.note(format!("branch {c:?}"));
                    }
                    sink.tuple(&[y, z, w], || {
                        let rec = t.tkl_diff_recursive(y, z, w)?;
                        let direct = t.tkl_fast(y, w)?.checked_sub(&t.tkl_fast(z, w)?)?;
                        if rec != direct {
                            return Ok(Some(format!("twisted: recursion {rec}, direct {direct}")));
                        }
                        let id = t.untwisted_diff_identity(y, z, w)?;
                        fail_if(!id.holds(), || {
                            format!("untwisted: lhs {} rhs {}", id.lhs, id.rhs)
                        })
                    });
                    if let Ok(id) = t.untwisted_diff_identity(y, z, w) {
                        if id.star_elements_differ {
                            sink.note("auxiliary elements differ without *");
                        }
                        if id.star_values_differ {
                            sink.note("identity value differs without *");
                        }
                    }
                }
            })
        }
        Check::DescentRecurrence => sweep(spec, check, &inv()?, |t, w, sink| {
            let Some(s) = w.first() else { return };
            for y in t.spec().twisted_lower_interval(w) {
                if y.first() != Some(s) {
                    continue;
                }
                sink.tuple(&[&y, w], || {
                    let id = t.descent_identity(&y, w, s)?;
                    fail_if(!id.holds(), || format!("lhs {} rhs {}", id.lhs, id.rhs))
                });
            }
        }),
        Check::BarInvariance => sweep(spec, check, &inv()?, |t, w, sink| {
            sink.tuple(&[w], || {
                let aw = t.a_basis_element(w)?;
                let bar = t.bar_module(&aw)?;
                if bar != aw {
                    return Ok(Some(format!("bar(A_w) = {}", bar.to_text())));
                }
                let basis = ModuleElt::basis(w.clone());
                let once = t.bar_module(&basis)?;
                let twice = t.bar_module(&once)?;
                fail_if(twice != basis, || {
                    format!("bar(bar(a_w)) = {}", twice.to_text())
                })
            });
        }),
        Check::Symmetry => sweep(spec, check, &inv()?, |t, w, sink| {
            let spec = t.spec().clone();
            for y in spec.twisted_lower_interval(w) {
                sink.tuple(&[&y, w], || {
                    let p = t.tkl_fast(&y, w)?;
                    let yi = Ti::new(&spec, y.inverse())?;
                    let wi = Ti::new(&spec, w.inverse())?;
                    let ys = Ti::new(&spec, spec.star(&y))?;
                    let ws = Ti::new(&spec, spec.star(w))?;
                    let a = t.tkl_fast(&yi, &wi)?;
                    let b = t.tkl_fast(&ys, &ws)?;
                    fail_if(p != a || p != b, || format!("{p}, inverses {a}, stars {b}"))
                });
            }
        }),
        Check::DaggerSymmetry => {
            let ys = inv()?;
            sweep(spec, check, &words()?, |t, x, sink| {
                let spec = t.spec().clone();
                for y in &ys {
                    sink.tuple(&[x, y], || {
                        let h = h_tilde(&spec, x, y.word())?;
                        let bad = h
                            .iter()
                            .find(|(z, c)| h.get(&spec.dagger(z)) != **c)
                            .map(|(z, c)| format!("at {z}: {c} vs {}", h.get(&spec.dagger(z))));
                        Ok(bad)
                    });
                }
            })
        }
    };
    Ok(SweepReport {
        spec: spec.to_string(),
        bounds,
        check: check.id().to_string(),
        tuples_checked: sink.tuples,
        violations: sink.violations,
        notes: sink
            .notes
            .iter()
            .map(|(k, v)| format!("{k}: {v}"))
            .collect(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.id().parse::<Check>().unwrap(), *c);
        }
        assert_eq!("A'".parse::<Check>().unwrap(), Check::APrime);
        assert_eq!("A".parse::<Check>().unwrap(), Check::A);
        assert_eq!("b_prime".parse::<Check>().unwrap(), Check::BPrime);
        assert!("nope".parse::<Check>().is_err());
    }

    #[test]
    fn small_sweeps_pass() {
        let spec = CoxeterSpec::with_star_literal(3, "(a b)").unwrap();
        let bounds = Bounds {
            max_rho: 3,
            max_len: 2,
        };
        for c in Check::ALL {
            if *c == Check::RegularEmbedding {
                continue;
            }
            let r = verify(&spec, *c, bounds, 10_000).unwrap();
            assert!(r.passed(), "{c}: {:?}", r.violations);
            assert!(r.tuples_checked > 0, "{c}");
        }
        let swap = CoxeterSpec::with_star_literal(2, "(a b)").unwrap();
        let r = verify(&swap, Check::RegularEmbedding, bounds, 10_000).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(matches!(
            verify(&spec, Check::RegularEmbedding, bounds, 10_000),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let spec = CoxeterSpec::untwisted(3).unwrap();
        let bounds = Bounds {
            max_rho: 12,
            max_len: 12,
        };
        assert!(matches!(
            verify(&spec, Check::APrime, bounds, 100),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
