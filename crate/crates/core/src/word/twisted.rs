use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use super::{is_subsequence, CoxeterSpec, Gen, Word};
use crate::error::{Error, Result};

/// An element `w` with `w^{-1} = w*`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TwistedInvolution(Word);

impl TwistedInvolution {
    pub fn identity() -> Self {
        TwistedInvolution(Word::identity())
    }

    pub fn new(spec: &CoxeterSpec, w: Word) -> Result<Self> {
        spec.check_word(&w)?;
        if spec.is_twisted_involution(&w) {
            Ok(TwistedInvolution(w))
        } else {
            Err(Error::NotTwistedInvolution(w.to_string()))
        }
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }
}

impl Deref for TwistedInvolution {
    type Target = Word;

    fn deref(&self) -> &Word {
        &self.0
    }
}

impl fmt::Display for TwistedInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for TwistedInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistedInvolution({})", self.0)
    }
}

/// One step of the descent-stripping trace of a twisted involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistKind {
    /// `s ⋉ w = sw` (equivalently `sw = ws*`).
    Mul,
    /// `s ⋉ w = sws*`.
    Conj,
}

impl CoxeterSpec {
    pub fn parse_involution(&self, s: &str) -> Result<TwistedInvolution> {
        TwistedInvolution::new(self, self.parse_word(s)?)
    }

    /// Which case of the `⋉` action applies to `(s, w)`.
    pub fn twist_kind(&self, s: Gen, w: &Word) -> TwistKind {
        if w.left_mul(s) == w.right_mul(self.star_gen(s)) {
            TwistKind::Mul
        } else {
            TwistKind::Conj
        }
    }

    /// `s ⋉ w`.
    pub fn twist(&self, s: Gen, w: &TwistedInvolution) -> TwistedInvolution {
        let next = match self.twist_kind(s, w) {
            TwistKind::Mul => w.left_mul(s),
            TwistKind::Conj => self.conj(s, w),
        };
        TwistedInvolution(next)
    }

    /// `x ⋉ w`, folding the letters of `x` from the right.
    pub fn twist_word(&self, x: &Word, w: &TwistedInvolution) -> TwistedInvolution {
        x.letters()
            .iter()
            .rev()
            .fold(w.clone(), |acc, &s| self.twist(s, &acc))
    }

    /// `s_1 ⋉ (s_2 ⋉ (… ⋉ 1))` for a letter sequence.
    pub fn fold_expression(&self, letters: &[Gen]) -> TwistedInvolution {
        letters
            .iter()
            .rev()
            .fold(TwistedInvolution::identity(), |acc, &s| self.twist(s, &acc))
    }

    /// The descent-stripping trace: each step's letter and case.
    pub fn istar_trace(&self, w: &TwistedInvolution) -> Vec<(Gen, TwistKind)> {
        let mut out = Vec::new();
        let mut cur = w.clone();
        while let Some(s) = cur.first() {
            let kind = self.twist_kind(s, &cur);
            out.push((s, kind));
            cur = self.twist(s, &cur);
        }
        out
    }

    /// The unique reduced I_*-expression of `w`.
    pub fn istar_expression(&self, w: &TwistedInvolution) -> Vec<Gen> {
        self.istar_trace(w).into_iter().map(|(s, _)| s).collect()
    }

    pub fn rho(&self, w: &TwistedInvolution) -> usize {
        self.istar_trace(w).len()
    }

    pub fn ell_star(&self, w: &TwistedInvolution) -> usize {
        self.istar_trace(w)
            .iter()
            .filter(|(_, k)| *k == TwistKind::Mul)
            .count()
    }

    pub fn bruhat_leq_twisted(&self, y: &TwistedInvolution, w: &TwistedInvolution) -> bool {
        is_subsequence(&self.istar_expression(y), &self.istar_expression(w))
    }

    /// All of I_* with `ρ <= max_rho`, in canonical order.
    pub fn enumerate_involutions(
        &self,
        max_rho: usize,
        cap: usize,
    ) -> Result<Vec<TwistedInvolution>> {
        let n = self.gen_count() as u128;
        let mut total: u128 = 1;
        let mut level: u128 = 1;
        for r in 1..=max_rho {
            level = if r == 1 {
                n
            } else {
                level.saturating_mul(n - 1)
            };
            total = total.saturating_add(level);
            if total > cap as u128 {
                return Err(Error::ResourceLimit { cap });
            }
            if level == 0 {
                break;
            }
        }
        let mut out = vec![TwistedInvolution::identity()];
        let mut frontier = vec![TwistedInvolution::identity()];
        for _ in 0..max_rho {
            let mut next = Vec::new();
            for w in &frontier {
                for s in self.generators() {
                    if w.first() != Some(s) {
                        next.push(self.twist(s, w));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort();
        Ok(out)
    }

    /// All `y ∈ I_*` with `y <= w`, in canonical order.
    pub fn twisted_lower_interval(&self, w: &TwistedInvolution) -> Vec<TwistedInvolution> {
        let expr = self.istar_expression(w);
        let mut found = BTreeSet::new();
        let mut cur = Vec::new();
        self.sub_expressions(&expr, 0, &mut cur, &mut found);
        found.into_iter().collect()
    }

    fn sub_expressions(
        &self,
        expr: &[Gen],
        from: usize,
        cur: &mut Vec<Gen>,
        out: &mut BTreeSet<TwistedInvolution>,
    ) {
        out.insert(self.fold_expression(cur));
        for i in from..expr.len() {
            if cur.last() == Some(&expr[i]) {
                continue;
            }
            cur.push(expr[i]);
            self.sub_expressions(expr, i + 1, cur, out);
            cur.pop();
        }
    }
}
