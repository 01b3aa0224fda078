use std::fmt;
use std::str::FromStr;

use super::{gen_letter, letter_gen, Gen, Word, MAX_GENS};
use crate::error::{Error, Result};

/// A universal Coxeter system together with its diagram involution `*`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CoxeterSpec {
    gen_count: usize,
    star: Vec<Gen>,
}

impl CoxeterSpec {
    pub fn new(gen_count: usize, star: Vec<Gen>) -> Result<Self> {
        if gen_count == 0 || gen_count > MAX_GENS {
            return Err(Error::InvalidSpec(format!(
                "generator count must be in 1..={MAX_GENS}, got {gen_count}"
            )));
        }
        if star.len() != gen_count {
            return Err(Error::InvalidSpec("star has wrong size".into()));
        }
        for (i, &j) in star.iter().enumerate() {
            if j as usize >= gen_count {
                return Err(Error::InvalidGenerator(gen_letter(j).to_string()));
            }
            if star[j as usize] as usize != i {
                return Err(Error::InvalidSpec("star is not an involution".into()));
            }
        }
        Ok(CoxeterSpec { gen_count, star })
    }

    /// The system with trivial involution.
    pub fn untwisted(gen_count: usize) -> Result<Self> {
        Self::new(gen_count, (0..gen_count as Gen).collect())
    }

    /// Parses a star literal: `"id"` or a product of disjoint transpositions
    /// such as `"(a b)(c d)"`.
    pub fn with_star_literal(gen_count: usize, literal: &str) -> Result<Self> {
        if gen_count == 0 || gen_count > MAX_GENS {
            return Err(Error::InvalidSpec(format!(
                "generator count must be in 1..={MAX_GENS}, got {gen_count}"
            )));
        }
        let mut star: Vec<Gen> = (0..gen_count as Gen).collect();
        let lit = literal.trim();
        if lit == "id" || lit.is_empty() {
            return Self::new(gen_count, star);
        }
        let mut moved = vec![false; gen_count];
        let mut rest = lit;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("bad star literal `{literal}`")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{literal}`")))?;
            let cycle = open[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    let mut cs = t.chars();
                    match (cs.next().and_then(letter_gen), cs.next()) {
                        (Some(g), None) if (g as usize) < gen_count => Ok(g),
                        _ => Err(Error::InvalidGenerator(t.to_string())),
                    }
                })
                .collect::<Result<Vec<Gen>>>()?;
            match cycle[..] {
                [a] => {
                    if moved[a as usize] {
                        return Err(Error::Parse(format!("cycles overlap in `{literal}`")));
                    }
                    moved[a as usize] = true;
                }
                [a, b] if a != b => {
                    if moved[a as usize] || moved[b as usize] {
                        return Err(Error::Parse(format!("cycles overlap in `{literal}`")));
                    }
                    moved[a as usize] = true;
                    moved[b as usize] = true;
                    star[a as usize] = b;
                    star[b as usize] = a;
                }
                _ => {
                    return Err(Error::InvalidSpec(format!(
                        "star must be a product of disjoint transpositions, got `{literal}`"
                    )))
                }
            }
            rest = open[close + 1..].trim_start();
        }
        Self::new(gen_count, star)
    }

    pub fn gen_count(&self) -> usize {
        self.gen_count
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> {
        0..self.gen_count as Gen
    }

    pub fn star_gen(&self, s: Gen) -> Gen {
        self.star[s as usize]
    }

    pub fn is_star_fixed(&self, s: Gen) -> bool {
        self.star[s as usize] == s
    }

    pub fn star_is_identity(&self) -> bool {
        self.generators().all(|s| self.is_star_fixed(s))
    }

    /// Canonical text form of the involution: `id` or `(a b)(c d)`.
    pub fn star_literal(&self) -> String {
        if self.star_is_identity() {
            return "id".into();
        }
        let mut out = String::new();
        for s in self.generators() {
            let t = self.star_gen(s);
            if s < t {
                out.push_str(&format!("({} {})", gen_letter(s), gen_letter(t)));
            }
        }
        out
    }

    pub fn check_gen(&self, s: Gen) -> Result<Gen> {
        if (s as usize) < self.gen_count {
            Ok(s)
        } else {
            Err(Error::InvalidGenerator(gen_letter(s).to_string()))
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        for &s in w.letters() {
            self.check_gen(s)?;
        }
        Ok(())
    }

    /// Reduces a raw generator sequence, rejecting out-of-range indices.
    pub fn reduce(&self, letters: &[Gen]) -> Result<Word> {
        for &s in letters {
            self.check_gen(s)?;
        }
        Ok(Word::reduce(letters.iter().copied()))
    }

    /// Parses a word literal (`"e"` or a string of letters).
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let w = Word::parse_unchecked(s)?;
        self.check_word(&w)?;
        Ok(w)
    }

    pub fn star(&self, w: &Word) -> Word {
        Word(w.letters().iter().map(|&s| self.star_gen(s)).collect())
    }

    /// `w† = (w*)^{-1}`.
    pub fn dagger(&self, w: &Word) -> Word {
        Word(
            w.letters()
                .iter()
                .rev()
                .map(|&s| self.star_gen(s))
                .collect(),
        )
    }

    /// `s w s*`.
    pub fn conj(&self, s: Gen, w: &Word) -> Word {
        w.left_mul(s).right_mul(self.star_gen(s))
    }

    /// Whether `w^{-1} = w*`.
    pub fn is_twisted_involution(&self, w: &Word) -> bool {
        self.dagger(w) == *w
    }

    /// All reduced words of length at most `max_len` in canonical order.
    pub fn enumerate_words(&self, max_len: usize, cap: usize) -> Result<Vec<Word>> {
        let n = self.gen_count as u128;
        let mut total: u128 = 1;
        let mut level: u128 = 1;
        for l in 1..=max_len {
            level = if l == 1 {
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
        let mut out = vec![Word::identity()];
        let mut frontier = vec![Word::identity()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for s in self.generators() {
                    if w.last() != Some(s) {
                        let mut v = w.letters().to_vec();
                        v.push(s);
                        next.push(Word(v));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(out)
    }
}

impl fmt::Display for CoxeterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens={} star={}", self.gen_count, self.star_literal())
    }
}

impl FromStr for CoxeterSpec {
    type Err = Error;

    /// Parses the `gens=<n> star=<perm>` form produced by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let rest = s
            .strip_prefix("gens=")
            .ok_or_else(|| Error::Parse(format!("bad system `{s}`")))?;
        let (n, star) = rest
            .split_once(" star=")
            .ok_or_else(|| Error::Parse(format!("bad system `{s}`")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator count `{n}`")))?;
        Self::with_star_literal(n, star)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_literals() {
        let spec = CoxeterSpec::with_star_literal(4, "(a b)(c d)").unwrap();
        assert_eq!(spec.star_gen(0), 1);
        assert_eq!(spec.star_gen(3), 2);
        assert_eq!(spec.star_literal(), "(a b)(c d)");
        assert!(CoxeterSpec::with_star_literal(3, "id")
            .unwrap()
            .star_is_identity());
        assert!(CoxeterSpec::with_star_literal(3, "(a b c)").is_err());
        assert!(CoxeterSpec::with_star_literal(3, "(a b)(b c)").is_err());
        assert!(CoxeterSpec::with_star_literal(2, "(a c)").is_err());
        assert!(CoxeterSpec::with_star_literal(0, "id").is_err());
        assert!(CoxeterSpec::with_star_literal(27, "id").is_err());
        assert!(CoxeterSpec::new(3, vec![1, 2, 0]).is_err());
    }

    #[test]
    fn display_round_trip() {
        let spec = CoxeterSpec::with_star_literal(5, "(b e)").unwrap();
        let back: CoxeterSpec = spec.to_string().parse().unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn star_and_dagger() {
        let swap = CoxeterSpec::with_star_literal(2, "(a b)").unwrap();
        let id = CoxeterSpec::untwisted(2).unwrap();
        let ab = id.parse_word("ab").unwrap();
        assert_eq!(swap.star(&ab).to_string(), "ba");
        assert_eq!(id.dagger(&ab).to_string(), "ba");
        assert_eq!(swap.dagger(&ab).to_string(), "ab");
    }

    #[test]
    fn invalid_generator() {
        let spec = CoxeterSpec::untwisted(2).unwrap();
        assert!(matches!(
            spec.parse_word("abc"),
            Err(Error::InvalidGenerator(_))
        ));
        assert!(matches!(
            spec.reduce(&[0, 5]),
            Err(Error::InvalidGenerator(_))
        ));
        assert_eq!(spec.reduce(&[0, 1, 1, 0, 2 - 1]).unwrap().to_string(), "b");
    }

    #[test]
    fn enumerate_counts() {
        let s3 = CoxeterSpec::untwisted(3).unwrap();
        let words: Vec<String> = s3
            .enumerate_words(1, 100)
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["e", "a", "b", "c"]);
        let s2 = CoxeterSpec::untwisted(2).unwrap();
        let words: Vec<String> = s2
            .enumerate_words(2, 100)
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["e", "a", "b", "ab", "ba"]);
        for l in 1..=6usize {
            let all = s3.enumerate_words(l, 10_000).unwrap();
            let at_l = all.iter().filter(|w| w.len() == l).count();
            assert_eq!(at_l, 3 * 2usize.pow(l as u32 - 1));
        }
        assert!(matches!(
            s3.enumerate_words(20, 1000),
            Err(Error::ResourceLimit { cap: 1000 })
        ));
        // A single generator gives a group of order two.
        let s1 = CoxeterSpec::untwisted(1).unwrap();
        assert_eq!(s1.enumerate_words(5, 10).unwrap().len(), 2);
    }
}
