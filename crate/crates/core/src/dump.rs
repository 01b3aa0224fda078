//! Full tables in cache format.

use rayon::prelude::*;

use crate::cache::header;
use crate::error::Result;
use crate::hecke::{h_tilde, kl_product};
use crate::module::{h_sigma, TklTable};
use crate::positivity::Bounds;
use crate::word::CoxeterSpec;

/// `P`, `Psig`, `h`, `htilde` and `hsig` lines for everything within `bounds`,
/// in canonical order. Independent of the thread count.
///
/// Free elements range over `ℓ <= max_len` and twisted involutions over
/// `ρ <= max_rho`.
pub fn dump(spec: &CoxeterSpec, bounds: Bounds, cap: usize) -> Result<String> {
    let words = spec.enumerate_words(bounds.max_len, cap)?;
    let invs = spec.enumerate_involutions(bounds.max_rho, cap)?;
    let mut out = header(spec);
    out.push('\n');

    let p_blocks: Vec<Result<String>> = words
        .par_iter()
        .map_init(
            || TklTable::new(spec.clone()),
            |t, w| {
                let mut s = String::new();
                for y in w.lower_interval() {
                    s.push_str(&format!("P\t{y}\t{w}\t{}\n", t.kl.kl_fast(&y, w)?));
                }
                Ok(s)
            },
        )
        .collect();
    let psig_blocks: Vec<Result<String>> = invs
        .par_iter()
        .map_init(
            || TklTable::new(spec.clone()),
            |t, w| {
                let mut s = String::new();
                for y in spec.twisted_lower_interval(w) {
                    s.push_str(&format!("Psig\t{y}\t{w}\t{}\n", t.tkl_fast(&y, w)?));
                }
                Ok(s)
            },
        )
        .collect();
    let h_blocks: Vec<Result<String>> = words
        .par_iter()
        .map(|x| {
            let mut s = String::new();
            for y in &words {
                for (z, c) in kl_product(x, y).display_terms() {
                    s.push_str(&format!("h\t{x}\t{y}\t{z}\t{c}\n"));
                }
            }
            for y in &invs {
                for (z, c) in h_tilde(spec, x, y.word())?.display_terms() {
                    s.push_str(&format!("htilde\t{x}\t{y}\t{z}\t{c}\n"));
                }
                for (z, c) in h_sigma(spec, x, y).display_terms() {
                    s.push_str(&format!("hsig\t{x}\t{y}\t{z}\t{c}\n"));
                }
            }
            Ok(s)
        })
        .collect();
    for block in p_blocks.into_iter().chain(psig_blocks).chain(h_blocks) {
        out.push_str(&block?);
    }
    Ok(out)
}
