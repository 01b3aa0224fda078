//! The versioned on-disk table format.
//!
//! A header line `tklwb-cache v1 gens=<n> star=<perm>`, then one
//! tab-separated record per line: `P y w poly` for the untwisted table and
//! `Psig y w poly` for the twisted one.
//!
//! Structure-constant lines (`h`, `htilde`, `hsig`) are accepted and skipped
//! on load, so a dump doubles as a cache.

use std::fs;
use std::io::ErrorKind;
use std::path::Path;

use crate::error::{Error, Result};
use crate::laurent::QPoly;
use crate::module::TklTable;
use crate::word::{CoxeterSpec, TwistedInvolution};

pub const MAGIC: &str = "tklwb-cache v1";

pub fn header(spec: &CoxeterSpec) -> String {
    format!(
        "{MAGIC} gens={} star={}",
        spec.gen_count(),
        spec.star_literal()
    )
}

/// What happened when a cache file was read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoadOutcome {
    Missing,
    /// The header names a different system; nothing was loaded.
    Invalidated,
    Loaded {
        entries: usize,
    },
}

/// Seeds `table` from `path`.
pub fn load(path: &Path, table: &mut TklTable) -> Result<LoadOutcome> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == ErrorKind::NotFound => return Ok(LoadOutcome::Missing),
        Err(e) => return Err(e.into()),
    };
    let spec = table.spec().clone();
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.starts_with(MAGIC) => {
            if h != header(&spec) {
                return Ok(LoadOutcome::Invalidated);
            }
        }
        _ => {
            return Err(Error::Cache(format!(
                "{} has no {MAGIC} header",
                path.display()
            )))
        }
    }
    let mut entries = 0;
    for (n, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let bad = |why: &str| Error::Cache(format!("{}:{}: {why}", path.display(), n + 2));
        let fields: Vec<&str> = line.split('\t').collect();
        match fields[0] {
            "P" | "Psig" if fields.len() == 4 => {
                let y = spec
                    .parse_word(fields[1])
                    .map_err(|e| bad(&e.to_string()))?;
                let w = spec
                    .parse_word(fields[2])
                    .map_err(|e| bad(&e.to_string()))?;
                let p: QPoly = fields[3].parse().map_err(|e: Error| bad(&e.to_string()))?;
                if fields[0] == "P" {
                    table.kl.insert(y, w, p);
                } else {
                    let y = TwistedInvolution::new(&spec, y).map_err(|e| bad(&e.to_string()))?;
                    let w = TwistedInvolution::new(&spec, w).map_err(|e| bad(&e.to_string()))?;
                    table.insert(y, w, p);
                }
                entries += 1;
            }
            "h" | "htilde" | "hsig" if fields.len() == 5 => {}
            _ => return Err(bad("unrecognized line")),
        }
    }
    Ok(LoadOutcome::Loaded { entries })
}

/// The memo contents of `table` in cache format.
pub fn render(table: &TklTable) -> String {
    let mut out = header(table.spec());
    out.push('\n');
    for (y, w, p) in table.kl.entries() {
        out.push_str(&format!("P\t{y}\t{w}\t{p}\n"));
    }
    for (y, w, p) in table.entries() {
        out.push_str(&format!("Psig\t{y}\t{w}\t{p}\n"));
    }
    out
}

/// Writes the memo of `table` to `path`, replacing it atomically.
pub fn save(path: &Path, table: &TklTable) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, render(table))?;
    fs::rename(&tmp, path)?;
    Ok(())
}
