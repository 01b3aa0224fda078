use std::cmp::Reverse;
use std::fs;
use std::io::Write as _;
use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tklwb::cache::{self, LoadOutcome};
use tklwb::dump::dump;
use tklwb::hecke::{h_tilde, kl_product};
use tklwb::module::{h_sigma, TklTable};
use tklwb::positivity::{h_plus_minus, p_plus_minus, verify, Bounds, Check};
use tklwb::word::DEFAULT_CAP;
use tklwb::{CoxeterSpec, Error, Result, TwistedInvolution, Word};

#[derive(Parser)]
#[command(
    name = "tklwb",
    version,
    about = "Kazhdan-Lusztig polynomials for universal Coxeter systems"
)]
struct Cli {
    /// Number of generators, named a, b, c, ...
    #[arg(long, default_value_t = 3, global = true)]
    gens: usize,
    /// Diagram involution: `id` or disjoint swaps like `(a b)(c d)`.
    #[arg(long, default_value = "id", global = true)]
    star: String,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Table file to seed from and write back to.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Largest number of elements an enumeration may produce.
    #[arg(long, default_value_t = DEFAULT_CAP, global = true)]
    cap: usize,
    /// Worker threads for sweeps and dumps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Cmd {
    /// P_{y,w}
    Kl { y: String, w: String },
    /// Twisted P_{y,w}; both arguments twisted involutions.
    Tkl { y: String, w: String },
    /// Half-sum and half-difference of the untwisted and twisted polynomials.
    Pm { y: String, w: String },
    /// C_x A_y in the A-basis, or with --untwisted c_x c_y c_{x†} in the c-basis.
    Structure {
        x: String,
        y: String,
        #[arg(long)]
        untwisted: bool,
        /// Print the half-sum/half-difference of both expansions instead.
        #[arg(long, conflicts_with = "untwisted")]
        pm: bool,
    },
    /// c_x c_y in the c-basis.
    Product { x: String, y: String },
    /// C_s A_w in the A-basis.
    Mult { s: String, w: String },
    /// Twisted involutions with ρ <= MAX_RHO.
    Enum { max_rho: usize },
    /// Runs a sweep and prints its report; exits 1 on violations.
    Verify {
        /// One of the check ids, or `all`.
        check: String,
        #[arg(long, default_value_t = 4)]
        max_rho: usize,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Writes P, Psig, h, htilde and hsig tables in cache format.
    Dump {
        #[arg(long, default_value_t = 3)]
        max_rho: usize,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Ctx {
    spec: CoxeterSpec,
    format: Format,
    cap: usize,
    table: TklTable,
}

impl Ctx {
    fn word(&self, s: &str) -> Result<Word> {
        self.spec.parse_word(s)
    }

    fn inv(&self, s: &str) -> Result<TwistedInvolution> {
        self.spec.parse_involution(s)
    }

    fn poly_pair(&self, y: &str, w: &str, p: &dyn std::fmt::Display) -> String {
        match self.format {
            Format::Text => format!("{p}\n"),
            Format::Tsv => format!("{y}\t{w}\t{p}\n"),
            Format::Json => format!("{}\n", json!({ "y": y, "w": w, "poly": p.to_string() })),
        }
    }

    fn vector<K: tklwb::lincomb::BasisIndex>(
        &self,
        v: &tklwb::lincomb::LinComb<K>,
        basis: &str,
    ) -> String {
        match self.format {
            Format::Json => format!("{}\n", v.to_json(basis)),
            _ => v.to_text(),
        }
    }
}

/// Output, and whether the command found violations.
fn run(cli: Cli) -> Result<(String, bool)> {
    let spec = CoxeterSpec::with_star_literal(cli.gens, &cli.star)?;
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Internal(e.to_string()))?;
    }
    let mut table = TklTable::new(spec.clone());
    if let Some(path) = &cli.cache {
        if cache::load(path, &mut table)? == LoadOutcome::Invalidated {
            eprintln!(
                "tklwb: {} was written for another system; rebuilding",
                path.display()
            );
        }
    }
    let mut cx = Ctx {
        spec,
        format: cli.format,
        cap: cli.cap,
        table,
    };
    let out = command(&mut cx, cli.cmd)?;
    if let Some(path) = &cli.cache {
        cache::save(path, &cx.table)?;
    }
    Ok(out)
}

fn command(cx: &mut Ctx, cmd: Cmd) -> Result<(String, bool)> {
    let out = match cmd {
        Cmd::Kl { y, w } => {
            let (yw, ww) = (cx.word(&y)?, cx.word(&w)?);
            let p = cx.table.kl.kl_fast(&yw, &ww)?;
            cx.poly_pair(&y, &w, &p)
        }
        Cmd::Tkl { y, w } => {
            let (yi, wi) = (cx.inv(&y)?, cx.inv(&w)?);
            let p = cx.table.tkl_fast(&yi, &wi)?;
            cx.poly_pair(&y, &w, &p)
        }
        Cmd::Pm { y, w } => {
            let (yi, wi) = (cx.inv(&y)?, cx.inv(&w)?);
            let pm = p_plus_minus(&mut cx.table, &yi, &wi)?;
            match cx.format {
                Format::Text => format!("plus: {}  minus: {}\n", pm.plus, pm.minus),
                Format::Tsv => format!("{y}\t{w}\t{}\t{}\n", pm.plus, pm.minus),
                Format::Json => format!(
                    "{}\n",
                    json!({ "y": y, "w": w, "plus": pm.plus.to_string(), "minus": pm.minus.to_string() })
                ),
            }
        }
        Cmd::Structure {
            x,
            y,
            untwisted,
            pm,
        } => {
            let xw = cx.word(&x)?;
            let yi = cx.inv(&y)?;
            if pm {
                let rows = h_plus_minus(&cx.table, &xw, &yi)?;
                let mut rows: Vec<_> = rows.into_iter().collect();
                rows.sort_by_key(|(z, _)| (Reverse(z.word().len()), z.clone()));
                match cx.format {
                    Format::Json => {
                        let v: Vec<_> = rows
                            .iter()
                            .map(|(z, p)| {
                                json!([z.to_string(), p.plus.to_string(), p.minus.to_string()])
                            })
                            .collect();
                        format!("{}\n", json!({ "x": x, "y": y, "terms": v }))
                    }
                    _ => rows
                        .iter()
                        .map(|(z, p)| format!("{z}\t{}\t{}\n", p.plus, p.minus))
                        .collect(),
                }
            } else if untwisted {
                cx.vector(&h_tilde(&cx.spec, &xw, yi.word())?, "c")
            } else {
                cx.vector(&h_sigma(&cx.spec, &xw, &yi), "A")
            }
        }
        Cmd::Product { x, y } => {
            let v = kl_product(&cx.word(&x)?, &cx.word(&y)?);
            cx.vector(&v, "c")
        }
        Cmd::Mult { s, w } => {
            let sw = cx.word(&s)?;
            if sw.len() != 1 {
                return Err(Error::InvalidGenerator(s));
            }
            let wi = cx.inv(&w)?;
            let v = cx.table.cs_times_a(sw.letters()[0], &wi)?;
            cx.vector(&v, "A")
        }
        Cmd::Enum { max_rho } => enumerate(cx, max_rho)?,
        Cmd::Verify {
            check,
            max_rho,
            max_len,
        } => {
            let bounds = Bounds { max_rho, max_len };
            let checks = if check == "all" {
                let fixed = cx.spec.generators().any(|s| cx.spec.is_star_fixed(s));
                if fixed {
                    eprintln!("tklwb: skipping regular-embedding, the star has fixed points");
                }
                Check::ALL
                    .iter()
                    .copied()
                    .filter(|&c| !(fixed && c == Check::RegularEmbedding))
                    .collect()
            } else {
                vec![check.parse::<Check>()?]
            };
            let mut out = String::new();
            let mut failed = false;
            for c in checks {
                let report = verify(&cx.spec, c, bounds, cx.cap)?;
                failed |= !report.passed();
                match cx.format {
                    Format::Tsv => {
                        for v in &report.violations {
                            out.push_str(&format!(
                                "{}\t{}\t{}\n",
                                v.check,
                                v.witness.join(","),
                                v.detail
                            ));
                        }
                    }
                    _ => {
                        out.push_str(&report.to_json());
                        out.push('\n');
                    }
                }
            }
            return Ok((out, failed));
        }
        Cmd::Dump {
            max_rho,
            max_len,
            out,
        } => {
            let text = dump(&cx.spec, Bounds { max_rho, max_len }, cx.cap)?;
            match out {
                Some(path) => {
                    fs::write(path, text)?;
                    String::new()
                }
                None => text,
            }
        }
    };
    Ok((out, false))
}

fn enumerate(cx: &Ctx, max_rho: usize) -> Result<String> {
    let invs = cx.spec.enumerate_involutions(max_rho, cx.cap)?;
    let row = |w: &TwistedInvolution| {
        (
            w.to_string(),
            cx.spec.rho(w),
            w.word().len(),
            cx.spec.ell_star(w),
        )
    };
    Ok(match cx.format {
        Format::Json => {
            let rows: Vec<_> = invs
                .iter()
                .map(|w| {
                    let (s, r, l, ls) = row(w);
                    json!({ "w": s, "rho": r, "len": l, "ell_star": ls })
                })
                .collect();
            format!("{}\n", serde_json::Value::Array(rows))
        }
        f => {
            let mut out = String::new();
            if f == Format::Tsv {
                out.push_str("w\trho\tlen\tell_star\n");
            }
            for w in &invs {
                let (s, r, l, ls) = row(w);
                out.push_str(&format!("{s}\t{r}\t{l}\t{ls}\n"));
            }
            out
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    panic::set_hook(Box::new(|info| eprintln!("tklwb: internal error: {info}")));
    match panic::catch_unwind(move || run(cli)) {
        Ok(Ok((out, failed))) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::from(u8::from(failed))
        }
        Ok(Err(e)) => {
            eprintln!("tklwb: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(_) => ExitCode::from(3),
    }
}
