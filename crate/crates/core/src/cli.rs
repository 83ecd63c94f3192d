//! Command-line front end. Exit codes: 0 success, 1 usage error,
//! 2 node budget exceeded, 3 verification failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{case_matrix, char_poly_check, growth_polynomial, largest_root};
use crate::census::{count_f, enumerate, zaremba_witness, CensusOptions, CensusQuery, Mode};
use crate::construction::{generate_with, Scheme, SeedCache};
use crate::error::{Error, Result};
use crate::report::{self, CountRow};
use crate::verify::{self, Limits, Status, Suite};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "continuants", version, about = "Exact continuant census, doubling constructions and growth bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the payload here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for parallel searches (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Abort a census after visiting this many nodes.
    #[arg(long, global = true, default_value_t = crate::census::DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count sequences with elements below N whose continuant is a^m.
    Count {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        m: u32,
        /// Exclusive element bound N.
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value = "sequences")]
        mode: Mode,
        /// Also emit every sequence found.
        #[arg(long)]
        list: bool,
    },
    /// Build sequences for a^m with elements below a^s by repeated doubling.
    Witnesses {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        m: u32,
        /// Text file caching seed searches between runs.
        #[arg(long)]
        seed_cache: Option<PathBuf>,
    },
    /// Growth polynomial, its largest root, and the transfer matrix check.
    Roots {
        #[arg(long)]
        s: u32,
    },
    /// Run verification suites; exits 3 if any check fails.
    Verify {
        /// Suites to run (default: all).
        #[arg(value_parser = parse_suite)]
        suites: Vec<Suite>,
        #[arg(long, default_value_t = Limits::default().m_max)]
        m_max: u32,
        #[arg(long, default_value_t = Limits::default().s_max)]
        s_max: u32,
        #[arg(long, default_value_t = Limits::default().k_max)]
        k_max: u32,
        #[arg(long, default_value_t = Limits::default().census_m_max)]
        census_m_max: u32,
    },
    /// Smallest c with c/d having all partial quotients below N.
    Zaremba {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        bound: u64,
    },
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Runs a parsed command and returns its exit code.
pub fn execute(cli: Cli) -> Result<u8> {
    let c = &cli.common;
    let census = CensusOptions { node_budget: c.node_budget, workers: c.workers };
    let mut out = sink(&c.output)?;
    let code = match cli.command {
        Command::Count { a, m, bound, mode, list } => {
            let result = count_f(a, m, bound, mode, &census)?;
            let seqs = if list { Some(enumerate(&CensusQuery::power(a, m, bound, mode)?, &census)?) } else { None };
            let row = CountRow::new(a, m, bound, mode, &result);
            match c.format {
                Format::Text => {
                    writeln!(out, "f({a}^{m}, {bound}) = {} ({mode})", result.count)?;
                    writeln!(out, "nodes visited: {}", result.nodes_visited)?;
                    writeln!(out, "elapsed: {} ms", row.millis)?;
                    for u in seqs.iter().flatten() {
                        writeln!(out, "{u}")?;
                    }
                }
                Format::Json => match &seqs {
                    Some(s) => report::sequences_json(&mut out, s)?,
                    None => report::write_json_lines(&mut out, [&row])?,
                },
                Format::Csv => report::count_csv(&mut out, &[row])?,
            }
            0
        }
        Command::Witnesses { a, s, m, seed_cache } => {
            let cache = match seed_cache {
                Some(p) => SeedCache::open(p)?,
                None => SeedCache::in_memory(),
            };
            let scheme = Scheme::power(a, s)?;
            let set = generate_with(&scheme, m, &cache)?;
            eprintln!("{} sequences with continuant {a}^{m}, elements below {}", set.len(), scheme.bound());
            match c.format {
                Format::Json => report::witnesses_json(&mut out, &set)?,
                Format::Text | Format::Csv => {
                    for (u, steps) in &set.members {
                        let trace = steps
                            .iter()
                            .map(|st| serde_json::to_string(st).unwrap_or_default())
                            .collect::<Vec<_>>()
                            .join(" ");
                        if c.format == Format::Csv {
                            let elems = u.as_slice().iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
                            writeln!(out, "\"{elems}\",{}", u.len())?;
                        } else {
                            writeln!(out, "{u}  {trace}")?;
                        }
                    }
                }
            }
            0
        }
        Command::Roots { s } => {
            let cp = growth_polynomial(s)?;
            let root = largest_root(&cp)?;
            let matrix = case_matrix(s).ok();
            let matches = if matrix.is_some() { Some(char_poly_check(s)?) } else { None };
            let power = matrix.as_ref().map(|m| m.matrix.scale(2).perron_root());
            match c.format {
                Format::Text => {
                    writeln!(out, "s = {s} ({})", cp.case)?;
                    writeln!(out, "polynomial: {}", cp.poly)?;
                    writeln!(out, "largest root: {:.15}", root.lambda)?;
                    writeln!(out, "residual: {:.3e}", root.residual)?;
                    if let (Some(m), Some(ok), Some(p)) = (&matrix, matches, power) {
                        writeln!(out, "matrix A: {}", m.matrix)?;
                        writeln!(out, "char poly of 2A matches: {ok}")?;
                        writeln!(out, "power iteration on 2A: {p:.15}")?;
                    }
                }
                Format::Json | Format::Csv => {
                    let v = json!({
                        "s": s,
                        "case": cp.case,
                        "polynomial": cp.poly.to_string(),
                        "lambda": root.lambda,
                        "residual": root.residual,
                        "matrix": matrix.as_ref().and_then(|m| m.matrix.to_i64_rows()),
                        "char_poly_matches": matches,
                        "power_iteration": power,
                    });
                    if c.format == Format::Json {
                        emit_json(&mut out, &v)?;
                    } else {
                        writeln!(out, "s,case,polynomial,lambda,char_poly_matches")?;
                        writeln!(
                            out,
                            "{s},{},{},{},{}",
                            cp.case,
                            cp.poly,
                            root.lambda,
                            matches.map(|b| b.to_string()).unwrap_or_default()
                        )?;
                    }
                }
            }
            0
        }
        Command::Verify { suites, m_max, s_max, k_max, census_m_max } => {
            let limits = Limits { m_max, s_max, k_max, census_m_max, census };
            let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites };
            let mut failed = false;
            let mut all = verify::Outcome::default();
            for s in suites {
                eprintln!("running {s}");
                let o = verify::run(s, &limits)?;
                failed |= o.failed();
                all.extend(o);
            }
            match c.format {
                Format::Text => {
                    for ch in &all.checks {
                        let tag = match ch.status {
                            Status::Pass => "PASS",
                            Status::Fail => "FAIL",
                            Status::Info => "INFO",
                        };
                        writeln!(out, "{tag} {:<10} {}: {}", ch.suite.name(), ch.name, ch.detail)?;
                    }
                    for r in &all.reports {
                        writeln!(out, "{}", report::bound_line(r))?;
                    }
                }
                Format::Json => {
                    report::write_json_lines(&mut out, &all.checks)?;
                    report::bounds_json(&mut out, &all.reports)?;
                }
                Format::Csv => report::bounds_csv(&mut out, &all.reports)?,
            }
            if failed {
                EXIT_VERIFY
            } else {
                0
            }
        }
        Command::Zaremba { d, bound } => {
            if d < 2 || bound < 2 {
                return Err(Error::OutOfRange("need d >= 2 and N >= 2".into()));
            }
            let w = zaremba_witness(d, bound);
            match c.format {
                Format::Text => match &w {
                    Some(w) => writeln!(out, "{}/{d} = [0; {}]", w.numerator, w.expansion)?,
                    None => writeln!(out, "none")?,
                },
                Format::Json => emit_json(
                    &mut out,
                    &match &w {
                        Some(w) => {
                            json!({"d": d, "N": bound, "numerator": w.numerator, "expansion": w.expansion.as_slice()})
                        }
                        None => json!({"d": d, "N": bound, "numerator": null, "expansion": null}),
                    },
                )?,
                Format::Csv => {
                    writeln!(out, "d,N,numerator,expansion")?;
                    match &w {
                        Some(w) => writeln!(out, "{d},{bound},{},\"{}\"", w.numerator, w.expansion)?,
                        None => writeln!(out, "{d},{bound},,")?,
                    }
                }
            }
            0
        }
    };
    out.flush()?;
    Ok(code)
}

/// Maps an error to its exit code.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` and runs; errors go to standard error.
pub fn run_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
