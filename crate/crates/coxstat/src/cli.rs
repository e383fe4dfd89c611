//! The `coxstat` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coxstat_core::elements::ClassicalGroup;
use coxstat_core::interplab::{lagrange_guess, summarize, target_points, Target, DEFAULT_K_MAX};
use coxstat_core::limits::{des_point, des_report, inv_point, inv_report, llt_sup_distance, triangular_array_diagnostics, SequenceSpec};
use coxstat_core::moments::moments_from_polynomial;
use coxstat_core::numeric::rational_string;
use coxstat_core::polynomials::{gf, GfOptions, TallyProvider};
use coxstat_core::rootsys::RootSystem;
use coxstat_core::{CoxeterDescriptor, ExactPolynomial, Statistic};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cache::{resolve_cache_dir, FileCache, MemoryCache};
use crate::error::{Error, Result};
use crate::ingest::{ingest, Format};
use crate::io;
use crate::verify::{resolve_suites, run_suite, Context};

#[derive(Debug, Parser)]
#[command(name = "coxstat", version, about = "Inversion and descent statistics of finite Coxeter groups")]
pub struct Cli {
    /// Worker threads for sweeps and suites (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for random sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tally cache directory; falls back to $COXSTAT_CACHE.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Group descriptor, e.g. "A5", "B4", "I2(7)", "A1^3 x I2(5)".
    #[arg(long)]
    pub group: String,
    /// inv, des, ides or des+ides.
    #[arg(long, default_value = "inv")]
    pub stat: String,
    /// Permit enumerating E8.
    #[arg(long)]
    pub allow_e8: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of the generating function, constant term first.
    Gf(GroupArgs),
    /// Exact mean, variance, central moments and cumulants.
    Moments {
        #[command(flatten)]
        group: GroupArgs,
        /// Highest moment order.
        #[arg(long, default_value_t = 4)]
        k_max: usize,
        /// Also report the triangular-array diagnostics at this ε (inv, des).
        #[arg(long)]
        lindeberg: Option<f64>,
        /// Include the generating function.
        #[arg(long)]
        emit_poly: bool,
    },
    /// Central limit diagnostics along a sequence of groups.
    Clt {
        /// Sequence rule, e.g. "prod(I2(i), i=1..n)" or "A1^(n-2) x I2(n)".
        #[arg(long)]
        spec: String,
        /// inv or des.
        #[arg(long, default_value = "inv")]
        stat: String,
        /// Range of n as a..b.
        #[arg(long, default_value = "10..200")]
        range: String,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// Sup distance between scaled point probabilities and the normal density.
    Llt {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        emit_poly: bool,
    },
    /// Moments, normalized cumulants and formula guesses for a dataset.
    Interp {
        /// Input file.
        #[arg(long, required_unless_present = "fetch")]
        input: Option<PathBuf>,
        /// values_json, histogram_json or findstat_csv.
        #[arg(long, default_value = "values_json")]
        format: String,
        #[arg(long, value_enum, default_value_t = InterpTarget::Variance)]
        target: InterpTarget,
        /// FindStat identifier, read from the cache (downloaded with the `fetch` feature).
        #[arg(long, conflicts_with = "input")]
        fetch: Option<String>,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// Run oracle suites by number, name, or "all".
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Print every check, not just failures.
        #[arg(long)]
        verbose: bool,
    },
    /// Print elements with their statistics.
    Enumerate {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 20)]
        limit: usize,
        /// Uniform random elements (from --seed) instead of the first ones.
        #[arg(long)]
        sample: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InterpTarget {
    Mean,
    Variance,
}

/// Exit status: 0 success, 1 failure, 2 usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let mut buf = Vec::new();
    let result = pool.install(|| execute(&cli, &mut buf));
    let _ = out.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, Error::Usage(_)) {
                2
            } else {
                1
            }
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Error {
    Error::Usage(e.to_string())
}

fn parse_group(text: &str) -> Result<CoxeterDescriptor> {
    if text.trim().is_empty() {
        return Err(usage("--group must not be empty"));
    }
    text.parse().map_err(|e| usage(format!("--group: {e}")))
}

fn parse_stat(text: &str) -> Result<Statistic> {
    text.parse().map_err(|e| usage(format!("--stat: {e}")))
}

fn parse_range(text: &str) -> Result<(i64, i64)> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| usage(format!("--range: expected a..b, got '{text}'")))?;
    let a = a.trim().parse().map_err(|_| usage(format!("--range: bad start '{a}'")))?;
    let b = b.trim().trim_start_matches('=').parse().map_err(|_| usage(format!("--range: bad end '{b}'")))?;
    if b < a {
        return Err(usage("--range: empty range"));
    }
    Ok((a, b))
}

fn provider(cli: &Cli) -> Result<MemoryCache> {
    let backing = resolve_cache_dir(cli.cache_dir.as_deref()).map(FileCache::new).transpose()?;
    Ok(MemoryCache::with_backing(backing))
}

fn print_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?).map_err(|e| Error::io("<stdout>", e))
}

fn compute_gf(g: &GroupArgs, provider: &dyn TallyProvider) -> Result<(CoxeterDescriptor, Statistic, ExactPolynomial)> {
    let d = parse_group(&g.group)?;
    let stat = parse_stat(&g.stat)?;
    let opts = GfOptions {
        allow_e8: g.allow_e8,
        ..GfOptions::default()
    };
    let f = gf(&d, stat, &opts, provider)?;
    Ok((d, stat, f))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Gf(g) => {
            let (_, _, f) = compute_gf(g, &provider(cli)?)?;
            writeln!(out, "{}", io::poly_to_json(&f)).map_err(|e| Error::io("<stdout>", e))?;
        }
        Command::Moments {
            group,
            k_max,
            lindeberg,
            emit_poly,
        } => {
            if *k_max < 2 {
                return Err(usage("--k-max must be at least 2"));
            }
            let (d, stat, f) = compute_gf(group, &provider(cli)?)?;
            let s = moments_from_polynomial(&f, *k_max)?;
            let mut v = io::summary_json(&d.to_string(), stat.name(), &s);
            if let Some(eps) = lindeberg {
                v["triangular_array"] = io::lindeberg_json(&triangular_array_diagnostics(&d, stat, *eps)?);
            }
            if *emit_poly {
                v["poly"] = io::poly_to_json(&f);
            }
            print_json(out, &v)?;
        }
        Command::Clt { spec, stat, range, emit } => {
            let stat = parse_stat(stat)?;
            let range = parse_range(range)?;
            let spec = SequenceSpec::parse(spec).map_err(|e| usage(format!("--spec: {e}")))?;
            let ns: Vec<i64> = (range.0..=range.1).collect();
            match stat {
                Statistic::Inv => {
                    let points = ns.par_iter().map(|&n| inv_point(&spec, n)).collect::<std::result::Result<Vec<_>, _>>()?;
                    let r = inv_report(&spec, points);
                    match emit {
                        Emit::Json => print_json(out, &io::inv_report_json(&r))?,
                        Emit::Table => {
                            let mut text = format!("# {} (inv): {} [{}]\n# n rank d_n s_n^2 d/s m/s\n", r.spec, r.verdict, r.ratio.rationale);
                            for p in &r.points {
                                text += &format!(
                                    "{} {} {} {} {:.6} {:.6}\n",
                                    p.n,
                                    p.rank,
                                    p.max_degree,
                                    rational_string(&p.variance),
                                    p.ratio(),
                                    p.m_ratio()
                                );
                            }
                            write!(out, "{text}").map_err(|e| Error::io("<stdout>", e))?;
                        }
                    }
                }
                Statistic::Des => {
                    let points = ns.par_iter().map(|&n| des_point(&spec, n)).collect::<std::result::Result<Vec<_>, _>>()?;
                    let r = des_report(&spec, points);
                    match emit {
                        Emit::Json => print_json(out, &io::des_report_json(&r))?,
                        Emit::Table => {
                            let mut text = format!(
                                "# {} (des): {} [{}]; A1 {} A2 {} B {}\n# n rank s_n^2 s_n\n",
                                r.spec, r.verdict, r.s.rationale, r.conditions.a1, r.conditions.a2, r.conditions.b
                            );
                            for (p, (_, s)) in r.points.iter().zip(&r.s.samples) {
                                text += &format!("{} {} {} {:.6}\n", p.n, p.rank, rational_string(&p.variance), s);
                            }
                            write!(out, "{text}").map_err(|e| Error::io("<stdout>", e))?;
                        }
                    }
                }
                other => return Err(usage(format!("--stat: clt supports inv and des, not {other}"))),
            }
        }
        Command::Llt { group, emit_poly } => {
            let (d, stat, f) = compute_gf(group, &provider(cli)?)?;
            let r = llt_sup_distance(&f)?;
            let mut v = io::llt_json(&d.to_string(), stat.name(), &r);
            if *emit_poly {
                v["poly"] = io::poly_to_json(&f);
            }
            print_json(out, &v)?;
        }
        Command::Interp {
            input,
            format,
            target,
            fetch,
            emit,
        } => {
            let format: Format = format.parse().map_err(usage)?;
            let ds = match (input, fetch) {
                (Some(path), _) => ingest(path, format)?,
                (None, Some(id)) => {
                    let dir = resolve_cache_dir(cli.cache_dir.as_deref())
                        .ok_or_else(|| usage("--fetch needs --cache-dir or $COXSTAT_CACHE"))?;
                    crate::findstat::fetch_findstat(id, &dir)?
                }
                (None, None) => return Err(usage("--input or --fetch is required")),
            };
            let rows = summarize(&ds, DEFAULT_K_MAX)?;
            let target = match target {
                InterpTarget::Mean => Target::Mean,
                InterpTarget::Variance => Target::Variance,
            };
            let points = target_points(&ds, target)?;
            let guesses = if points.len() >= 4 { lagrange_guess(&points)? } else { Vec::new() };
            match emit {
                Emit::Json => {
                    let mut v = io::summary_rows_json(&ds.name, &rows);
                    v["target"] = json!(if target == Target::Mean { "mean" } else { "variance" });
                    v["formulas"] = Value::Array(guesses.iter().map(io::formula_json).collect());
                    print_json(out, &v)?;
                }
                Emit::Table => {
                    let mut text = format!("# {}\n# n mean variance k3 k4 k5 k6 k7 k8\n", ds.name);
                    for r in &rows {
                        text += &format!(
                            "{} {} {} {}\n",
                            r.n,
                            rational_string(&r.mean),
                            rational_string(&r.variance),
                            if r.zero_variance() { "(zero variance)".to_string() } else { r.formatted().join(" ") }
                        );
                    }
                    for g in &guesses {
                        text += &format!("guess: {g}\n");
                    }
                    write!(out, "{text}").map_err(|e| Error::io("<stdout>", e))?;
                }
            }
        }
        Command::Verify { suite, verbose } => {
            let ids = resolve_suites(suite).ok_or_else(|| usage(format!("--suite: unknown suite '{suite}'")))?;
            let ctx = Context::new(provider(cli)?);
            let mut all = true;
            for id in ids {
                let report = run_suite(id, &ctx)?;
                all &= report.passed();
                writeln!(out, "{}", report.render(*verbose)).map_err(|e| Error::io("<stdout>", e))?;
            }
            return Ok(if all { 0 } else { 1 });
        }
        Command::Enumerate { group, limit, sample } => {
            let d = parse_group(group)?;
            enumerate(&d, *limit, sample.then_some(cli.seed), out)?;
        }
    }
    Ok(0)
}

fn enumerate(d: &CoxeterDescriptor, limit: usize, seed: Option<u64>, out: &mut dyn Write) -> Result<()> {
    let label = *d
        .as_irreducible()
        .map_err(|_| usage("enumerate needs an irreducible group"))?;
    let mut text = String::new();
    if label.is_classical() {
        let g = ClassicalGroup::from_label(&label)?;
        text += "# element inv des ides\n";
        let elements: Vec<_> = match seed {
            Some(s) => (0..limit as u64).map(|i| g.sample_uniform(s.wrapping_add(i))).collect(),
            None => g.enumerate_capped(coxstat_core::DEFAULT_ENUMERATION_CAP)?.take(limit).collect(),
        };
        for w in elements {
            text += &format!(
                "{w} {} {} {}\n",
                w.statistic(Statistic::Inv),
                w.statistic(Statistic::Des),
                w.statistic(Statistic::Ides)
            );
        }
    } else {
        if seed.is_some() {
            return Err(usage("--sample is only available for types A, B and D"));
        }
        let rs = RootSystem::build(&label)?;
        text += "# inversion-set inv des ides\n";
        for rec in rs.enumerate_inversion_sets(coxstat_core::DEFAULT_ENUMERATION_CAP)?.take(limit) {
            text += &format!(
                "{:#x} {} {} {}\n",
                rec.inversion_set,
                rec.length,
                rec.right_descents.count_ones(),
                rec.left_descents.count_ones()
            );
        }
    }
    write!(out, "{text}").map_err(|e| Error::io("<stdout>", e))
}
