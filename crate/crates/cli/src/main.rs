mod cache;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use spl_core::bezout::{best_uniform_bound, certify_lower_bound, replay, BaseFact, Certificate, Outcome, ReductionClaim};
use spl_core::catalog::{build, incidence, ConfigId};
use spl_core::groebner::{buchberger_with, Budget, GroebnerBasis};
use spl_core::hilbert::{beta, hilbert_series};
use spl_core::idealops::IdealHandle;
use spl_core::polyexpr::{parse_poly, print_poly};
use spl_core::polyring::{MonomialOrder, Ring};
use spl_core::report::Report;
use spl_core::symbolic::{alpha_symbolic_with, symbolic_power_with, waldschmidt_report, SandwichOptions, Strategy};
use spl_core::verify::{self, check_containment, IdealSpec, SPEC_GRAMMAR};
use spl_core::Error;

use cache::Cache;

#[derive(Parser)]
#[command(name = "spl", version, about = "Symbolic powers of line-arrangement ideals, computed exactly")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Write the JSON report here.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write a flat CSV projection of the report here.
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Wall-clock limit per computation.
    #[arg(long, global = true, default_value_t = 600.0)]
    budget_seconds: f64,
    /// Largest intermediate basis allowed.
    #[arg(long, global = true, default_value_t = 20000)]
    budget_basis: usize,
    /// Abort when a basis element exceeds this degree.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Worker threads (default: number of processors).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

impl Global {
    fn budget(&self) -> Budget {
        Budget {
            seconds: Some(self.budget_seconds),
            max_basis: Some(self.budget_basis),
            max_degree: self.max_degree,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Groebner basis of an ideal (cached on disk).
    Gb {
        #[arg(long)]
        ideal: IdealSpec,
        /// lex, grevlex or block<k>.
        #[arg(long, default_value = "grevlex")]
        order: String,
    },
    /// Ideal membership of a polynomial.
    Member {
        #[arg(long)]
        ideal: IdealSpec,
        #[arg(long)]
        poly: String,
    },
    /// Generators of a symbolic power.
    Symbolic {
        #[arg(long)]
        config: ConfigId,
        #[arg(long)]
        m: u32,
    },
    /// Initial degree of a symbolic power.
    Alpha {
        #[arg(long)]
        config: ConfigId,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value = "sandwich")]
        strategy: Strategy,
        /// Close the sandwich with Bezout certificates.
        #[arg(long)]
        bezout: bool,
    },
    /// Running bounds for the Waldschmidt constant.
    Waldschmidt {
        #[arg(long)]
        config: ConfigId,
        #[arg(long)]
        m_max: u32,
        #[arg(long, default_value = "sandwich")]
        strategy: Strategy,
    },
    /// Decide a containment between two ideal specs.
    Contain {
        #[arg(long)]
        left: IdealSpec,
        #[arg(long)]
        right: IdealSpec,
    },
    /// Harbourne–Huneke containment grid.
    Hh {
        #[arg(long)]
        config: ConfigId,
        #[arg(long, default_value_t = 3)]
        r_max: u32,
    },
    /// Bezout-reduction lower bound for alpha of a symbolic power.
    Bezout {
        #[arg(long)]
        config: ConfigId,
        #[arg(long)]
        m: u32,
        /// Certify alpha >= d+1. Without it the best bound is searched.
        #[arg(long)]
        d: Option<i64>,
        /// Known alpha of a symbolic power, as `m=alpha`.
        #[arg(long = "base-fact", value_parser = parse_base_fact)]
        base_facts: Vec<(u32, u32)>,
        /// Replay a saved certificate instead of proving.
        #[arg(long, value_name = "PATH")]
        replay: Option<PathBuf>,
    },
    /// Check a claimed free resolution.
    Resolution {
        #[arg(long)]
        config: ConfigId,
        /// Power of the ideal (b3 family only).
        #[arg(long, default_value_t = 2)]
        r: u32,
    },
    /// Hilbert series of R/I.
    Hilbert {
        #[arg(long)]
        ideal: IdealSpec,
    },
    /// Least degree whose piece cuts out a zero-dimensional locus.
    Beta {
        #[arg(long)]
        ideal: IdealSpec,
    },
    /// Containment grid I^(m) in I^r for resurgence bounds.
    Grid {
        #[arg(long)]
        config: ConfigId,
        /// Pairs `m,r` separated by `;`, e.g. `3,2;5,4`.
        #[arg(long, value_parser = parse_pairs)]
        pairs: Pairs,
    },
    /// Regenerate the summary tables and flag disagreements.
    Tables,
    /// Every suite in one report.
    Report {
        /// Include the long-running containments.
        #[arg(long)]
        extended: bool,
    },
}

#[derive(Clone)]
struct Pairs(Vec<(u32, u32)>);

fn parse_pairs(s: &str) -> Result<Pairs, String> {
    s.split(';')
        .map(|p| {
            let (m, r) = p.split_once(',').ok_or_else(|| format!("bad pair `{p}`, expected m,r"))?;
            Ok((
                m.trim().parse().map_err(|_| format!("bad m in `{p}`"))?,
                r.trim().parse().map_err(|_| format!("bad r in `{p}`"))?,
            ))
        })
        .collect::<Result<_, String>>()
        .map(Pairs)
}

fn parse_base_fact(s: &str) -> Result<(u32, u32), String> {
    let (m, a) = s.split_once('=').ok_or("expected m=alpha")?;
    Ok((m.parse().map_err(|_| "bad m")?, a.parse().map_err(|_| "bad alpha")?))
}

fn gb_cached(ideal: &IdealHandle, cache: &Cache, budget: &Budget) -> spl_core::Result<(GroebnerBasis, bool)> {
    let key = Cache::key(ideal.ring(), ideal.gens());
    if let Some(gb) = cache.get(ideal.ring(), &key) {
        return Ok((gb, true));
    }
    let gb = buchberger_with(ideal.ring(), ideal.gens(), budget)?;
    cache.put(&key, &gb);
    Ok((gb, false))
}

/// Runs a subcommand: a report plus the headline printed above the table.
fn run(cmd: &Command, g: &Global) -> spl_core::Result<(Report, Vec<String>)> {
    let budget = g.budget();
    let mut lines = Vec::new();
    let report = match cmd {
        Command::Gb { ideal, order } => {
            let order = MonomialOrder::parse(order).ok_or_else(|| Error::BadParameter(format!("unknown order `{order}`")))?;
            let i = verify::resolve(ideal, &budget)?;
            let ring = Ring::new(i.ring().spec().clone(), order);
            let gens = i.gens().iter().map(|p| p.to_ring(&ring)).collect::<spl_core::Result<Vec<_>>>()?;
            let i = IdealHandle::new(&ring, gens)?;
            let cache = Cache::from_env();
            let mut r = Report::new("gb", json!({ "ideal": ideal.to_string(), "order": order.name() }));
            let (gb, hit) = r.timed("gb", || gb_cached(&i, &cache, &budget))?;
            if hit {
                eprintln!("cache hit");
            }
            let basis: Vec<String> = gb.basis().iter().map(print_poly).collect();
            lines.extend(basis.iter().cloned());
            r.check("basis", true, json!({ "size": basis.len(), "basis": basis }));
            r
        }
        Command::Member { ideal, poly } => {
            let i = verify::resolve(ideal, &budget)?;
            let f = parse_poly(poly, i.ring())?;
            i.gb_with(&budget)?;
            let inside = i.contains(&f)?;
            lines.push(if inside { "MEMBER" } else { "NOT A MEMBER" }.into());
            let mut r = Report::new("member", json!({ "ideal": ideal.to_string(), "poly": poly }));
            r.check("membership", true, json!({ "member": inside }));
            r
        }
        Command::Symbolic { config, m } => {
            let base = build(*config)?;
            let mut r = Report::new("symbolic", json!({ "config": config.to_string(), "m": m }));
            let sp = r.timed("symbolic power", || symbolic_power_with(&base, *m, &budget))?;
            let gens: Vec<String> = sp.gens().iter().map(print_poly).collect();
            let alpha = sp.alpha()?;
            lines.extend(gens.iter().cloned());
            r.check("generators", true, json!({ "count": gens.len(), "alpha": alpha, "generators": gens }));
            r
        }
        Command::Alpha { config, m, strategy, bezout } => {
            let base = build(*config)?;
            let mut opts = SandwichOptions::verified();
            opts.bezout = *bezout;
            let mut r = Report::new(
                "alpha",
                json!({ "config": config.to_string(), "m": m, "strategy": strategy, "bezout": bezout }),
            );
            let a = r.timed("alpha", || alpha_symbolic_with(&base, *m, *strategy, &opts, &budget))?;
            lines.push(a.display_value());
            r.check("alpha", true, serde_json::to_value(&a).unwrap());
            r
        }
        Command::Waldschmidt { config, m_max, strategy } => {
            let base = build(*config)?;
            let mut r = Report::new(
                "waldschmidt",
                json!({ "config": config.to_string(), "m_max": m_max, "strategy": strategy }),
            );
            let w = r.timed("rows", || waldschmidt_report(&base, *m_max, *strategy, &SandwichOptions::verified(), &budget))?;
            for row in &w.rows {
                match (&row.alpha, &row.skipped) {
                    (Some(a), _) => r.check(format!("m={}", row.m), true, json!({ "alpha": a.display_value(), "ratio": row.ratio })),
                    (None, why) => r.budget_skip(format!("m={}", row.m), why.clone().unwrap_or_default()),
                }
            }
            lines.push(format!(
                "{} <= alpha_hat <= {}",
                w.certified_lower,
                w.inf_ratio.clone().unwrap_or_else(|| "?".into())
            ));
            r.check("bounds", true, serde_json::to_value(&w).unwrap());
            r
        }
        Command::Contain { left, right } => {
            let mut r = Report::new("contain", json!({ "left": left.to_string(), "right": right.to_string() }));
            let c = check_containment(left, right, &budget)?;
            for (k, t) in &c.timings_ms {
                r.timings_ms.insert(k.clone(), *t);
            }
            match &c.witness {
                None => lines.push("HOLDS".into()),
                Some(w) => lines.push(format!(
                    "FAILS witness {} degree {} from {}",
                    verify::digest(w),
                    w.degree().unwrap_or(0),
                    c.witness_source.as_deref().unwrap_or("?")
                )),
            }
            r.check("containment", c.holds, c.to_value());
            r
        }
        Command::Hh { config, r_max } => verify::hh_suite(*config, *r_max, &budget)?,
        Command::Bezout { config, m, d, base_facts, replay: replay_path } => {
            let cfg = incidence(*config)?;
            let facts: Vec<BaseFact> = base_facts.iter().map(|&(fm, a)| BaseFact::computed(&config.to_string(), fm, a)).collect();
            let mut r = Report::new(
                "bezout",
                json!({ "config": config.to_string(), "m": m, "d": d, "base_facts": base_facts }),
            );
            if let Some(path) = replay_path {
                let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.clone(), source })?;
                let cert = Certificate::from_json(&text).map_err(|e| Error::BadParameter(format!("certificate: {e}")))?;
                let claim = ReductionClaim::uniform(&cfg, cert.d, *m);
                let ok = replay(&cert, &claim);
                lines.push(format!("replay {}", if ok { "passes" } else { "FAILS" }));
                r.check("replay", ok, json!({ "lower_bound": cert.lower_bound() }));
                return Ok((r, lines));
            }
            let cert = match d {
                Some(d) => match certify_lower_bound(&ReductionClaim::uniform(&cfg, *d, *m), &facts)? {
                    Outcome::Certified(c) => Some(c),
                    Outcome::Inconclusive(why) => {
                        lines.push(format!("inconclusive: {why}"));
                        r.check("certificate", false, json!({ "inconclusive": why }));
                        return Ok((r, lines));
                    }
                },
                None => best_uniform_bound(&cfg, *m, 0, 100_000, &facts)?,
            };
            match cert {
                Some(c) => {
                    let ok = replay(&c, &ReductionClaim::uniform(&cfg, c.d, *m));
                    lines.push(format!("alpha >= {}", c.lower_bound()));
                    r.check("certificate", ok, serde_json::to_value(&c).unwrap());
                }
                None => {
                    lines.push("no bound certified".into());
                    r.check("certificate", false, json!(null));
                }
            }
            r
        }
        Command::Resolution { config, r } => match config {
            ConfigId::FermatLike(n) => verify::resolution_check_fermat_like(*n)?,
            ConfigId::B3(n) => verify::resolution_check_bn_power(*n, *r, &budget)?,
            ConfigId::A3 => verify::resolution_check_bn_power(1, *r, &budget)?,
        },
        Command::Hilbert { ideal } => {
            let i = verify::resolve(ideal, &budget)?;
            i.gb_with(&budget)?;
            let hs = hilbert_series(&i)?;
            let mut r = Report::new("hilbert", json!({ "ideal": ideal.to_string() }));
            let num = hs.numerator_string();
            lines.push(format!("({num}) / (1-t)^{}", hs.denom_power));
            r.check(
                "series",
                true,
                json!({
                    "numerator": num,
                    "denominator_power": hs.denom_power,
                    "dimension": hs.dimension(),
                    "degree": hs.multiplicity().to_string(),
                }),
            );
            r
        }
        Command::Beta { ideal } => {
            let i = verify::resolve(ideal, &budget)?;
            i.gb_with(&budget)?;
            let b = beta(&i)?;
            lines.push(b.to_string());
            let mut r = Report::new("beta", json!({ "ideal": ideal.to_string() }));
            r.check("beta", true, json!(b));
            r
        }
        Command::Grid { config, pairs } => verify::resurgence_grid(*config, &pairs.0, &budget)?,
        Command::Tables => verify::reproduce_tables(&budget)?,
        Command::Report { extended } => verify::full_report(&budget, *extended)?,
    };
    Ok((report, lines))
}

fn summarize(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.chars().count() > 90 {
        let cut: String = s.chars().take(87).collect();
        format!("{cut}...")
    } else {
        s
    }
}

fn print_table(report: &Report) {
    let width = report.results.iter().map(|r| r.name.chars().count()).max().unwrap_or(4);
    for item in &report.results {
        let flag = if item.value.get("flagged") == Some(&json!(true)) { " [flagged]" } else { "" };
        println!(
            "{:<width$}  {:<19}  {}{flag}",
            item.name,
            item.status.as_str(),
            summarize(&item.value),
        );
    }
}

fn write_csv(report: &Report, path: &Path) -> Result<(), Box<dyn std::error::Error>> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["task", "name", "status", "value", "citation"])?;
    for item in &report.results {
        w.write_record([
            report.task.as_str(),
            item.name.as_str(),
            item.status.as_str(),
            &item.value.to_string(),
            item.citation.as_deref().unwrap_or(""),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn write_json(report: &Report, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, report.to_json() + "\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("warning: --jobs: {e}");
        }
    }
    match run(&cli.command, &cli.global) {
        Ok((report, lines)) => {
            for l in &lines {
                println!("{l}");
            }
            print_table(&report);
            if let Some(p) = &cli.global.json {
                if let Err(e) = write_json(&report, p) {
                    eprintln!("error: {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            }
            if let Some(p) = &cli.global.csv {
                if let Err(e) = write_csv(&report, p) {
                    eprintln!("error: {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            }
            if report.any_failed() {
                ExitCode::from(1)
            } else if report.budget_exhausted() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Error::BudgetExceeded(why)) => {
            eprintln!("budget exceeded: {why}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("ideal specs: {SPEC_GRAMMAR}");
            ExitCode::from(2)
        }
    }
}
