//! Verification suites: containments, Harbourne–Huneke grids, inequalities
//! for Waldschmidt constants, claimed resolutions, resurgence grids and the
//! summary tables.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::catalog::{build, witness_catalog, ConfigId, NamedIdeal};
use crate::error::{Error, Result};
use crate::groebner::{Budget, NormalFormer};
use crate::hilbert::{hilbert_series, minimal_generators_with, omega, HilbertSeries};
use crate::idealops::{power, product, IdealHandle};
use crate::polyexpr::{load_ideal_file, parse_poly, print_poly};
use crate::polyring::{rat, PolyMatrix, Polynomial, RingRef};
use crate::report::{Report, Status};
use crate::symbolic::{alpha_symbolic_with, symbolic_power_with, AlphaResult, MembershipTester, SandwichOptions, Strategy};

// ---------------------------------------------------------------------------
// ideal specs

/// Compact ideal addresses: `sym:<config>:<m>`, `pow:<config>:<r>`,
/// `mpow:<k>:*:<spec>` and `file:<path>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealSpec {
    Sym { config: ConfigId, m: u32 },
    Pow { config: ConfigId, r: u32 },
    MPow { k: u32, inner: Box<IdealSpec> },
    File(PathBuf),
}

pub const SPEC_GRAMMAR: &str = "sym:<config>:<m> | pow:<config>:<r> | mpow:<k>:*:<spec> | file:<path>   (config: fermat_like:<n> | a3 | b3:<n>)";

fn bad_spec(s: &str) -> Error {
    Error::BadParameter(format!("bad ideal spec `{s}`; expected {SPEC_GRAMMAR}"))
}

fn positive(s: &str, whole: &str) -> Result<u32> {
    match s.parse::<u32>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(bad_spec(whole)),
    }
}

impl FromStr for IdealSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad_spec(s))?;
        match kind {
            "sym" | "pow" => {
                let (cfg, e) = rest.rsplit_once(':').ok_or_else(|| bad_spec(s))?;
                let config: ConfigId = cfg.parse()?;
                let e = positive(e, s)?;
                Ok(if kind == "sym" {
                    IdealSpec::Sym { config, m: e }
                } else {
                    IdealSpec::Pow { config, r: e }
                })
            }
            "mpow" => {
                let (k, tail) = rest.split_once(':').ok_or_else(|| bad_spec(s))?;
                let inner = tail.strip_prefix("*:").ok_or_else(|| bad_spec(s))?;
                Ok(IdealSpec::MPow {
                    k: k.parse().map_err(|_| bad_spec(s))?,
                    inner: Box::new(inner.parse()?),
                })
            }
            "file" if !rest.is_empty() => Ok(IdealSpec::File(PathBuf::from(rest))),
            _ => Err(bad_spec(s)),
        }
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealSpec::Sym { config, m } => write!(f, "sym:{config}:{m}"),
            IdealSpec::Pow { config, r } => write!(f, "pow:{config}:{r}"),
            IdealSpec::MPow { k, inner } => write!(f, "mpow:{k}:*:{inner}"),
            IdealSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

pub fn resolve(spec: &IdealSpec, budget: &Budget) -> Result<IdealHandle> {
    match spec {
        IdealSpec::Sym { config, m } => {
            let sp = symbolic_power_with(&build(*config)?, *m, budget)?;
            Ok(sp.ideal().expect("full mode").clone())
        }
        IdealSpec::Pow { config, r } => power(&build(*config)?.ideal(), *r),
        IdealSpec::MPow { k, inner } => {
            let i = resolve(inner, budget)?;
            if *k == 0 {
                return Ok(i);
            }
            product(&IdealHandle::maximal_power(i.ring(), *k), &i)
        }
        IdealSpec::File(p) => {
            let f = load_ideal_file(p)?;
            IdealHandle::new(&f.ring, f.gens)
        }
    }
}

// ---------------------------------------------------------------------------
// containment

#[derive(Clone, Debug)]
pub struct ContainmentResult {
    pub left: String,
    pub right: String,
    pub holds: bool,
    /// A member of the left ideal with nonzero normal form modulo the right.
    pub witness: Option<Polynomial>,
    /// Where the witness came from (a catalog family or a generator).
    pub witness_source: Option<String>,
    pub timings_ms: BTreeMap<String, u64>,
}

pub fn digest(p: &Polynomial) -> String {
    let h = Sha256::digest(print_poly(p).as_bytes());
    h.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

impl ContainmentResult {
    pub fn to_value(&self) -> Value {
        json!({
            "left": self.left,
            "right": self.right,
            "holds": self.holds,
            "witness": self.witness.as_ref().map(|w| json!({
                "source": self.witness_source,
                "degree": w.degree(),
                "terms": w.len(),
                "digest": digest(w),
            })),
        })
    }
}

fn in_ring(p: &Polynomial, ring: &RingRef) -> Result<Polynomial> {
    if p.ring().same_as(ring) {
        Ok(p.clone())
    } else {
        p.to_ring(ring)
    }
}

/// Decides `left ⊆ right`. Catalog witnesses of a symbolic left side are
/// tried before the left ideal is computed.
pub fn check_containment(left: &IdealSpec, right: &IdealSpec, budget: &Budget) -> Result<ContainmentResult> {
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |timings: &mut BTreeMap<String, u64>, name: &str| {
        timings.insert(name.to_string(), clock.elapsed().as_millis() as u64);
        clock = Instant::now();
    };
    let right_ideal = resolve(right, budget)?;
    let ring = right_ideal.ring().clone();
    let nf = NormalFormer::new(right_ideal.gb_with(budget)?);
    lap(&mut timings, "right_gb");
    let result = |holds, witness: Option<Polynomial>, source: Option<String>, timings| ContainmentResult {
        left: left.to_string(),
        right: right.to_string(),
        holds,
        witness,
        witness_source: source,
        timings_ms: timings,
    };

    if let IdealSpec::Sym { config, m } = left {
        if let Ok(ws) = witness_catalog(*config, *m) {
            let base = build(*config)?;
            let tester = MembershipTester::new(&base.components, *m)?;
            for w in ws {
                let p = in_ring(&w.poly, &ring)?;
                if !nf.reduces_to_zero(&p)? && tester.contains(&w.poly)? {
                    lap(&mut timings, "witness_search");
                    return Ok(result(false, Some(p), Some(format!("catalog family {}", w.family)), timings));
                }
            }
        }
        lap(&mut timings, "witness_search");
    }

    let left_ideal = resolve(left, budget)?;
    lap(&mut timings, "left_ideal");
    let gens = left_ideal.gens().iter().map(|g| in_ring(g, &ring)).collect::<Result<Vec<_>>>()?;
    let zero = gens.par_iter().map(|g| nf.reduces_to_zero(g)).collect::<Result<Vec<bool>>>()?;
    lap(&mut timings, "normal_forms");
    match zero.iter().position(|z| !z) {
        Some(i) => Ok(result(false, Some(gens[i].clone()), Some(format!("generator {i}")), timings)),
        None => Ok(result(true, None, None, timings)),
    }
}

fn containment_item(report: &mut Report, name: &str, res: Result<ContainmentResult>, expected: Option<bool>) -> Option<bool> {
    match res {
        Ok(c) => {
            let mut v = c.to_value();
            v["expected"] = json!(expected);
            let ok = expected.is_none_or(|e| e == c.holds);
            report.check(name, ok, v);
            for (k, t) in &c.timings_ms {
                *report.timings_ms.entry(format!("{name}.{k}")).or_default() += t;
            }
            Some(c.holds)
        }
        Err(Error::BudgetExceeded(why)) => {
            report.push(name, Status::Skipped, json!({ "budget_exceeded": why, "expected": expected }));
            None
        }
        Err(e) => {
            report.push(name, Status::Failed, json!({ "error": e.to_string() }));
            None
        }
    }
}

fn hh_right(config: ConfigId, r: u32, k: u32) -> IdealSpec {
    let inner = IdealSpec::Pow { config, r };
    if k == 0 {
        inner
    } else {
        IdealSpec::MPow {
            k,
            inner: Box::new(inner),
        }
    }
}

/// Grid of containments `I^(m) ⊆ m^k I^r` with the outcomes expected for
/// each configuration.
pub fn hh_suite(config: ConfigId, r_max: u32, budget: &Budget) -> Result<Report> {
    let mut report = Report::new("hh", json!({ "config": config.to_string(), "r_max": r_max }));
    let mut grid: Vec<(u32, u32, u32, bool)> = Vec::new();
    for r in 1..=r_max {
        match config {
            ConfigId::FermatLike(_) => grid.push((2 * r, r, r, true)),
            ConfigId::A3 => {
                grid.push((2 * r, r, r, true));
                grid.push((2 * r - 1, r, r - 1, true));
                if r >= 2 {
                    grid.push((2 * r - 2, r, r, r >= 5));
                }
            }
            ConfigId::B3(2) => {
                grid.push((2 * r, r, r, true));
                if r >= 3 {
                    grid.push((2 * r - 1, r, r - 1, true));
                }
            }
            ConfigId::B3(_) => {}
        }
    }
    if grid.is_empty() {
        report.push("grid", Status::Skipped, json!("no containment claims for this configuration"));
        return Ok(report);
    }
    for (m, r, k, expected) in grid {
        let left = IdealSpec::Sym { config, m };
        let right = hh_right(config, r, k);
        let name = format!("I^({m}) in m^{k}*I^{r}");
        let res = check_containment(&left, &right, budget);
        containment_item(&mut report, &name, res, Some(expected));
    }
    if let ConfigId::FermatLike(n) = config {
        // The containment follows from 4rn > r + omega(I^r).
        let base = build(config)?;
        for r in 1..=r_max.min(3) {
            let name = format!("degree precondition r={r}");
            let w = report.timed(&name, || omega(&power(&base.ideal(), r)?));
            match w {
                Ok(w) => {
                    let lhs = 4 * r * n;
                    report.check(&name, lhs > r + w, json!({ "alpha_lower": lhs, "r_plus_omega": r + w, "omega": w }));
                }
                Err(Error::BudgetExceeded(why)) => report.budget_skip(&name, why),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// inequalities

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaHatBound {
    pub value: String,
    /// `None` when certified by a component bound.
    pub citation: Option<String>,
}

impl AlphaHatBound {
    pub fn rational(&self) -> Rational64 {
        self.value.parse().expect("stored as a rational")
    }
}

const CITE_A3_HAT: &str = "published Waldschmidt constant 5/2 of the A3 ideal";
const CITE_B32_HAT: &str = "published lower bound 5/2 for the B3 ideal via the Fermat ideal of 12 points";

/// Lower bound for the Waldschmidt constant: the largest alpha of a
/// component, or a published value when larger.
pub fn alpha_hat_lower(base: &NamedIdeal) -> Result<AlphaHatBound> {
    let certified = base
        .components
        .iter()
        .map(crate::hilbert::alpha)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0) as i64;
    let recorded = match base.id {
        ConfigId::A3 | ConfigId::B3(1) => Some((Rational64::new(5, 2), CITE_A3_HAT)),
        ConfigId::B3(2) => Some((Rational64::new(5, 2), CITE_B32_HAT)),
        _ => None,
    };
    Ok(match recorded {
        Some((v, cite)) if v > Rational64::from_integer(certified) => AlphaHatBound {
            value: v.to_string(),
            citation: Some(cite.into()),
        },
        _ => AlphaHatBound {
            value: certified.to_string(),
            citation: None,
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InequalityKind {
    ChudnovskyLike,
    DemaillyLike,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub kind: InequalityKind,
    pub h: u32,
    pub m: u32,
    pub left: String,
    pub right: String,
    pub holds: bool,
}

/// `α̂ >= (α(I^(m)) + h - 1) / (m + h - 1)` for each m, using the upper end
/// of each alpha interval so that a pass is sound.
pub fn inequality_suite(
    base: &NamedIdeal,
    m_list: &[u32],
    alphas: &BTreeMap<u32, AlphaResult>,
    hat: &AlphaHatBound,
) -> Result<Vec<InequalityReport>> {
    let h = base.big_height;
    let left = hat.rational();
    let mut out = Vec::new();
    let mut push = |kind, m: u32, a: u32| {
        let right = Rational64::new((a + h - 1) as i64, (m + h - 1) as i64);
        out.push(InequalityReport {
            kind,
            h,
            m,
            left: left.to_string(),
            right: right.to_string(),
            holds: left >= right,
        });
    };
    let a1 = alphas.get(&1).ok_or(Error::MissingAlpha(1))?;
    push(InequalityKind::ChudnovskyLike, 1, a1.upper);
    for &m in m_list {
        let a = alphas.get(&m).ok_or(Error::MissingAlpha(m))?;
        push(InequalityKind::DemaillyLike, m, a.upper);
    }
    Ok(out)
}

/// Computes the needed alphas and runs [`inequality_suite`].
pub fn inequality_report(base: &NamedIdeal, m_list: &[u32], strategy: Strategy, budget: &Budget) -> Result<Report> {
    let mut report = Report::new(
        "inequalities",
        json!({ "config": base.id.to_string(), "m": m_list, "strategy": strategy }),
    );
    let hat = alpha_hat_lower(base)?;
    match &hat.citation {
        Some(c) => report.recorded("alpha_hat lower bound", json!(hat.value), c),
        None => report.check("alpha_hat lower bound", true, json!(hat.value)),
    }
    let mut alphas = BTreeMap::new();
    let mut wanted: Vec<u32> = m_list.to_vec();
    wanted.push(1);
    wanted.sort_unstable();
    wanted.dedup();
    for m in wanted {
        let opts = SandwichOptions::verified();
        let a = report.timed(&format!("alpha m={m}"), || alpha_symbolic_with(base, m, strategy, &opts, budget))?;
        alphas.insert(m, a);
    }
    for r in inequality_suite(base, m_list, &alphas, &hat)? {
        let name = format!("{:?} m={}", r.kind, r.m).to_lowercase();
        report.check(name, r.holds, serde_json::to_value(&r).unwrap());
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// resolutions

/// The 6x5 syzygy matrix of the Fermat-like ideal.
pub fn fermat_phi2(n: u32) -> Result<PolyMatrix> {
    let ring = ConfigId::FermatLike(n).ring();
    let k = n - 1;
    let rows = [
        ["-y", "0", "-w", "0", &format!("x^{k}*z^{k}")],
        ["x", "0", "0", "-w", &format!("-y^{k}*z^{k}")],
        ["z", "-w", "0", "0", &format!("-x^{k}*y^{k}")],
        ["0", "-y", "z", "0", &format!("-x^{k}*w^{k}")],
        ["0", "x", "0", "z", &format!("y^{k}*w^{k}")],
        ["0", "0", "x", "-y", &format!("-z^{k}*w^{k}")],
    ];
    let rows = rows
        .iter()
        .map(|row| row.iter().map(|s| parse_poly(s, &ring)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::from_rows(&ring, rows)
}

fn numerator_matches(computed: &HilbertSeries, expected: &HilbertSeries) -> bool {
    let (a, b) = (computed.simplify(), expected.simplify());
    a.numerator == b.numerator && a.denom_power == b.denom_power
}

pub fn resolution_check_fermat_like(n: u32) -> Result<Report> {
    check_fermat_resolution(n, &fermat_phi2(n)?)
}

/// Checks a claimed Hilbert–Burch resolution `0 -> R^5 -> R^6 -> I_n -> 0`.
pub fn check_fermat_resolution(n: u32, phi2: &PolyMatrix) -> Result<Report> {
    let id = ConfigId::FermatLike(n);
    let base = build(id)?;
    let ring = &base.ring;
    let g = &base.gens;
    let mut report = Report::new("resolution", json!({ "config": id.to_string() }));
    if phi2.rows() != 6 || phi2.cols() != 5 {
        return Err(Error::ShapeMismatch(format!("phi2 is {}x{}", phi2.rows(), phi2.cols())));
    }

    let minors = report.timed("minors", || (0..6).map(|i| phi2.without_row(i).det()).collect::<Result<Vec<_>>>())?;
    // Expected: rows 1..6 deleted give 2g3, -2g6, 2g1, -2g5, 2g4, -2g2.
    let claimed = [(2, 2), (-2, 5), (2, 0), (-2, 4), (2, 3), (-2, 1)];
    let minors_ok = minors.iter().zip(claimed).all(|(d, (c, k))| *d == g[k].scale(&rat(c)));
    report.check(
        "maximal minors",
        minors_ok,
        json!({ "claimed": ["2g3", "-2g6", "2g1", "-2g5", "2g4", "-2g2"] }),
    );

    // Hilbert–Burch: the first map is the vector of signed minors.
    let half = rat(1) / rat(2);
    let phi1_entries: Vec<Polynomial> = minors
        .iter()
        .enumerate()
        .map(|(i, d)| d.scale(&(if i % 2 == 0 { half.clone() } else { -half.clone() })))
        .collect();
    let phi1 = PolyMatrix::from_rows(ring, vec![phi1_entries.clone()])?;
    let composite_zero = phi1.mat_mul(phi2)?.is_zero();
    let mut sorted_phi1 = phi1_entries.clone();
    let mut sorted_g = g.clone();
    sorted_phi1.sort_by_key(print_poly);
    sorted_g.sort_by_key(print_poly);
    let order: Vec<String> = phi1_entries
        .iter()
        .map(|p| match g.iter().position(|q| q == p) {
            Some(k) => format!("g{}", k + 1),
            None => print_poly(p),
        })
        .collect();
    report.check(
        "phi1*phi2 = 0",
        composite_zero && sorted_phi1 == sorted_g,
        json!({ "phi1": order }),
    );

    let printed = PolyMatrix::from_rows(ring, vec![g.clone()])?;
    let printed_zero = printed.mat_mul(phi2)?.is_zero();
    let note = if printed_zero {
        "the generator order g1..g6 composes to zero".to_string()
    } else {
        format!("flagged: the generator order g1..g6 does not compose to zero with phi2; the order {} does", order.join(", "))
    };
    report.push(
        "phi1 in printed order",
        Status::Verified,
        json!({ "composes_to_zero": printed_zero, "flagged": !printed_zero, "note": note }),
    );

    let hs = report.timed("hilbert", || hilbert_series(&base.ideal()))?;
    let expected = HilbertSeries::from_terms(
        &[
            (0, 1),
            (2 * n as usize + 2, -6),
            (2 * n as usize + 3, 4),
            (4 * n as usize, 1),
        ],
        4,
    );
    let hs_ok = numerator_matches(&hs, &expected);
    report.check(
        "hilbert numerator",
        hs_ok,
        json!({ "computed": hs.numerator_string(), "claimed": expected.numerator_string() }),
    );

    // Twists 2n+2 (generators) and 2n+3, 4n (syzygies).
    let reg = (2 * n + 2).max((2 * n + 3).max(4 * n) - 1);
    let all = minors_ok && composite_zero && hs_ok;
    report.check(
        "implied regularity",
        all && reg == 4 * n - 1,
        json!({ "reg": reg, "consistent": all }),
    );
    Ok(report)
}

fn binom(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Checks the claimed resolution of the r-th power of the B3-type ideal
/// through its Hilbert series and minimal generators.
pub fn resolution_check_bn_power(n: u32, r: u32, budget: &Budget) -> Result<Report> {
    if r < 2 {
        return Err(Error::BadParameter("the claimed resolution needs r >= 2".into()));
    }
    let id = ConfigId::B3(n);
    let base = build(id)?;
    let mut report = Report::new("resolution", json!({ "config": id.to_string(), "r": r }));
    let p = power(&base.ideal(), r)?;
    let d = (n + 2) * r;
    let gb = report.timed("gb", || p.gb_with(budget).map(|_| ()));
    if let Err(e) = gb {
        if let Error::BudgetExceeded(why) = &e {
            report.budget_skip("hilbert numerator", why.clone());
            return Ok(report);
        }
        return Err(e);
    }
    let hs = report.timed("hilbert", || hilbert_series(&p))?;
    let terms = [
        (0, 1),
        (d as usize, -binom(r + 2, 2)),
        (d as usize + 1, binom(r + 1, 2)),
        ((d + n + 1) as usize, binom(r + 1, 2)),
        ((d + n + 2) as usize, -binom(r, 2)),
    ];
    let expected = HilbertSeries::from_terms(&terms, 3);
    let hs_ok = numerator_matches(&hs, &expected);
    report.check(
        "hilbert numerator",
        hs_ok,
        json!({ "computed": hs.numerator_string(), "claimed": expected.numerator_string() }),
    );
    let mingens = report.timed("minimal generators", || minimal_generators_with(p.ring(), p.gens(), budget))?;
    let gens_ok = mingens.len() as i64 == binom(r + 2, 2) && mingens.iter().all(|g| g.degree() == Some(d));
    report.check(
        "minimal generators",
        gens_ok,
        json!({ "count": mingens.len(), "degree": d, "claimed_count": binom(r + 2, 2) }),
    );
    let reg = d.max((d + n + 1) - 1).max((n + 2) * (r + 1) - 2);
    report.check(
        "implied regularity",
        hs_ok && gens_ok && reg == (n + 2) * r + n,
        json!({ "reg": reg }),
    );
    Ok(report)
}

// ---------------------------------------------------------------------------
// resurgence

fn expected_containment(config: ConfigId, m: u32, r: u32) -> Option<bool> {
    if m >= 2 * r {
        return Some(true);
    }
    match config {
        // Any ratio above the resurgence 6/5 must contain.
        ConfigId::A3 | ConfigId::B3(1) if 5 * m > 6 * r => Some(true),
        ConfigId::FermatLike(_) if (m, r) == (3, 2) => Some(false),
        ConfigId::B3(2) if (m, r) == (7, 6) => Some(false),
        _ => None,
    }
}

/// Runs `I^(m) ⊆ I^r` over the pairs and reports the largest failing ratio,
/// a certified lower bound for the resurgence.
pub fn resurgence_grid(config: ConfigId, pairs: &[(u32, u32)], budget: &Budget) -> Result<Report> {
    let mut report = Report::new(
        "grid",
        json!({ "config": config.to_string(), "pairs": pairs }),
    );
    let mut best: Option<Rational64> = None;
    let mut holding = Vec::new();
    for &(m, r) in pairs {
        let left = IdealSpec::Sym { config, m };
        let right = IdealSpec::Pow { config, r };
        let name = format!("I^({m}) in I^{r}");
        let res = check_containment(&left, &right, budget);
        match containment_item(&mut report, &name, res, expected_containment(config, m, r)) {
            Some(true) => holding.push(json!([m, r])),
            Some(false) => {
                let q = Rational64::new(m as i64, r as i64);
                best = Some(best.map_or(q, |b| b.max(q)));
            }
            None => {}
        }
    }
    report.check(
        "resurgence lower bound",
        true,
        json!({ "max_failing_ratio": best.map(|b| b.to_string()), "holding": holding }),
    );
    Ok(report)
}

const CITE_REG_I3: &str = "published bound reg(I^r) <= 8r + 9 for r >= 2, from the regularity-of-powers theorem";

/// Closed forms for alpha of symbolic powers of the Fermat-like ideals, as
/// intervals where only bounds are known.
pub fn fermat_alpha_theorem(n: u32, m: u32) -> (u32, u32) {
    match (n, m) {
        (_, 1) => (2 * n + 2, 2 * n + 2),
        (3, _) => {
            let k = m / 3;
            let v = match m % 3 {
                0 => 18 * k,
                1 => 18 * k + 8,
                _ => 18 * k + 16,
            };
            (v, v)
        }
        (_, 2) => (4 * n + 2, 4 * n + 4),
        (4, 5) => (40, 42),
        _ => (2 * n * m, 2 * n * m),
    }
}

pub fn a3_alpha_theorem(m: u32) -> u32 {
    match m {
        2 => 6,
        _ if m.is_multiple_of(2) => 5 * (m / 2),
        _ => 5 * (m / 2) + 3,
    }
}

/// alpha(I_3^(m)) against the regularity bound for I_3^r at the least m with
/// 2m >= 3r + 1.
pub fn reg_inequality_table_i3(r_max: u32, exact_cap: u32, budget: &Budget) -> Result<Report> {
    let mut report = Report::new("reg_table", json!({ "r_max": r_max, "exact_cap": exact_cap }));
    let base = build(ConfigId::FermatLike(3))?;
    report.recorded("reg bound", json!("8r + 9"), CITE_REG_I3);
    for r in 1..=r_max {
        let m = (3 * r + 1).div_ceil(2);
        let (a, _) = fermat_alpha_theorem(3, m);
        let mut computed = None;
        if m <= exact_cap {
            let name = format!("alpha m={m}");
            match report.timed(&name, || alpha_symbolic_with(&base, m, Strategy::Exact, &SandwichOptions::default(), budget)) {
                Ok(x) => computed = x.exact(),
                Err(Error::BudgetExceeded(_)) => {}
                Err(e) => return Err(e),
            }
        }
        // reg(I_3) = 11 follows from the verified resolution.
        let reg = if r == 1 { 11 } else { 8 * r + 9 };
        let ok = a > reg && computed.is_none_or(|c| c == a);
        report.check(
            format!("r={r}"),
            ok,
            json!({ "m": m, "alpha": a, "alpha_computed": computed, "reg_bound": reg }),
        );
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// tables

fn exact_alpha(base: &NamedIdeal, m: u32, budget: &Budget) -> Result<Option<u32>> {
    match alpha_symbolic_with(base, m, Strategy::Exact, &SandwichOptions::default(), budget) {
        Ok(a) => Ok(a.exact()),
        Err(Error::BudgetExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

struct Cell {
    column: &'static str,
    printed: &'static str,
    value: fn(u32, u32) -> (u32, u32),
    samples: &'static [(u32, u32)],
}

fn interval_json((lo, hi): (u32, u32)) -> Value {
    if lo == hi {
        json!(lo)
    } else {
        json!([lo, hi])
    }
}

/// Regenerates both summary tables from the closed forms, cross-checks
/// small cases by exact computation, and flags printed cells that disagree.
pub fn reproduce_tables(budget: &Budget) -> Result<Report> {
    let mut report = Report::new("tables", json!({}));
    let mut exact: BTreeMap<(u32, u32), Option<u32>> = BTreeMap::new();
    let wanted: &[(u32, u32)] = &[(3, 1), (3, 2), (3, 3), (3, 4), (3, 5), (4, 2), (4, 3), (4, 4), (4, 5), (5, 2), (5, 3)];
    for &(n, m) in wanted {
        let base = build(ConfigId::FermatLike(n))?;
        let a = report.timed(&format!("alpha n={n} m={m}"), || exact_alpha(&base, m, budget))?;
        exact.insert((n, m), a);
    }

    let cells = [
        Cell { column: "n=3, m=2", printed: "16", value: |_, _| (16, 16), samples: &[(3, 2)] },
        Cell { column: "n=3, m=3k", printed: "18k", value: |_, m| (6 * m, 6 * m), samples: &[(3, 3), (3, 6), (3, 9)] },
        Cell { column: "n=3, m=3k+1", printed: "18k+8", value: |_, m| (6 * m + 2, 6 * m + 2), samples: &[(3, 1), (3, 4), (3, 7)] },
        Cell { column: "n=3, m=3k+2", printed: "18k+16", value: |_, m| (6 * m + 4, 6 * m + 4), samples: &[(3, 5), (3, 8)] },
        Cell { column: "n=4, m=2", printed: "20", value: |_, _| (20, 20), samples: &[(4, 2)] },
        Cell { column: "n=4, m=5", printed: "42", value: |_, _| (42, 42), samples: &[(4, 5)] },
        Cell { column: "n=4, m>=3, m!=5", printed: "4m", value: |_, m| (4 * m, 4 * m), samples: &[(4, 3), (4, 4), (4, 6)] },
        Cell { column: "n>=5, m=2", printed: ">=4n+2, <=4n+4", value: |n, _| (4 * n + 2, 4 * n + 4), samples: &[(5, 2), (6, 2)] },
        Cell { column: "n>=5, m>=3", printed: "2nm", value: |n, m| (2 * n * m, 2 * n * m), samples: &[(5, 3), (5, 4), (6, 3)] },
    ];
    for cell in &cells {
        let mut flagged = false;
        let mut rows = Vec::new();
        for &(n, m) in cell.samples {
            let printed = (cell.value)(n, m);
            let theorem = fermat_alpha_theorem(n, m);
            let computed = exact.get(&(n, m)).copied().flatten();
            let truth = computed.map_or(theorem, |c| (c, c));
            let bad = if truth.0 == truth.1 {
                !(printed.0..=printed.1).contains(&truth.0)
            } else {
                printed.1 < truth.0 || truth.1 < printed.0
            };
            // A computed value must respect the closed form as well.
            let consistent = computed.is_none_or(|c| (theorem.0..=theorem.1).contains(&c));
            if !consistent {
                report.push(
                    format!("table 1 {} at n={n}, m={m}", cell.column),
                    Status::Failed,
                    json!({ "theorem": interval_json(theorem), "computed": computed }),
                );
            }
            flagged |= bad;
            rows.push(json!({
                "n": n, "m": m,
                "printed": interval_json(printed),
                "theorem": interval_json(theorem),
                "computed": computed,
            }));
        }
        report.push(
            format!("table 1 {}", cell.column),
            Status::Verified,
            json!({ "printed": cell.printed, "samples": rows, "flagged": flagged }),
        );
    }

    // Waldschmidt row: component bound 2n against the witness ratio 6nk/3k.
    let printed_hat = |n: u32| match n {
        3 => 3,
        4 => 4,
        _ => n,
    };
    let mut rows = Vec::new();
    let mut flagged = false;
    for n in [3, 4, 5, 6] {
        let base = build(ConfigId::FermatLike(n))?;
        let lower = base.components.iter().map(crate::hilbert::alpha).collect::<Result<Vec<_>>>()?.into_iter().max().unwrap();
        let upper = witness_catalog(ConfigId::FermatLike(n), 3)?.iter().map(|w| w.degree).min().unwrap() / 3;
        let pinched = (lower == upper).then_some(lower);
        flagged |= pinched != Some(printed_hat(n));
        rows.push(json!({ "n": n, "printed": printed_hat(n), "lower": lower, "upper": upper, "pinched": pinched }));
    }
    report.push(
        "table 1 alpha_hat row",
        Status::Verified,
        json!({ "printed": "3 / 4 / n", "theorem": "2n", "samples": rows, "flagged": flagged }),
    );

    // Table 2.
    let a3 = build(ConfigId::A3)?;
    let mut computed = BTreeMap::new();
    for m in 1..=6 {
        let a = report.timed(&format!("alpha a3 m={m}"), || exact_alpha(&a3, m, budget))?;
        computed.insert(m, a);
    }
    let t2 = [
        ("m=2", "6", vec![2u32]),
        ("m=2k", "5k", vec![4, 6]),
        ("m=2k+1", "5k+3", vec![1, 3, 5]),
    ];
    for (column, printed, ms) in t2 {
        let mut flagged = false;
        let mut rows = Vec::new();
        for m in ms {
            let t = a3_alpha_theorem(m);
            let c = computed[&m];
            if c.is_some_and(|c| c != t) {
                flagged = true;
            }
            rows.push(json!({ "m": m, "printed": t, "computed": c }));
        }
        report.push(
            format!("table 2 {column}"),
            Status::Verified,
            json!({ "printed": printed, "samples": rows, "flagged": flagged }),
        );
    }
    let inf = computed
        .iter()
        .filter_map(|(&m, a)| a.map(|a| Rational64::new(a as i64, m as i64)))
        .min();
    report.check(
        "table 2 alpha_hat upper",
        inf == Some(Rational64::new(5, 2)),
        json!({ "printed": "5/2", "inf_ratio": inf.map(|r| r.to_string()), "flagged": false }),
    );
    report.recorded("table 2 alpha_hat", json!("5/2"), CITE_A3_HAT);
    report.recorded(
        "table 2 resurgence",
        json!("6/5"),
        "published resurgence and asymptotic resurgence 6/5 of the A3 ideal",
    );
    let flags: Vec<String> = report
        .results
        .iter()
        .filter(|r| r.value.get("flagged") == Some(&json!(true)))
        .map(|r| r.name.clone())
        .collect();
    report.push("discrepancies", Status::Verified, json!(flags));
    Ok(report)
}

// ---------------------------------------------------------------------------
// whole-catalog suites

fn poly_of(ring: &RingRef, src: &str) -> Result<Polynomial> {
    parse_poly(src, ring)
}

/// Exact polynomial identities and memberships behind the witness families.
pub fn identity_suite() -> Result<Report> {
    let mut report = Report::new("identities", json!({}));
    for n in 3..=6 {
        let sf = crate::catalog::special_forms(ConfigId::FermatLike(n))?;
        report.check(format!("h = g - f, n={n}"), sf.h == &sf.g - &sf.f, json!(print_poly(&sf.h)));
        let ring = ConfigId::FermatLike(n).ring();
        let prod = poly_of(
            &ring,
            &format!("(x^{n}-y^{n})*(z^{n}-w^{n})*(x^{n}-z^{n})*(y^{n}-w^{n})*(x^{n}-w^{n})*(y^{n}-z^{n})"),
        )?;
        report.check(format!("F = f*g*h, n={n}"), prod == sf.big_f, json!({ "degree": sf.big_f.degree() }));
    }
    let a3 = build(ConfigId::A3)?;
    let ring = &a3.ring;
    let lhs = poly_of(ring, "-(z-x)*(z+x-y)")?;
    let rhs = poly_of(ring, "(y-z)*(y+z-x)+(x-y)*(x+y-z)")?;
    report.check("-(z-x)(z+x-y) = (y-z)(y+z-x) + (x-y)(x+y-z)", lhs == rhs, json!(print_poly(&lhs)));
    let k = &a3.components[0];
    let k2 = power(k, 2)?;
    for (name, src, ideal) in [
        ("2x(x-y)(z-x) in K", "2*x*(x-y)*(z-x)", k),
        ("(y-z)(z-x)xyz^2 in K^2", "(y-z)*(z-x)*x*y*z^2", &k2),
        ("yz(y-z) in K", "y*z*(y-z)", k),
    ] {
        let f = poly_of(ring, src)?;
        report.check(name, ideal.contains(&f)?, json!(src));
    }
    Ok(report)
}

/// Intersecting the components reproduces the ideal.
pub fn decomposition_suite(configs: &[ConfigId], budget: &Budget) -> Result<Report> {
    let names: Vec<String> = configs.iter().map(|c| c.to_string()).collect();
    let mut report = Report::new("decompositions", json!({ "configs": names }));
    for &id in configs {
        let base = build(id)?;
        let mut decs = vec![("components", base.components.clone())];
        if let Some(alt) = &base.alt_components {
            decs.push(("alternative components", alt.clone()));
        }
        for (label, comps) in decs {
            let name = format!("{id} {label}");
            let res = report.timed(&name, || -> Result<bool> {
                let i = crate::idealops::intersect_many_with(&comps, budget)?;
                crate::idealops::equal_as_ideals(&i, &base.ideal())
            });
            match res {
                Ok(eq) => report.check(name, eq, json!({ "components": comps.len() })),
                Err(Error::BudgetExceeded(why)) => report.budget_skip(name, why),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(report)
}

/// Degree and dimension of R/I for catalog ideals, with claimed values.
pub fn multiplicity_suite() -> Result<Report> {
    let mut report = Report::new("multiplicities", json!({}));
    let claims: [(ConfigId, Option<u64>, Option<usize>); 4] = [
        (ConfigId::FermatLike(3), Some(42), Some(2)),
        (ConfigId::FermatLike(4), None, Some(2)),
        (ConfigId::A3, Some(7), None),
        (ConfigId::B3(2), Some(13), None),
    ];
    for (id, deg, dim) in claims {
        let hs = report.timed(&id.to_string(), || hilbert_series(&build(id)?.ideal()))?;
        let d = hs.multiplicity();
        let k = hs.dimension();
        if let Some(want) = deg {
            report.check(format!("degree {id}"), d == BigInt::from(want), json!({ "degree": d.to_string(), "claimed": want }));
        }
        if let Some(want) = dim {
            report.check(format!("dimension {id}"), k == want, json!({ "dimension": k, "claimed": want }));
        }
    }
    Ok(report)
}

/// beta and omega of low symbolic powers.
pub fn beta_suite(budget: &Budget) -> Result<Report> {
    let mut report = Report::new("beta", json!({}));
    let a3 = build(ConfigId::A3)?;
    for m in 1..=3 {
        let res = report.timed(&format!("a3 m={m}"), || -> Result<(u32, u32)> {
            let sp = symbolic_power_with(&a3, m, budget)?;
            let i = sp.ideal().expect("full mode");
            Ok((crate::hilbert::beta(i)?, omega(i)?))
        });
        match res {
            Ok((b, w)) => {
                report.check(format!("beta a3 m={m}"), b == 3 * m, json!({ "beta": b, "claimed": 3 * m }));
                report.check(format!("omega a3 m={m}"), w >= 3 * m, json!({ "omega": w, "claimed_at_least": 3 * m }));
            }
            Err(Error::BudgetExceeded(why)) => report.budget_skip(format!("a3 m={m}"), why),
            Err(e) => return Err(e),
        }
    }
    let b = report.timed("b3:2", || crate::hilbert::beta(&build(ConfigId::B3(2))?.ideal()))?;
    report.check("beta b3:2", b == 4, json!({ "beta": b, "claimed": 4 }));
    Ok(report)
}

fn certify_item(report: &mut Report, name: &str, id: ConfigId, m: u32, bound: i64, facts: &[crate::bezout::BaseFact]) -> Result<()> {
    use crate::bezout::{certify_lower_bound, replay, ReductionClaim};
    let cfg = crate::catalog::incidence(id)?;
    let claim = ReductionClaim::uniform(&cfg, bound - 1, m);
    let out = certify_lower_bound(&claim, facts)?;
    match out.certificate() {
        Some(c) => {
            let ok = replay(c, &claim) && c.lower_bound() == bound;
            report.check(name, ok, serde_json::to_value(c).unwrap());
        }
        None => report.push(name, Status::Failed, json!(format!("{out:?}"))),
    }
    Ok(())
}

/// Bezout-reduction lower bounds with replayed certificates.
pub fn bezout_suite() -> Result<Report> {
    use crate::bezout::BaseFact;
    let mut report = Report::new("bezout", json!({}));
    certify_item(&mut report, "a3 m=2 >= 6", ConfigId::A3, 2, 6, &[])?;
    for n in 3..=6 {
        certify_item(&mut report, &format!("fermat_like:{n} m=2 >= {}", 4 * n + 2), ConfigId::FermatLike(n), 2, 4 * n as i64 + 2, &[])?;
    }
    let facts = [BaseFact::computed("fermat_like:3", 1, 8), BaseFact::computed("fermat_like:3", 2, 16)];
    certify_item(&mut report, "fermat_like:3 m=4 >= 26", ConfigId::FermatLike(3), 4, 26, &facts)?;
    certify_item(&mut report, "fermat_like:3 m=5 >= 34", ConfigId::FermatLike(3), 5, 34, &facts)?;
    Ok(report)
}

/// Every fast suite in one report. `extended` adds the long containments.
pub fn full_report(budget: &Budget, extended: bool) -> Result<Report> {
    let mut report = Report::new("report", json!({ "extended": extended }));
    report.merge(identity_suite()?);
    report.merge(decomposition_suite(&[ConfigId::A3, ConfigId::B3(2), ConfigId::FermatLike(3)], budget)?);
    for n in 3..=5 {
        report.merge(resolution_check_fermat_like(n)?);
    }
    for (n, r) in [(1, 2), (2, 2)] {
        report.merge(resolution_check_bn_power(n, r, budget)?);
    }
    report.merge(multiplicity_suite()?);
    report.merge(bezout_suite()?);
    report.merge(beta_suite(budget)?);
    report.merge(hh_suite(ConfigId::A3, if extended { 5 } else { 4 }, budget)?);
    report.merge(inequality_report(&build(ConfigId::A3)?, &[1, 2, 3, 4, 5, 6], Strategy::Exact, budget)?);
    report.merge(inequality_report(&build(ConfigId::FermatLike(3))?, &[1, 2, 3], Strategy::Exact, budget)?);
    if extended {
        report.merge(resurgence_grid(ConfigId::A3, &[(3, 2), (5, 4), (6, 5)], budget)?);
        report.merge(resurgence_grid(ConfigId::FermatLike(3), &[(3, 2)], budget)?);
    }
    report.merge(reproduce_tables(budget)?);
    Ok(report)
}

/// Multiplicity of R/I as an integer.
pub fn degree_of(i: &IdealHandle) -> Result<BigInt> {
    crate::hilbert::multiplicity(i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_grammar_round_trips() {
        for s in ["sym:fermat_like:3:3", "pow:a3:2", "mpow:2:*:pow:b3:2:3", "file:/tmp/x.sid"] {
            assert_eq!(s.parse::<IdealSpec>().unwrap().to_string(), s);
        }
        for s in ["sym:a3", "sym:a3:0", "pow:q:2", "mpow:2:pow:a3:2", "file:", "x"] {
            assert!(s.parse::<IdealSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn fermat_containment_fails_with_witness() {
        let l: IdealSpec = "sym:fermat_like:3:3".parse().unwrap();
        let r: IdealSpec = "pow:fermat_like:3:2".parse().unwrap();
        let c = check_containment(&l, &r, &Budget::unlimited()).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness.unwrap().degree(), Some(18));
    }

    #[test]
    fn a3_containments() {
        let b = Budget::unlimited();
        let c = check_containment(&"sym:a3:2".parse().unwrap(), &"pow:a3:1".parse().unwrap(), &b).unwrap();
        assert!(c.holds);
        let c = check_containment(&"sym:a3:4".parse().unwrap(), &"mpow:2:*:pow:a3:2".parse().unwrap(), &b).unwrap();
        assert!(c.holds);
    }

    #[test]
    fn resolutions() {
        let r = resolution_check_fermat_like(3).unwrap();
        assert!(!r.any_failed(), "{}", r.to_json());
        assert_eq!(r.item("phi1 in printed order").unwrap().value["flagged"], json!(true));
        let mut bad = fermat_phi2(3).unwrap();
        let e = bad.get(0, 0).clone();
        bad.set(0, 0, -e);
        assert!(check_fermat_resolution(3, &bad).unwrap().any_failed());
        let r = resolution_check_bn_power(1, 2, &Budget::unlimited()).unwrap();
        assert!(!r.any_failed(), "{}", r.to_json());
        assert_eq!(r.item("hilbert numerator").unwrap().value["claimed"], json!("1 - 6t^6 + 3t^7 + 3t^8 - t^9"));
    }

    #[test]
    fn fast_suites() {
        for r in [identity_suite().unwrap(), multiplicity_suite().unwrap(), bezout_suite().unwrap()] {
            assert!(!r.any_failed(), "{}", r.to_json());
        }
    }

    #[test]
    fn theorem_values() {
        assert_eq!(fermat_alpha_theorem(3, 10), (62, 62));
        assert_eq!(fermat_alpha_theorem(3, 2), (16, 16));
        assert_eq!(fermat_alpha_theorem(5, 2), (22, 24));
        assert_eq!(fermat_alpha_theorem(4, 6), (48, 48));
        let t: Vec<u32> = (1..=7).map(a3_alpha_theorem).collect();
        assert_eq!(t, [3, 6, 8, 10, 13, 15, 18]);
    }
}
