//! Symbolic powers of catalog ideals as intersections of component powers,
//! componentwise membership, and bounds on their initial degrees.

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bezout::{best_uniform_bound, BaseFact, Certificate};
use crate::catalog::{witness_catalog, ConfigId, NamedIdeal};
use crate::error::{Error, Result};
use crate::groebner::{Budget, NormalFormer};
use crate::hilbert::{alpha, graded_piece};
use crate::idealops::{intersect_many_with, power, IdealHandle};
use crate::linalg::{intersect_span, MonomialIndex};
use crate::polyring::{Monomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Full,
    MembershipOnly,
}

/// Tests membership in every component power without forming the
/// intersection.
pub struct MembershipTester {
    m: u32,
    /// Pairs of variable indices for the linear components.
    linear: Vec<Vec<usize>>,
    others: Vec<NormalFormer>,
}

fn linear_vars(c: &IdealHandle) -> Option<Vec<usize>> {
    if !c.is_monomial() {
        return None;
    }
    c.monomials()
        .ok()?
        .iter()
        .map(|m| {
            (m.degree() == 1)
                .then(|| (0..c.ring().nvars()).find(|&i| m.exp(i) == 1))
                .flatten()
        })
        .collect()
}

impl MembershipTester {
    pub fn new(components: &[IdealHandle], m: u32) -> Result<Self> {
        let mut linear = Vec::new();
        let mut rest = Vec::new();
        for c in components {
            match linear_vars(c) {
                Some(vars) => linear.push(vars),
                None => rest.push(c),
            }
        }
        let others = rest
            .par_iter()
            .map(|c| {
                let p = power(c, m)?;
                Ok(NormalFormer::new(p.gb()?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MembershipTester { m, linear, others })
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        // (x_i, x_j)^m contains exactly the terms of order >= m in x_i, x_j.
        let order = |mono: &Monomial, vars: &[usize]| vars.iter().map(|&i| mono.exp(i)).sum::<u32>();
        for vars in &self.linear {
            if f.terms().iter().any(|t| order(&t.mono, vars) < self.m) {
                return Ok(false);
            }
        }
        for nf in &self.others {
            if !nf.reduces_to_zero(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `f ∈ I^(m)`, tested one component at a time.
pub fn symbolic_membership(f: &Polynomial, base: &NamedIdeal, m: u32) -> Result<bool> {
    MembershipTester::new(&base.components, m)?.contains(f)
}

/// `∩ C^m` over the given components, minimalized.
pub fn intersect_component_powers(components: &[IdealHandle], m: u32, budget: &Budget) -> Result<IdealHandle> {
    if m == 0 {
        return Err(Error::BadParameter("symbolic order must be positive".into()));
    }
    let powers = components.par_iter().map(|c| power(c, m)).collect::<Result<Vec<_>>>()?;
    intersect_many_with(&powers, budget)
}

pub struct SymbolicPower {
    pub config: ConfigId,
    pub m: u32,
    pub mode: Mode,
    ideal: Option<IdealHandle>,
    tester: MembershipTester,
}

impl SymbolicPower {
    pub fn membership_only(base: &NamedIdeal, m: u32) -> Result<Self> {
        Ok(SymbolicPower {
            config: base.id,
            m,
            mode: Mode::MembershipOnly,
            ideal: None,
            tester: MembershipTester::new(&base.components, m)?,
        })
    }

    /// Minimal generators; empty in membership-only mode.
    pub fn gens(&self) -> &[Polynomial] {
        self.ideal.as_ref().map_or(&[], |i| i.gens())
    }

    pub fn ideal(&self) -> Option<&IdealHandle> {
        self.ideal.as_ref()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        match &self.ideal {
            Some(i) => i.contains(f),
            None => self.tester.contains(f),
        }
    }

    pub fn alpha(&self) -> Result<u32> {
        alpha(self.ideal.as_ref().ok_or(Error::BadParameter("alpha needs a full symbolic power".into()))?)
    }
}

pub fn symbolic_power(base: &NamedIdeal, m: u32) -> Result<SymbolicPower> {
    symbolic_power_with(base, m, &Budget::unlimited())
}

pub fn symbolic_power_with(base: &NamedIdeal, m: u32, budget: &Budget) -> Result<SymbolicPower> {
    let ideal = intersect_component_powers(&base.components, m, budget)?;
    Ok(SymbolicPower {
        config: base.id,
        m,
        mode: Mode::Full,
        ideal: Some(ideal),
        tester: MembershipTester::new(&base.components, m)?,
    })
}

/// Least degree of `I^(m)` found by linear algebra on graded pieces,
/// scanning degrees `from..=to`. Independent of the elimination route.
pub fn alpha_by_graded_pieces(base: &NamedIdeal, m: u32, from: u32, to: u32) -> Result<Option<u32>> {
    let mut linear = Vec::new();
    let mut others = Vec::new();
    for c in &base.components {
        match linear_vars(c) {
            Some(v) => linear.push(v),
            None => others.push(power(c, m)?),
        }
    }
    let allowed = |mono: &Monomial| linear.iter().all(|v| v.iter().map(|&i| mono.exp(i)).sum::<u32>() >= m);
    for d in from..=to {
        let idx = MonomialIndex::new(&base.ring, d);
        let mut space = match others.first() {
            Some(c) => graded_piece(c, d)?.basis,
            None => (0..idx.len()).map(|k| Polynomial::monomial(&base.ring, num_rational::BigRational::from_integer(1.into()), idx.monomial(k))).collect(),
        };
        space = intersect_span(&idx, &space, None, &|mono| allowed(mono));
        for c in others.iter().skip(1) {
            if space.is_empty() {
                break;
            }
            let piece = graded_piece(c, d)?.basis;
            space = intersect_span(&idx, &space, Some(&piece), &|_| true);
        }
        if !space.is_empty() {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Exact,
    Sandwich,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Strategy::Exact),
            "sandwich" => Ok(Strategy::Sandwich),
            _ => Err(Error::BadParameter(format!("unknown strategy `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SandwichOptions {
    pub bezout: bool,
    pub base_facts: Vec<BaseFact>,
    /// Check each witness by componentwise membership before using it.
    pub verify_witnesses: bool,
}

impl SandwichOptions {
    pub fn verified() -> Self {
        SandwichOptions {
            verify_witnesses: true,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Evidence {
    Exact { generators: usize },
    ComponentBound { component: usize, alpha: u32, bound: u32 },
    OrdinaryPower { alpha_base: u32, bound: u32 },
    Witness { family: String, degree: u32, verified: bool },
    Bezout { certificate: Certificate },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaResult {
    pub config: String,
    pub m: u32,
    pub lower: u32,
    pub upper: u32,
    pub evidence: Vec<Evidence>,
}

impl AlphaResult {
    pub fn exact(&self) -> Option<u32> {
        (self.lower == self.upper).then_some(self.lower)
    }

    pub fn display_value(&self) -> String {
        match self.exact() {
            Some(v) => v.to_string(),
            None => format!("[{}, {}]", self.lower, self.upper),
        }
    }
}

pub fn alpha_symbolic(base: &NamedIdeal, m: u32, strategy: Strategy, opts: &SandwichOptions) -> Result<AlphaResult> {
    alpha_symbolic_with(base, m, strategy, opts, &Budget::unlimited())
}

pub fn alpha_symbolic_with(
    base: &NamedIdeal,
    m: u32,
    strategy: Strategy,
    opts: &SandwichOptions,
    budget: &Budget,
) -> Result<AlphaResult> {
    if m == 0 {
        return Err(Error::BadParameter("symbolic order must be positive".into()));
    }
    let config = base.id.to_string();
    if strategy == Strategy::Exact {
        let sp = symbolic_power_with(base, m, budget)?;
        let a = sp.alpha()?;
        return Ok(AlphaResult {
            config,
            m,
            lower: a,
            upper: a,
            evidence: vec![Evidence::Exact {
                generators: sp.gens().len(),
            }],
        });
    }
    let mut evidence = Vec::new();

    // I^(m) ⊆ C^m for every component C.
    let mut lower = 0;
    let mut best = None;
    for (k, c) in base.components.iter().enumerate() {
        let a = alpha(c)?;
        if best.is_none_or(|(_, b)| a > b) {
            best = Some((k, a));
        }
    }
    if let Some((k, a)) = best {
        lower = a * m;
        evidence.push(Evidence::ComponentBound {
            component: k,
            alpha: a,
            bound: lower,
        });
    }

    // I^m ⊆ I^(m).
    let a1 = alpha(&base.ideal())?;
    let mut upper = a1 * m;
    evidence.push(Evidence::OrdinaryPower {
        alpha_base: a1,
        bound: upper,
    });

    let witnesses = match witness_catalog(base.id, m) {
        Ok(w) => w,
        Err(Error::NoWitnessKnown { .. }) => Vec::new(),
        Err(e) => return Err(e),
    };
    if !witnesses.is_empty() {
        let tester = if opts.verify_witnesses {
            Some(MembershipTester::new(&base.components, m)?)
        } else {
            None
        };
        // Only the lowest-degree witness of each family matters.
        let mut seen = std::collections::BTreeSet::new();
        for w in witnesses {
            if !seen.insert(w.family) {
                continue;
            }
            let verified = match &tester {
                Some(t) => t.contains(&w.poly)?,
                None => false,
            };
            if verified || tester.is_none() {
                upper = upper.min(w.degree);
            }
            evidence.push(Evidence::Witness {
                family: w.family.to_string(),
                degree: w.degree,
                verified,
            });
        }
    }

    if opts.bezout && lower < upper {
        let cert = best_uniform_bound(
            &base.incidence,
            m,
            lower as i64,
            upper as i64 - 1,
            &opts.base_facts,
        )?;
        if let Some(c) = cert {
            lower = lower.max(c.lower_bound() as u32);
            evidence.push(Evidence::Bezout { certificate: c });
        }
    }
    Ok(AlphaResult {
        config,
        m,
        lower,
        upper,
        evidence,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaldschmidtRow {
    pub m: u32,
    pub alpha: Option<AlphaResult>,
    /// Upper bound divided by m.
    pub ratio: Option<String>,
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaldschmidtReport {
    pub config: String,
    pub rows: Vec<WaldschmidtRow>,
    /// Infimum of upper(m)/m over the rows: an upper bound for the constant.
    pub inf_ratio: Option<String>,
    /// Largest alpha of a component: a lower bound for the constant.
    pub certified_lower: String,
    /// Set when the two bounds meet.
    pub pinched: Option<String>,
}

fn ratio_string(r: Rational64) -> String {
    r.to_string()
}

pub fn waldschmidt_report(
    base: &NamedIdeal,
    m_max: u32,
    strategy: Strategy,
    opts: &SandwichOptions,
    budget: &Budget,
) -> Result<WaldschmidtReport> {
    if m_max == 0 {
        return Err(Error::BadParameter("m_max must be positive".into()));
    }
    let mut rows = Vec::new();
    let mut inf: Option<Rational64> = None;
    for m in 1..=m_max {
        match alpha_symbolic_with(base, m, strategy, opts, budget) {
            Ok(a) => {
                let r = Rational64::new(a.upper as i64, m as i64);
                inf = Some(inf.map_or(r, |x| x.min(r)));
                rows.push(WaldschmidtRow {
                    m,
                    ratio: Some(ratio_string(r)),
                    alpha: Some(a),
                    skipped: None,
                });
            }
            Err(Error::BudgetExceeded(why)) => rows.push(WaldschmidtRow {
                m,
                alpha: None,
                ratio: None,
                skipped: Some(why),
            }),
            Err(e) => return Err(e),
        }
    }
    let lower = base.components.iter().map(alpha).collect::<Result<Vec<_>>>()?.into_iter().max().unwrap_or(0);
    let lower = Rational64::from_integer(lower as i64);
    Ok(WaldschmidtReport {
        config: base.id.to_string(),
        rows,
        inf_ratio: inf.map(ratio_string),
        certified_lower: ratio_string(lower),
        pinched: inf.filter(|&x| x == lower).map(ratio_string),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, special_forms};
    use crate::idealops::equal_as_ideals;

    #[test]
    fn first_symbolic_power_is_the_ideal() {
        for id in [ConfigId::A3, ConfigId::B3(2), ConfigId::FermatLike(3)] {
            let c = build(id).unwrap();
            let sp = symbolic_power(&c, 1).unwrap();
            assert!(equal_as_ideals(sp.ideal().unwrap(), &c.ideal()).unwrap(), "{id}");
        }
    }

    #[test]
    fn a3_small_alphas() {
        let c = build(ConfigId::A3).unwrap();
        for (m, a) in [(1, 3), (2, 6), (3, 8), (4, 10)] {
            let sp = symbolic_power(&c, m).unwrap();
            assert_eq!(sp.alpha().unwrap(), a);
            assert_eq!(alpha_by_graded_pieces(&c, m, 1, 3 * m).unwrap(), Some(a));
            for g in sp.gens() {
                assert!(symbolic_membership(g, &c, m).unwrap());
            }
        }
    }

    #[test]
    fn fermat_membership() {
        let c = build(ConfigId::FermatLike(3)).unwrap();
        let f = special_forms(ConfigId::FermatLike(3)).unwrap().big_f;
        assert!(symbolic_membership(&f, &c, 3).unwrap());
        assert!(!symbolic_membership(&f, &c, 4).unwrap());
        assert!(!symbolic_membership(&f, &c, 10).unwrap());
        let mo = SymbolicPower::membership_only(&c, 3).unwrap();
        assert!(mo.gens().is_empty() && mo.contains(&f).unwrap());
    }

    #[test]
    fn sandwich_bounds() {
        let c5 = build(ConfigId::FermatLike(5)).unwrap();
        let r = alpha_symbolic(&c5, 3, Strategy::Sandwich, &SandwichOptions::verified()).unwrap();
        assert_eq!(r.exact(), Some(30));

        let c3 = build(ConfigId::FermatLike(3)).unwrap();
        let opts = SandwichOptions {
            bezout: true,
            ..SandwichOptions::verified()
        };
        let r = alpha_symbolic(&c3, 2, Strategy::Sandwich, &opts).unwrap();
        assert_eq!((r.lower, r.upper), (14, 16));
        let r = alpha_symbolic(&c3, 2, Strategy::Sandwich, &SandwichOptions::verified()).unwrap();
        assert_eq!((r.lower, r.upper), (12, 16));
    }

    #[test]
    fn waldschmidt_fermat_pinches() {
        let c = build(ConfigId::FermatLike(3)).unwrap();
        let rep = waldschmidt_report(&c, 3, Strategy::Sandwich, &SandwichOptions::verified(), &Budget::unlimited()).unwrap();
        assert_eq!(rep.certified_lower, "6");
        assert_eq!(rep.pinched.as_deref(), Some("6"));
    }
}
