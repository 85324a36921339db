//! Lower bounds for initial degrees of symbolic powers by iterated Bezout
//! reduction against linear reducers.
//!
//! A divisor D of degree d vanishing to order m_i along member i meets a
//! reducer H_j (a hyperplane) in a set containing every member on H_j.
//! When d is smaller than the total multiplicity along H_j, H_j must divide
//! D. If every reducer divides D the quotient is a divisor of degree
//! d - #reducers vanishing to order m_i - e_i, and the argument repeats.

use serde::{Deserialize, Serialize};

use crate::catalog::IncidenceConfig;
use crate::error::Result;

/// "No form of degree `d` vanishes to order `mults[i]` along member i."
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionClaim {
    pub config: IncidenceConfig,
    pub d: i64,
    pub mults: Vec<u32>,
}

impl ReductionClaim {
    pub fn uniform(config: &IncidenceConfig, d: i64, m: u32) -> Self {
        ReductionClaim {
            config: config.clone(),
            d,
            mults: vec![m; config.members.len()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Uniform(u32),
    PerMember(Vec<u32>),
}

impl Profile {
    fn at(&self, i: usize) -> u32 {
        match self {
            Profile::Uniform(m) => *m,
            Profile::PerMember(v) => v[i],
        }
    }

    /// True when vanishing to `mults` implies vanishing to this profile.
    fn dominated_by(&self, mults: &[u32]) -> bool {
        if let Profile::PerMember(v) = self {
            if v.len() != mults.len() {
                return false;
            }
        }
        mults.iter().enumerate().all(|(i, &m)| m >= self.at(i))
    }
}

/// A known bound: every nonzero form vanishing to `profile` has degree at
/// least `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseFact {
    pub config: String,
    pub name: String,
    pub profile: Profile,
    pub bound: u32,
    pub provenance: String,
}

impl BaseFact {
    /// A fact from an exact computation of alpha of the m-th symbolic power.
    pub fn computed(config: &str, m: u32, alpha: u32) -> Self {
        BaseFact {
            config: config.to_string(),
            name: format!("alpha(sym {m}) = {alpha}"),
            profile: Profile::Uniform(m),
            bound: alpha,
            provenance: "computed".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub d: i64,
    pub mults: Vec<u32>,
    /// Per reducer: total multiplicity along it, which must exceed `d`.
    pub reducer_sums: Vec<u64>,
    pub removed_degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Terminal {
    /// All reducers are forced but their product has degree above d.
    DegreeExhaustion { d: i64, reducer_degree: i64 },
    /// The remaining divisor would contradict a base fact.
    BaseFact { fact: BaseFact, d: i64, mults: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub config: String,
    pub d: i64,
    pub rounds: Vec<Round>,
    pub terminal: Terminal,
}

impl Certificate {
    /// The certified bound: alpha of the claimed symbolic power is at least this.
    pub fn lower_bound(&self) -> i64 {
        self.d + 1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Certified(Certificate),
    Inconclusive(String),
}

impl Outcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Outcome::Certified(c) => Some(c),
            Outcome::Inconclusive(_) => None,
        }
    }
}

fn reducer_sums(config: &IncidenceConfig, mults: &[u32]) -> Vec<u64> {
    config
        .reducers
        .iter()
        .map(|r| r.member_ids.iter().map(|&i| mults[i] as u64).sum())
        .collect()
}

fn matching_fact<'a>(facts: &'a [BaseFact], config: &str, d: i64, mults: &[u32]) -> Option<&'a BaseFact> {
    facts
        .iter()
        .filter(|f| f.config == config && d < f.bound as i64 && f.profile.dominated_by(mults))
        .max_by_key(|f| f.bound)
}

pub fn certify_lower_bound(claim: &ReductionClaim, base_facts: &[BaseFact]) -> Result<Outcome> {
    let cfg = &claim.config;
    cfg.validate()?;
    if claim.mults.len() != cfg.members.len() {
        return Err(crate::Error::MalformedConfig(format!(
            "{} multiplicities for {} members",
            claim.mults.len(),
            cfg.members.len()
        )));
    }
    let total_degree: i64 = cfg.reducers.iter().map(|r| r.degree as i64).sum();
    let mut d = claim.d;
    let mut mults = claim.mults.clone();
    let mut rounds = Vec::new();
    let done = |rounds, terminal| {
        Ok(Outcome::Certified(Certificate {
            config: cfg.config.clone(),
            d: claim.d,
            rounds,
            terminal,
        }))
    };
    loop {
        if d < 0 {
            return done(rounds, Terminal::DegreeExhaustion { d, reducer_degree: 0 });
        }
        if let Some(f) = matching_fact(base_facts, &cfg.config, d, &mults) {
            return done(
                rounds,
                Terminal::BaseFact {
                    fact: f.clone(),
                    d,
                    mults,
                },
            );
        }
        if mults.iter().all(|&m| m == 0) {
            return Ok(Outcome::Inconclusive(format!("no vanishing left at degree {d}")));
        }
        let sums = reducer_sums(cfg, &mults);
        if let Some(j) = sums.iter().position(|&s| d >= s as i64) {
            return Ok(Outcome::Inconclusive(format!(
                "reducer {} not forced: degree {d} >= {}",
                cfg.reducers[j].id, sums[j]
            )));
        }
        if total_degree > d {
            return done(
                rounds,
                Terminal::DegreeExhaustion {
                    d,
                    reducer_degree: total_degree,
                },
            );
        }
        rounds.push(Round {
            d,
            mults: mults.clone(),
            reducer_sums: sums,
            removed_degree: total_degree,
        });
        d -= total_degree;
        for (m, member) in mults.iter_mut().zip(&cfg.members) {
            *m = m.saturating_sub(member.reducer_count);
        }
    }
}

/// Re-checks a certificate against the claim using only the incidence data.
pub fn replay(cert: &Certificate, claim: &ReductionClaim) -> bool {
    let cfg = &claim.config;
    if cfg.validate().is_err() || cert.d != claim.d || cert.config != cfg.config {
        return false;
    }
    let total_degree: i64 = cfg.reducers.iter().map(|r| r.degree as i64).sum();
    let mut d = claim.d;
    let mut mults = claim.mults.clone();
    for round in &cert.rounds {
        if round.d != d || round.mults != mults || round.removed_degree != total_degree {
            return false;
        }
        let sums = reducer_sums(cfg, &mults);
        if round.reducer_sums != sums || sums.iter().any(|&s| d >= s as i64) {
            return false;
        }
        if total_degree > d {
            return false;
        }
        d -= total_degree;
        for (i, m) in mults.iter_mut().enumerate() {
            *m = m.saturating_sub(cfg.members[i].reducer_count);
        }
    }
    match &cert.terminal {
        Terminal::DegreeExhaustion { d: td, reducer_degree } => {
            if *td != d {
                return false;
            }
            d < 0
                || (*reducer_degree == total_degree
                    && total_degree > d
                    && reducer_sums(cfg, &mults).iter().all(|&s| d < s as i64))
        }
        Terminal::BaseFact { fact, d: td, mults: tm } => {
            *td == d
                && *tm == mults
                && fact.config == cfg.config
                && d < fact.bound as i64
                && fact.profile.dominated_by(&mults)
        }
    }
}

/// Largest certified bound for a uniform claim: scans degrees upward from
/// `from` and returns the last certificate before the prover gives up.
pub fn best_uniform_bound(
    config: &IncidenceConfig,
    m: u32,
    from: i64,
    to: i64,
    base_facts: &[BaseFact],
) -> Result<Option<Certificate>> {
    let mut best = None;
    for d in from..=to {
        match certify_lower_bound(&ReductionClaim::uniform(config, d, m), base_facts)? {
            Outcome::Certified(c) => best = Some(c),
            Outcome::Inconclusive(_) => break,
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{incidence, ConfigId};

    fn i3_facts() -> Vec<BaseFact> {
        vec![
            BaseFact::computed("fermat_like:3", 1, 8),
            BaseFact::computed("fermat_like:3", 2, 16),
        ]
    }

    #[test]
    fn a3_second_power() {
        let cfg = incidence(ConfigId::A3).unwrap();
        let claim = ReductionClaim::uniform(&cfg, 5, 2);
        let cert = certify_lower_bound(&claim, &[]).unwrap();
        let cert = cert.certificate().unwrap();
        assert!(matches!(cert.terminal, Terminal::DegreeExhaustion { .. }));
        assert!(cert.rounds.is_empty());
        assert_eq!(cert.lower_bound(), 6);
        assert!(replay(cert, &claim));
        let c6 = ReductionClaim::uniform(&cfg, 6, 2);
        assert!(matches!(certify_lower_bound(&c6, &[]).unwrap(), Outcome::Inconclusive(_)));
    }

    #[test]
    fn fermat_three_with_base_facts() {
        let cfg = incidence(ConfigId::FermatLike(3)).unwrap();
        let claim = ReductionClaim::uniform(&cfg, 25, 4);
        let out = certify_lower_bound(&claim, &i3_facts()).unwrap();
        let cert = out.certificate().unwrap();
        assert_eq!(cert.rounds.len(), 1);
        match &cert.terminal {
            Terminal::BaseFact { fact, d, .. } => assert_eq!((fact.bound, *d), (8, 7)),
            t => panic!("{t:?}"),
        }
        assert!(replay(cert, &claim));
        let json = cert.to_json();
        assert!(replay(&Certificate::from_json(&json).unwrap(), &claim));

        let mut weak = cert.clone();
        weak.rounds[0].reducer_sums[3] = 20;
        assert!(!replay(&weak, &claim));

        let c26 = ReductionClaim::uniform(&cfg, 26, 4);
        assert!(matches!(certify_lower_bound(&c26, &i3_facts()).unwrap(), Outcome::Inconclusive(_)));
    }

    #[test]
    fn second_power_bounds() {
        for n in 3..=6 {
            let cfg = incidence(ConfigId::FermatLike(n)).unwrap();
            let d = 4 * n as i64 + 1;
            let best = best_uniform_bound(&cfg, 2, 0, 100, &[]).unwrap().unwrap();
            assert_eq!(best.lower_bound(), d + 1);
        }
    }

    #[test]
    fn i3_families() {
        let cfg = incidence(ConfigId::FermatLike(3)).unwrap();
        for k in 1..=2i64 {
            for (m, d) in [(3 * k + 1, 18 * k + 7), (3 * k + 2, 18 * k + 15)] {
                let claim = ReductionClaim::uniform(&cfg, d, m as u32);
                let out = certify_lower_bound(&claim, &i3_facts()).unwrap();
                assert!(replay(out.certificate().expect("certified"), &claim), "m={m}");
            }
        }
    }

    #[test]
    fn monotone_in_degree() {
        let cfg = incidence(ConfigId::FermatLike(3)).unwrap();
        for m in 1..=8 {
            for d in 1..80 {
                let hi = certify_lower_bound(&ReductionClaim::uniform(&cfg, d, m), &i3_facts()).unwrap();
                if hi.certificate().is_some() {
                    let lo = certify_lower_bound(&ReductionClaim::uniform(&cfg, d - 1, m), &i3_facts()).unwrap();
                    assert!(lo.certificate().is_some(), "m={m} d={d}");
                }
            }
        }
    }
}
