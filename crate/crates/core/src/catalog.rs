//! Named ideals: the Fermat-like line configurations in P^3, the A3 point
//! configuration and the B3-type family in P^2, with their primary
//! decompositions, witness polynomials and incidence data.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::idealops::IdealHandle;
use crate::polyexpr::parse_poly;
use crate::polyring::{Polynomial, Ring, RingRef};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConfigId {
    FermatLike(u32),
    A3,
    B3(u32),
}

impl fmt::Display for ConfigId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigId::FermatLike(n) => write!(f, "fermat_like:{n}"),
            ConfigId::A3 => f.write_str("a3"),
            ConfigId::B3(n) => write!(f, "b3:{n}"),
        }
    }
}

impl FromStr for ConfigId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadParameter(format!("unknown configuration `{s}` (expected fermat_like:<n>, a3 or b3:<n>)"));
        let id = match s.split_once(':') {
            None if s == "a3" => ConfigId::A3,
            Some(("fermat_like", n)) => ConfigId::FermatLike(n.parse().map_err(|_| bad())?),
            Some(("b3", n)) => ConfigId::B3(n.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        id.validate()?;
        Ok(id)
    }
}

impl ConfigId {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ConfigId::FermatLike(n) if n < 3 => Err(Error::BadParameter(format!("fermat_like needs n >= 3, got {n}"))),
            ConfigId::B3(0) => Err(Error::BadParameter("b3 needs n >= 1".into())),
            _ => Ok(()),
        }
    }

    pub fn variables(&self) -> &'static [&'static str] {
        match self {
            ConfigId::FermatLike(_) => &["x", "y", "z", "w"],
            _ => &["x", "y", "z"],
        }
    }

    pub fn ring(&self) -> RingRef {
        Ring::grevlex(self.variables()).expect("static variable names")
    }
}

/// A catalog ideal with the data needed to form its symbolic powers.
#[derive(Clone, Debug)]
pub struct NamedIdeal {
    pub id: ConfigId,
    pub ring: RingRef,
    pub gens: Vec<Polynomial>,
    /// Ideals whose `m`-th powers intersect to the `m`-th symbolic power.
    pub components: Vec<IdealHandle>,
    /// A second decomposition, when one is known, for cross-checking.
    pub alt_components: Option<Vec<IdealHandle>>,
    pub big_height: u32,
    pub incidence: IncidenceConfig,
    pub notes: String,
}

impl NamedIdeal {
    pub fn ideal(&self) -> IdealHandle {
        IdealHandle::new(&self.ring, self.gens.clone()).expect("catalog generators share a ring")
    }

    /// Components that are not generated by variables.
    pub fn nonlinear_components(&self) -> impl Iterator<Item = &IdealHandle> {
        self.components.iter().filter(|c| !c.is_monomial())
    }

    pub fn poly(&self, src: &str) -> Polynomial {
        parse_poly(src, &self.ring).expect("catalog expressions parse")
    }
}

fn ideal_of(ring: &RingRef, src: &[String]) -> IdealHandle {
    let gens = src.iter().map(|s| parse_poly(s, ring).expect("catalog expressions parse")).collect();
    IdealHandle::new(ring, gens).expect("single ring")
}

fn coordinate_primes(ring: &RingRef) -> Vec<IdealHandle> {
    let n = ring.nvars();
    if n == 3 {
        // (x,y), (y,z), (z,x)
        return [[0, 1], [1, 2], [0, 2]]
            .iter()
            .map(|p| IdealHandle::linear_prime(ring, p))
            .collect();
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(IdealHandle::linear_prime(ring, &[i, j]));
        }
    }
    out
}

/// The degree-2n forms f, g, h and their product F of a Fermat-like ideal.
#[derive(Clone, Debug)]
pub struct SpecialForms {
    pub f: Polynomial,
    pub g: Polynomial,
    pub h: Polynomial,
    pub big_f: Polynomial,
}

fn fermat_exprs(n: u32) -> [String; 3] {
    [
        format!("(x^{n}-y^{n})*(z^{n}-w^{n})"),
        format!("(x^{n}-z^{n})*(y^{n}-w^{n})"),
        format!("(x^{n}-w^{n})*(y^{n}-z^{n})"),
    ]
}

pub fn special_forms(id: ConfigId) -> Result<SpecialForms> {
    let ConfigId::FermatLike(n) = id else {
        return Err(Error::BadParameter(format!("{id} has no special forms")));
    };
    id.validate()?;
    let ring = id.ring();
    let [f, g, h] = fermat_exprs(n).map(|s| parse_poly(&s, &ring).unwrap());
    let big_f = &(&f * &g) * &h;
    Ok(SpecialForms { f, g, h, big_f })
}

pub fn build(id: ConfigId) -> Result<NamedIdeal> {
    id.validate()?;
    let ring = id.ring();
    match id {
        ConfigId::FermatLike(n) => {
            let [f, g, h] = fermat_exprs(n);
            let gens = [
                format!("{f}*x*y"),
                format!("{f}*z*w"),
                format!("{g}*x*z"),
                format!("{g}*y*w"),
                format!("{h}*x*w"),
                format!("{h}*y*z"),
            ];
            let gens = gens.iter().map(|s| parse_poly(s, &ring).unwrap()).collect();
            let mut components = vec![ideal_of(&ring, &[f, g])];
            components.extend(coordinate_primes(&ring));
            Ok(NamedIdeal {
                id,
                ring,
                gens,
                components,
                alt_components: None,
                big_height: 2,
                incidence: incidence(id)?,
                notes: format!("{} lines in P^3 cut out by x_i^{n} = x_j^{n}", 4 * n * n + 6),
            })
        }
        ConfigId::A3 => {
            let gens = ["y*z*(y-z)", "z*x*(z-x)", "x*y*(x-y)"]
                .iter()
                .map(|s| parse_poly(s, &ring).unwrap())
                .collect();
            let mut components = vec![k_prime_1(&ring)];
            components.extend(coordinate_primes(&ring));
            Ok(NamedIdeal {
                id,
                ring,
                gens,
                components,
                alt_components: None,
                big_height: 2,
                incidence: incidence(id)?,
                notes: "7 points: singular locus of the A3 reflection arrangement".into(),
            })
        }
        ConfigId::B3(n) => {
            let gens = [
                format!("y*z*(y^{n}-z^{n})"),
                format!("z*x*(z^{n}-x^{n})"),
                format!("x*y*(x^{n}-y^{n})"),
            ]
            .iter()
            .map(|s| parse_poly(s, &ring).unwrap())
            .collect();
            let k = ideal_of(&ring, &[format!("x^{n}-y^{n}"), format!("y^{n}-z^{n}")]);
            let mut components = vec![
                ideal_of(&ring, &["x".into(), format!("y^{n}-z^{n}")]),
                ideal_of(&ring, &["y".into(), format!("z^{n}-x^{n}")]),
                ideal_of(&ring, &["z".into(), format!("x^{n}-y^{n}")]),
                k.clone(),
            ];
            components.extend(coordinate_primes(&ring));
            let alt_components = (n == 2).then(|| {
                let mut alt = vec![
                    k_prime_1(&ring),
                    ideal_of(&ring, &["x+y+z".into(), "y*z*(y+z)".into()]),
                    k,
                ];
                alt.extend(coordinate_primes(&ring));
                alt
            });
            Ok(NamedIdeal {
                id,
                ring,
                gens,
                components,
                alt_components,
                big_height: 2,
                incidence: incidence(id)?,
                notes: format!("{} points on {} lines in P^2", n * n + 3 * n + 3, 3 * n + 3),
            })
        }
    }
}

fn k_prime_1(ring: &RingRef) -> IdealHandle {
    ideal_of(ring, &["(y-z)*(y+z-x)".into(), "(x-y)*(x+y-z)".into()])
}

// ---------------------------------------------------------------------------
// witnesses

/// A polynomial known to lie in a given symbolic power.
#[derive(Clone, Debug)]
pub struct WitnessEntry {
    pub config: ConfigId,
    pub m: u32,
    pub family: &'static str,
    pub expression: String,
    pub poly: Polynomial,
    pub degree: u32,
}

fn witness(config: ConfigId, m: u32, family: &'static str, expression: String, degree: u32) -> WitnessEntry {
    let poly = parse_poly(&expression, &config.ring()).expect("witness expressions parse");
    debug_assert_eq!(poly.degree(), Some(degree));
    WitnessEntry {
        config,
        m,
        family,
        expression,
        poly,
        degree,
    }
}

fn pow(base: &str, k: u32) -> String {
    match k {
        0 => "1".into(),
        1 => format!("({base})"),
        _ => format!("({base})^{k}"),
    }
}

/// Witness polynomials of the `m`-th symbolic power, with claimed degrees.
pub fn witness_catalog(id: ConfigId, m: u32) -> Result<Vec<WitnessEntry>> {
    id.validate()?;
    if m == 0 {
        return Err(Error::BadParameter("symbolic order must be positive".into()));
    }
    let mut out = Vec::new();
    match id {
        ConfigId::FermatLike(n) => {
            let [f, g, h] = fermat_exprs(n);
            let fgh = format!("{f}*{g}*{h}");
            if m.is_multiple_of(3) {
                let k = m / 3;
                out.push(witness(id, m, "a", format!("({fgh})^{k}"), 6 * n * k));
            }
            if (3..=n).contains(&m) {
                for a in (0..=m - 3).rev() {
                    let b = m - 3 - a;
                    let expr = format!("{fgh}*{}*{}", pow(&f, a), pow(&g, b));
                    out.push(witness(id, m, "b", expr, 2 * n * m));
                }
            }
            let mut k = 2;
            while k * n < m + n {
                if k * n >= m {
                    let a = k * n - m;
                    if a < n && k * (n - 3) >= a {
                        let e = k * (n - 3) - a;
                        let expr = format!("({fgh})^{k}*{}", pow(&g, e));
                        out.push(witness(id, m, "c", expr, 2 * n * m));
                    }
                }
                k += 1;
            }
            if n == 4 && m == 5 {
                out.push(witness(id, m, "d", format!("y*z*{f}*{}*{}", pow(&g, 2), pow(&h, 2)), 42));
            }
            if n == 3 && m >= 4 && m % 3 == 1 {
                let k = (m - 1) / 3;
                let expr = format!("{}*{}*{}*y*z", pow(&f, k), pow(&g, k), pow(&h, k + 1));
                out.push(witness(id, m, "e", expr, 18 * k + 8));
            }
            if n == 3 && m >= 5 && m % 3 == 2 {
                let k = (m - 2) / 3;
                let expr = format!("{}*{}*{}*x*y*z*w", pow(&f, k + 1), pow(&g, k + 1), pow(&h, k));
                out.push(witness(id, m, "f", expr, 18 * k + 16));
            }
        }
        ConfigId::A3 => {
            let block = "(y-z)*(z-x)*x*y*z^2";
            let case1 = |k: u32| format!("{}*{}*{}", pow(block, k), pow("x-y", 2 * k), pow("x+y-z", 2 * k));
            let big_g = "x^2*y^2*z^2*(x-y)^2*(y-z)^2*(z-x)^2*(x+y-z)*(y+z-x)*(z+x-y)";
            match m % 4 {
                0 => out.push(witness(id, m, "g1", case1(m / 4), 10 * (m / 4))),
                2 if m >= 6 => {
                    let k = (m - 6) / 4;
                    out.push(witness(id, m, "g2", format!("{big_g}*{}", case1(k)), 10 * k + 15));
                }
                1 => {
                    let k = (m - 1) / 4;
                    let expr = format!(
                        "x^{k}*y^{}*z^{}*{}*{}*{}*{}",
                        k + 1,
                        2 * k + 1,
                        pow("y-z", k + 1),
                        pow("z-x", k),
                        pow("x-y", 2 * k),
                        pow("x+y-z", 2 * k)
                    );
                    out.push(witness(id, m, "g3", expr, 10 * k + 3));
                }
                3 => {
                    let k = (m - 3) / 4;
                    let expr = format!("{}*{}*{}", pow(block, k + 1), pow("x-y", 2 * k + 1), pow("x+y-z", 2 * k + 1));
                    out.push(witness(id, m, "g4", expr, 10 * k + 8));
                }
                _ => {}
            }
        }
        ConfigId::B3(_) => {}
    }
    if out.is_empty() {
        return Err(Error::NoWitnessKnown {
            config: id.to_string(),
            m,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// incidence

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub id: String,
    /// Number of reducers containing this member.
    pub reducer_count: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearReducer {
    pub id: String,
    pub degree: u32,
    pub member_ids: Vec<usize>,
}

/// Members (lines in P^3 or points in P^2) against the linear forms
/// (planes or lines) that contain them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceConfig {
    pub config: String,
    pub members: Vec<Member>,
    pub reducers: Vec<LinearReducer>,
}

impl IncidenceConfig {
    fn from_lists(config: String, member_ids: Vec<String>, reducers: Vec<(String, Vec<usize>)>) -> Self {
        let mut counts = vec![0u32; member_ids.len()];
        for (_, ms) in &reducers {
            for &i in ms {
                counts[i] += 1;
            }
        }
        IncidenceConfig {
            config,
            members: member_ids
                .into_iter()
                .zip(counts)
                .map(|(id, reducer_count)| Member { id, reducer_count })
                .collect(),
            reducers: reducers
                .into_iter()
                .map(|(id, member_ids)| LinearReducer {
                    id,
                    degree: 1,
                    member_ids,
                })
                .collect(),
        }
    }

    /// Members per reducer.
    pub fn s(&self, j: usize) -> usize {
        self.reducers[j].member_ids.len()
    }

    pub fn e_profile(&self) -> Vec<u32> {
        let mut e: Vec<u32> = self.members.iter().map(|m| m.reducer_count).collect();
        e.sort_unstable_by(|a, b| b.cmp(a));
        e
    }

    /// Checks that reducer lists agree with the per-member counts, that
    /// both sides of the double count agree, and that each member lies on
    /// at least two reducers.
    pub fn validate(&self) -> Result<()> {
        let mut counts = vec![0u32; self.members.len()];
        for r in &self.reducers {
            if r.degree != 1 {
                return Err(Error::MalformedConfig(format!("reducer {} has degree {}", r.id, r.degree)));
            }
            for &i in &r.member_ids {
                let c = counts
                    .get_mut(i)
                    .ok_or_else(|| Error::MalformedConfig(format!("reducer {} names member {i}", r.id)))?;
                *c += 1;
            }
        }
        let lhs: usize = (0..self.reducers.len()).map(|j| self.s(j)).sum();
        let rhs: u32 = self.members.iter().map(|m| m.reducer_count).sum();
        if lhs != rhs as usize {
            return Err(Error::MalformedConfig(format!("double count fails: {lhs} != {rhs}")));
        }
        for (m, c) in self.members.iter().zip(counts) {
            if m.reducer_count != c {
                return Err(Error::MalformedConfig(format!(
                    "member {} claims {} reducers but lies on {c}",
                    m.id, m.reducer_count
                )));
            }
            if c < 2 {
                return Err(Error::MalformedConfig(format!("member {} lies on fewer than 2 reducers", m.id)));
            }
        }
        Ok(())
    }
}

const COORDS4: [&str; 4] = ["x", "y", "z", "w"];

pub fn incidence(id: ConfigId) -> Result<IncidenceConfig> {
    id.validate()?;
    let cfg = match id {
        ConfigId::FermatLike(n) => {
            // Planes x_i = e^r x_j (i < j, e a primitive n-th root of unity).
            let mut plane_index = std::collections::HashMap::new();
            let mut planes: Vec<(String, Vec<usize>)> = Vec::new();
            for i in 0..4 {
                for j in i + 1..4 {
                    for r in 0..n {
                        plane_index.insert((i, j, r), planes.len());
                        planes.push((format!("{}=e^{r}*{}", COORDS4[i], COORDS4[j]), Vec::new()));
                    }
                }
            }
            let mut members = Vec::new();
            for i in 0..4 {
                for j in i + 1..4 {
                    let idx = members.len();
                    members.push(format!("{}={}=0", COORDS4[i], COORDS4[j]));
                    for r in 0..n {
                        planes[plane_index[&(i, j, r)]].1.push(idx);
                    }
                }
            }
            // Lines with three coordinates proportional: x_i = e^a x_j and
            // x_i = e^b x_k, hence x_j = e^(b-a) x_k.
            for i in 0..4 {
                for j in i + 1..4 {
                    for k in j + 1..4 {
                        for a in 0..n {
                            for b in 0..n {
                                let idx = members.len();
                                members.push(format!(
                                    "{}=e^{a}*{},{}=e^{b}*{}",
                                    COORDS4[i], COORDS4[j], COORDS4[i], COORDS4[k]
                                ));
                                let c = (b + n - a) % n;
                                for key in [(i, j, a), (i, k, b), (j, k, c)] {
                                    planes[plane_index[&key]].1.push(idx);
                                }
                            }
                        }
                    }
                }
            }
            IncidenceConfig::from_lists(id.to_string(), members, planes)
        }
        ConfigId::A3 => b3_incidence(id.to_string(), 1),
        ConfigId::B3(n) => b3_incidence(id.to_string(), n),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn b3_incidence(config: String, n: u32) -> IncidenceConfig {
    let mut lines: Vec<(String, Vec<usize>)> = vec![
        ("x=0".into(), vec![]),
        ("y=0".into(), vec![]),
        ("z=0".into(), vec![]),
    ];
    // Families x = e^a y, y = e^a z, z = e^a x at offsets 3, 3+n, 3+2n.
    for (u, v) in [("x", "y"), ("y", "z"), ("z", "x")] {
        for a in 0..n {
            lines.push((format!("{u}=e^{a}*{v}"), vec![]));
        }
    }
    let fam = |f: u32, a: u32| (3 + f * n + a) as usize;
    let mut points = Vec::new();
    let put = |points: &mut Vec<String>, lines: &mut Vec<(String, Vec<usize>)>, id: String, on: Vec<usize>| {
        let idx = points.len();
        points.push(id);
        for l in on {
            lines[l].1.push(idx);
        }
    };
    // Coordinate points.
    put(&mut points, &mut lines, "[1:0:0]".into(), [1, 2].into_iter().chain((0..n).map(|a| fam(1, a))).collect());
    put(&mut points, &mut lines, "[0:1:0]".into(), [0, 2].into_iter().chain((0..n).map(|a| fam(2, a))).collect());
    put(&mut points, &mut lines, "[0:0:1]".into(), [0, 1].into_iter().chain((0..n).map(|a| fam(0, a))).collect());
    // Points with all coordinates nonzero: x = e^a y, y = e^b z.
    for a in 0..n {
        for b in 0..n {
            let c = (2 * n - a - b) % n;
            put(&mut points, &mut lines, format!("x=e^{a}*y,y=e^{b}*z"), vec![fam(0, a), fam(1, b), fam(2, c)]);
        }
    }
    // Points on a coordinate line away from the coordinate points.
    for a in 0..n {
        put(&mut points, &mut lines, format!("x=0,y=e^{a}*z"), vec![0, fam(1, a)]);
    }
    for a in 0..n {
        put(&mut points, &mut lines, format!("y=0,z=e^{a}*x"), vec![1, fam(2, a)]);
    }
    for a in 0..n {
        put(&mut points, &mut lines, format!("z=0,x=e^{a}*y"), vec![2, fam(0, a)]);
    }
    IncidenceConfig::from_lists(config, points, lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_ids() {
        for s in ["fermat_like:3", "a3", "b3:2"] {
            assert_eq!(s.parse::<ConfigId>().unwrap().to_string(), s);
        }
        assert!("fermat_like:2".parse::<ConfigId>().is_err());
        assert!("b3:0".parse::<ConfigId>().is_err());
        assert!("d4".parse::<ConfigId>().is_err());
    }

    #[test]
    fn fermat_generators_factor() {
        let c = build(ConfigId::FermatLike(3)).unwrap();
        let sf = special_forms(ConfigId::FermatLike(3)).unwrap();
        let v = |i| Polynomial::var(&c.ring, i);
        let expect = [
            &sf.f * &(v(0) * v(1)),
            &sf.f * &(v(2) * v(3)),
            &sf.g * &(v(0) * v(2)),
            &sf.g * &(v(1) * v(3)),
            &sf.h * &(v(0) * v(3)),
            &sf.h * &(v(1) * v(2)),
        ];
        assert_eq!(c.gens, expect);
        assert!(c.gens.iter().all(|g| g.is_homogeneous() && g.degree() == Some(8)));
        assert_eq!(c.components.len(), 7);
        assert_eq!(sf.big_f.degree(), Some(18));
        for n in 3..=6 {
            let sf = special_forms(ConfigId::FermatLike(n)).unwrap();
            assert_eq!(sf.h, &sf.g - &sf.f);
        }
        assert!(special_forms(ConfigId::A3).is_err());
    }

    #[test]
    fn component_counts() {
        assert_eq!(build(ConfigId::A3).unwrap().components.len(), 4);
        let b = build(ConfigId::B3(2)).unwrap();
        assert_eq!(b.components.len(), 7);
        assert_eq!(b.alt_components.as_ref().unwrap().len(), 6);
        assert!(build(ConfigId::FermatLike(1)).is_err());
    }

    #[test]
    fn witness_degrees() {
        for (id, m) in [
            (ConfigId::FermatLike(3), 3),
            (ConfigId::FermatLike(3), 4),
            (ConfigId::FermatLike(3), 8),
            (ConfigId::FermatLike(4), 5),
            (ConfigId::FermatLike(5), 4),
            (ConfigId::FermatLike(5), 7),
            (ConfigId::A3, 5),
            (ConfigId::A3, 6),
            (ConfigId::A3, 11),
        ] {
            for w in witness_catalog(id, m).unwrap() {
                assert!(w.poly.is_homogeneous(), "{id} m={m} {}", w.family);
                assert_eq!(w.poly.degree(), Some(w.degree), "{id} m={m} {}", w.family);
            }
        }
        let w = witness_catalog(ConfigId::A3, 5).unwrap();
        assert_eq!((w[0].family, w[0].degree), ("g3", 13));
        assert!(matches!(
            witness_catalog(ConfigId::FermatLike(3), 2),
            Err(Error::NoWitnessKnown { .. })
        ));
        let w = witness_catalog(ConfigId::FermatLike(3), 3).unwrap();
        assert_eq!(w[0].poly, special_forms(ConfigId::FermatLike(3)).unwrap().big_f);
    }

    #[test]
    fn incidence_counts() {
        for n in 3..=8 {
            let c = incidence(ConfigId::FermatLike(n)).unwrap();
            assert_eq!(c.members.len() as u32, 4 * n * n + 6);
            assert_eq!(c.reducers.len() as u32, 6 * n);
            assert!((0..c.reducers.len()).all(|j| c.s(j) as u32 == 2 * n + 1));
            let e = c.e_profile();
            assert_eq!(e.iter().filter(|&&x| x == 3).count() as u32, 4 * n * n + if n == 3 { 6 } else { 0 });
        }
        let a3 = incidence(ConfigId::A3).unwrap();
        assert_eq!(a3.e_profile(), [3, 3, 3, 3, 2, 2, 2]);
        assert_eq!(a3.reducers.len(), 6);
        let b3 = incidence(ConfigId::B3(2)).unwrap();
        assert_eq!(b3.e_profile(), [4, 4, 4, 3, 3, 3, 3, 2, 2, 2, 2, 2, 2]);
        assert!((0..9).all(|j| b3.s(j) == 4));
        for n in 1..=8 {
            let c = incidence(ConfigId::B3(n)).unwrap();
            assert_eq!(c.members.len() as u32, n * n + 3 * n + 3);
        }
    }

    #[test]
    fn malformed_config_detected() {
        let mut c = incidence(ConfigId::A3).unwrap();
        c.members[0].reducer_count += 1;
        assert!(matches!(c.validate(), Err(Error::MalformedConfig(_))));
    }
}
