//! Buchberger's algorithm over the rationals with fraction-free integer
//! reduction, sugar selection and Gebauer-Moeller pair pruning.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::polyexpr::to_sid;
use crate::polyring::{Monomial, MonomialOrder, Polynomial, RingRef, Term, MAX_VARS};

/// Resource limits for a single basis computation.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub seconds: Option<f64>,
    pub max_basis: Option<usize>,
    pub max_degree: Option<u32>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn new(seconds: f64, max_basis: usize) -> Self {
        Budget {
            seconds: Some(seconds),
            max_basis: Some(max_basis),
            max_degree: None,
        }
    }

    pub(crate) fn deadline(&self) -> Option<Instant> {
        self.seconds
            .map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0)))
    }
}

/// Reduced Groebner basis normalized to primitive integer elements with
/// positive leading coefficients, sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: RingRef,
    basis: Vec<Polynomial>,
    source_hash: String,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Polynomial> {
        self.basis
    }

    pub fn source_hash(&self) -> &str {
        &self.source_hash
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().filter_map(|p| p.leading_monomial()).collect()
    }

    /// Rebuilds a basis from trusted parts, e.g. a cache entry.
    pub fn from_parts(ring: &RingRef, basis: Vec<Polynomial>, source_hash: String) -> Self {
        GroebnerBasis {
            ring: ring.clone(),
            basis,
            source_hash,
        }
    }
}

/// Content hash of the canonical serialization of `gens` plus the order.
pub fn source_hash(ring: &RingRef, gens: &[Polynomial]) -> String {
    let mut h = Sha256::new();
    h.update(to_sid(ring, gens).as_bytes());
    h.update(ring.order().name().as_bytes());
    let digest = h.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

// ---------------------------------------------------------------------------
// integer polynomials

type IPoly = Vec<(Monomial, BigInt)>;

fn to_integer(p: &Polynomial) -> IPoly {
    let mut den = BigInt::one();
    for t in p.terms() {
        den = den.lcm(t.coeff.denom());
    }
    let mut out: IPoly = p
        .terms()
        .iter()
        .map(|t| (t.mono, t.coeff.numer() * (&den / t.coeff.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

fn content(p: &[(Monomial, BigInt)]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content and makes the leading coefficient positive.
/// Returns the (signed) divisor applied.
fn make_primitive(p: &mut IPoly) -> BigInt {
    if p.is_empty() {
        return BigInt::one();
    }
    let mut g = content(p);
    if p[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, c) in p.iter_mut() {
            *c /= &g;
        }
    }
    g
}

fn to_poly(ring: &RingRef, p: IPoly) -> Polynomial {
    Polynomial::from_sorted_terms(
        ring,
        p.into_iter()
            .map(|(mono, c)| Term {
                coeff: BigRational::from_integer(c),
                mono,
            })
            .collect(),
    )
}

fn bits(p: &[(Monomial, BigInt)]) -> u64 {
    p.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
}

#[derive(Clone, Copy)]
struct Cmp {
    order: MonomialOrder,
    nvars: usize,
}

impl Cmp {
    #[inline]
    fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.nvars)
    }

    /// `a*f - b*q*g`, where the leading terms are known to cancel.
    fn combine(&self, a: &BigInt, f: &[(Monomial, BigInt)], b: &BigInt, q: &Monomial, g: &[(Monomial, BigInt)]) -> IPoly {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let a_one = a.is_one();
        let (mut i, mut j) = (1, 1);
        while i < f.len() || j < g.len() {
            let ord = if i == f.len() {
                Ordering::Less
            } else if j == g.len() {
                Ordering::Greater
            } else {
                self.cmp(&f[i].0, &q.mul(&g[j].0))
            };
            match ord {
                Ordering::Greater => {
                    let c = if a_one { f[i].1.clone() } else { a * &f[i].1 };
                    out.push((f[i].0, c));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((q.mul(&g[j].0), -(b * &g[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if a_one { f[i].1.clone() } else { a * &f[i].1 } - b * &g[j].1;
                    if !c.is_zero() {
                        out.push((f[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }
}

struct Reducer<'a> {
    lm: Monomial,
    mask: u32,
    poly: &'a [(Monomial, BigInt)],
}

fn find_reducer<'a>(reducers: &'a [Reducer<'a>], m: &Monomial) -> Option<&'a Reducer<'a>> {
    let mask = m.divmask();
    let mut best: Option<&Reducer> = None;
    for r in reducers {
        if r.mask & !mask == 0 && r.lm.divides(m) && best.is_none_or(|b| r.poly.len() < b.poly.len()) {
            best = Some(r);
        }
    }
    best
}

/// Fully reduces `h` by `reducers`. Returns the remainder together with
/// the rational factor `s` such that remainder = s * (h - combination).
fn reduce_full(cmp: Cmp, h: IPoly, reducers: &[Reducer]) -> (IPoly, BigRational) {
    let mut scale = BigRational::one();
    let mut rem: IPoly = Vec::new();
    let mut tail = h;
    let mut pos = 0;
    let mut steps = 0usize;
    let start_bits = bits(&tail).max(64);
    while pos < tail.len() {
        let m = tail[pos].0;
        let Some(r) = find_reducer(reducers, &m) else {
            pos += 1;
            continue;
        };
        // Terms before `pos` are irreducible and final.
        rem.extend(tail.drain(..pos));
        pos = 0;
        let c = &tail[0].1;
        let lc = &r.poly[0].1;
        let g = c.gcd(lc);
        let mut a = lc / &g;
        let mut b = c / &g;
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        let q = r.lm.quotient_of(&m).expect("reducer divides");
        tail = cmp.combine(&a, &tail, &b, &q, r.poly);
        if !a.is_one() {
            for (_, rc) in rem.iter_mut() {
                *rc *= &a;
            }
            scale *= BigRational::from_integer(a);
        }
        steps += 1;
        if steps.is_multiple_of(16) || bits(&tail) > 2 * start_bits {
            let mut g = content(&tail);
            for (_, rc) in &rem {
                if g.is_one() {
                    break;
                }
                g = g.gcd(rc);
            }
            if !g.is_one() && !g.is_zero() {
                for (_, tc) in tail.iter_mut().chain(rem.iter_mut()) {
                    *tc /= &g;
                }
                scale /= BigRational::from_integer(g);
            }
        }
    }
    rem.extend(tail);
    (rem, BigRational::one() / scale)
}

fn spoly(cmp: Cmp, f: &[(Monomial, BigInt)], g: &[(Monomial, BigInt)]) -> IPoly {
    let (fm, fc) = (&f[0].0, &f[0].1);
    let (gm, gc) = (&g[0].0, &g[0].1);
    let l = fm.lcm(gm);
    let qf = fm.quotient_of(&l).unwrap();
    let qg = gm.quotient_of(&l).unwrap();
    let d = fc.gcd(gc);
    let a = gc / &d;
    let b = fc / &d;
    let fq: IPoly = f.iter().map(|(m, c)| (qf.mul(m), c.clone())).collect();
    cmp.combine(&a, &fq, &b, &qg, g)
}

// ---------------------------------------------------------------------------
// the engine

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct QueueKey {
    sugar: u32,
    lcm_key: [i64; MAX_VARS + 2],
    seq: u64,
}

enum Job {
    Pair(usize, usize),
    Gen(IPoly),
}

struct Elem {
    poly: IPoly,
    lm: Monomial,
    mask: u32,
    sugar: u32,
    active: bool,
}

struct PairRec {
    i: usize,
    j: usize,
    lcm: Monomial,
    live: bool,
}

/// Incremental Buchberger engine. Generators may be added between calls to
/// [`Engine::complete_to_degree`]; for homogeneous input the partial basis
/// is a truncated Groebner basis up to the completed degree.
pub struct Engine {
    ring: RingRef,
    cmp: Cmp,
    elems: Vec<Elem>,
    pairs: Vec<PairRec>,
    queue: BinaryHeap<Reverse<(QueueKey, usize)>>,
    jobs: Vec<Option<Job>>,
    seq: u64,
    budget: Budget,
    deadline: Option<Instant>,
    unit: bool,
}

impl Engine {
    pub fn new(ring: &RingRef, budget: Budget) -> Self {
        Engine {
            ring: ring.clone(),
            cmp: Cmp {
                order: ring.order(),
                nvars: ring.nvars(),
            },
            elems: Vec::new(),
            pairs: Vec::new(),
            queue: BinaryHeap::new(),
            jobs: Vec::new(),
            seq: 0,
            deadline: budget.deadline(),
            budget,
            unit: false,
        }
    }

    fn push_job(&mut self, sugar: u32, lcm: &Monomial, job: Job) {
        let key = QueueKey {
            sugar,
            lcm_key: self.cmp.order.sort_key(lcm, self.cmp.nvars),
            seq: self.seq,
        };
        self.seq += 1;
        self.jobs.push(Some(job));
        self.queue.push(Reverse((key, self.jobs.len() - 1)));
    }

    pub fn add_generator(&mut self, p: &Polynomial) -> Result<()> {
        if !p.ring().same_as(&self.ring) {
            return Err(Error::RingMismatch);
        }
        if p.is_zero() {
            return Ok(());
        }
        let ip = to_integer(p);
        let lm = ip[0].0;
        self.push_job(p.degree().unwrap(), &lm, Job::Gen(ip));
        Ok(())
    }

    fn reducers(&self) -> Vec<Reducer<'_>> {
        self.elems
            .iter()
            .filter(|e| e.active)
            .map(|e| Reducer {
                lm: e.lm,
                mask: e.mask,
                poly: &e.poly,
            })
            .collect()
    }

    fn check_budget(&self) -> Result<()> {
        if let Some(d) = self.deadline {
            if Instant::now() > d {
                return Err(Error::BudgetExceeded(format!(
                    "time limit of {:.0}s reached",
                    self.budget.seconds.unwrap_or(0.0)
                )));
            }
        }
        if let Some(cap) = self.budget.max_basis {
            if self.elems.len() > cap {
                return Err(Error::BudgetExceeded(format!(
                    "intermediate basis exceeded {cap} elements"
                )));
            }
        }
        Ok(())
    }

    /// Processes queued work whose sugar is at most `degree`.
    pub fn complete_to_degree(&mut self, degree: u32) -> Result<()> {
        self.run(Some(degree))
    }

    pub fn complete(&mut self) -> Result<()> {
        self.run(None)
    }

    fn run(&mut self, limit: Option<u32>) -> Result<()> {
        while let Some(Reverse((key, _))) = self.queue.peek() {
            if self.unit {
                self.queue.clear();
                break;
            }
            if limit.is_some_and(|d| key.sugar > d) {
                break;
            }
            if let Some(cap) = self.budget.max_degree {
                if key.sugar > cap {
                    return Err(Error::BudgetExceeded(format!("degree cap {cap} reached")));
                }
            }
            self.check_budget()?;
            let Reverse((key, idx)) = self.queue.pop().unwrap();
            let job = self.jobs[idx].take().unwrap();
            let h = match job {
                Job::Gen(p) => p,
                Job::Pair(pi, pj) => {
                    let rec = &self.pairs[pj];
                    debug_assert_eq!(rec.i, pi);
                    if !rec.live {
                        continue;
                    }
                    spoly(self.cmp, &self.elems[rec.i].poly, &self.elems[rec.j].poly)
                }
            };
            let (mut r, _) = reduce_full(self.cmp, h, &self.reducers());
            if r.is_empty() {
                continue;
            }
            make_primitive(&mut r);
            self.insert(r, key.sugar);
        }
        Ok(())
    }

    fn insert(&mut self, poly: IPoly, sugar: u32) {
        let lm = poly[0].0;
        if lm.is_one() {
            self.unit = true;
        }
        let k = self.elems.len();
        // Gebauer-Moeller: prune old pairs whose lcm the new leading
        // monomial strictly divides on both sides.
        for rec in self.pairs.iter_mut().filter(|r| r.live) {
            if lm.divides(&rec.lcm) {
                let li = self.elems[rec.i].lm.lcm(&lm);
                let lj = self.elems[rec.j].lm.lcm(&lm);
                if li != rec.lcm && lj != rec.lcm {
                    rec.live = false;
                }
            }
        }
        let mut cand: Vec<(usize, Monomial, bool)> = self
            .elems
            .iter()
            .enumerate()
            .filter(|(_, e)| e.active)
            .map(|(i, e)| (i, e.lm.lcm(&lm), e.lm.is_coprime(&lm)))
            .collect();
        // Chain criterion among the new pairs, then drop coprime ones.
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some(p) = cand.pop() {
            let dominated = !p.2
                && (cand.iter().any(|q| q.1.divides(&p.1)) || kept.iter().any(|q| q.1.divides(&p.1)));
            if !dominated {
                kept.push(p);
            }
        }
        let poly_sugar = sugar;
        let mut fresh = Vec::new();
        for (i, l, coprime) in kept {
            if coprime {
                continue;
            }
            let e = &self.elems[i];
            let s = (e.sugar + l.degree() - e.lm.degree()).max(poly_sugar + l.degree() - lm.degree());
            fresh.push((i, l, s));
        }
        // Deactivate elements made redundant by the new leading monomial.
        for e in self.elems.iter_mut().filter(|e| e.active) {
            if lm.divides(&e.lm) {
                e.active = false;
            }
        }
        self.elems.push(Elem {
            mask: lm.divmask(),
            lm,
            sugar,
            poly,
            active: true,
        });
        fresh.sort_by_key(|&(i, _, _)| i);
        for (i, l, s) in fresh {
            self.pairs.push(PairRec {
                i,
                j: k,
                lcm: l,
                live: true,
            });
            let pj = self.pairs.len() - 1;
            self.push_job(s, &l, Job::Pair(i, pj));
        }
    }

    /// Reduced basis of everything processed so far.
    pub fn basis(&self) -> GroebnerBasis {
        let ring = &self.ring;
        if self.unit {
            let one = Polynomial::one(ring);
            return GroebnerBasis::from_parts(ring, vec![one.clone()], source_hash(ring, &[one]));
        }
        let reducers = self.reducers();
        let mut out: Vec<IPoly> = Vec::with_capacity(reducers.len());
        for (k, r) in reducers.iter().enumerate() {
            let others: Vec<Reducer> = reducers
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, o)| Reducer {
                    lm: o.lm,
                    mask: o.mask,
                    poly: o.poly,
                })
                .collect();
            // The head is irreducible by the others (the leading set is
            // minimal), so full reduction only touches the tail.
            let (mut p, _) = reduce_full(self.cmp, r.poly.to_vec(), &others);
            make_primitive(&mut p);
            out.push(p);
        }
        out.sort_by(|a, b| self.cmp.cmp(&a[0].0, &b[0].0));
        let basis: Vec<Polynomial> = out.into_iter().map(|p| to_poly(ring, p)).collect();
        let hash = source_hash(ring, &basis);
        GroebnerBasis::from_parts(ring, basis, hash)
    }

    /// Normal form of `f` with respect to the current partial basis.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.ring().same_as(&self.ring) {
            return Err(Error::RingMismatch);
        }
        if self.unit {
            return Ok(Polynomial::zero(&self.ring));
        }
        Ok(nf_with(self.cmp, &self.ring, f, &self.reducers()))
    }

    pub fn is_unit(&self) -> bool {
        self.unit
    }

    pub fn active_len(&self) -> usize {
        self.elems.iter().filter(|e| e.active).count()
    }
}

fn nf_with(cmp: Cmp, ring: &RingRef, f: &Polynomial, reducers: &[Reducer]) -> Polynomial {
    if f.is_zero() {
        return f.clone();
    }
    let mut den = BigInt::one();
    for t in f.terms() {
        den = den.lcm(t.coeff.denom());
    }
    let ip: IPoly = f
        .terms()
        .iter()
        .map(|t| (t.mono, t.coeff.numer() * (&den / t.coeff.denom())))
        .collect();
    let (rem, scale) = reduce_full(cmp, ip, reducers);
    let factor = scale / BigRational::from_integer(den);
    Polynomial::from_sorted_terms(
        ring,
        rem.into_iter()
            .map(|(mono, c)| Term {
                coeff: BigRational::from_integer(c) * &factor,
                mono,
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// public operations

/// Reduced Groebner basis of `gens` in the ring's order.
pub fn buchberger(ring: &RingRef, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    buchberger_with(ring, gens, &Budget::unlimited())
}

pub fn buchberger_with(ring: &RingRef, gens: &[Polynomial], budget: &Budget) -> Result<GroebnerBasis> {
    let mut e = Engine::new(ring, budget.clone());
    for g in gens {
        e.add_generator(g)?;
    }
    e.complete()?;
    Ok(e.basis())
}

fn reducers_of(gb: &GroebnerBasis) -> Vec<(IPoly, Monomial)> {
    gb.basis
        .iter()
        .map(|p| {
            let ip = to_integer(p);
            let lm = ip[0].0;
            (ip, lm)
        })
        .collect()
}

/// Normal form of `f` modulo `gb`.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    if f.ring().spec() != gb.ring.spec() {
        return Err(Error::RingMismatch);
    }
    if f.ring().order() != gb.ring.order() {
        return Err(Error::OrderMismatch);
    }
    let polys = reducers_of(gb);
    let reducers: Vec<Reducer> = polys
        .iter()
        .map(|(p, lm)| Reducer {
            lm: *lm,
            mask: lm.divmask(),
            poly: p,
        })
        .collect();
    let cmp = Cmp {
        order: gb.ring.order(),
        nvars: gb.ring.nvars(),
    };
    Ok(nf_with(cmp, &gb.ring, f, &reducers))
}

/// Reusable reducer set for many normal-form queries against one basis.
pub struct NormalFormer {
    ring: RingRef,
    cmp: Cmp,
    polys: Vec<(IPoly, Monomial)>,
}

impl NormalFormer {
    pub fn new(gb: &GroebnerBasis) -> Self {
        NormalFormer {
            ring: gb.ring.clone(),
            cmp: Cmp {
                order: gb.ring.order(),
                nvars: gb.ring.nvars(),
            },
            polys: reducers_of(gb),
        }
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring().spec() != self.ring.spec() {
            return Err(Error::RingMismatch);
        }
        if f.ring().order() != self.ring.order() {
            return Err(Error::OrderMismatch);
        }
        let reducers: Vec<Reducer> = self
            .polys
            .iter()
            .map(|(p, lm)| Reducer {
                lm: *lm,
                mask: lm.divmask(),
                poly: p,
            })
            .collect();
        Ok(nf_with(self.cmp, &self.ring, f, &reducers))
    }

    pub fn reduces_to_zero(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

pub fn is_member(f: &Polynomial, gens: &[Polynomial]) -> Result<bool> {
    let gb = buchberger(f.ring(), gens)?;
    Ok(normal_form(f, &gb)?.is_zero())
}

/// Generators of the elimination ideal of the first `elim_count` variables.
/// The ring's order must eliminate them.
pub fn eliminate(ring: &RingRef, gens: &[Polynomial], elim_count: usize) -> Result<Vec<Polynomial>> {
    eliminate_with(ring, gens, elim_count, &Budget::unlimited())
}

pub fn eliminate_with(ring: &RingRef, gens: &[Polynomial], elim_count: usize, budget: &Budget) -> Result<Vec<Polynomial>> {
    if !ring.order().eliminates(elim_count) {
        return Err(Error::BadOrder(elim_count));
    }
    let gb = buchberger_with(ring, gens, budget)?;
    Ok(gb
        .into_basis()
        .into_iter()
        .filter(|p| p.free_of_front(elim_count))
        .collect())
}

/// S-polynomial of two basis elements, for postcondition checks.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let cmp = Cmp {
        order: f.ring().order(),
        nvars: f.ring().nvars(),
    };
    let s = spoly(cmp, &to_integer(f), &to_integer(g));
    to_poly(f.ring(), s)
}

/// Checks the defining properties of a reduced basis: every S-pair reduces
/// to zero and no element has a term divisible by another leading monomial.
pub fn is_reduced_groebner(gb: &GroebnerBasis) -> bool {
    let b = gb.basis();
    let nf = NormalFormer::new(gb);
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let s = s_polynomial(&b[i], &b[j]);
            if !nf.reduces_to_zero(&s).unwrap_or(false) {
                return false;
            }
        }
    }
    let lms = gb.leading_monomials();
    for (i, p) in b.iter().enumerate() {
        for (k, t) in p.terms().iter().enumerate() {
            for (j, lm) in lms.iter().enumerate() {
                if i == j && k == 0 {
                    continue;
                }
                if lm.divides(&t.mono) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexpr::parse_poly;
    use crate::polyring::{MonomialOrder, Ring, RingSpec};
    use proptest::prelude::*;

    fn ring(vars: &[&str]) -> RingRef {
        Ring::grevlex(vars).unwrap()
    }

    fn polys(r: &RingRef, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| parse_poly(s, r).unwrap()).collect()
    }

    fn printed(gb: &GroebnerBasis) -> Vec<String> {
        gb.basis().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn trivial_bases() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&r, &polys(&r, &["x", "y"])).unwrap();
        assert_eq!(printed(&gb), ["y", "x"]);
        let gb = buchberger(&r, &polys(&r, &["x^2 - y", "y"])).unwrap();
        assert_eq!(printed(&gb), ["y", "x^2"]);
        assert!(buchberger(&r, &[]).unwrap().is_empty());
        let gb = buchberger(&r, &polys(&r, &["x + 1", "x"])).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&r, &polys(&r, &["x"])).unwrap();
        assert!(normal_form(&parse_poly("x^2*y", &r).unwrap(), &gb).unwrap().is_zero());
        assert_eq!(normal_form(&parse_poly("y", &r).unwrap(), &gb).unwrap().to_string(), "y");
        let gb = buchberger(&r, &polys(&r, &["2*x - 3*y"])).unwrap();
        assert_eq!(normal_form(&parse_poly("x", &r).unwrap(), &gb).unwrap().to_string(), "3/2*y");
    }

    #[test]
    fn mismatches() {
        let r = ring(&["x", "y"]);
        let s = ring(&["x", "z"]);
        let gb = buchberger(&r, &polys(&r, &["x"])).unwrap();
        assert!(matches!(normal_form(&parse_poly("z", &s).unwrap(), &gb), Err(Error::RingMismatch)));
        let lex = r.with_order(MonomialOrder::Lex);
        assert!(matches!(normal_form(&parse_poly("y", &lex).unwrap(), &gb), Err(Error::OrderMismatch)));
    }

    #[test]
    fn membership() {
        let r = ring(&["x", "y", "z"]);
        assert!(is_member(&parse_poly("x*y", &r).unwrap(), &polys(&r, &["x"])).unwrap());
        let k1 = polys(&r, &["(y-z)*(y+z-x)", "(x-y)*(x+y-z)"]);
        assert!(is_member(&parse_poly("y*z*(y-z)", &r).unwrap(), &k1).unwrap());
        assert!(!is_member(&parse_poly("x", &r).unwrap(), &k1).unwrap());
    }

    #[test]
    fn elimination() {
        let base = RingSpec::new(&["t", "x", "y"]).unwrap();
        let r = Ring::new(base, MonomialOrder::Block { elim: 1 });
        let e = eliminate(&r, &polys(&r, &["t*x", "(1-t)*y"]), 1).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].to_string(), "x*y");
        assert!(eliminate(&r, &polys(&r, &["t - x"]), 1).unwrap().is_empty());
        let g = Ring::grevlex(&["t", "x"]).unwrap();
        assert!(matches!(eliminate(&g, &[], 1), Err(Error::BadOrder(1))));
    }

    #[test]
    fn permutation_invariance_and_postcondition() {
        let r = ring(&["x", "y", "z"]);
        let gens = polys(&r, &["y*z*(y-z)", "z*x*(z-x)", "x*y*(x-y)"]);
        let gb = buchberger(&r, &gens).unwrap();
        assert!(is_reduced_groebner(&gb));
        let mut rev = gens.clone();
        rev.reverse();
        assert_eq!(buchberger(&r, &rev).unwrap().basis(), gb.basis());
        assert!(gb.basis().iter().all(|p| p.is_homogeneous()));
    }

    #[test]
    fn inhomogeneous_and_lex() {
        let r = Ring::new(RingSpec::new(&["x", "y", "z"]).unwrap(), MonomialOrder::Lex);
        let gb = buchberger(&r, &polys(&r, &["x^2 + y*z - 2", "x*y - z + 1", "y^2 - x*z"])).unwrap();
        assert!(is_reduced_groebner(&gb));
    }

    #[test]
    fn truncated_completion_matches_full_in_low_degree() {
        let r = ring(&["x", "y", "z"]);
        let gens = polys(&r, &["x^2 - y*z", "x*y - z^2", "y^3 - x*z^2 + z^3"]);
        let mut e = Engine::new(&r, Budget::unlimited());
        for g in &gens {
            e.add_generator(g).unwrap();
        }
        e.complete_to_degree(3).unwrap();
        let full = buchberger(&r, &gens).unwrap();
        for p in full.basis().iter().filter(|p| p.degree().unwrap() <= 3) {
            assert!(e.reduce(p).unwrap().is_zero());
        }
    }

    #[test]
    fn budget_basis_cap() {
        let r = ring(&["x", "y", "z"]);
        let gens = polys(&r, &["x^3 - y*z^2 + 7*x*y*z", "y^3 - x^2*z + 3*x*z^2", "z^3 - x*y^2 + 5*y^2*z"]);
        let budget = Budget {
            seconds: None,
            max_basis: Some(2),
            max_degree: None,
        };
        assert!(matches!(buchberger_with(&r, &gens, &budget), Err(Error::BudgetExceeded(_))));
    }

    fn small_poly(r: RingRef) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(((-3i64..=3), prop::collection::vec(0u32..3, 3)), 1..4).prop_map(move |ts| {
            Polynomial::from_terms(
                &r,
                ts.into_iter()
                    .map(|(c, e)| (crate::polyring::rat(c), Monomial::from_exps(&e))),
            )
        })
    }

    fn monomial_strategy() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..4, 3).prop_map(|e| Monomial::from_exps(&e))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn random_bases_satisfy_postconditions(gens in prop::collection::vec(small_poly(ring(&["x", "y", "z"])), 1..4)) {
            let r = gens[0].ring().clone();
            let gb = buchberger(&r, &gens).unwrap();
            prop_assert!(is_reduced_groebner(&gb));
            for g in &gens {
                prop_assert!(normal_form(g, &gb).unwrap().is_zero());
            }
        }

        #[test]
        fn normal_form_is_linear(
            gens in prop::collection::vec(small_poly(ring(&["x", "y", "z"])), 1..3),
            f in small_poly(ring(&["x", "y", "z"])),
            g in small_poly(ring(&["x", "y", "z"])),
            a in -4i64..5, b in -4i64..5,
        ) {
            let r = gens[0].ring().clone();
            let gb = buchberger(&r, &gens).unwrap();
            let (a, b) = (crate::polyring::rat(a), crate::polyring::rat(b));
            let lhs = normal_form(&(f.scale(&a) + g.scale(&b)), &gb).unwrap();
            let rhs = normal_form(&f, &gb).unwrap().scale(&a) + normal_form(&g, &gb).unwrap().scale(&b);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn monomial_membership_matches_divisibility(
            gens in prop::collection::vec(monomial_strategy(), 1..4),
            probe in prop::collection::vec(0u32..7, 3),
        ) {
            let r = ring(&["x", "y", "z"]);
            let probe = Monomial::from_exps(&probe);
            prop_assume!(probe.degree() <= 6);
            let ps: Vec<Polynomial> = gens.iter().map(|m| Polynomial::monomial(&r, crate::polyring::rat(1), *m)).collect();
            let expect = gens.iter().any(|m| m.divides(&probe));
            let f = Polynomial::monomial(&r, crate::polyring::rat(1), probe);
            prop_assert_eq!(is_member(&f, &ps).unwrap(), expect);
        }
    }
}
