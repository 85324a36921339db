//! Ideal-level algebra: sums, products, powers and intersections.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::{buchberger_with, Budget, GroebnerBasis, NormalFormer};
use crate::hilbert::minimal_generators_with;
use crate::polyring::{rat, Monomial, MonomialOrder, Polynomial, RingRef};

/// Structural hints that unlock fast paths.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IdealTags {
    pub monomial: bool,
    /// Generated by the `k`-th power of an ideal of variables.
    pub linear_prime_power: bool,
}

/// Generators of an ideal together with a lazily computed reduced basis
/// in the ring's order.
#[derive(Debug)]
pub struct IdealHandle {
    ring: RingRef,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
    tags: IdealTags,
}

impl Clone for IdealHandle {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        IdealHandle {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
            tags: self.tags,
        }
    }
}

fn dedup(gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut seen = HashSet::new();
    gens.into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.primitive())
        .filter(|g| seen.insert(g.clone()))
        .collect()
}

impl IdealHandle {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| !g.ring().same_as(ring)) {
            return Err(Error::RingMismatch);
        }
        let gens = dedup(gens);
        let monomial = gens.iter().all(|g| g.is_monomial());
        Ok(IdealHandle {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
            tags: IdealTags {
                monomial,
                linear_prime_power: false,
            },
        })
    }

    /// Monomial ideal from exponent data, minimalized.
    pub fn from_monomials(ring: &RingRef, monos: Vec<Monomial>) -> Self {
        let gens = minimal_monomials(monos)
            .into_iter()
            .map(|m| Polynomial::monomial(ring, rat(1), m))
            .collect();
        IdealHandle {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
            tags: IdealTags {
                monomial: true,
                linear_prime_power: false,
            },
        }
    }

    /// The ideal generated by the variables with the given indices.
    pub fn linear_prime(ring: &RingRef, vars: &[usize]) -> Self {
        let mut h = Self::from_monomials(ring, vars.iter().map(|&i| Monomial::var(i)).collect());
        h.tags.linear_prime_power = true;
        h
    }

    /// The maximal homogeneous ideal.
    pub fn maximal(ring: &RingRef) -> Self {
        Self::linear_prime(ring, &(0..ring.nvars()).collect::<Vec<_>>())
    }

    /// `m^k`: all monomials of degree `k`.
    pub fn maximal_power(ring: &RingRef, k: u32) -> Self {
        let mut h = Self::from_monomials(ring, Monomial::all_of_degree(ring.nvars(), k));
        h.tags.linear_prime_power = true;
        h
    }

    /// Same generators with all tags cleared, forcing the general code
    /// paths (used to cross-check fast paths).
    pub fn untagged(&self) -> IdealHandle {
        IdealHandle {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb: OnceLock::new(),
            tags: IdealTags::default(),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn tags(&self) -> IdealTags {
        self.tags
    }

    pub fn is_monomial(&self) -> bool {
        self.tags.monomial
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn monomials(&self) -> Result<Vec<Monomial>> {
        if !self.tags.monomial {
            return Err(Error::NotMonomial);
        }
        Ok(self.gens.iter().map(|g| g.leading_monomial().unwrap()).collect())
    }

    pub fn max_gen_degree(&self) -> u32 {
        self.gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }

    pub fn gb(&self) -> Result<&GroebnerBasis> {
        self.gb_with(&Budget::unlimited())
    }

    pub fn gb_with(&self, budget: &Budget) -> Result<&GroebnerBasis> {
        if let Some(b) = self.gb.get() {
            return Ok(b);
        }
        let b = if self.tags.monomial {
            monomial_gb(&self.ring, &self.gens)
        } else {
            buchberger_with(&self.ring, &self.gens, budget)?
        };
        Ok(self.gb.get_or_init(|| b))
    }

    /// Installs a basis computed elsewhere (e.g. loaded from a cache).
    pub fn set_gb(&self, gb: GroebnerBasis) {
        let _ = self.gb.set(gb);
    }

    pub fn cached_gb(&self) -> Option<&GroebnerBasis> {
        self.gb.get()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if self.tags.monomial {
            let monos = self.monomials()?;
            return Ok(f.terms().iter().all(|t| monos.iter().any(|m| m.divides(&t.mono))));
        }
        NormalFormer::new(self.gb()?).reduces_to_zero(f)
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool> {
        check_ring(self, other)?;
        if self.tags.monomial {
            for g in &other.gens {
                if !self.contains(g)? {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        let nf = NormalFormer::new(self.gb()?);
        for g in &other.gens {
            if !nf.reduces_to_zero(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Replaces the generators by a minimal homogeneous generating set.
    pub fn minimalized(&self) -> Result<IdealHandle> {
        self.minimalized_with(&Budget::unlimited())
    }

    pub fn minimalized_with(&self, budget: &Budget) -> Result<IdealHandle> {
        if self.tags.monomial {
            return Ok(self.clone());
        }
        let gens = minimal_generators_with(&self.ring, &self.gens, budget)?;
        let out = IdealHandle {
            ring: self.ring.clone(),
            gens,
            gb: OnceLock::new(),
            tags: self.tags,
        };
        if let Some(b) = self.gb.get() {
            out.set_gb(b.clone());
        }
        Ok(out)
    }
}

fn check_ring(a: &IdealHandle, b: &IdealHandle) -> Result<()> {
    if a.ring.same_as(&b.ring) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// Drops monomials divisible by another one; output is sorted and unique.
pub fn minimal_monomials(mut monos: Vec<Monomial>) -> Vec<Monomial> {
    monos.sort_by_key(|m| (m.degree(), *m.exps()));
    monos.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in monos {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn monomial_gb(ring: &RingRef, gens: &[Polynomial]) -> GroebnerBasis {
    let monos = minimal_monomials(gens.iter().filter_map(|g| g.leading_monomial()).collect());
    let mut basis: Vec<Polynomial> = monos.into_iter().map(|m| Polynomial::monomial(ring, rat(1), m)).collect();
    let order = ring.order();
    let n = ring.nvars();
    basis.sort_by(|a, b| order.cmp(&a.leading_monomial().unwrap(), &b.leading_monomial().unwrap(), n));
    let hash = crate::groebner::source_hash(ring, &basis);
    GroebnerBasis::from_parts(ring, basis, hash)
}

pub fn sum(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    check_ring(a, b)?;
    let mut gens = a.gens.clone();
    gens.extend(b.gens.iter().cloned());
    if a.tags.monomial && b.tags.monomial {
        let monos = gens.iter().map(|g| g.leading_monomial().unwrap()).collect();
        return Ok(IdealHandle::from_monomials(&a.ring, monos));
    }
    IdealHandle::new(&a.ring, gens)
}

pub fn product(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    check_ring(a, b)?;
    if a.tags.monomial && b.tags.monomial {
        let am = a.monomials()?;
        let bm = b.monomials()?;
        let monos = am.iter().flat_map(|x| bm.iter().map(move |y| x.mul(y))).collect();
        return Ok(IdealHandle::from_monomials(&a.ring, monos));
    }
    let mut gens = Vec::with_capacity(a.gens.len() * b.gens.len());
    for f in &a.gens {
        for g in &b.gens {
            gens.push(f * g);
        }
    }
    IdealHandle::new(&a.ring, gens)
}

/// `I^k` generated by all degree-`k` products of generators.
pub fn power(a: &IdealHandle, k: u32) -> Result<IdealHandle> {
    if k == 0 {
        return Err(Error::BadParameter("power exponent must be positive".into()));
    }
    if a.tags.monomial {
        let monos = a.monomials()?;
        let mut level: Vec<(usize, Monomial)> = monos.iter().enumerate().map(|(i, m)| (i, *m)).collect();
        for _ in 1..k {
            let mut next = Vec::new();
            for (i, m) in &level {
                for (j, g) in monos.iter().enumerate().skip(*i) {
                    next.push((j, m.mul(g)));
                }
            }
            level = next;
        }
        let mut h = IdealHandle::from_monomials(&a.ring, level.into_iter().map(|(_, m)| m).collect());
        h.tags.linear_prime_power = a.tags.linear_prime_power;
        return Ok(h);
    }
    let mut level: Vec<(usize, Polynomial)> = a.gens.iter().cloned().enumerate().collect();
    for _ in 1..k {
        let mut next = Vec::new();
        for (i, p) in &level {
            for (j, g) in a.gens.iter().enumerate().skip(*i) {
                next.push((j, p * g));
            }
        }
        level = next;
    }
    IdealHandle::new(&a.ring, level.into_iter().map(|(_, p)| p).collect())
}

pub fn intersect(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    intersect_with(a, b, &Budget::unlimited())
}

/// `I ∩ J` by eliminating `t` from `t·I + (1-t)·J`.
pub fn intersect_with(a: &IdealHandle, b: &IdealHandle, budget: &Budget) -> Result<IdealHandle> {
    check_ring(a, b)?;
    if a.is_zero() || b.is_zero() {
        return IdealHandle::new(&a.ring, Vec::new());
    }
    if a.tags.monomial && b.tags.monomial {
        let am = a.monomials()?;
        let bm = b.monomials()?;
        let monos = am.iter().flat_map(|x| bm.iter().map(move |y| x.lcm(y))).collect();
        return Ok(IdealHandle::from_monomials(&a.ring, monos));
    }
    let ext = a.ring.extended_front("t")?;
    let t = Polynomial::var(&ext, 0);
    let one_minus_t = Polynomial::one(&ext) - &t;
    let mut gens = Vec::with_capacity(a.gens.len() + b.gens.len());
    for g in &a.gens {
        gens.push(&t * &g.embed_back(&ext, 1));
    }
    for g in &b.gens {
        gens.push(&one_minus_t * &g.embed_back(&ext, 1));
    }
    let gb = buchberger_with(&ext, &gens, budget)?;
    let kept: Vec<Polynomial> = gb
        .basis()
        .iter()
        .filter(|p| p.free_of_front(1))
        .map(|p| p.restrict_front(&a.ring, 1))
        .collect();
    let raw = IdealHandle::new(&a.ring, kept.clone())?;
    // The t-free part of a reduced basis for the block order is the reduced
    // basis of the intersection for grevlex on the remaining variables.
    if a.ring.order() == MonomialOrder::Grevlex {
        let hash = crate::groebner::source_hash(&a.ring, &kept);
        raw.set_gb(GroebnerBasis::from_parts(&a.ring, kept, hash));
    }
    if raw.is_homogeneous() {
        raw.minimalized_with(budget)
    } else {
        Ok(raw)
    }
}

pub fn intersect_many(ideals: &[IdealHandle]) -> Result<IdealHandle> {
    intersect_many_with(ideals, &Budget::unlimited())
}

/// Left fold of [`intersect_with`], smallest operands first. Monomial
/// operands are folded together before any elimination.
pub fn intersect_many_with(ideals: &[IdealHandle], budget: &Budget) -> Result<IdealHandle> {
    let Some(first) = ideals.first() else {
        return Err(Error::BadParameter("intersect_many needs at least one ideal".into()));
    };
    for i in ideals {
        check_ring(first, i)?;
    }
    let mut sorted: Vec<&IdealHandle> = ideals.iter().collect();
    sorted.sort_by_key(|i| (!i.tags.monomial, i.gens.len(), i.max_gen_degree()));
    let mut acc = sorted[0].clone();
    for next in &sorted[1..] {
        acc = intersect_with(&acc, next, budget)?;
    }
    Ok(acc)
}

pub fn equal_as_ideals(a: &IdealHandle, b: &IdealHandle) -> Result<bool> {
    check_ring(a, b)?;
    Ok(a.gb()?.basis() == b.gb()?.basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexpr::parse_poly;
    use crate::polyring::Ring;

    fn ring(vars: &[&str]) -> RingRef {
        Ring::grevlex(vars).unwrap()
    }

    fn ideal(r: &RingRef, src: &[&str]) -> IdealHandle {
        IdealHandle::new(r, src.iter().map(|s| parse_poly(s, r).unwrap()).collect()).unwrap()
    }

    fn printed(i: &IdealHandle) -> Vec<String> {
        let mut v: Vec<String> = i.gens().iter().map(|g| g.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn sums_and_products() {
        let r = ring(&["x", "y"]);
        let x = ideal(&r, &["x"]);
        let y = ideal(&r, &["y"]);
        assert_eq!(printed(&product(&x, &y).unwrap()), ["x*y"]);
        assert_eq!(printed(&sum(&x, &y).unwrap()), ["x", "y"]);
        let s = ring(&["x", "z"]);
        assert!(matches!(sum(&x, &ideal(&s, &["z"])), Err(Error::RingMismatch)));
    }

    #[test]
    fn powers() {
        let r = ring(&["x", "y", "z"]);
        let p = power(&IdealHandle::linear_prime(&r, &[0, 1]), 2).unwrap();
        assert_eq!(printed(&p), ["x*y", "x^2", "y^2"]);
        let k = ideal(&r, &["x^3 - y^3", "y^3 - z^3"]);
        let k2 = power(&k, 2).unwrap();
        assert_eq!(k2.gens().len(), 3);
        assert!(k2.gens().iter().all(|g| g.degree() == Some(6)));
        assert_eq!(IdealHandle::maximal_power(&r, 3).gens().len(), 10);
    }

    #[test]
    fn intersections() {
        let r = ring(&["x", "y", "z", "w"]);
        let a = ideal(&r, &["x"]);
        let b = ideal(&r, &["y + z"]);
        assert_eq!(printed(&intersect(&a, &b).unwrap()), ["x*y + x*z"]);
        let xy = IdealHandle::linear_prime(&r, &[0, 1]);
        let zw = IdealHandle::linear_prime(&r, &[2, 3]);
        assert_eq!(intersect(&xy, &zw).unwrap().gens().len(), 4);
        let m = intersect_many(&[ideal(&r, &["x"]), ideal(&r, &["y"]), ideal(&r, &["z"])]).unwrap();
        assert_eq!(printed(&m), ["x*y*z"]);
    }

    #[test]
    fn generic_path_matches_monomial_fast_path() {
        let r = ring(&["x", "y", "z"]);
        let xy = IdealHandle::linear_prime(&r, &[0, 1]);
        let yz = IdealHandle::linear_prime(&r, &[1, 2]);
        let fast = intersect(&xy, &yz).unwrap();
        let slow = intersect(&xy.untagged(), &yz.untagged()).unwrap();
        assert!(equal_as_ideals(&fast, &slow).unwrap());
        for m in 1..=4 {
            let a = power(&xy, m).unwrap();
            let b = power(&yz, m).unwrap();
            let fast = intersect(&a, &b).unwrap();
            let slow = intersect(&a.untagged(), &b.untagged()).unwrap();
            assert!(equal_as_ideals(&fast.untagged(), &slow).unwrap());
        }
        assert!(equal_as_ideals(&fast, &ideal(&r, &["y", "x*z"])).unwrap());
    }

    #[test]
    fn equality() {
        let r = ring(&["x", "y"]);
        assert!(equal_as_ideals(&ideal(&r, &["x", "y"]), &ideal(&r, &["y", "x + y"])).unwrap());
        assert!(!equal_as_ideals(&ideal(&r, &["x"]), &ideal(&r, &["x^2"])).unwrap());
    }
}
