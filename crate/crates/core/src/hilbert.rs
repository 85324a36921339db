//! Graded invariants: Hilbert series, dimension, multiplicity, minimal
//! generators, initial degree, generator degree and beta.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{Budget, Engine};
use crate::idealops::{minimal_monomials, IdealHandle};
use crate::linalg::{span_basis, MonomialIndex};
use crate::polyring::{Monomial, Polynomial, RingRef};

/// `numerator / (1-t)^denom_power`, numerator coefficients by power of t.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub numerator: Vec<BigInt>,
    pub denom_power: usize,
    pub simplified: bool,
}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn mul_poly(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn add_shifted(acc: &mut Vec<BigInt>, p: &[BigInt], shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, BigInt::zero());
    }
    for (i, c) in p.iter().enumerate() {
        acc[i + shift] += c;
    }
    trim(acc);
}

fn one_minus_t_pow(d: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); d as usize + 1];
    p[0] = BigInt::one();
    p[d as usize] -= 1;
    trim(&mut p);
    p
}

fn numerator_rec(gens: Vec<Monomial>, nvars: usize) -> Vec<BigInt> {
    let gens = minimal_monomials(gens);
    if gens.is_empty() {
        return vec![BigInt::one()];
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        return gens
            .iter()
            .fold(vec![BigInt::one()], |acc, m| mul_poly(&acc, &one_minus_t_pow(m.degree())));
    }
    // Pivot: most frequent variable among mixed generators, lowest index on
    // ties; exponent is the lower median of its occurrences there.
    let mixed: Vec<&Monomial> = gens.iter().filter(|m| m.support_size() > 1).collect();
    let var = (0..nvars)
        .max_by_key(|&v| (mixed.iter().filter(|m| m.exp(v) > 0).count(), std::cmp::Reverse(v)))
        .unwrap();
    let mut exps: Vec<u32> = mixed.iter().map(|m| m.exp(var)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let mut pivot = [0u32; crate::polyring::MAX_VARS];
    pivot[var] = e;
    let p = Monomial::from_exps(&pivot[..nvars]);
    let mut plus = gens.clone();
    plus.push(p);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| p.gcd(m).quotient_of(m).unwrap())
        .collect();
    let mut out = numerator_rec(plus, nvars);
    add_shifted(&mut out, &numerator_rec(colon, nvars), e as usize);
    out
}

/// Numerator of the Hilbert series of `R/M` over `(1-t)^N`.
pub fn hilbert_numerator(m: &IdealHandle) -> Result<HilbertSeries> {
    let monos = m.monomials()?;
    let n = m.ring().nvars();
    Ok(HilbertSeries {
        numerator: numerator_rec(monos, n),
        denom_power: n,
        simplified: false,
    })
}

impl HilbertSeries {
    /// Cancels common factors of `1-t`.
    pub fn simplify(&self) -> HilbertSeries {
        let mut num = self.numerator.clone();
        let mut k = self.denom_power;
        while k > 0 && !num.is_empty() && num.iter().sum::<BigInt>().is_zero() {
            // Synthetic division by (1 - t): q_i = sum_{j<=i} a_j.
            let mut q = Vec::with_capacity(num.len());
            let mut acc = BigInt::zero();
            for c in &num[..num.len() - 1] {
                acc += c;
                q.push(acc.clone());
            }
            trim(&mut q);
            num = q;
            k -= 1;
        }
        HilbertSeries {
            numerator: num,
            denom_power: k,
            simplified: true,
        }
    }

    pub fn dimension(&self) -> usize {
        self.simplify().denom_power
    }

    pub fn multiplicity(&self) -> BigInt {
        self.simplify().numerator.iter().sum()
    }

    /// Value of the Hilbert function at degree `d`.
    pub fn coefficient(&self, d: u32) -> BigInt {
        let n = self.denom_power;
        let mut total = BigInt::zero();
        for (i, a) in self.numerator.iter().enumerate() {
            if i as u32 > d {
                break;
            }
            let k = (d as usize) - i;
            let c = if n == 0 {
                if k == 0 { BigInt::one() } else { BigInt::zero() }
            } else {
                binomial(BigInt::from(k + n - 1), BigInt::from(n - 1))
            };
            total += a * c;
        }
        total
    }

    /// The numerator as `(power, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> Vec<(usize, BigInt)> {
        self.numerator
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }

    /// Builds a numerator from sparse `(power, coefficient)` data.
    pub fn from_terms(terms: &[(usize, i64)], denom_power: usize) -> HilbertSeries {
        let mut num = Vec::new();
        for &(p, c) in terms {
            if num.len() <= p {
                num.resize(p + 1, BigInt::zero());
            }
            num[p] += c;
        }
        trim(&mut num);
        HilbertSeries {
            numerator: num,
            denom_power,
            simplified: false,
        }
    }

    /// Human-readable numerator such as `1 - 6t^8 + 4t^9 + t^12`.
    pub fn numerator_string(&self) -> String {
        let mut out = String::new();
        for (i, (p, c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if a.is_one() && p > 0 { String::new() } else { a.to_string() };
            match p {
                0 => out.push_str(&a.to_string()),
                1 => out.push_str(&format!("{coeff}t")),
                _ => out.push_str(&format!("{coeff}t^{p}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Monomial ideal of leading monomials of the reduced basis.
pub fn initial_ideal(i: &IdealHandle) -> Result<IdealHandle> {
    let gb = i.gb()?;
    Ok(IdealHandle::from_monomials(i.ring(), gb.leading_monomials()))
}

pub fn hilbert_series(i: &IdealHandle) -> Result<HilbertSeries> {
    hilbert_numerator(&initial_ideal(i)?)
}

/// Krull dimension of `R/I`.
pub fn dimension(i: &IdealHandle) -> Result<usize> {
    if i.gb()?.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(hilbert_series(i)?.dimension())
}

/// Degree of `R/I`.
pub fn multiplicity(i: &IdealHandle) -> Result<BigInt> {
    if i.gb()?.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(hilbert_series(i)?.multiplicity())
}

pub fn minimal_generators(ring: &RingRef, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    minimal_generators_with(ring, gens, &Budget::unlimited())
}

/// A minimal homogeneous generating set. Generators are visited by
/// ascending degree (stable in input order) and kept unless they lie in
/// the ideal of those already kept; by graded Nakayama the degrees of the
/// result are invariants of the ideal.
pub fn minimal_generators_with(ring: &RingRef, gens: &[Polynomial], budget: &Budget) -> Result<Vec<Polynomial>> {
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous);
    }
    let mut sorted: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by_key(|g| g.degree());
    let mut engine = Engine::new(ring, budget.clone());
    let mut kept = Vec::new();
    for g in sorted {
        engine.complete_to_degree(g.degree().unwrap())?;
        if !engine.reduce(g)?.is_zero() {
            engine.add_generator(g)?;
            kept.push(g.clone());
        }
    }
    Ok(kept)
}

/// Least degree of a nonzero element of a homogeneous ideal.
pub fn alpha(i: &IdealHandle) -> Result<u32> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if !i.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(i.gens().iter().filter_map(|g| g.degree()).min().unwrap())
}

/// Largest degree in a minimal homogeneous generating set.
pub fn omega(i: &IdealHandle) -> Result<u32> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let gens = if i.is_monomial() {
        i.gens().to_vec()
    } else {
        minimal_generators(i.ring(), i.gens())?
    };
    Ok(gens.iter().filter_map(|g| g.degree()).max().unwrap())
}

/// Basis of the degree-`t` piece of a homogeneous ideal.
#[derive(Clone, Debug)]
pub struct GradedPieceBasis {
    pub degree: u32,
    pub basis: Vec<Polynomial>,
}

pub fn graded_piece(i: &IdealHandle, t: u32) -> Result<GradedPieceBasis> {
    if !i.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let ring = i.ring();
    let gb = i.gb()?;
    let idx = MonomialIndex::new(ring, t);
    let mut spanning = Vec::new();
    for b in gb.basis() {
        let d = b.degree().unwrap_or(0);
        if d > t {
            continue;
        }
        for m in Monomial::all_of_degree(ring.nvars(), t - d) {
            spanning.push(b.mul_monomial(&m));
        }
    }
    Ok(GradedPieceBasis {
        degree: t,
        basis: span_basis(&idx, &spanning),
    })
}

/// Least `t` such that the degree-`t` piece generates an ideal of
/// codimension at least two.
pub fn beta(i: &IdealHandle) -> Result<u32> {
    let n = i.ring().nvars();
    let lo = alpha(i)?;
    let hi = omega(i)? + 2;
    for t in lo..=hi {
        let piece = graded_piece(i, t)?;
        if piece.basis.is_empty() {
            continue;
        }
        let sub = IdealHandle::new(i.ring(), piece.basis)?;
        let dim = match dimension(&sub) {
            Ok(d) => d,
            Err(Error::UnitIdeal) => 0,
            Err(e) => return Err(e),
        };
        if dim + 2 <= n {
            return Ok(t);
        }
    }
    Err(Error::NeverAttained(hi))
}
