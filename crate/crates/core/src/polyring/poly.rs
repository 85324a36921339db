use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::monomial::Monomial;
use super::ring::RingRef;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: BigRational,
    pub mono: Monomial,
}

/// Polynomial with exact rational coefficients.
///
/// Terms are strictly descending in the ring's order, with no zero
/// coefficients; the zero polynomial has no terms.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, BigRational::one())
    }

    pub fn constant(ring: &RingRef, c: BigRational) -> Self {
        Self::monomial(ring, c, Monomial::one())
    }

    pub fn var(ring: &RingRef, index: usize) -> Self {
        assert!(index < ring.nvars(), "variable index out of range");
        Self::monomial(ring, BigRational::one(), Monomial::var(index))
    }

    pub fn monomial(ring: &RingRef, coeff: BigRational, mono: Monomial) -> Self {
        let terms = if coeff.is_zero() {
            Vec::new()
        } else {
            vec![Term { coeff, mono }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a normalized polynomial from arbitrary terms: sorts, merges
    /// equal monomials and drops zeros.
    pub fn from_terms<I>(ring: &RingRef, terms: I) -> Self
    where
        I: IntoIterator<Item = (BigRational, Monomial)>,
    {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (c, m) in terms {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &RingRef, acc: HashMap<Monomial, BigRational>) -> Self {
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mono, coeff)| Term { coeff, mono })
            .collect();
        let order = ring.order();
        let n = ring.nvars();
        terms.sort_unstable_by(|a, b| order.cmp(&b.mono, &a.mono, n));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Caller guarantees the terms are normalized.
    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].mono, &w[1].mono, ring.nvars()) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = t.mono.degree();
                self.terms.iter().all(|s| s.mono.degree() == d)
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if std::sync::Arc::ptr_eq(&self.ring, &other.ring) || self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, true))
    }

    fn combine(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let order = self.ring.order();
        let n = self.ring.nvars();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let t = b.next().unwrap();
                    out.push(signed(t, negate));
                }
                (Some(ta), Some(tb)) => match order.cmp(&ta.mono, &tb.mono, n) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let t = b.next().unwrap();
                        out.push(signed(t, negate));
                    }
                    Ordering::Equal => {
                        let ta = a.next().unwrap();
                        let tb = b.next().unwrap();
                        let c = if negate {
                            &ta.coeff - &tb.coeff
                        } else {
                            &ta.coeff + &tb.coeff
                        };
                        if !c.is_zero() {
                            out.push(Term {
                                coeff: c,
                                mono: ta.mono,
                            });
                        }
                    }
                },
            }
        }
        Polynomial::from_sorted_terms(&self.ring, out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let t = &self.terms[0];
            return other.mul_term(&t.coeff, &t.mono);
        }
        if other.terms.len() == 1 {
            let t = &other.terms[0];
            return self.mul_term(&t.coeff, &t.mono);
        }
        let integral = self.is_integral() && other.is_integral();
        if integral {
            let mut acc: HashMap<Monomial, BigInt> =
                HashMap::with_capacity(self.terms.len() * other.terms.len() / 2);
            for s in &self.terms {
                for t in &other.terms {
                    let c = s.coeff.numer() * t.coeff.numer();
                    *acc.entry(s.mono.mul(&t.mono)).or_insert_with(BigInt::zero) += c;
                }
            }
            let acc = acc
                .into_iter()
                .map(|(m, c)| (m, BigRational::from_integer(c)))
                .collect();
            Self::from_map(&self.ring, acc)
        } else {
            let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
            for s in &self.terms {
                for t in &other.terms {
                    *acc.entry(s.mono.mul(&t.mono)).or_insert_with(BigRational::zero) +=
                        &s.coeff * &t.coeff;
                }
            }
            Self::from_map(&self.ring, acc)
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.is_integer())
    }

    /// `c * m * self`; multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, c: &BigRational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: &t.coeff * c,
                mono: t.mono.mul(m),
            })
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        self.mul_term(&BigRational::one(), m)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        self.mul_term(c, &Monomial::one())
    }

    /// `self^k` by repeated squaring; `p^0 = 1`.
    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        if k == 0 {
            return result;
        }
        if self.terms.len() == 1 {
            let t = &self.terms[0];
            return Polynomial::monomial(&self.ring, num_traits::pow(t.coeff.clone(), k as usize), t.mono.pow(k));
        }
        let mut base = self.clone();
        let mut e = k;
        loop {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul_unchecked(&base);
        }
        result
    }

    /// Positive integer multiple with coprime integer coefficients and a
    /// positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for t in &self.terms {
            den = den.lcm(t.coeff.denom());
        }
        let ints: Vec<BigInt> = self
            .terms
            .iter()
            .map(|t| t.coeff.numer() * (&den / t.coeff.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if self.terms[0].coeff.is_negative() {
            g = -g;
        }
        let terms = ints
            .into_iter()
            .zip(self.terms.iter())
            .map(|(c, t)| Term {
                coeff: BigRational::from_integer(c / &g),
                mono: t.mono,
            })
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// True when `self` and `other` differ by a nonzero scalar.
    pub fn is_associate(&self, other: &Polynomial) -> bool {
        self.primitive() == other.primitive()
    }

    /// Re-sorts into a ring with the same variables and a possibly
    /// different order.
    pub fn to_ring(&self, ring: &RingRef) -> Result<Polynomial> {
        if ring.spec() != self.ring.spec() {
            return Err(Error::RingMismatch);
        }
        if ring.order() == self.ring.order() {
            return Ok(Polynomial {
                ring: ring.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut terms = self.terms.clone();
        let (o, n) = (ring.order(), ring.nvars());
        terms.sort_unstable_by(|a, b| o.cmp(&b.mono, &a.mono, n));
        Ok(Polynomial {
            ring: ring.clone(),
            terms,
        })
    }

    /// Embeds into `target`, whose variables are `count` new ones followed
    /// by this ring's variables.
    pub fn embed_back(&self, target: &RingRef, count: usize) -> Polynomial {
        debug_assert_eq!(&target.spec().vars()[count..], self.ring.spec().vars());
        Polynomial::from_terms(
            target,
            self.terms
                .iter()
                .map(|t| (t.coeff.clone(), t.mono.shift_back(count))),
        )
    }

    /// Inverse of [`embed_back`](Self::embed_back); the first `count`
    /// variables must not occur.
    pub fn restrict_front(&self, target: &RingRef, count: usize) -> Polynomial {
        debug_assert!(self
            .terms
            .iter()
            .all(|t| t.mono.partial_degree(0..count) == 0));
        Polynomial::from_terms(
            target,
            self.terms
                .iter()
                .map(|t| (t.coeff.clone(), t.mono.drop_front(count))),
        )
    }

    /// True when none of the first `count` variables occur.
    pub fn free_of_front(&self, count: usize) -> bool {
        self.terms.iter().all(|t| t.mono.partial_degree(0..count) == 0)
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.ring.nvars(), "point has wrong arity");
        let mut acc = BigRational::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (i, x) in point.iter().enumerate() {
                let e = t.mono.exp(i);
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += v;
        }
        acc
    }

    /// Ring endomorphism `x_i -> x_i^k` on every variable.
    pub fn inflate(&self, k: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone(),
                mono: t.mono.pow(k),
            })
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    /// Coefficient of `m`, zero if absent.
    pub fn coeff_of(&self, m: &Monomial) -> BigRational {
        self.terms
            .iter()
            .find(|t| t.mono == *m)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(BigRational::zero)
    }
}

fn signed(t: &Term, negate: bool) -> Term {
    if negate {
        Term {
            coeff: -&t.coeff,
            mono: t.mono,
        }
    } else {
        t.clone()
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: -&t.coeff,
                mono: t.mono,
            })
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

// Operator forms panic on ring mismatch; use the `checked_*` methods for
// untrusted input.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

/// Product of a list of polynomials; the empty product is one.
pub fn product<'a, I>(ring: &RingRef, factors: I) -> Polynomial
where
    I: IntoIterator<Item = &'a Polynomial>,
{
    factors
        .into_iter()
        .fold(Polynomial::one(ring), |acc, f| acc.mul_unchecked(f))
}
