//! Exact linear algebra on homogeneous polynomials of one fixed degree,
//! viewed as vectors indexed by monomials.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::polyring::{Monomial, Polynomial, RingRef, Term};

type Row = Vec<(usize, BigInt)>;

fn primitive(row: &mut Row) {
    let mut g = BigInt::zero();
    for (_, c) in row.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, c)| c.is_negative()) {
        g = -g;
    }
    if !g.is_one() && !g.is_zero() {
        for (_, c) in row.iter_mut() {
            *c /= &g;
        }
    }
}

// `a*x - b*y` where both rows share their first column.
fn combine(a: &BigInt, x: &[(usize, BigInt)], b: &BigInt, y: &[(usize, BigInt)]) -> Row {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (1, 1);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let c = a * &x[i].1 - b * &y[j].1;
            if !c.is_zero() {
                out.push((x[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form over the integers with one row per pivot column.
#[derive(Default, Clone)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, mut row: Row) -> Row {
        let mut pos = 0;
        while pos < row.len() {
            let col = row[pos].0;
            let Some(p) = self.rows.get(&col) else {
                pos += 1;
                continue;
            };
            let g = row[pos].1.gcd(&p[0].1);
            let a = &p[0].1 / &g;
            let b = &row[pos].1 / &g;
            let head: Row = row[..pos].iter().map(|(k, c)| (*k, c * &a)).collect();
            let tail = combine(&a, &row[pos..], &b, p);
            row = head;
            row.extend(tail);
        }
        primitive(&mut row);
        row
    }

    /// Inserts `row` and returns its reduced form; an empty result means
    /// the row was already in the span.
    pub fn insert(&mut self, row: Row) -> Row {
        let r = self.reduce(row);
        if let Some((col, _)) = r.first() {
            self.rows.insert(*col, r.clone());
        }
        r
    }

    pub fn rows(&self) -> impl Iterator<Item = &Row> {
        self.rows.values()
    }
}

/// Coordinates for the monomials of one degree.
pub struct MonomialIndex {
    ring: RingRef,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(ring: &RingRef, degree: u32) -> Self {
        let mut monos = Monomial::all_of_degree(ring.nvars(), degree);
        let order = ring.order();
        let n = ring.nvars();
        monos.sort_by(|a, b| order.cmp(b, a, n));
        let index = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        MonomialIndex {
            ring: ring.clone(),
            monos,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomial(&self, col: usize) -> Monomial {
        self.monos[col]
    }

    /// Integer row of a homogeneous polynomial of this degree (scaled to
    /// clear denominators).
    pub fn row(&self, p: &Polynomial) -> Row {
        let mut den = BigInt::one();
        for t in p.terms() {
            den = den.lcm(t.coeff.denom());
        }
        let mut row: Row = p
            .terms()
            .iter()
            .map(|t| (self.index[&t.mono], t.coeff.numer() * (&den / t.coeff.denom())))
            .collect();
        row.sort_by_key(|e| e.0);
        row
    }

    pub fn poly(&self, row: &[(usize, BigInt)]) -> Polynomial {
        let mut terms: Vec<Term> = row
            .iter()
            .map(|(c, v)| Term {
                coeff: BigRational::from_integer(v.clone()),
                mono: self.monos[*c],
            })
            .collect();
        terms.sort_by_key(|t| self.index[&t.mono]);
        Polynomial::from_terms(&self.ring, terms.into_iter().map(|t| (t.coeff, t.mono)))
    }
}

/// Basis (echelon form, as polynomials) of the span of `vectors`.
pub fn span_basis(idx: &MonomialIndex, vectors: &[Polynomial]) -> Vec<Polynomial> {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(idx.row(v));
    }
    e.rows().map(|r| idx.poly(r)).collect()
}

/// Basis of `span(vectors) ∩ span(subspace)`, or, when `subspace` is
/// `None`, of the vectors of `span(vectors)` supported on monomials that
/// satisfy `allowed`.
pub fn intersect_span(
    idx: &MonomialIndex,
    vectors: &[Polynomial],
    subspace: Option<&[Polynomial]>,
    allowed: &dyn Fn(&Monomial) -> bool,
) -> Vec<Polynomial> {
    let n = idx.len();
    let mut e = Echelon::new();
    if let Some(w) = subspace {
        for p in w {
            e.insert(idx.row(p));
        }
    }
    // Columns of allowed monomials are ignored by moving them out of the
    // way: only forbidden coordinates must cancel.
    let mut kernel = Vec::new();
    for (k, v) in vectors.iter().enumerate() {
        let mut row: Row = idx
            .row(v)
            .into_iter()
            .filter(|(c, _)| subspace.is_some() || !allowed(&idx.monomial(*c)))
            .collect();
        row.push((n + k, BigInt::one()));
        let r = e.insert(row);
        if r.first().is_some_and(|(c, _)| *c >= n) {
            kernel.push(r);
        }
    }
    // Each kernel row records coefficients c with sum c_k v_k in the target.
    let mut out = Echelon::new();
    for kr in kernel {
        let mut acc = Polynomial::zero(&idx.ring);
        for (c, v) in kr {
            let k = c - n;
            acc = acc + vectors[k].scale(&BigRational::from_integer(v));
        }
        if !acc.is_zero() {
            out.insert(idx.row(&acc));
        }
    }
    out.rows().map(|r| idx.poly(r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexpr::parse_poly;
    use crate::polyring::Ring;

    #[test]
    fn span_and_intersection() {
        let r = Ring::grevlex(&["x", "y", "z"]).unwrap();
        let idx = MonomialIndex::new(&r, 2);
        assert_eq!(idx.len(), 6);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let v = vec![p("x^2 - y^2"), p("x*y"), p("x^2 + x*y - y^2")];
        assert_eq!(span_basis(&idx, &v).len(), 2);
        let w = vec![p("x^2 - y^2 + x*y"), p("z^2")];
        let both = intersect_span(&idx, &v, Some(&w), &|_| true);
        assert_eq!(both.len(), 1);
        assert!(both[0].is_associate(&p("x^2 + x*y - y^2")));
        // Vectors of span(v) avoiding y^2 entirely: only x*y.
        let no_y2 = intersect_span(&idx, &v, None, &|m| m.exp(1) < 2);
        assert_eq!(no_y2.len(), 1);
        assert!(no_y2[0].is_associate(&p("x*y")));
    }
}
