use std::collections::HashMap;

use crate::error::{Error, Result};

use super::poly::Polynomial;
use super::ring::RingRef;

/// Row-major matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

/// Largest size accepted by [`PolyMatrix::det`].
pub const MAX_DET_SIZE: usize = 8;

impl PolyMatrix {
    pub fn new(ring: &RingRef, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| !e.ring().same_as(ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    Polynomial::one(ring)
                } else {
                    Polynomial::zero(ring)
                }
            })
            .collect();
        PolyMatrix {
            ring: ring.clone(),
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn mat_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if !self.ring.same_as(&other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        PolyMatrix::new(&self.ring, self.rows, other.cols, entries)
    }

    /// The matrix with row `r` deleted.
    pub fn without_row(&self, r: usize) -> PolyMatrix {
        let entries = (0..self.rows)
            .filter(|&i| i != r)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows - 1,
            cols: self.cols,
            entries,
        }
    }

    /// Determinant by Laplace expansion along successive rows, memoizing
    /// minors by their remaining column set.
    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows > MAX_DET_SIZE {
            return Err(Error::BadParameter(format!(
                "determinant limited to {MAX_DET_SIZE}x{MAX_DET_SIZE}"
            )));
        }
        let n = self.rows;
        let mut memo: HashMap<u32, Polynomial> = HashMap::new();
        Ok(self.minor_det((1u32 << n) - 1, &mut memo))
    }

    fn minor_det(&self, cols: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
        let n = self.rows;
        let row = n - cols.count_ones() as usize;
        if row == n {
            return Polynomial::one(&self.ring);
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = Polynomial::zero(&self.ring);
        let mut position = 0;
        for j in 0..n {
            if cols & (1 << j) == 0 {
                continue;
            }
            let a = self.get(row, j);
            if !a.is_zero() {
                let sub = self.minor_det(cols & !(1 << j), memo);
                if !sub.is_zero() {
                    let term = a * &sub;
                    acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
                }
            }
            position += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Monomial, Ring};
    use crate::polyring::poly::rat;
    use proptest::prelude::*;

    fn ring() -> RingRef {
        Ring::grevlex(&["x", "y", "z", "w"]).unwrap()
    }

    fn v(r: &RingRef, i: usize) -> Polynomial {
        Polynomial::var(r, i)
    }

    #[test]
    fn small_determinants() {
        let r = ring();
        assert_eq!(PolyMatrix::identity(&r, 2).det().unwrap(), Polynomial::one(&r));
        let m = PolyMatrix::from_rows(&r, vec![vec![v(&r, 0), v(&r, 1)], vec![v(&r, 2), v(&r, 3)]]).unwrap();
        assert_eq!(m.det().unwrap(), v(&r, 0) * v(&r, 3) - v(&r, 1) * v(&r, 2));
    }

    #[test]
    fn shape_errors() {
        let r = ring();
        let m = PolyMatrix::new(&r, 1, 2, vec![v(&r, 0), v(&r, 1)]).unwrap();
        assert!(matches!(m.det(), Err(Error::NotSquare { .. })));
        assert!(matches!(m.mat_mul(&m), Err(Error::ShapeMismatch(_))));
        let id = PolyMatrix::identity(&r, 1);
        assert_eq!(id.mat_mul(&m).unwrap(), m);
    }

    fn leibniz(m: &PolyMatrix) -> Polynomial {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.rows();
        let mut acc = Polynomial::zero(m.ring());
        for p in perms(n) {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut term = Polynomial::one(m.ring());
            for (i, &pi) in p.iter().enumerate() {
                term = term * m.get(i, pi);
            }
            acc = if inversions % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    fn small_poly(r: RingRef) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-3i64..4, prop::collection::vec(0u32..3, 4)), 0..4).prop_map(move |ts| {
            Polynomial::from_terms(
                &r,
                ts.into_iter()
                    .filter(|(_, e)| e.iter().sum::<u32>() <= 2)
                    .map(|(c, e)| (rat(c), Monomial::from_exps(&e))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn det_matches_permutation_sum(n in 1usize..5, seed in prop::collection::vec(small_poly(ring()), 16)) {
            let r = seed[0].ring().clone();
            let entries: Vec<Polynomial> = seed.into_iter().take(n * n).collect();
            let m = PolyMatrix::new(&r, n, n, entries).unwrap();
            prop_assert_eq!(m.det().unwrap(), leibniz(&m));
        }
    }
}
