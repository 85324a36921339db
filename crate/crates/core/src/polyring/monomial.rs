use std::fmt;

/// Largest number of ring variables, including the auxiliary variable
/// added by elimination-based intersection.
pub const MAX_VARS: usize = 8;

/// Dense exponent vector with cached total degree.
///
/// Slots past the ring's arity are always zero, so equality and hashing
/// do not need to know the arity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u32; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            deg: 0,
        }
    }

    pub fn var(index: usize) -> Self {
        let mut m = Self::one();
        m.exps[index] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many exponents");
        let mut m = Self::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m.deg = exps.iter().sum();
        m
    }

    #[inline]
    pub fn exps(&self) -> &[u32; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Number of variables with a positive exponent.
    pub fn support_size(&self) -> usize {
        self.exps.iter().filter(|&&e| e > 0).count()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u32; MAX_VARS];
        for (slot, (a, b)) in exps.iter_mut().zip(self.exps.iter().zip(other.exps.iter())) {
            *slot = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial {
            exps,
            deg: self.deg.checked_add(other.deg).expect("degree overflow"),
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut exps = self.exps;
        for e in exps.iter_mut() {
            *e = e.checked_mul(k).expect("exponent overflow");
        }
        Monomial {
            exps,
            deg: self.deg.checked_mul(k).expect("degree overflow"),
        }
    }

    /// `self | other`
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = [0u32; MAX_VARS];
        for (slot, (a, b)) in exps.iter_mut().zip(other.exps.iter().zip(self.exps.iter())) {
            *slot = a - b;
        }
        Some(Monomial {
            exps,
            deg: other.deg - self.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u32; MAX_VARS];
        let mut deg = 0;
        for (slot, (a, b)) in exps.iter_mut().zip(self.exps.iter().zip(other.exps.iter())) {
            *slot = (*a).max(*b);
            deg += *slot;
        }
        Monomial { exps, deg }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u32; MAX_VARS];
        let mut deg = 0;
        for (slot, (a, b)) in exps.iter_mut().zip(self.exps.iter().zip(other.exps.iter())) {
            *slot = (*a).min(*b);
            deg += *slot;
        }
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Monomial with the first `count` exponents dropped and the rest shifted
    /// down. Used when leaving an extended ring.
    pub fn drop_front(&self, count: usize) -> Monomial {
        let mut exps = [0u32; MAX_VARS];
        exps[..MAX_VARS - count].copy_from_slice(&self.exps[count..]);
        Monomial::from_exps(&exps)
    }

    /// Shift exponents up by `count` slots, leaving zeros in front.
    pub fn shift_back(&self, count: usize) -> Monomial {
        assert!(
            self.exps[MAX_VARS - count..].iter().all(|&e| e == 0),
            "no room to extend the ring"
        );
        let mut exps = [0u32; MAX_VARS];
        exps[count..].copy_from_slice(&self.exps[..MAX_VARS - count]);
        Monomial { exps, deg: self.deg }
    }

    /// Degree restricted to the variables `range`.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().sum()
    }

    /// Coarse divisibility signature: bit `4*i + k` is set when the exponent
    /// of variable `i` exceeds `DIVMASK_LEVELS[k]`. If `a | b` then
    /// `mask(a) & !mask(b) == 0`.
    pub fn divmask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            for (k, &level) in DIVMASK_LEVELS.iter().enumerate() {
                if e > level {
                    mask |= 1 << (4 * i + k);
                }
            }
        }
        mask
    }

    /// All monomials of total degree `deg` in `nvars` variables, in
    /// descending lex order.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        fn rec(i: usize, nvars: usize, left: u32, cur: &mut [u32; MAX_VARS], out: &mut Vec<Monomial>) {
            if i + 1 == nvars {
                cur[i] = left;
                out.push(Monomial::from_exps(&cur[..nvars]));
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, nvars, left - e, cur, out);
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if deg == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        rec(0, nvars, deg, &mut [0; MAX_VARS], &mut out);
        out
    }
}

const DIVMASK_LEVELS: [u32; 4] = [0, 1, 3, 7];

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self
            .exps
            .iter()
            .rposition(|&e| e > 0)
            .map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}
