use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MAX_VARS};

/// A monomial order on a ring with a fixed variable sequence.
///
/// `Block { elim }` compares the first `elim` variables by grevlex and
/// breaks ties with grevlex on the remaining variables. It is an
/// elimination order for the first block.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    #[default]
    Grevlex,
    Block {
        elim: usize,
    },
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        match *self {
            MonomialOrder::Lex => lex(a, b, 0..nvars),
            MonomialOrder::Grevlex => {
                a.degree().cmp(&b.degree()).then_with(|| revlex(a, b, 0..nvars))
            }
            MonomialOrder::Block { elim } => {
                grevlex_range(a, b, 0..elim).then_with(|| grevlex_range(a, b, elim..nvars))
            }
        }
    }

    /// Integer key whose lexicographic comparison agrees with `cmp`.
    pub fn sort_key(&self, m: &Monomial, nvars: usize) -> [i64; MAX_VARS + 2] {
        let mut key = [0i64; MAX_VARS + 2];
        let mut fill = |range: std::ops::Range<usize>, at: usize| -> usize {
            key[at] = m.partial_degree(range.clone()) as i64;
            let mut k = at + 1;
            for i in range.rev() {
                key[k] = -(m.exp(i) as i64);
                k += 1;
            }
            k
        };
        match *self {
            MonomialOrder::Lex => {
                for i in 0..nvars {
                    key[i] = m.exp(i) as i64;
                }
            }
            MonomialOrder::Grevlex => {
                fill(0..nvars, 0);
            }
            MonomialOrder::Block { elim } => {
                let k = fill(0..elim, 0);
                fill(elim..nvars, k);
            }
        }
        key
    }

    /// True when the order eliminates the first `count` variables.
    pub fn eliminates(&self, count: usize) -> bool {
        match *self {
            MonomialOrder::Lex => true,
            MonomialOrder::Grevlex => count == 0,
            MonomialOrder::Block { elim } => elim == count,
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".to_string(),
            MonomialOrder::Grevlex => "grevlex".to_string(),
            MonomialOrder::Block { elim } => format!("block{elim}"),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "lex" => Some(MonomialOrder::Lex),
            "grevlex" => Some(MonomialOrder::Grevlex),
            _ => s
                .strip_prefix("block")
                .and_then(|k| k.parse().ok())
                .map(|elim| MonomialOrder::Block { elim }),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[inline]
fn lex(a: &Monomial, b: &Monomial, range: std::ops::Range<usize>) -> Ordering {
    for i in range {
        match a.exp(i).cmp(&b.exp(i)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

// Last variable first, smaller exponent wins.
#[inline]
fn revlex(a: &Monomial, b: &Monomial, range: std::ops::Range<usize>) -> Ordering {
    for i in range.rev() {
        match a.exp(i).cmp(&b.exp(i)) {
            Ordering::Equal => continue,
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

#[inline]
fn grevlex_range(a: &Monomial, b: &Monomial, range: std::ops::Range<usize>) -> Ordering {
    let da = a.partial_degree(range.clone());
    let db = b.partial_degree(range.clone());
    da.cmp(&db).then_with(|| revlex(a, b, range))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono3() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..5, 4).prop_map(|e| Monomial::from_exps(&e))
    }

    const ORDERS: [MonomialOrder; 4] = [
        MonomialOrder::Lex,
        MonomialOrder::Grevlex,
        MonomialOrder::Block { elim: 1 },
        MonomialOrder::Block { elim: 2 },
    ];

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::Grevlex;
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        assert_eq!(o.cmp(&x, &y, 2), Ordering::Greater);
        // x*z < y^2 in grevlex with x > y > z
        let xz = Monomial::from_exps(&[1, 0, 1]);
        let y2 = Monomial::from_exps(&[0, 2, 0]);
        assert_eq!(o.cmp(&xz, &y2, 3), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&xz, &y2, 3), Ordering::Greater);
    }

    #[test]
    fn block_eliminates_first_variable() {
        let o = MonomialOrder::Block { elim: 1 };
        let t = Monomial::var(0);
        let big = Monomial::from_exps(&[0, 9, 9]);
        assert_eq!(o.cmp(&t, &big, 3), Ordering::Greater);
        assert!(o.eliminates(1));
        assert!(!MonomialOrder::Grevlex.eliminates(1));
    }

    #[test]
    fn names_round_trip() {
        for o in ORDERS {
            assert_eq!(MonomialOrder::parse(&o.name()), Some(o));
        }
    }

    proptest! {
        #[test]
        fn orders_are_total_multiplicative_and_well_founded(a in mono3(), b in mono3(), c in mono3()) {
            for o in ORDERS {
                let ab = o.cmp(&a, &b, 4);
                prop_assert_eq!(ab, o.cmp(&b, &a, 4).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c), 4), ab);
                prop_assert_ne!(o.cmp(&Monomial::one(), &a, 4), Ordering::Greater);
                prop_assert_eq!(o.sort_key(&a, 4).cmp(&o.sort_key(&b, 4)), ab);
                if ab == Ordering::Less && o.cmp(&b, &c, 4) == Ordering::Less {
                    prop_assert_eq!(o.cmp(&a, &c, 4), Ordering::Less);
                }
            }
        }
    }
}
