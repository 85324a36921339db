use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::monomial::MAX_VARS;
use super::order::MonomialOrder;

/// Ordered list of distinct variable names. The position of a name is its
/// coordinate in every exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingSpec {
    vars: Vec<String>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingSpec {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::BadRing("no variables".into()));
        }
        if vars.len() > MAX_VARS {
            return Err(Error::BadRing(format!("at most {MAX_VARS} variables are supported")));
        }
        let mut out: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref();
            if !is_identifier(v) {
                return Err(Error::BadRing(format!("`{v}` is not an identifier")));
            }
            if out.iter().any(|w| w == v) {
                return Err(Error::BadRing(format!("duplicate variable `{v}`")));
            }
            out.push(v.to_string());
        }
        Ok(RingSpec { vars: out })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A name not already used by this ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (0..)
            .map(|i| format!("{base}{i}"))
            .find(|c| self.index_of(c).is_none())
            .unwrap()
    }
}

/// A ring together with its active monomial order. Shared behind an `Arc`
/// by every polynomial that lives in it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ring {
    spec: RingSpec,
    order: MonomialOrder,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(spec: RingSpec, order: MonomialOrder) -> RingRef {
        Arc::new(Ring { spec, order })
    }

    /// Grevlex ring over the given variable names.
    pub fn grevlex<S: AsRef<str>>(vars: &[S]) -> Result<RingRef> {
        Ok(Ring::new(RingSpec::new(vars)?, MonomialOrder::Grevlex))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.spec.len()
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.spec.vars[i]
    }

    pub fn with_order(&self, order: MonomialOrder) -> RingRef {
        Ring::new(self.spec.clone(), order)
    }

    /// Same variables with a fresh variable prepended, under the block order
    /// that eliminates it.
    pub fn extended_front(&self, base: &str) -> Result<RingRef> {
        let mut names = vec![self.spec.fresh_name(base)];
        names.extend(self.spec.vars.iter().cloned());
        Ok(Ring::new(RingSpec::new(&names)?, MonomialOrder::Block { elim: 1 }))
    }

    /// Same variables and order, compared structurally.
    pub fn same_as(&self, other: &Ring) -> bool {
        self == other
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ[{}] ({})", self.spec.vars.join(","), self.order)
    }
}
