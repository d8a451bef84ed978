//! First-order PDE systems in jet variables and their prolongations.
//!
//! An unknown `S_v` and its partial derivatives are represented by jet
//! variables named `S<v>[j1,...,jm]`, treated as independent algebraic
//! unknowns. Prolonging a system differentiates every equation
//! `H_k` by total derivatives up to prescribed orders, which yields a
//! polynomial system in the jet variables.

mod codec;
mod extract;
mod orders;
mod prolong;

#[cfg(test)]
mod tests;

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::poly::{PolyError, Polynomial};

pub use codec::{Counts, Flavor, IndexCodec};
pub use extract::{top_order_extraction, Extraction, SolvedJet};
pub use orders::{minimal_orders, MinimalOrders};
pub use prolong::{
    boundary_violations, prolong, prolong_both, prolong_with, support_violations, total_derivative, ProlongedEquation,
    ProlongedSystem,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("index out of range: {0}")]
    Range(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("invalid system: {0}")]
    Invalid(String),
    #[error("equation {k} is not linear in the top-order jet `{jet}`")]
    NonLinear { k: usize, jet: String },
    #[error("coefficient matrix of the top-order jets has rank {rank}, need {needed}")]
    RankDeficient { rank: usize, needed: usize, matrix: Vec<Vec<Polynomial>> },
    #[error("no order vector with every N_l <= {cap} gives N_H >= N_S (p={p}, n={n}, m={m})")]
    Infeasible { p: usize, n: usize, m: usize, cap: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub type Result<T, E = JetError> = std::result::Result<T, E>;

/// Differentiation orders, one per independent variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(m: usize) -> Self {
        MultiIndex(vec![0; m])
    }

    pub fn unit(m: usize, axis: usize) -> Self {
        let mut j = vec![0; m];
        j[axis] = 1;
        MultiIndex(j)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn shifted(&self, axis: usize) -> Self {
        let mut j = self.0.clone();
        j[axis] += 1;
        MultiIndex(j)
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (n, j) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// The derivative `d^|j| S_v / dx^j`; `v` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetVar {
    pub v: usize,
    pub j: MultiIndex,
}

impl JetVar {
    pub fn new(v: usize, j: Vec<u32>) -> Self {
        JetVar { v, j: MultiIndex(j) }
    }

    pub fn name(&self) -> String {
        format!("S{}{}", self.v, self.j)
    }

    /// Parses `S<v>[j1,...,jm]`, or a bare `S<v>` as the zero multi-index
    /// of length `m`.
    pub fn parse(name: &str, m: usize) -> Option<JetVar> {
        let rest = name.strip_prefix('S')?;
        let (v, j) = match rest.find('[') {
            Some(at) => {
                let inner = rest[at..].strip_prefix('[')?.strip_suffix(']')?;
                let j = inner.split(',').map(|t| t.trim().parse::<u32>().ok()).collect::<Option<Vec<u32>>>()?;
                (&rest[..at], j)
            }
            None => (rest, vec![0; m]),
        };
        if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let v: usize = v.parse().ok()?;
        (v >= 1).then(|| JetVar::new(v, j))
    }
}

impl fmt::Display for JetVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `p + n` first-order equations in `p` unknown functions of `m` variables.
#[derive(Clone, Debug)]
pub struct PdeSystem {
    pub p: usize,
    pub n: usize,
    pub base: Vec<String>,
    pub equations: Vec<Polynomial>,
}

impl PdeSystem {
    /// Validates the system and rewrites bare `S<v>` as `S<v>[0,...,0]`.
    pub fn new(p: usize, n: usize, base: Vec<String>, equations: Vec<Polynomial>) -> Result<Self> {
        let m = base.len();
        if p == 0 || m == 0 {
            return Err(JetError::Invalid("need at least one unknown and one variable".into()));
        }
        if equations.len() != p + n {
            return Err(JetError::Invalid(format!("expected {} equations (p + n), found {}", p + n, equations.len())));
        }
        let normalize = |name: &str| match JetVar::parse(name, m) {
            Some(jv) if !base.iter().any(|b| b == name) => jv.name(),
            _ => name.to_string(),
        };
        let equations: Vec<Polynomial> = equations.iter().map(|f| f.rename(normalize)).collect();
        for (k, f) in equations.iter().enumerate() {
            for name in f.variables() {
                if base.iter().any(|b| b == name) {
                    continue;
                }
                let Some(jv) = JetVar::parse(name, m) else {
                    return Err(JetError::Invalid(format!("equation {}: unknown variable `{name}`", k + 1)));
                };
                if jv.v > p || jv.j.len() != m {
                    return Err(JetError::Invalid(format!(
                        "equation {}: `{name}` needs 1 <= v <= {p} and {m} indices",
                        k + 1
                    )));
                }
                if jv.j.order() > 1 {
                    return Err(JetError::Invalid(format!(
                        "equation {}: `{name}` has order {} but the system must be first order",
                        k + 1,
                        jv.j.order()
                    )));
                }
            }
        }
        Ok(PdeSystem { p, n, base, equations })
    }

    pub fn m(&self) -> usize {
        self.base.len()
    }
}
