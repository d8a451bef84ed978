use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{JetError, MultiIndex, Result};
use crate::poly::Scalar;

/// Index ranges: plain uses `0 <= i_l < N_l` for equations and
/// `0 <= j_l <= N_l` for unknowns; extended raises both bounds by one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Plain,
    Extended,
}

/// Mixed-radix encoders for equation indices `alpha(k, i)` and unknown
/// indices `beta(v, j)`, both 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexCodec {
    pub p: usize,
    pub n: usize,
    pub orders: Vec<u32>,
    pub flavor: Flavor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    #[serde(rename = "N_H")]
    pub n_h: usize,
    #[serde(rename = "N_S")]
    pub n_s: usize,
    #[serde(rename = "N_H_w")]
    pub n_h_w: usize,
    #[serde(rename = "N_S_w")]
    pub n_s_w: usize,
}

impl Counts {
    pub fn new(p: usize, n: usize, orders: &[u32]) -> Self {
        let prod = |add: u32| orders.iter().map(|&o| (o + add) as usize).product::<usize>();
        Counts { n_h: (p + n) * prod(0), n_s: p * prod(1), n_h_w: (p + n) * prod(1), n_s_w: p * prod(2) }
    }

    /// `N_H p / (p + n) * (1 + sum 1/N_l)`.
    pub fn active_bound(p: usize, n: usize, orders: &[u32]) -> Scalar {
        let one = Scalar::from_integer(1.into());
        let inv: Scalar = orders.iter().map(|&o| BigRational::new(1.into(), o.into())).fold(one.clone(), |a, b| a + b);
        let n_h = Counts::new(p, n, orders).n_h;
        BigRational::new((n_h * p).into(), (p + n).into()) * inv
    }
}

impl IndexCodec {
    pub fn new(p: usize, n: usize, orders: Vec<u32>, flavor: Flavor) -> Result<Self> {
        if p == 0 || orders.is_empty() {
            return Err(JetError::Invalid("need p >= 1 and at least one order".into()));
        }
        if let Some(o) = orders.iter().find(|&&o| o == 0) {
            return Err(JetError::Invalid(format!("orders must be positive, got {o}")));
        }
        Ok(IndexCodec { p, n, orders, flavor })
    }

    pub fn m(&self) -> usize {
        self.orders.len()
    }

    fn lift(&self) -> u32 {
        match self.flavor {
            Flavor::Plain => 0,
            Flavor::Extended => 1,
        }
    }

    /// Number of values `i_l` takes.
    pub fn i_radix(&self, axis: usize) -> u32 {
        self.orders[axis] + self.lift()
    }

    /// Number of values `j_l` takes.
    pub fn j_radix(&self, axis: usize) -> u32 {
        self.orders[axis] + 1 + self.lift()
    }

    pub fn n_h(&self) -> usize {
        (self.p + self.n) * (0..self.m()).map(|l| self.i_radix(l) as usize).product::<usize>()
    }

    pub fn n_s(&self) -> usize {
        self.p * (0..self.m()).map(|l| self.j_radix(l) as usize).product::<usize>()
    }

    pub fn counts(&self) -> Counts {
        Counts::new(self.p, self.n, &self.orders)
    }

    fn encode(&self, digit: usize, base: usize, idx: &MultiIndex, radix: impl Fn(usize) -> u32) -> usize {
        let mut value = digit;
        let mut weight = base;
        for (l, &c) in idx.0.iter().enumerate() {
            value += c as usize * weight;
            weight *= radix(l) as usize;
        }
        value
    }

    fn decode(&self, code: usize, base: usize, radix: impl Fn(usize) -> u32) -> (usize, MultiIndex) {
        let z = code - 1;
        let mut rest = z / base;
        let mut idx = Vec::with_capacity(self.m());
        for l in 0..self.m() {
            let r = radix(l) as usize;
            idx.push((rest % r) as u32);
            rest /= r;
        }
        (z % base + 1, MultiIndex(idx))
    }

    fn check(&self, idx: &MultiIndex, radix: impl Fn(usize) -> u32, what: &str) -> Result<()> {
        if idx.len() != self.m() {
            return Err(JetError::Range(format!("{what} {idx} has {} components, need {}", idx.len(), self.m())));
        }
        if let Some(l) = (0..self.m()).find(|&l| idx.0[l] >= radix(l)) {
            return Err(JetError::Range(format!("{what} {idx}: component {} must be below {}", l + 1, radix(l))));
        }
        Ok(())
    }

    pub fn encode_alpha(&self, k: usize, i: &MultiIndex) -> Result<usize> {
        if k == 0 || k > self.p + self.n {
            return Err(JetError::Range(format!("k = {k} outside 1..={}", self.p + self.n)));
        }
        self.check(i, |l| self.i_radix(l), "equation index")?;
        Ok(self.encode(k, self.p + self.n, i, |l| self.i_radix(l)))
    }

    pub fn decode_alpha(&self, alpha: usize) -> Result<(usize, MultiIndex)> {
        if alpha == 0 || alpha > self.n_h() {
            return Err(JetError::Range(format!("alpha = {alpha} outside 1..={}", self.n_h())));
        }
        Ok(self.decode(alpha, self.p + self.n, |l| self.i_radix(l)))
    }

    pub fn encode_beta(&self, v: usize, j: &MultiIndex) -> Result<usize> {
        if v == 0 || v > self.p {
            return Err(JetError::Range(format!("v = {v} outside 1..={}", self.p)));
        }
        self.check(j, |l| self.j_radix(l), "unknown index")?;
        Ok(self.encode(v, self.p, j, |l| self.j_radix(l)))
    }

    pub fn decode_beta(&self, beta: usize) -> Result<(usize, MultiIndex)> {
        if beta == 0 || beta > self.n_s() {
            return Err(JetError::Range(format!("beta = {beta} outside 1..={}", self.n_s())));
        }
        Ok(self.decode(beta, self.p, |l| self.j_radix(l)))
    }

    pub fn contains_beta(&self, j: &MultiIndex) -> bool {
        self.check(j, |l| self.j_radix(l), "").is_ok()
    }
}
