use num_rational::BigRational;
use serde::Serialize;

use super::{Counts, JetError, Result};
use crate::poly::Scalar;

/// Smallest `N_H` over a grid of order vectors subject to `N_H >= N_S`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimalOrders {
    pub orders: Vec<u32>,
    #[serde(rename = "N_H")]
    pub n_h: usize,
    #[serde(rename = "N_S")]
    pub n_s: usize,
    /// `(p + n)(m p / n)^m`.
    #[serde(serialize_with = "ser_scalar")]
    pub estimate: Scalar,
    /// `N_H >= estimate`.
    pub estimate_holds: bool,
    /// `N_l - m p / n` per component.
    #[serde(serialize_with = "ser_scalars")]
    pub distances: Vec<Scalar>,
}

fn ser_scalar<S: serde::Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_scalars<S: serde::Serializer>(xs: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

/// Exhaustive search over `1 <= N_l <= cap`; ties go to the
/// lexicographically smallest order vector.
pub fn minimal_orders(p: usize, n: usize, m: usize, cap: u32) -> Result<MinimalOrders> {
    if p == 0 || n == 0 || m == 0 || cap == 0 {
        return Err(JetError::Invalid("p, n, m and cap must all be positive".into()));
    }
    let mut best: Option<(usize, Vec<u32>)> = None;
    let mut orders = vec![1u32; m];
    loop {
        let c = Counts::new(p, n, &orders);
        if c.n_h >= c.n_s && best.as_ref().is_none_or(|(b, _)| c.n_h < *b) {
            best = Some((c.n_h, orders.clone()));
        }
        // Odometer with the last component fastest, so the first feasible
        // minimum found is the lexicographically smallest.
        let Some(l) = (0..m).rev().find(|&l| orders[l] < cap) else {
            break;
        };
        orders[l] += 1;
        for o in &mut orders[l + 1..] {
            *o = 1;
        }
    }
    let (n_h, orders) = best.ok_or(JetError::Infeasible { p, n, m, cap })?;
    let ratio = BigRational::new((m * p).into(), n.into());
    let estimate = Scalar::from_integer((p + n).into()) * num_traits::pow(ratio.clone(), m);
    let distances = orders.iter().map(|&o| Scalar::from_integer(o.into()) - &ratio).collect();
    Ok(MinimalOrders {
        n_s: Counts::new(p, n, &orders).n_s,
        estimate_holds: Scalar::from_integer(n_h.into()) >= estimate,
        orders,
        n_h,
        estimate,
        distances,
    })
}
