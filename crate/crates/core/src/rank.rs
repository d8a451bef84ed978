//! Jacobian rank of a prolonged system at a point, compared with the number
//! of unknowns that actually occur.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exec::{self, Execution};
use crate::jet::{Counts, JetVar, MultiIndex, ProlongedSystem};
use crate::linalg::echelon;
use crate::poly::{Point, PolyError, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RankError {
    #[error("point is not a solution: equation alpha = {alpha} (k = {k}, i = {i}) evaluates to {value}")]
    NotASolution { alpha: usize, k: usize, i: MultiIndex, value: Scalar },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub type Result<T, E = RankError> = std::result::Result<T, E>;

/// Rows indexed by alpha, columns by beta.
pub type JacobianMatrix = Vec<Vec<Scalar>>;

/// `dP_alpha / dQ_beta` evaluated at `point`.
pub fn jacobian(ps: &ProlongedSystem, point: &Point) -> Result<JacobianMatrix> {
    jacobian_with(ps, point, Execution::default())
}

pub fn jacobian_with(ps: &ProlongedSystem, point: &Point, exec: Execution) -> Result<JacobianMatrix> {
    let names: Vec<String> = ps.unknowns.iter().map(JetVar::name).collect();
    exec::map(exec, &ps.equations, |eq| {
        names
            .iter()
            .map(|name| {
                if eq.polynomial.involves(name) {
                    Ok(eq.polynomial.partial_derivative(name).evaluate(point)?)
                } else {
                    Ok(Scalar::zero())
                }
            })
            .collect()
    })
    .into_iter()
    .collect()
}

/// Rank over the rationals: rows are scaled to integers and reduced by
/// fraction-free elimination.
pub fn exact_rank(matrix: &[Vec<Scalar>]) -> usize {
    let ints: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * Scalar::from_integer(lcm.clone())).to_integer()).collect()
        })
        .collect();
    echelon(ints).rank
}

/// Unknowns with a partial derivative that is not identically zero.
#[derive(Clone, Debug, Serialize)]
pub struct ActiveUnknowns {
    pub count: usize,
    pub unknowns: Vec<String>,
    /// `N_H p / (p + n) * (1 + sum 1/N_l)` for the system's index ranges.
    #[serde(serialize_with = "ser_scalar")]
    pub bound: Scalar,
    pub within_bound: bool,
}

fn ser_scalar<S: serde::Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn count_active_unknowns(ps: &ProlongedSystem) -> ActiveUnknowns {
    let unknowns: Vec<String> = ps
        .unknowns
        .iter()
        .map(JetVar::name)
        .filter(|name| ps.equations.iter().any(|eq| eq.polynomial.involves(name)))
        .collect();
    // Equation ranges have N_l values per axis (N_l + 1 when extended).
    let effective: Vec<u32> = (0..ps.m()).map(|l| ps.codec.i_radix(l)).collect();
    let bound = Counts::active_bound(ps.p(), ps.n(), &effective);
    let count = unknowns.len();
    ActiveUnknowns { count, within_bound: Scalar::from_integer(count.into()) <= bound, unknowns, bound }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub n_s_real: usize,
    pub n_h: usize,
    pub n_s: usize,
    pub certified: bool,
    pub bound_11_holds: bool,
    #[serde(serialize_with = "ser_scalar")]
    pub active_bound: Scalar,
    pub nh_ge_ns: bool,
}

/// Checks that `point` zeroes every equation, then compares the Jacobian
/// rank there with the number of occurring unknowns.
pub fn certify(ps: &ProlongedSystem, point: &Point) -> Result<RankReport> {
    for eq in &ps.equations {
        let value = eq.polynomial.evaluate(point)?;
        if !value.is_zero() {
            return Err(RankError::NotASolution { alpha: eq.alpha, k: eq.k, i: eq.i.clone(), value });
        }
    }
    let rank = exact_rank(&jacobian(ps, point)?);
    let active = count_active_unknowns(ps);
    let (n_h, n_s) = (ps.equations.len(), ps.unknowns.len());
    Ok(RankReport {
        rank,
        n_s_real: active.count,
        n_h,
        n_s,
        certified: rank == active.count,
        bound_11_holds: active.within_bound,
        active_bound: active.bound,
        nh_ge_ns: n_h >= n_s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{prolong, Flavor, PdeSystem};
    use crate::poly::{parse_polynomial, scalar};

    fn ode(eqs: &[&str], orders: u32) -> ProlongedSystem {
        let eqs = eqs.iter().map(|s| parse_polynomial(s).unwrap()).collect::<Vec<_>>();
        let sys = PdeSystem::new(1, eqs.len() - 1, vec!["x".into()], eqs).unwrap();
        prolong(&sys, &[orders], Flavor::Plain).unwrap()
    }

    fn at(pairs: &[(&str, i64)]) -> Point {
        pairs.iter().map(|(k, v)| (k.to_string(), scalar(*v))).collect()
    }

    fn q(rows: &[&[i64]]) -> JacobianMatrix {
        rows.iter().map(|r| r.iter().map(|&x| scalar(x)).collect()).collect()
    }

    #[test]
    fn jacobian_examples() {
        let ps = ode(&["S1[1] - S1", "S1*S1[1] - S1^2"], 1);
        let j = jacobian(&ps, &at(&[("S1[0]", 1), ("S1[1]", 1)])).unwrap();
        assert_eq!(j, q(&[&[-1, 1], &[-1, 1]]));
        assert_eq!(exact_rank(&j), 1);

        let eqs = vec![parse_polynomial("S1[1] - S1").unwrap()];
        let sys = PdeSystem::new(1, 0, vec!["x".into()], eqs).unwrap();
        let ps = prolong(&sys, &[1], Flavor::Plain).unwrap();
        let j = jacobian(&ps, &at(&[("S1[0]", 2), ("S1[1]", 2)])).unwrap();
        assert_eq!(j, q(&[&[-1, 1]]));

        let ps = ode(&["S1[1] - S1", "S1[1] - S1"], 2);
        let j = jacobian(&ps, &at(&[("S1[0]", 1), ("S1[1]", 1), ("S1[2]", 1)])).unwrap();
        assert!(j[0..2].iter().all(|row| row[2].is_zero()));
    }

    #[test]
    fn missing_assignment_is_an_error() {
        let ps = ode(&["S1[1] - S1", "S1*S1[1] - S1^2"], 1);
        assert!(matches!(jacobian(&ps, &at(&[("S1[0]", 1)])), Err(RankError::Poly(_))));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(exact_rank(&q(&[&[-1, 1], &[-1, 1]])), 1);
        assert_eq!(exact_rank(&q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), 3);
        assert_eq!(exact_rank(&q(&[&[1, 2], &[2, 4], &[3, 6]])), 1);
        let halves = vec![vec![scalar(1) / scalar(2), scalar(1) / scalar(3)], vec![scalar(3), scalar(2)]];
        assert_eq!(exact_rank(&halves), 1);
        assert_eq!(exact_rank(&[]), 0);
    }

    #[test]
    fn active_unknown_examples() {
        let a = count_active_unknowns(&ode(&["S1[1] - S1", "S1*S1[1] - S1^2"], 1));
        assert_eq!(a.count, 2);
        assert_eq!(a.bound, scalar(2));
        assert!(a.within_bound);
        let eqs = vec![parse_polynomial("x").unwrap()];
        let sys = PdeSystem::new(1, 0, vec!["x".into()], eqs).unwrap();
        assert_eq!(count_active_unknowns(&prolong(&sys, &[1], Flavor::Plain).unwrap()).count, 0);
    }

    #[test]
    fn certify_examples() {
        let ps = ode(&["S1[1] - S1", "S1*S1[1] - S1^2"], 1);
        let r = certify(&ps, &at(&[("S1[0]", 1), ("S1[1]", 1)])).unwrap();
        assert_eq!((r.rank, r.n_s_real, r.certified), (1, 2, false));
        assert!(matches!(
            certify(&ps, &at(&[("S1[0]", 1), ("S1[1]", 2)])),
            Err(RankError::NotASolution { alpha: 1, .. })
        ));

        let ps = ode(&["S1[1] - S1^2", "S1[1] - S1"], 1);
        let r = certify(&ps, &at(&[("S1[0]", 0), ("S1[1]", 0)])).unwrap();
        assert_eq!((r.n_h, r.n_s, r.rank, r.n_s_real), (2, 2, 2, 2));
        assert!(r.certified && r.nh_ge_ns);
    }

    #[test]
    fn certify_ignores_row_scaling() {
        let a = ode(&["S1[1] - S1^2", "S1[1] - S1"], 2);
        let b = ode(&["-3*S1[1] + 3*S1^2", "1/2*S1[1] - 1/2*S1"], 2);
        let pt = at(&[("S1[0]", 0), ("S1[1]", 0), ("S1[2]", 0)]);
        assert_eq!(certify(&a, &pt).unwrap(), certify(&b, &pt).unwrap());
    }
}
