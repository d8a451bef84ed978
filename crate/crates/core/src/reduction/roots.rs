//! Exact rational roots of univariate residual polynomials.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::chain::{chain, check_univariate, PairEnd};
use super::{ReductionStep, Result, StepKind, Trace};
use crate::poly::{Degree, Polynomial, Scalar};

/// Candidate divisors are only enumerated for integers up to this size.
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

/// Rational roots of a univariate polynomial with rational coefficients,
/// ascending and without repetition. The flag is true when the polynomial
/// splits into rational linear factors, i.e. the list is all of its roots.
///
/// Uses the rational root theorem on the primitive integer form. The flag is
/// false when the leading or trailing coefficient is too large to factor.
pub fn rational_roots(f: &Polynomial, var: &str) -> Result<(Vec<Scalar>, bool)> {
    check_univariate(f, var)?;
    if f.is_zero() {
        return Ok((vec![], false));
    }
    let coeffs: Vec<BigInt> = f
        .primitive()
        .coefficients_in(var)
        .iter()
        .map(|c| c.constant_value().expect("univariate").to_integer())
        .collect();
    let mut roots = Vec::new();
    let mut rest: Vec<Scalar> = coeffs.iter().cloned().map(Scalar::from_integer).collect();
    let shift = coeffs.iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        roots.push(Scalar::zero());
        rest.drain(..shift);
    }
    let trimmed = &coeffs[shift..];
    let (lead, trail) = (trimmed.last().expect("nonzero"), &trimmed[0]);
    let mut enumerable = true;
    if trimmed.len() > 1 {
        match (divisors(trail), divisors(lead)) {
            (Some(ps), Some(qs)) => {
                for p in &ps {
                    for q in &qs {
                        for sign in [1, -1] {
                            let r = Scalar::new(p * sign, q.clone());
                            if !roots.contains(&r) && horner(&rest, &r).is_zero() {
                                roots.push(r);
                            }
                        }
                    }
                }
            }
            _ => enumerable = false,
        }
    }
    for r in &roots {
        if r.is_zero() {
            continue;
        }
        while rest.len() > 1 && horner(&rest, r).is_zero() {
            rest = deflate(&rest, r);
        }
    }
    roots.sort();
    Ok((roots, enumerable && rest.len() == 1))
}

fn horner(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
}

/// Quotient by `(v - r)`, assuming `r` is a root.
fn deflate(coeffs: &[Scalar], r: &Scalar) -> Vec<Scalar> {
    let n = coeffs.len() - 1;
    let mut out = vec![Scalar::zero(); n];
    let mut carry = Scalar::zero();
    for i in (1..=n).rev() {
        carry = &coeffs[i] + carry * r;
        out[i - 1] = carry.clone();
    }
    out
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&n| n <= DIVISOR_LIMIT)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Common rational zeros of univariate polynomials with constant
/// coefficients, found by folding pair chains and isolating the roots of a
/// surviving residual.
#[derive(Debug, Clone)]
pub(crate) struct CommonRoots {
    pub roots: Vec<Scalar>,
    pub complete: bool,
    pub residual: Option<Polynomial>,
}

pub(crate) fn common_rational_roots(polys: &[Polynomial], var: &str, tr: &mut Trace) -> Result<CommonRoots> {
    let inconsistent = CommonRoots { roots: vec![], complete: true, residual: None };
    let nonzero: Vec<&Polynomial> = polys.iter().filter(|p| !p.is_zero()).collect();
    let Some((first, rest)) = nonzero.split_first() else {
        return Ok(CommonRoots { roots: vec![], complete: false, residual: None });
    };
    if let Some(c) = nonzero.iter().find(|p| p.is_constant()) {
        tr.push(
            ReductionStep::new(StepKind::Inconsistency, var, vec![(*c).clone()], vec![]).with_note("nonzero constant"),
        );
        return Ok(inconsistent);
    }
    let mut cur = (*first).clone();
    for g in rest {
        match chain(&cur, g, var, tr)? {
            PairEnd::Linear { lead, constant, determinant } => {
                if !determinant.is_zero() {
                    return Ok(inconsistent);
                }
                cur = lead.mul_var_pow(var, 1).add(&constant);
            }
            PairEnd::Inconsistent { .. } => return Ok(inconsistent),
            PairEnd::Residual { survivor } => cur = survivor,
            PairEnd::Free { .. } => unreachable!("constant coefficients"),
        }
    }
    match cur.degree_in(var) {
        Degree::Finite(1) => {
            let l1 = cur.coefficient_in(var, 1).constant_value().expect("univariate");
            let l0 = cur.coefficient_in(var, 0).constant_value().expect("univariate");
            Ok(CommonRoots { roots: vec![-l0 / l1], complete: true, residual: None })
        }
        _ => {
            let (roots, splits) = rational_roots(&cur, var)?;
            let listed: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
            let note = if splits {
                format!("splits over the rationals; roots {}", listed.join(", "))
            } else {
                format!("rational roots {} (does not split completely)", listed.join(", "))
            };
            let factors: Vec<Polynomial> = roots
                .iter()
                .map(|r| {
                    let x = Polynomial::var(cur.vars(), var);
                    x.sub(&Polynomial::constant(cur.vars().clone(), r.clone()))
                })
                .collect();
            tr.push(ReductionStep::new(StepKind::Residual, var, vec![cur.clone()], factors).with_note(note));
            let residual = (!splits).then_some(cur);
            Ok(CommonRoots { roots, complete: splits, residual })
        }
    }
}
