use num_traits::Zero;

use super::pair::{absorb, reduce_pair};
use super::{
    ConditionSource, ReductionError, ReductionOutcome, ReductionStep, Result, SideCondition, Solution, Status,
    StepKind, Trace,
};
use crate::poly::{Degree, Polynomial};

/// How a pair chain terminated.
#[derive(Clone, Debug)]
pub(crate) enum PairEnd {
    /// Reached `l1 v + l0` and a partner of degree at most one; the pair has a
    /// common zero iff `determinant` vanishes, and then `v = -l0 / l1`.
    Linear { lead: Polynomial, constant: Polynomial, determinant: Polynomial },
    /// A nonzero constant appeared.
    Inconsistent { constant: Polynomial },
    /// A member free of the variable but not constant appeared; it constrains
    /// the other variables only. `survivor` is the partner.
    Free { eliminant: Polynomial, survivor: Polynomial },
    /// One member vanished; the common zeros are those of `survivor`.
    Residual { survivor: Polynomial },
}

/// `l1 m0 - l0 m1` for the linear `l` and partner `m` (degree at most one).
pub(crate) fn linear_determinant(l: &Polynomial, m: &Polynomial, var: &str) -> Polynomial {
    let (l1, l0) = (l.coefficient_in(var, 1), l.coefficient_in(var, 0));
    let (m1, m0) = (m.coefficient_in(var, 1), m.coefficient_in(var, 0));
    l1.mul(&m0).sub(&l0.mul(&m1))
}

/// Reduces the pair until it is linear or a terminal case is reached.
pub(crate) fn chain(f: &Polynomial, g: &Polynomial, var: &str, tr: &mut Trace) -> Result<PairEnd> {
    let (mut f, mut g) = (f.clone(), g.clone());
    loop {
        let (df, dg) = (f.degree_in(var), g.degree_in(var));
        if df.max(dg) == Degree::Finite(1) {
            let (l, m) = if df == Degree::Finite(1) { (f, g) } else { (g, f) };
            let lead = l.coefficient_in(var, 1);
            let constant = l.coefficient_in(var, 0);
            let determinant = linear_determinant(&l, &m, var);
            let cond = SideCondition::nonzero(lead.clone(), ConditionSource::LinearLeading);
            let note = match determinant.constant_value() {
                Some(c) if c.is_zero() => "consistency determinant vanishes",
                Some(_) => "consistency determinant is nonzero: no common solution",
                None => "consistency determinant is a condition on the remaining variables",
            };
            tr.push(
                ReductionStep::new(StepKind::LinearSolve, var, vec![l, m], vec![determinant.clone()])
                    .with_conditions(vec![cond.clone()])
                    .with_note(note),
            );
            tr.assert_all(&[cond], var);
            return Ok(PairEnd::Linear { lead, constant, determinant });
        }
        for (h, other) in [(&f, &g), (&g, &f)] {
            if !h.is_zero() && h.degree_in(var) == Degree::Finite(0) {
                if h.is_constant() {
                    tr.push(
                        ReductionStep::new(StepKind::Inconsistency, var, vec![h.clone()], vec![])
                            .with_note("nonzero constant"),
                    );
                    return Ok(PairEnd::Inconsistent { constant: h.clone() });
                }
                return Ok(PairEnd::Free { eliminant: h.clone(), survivor: other.clone() });
            }
        }
        if f.is_zero() || g.is_zero() {
            let survivor = if f.is_zero() { g } else { f };
            tr.push(
                ReductionStep::new(StepKind::Residual, var, vec![survivor.clone()], vec![survivor.clone()])
                    .with_note("pair collapsed to a single polynomial"),
            );
            return Ok(PairEnd::Residual { survivor });
        }
        if df == dg {
            let r = reduce_pair(&f, &g, var)?;
            let mut step = ReductionStep::new(
                StepKind::PairReduce,
                var,
                vec![f.clone(), g.clone()],
                vec![r.c.clone(), r.d.clone()],
            )
            .with_conditions(r.conditions.clone());
            if r.lead_vanishes() {
                step = step.with_note("reduced leading coefficient vanishes; continuing with {f, c}");
                tr.push(step);
                tr.assert_all(&r.conditions, var);
                g = r.c;
            } else {
                tr.push(step);
                tr.assert_all(&r.conditions, var);
                f = r.c;
                g = r.d;
            }
        } else {
            let (hi, lo) = if df > dg { (f, g) } else { (g, f) };
            let (d, cond) = absorb(&hi, &lo, var)?;
            tr.push(
                ReductionStep::new(StepKind::AbsorbMultiply, var, vec![hi, lo.clone()], vec![lo.clone(), d.clone()])
                    .with_conditions(vec![cond.clone()]),
            );
            tr.assert_all(&[cond], var);
            f = lo;
            g = d;
        }
    }
}

pub(crate) fn check_univariate(f: &Polynomial, var: &str) -> Result<()> {
    if f.variables().iter().any(|&v| v != var) {
        return Err(ReductionError::NotUnivariate { var: var.into(), poly: f.to_string() });
    }
    Ok(())
}

/// Iterates pair reductions on two univariate polynomials down to the linear
/// case, then solves `v = -l0 / l1` and checks the consistency determinant.
pub fn reduce_chain(f: &Polynomial, g: &Polynomial, var: &str) -> Result<ReductionOutcome> {
    if f.is_zero() || g.is_zero() {
        return Err(ReductionError::ZeroInput);
    }
    check_univariate(f, var)?;
    check_univariate(g, var)?;
    let mut tr = Trace::default();
    let end = chain(f, g, var, &mut tr)?;
    let (status, solutions, residual_system) = match end {
        PairEnd::Linear { lead, constant, determinant } => {
            if determinant.is_zero() {
                let l1 = lead.constant_value().expect("univariate");
                let l0 = constant.constant_value().expect("univariate");
                let root = -l0 / l1;
                (Status::Solved, vec![Solution(vec![(var.to_string(), root)])], vec![])
            } else {
                (Status::Inconsistent, vec![], vec![])
            }
        }
        PairEnd::Inconsistent { .. } => (Status::Inconsistent, vec![], vec![]),
        PairEnd::Residual { survivor } => (Status::Residual, vec![], vec![survivor]),
        PairEnd::Free { .. } => unreachable!("constant coefficients never leave a nonconstant free member"),
    };
    for s in &solutions {
        let at = s.to_point();
        debug_assert!(f.evaluate(&at)?.is_zero() && g.evaluate(&at)?.is_zero());
    }
    Ok(ReductionOutcome {
        status,
        variables: vec![var.to_string()],
        solutions,
        residual_system,
        conditions: tr.conditions,
        trace: tr.steps,
    })
}
