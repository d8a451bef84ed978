use num_traits::Zero;

use super::eliminate::eliminate_variable;
use super::roots::common_rational_roots;
use super::{
    ConditionStatus, ReductionError, ReductionOutcome, ReductionStep, Result, Solution, Status, StepKind, Trace,
};
use crate::exec::{self, Execution};
use crate::poly::{Point, Polynomial, Scalar, VarTable};

/// Points found for one level of the recursion.
struct Level {
    points: Vec<Point>,
    /// False when some branch was skipped or a variable stayed free.
    complete: bool,
    residual: Vec<Polynomial>,
    /// Top elimination found only multiples of one equation.
    degenerate: bool,
}

impl Level {
    fn inconsistent() -> Self {
        Level { points: vec![], complete: true, residual: vec![], degenerate: false }
    }

    fn is_inconsistent(&self) -> bool {
        self.complete && self.points.is_empty()
    }
}

fn verifies(eqs: &[Polynomial], point: &Point) -> Result<bool> {
    for f in eqs {
        if !f.evaluate(point)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn solve_level(eqs: &[Polynomial], vars: &[String], tr: &mut Trace) -> Result<Level> {
    let eqs: Vec<Polynomial> = eqs.iter().filter(|f| !f.is_zero()).cloned().collect();
    if let Some(c) = eqs.iter().find(|f| f.is_constant()) {
        tr.push(ReductionStep {
            kind: StepKind::Inconsistency,
            variable: None,
            inputs: vec![c.clone()],
            outputs: vec![],
            conditions: vec![],
            note: Some("nonzero constant".into()),
        });
        return Ok(Level::inconsistent());
    }
    let Some((v, rest)) = vars.split_last() else {
        return Ok(Level { points: vec![Point::new()], complete: true, residual: vec![], degenerate: false });
    };
    if eqs.is_empty() {
        return Ok(Level { points: vec![], complete: false, residual: vec![], degenerate: false });
    }
    if rest.is_empty() {
        let cr = common_rational_roots(&eqs, v, tr)?;
        let points = cr.roots.into_iter().map(|r| Point::from([(v.clone(), r)])).collect();
        return Ok(Level {
            points,
            complete: cr.complete,
            residual: cr.residual.into_iter().collect(),
            degenerate: false,
        });
    }
    if !eqs.iter().any(|f| f.involves(v)) {
        let sub = solve_level(&eqs, rest, tr)?;
        if sub.is_inconsistent() {
            return Ok(sub);
        }
        tr.push(
            ReductionStep::new(StepKind::Residual, v, vec![], vec![]).with_note("variable does not occur; left free"),
        );
        return Ok(Level { points: vec![], complete: false, residual: sub.residual, degenerate: false });
    }

    let elim = eliminate_variable(&eqs, v)?;
    tr.extend(Trace { steps: elim.trace.clone(), conditions: elim.conditions.clone() });
    let sub = solve_level(&elim.reduced, rest, tr)?;
    let mut complete = sub.complete;
    let mut points = Vec::new();
    for at in &sub.points {
        let mut candidates: Vec<Scalar> = Vec::new();
        for lf in &elim.linear_forms {
            if let Some(val) = lf.solve_at(at)? {
                if !candidates.contains(&val) {
                    candidates.push(val);
                }
            }
        }
        if candidates.is_empty() {
            let substituted: Vec<Polynomial> = eqs.iter().map(|f| f.substitute(at)).collect();
            let cr = common_rational_roots(&substituted, v, tr)?;
            complete &= cr.complete;
            candidates = cr.roots;
        }
        for c in elim.conditions.iter().filter(|c| c.status() == ConditionStatus::Assumed) {
            if !c.holds_at(at)? {
                complete = false;
                tr.push(
                    ReductionStep::new(StepKind::BranchSkipped, v, vec![c.polynomial.clone()], vec![])
                        .with_note("condition vanishes at a back-substituted point"),
                );
            }
        }
        for val in candidates {
            let mut p = at.clone();
            p.insert(v.clone(), val);
            if verifies(&eqs, &p)? {
                points.push(p);
            }
        }
    }
    let mut residual = Vec::new();
    if !complete {
        residual.extend(sub.residual);
        residual.extend(elim.linear_forms.iter().map(|lf| lf.to_polynomial(v)));
        residual.extend(elim.unresolved.iter().cloned());
        if residual.is_empty() {
            residual.push(elim.pivot.clone());
        }
    }
    Ok(Level { points, complete, residual, degenerate: elim.degenerate })
}

/// Solves a polynomial system with more equations than variables by
/// eliminating variables from the last to the first and back-substituting.
///
/// Variables are taken in the order of the merged variable table, keeping
/// only those that occur. Every returned point is checked against the
/// original equations by exact evaluation. Points on the locus where a
/// recorded side condition vanishes are not explored; when that locus is hit
/// the status is `residual` instead of `solved`.
pub fn solve_overdetermined(system: &[Polynomial]) -> Result<ReductionOutcome> {
    if system.is_empty() {
        return Err(ReductionError::EmptySystem);
    }
    let table = system.iter().fold(VarTable::empty(), |t, f| t.union(f.vars()));
    let vars: Vec<String> = table.names().iter().filter(|n| system.iter().any(|f| f.involves(n))).cloned().collect();
    if system.len() < vars.len() + 1 {
        return Err(ReductionError::Shape { equations: system.len(), variables: vars.len() });
    }
    let mut tr = Trace::default();
    let level = solve_level(system, &vars, &mut tr)?;
    let mut solutions = Vec::new();
    for p in &level.points {
        if verifies(system, p)? {
            solutions.push(Solution(vars.iter().map(|v| (v.clone(), p[v].clone())).collect()));
        }
    }
    solutions.sort_by_key(Solution::values);
    solutions.dedup();
    let (status, residual_system) = if !level.complete {
        if level.degenerate {
            (Status::Degenerate, level.residual)
        } else {
            (Status::Residual, level.residual)
        }
    } else if solutions.is_empty() {
        let explained = tr.steps.last().is_some_and(|s| match s.kind {
            StepKind::Inconsistency => true,
            StepKind::LinearSolve => {
                s.outputs.first().is_some_and(|d| d.constant_value().is_some_and(|c| !c.is_zero()))
            }
            _ => false,
        });
        if !explained {
            tr.push(ReductionStep {
                kind: StepKind::Inconsistency,
                variable: None,
                inputs: system.to_vec(),
                outputs: vec![],
                conditions: vec![],
                note: Some("no candidate survives back-substitution".into()),
            });
        }
        (Status::Inconsistent, vec![])
    } else {
        (Status::Solved, vec![])
    };
    Ok(ReductionOutcome {
        status,
        variables: vars,
        solutions,
        residual_system,
        conditions: tr.conditions,
        trace: tr.steps,
    })
}

/// Runs [`solve_overdetermined`] on each system.
pub fn solve_many(systems: &[Vec<Polynomial>], exec: Execution) -> Vec<Result<ReductionOutcome>> {
    exec::map(exec, systems, |s| solve_overdetermined(s))
}
