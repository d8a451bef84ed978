use num_traits::Zero;

use super::chain::{chain, PairEnd};
use super::{ReductionError, ReductionStep, Result, SideCondition, StepKind, Trace};
use crate::poly::{Degree, Point, Polynomial, Scalar};

/// `lead * v + constant = 0`, solved as `v = -constant / lead`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    pub lead: Polynomial,
    pub constant: Polynomial,
}

impl LinearForm {
    /// Value of the eliminated variable at a point of the remaining
    /// variables, or `None` where the lead vanishes.
    pub fn solve_at(&self, point: &Point) -> Result<Option<Scalar>> {
        let l1 = self.lead.evaluate(point)?;
        if l1.is_zero() {
            return Ok(None);
        }
        Ok(Some(-self.constant.evaluate(point)? / l1))
    }

    pub fn to_polynomial(&self, var: &str) -> Polynomial {
        self.lead.mul_var_pow(var, 1).add(&self.constant)
    }
}

/// Result of eliminating one variable from a system.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub variable: String,
    /// Input index of the pivot equation.
    pub pivot_index: usize,
    pub pivot: Polynomial,
    /// One polynomial per non-pivot equation, free of the variable: the
    /// consistency determinant of the pivot paired with that equation, or the
    /// equation itself if it never involved the variable.
    pub reduced: Vec<Polynomial>,
    /// Linear expressions for the variable, in pair order.
    pub linear_forms: Vec<LinearForm>,
    /// Members left at degree two or more after a pair collapsed.
    pub unresolved: Vec<Polynomial>,
    pub conditions: Vec<SideCondition>,
    pub trace: Vec<ReductionStep>,
    /// Every equation is a constant multiple of the pivot.
    pub degenerate: bool,
}

/// Eliminates `var` from `system`, treating each member as a polynomial in
/// `var` with polynomial coefficients.
///
/// The pivot is the member of lowest positive degree in `var`; ties prefer a
/// constant leading coefficient, then input order. Every other member
/// involving `var` is chained against the pivot down to the linear case.
pub fn eliminate_variable(system: &[Polynomial], var: &str) -> Result<Elimination> {
    if system.is_empty() {
        return Err(ReductionError::EmptySystem);
    }
    let pivot_index = system
        .iter()
        .enumerate()
        .filter_map(|(i, f)| match f.degree_in(var) {
            Degree::Finite(d) if d >= 1 => {
                let lc_constant = f.leading_coefficient_in(var).is_constant();
                Some(((d, !lc_constant, i), i))
            }
            _ => None,
        })
        .min()
        .map(|(_, i)| i)
        .ok_or_else(|| ReductionError::AllDegreeZero(var.to_string()))?;
    let pivot = system[pivot_index].clone();
    let degenerate = system.len() > 1 && system.iter().all(|f| f.is_scalar_multiple_of(&pivot));

    let mut tr = Trace::default();
    let mut reduced = Vec::new();
    let mut linear_forms: Vec<LinearForm> = Vec::new();
    let mut unresolved = Vec::new();
    let mut add_form = |lf: LinearForm| {
        if !linear_forms.contains(&lf) {
            linear_forms.push(lf);
        }
    };
    if pivot.degree_in(var) == Degree::Finite(1) {
        add_form(LinearForm { lead: pivot.coefficient_in(var, 1), constant: pivot.coefficient_in(var, 0) });
    }
    for (i, g) in system.iter().enumerate() {
        if i == pivot_index {
            continue;
        }
        if !g.involves(var) {
            reduced.push(g.clone());
            continue;
        }
        match chain(&pivot, g, var, &mut tr)? {
            PairEnd::Linear { lead, constant, determinant } => {
                reduced.push(determinant);
                add_form(LinearForm { lead, constant });
            }
            PairEnd::Inconsistent { constant } => reduced.push(constant),
            PairEnd::Free { eliminant, survivor } => {
                reduced.push(eliminant);
                if survivor.involves(var) {
                    unresolved.push(survivor);
                }
            }
            PairEnd::Residual { survivor } => {
                reduced.push(Polynomial::zero(pivot.vars().clone()));
                unresolved.push(survivor);
            }
        }
    }
    if degenerate {
        tr.push(
            ReductionStep::new(StepKind::Residual, var, vec![pivot.clone()], vec![pivot.clone()])
                .with_note("all equations are multiples of the pivot"),
        );
    }
    Ok(Elimination {
        variable: var.to_string(),
        pivot_index,
        pivot,
        reduced,
        linear_forms,
        unresolved,
        conditions: tr.conditions,
        trace: tr.steps,
        degenerate,
    })
}
