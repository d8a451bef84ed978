//! Degree-lowering reduction of overdetermined polynomial systems.
//!
//! A pair `{f, g}` of equal degree `n` in a variable is replaced by a pair of
//! degree at most `n - 1` with the same common solutions ([`reduce_pair`]);
//! iterating reaches a linear pair, which is solved directly and checked with
//! a 2x2 consistency determinant ([`reduce_chain`]). With polynomial
//! coefficients the same steps eliminate one variable from an `m + 1` equation
//! system ([`eliminate_variable`]), and recursing over the variables solves the
//! whole system ([`solve_overdetermined`]).
//!
//! Divisions by leading coefficients are only performed when the coefficient
//! is a nonzero constant. Otherwise both sides are cross-multiplied and the
//! coefficient is recorded as a [`SideCondition`]. Results hold on the locus
//! where every recorded condition is nonzero.

mod chain;
mod eliminate;
mod pair;
mod roots;
mod solve;

#[cfg(test)]
mod tests;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::poly::{Degree, Point, PolyError, Polynomial, Scalar};

pub use chain::reduce_chain;
pub use eliminate::{eliminate_variable, Elimination, LinearForm};
pub use pair::{absorb, reduce_pair, PairReduction, ReductionForm};
pub use roots::rational_roots;
pub use solve::{solve_many, solve_overdetermined};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("degrees in `{var}` differ ({left} vs {right}); reduce_pair needs equal degrees")]
    DegreeMismatch { var: String, left: Degree, right: Degree },
    #[error("degree in `{var}` must be at least 1, got {degree}")]
    DegreeTooLow { var: String, degree: Degree },
    #[error("input polynomial is identically zero")]
    ZeroInput,
    #[error("expected a polynomial in `{var}` alone with constant coefficients, found `{poly}`")]
    NotUnivariate { var: String, poly: String },
    #[error("no equation involves `{0}`")]
    AllDegreeZero(String),
    #[error("system has {equations} equations in {variables} variables; at least {} are needed", variables + 1)]
    Shape { equations: usize, variables: usize },
    #[error("empty system")]
    EmptySystem,
    #[error(transparent)]
    Eval(#[from] PolyError),
}

pub type Result<T, E = ReductionError> = std::result::Result<T, E>;

/// Which assumption a side condition encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionSource {
    /// Leading coefficient of the first pair member, divided out in pseudo-form.
    LeadingCoefficient,
    /// Leading coefficient `c_{n-1}` of the reduced polynomial.
    ReducedLeading,
    /// Leading coefficient of the lower-degree member when raising it.
    AbsorbLeading,
    /// Coefficient of the variable in a linear equation that is solved for it.
    LinearLeading,
    /// Denominator of an explicit linear solve (a determinant).
    Determinant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionStatus {
    /// Nonzero constant.
    Holds,
    /// Identically zero.
    Violated,
    /// Nonconstant; assumed nonzero.
    Assumed,
}

/// A polynomial asserted to be nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct SideCondition {
    pub polynomial: Polynomial,
    pub source: ConditionSource,
}

impl SideCondition {
    pub fn nonzero(polynomial: Polynomial, source: ConditionSource) -> Self {
        SideCondition { polynomial, source }
    }

    pub fn status(&self) -> ConditionStatus {
        match self.polynomial.constant_value() {
            Some(c) if num_traits::Zero::is_zero(&c) => ConditionStatus::Violated,
            Some(_) => ConditionStatus::Holds,
            None => ConditionStatus::Assumed,
        }
    }

    /// The value when the polynomial is constant.
    pub fn value(&self) -> Option<Scalar> {
        self.polynomial.constant_value()
    }

    /// Whether the condition holds at `point`.
    pub fn holds_at(&self, point: &Point) -> Result<bool> {
        Ok(!num_traits::Zero::is_zero(&self.polynomial.evaluate(point)?))
    }
}

impl Serialize for SideCondition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SideCondition", 4)?;
        st.serialize_field("polynomial", &self.polynomial)?;
        st.serialize_field("relation", "nonzero")?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("status", &self.status())?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    PairReduce,
    AbsorbMultiply,
    LinearSolve,
    Inconsistency,
    Residual,
    BranchSkipped,
}

/// One recorded step. For `pair-reduce` the outputs are `[c, d]`, for
/// `absorb-multiply` they are `[lower, d]`, for `linear-solve` they are
/// `[determinant]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionStep {
    pub kind: StepKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variable: Option<String>,
    pub inputs: Vec<Polynomial>,
    pub outputs: Vec<Polynomial>,
    pub conditions: Vec<SideCondition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ReductionStep {
    fn new(kind: StepKind, variable: &str, inputs: Vec<Polynomial>, outputs: Vec<Polynomial>) -> Self {
        ReductionStep {
            kind,
            variable: Some(variable.to_string()),
            inputs,
            outputs,
            conditions: Vec::new(),
            note: None,
        }
    }

    fn with_conditions(mut self, conditions: Vec<SideCondition>) -> Self {
        self.conditions = conditions;
        self
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Recomputes the outputs from the inputs for the step kinds that are
    /// pure functions of their inputs; `None` for the others.
    pub fn replay(&self) -> Option<Vec<Polynomial>> {
        let v = self.variable.as_deref()?;
        match (self.kind, self.inputs.as_slice()) {
            (StepKind::PairReduce, [f, g]) => {
                let r = reduce_pair(f, g, v).ok()?;
                Some(vec![r.c, r.d])
            }
            (StepKind::AbsorbMultiply, [hi, lo]) => {
                let (d, _) = absorb(hi, lo, v).ok()?;
                Some(vec![lo.clone(), d])
            }
            (StepKind::LinearSolve, [l, m]) => Some(vec![chain::linear_determinant(l, m, v)]),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Solved,
    Inconsistent,
    Residual,
    Degenerate,
}

/// A solution point, variables in table order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution(pub Vec<(String, Scalar)>);

impl Solution {
    pub fn get(&self, name: &str) -> Option<&Scalar> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn to_point(&self) -> Point {
        self.0.iter().cloned().collect()
    }

    pub fn values(&self) -> Vec<Scalar> {
        self.0.iter().map(|(_, v)| v.clone()).collect()
    }
}

impl Serialize for Solution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, &v.to_string())?;
        }
        m.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionOutcome {
    pub status: Status,
    pub variables: Vec<String>,
    pub solutions: Vec<Solution>,
    #[serde(rename = "residual")]
    pub residual_system: Vec<Polynomial>,
    pub conditions: Vec<SideCondition>,
    #[serde(rename = "steps")]
    pub trace: Vec<ReductionStep>,
}

impl ReductionOutcome {
    /// Last recorded `linear-solve` step's determinant, if any.
    pub fn last_determinant(&self) -> Option<&Polynomial> {
        self.trace.iter().rev().find(|s| s.kind == StepKind::LinearSolve).and_then(|s| s.outputs.first())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("outcome serializes")
    }
}

/// Steps and asserted conditions accumulated while reducing.
#[derive(Default, Debug)]
pub(crate) struct Trace {
    pub steps: Vec<ReductionStep>,
    pub conditions: Vec<SideCondition>,
}

impl Trace {
    fn push(&mut self, step: ReductionStep) {
        self.steps.push(step);
    }

    /// Records conditions that are relied upon. Violated ones are not
    /// asserted; nonconstant ones also produce a `branch-skipped` step.
    fn assert_all(&mut self, conditions: &[SideCondition], var: &str) {
        for c in conditions {
            match c.status() {
                ConditionStatus::Violated => continue,
                ConditionStatus::Holds => {}
                ConditionStatus::Assumed => {
                    self.push(
                        ReductionStep::new(StepKind::BranchSkipped, var, vec![c.polynomial.clone()], vec![])
                            .with_note("locus where this coefficient vanishes is not explored"),
                    );
                }
            }
            let dup = self
                .conditions
                .iter()
                .any(|x| x.source == c.source && x.polynomial.is_scalar_multiple_of(&c.polynomial));
            if !dup {
                self.conditions.push(c.clone());
            }
        }
    }

    fn extend(&mut self, other: Trace) {
        self.steps.extend(other.steps);
        for c in other.conditions {
            let dup = self
                .conditions
                .iter()
                .any(|x| x.source == c.source && x.polynomial.is_scalar_multiple_of(&c.polynomial));
            if !dup {
                self.conditions.push(c);
            }
        }
    }
}
