use num_traits::Zero;

use super::{ConditionSource, ReductionError, Result, SideCondition};
use crate::poly::{Degree, Polynomial};

/// How leading coefficients were handled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionForm {
    /// Leading coefficient was a nonzero constant and was divided out.
    Division,
    /// Leading coefficient was a polynomial; both sides were cross-multiplied.
    Pseudo,
}

/// Result of one pair reduction `{f, g} -> {c, d}`.
#[derive(Clone, Debug)]
pub struct PairReduction {
    pub c: Polynomial,
    pub d: Polynomial,
    /// `a_n != 0` (pseudo-form only) followed by `c_{n-1} != 0`.
    pub conditions: Vec<SideCondition>,
    pub form: ReductionForm,
    /// Common degree `n` of the inputs.
    pub degree: u32,
}

impl PairReduction {
    /// Coefficient `c_{n-1}` of `c`.
    pub fn c_lead(&self) -> &Polynomial {
        &self.conditions.last().expect("c_{n-1} condition is always recorded").polynomial
    }

    /// `c_{n-1}` vanishes identically, so `{c, d}` need not be equivalent to
    /// the input pair.
    pub fn lead_vanishes(&self) -> bool {
        self.c_lead().is_zero()
    }

    /// Both outputs vanish: the inputs were proportional.
    pub fn is_degenerate(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }
}

/// Lowers an equal-degree pair by one degree in `var`.
///
/// With `f = sum a_i v^i`, `g = sum b_i v^i` of degree `n`:
/// `c = g - (b_n / a_n) f` and `d = v c - (c_{n-1} / a_n) f`, both of degree at
/// most `n - 1`. If `a_n` is not a constant the divisions are cleared:
/// `c = a_n g - b_n f`, `d = a_n v c - c_{n-1} f`.
pub fn reduce_pair(f: &Polynomial, g: &Polynomial, var: &str) -> Result<PairReduction> {
    let (df, dg) = (f.degree_in(var), g.degree_in(var));
    if df != dg {
        return Err(ReductionError::DegreeMismatch { var: var.into(), left: df, right: dg });
    }
    let n = match df {
        Degree::Finite(n) if n >= 1 => n,
        d => return Err(ReductionError::DegreeTooLow { var: var.into(), degree: d }),
    };
    let a_n = f.coefficient_in(var, n);
    let b_n = g.coefficient_in(var, n);
    let mut conditions = Vec::new();
    let (c, d, form) = match a_n.constant_value() {
        Some(an) => {
            debug_assert!(!an.is_zero());
            let inv = an.recip();
            let c = g.sub(&f.mul(&b_n.scale(&inv)));
            let c_lead = c.coefficient_in(var, n - 1);
            let d = c.mul_var_pow(var, 1).sub(&f.mul(&c_lead.scale(&inv)));
            conditions.push(SideCondition::nonzero(c_lead, ConditionSource::ReducedLeading));
            (c, d, ReductionForm::Division)
        }
        None => {
            let c = a_n.mul(g).sub(&b_n.mul(f));
            let c_lead = c.coefficient_in(var, n - 1);
            let d = a_n.mul(&c.mul_var_pow(var, 1)).sub(&c_lead.mul(f));
            conditions.push(SideCondition::nonzero(a_n, ConditionSource::LeadingCoefficient));
            conditions.push(SideCondition::nonzero(c_lead, ConditionSource::ReducedLeading));
            (c, d, ReductionForm::Pseudo)
        }
    };
    Ok(PairReduction { c, d, conditions, form, degree: n })
}

/// Raises the lower member of an unequal pair and rewrites the top power
/// through the higher one.
///
/// With `deg hi = n > deg lo = k >= 1`, returns
/// `d = v^(n-k) lo - (l_k / a_n) hi` (or `a_n v^(n-k) lo - l_k hi` when `a_n` is
/// not constant), of degree at most `n - 1`. `{lo, d}` has the same common
/// zeros as `{hi, lo}` wherever `l_k != 0`, which is returned as the condition.
pub fn absorb(hi: &Polynomial, lo: &Polynomial, var: &str) -> Result<(Polynomial, SideCondition)> {
    let (dh, dl) = (hi.degree_in(var), lo.degree_in(var));
    let (n, k) = match (dh, dl) {
        (Degree::Finite(n), Degree::Finite(k)) if n > k && k >= 1 => (n, k),
        _ => return Err(ReductionError::DegreeMismatch { var: var.into(), left: dh, right: dl }),
    };
    let a_n = hi.coefficient_in(var, n);
    let l_k = lo.coefficient_in(var, k);
    let raised = lo.mul_var_pow(var, n - k);
    let d = match a_n.constant_value() {
        Some(an) => raised.sub(&hi.mul(&l_k.scale(&an.recip()))),
        None => a_n.mul(&raised).sub(&l_k.mul(hi)),
    };
    Ok((d, SideCondition::nonzero(l_k, ConditionSource::AbsorbLeading)))
}
