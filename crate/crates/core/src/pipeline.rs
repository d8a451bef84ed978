//! Solving a prolonged PDE system as a polynomial system in its jets.

use serde::Serialize;

use crate::jet::ProlongedSystem;
use crate::rank::{certify, RankReport};
use crate::reduction::{solve_overdetermined, ReductionOutcome};
use crate::Error;

/// Rank report for one solution point, or why none was produced.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Certificate {
    Report(RankReport),
    Failed { error: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct JetSolveOutcome {
    #[serde(flatten)]
    pub outcome: ReductionOutcome,
    /// One entry per solution, in the same order.
    pub certificates: Vec<Certificate>,
}

/// Treats every jet as an algebraic unknown, solves, and certifies each
/// solution point against the same prolonged system.
pub fn solve_prolonged(ps: &ProlongedSystem) -> Result<JetSolveOutcome, Error> {
    let outcome = solve_overdetermined(&ps.polynomials())?;
    let certificates = outcome
        .solutions
        .iter()
        .map(|s| match certify(ps, &s.to_point()) {
            Ok(r) => Certificate::Report(r),
            Err(e) => Certificate::Failed { error: e.to_string() },
        })
        .collect();
    Ok(JetSolveOutcome { outcome, certificates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{prolong, Flavor, PdeSystem};
    use crate::poly::{parse_polynomial, scalar};
    use crate::reduction::Status;

    #[test]
    fn ode_pair_solves_to_zero_jet() {
        let eqs = ["S1[1] - S1^2", "S1[1] - S1"].map(|s| parse_polynomial(s).unwrap()).to_vec();
        let sys = PdeSystem::new(1, 1, vec!["x".into()], eqs).unwrap();
        let ps = prolong(&sys, &[2], Flavor::Plain).unwrap();
        let out = solve_prolonged(&ps).unwrap();
        assert_eq!(out.outcome.status, Status::Solved);
        assert_eq!(out.outcome.solutions.len(), 1);
        assert!(out.outcome.solutions[0].values().iter().all(|v| *v == scalar(0)));
        let Certificate::Report(r) = &out.certificates[0] else { panic!("no report") };
        assert!(r.certified);
        assert_eq!((r.rank, r.n_s_real), (3, 3));
    }
}
