use super::*;
use crate::exec::Execution;
use crate::poly::{parse_polynomial_with, ratio, scalar, VarTable};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn xy() -> VarTable {
    VarTable::new(["x", "y"])
}

fn p(s: &str) -> Polynomial {
    parse_polynomial_with(s, &xy()).unwrap()
}

fn sys(eqs: &[&str]) -> Vec<Polynomial> {
    eqs.iter().map(|s| p(s)).collect()
}

fn x_var() -> Polynomial {
    Polynomial::var(&xy(), "x")
}

/// Euclid over the rationals on coefficient vectors; kept apart from the
/// reduction code.
fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let coeffs = |h: &Polynomial| -> Vec<Scalar> {
        h.coefficients_in("x").iter().map(|c| c.constant_value().unwrap()).collect()
    };
    let trim = |mut v: Vec<Scalar>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let (mut a, mut b) = (trim(coeffs(f)), trim(coeffs(g)));
    while !b.is_empty() {
        let mut r = a.clone();
        while r.len() >= b.len() {
            let q = r.last().unwrap() / b.last().unwrap();
            let shift = r.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                r[i + shift] = &r[i + shift] - &q * bc;
            }
            r.pop();
            r = trim(r);
        }
        a = std::mem::replace(&mut b, r);
    }
    let lead = a.last().cloned().unwrap_or_else(Scalar::one);
    let terms: Vec<Polynomial> = a.iter().map(|c| Polynomial::constant(xy(), c / &lead)).collect();
    Polynomial::from_coefficients(&terms, "x", &xy())
}

fn roots_of(f: &Polynomial) -> Vec<Scalar> {
    if f.is_zero() {
        return vec![];
    }
    rational_roots(f, "x").unwrap().0
}

#[test]
fn reduce_pair_quadratic() {
    let r = reduce_pair(&p("x^2-3*x+2"), &p("x^2-4*x+3"), "x").unwrap();
    assert_eq!(r.c, p("-x+1"));
    assert_eq!(r.d, p("-2*x+2"));
    assert_eq!(r.form, ReductionForm::Division);
    assert_eq!(r.conditions.len(), 1);
    assert_eq!(r.conditions[0].value(), Some(scalar(-1)));
    assert_eq!(gcd(&r.c, &r.d), p("x-1"));
}

#[test]
fn reduce_pair_identical_is_degenerate() {
    let f = p("x^2-3*x+2");
    let r = reduce_pair(&f, &f, "x").unwrap();
    assert!(r.is_degenerate());
    assert_eq!(r.conditions[0].status(), ConditionStatus::Violated);
}

#[test]
fn reduce_pair_constant_difference() {
    let r = reduce_pair(&p("x^2-1"), &p("x^2-4"), "x").unwrap();
    assert_eq!(r.c, p("-3"));
    assert!(r.lead_vanishes());
    assert!(gcd(&p("x^2-1"), &p("x^2-4")).is_constant());
}

#[test]
fn reduce_pair_errors() {
    assert!(matches!(reduce_pair(&p("x^2"), &p("x"), "x"), Err(ReductionError::DegreeMismatch { .. })));
    assert!(matches!(reduce_pair(&p("3"), &p("1"), "x"), Err(ReductionError::DegreeTooLow { .. })));
}

#[test]
fn pseudo_form_records_leading_coefficient() {
    let r = reduce_pair(&p("x*y-2"), &p("y+x-3"), "y").unwrap();
    assert_eq!(r.form, ReductionForm::Pseudo);
    assert_eq!(r.conditions[0].source, ConditionSource::LeadingCoefficient);
    assert_eq!(r.conditions[0].polynomial, p("x"));
}

#[test]
fn reduce_chain_quadratic_golden() {
    let out = reduce_chain(&p("x^2-3*x+2"), &p("x^2-4*x+3"), "x").unwrap();
    assert_eq!(out.status, Status::Solved);
    assert_eq!(out.solutions, vec![Solution(vec![("x".into(), scalar(1))])]);
    assert!(out.last_determinant().unwrap().is_zero());
    let c1 = out.conditions.iter().find(|c| c.source == ConditionSource::ReducedLeading).unwrap();
    assert_eq!(c1.value(), Some(scalar(-1)));
    assert_eq!(c1.status(), ConditionStatus::Holds);
}

#[test]
fn reduce_chain_inconsistent_and_residual() {
    let out = reduce_chain(&p("x^2-1"), &p("x^2-4"), "x").unwrap();
    assert_eq!(out.status, Status::Inconsistent);
    assert_eq!(out.trace.last().unwrap().kind, StepKind::Inconsistency);

    let f = p("x^2-3*x+2");
    let out = reduce_chain(&f, &f, "x").unwrap();
    assert_eq!(out.status, Status::Residual);
    assert_eq!(out.residual_system, vec![f]);
}

#[test]
fn reduce_chain_rejects_bad_input() {
    assert_eq!(reduce_chain(&p("0"), &p("x"), "x").unwrap_err(), ReductionError::ZeroInput);
    assert!(matches!(reduce_chain(&p("x*y"), &p("x"), "x"), Err(ReductionError::NotUnivariate { .. })));
}

#[test]
fn reduce_chain_unequal_degrees() {
    let out = reduce_chain(&p("x^3-6*x^2+11*x-6"), &p("x^2-5*x+6"), "x").unwrap();
    assert_eq!(out.status, Status::Residual);
    assert!(out.residual_system[0].is_scalar_multiple_of(&p("x^2-5*x+6")));
    let out = reduce_chain(&p("x^3-1"), &p("x-1"), "x").unwrap();
    assert_eq!(out.status, Status::Solved);
    assert_eq!(out.solutions[0].values(), vec![scalar(1)]);
}

#[test]
fn eliminate_three_curves() {
    let e = eliminate_variable(&sys(&["x^2+y^2-5", "x*y-2", "x+y-3"]), "y").unwrap();
    assert_eq!(e.pivot_index, 2);
    assert_eq!(e.reduced.len(), 2);
    // Sylvester resultants in y of each curve against x+y-3.
    assert!(e.reduced[0].is_scalar_multiple_of(&p("2*x^2-6*x+4")));
    assert!(e.reduced[1].is_scalar_multiple_of(&p("-x^2+3*x-2")));
    for r in &e.reduced {
        assert_eq!(roots_of(r), vec![scalar(1), scalar(2)]);
        assert!(!r.involves("y"));
    }
}

#[test]
fn eliminate_degenerate_and_errors() {
    let e = eliminate_variable(&sys(&["y-x", "y-x", "y-x"]), "y").unwrap();
    assert!(e.degenerate);
    assert!(e.reduced.iter().all(|r| r.is_zero()));
    assert_eq!(eliminate_variable(&sys(&["x", "x-1"]), "y").unwrap_err(), ReductionError::AllDegreeZero("y".into()));
    assert_eq!(eliminate_variable(&[], "y").unwrap_err(), ReductionError::EmptySystem);
}

#[test]
fn solve_three_curves() {
    let out = solve_overdetermined(&sys(&["x^2+y^2-5", "x*y-2", "x+y-3"])).unwrap();
    assert_eq!(out.status, Status::Solved);
    let pts: Vec<Vec<Scalar>> = out.solutions.iter().map(|s| s.values()).collect();
    assert_eq!(pts, vec![vec![scalar(1), scalar(2)], vec![scalar(2), scalar(1)]]);
}

#[test]
fn solve_small_cases() {
    let out = solve_overdetermined(&sys(&["x-1", "x-2"])).unwrap();
    assert_eq!(out.status, Status::Inconsistent);
    let out = solve_overdetermined(&sys(&["x^2-3*x+2", "x^2-4*x+3"])).unwrap();
    assert_eq!(out.status, Status::Solved);
    assert_eq!(out.solutions[0].values(), vec![scalar(1)]);
    let out = solve_overdetermined(&sys(&["2*x-1", "4*x^2-1"])).unwrap();
    assert_eq!(out.solutions[0].values(), vec![ratio(1, 2)]);
}

#[test]
fn solve_degenerate_and_residual() {
    let out = solve_overdetermined(&sys(&["y-x", "y-x", "y-x"])).unwrap();
    assert_eq!(out.status, Status::Degenerate);
    assert_eq!(out.residual_system, vec![p("y-x")]);

    let out = solve_overdetermined(&sys(&["y-1", "y-1", "x*y-x"])).unwrap();
    assert_eq!(out.status, Status::Residual);
    assert_eq!(out.residual_system, vec![p("y-1")]);
    assert!(out.solutions.is_empty());
}

#[test]
fn solve_shape_error() {
    assert_eq!(
        solve_overdetermined(&sys(&["x+y", "x-y"])).unwrap_err(),
        ReductionError::Shape { equations: 2, variables: 2 }
    );
}

#[test]
fn solve_many_matches_sequential() {
    let systems = vec![sys(&["x^2+y^2-5", "x*y-2", "x+y-3"]), sys(&["x-1", "x-2"]), sys(&["x^2-1", "x+1"])];
    let a = solve_many(&systems, Execution::Sequential);
    let b = solve_many(&systems, Execution::Parallel);
    for (a, b) in a.iter().zip(&b) {
        let (a, b) = (a.as_ref().unwrap(), b.as_ref().unwrap());
        assert_eq!(a.to_json(), b.to_json());
    }
}

#[test]
fn outcome_json_shape() {
    let out = solve_overdetermined(&sys(&["x^2-3*x+2", "x^2-4*x+3"])).unwrap();
    let j = out.to_json();
    assert_eq!(j["status"], "solved");
    assert_eq!(j["solutions"][0]["x"], "1");
    assert_eq!(j["steps"][0]["kind"], "pair-reduce");
    assert_eq!(j["conditions"][0]["relation"], "nonzero");
}

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn univariate(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_rational(), 2..=max_deg + 1).prop_map(|cs| {
        let cs: Vec<Polynomial> = cs.into_iter().map(|c| Polynomial::constant(xy(), c)).collect();
        Polynomial::from_coefficients(&cs, "x", &xy())
    })
}

/// Pair of the same degree sharing a random number of linear factors.
fn related_pair() -> impl Strategy<Value = (Polynomial, Polynomial)> {
    (prop::collection::vec(-3i64..=3, 0..=2), univariate(3), univariate(3)).prop_filter_map(
        "need equal positive degree",
        |(common, a, b)| {
            let shared = common
                .iter()
                .fold(Polynomial::constant(xy(), scalar(1)), |acc, r| acc.mul(&x_var().sub(&p(&r.to_string()))));
            let (f, g) = (shared.mul(&a), shared.mul(&b));
            let (df, dg) = (f.degree_in("x"), g.degree_in("x"));
            (df == dg && df >= crate::poly::Degree::Finite(1)).then_some((f, g))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_combination_identity((f, g) in related_pair()) {
        let r = reduce_pair(&f, &g, "x").unwrap();
        let n = r.degree;
        let a_n = f.coefficient_in("x", n);
        let b_n = g.coefficient_in("x", n);
        let c_lead = r.c.coefficient_in("x", n - 1);
        let x = x_var();
        prop_assert_eq!(a_n.mul(&r.c), a_n.mul(&g).sub(&b_n.mul(&f)));
        prop_assert_eq!(a_n.mul(&r.d), a_n.mul(&x.mul(&r.c)).sub(&c_lead.mul(&f)));
    }

    #[test]
    fn pair_reduction_keeps_common_roots((f, g) in related_pair()) {
        let r = reduce_pair(&f, &g, "x").unwrap();
        prop_assume!(!r.lead_vanishes());
        prop_assert_eq!(roots_of(&gcd(&f, &g)), roots_of(&gcd(&r.c, &r.d)));
    }

    #[test]
    fn chain_agrees_with_gcd((f, g) in related_pair()) {
        let out = reduce_chain(&f, &g, "x").unwrap();
        let h = gcd(&f, &g);
        match out.status {
            Status::Solved => {
                prop_assert_eq!(h.degree_in("x"), crate::poly::Degree::Finite(1));
                prop_assert_eq!(out.solutions[0].values(), roots_of(&h));
            }
            Status::Inconsistent => prop_assert!(h.is_constant()),
            Status::Residual => {
                prop_assert!(out.residual_system[0].is_scalar_multiple_of(&h));
            }
            Status::Degenerate => prop_assert!(false, "univariate chain is never degenerate"),
        }
    }

    #[test]
    fn trace_replays((f, g) in related_pair()) {
        let out = reduce_chain(&f, &g, "x").unwrap();
        for step in &out.trace {
            if let Some(outputs) = step.replay() {
                prop_assert_eq!(&outputs, &step.outputs);
            }
        }
    }

    #[test]
    fn solved_points_zero_every_equation(a in -3i64..=3, b in -3i64..=3, c in -2i64..=2) {
        let eqs = vec![
            p(&format!("(x-({a}))*(y-({b}))")),
            p(&format!("x+y-({})", a + b)),
            p(&format!("x^2-({c})*x-({})", a * a - c * a)),
        ];
        let out = solve_overdetermined(&eqs).unwrap();
        for s in &out.solutions {
            let at = s.to_point();
            for f in &eqs {
                prop_assert!(f.evaluate(&at).unwrap().is_zero());
            }
        }
        if out.status == Status::Solved {
            prop_assert!(out.solutions.iter().any(|s| s.values() == vec![scalar(a), scalar(b)]));
        }
    }
}
