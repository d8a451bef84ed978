use super::*;
use crate::exec::Execution;
use crate::poly::{parse_polynomial, ratio, scalar, Monomial, VarTable};
use proptest::prelude::*;
use std::collections::HashMap;

fn p(s: &str) -> Polynomial {
    parse_polynomial(s).unwrap()
}

fn ode(eqs: &[&str]) -> PdeSystem {
    PdeSystem::new(1, eqs.len() - 1, vec!["x".into()], eqs.iter().map(|s| p(s)).collect()).unwrap()
}

fn plain(p: usize, n: usize, orders: &[u32]) -> IndexCodec {
    IndexCodec::new(p, n, orders.to_vec(), Flavor::Plain).unwrap()
}

fn extended(p: usize, n: usize, orders: &[u32]) -> IndexCodec {
    IndexCodec::new(p, n, orders.to_vec(), Flavor::Extended).unwrap()
}

fn mi(j: &[u32]) -> MultiIndex {
    MultiIndex(j.to_vec())
}

#[test]
fn encoder_examples() {
    assert_eq!(plain(1, 1, &[3]).encode_alpha(2, &mi(&[1])).unwrap(), 4);
    assert_eq!(plain(2, 3, &[2, 2]).encode_alpha(1, &mi(&[0, 0])).unwrap(), 1);
    assert_eq!(extended(1, 1, &[1, 1]).encode_alpha(1, &mi(&[1, 1])).unwrap(), 7);
    assert_eq!(plain(1, 1, &[3]).encode_beta(1, &mi(&[2])).unwrap(), 3);
    assert_eq!(extended(2, 1, &[1, 1]).encode_beta(2, &mi(&[2, 1])).unwrap(), 12);
    assert_eq!(plain(3, 1, &[2, 2]).encode_beta(2, &mi(&[0, 0])).unwrap(), 2);
}

#[test]
fn encoder_range_errors() {
    let c = plain(1, 1, &[3]);
    assert!(c.encode_alpha(3, &mi(&[0])).is_err());
    assert!(c.encode_alpha(1, &mi(&[3])).is_err());
    assert!(c.encode_beta(1, &mi(&[4])).is_err());
    assert!(c.encode_beta(2, &mi(&[0])).is_err());
    assert!(c.decode_alpha(7).is_err());
    assert!(c.decode_beta(0).is_err());
}

#[test]
fn count_examples() {
    let c = Counts::new(1, 1, &[3]);
    assert_eq!((c.n_h, c.n_s, c.n_h_w, c.n_s_w), (6, 4, 8, 5));
    assert_eq!(Counts::active_bound(1, 1, &[1]), scalar(2));
}

#[test]
fn jet_names() {
    assert_eq!(JetVar::new(1, vec![2, 0]).name(), "S1[2,0]");
    assert_eq!(JetVar::parse("S12[0,3]", 2), Some(JetVar::new(12, vec![0, 3])));
    assert_eq!(JetVar::parse("S2", 3), Some(JetVar::new(2, vec![0, 0, 0])));
    assert_eq!(JetVar::parse("S0[1]", 1), None);
    assert_eq!(JetVar::parse("Sx", 1), None);
    assert_eq!(JetVar::parse("x", 1), None);
}

#[test]
fn system_validation() {
    let sys = ode(&["S1[1] - S1^2", "S1[1] - S1"]);
    assert_eq!(sys.equations[0], p("S1[1] - S1[0]^2"));
    assert!(PdeSystem::new(1, 1, vec!["x".into()], vec![p("S1[1]")]).is_err());
    assert!(PdeSystem::new(1, 0, vec!["x".into()], vec![p("S1[2]")]).is_err());
    assert!(PdeSystem::new(1, 0, vec!["x".into()], vec![p("S2[1]")]).is_err());
    assert!(PdeSystem::new(1, 0, vec!["x".into()], vec![p("z*S1[1]")]).is_err());
}

#[test]
fn total_derivative_examples() {
    let c = plain(1, 1, &[3]);
    let base = ["x".to_string()];
    assert_eq!(total_derivative(&p("S1[1] - S1[0]^2"), 0, &base, &c).unwrap(), p("S1[2] - 2*S1[0]*S1[1]"));
    assert_eq!(total_derivative(&p("x"), 0, &base, &c).unwrap(), p("1"));
    let c2 = plain(1, 1, &[2, 2]);
    let base2 = ["x".to_string(), "y".to_string()];
    assert_eq!(
        total_derivative(&p("S1[1,0]*S1[0,1]"), 0, &base2, &c2).unwrap(),
        p("S1[2,0]*S1[0,1] + S1[1,0]*S1[1,1]")
    );
    assert!(total_derivative(&p("S1[3]"), 0, &base, &c).is_err());
}

#[test]
fn prolong_examples() {
    let ps = prolong(&ode(&["S1[1] - S1[0]", "S1[1] - S1[0]^2"]), &[2], Flavor::Plain).unwrap();
    let eqs = ps.polynomials();
    assert_eq!(eqs, vec![p("S1[1]-S1[0]"), p("S1[1]-S1[0]^2"), p("S1[2]-S1[1]"), p("S1[2]-2*S1[0]*S1[1]")]);
    assert_eq!(ps.unknowns.iter().map(JetVar::name).collect::<Vec<_>>(), ["S1[0]", "S1[1]", "S1[2]"]);
    assert_eq!(ps.equations[2].k, 1);
    assert_eq!(ps.equations[2].i, mi(&[1]));
    assert_eq!(ps.find(2, &mi(&[1])), Some(&p("S1[2]-2*S1[0]*S1[1]")));

    let sys = ode(&["S1[1]-S1[0]", "S1[1]-S1[0]"]);
    let ps = prolong(&sys, &[3], Flavor::Plain).unwrap();
    assert_eq!((ps.equations.len(), ps.unknowns.len()), (6, 4));
    let pe = prolong(&sys, &[3], Flavor::Extended).unwrap();
    assert_eq!((pe.equations.len(), pe.unknowns.len()), (8, 5));
}

#[test]
fn prolong_both_restricts_extended() {
    let sys = PdeSystem::new(1, 1, vec!["x".into(), "y".into()], vec![p("S1[1,0] - S1"), p("S1[0,1]*S1 - x")]).unwrap();
    let (pl, ex) = prolong_both(&sys, &[2, 1], Execution::Sequential).unwrap();
    let direct = prolong(&sys, &[2, 1], Flavor::Plain).unwrap();
    assert_eq!(pl.polynomials(), direct.polynomials());
    for eq in &pl.equations {
        assert_eq!(ex.find(eq.k, &eq.i), Some(&eq.polynomial));
    }
}

#[test]
fn extraction_examples() {
    let sys = ode(&["S1[1] - S1^2", "S1[1] - S1"]);
    let ps = prolong(&sys, &[2], Flavor::Plain).unwrap();
    let ex = top_order_extraction(&sys, &ps, &mi(&[0])).unwrap();
    assert_eq!(ex.solved[0].jet.name(), "S1[1]");
    assert_eq!(ex.solved[0].numerator, p("S1[0]^2"));
    assert_eq!(ex.solved[0].denominator, p("1"));
    assert_eq!(ex.pivot_rows, vec![1]);
    assert_eq!(ex.residuals, vec![(2, p("S1[0]^2 - S1[0]"))]);

    let sys = ode(&["S1[1] - S1", "S1[1] - S1"]);
    let ps = prolong(&sys, &[1], Flavor::Plain).unwrap();
    let ex = top_order_extraction(&sys, &ps, &mi(&[0])).unwrap();
    assert_eq!(ex.solved[0].numerator, p("S1[0]"));
    assert!(ex.residuals[0].1.is_zero());

    let sys = PdeSystem::new(1, 1, vec!["x".into(), "y".into()], vec![p("S1[1,0] - S1"), p("S1[0,1] - S1^2")]).unwrap();
    let ps = prolong(&sys, &[1, 1], Flavor::Plain).unwrap();
    let ex = top_order_extraction(&sys, &ps, &mi(&[0, 0])).unwrap();
    assert_eq!(ex.determinant, p("1"));
    assert!(ex.residuals.is_empty());
    assert!(ex.conditions.is_empty());
}

#[test]
fn extraction_failures() {
    let sys = PdeSystem::new(2, 0, vec!["x".into(), "y".into()], vec![p("S1[1,0]"), p("S2[0,1]")]).unwrap();
    let ps = prolong(&sys, &[1, 1], Flavor::Plain).unwrap();
    assert!(matches!(top_order_extraction(&sys, &ps, &mi(&[0, 0])), Err(JetError::Shape(_))));

    let sys = ode(&["S1*S1[1] - 1", "S1[1]^2 - S1"]);
    let ps = prolong(&sys, &[1], Flavor::Plain).unwrap();
    assert!(matches!(top_order_extraction(&sys, &ps, &mi(&[0])), Err(JetError::NonLinear { k: 2, .. })));

    let sys = PdeSystem::new(
        1,
        1,
        vec!["x".into(), "y".into()],
        vec![p("S1[1,0] + S1[0,1]"), p("2*S1[1,0] + 2*S1[0,1] - x")],
    )
    .unwrap();
    let ps = prolong(&sys, &[1, 1], Flavor::Plain).unwrap();
    assert!(matches!(
        top_order_extraction(&sys, &ps, &mi(&[0, 0])),
        Err(JetError::RankDeficient { rank: 1, needed: 2, .. })
    ));
}

#[test]
fn extraction_with_polynomial_determinant() {
    let sys = ode(&["S1*S1[1] - 1", "S1[1] - S1"]);
    let ps = prolong(&sys, &[1], Flavor::Plain).unwrap();
    let ex = top_order_extraction(&sys, &ps, &mi(&[0])).unwrap();
    // Constant pivot preferred: S' = S from the second equation.
    assert_eq!(ex.pivot_rows, vec![2]);
    assert_eq!(ex.solved[0].numerator, p("S1[0]"));
    assert_eq!(ex.residuals, vec![(1, p("S1[0]^2 - 1"))]);
}

#[test]
fn minimal_order_examples() {
    let r = minimal_orders(1, 1, 1, 20).unwrap();
    assert_eq!((r.orders.clone(), r.n_h, r.n_s), (vec![1], 2, 2));
    assert_eq!(r.estimate, scalar(2));
    assert!(r.estimate_holds);
    let r = minimal_orders(2, 1, 1, 20).unwrap();
    assert_eq!((r.orders.clone(), r.n_h), (vec![2], 6));
    assert_eq!(r.estimate, scalar(6));
    let r = minimal_orders(1, 2, 1, 20).unwrap();
    assert_eq!((r.orders.clone(), r.n_h), (vec![1], 3));
    assert_eq!(r.estimate, ratio(3, 2));
    assert_eq!(r.distances, vec![ratio(1, 2)]);
    assert!(matches!(minimal_orders(3, 1, 3, 2), Err(JetError::Infeasible { .. })));
}

/// Substitutes polynomials for variables; unlisted variables are kept.
fn compose(f: &Polynomial, subst: &HashMap<String, Polynomial>) -> Polynomial {
    let names = f.vars().names().to_vec();
    let mut out = Polynomial::zero(VarTable::empty());
    for (mono, c) in f.terms() {
        let mut t = Polynomial::constant(VarTable::empty(), c.clone());
        for &(idx, e) in mono.pairs() {
            let name = &names[idx];
            let base = subst.get(name).cloned().unwrap_or_else(|| Polynomial::var(&VarTable::empty(), name));
            t = t.mul(&base.pow(e));
        }
        out = out.add(&t);
    }
    out
}

fn random_first_order(p: usize, m: usize, base: Vec<String>) -> impl Strategy<Value = Polynomial> {
    let mut names: Vec<String> = base;
    for v in 1..=p {
        names.push(JetVar::new(v, vec![0; m]).name());
        for s in 0..m {
            names.push(JetVar { v, j: MultiIndex::unit(m, s) }.name());
        }
    }
    let k = names.len();
    prop::collection::vec((-3i64..=3, prop::collection::vec((0..k, 1u32..=2), 0..=2)), 1..=4).prop_map(move |terms| {
        let table = VarTable::new(names.clone());
        let mut f = Polynomial::zero(table.clone());
        for (c, factors) in terms {
            let mut deg = 0;
            let pairs: Vec<(usize, u32)> = factors
                .into_iter()
                .filter(|&(_, e)| {
                    deg += e;
                    deg <= 3
                })
                .collect();
            let t = Polynomial::from_terms(table.clone(), [(Monomial::from_pairs(pairs), scalar(c))]);
            f = f.add(&t);
        }
        f
    })
}

fn random_system() -> impl Strategy<Value = (PdeSystem, Vec<u32>)> {
    (1usize..=2, 1usize..=2).prop_flat_map(|(p, m)| {
        let base: Vec<String> = ["x", "y"][..m].iter().map(|s| s.to_string()).collect();
        (prop::collection::vec(random_first_order(p, m, base.clone()), p + 1), prop::collection::vec(1u32..=2, m))
            .prop_map(move |(eqs, orders)| (PdeSystem::new(p, 1, base.clone(), eqs).unwrap(), orders))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn codec_is_bijective(p in 1usize..=3, n in 1usize..=3, orders in prop::collection::vec(1u32..=3, 1..=3), ext in any::<bool>()) {
        let flavor = if ext { Flavor::Extended } else { Flavor::Plain };
        let c = IndexCodec::new(p, n, orders, flavor).unwrap();
        for a in 1..=c.n_h() {
            let (k, i) = c.decode_alpha(a).unwrap();
            prop_assert_eq!(c.encode_alpha(k, &i).unwrap(), a);
        }
        for b in 1..=c.n_s() {
            let (v, j) = c.decode_beta(b).unwrap();
            prop_assert_eq!(c.encode_beta(v, &j).unwrap(), b);
        }
        let counts = c.counts();
        let (nh, ns) = if ext { (counts.n_h_w, counts.n_s_w) } else { (counts.n_h, counts.n_s) };
        prop_assert_eq!((c.n_h(), c.n_s()), (nh, ns));
    }

    #[test]
    fn total_derivative_commutes_with_prolongation((sys, orders) in random_system()) {
        let ps = prolong(&sys, &orders, Flavor::Extended).unwrap();
        prop_assert_eq!(ps.equations.len(), ps.counts().n_h_w);
        prop_assert_eq!(ps.unknowns.len(), ps.counts().n_s_w);
        for eq in &ps.equations {
            for s in 0..sys.m() {
                let next = eq.i.shifted(s);
                if let Some(target) = ps.find(eq.k, &next) {
                    let d = total_derivative(&eq.polynomial, s, &sys.base, &ps.codec).unwrap();
                    prop_assert_eq!(&d, target);
                }
            }
        }
        prop_assert!(support_violations(&ps).is_empty());
        prop_assert!(boundary_violations(&ps).is_empty());
    }

    #[test]
    fn parallel_generation_matches_sequential((sys, orders) in random_system()) {
        let a = prolong_with(&sys, &orders, Flavor::Plain, Execution::Sequential).unwrap();
        let b = prolong_with(&sys, &orders, Flavor::Plain, Execution::Parallel).unwrap();
        prop_assert_eq!(a.polynomials(), b.polynomials());
    }

    #[test]
    fn chain_rule_soundness(
        (sys, orders) in random_system(),
        coeffs in prop::collection::vec(prop::collection::vec(-2i64..=2, 9), 2),
    ) {
        let m = sys.m();
        let base = sys.base.clone();
        // S_v(x) of degree <= 4 built from a fixed list of monomials.
        let monos: Vec<Vec<u32>> = if m == 1 {
            (0..=4).map(|d| vec![d]).collect()
        } else {
            vec![vec![0,0], vec![1,0], vec![0,1], vec![2,0], vec![1,1], vec![0,2], vec![3,1], vec![2,2], vec![0,4]]
        };
        let table = VarTable::new(base.clone());
        let funcs: Vec<Polynomial> = coeffs.iter().map(|cs| {
            let terms = monos.iter().zip(cs).map(|(e, &c)| {
                (Monomial::from_pairs(e.iter().enumerate().map(|(l, &x)| (l, x))), scalar(c))
            });
            Polynomial::from_terms(table.clone(), terms)
        }).collect();
        let codec = IndexCodec::new(sys.p, sys.n, orders, Flavor::Extended).unwrap();
        let mut jets = HashMap::new();
        for b in 1..=codec.n_s() {
            let (v, j) = codec.decode_beta(b).unwrap();
            let mut f = funcs[v - 1].clone();
            for (l, &o) in j.0.iter().enumerate() {
                for _ in 0..o {
                    f = f.partial_derivative(&base[l]);
                }
            }
            jets.insert(JetVar { v, j }.name(), f);
        }
        for h in &sys.equations {
            for s in 0..m {
                let d = total_derivative(h, s, &base, &codec).unwrap();
                prop_assert_eq!(compose(&d, &jets), compose(h, &jets).partial_derivative(&base[s]));
            }
        }
    }
}
