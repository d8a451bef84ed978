use std::collections::HashMap;

use super::{Counts, Flavor, IndexCodec, JetError, JetVar, MultiIndex, PdeSystem, Result};
use crate::exec::{self, Execution};
use crate::poly::{Polynomial, VarTable};

/// Formal total derivative along `axis` (0-based): each jet `S_v[j]` is
/// replaced by `S_v[j + e_axis]` through the chain rule, plus the explicit
/// partial in the base variable.
pub fn total_derivative(f: &Polynomial, axis: usize, base: &[String], codec: &IndexCodec) -> Result<Polynomial> {
    if axis >= codec.m() {
        return Err(JetError::Range(format!("axis {} outside 1..={}", axis + 1, codec.m())));
    }
    let mut out = Polynomial::zero(f.vars().clone());
    for name in f.variables() {
        let d = f.partial_derivative(name);
        if base.iter().any(|b| b == name) {
            if base[axis] == name {
                out = out.add(&d);
            }
            continue;
        }
        let Some(jv) = JetVar::parse(name, codec.m()) else {
            continue;
        };
        let next = JetVar { v: jv.v, j: jv.j.shifted(axis) };
        if jv.v > codec.p || !codec.contains_beta(&next.j) {
            return Err(JetError::Range(format!("derivative of `{name}` leaves the unknown range")));
        }
        out = out.add(&d.mul_var_pow(&next.name(), 1));
    }
    Ok(out)
}

/// One prolonged equation `P_alpha`, the `i`-th derivative of `H_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProlongedEquation {
    pub alpha: usize,
    pub k: usize,
    pub i: MultiIndex,
    pub polynomial: Polynomial,
}

/// Equations in alpha order, unknowns in beta order. Every polynomial shares
/// one table: base variables, then every unknown in beta order.
#[derive(Clone, Debug)]
pub struct ProlongedSystem {
    pub codec: IndexCodec,
    pub base: Vec<String>,
    pub equations: Vec<ProlongedEquation>,
    pub unknowns: Vec<JetVar>,
    table: VarTable,
}

impl ProlongedSystem {
    pub fn p(&self) -> usize {
        self.codec.p
    }

    pub fn n(&self) -> usize {
        self.codec.n
    }

    pub fn m(&self) -> usize {
        self.codec.m()
    }

    pub fn flavor(&self) -> Flavor {
        self.codec.flavor
    }

    pub fn counts(&self) -> Counts {
        self.codec.counts()
    }

    pub fn table(&self) -> &VarTable {
        &self.table
    }

    pub fn equation(&self, alpha: usize) -> Option<&ProlongedEquation> {
        self.equations.get(alpha.checked_sub(1)?)
    }

    pub fn find(&self, k: usize, i: &MultiIndex) -> Option<&Polynomial> {
        let alpha = self.codec.encode_alpha(k, i).ok()?;
        Some(&self.equation(alpha)?.polynomial)
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.equations.iter().map(|e| e.polynomial.clone()).collect()
    }
}

type Cache = HashMap<MultiIndex, Vec<Polynomial>>;

fn all_indices(codec: &IndexCodec) -> Vec<MultiIndex> {
    let stride = codec.p + codec.n;
    (0..codec.n_h() / stride).map(|z| codec.decode_alpha(z * stride + 1).expect("in range").1).collect()
}

/// Generates every `P(k, i)` of the codec's range level by level in `|i|`.
/// Each entry differentiates its parent along the last nonzero axis, so the
/// path is x1 first, then x2, and so on.
fn generate(system: &PdeSystem, codec: &IndexCodec, exec: Execution) -> Result<Cache> {
    let indices = all_indices(codec);
    let top = indices.iter().map(MultiIndex::order).max().unwrap_or(0);
    let mut cache = Cache::new();
    cache.insert(MultiIndex::zero(codec.m()), system.equations.clone());
    for level in 1..=top {
        let items: Vec<&MultiIndex> = indices.iter().filter(|i| i.order() == level).collect();
        let done = exec::map(exec, &items, |i| -> Result<Vec<Polynomial>> {
            let axis = i.0.iter().rposition(|&c| c > 0).expect("positive order");
            let mut parent = (*i).clone();
            parent.0[axis] -= 1;
            cache[&parent].iter().map(|f| total_derivative(f, axis, &system.base, codec)).collect()
        });
        for (i, eqs) in items.into_iter().zip(done) {
            cache.insert(i.clone(), eqs?);
        }
    }
    Ok(cache)
}

fn assemble(system: &PdeSystem, codec: IndexCodec, cache: &Cache) -> ProlongedSystem {
    let unknowns: Vec<JetVar> = (1..=codec.n_s())
        .map(|b| {
            let (v, j) = codec.decode_beta(b).expect("in range");
            JetVar { v, j }
        })
        .collect();
    let table = VarTable::new(system.base.iter().cloned().chain(unknowns.iter().map(JetVar::name)));
    let equations = (1..=codec.n_h())
        .map(|alpha| {
            let (k, i) = codec.decode_alpha(alpha).expect("in range");
            let polynomial = cache[&i][k - 1].with_table(&table);
            ProlongedEquation { alpha, k, i, polynomial }
        })
        .collect();
    ProlongedSystem { codec, base: system.base.clone(), equations, unknowns, table }
}

fn codec_for(system: &PdeSystem, orders: &[u32], flavor: Flavor) -> Result<IndexCodec> {
    if orders.len() != system.m() {
        return Err(JetError::Shape(format!("{} orders given for {} independent variables", orders.len(), system.m())));
    }
    IndexCodec::new(system.p, system.n, orders.to_vec(), flavor)
}

/// Prolongs `system` to the given orders.
pub fn prolong(system: &PdeSystem, orders: &[u32], flavor: Flavor) -> Result<ProlongedSystem> {
    prolong_with(system, orders, flavor, Execution::default())
}

pub fn prolong_with(system: &PdeSystem, orders: &[u32], flavor: Flavor, exec: Execution) -> Result<ProlongedSystem> {
    let codec = codec_for(system, orders, flavor)?;
    let cache = generate(system, &codec, exec)?;
    Ok(assemble(system, codec, &cache))
}

/// Plain and extended prolongations; the plain equations are taken from the
/// extended generation.
pub fn prolong_both(system: &PdeSystem, orders: &[u32], exec: Execution) -> Result<(ProlongedSystem, ProlongedSystem)> {
    let extended = codec_for(system, orders, Flavor::Extended)?;
    let plain = codec_for(system, orders, Flavor::Plain)?;
    let cache = generate(system, &extended, exec)?;
    Ok((assemble(system, plain, &cache), assemble(system, extended, &cache)))
}

fn occurring_jets<'a>(ps: &'a ProlongedSystem, eq: &'a ProlongedEquation) -> impl Iterator<Item = JetVar> + 'a {
    eq.polynomial
        .variables()
        .into_iter()
        .filter(|n| !ps.base.iter().any(|b| b == n))
        .filter_map(|n| JetVar::parse(n, ps.m()))
}

/// Unknowns occurring in `P(k, i)` outside `j_l <= i_l + 1`, `|j| <= |i| + 1`.
pub fn support_violations(ps: &ProlongedSystem) -> Vec<(usize, JetVar)> {
    let mut out = Vec::new();
    for eq in &ps.equations {
        for jv in occurring_jets(ps, eq) {
            let inside = jv.j.0.iter().zip(&eq.i.0).all(|(j, i)| *j <= i + 1) && jv.j.order() <= eq.i.order() + 1;
            if !inside {
                out.push((eq.alpha, jv));
            }
        }
    }
    out
}

/// Equations with `i_s = N_s - 1` that depend on an unknown with
/// `j_s = N_s + 1`.
pub fn boundary_violations(ps: &ProlongedSystem) -> Vec<(usize, JetVar)> {
    let orders = &ps.codec.orders;
    let mut out = Vec::new();
    for eq in &ps.equations {
        for (s, &order) in orders.iter().enumerate() {
            if eq.i.0[s] + 1 != order {
                continue;
            }
            for jv in occurring_jets(ps, eq) {
                if jv.j.0[s] == order + 1 && !eq.polynomial.partial_derivative(&jv.name()).is_zero() {
                    out.push((eq.alpha, jv));
                }
            }
        }
    }
    out
}
