use super::{JetError, JetVar, MultiIndex, PdeSystem, ProlongedSystem, Result};
use crate::linalg::{determinant, echelon};
use crate::poly::{Point, Polynomial, Scalar};
use crate::reduction::{ConditionSource, SideCondition};

/// A top-order jet as `numerator / denominator`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolvedJet {
    pub jet: JetVar,
    pub numerator: Polynomial,
    pub denominator: Polynomial,
}

/// Result of solving the equations `P(k, i)`, `k = 1..p+n`, for the jets
/// `S_v[i + e_s]`.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub i: MultiIndex,
    /// The `m p` top-order jets in beta order.
    pub top: Vec<JetVar>,
    /// Coefficients of the top jets, one row per `k`.
    pub matrix: Vec<Vec<Polynomial>>,
    /// Each equation with the top jets set to zero.
    pub remainders: Vec<Polynomial>,
    /// Equations (1-based `k`) used to solve for the top jets.
    pub pivot_rows: Vec<usize>,
    pub determinant: Polynomial,
    pub solved: Vec<SolvedJet>,
    /// The other equations after substituting the solution, multiplied by
    /// the determinant when it is not constant.
    pub residuals: Vec<(usize, Polynomial)>,
    pub conditions: Vec<SideCondition>,
}

/// Solves the `p + n` equations at fixed `i` for the `m p` jets of order
/// `|i| + 1`, which occur linearly, by fraction-free elimination and
/// Cramer's rule. Needs `n >= (m - 1) p`.
pub fn top_order_extraction(system: &PdeSystem, prolonged: &ProlongedSystem, i: &MultiIndex) -> Result<Extraction> {
    let (p, n, m) = (system.p, system.n, system.m());
    if n < (m - 1) * p {
        return Err(JetError::Shape(format!("need n >= (m - 1) p, got n = {n}, m = {m}, p = {p}")));
    }
    if prolonged.p() != p || prolonged.n() != n || prolonged.m() != m {
        return Err(JetError::Shape("prolonged system does not match the PDE system".into()));
    }
    let codec = &prolonged.codec;
    let mut top: Vec<(usize, JetVar)> = Vec::new();
    for v in 1..=p {
        for s in 0..m {
            let jet = JetVar { v, j: i.shifted(s) };
            top.push((codec.encode_beta(v, &jet.j)?, jet));
        }
    }
    top.sort();
    let top: Vec<JetVar> = top.into_iter().map(|(_, j)| j).collect();
    let names: Vec<String> = top.iter().map(JetVar::name).collect();

    let zeros: Point = names.iter().map(|n| (n.clone(), Scalar::from_integer(0.into()))).collect();
    let mut matrix = Vec::with_capacity(p + n);
    let mut remainders = Vec::with_capacity(p + n);
    for k in 1..=p + n {
        let eq = prolonged
            .find(k, i)
            .ok_or_else(|| JetError::Range(format!("no prolonged equation for k = {k}, i = {i}")))?;
        let row: Vec<Polynomial> = names.iter().map(|t| eq.partial_derivative(t)).collect();
        for a in &row {
            if let Some(t) = names.iter().find(|t| a.involves(t)) {
                return Err(JetError::NonLinear { k, jet: t.clone() });
            }
        }
        matrix.push(row);
        remainders.push(eq.substitute(&zeros));
    }

    let ech = echelon(matrix.clone());
    let needed = m * p;
    if ech.rank < needed {
        return Err(JetError::RankDeficient { rank: ech.rank, needed, matrix });
    }
    let mut rows = ech.pivot_rows.clone();
    rows.sort_unstable();
    let square: Vec<Vec<Polynomial>> = rows.iter().map(|&r| matrix[r].clone()).collect();
    let det = determinant(square.clone()).expect("nonempty");
    let numerators: Vec<Polynomial> = (0..needed)
        .map(|c| {
            let mut mc = square.clone();
            for (row, &r) in mc.iter_mut().zip(&rows) {
                row[c] = remainders[r].neg();
            }
            determinant(mc).expect("nonempty")
        })
        .collect();
    let mut residuals: Vec<(usize, Polynomial)> = (0..p + n)
        .filter(|q| !rows.contains(q))
        .map(|q| {
            let sum =
                matrix[q].iter().zip(&numerators).fold(remainders[q].mul(&det), |acc, (a, dc)| acc.add(&a.mul(dc)));
            (q + 1, sum)
        })
        .collect();

    let mut conditions = Vec::new();
    let (numerators, denominator) = match det.constant_value() {
        Some(d) => {
            let inv = d.recip();
            for (_, r) in residuals.iter_mut() {
                *r = r.scale(&inv);
            }
            let one = Polynomial::constant(det.vars().clone(), Scalar::from_integer(1.into()));
            (numerators.iter().map(|x| x.scale(&inv)).collect(), one)
        }
        None => {
            conditions.push(SideCondition::nonzero(det.clone(), ConditionSource::Determinant));
            (numerators, det.clone())
        }
    };
    let solved = top
        .iter()
        .zip(numerators)
        .map(|(jet, numerator)| SolvedJet { jet: jet.clone(), numerator, denominator: denominator.clone() })
        .collect();
    Ok(Extraction {
        i: i.clone(),
        top,
        matrix,
        remainders,
        pivot_rows: rows.iter().map(|r| r + 1).collect(),
        determinant: det,
        solved,
        residuals,
        conditions,
    })
}
