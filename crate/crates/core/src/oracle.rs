//! Reference algorithms used to cross-check the reduction pipeline: Euclid's
//! gcd, Sylvester resultants and brute-force rational root search.

use num_integer::Integer;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exec::{self, Execution};
use crate::linalg::determinant;
use crate::poly::{Point, Polynomial, Scalar, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("expected a polynomial in `{var}` alone, found `{poly}`")]
    NotUnivariate { var: String, poly: String },
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("resultant in `{0}` needs at least one input of positive degree")]
    UndefinedResultant(String),
    #[error("search bound must be at least 1")]
    ZeroBound,
}

pub type Result<T, E = OracleError> = std::result::Result<T, E>;

fn dense(f: &Polynomial, var: &str) -> Result<Vec<Scalar>> {
    if f.variables().iter().any(|&v| v != var) {
        return Err(OracleError::NotUnivariate { var: var.into(), poly: f.to_string() });
    }
    Ok(f.coefficients_in(var).iter().map(|c| c.constant_value().unwrap_or_default()).collect())
}

fn trim(mut v: Vec<Scalar>) -> Vec<Scalar> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn remainder(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let q = r.last().expect("nonempty") / lead;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

/// Monic gcd of two univariate polynomials by the Euclidean algorithm.
pub fn gcd_univariate(f: &Polynomial, g: &Polynomial, var: &str) -> Result<Polynomial> {
    let (mut a, mut b) = (trim(dense(f, var)?), trim(dense(g, var)?));
    if a.is_empty() && b.is_empty() {
        return Err(OracleError::BothZero);
    }
    while !b.is_empty() {
        let r = remainder(&a, &b);
        a = std::mem::replace(&mut b, r);
    }
    let lead = a.last().expect("nonzero").clone();
    let table = f.vars().union(g.vars());
    let coeffs: Vec<Polynomial> = a.iter().map(|c| Polynomial::constant(table.clone(), c / &lead)).collect();
    Ok(Polynomial::from_coefficients(&coeffs, var, &table))
}

/// Determinant of the Sylvester matrix of `f` and `g` in `var`, with the
/// `deg g` rows of `f` coefficients first.
pub fn sylvester_resultant(f: &Polynomial, g: &Polynomial, var: &str) -> Result<Polynomial> {
    let table = f.vars().union(g.vars());
    let (Some(m), Some(n)) = (f.degree_in(var).finite(), g.degree_in(var).finite()) else {
        return Ok(Polynomial::zero(table));
    };
    if m == 0 && n == 0 {
        return Err(OracleError::UndefinedResultant(var.into()));
    }
    let (m, n) = (m as usize, n as usize);
    let size = m + n;
    let zero = Polynomial::zero(table.clone());
    let desc = |h: &Polynomial| -> Vec<Polynomial> {
        let mut c = h.coefficients_in(var);
        c.reverse();
        c
    };
    let (fc, gc) = (desc(f), desc(g));
    let mut rows = Vec::with_capacity(size);
    for (coeffs, count) in [(&fc, n), (&gc, m)] {
        for shift in 0..count {
            let mut row = vec![zero.clone(); size];
            for (i, c) in coeffs.iter().enumerate() {
                row[shift + i] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(determinant(rows).expect("positive size"))
}

/// All reduced fractions `p/q` with `|p| <= bound`, `1 <= q <= bound`, sorted.
pub fn rational_grid(bound: u32) -> Vec<Scalar> {
    let b = bound as i64;
    let mut out: Vec<Scalar> = Vec::new();
    for q in 1..=b {
        for p in -b..=b {
            if p.gcd(&q) == 1 {
                out.push(Scalar::new(p.into(), q.into()));
            }
        }
    }
    out.sort();
    out
}

/// Common zeros of a system on a rational grid.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub variables: Vec<String>,
    pub points: Vec<Vec<Scalar>>,
}

impl RootSet {
    pub fn contains(&self, point: &[Scalar]) -> bool {
        self.points.iter().any(|p| p == point)
    }
}

impl Serialize for RootSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pts: Vec<Vec<String>> = self.points.iter().map(|p| p.iter().map(|x| x.to_string()).collect()).collect();
        let mut st = s.serialize_struct("RootSet", 2)?;
        st.serialize_field("variables", &self.variables)?;
        st.serialize_field("points", &pts)?;
        st.end()
    }
}

fn search(
    system: &[Polynomial],
    vars: &[String],
    grid: &[Scalar],
    prefix: &mut Vec<Scalar>,
    out: &mut Vec<Vec<Scalar>>,
) {
    let depth = prefix.len();
    if depth == vars.len() {
        out.push(prefix.clone());
        return;
    }
    for x in grid {
        let at = Point::from([(vars[depth].clone(), x.clone())]);
        let reduced: Vec<Polynomial> = system.iter().map(|f| f.substitute(&at)).collect();
        if reduced.iter().any(|f| f.constant_value().is_some_and(|c| !c.is_zero())) {
            continue;
        }
        prefix.push(x.clone());
        search(&reduced, vars, grid, prefix, out);
        prefix.pop();
    }
}

/// Exhaustive search for common rational zeros with coordinates in
/// [`rational_grid`]. Partial assignments that already make some equation a
/// nonzero constant are pruned. The first coordinate is split across workers;
/// output is sorted.
pub fn rational_root_search(system: &[Polynomial], bound: u32, exec: Execution) -> Result<RootSet> {
    if bound == 0 {
        return Err(OracleError::ZeroBound);
    }
    let table = system.iter().fold(VarTable::empty(), |t, f| t.union(f.vars()));
    let variables: Vec<String> =
        table.names().iter().filter(|n| system.iter().any(|f| f.involves(n))).cloned().collect();
    if variables.is_empty() {
        let ok = system.iter().all(Polynomial::is_zero);
        return Ok(RootSet { variables, points: if ok { vec![vec![]] } else { vec![] } });
    }
    let grid = rational_grid(bound);
    let mut points = exec::flat_map(exec, &grid, |x| {
        let mut out = Vec::new();
        let at = Point::from([(variables[0].clone(), x.clone())]);
        let reduced: Vec<Polynomial> = system.iter().map(|f| f.substitute(&at)).collect();
        if reduced.iter().all(|f| f.constant_value().is_none_or(|c| c.is_zero())) {
            search(&reduced, &variables, &grid, &mut vec![x.clone()], &mut out);
        }
        out
    });
    points.retain(|p| {
        let at: Point = variables.iter().cloned().zip(p.iter().cloned()).collect();
        system.iter().all(|f| f.evaluate(&at).is_ok_and(|v| v.is_zero()))
    });
    points.sort();
    Ok(RootSet { variables, points })
}

/// Roots of a univariate polynomial found by [`rational_root_search`].
pub fn univariate_roots(f: &Polynomial, var: &str, bound: u32) -> Result<Vec<Scalar>> {
    dense(f, var)?;
    let rs = rational_root_search(std::slice::from_ref(f), bound, Execution::Sequential)?;
    Ok(rs.points.into_iter().filter_map(|p| p.into_iter().next()).collect())
}
