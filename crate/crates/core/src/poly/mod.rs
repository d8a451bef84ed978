//! Exact sparse multivariate polynomials over the rationals.
//!
//! Every polynomial carries a [`VarTable`], an ordered list of variable names.
//! Terms are kept in a map from [`Monomial`] to a nonzero [`Scalar`], so the
//! zero polynomial is the empty map and the representation is canonical for a
//! given table. Binary operations on polynomials with different tables merge
//! the tables by name; equality compares terms by variable name and therefore
//! ignores table differences.

mod monomial;
mod parse;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use monomial::Monomial;
pub use parse::{parse_polynomial, parse_polynomial_with, parse_scalar, ParseError};

/// Exact rational coefficient, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Assignment of values to variables, keyed by name.
pub type Point = HashMap<String, Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Ordered, shared list of variable names.
#[derive(Clone, Debug, Default)]
pub struct VarTable(Arc<Vec<String>>);

impl VarTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        let mut out: Vec<String> = Vec::new();
        for n in names {
            let n = n.into();
            if !out.contains(&n) {
                out.push(n);
            }
        }
        VarTable(Arc::new(out))
    }

    pub fn empty() -> Self {
        VarTable::default()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    fn same(&self, other: &VarTable) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    /// This table followed by the names of `other` not already present.
    pub fn union(&self, other: &VarTable) -> VarTable {
        if self.same(other) {
            return self.clone();
        }
        let mut names = self.0.as_ref().clone();
        for n in other.0.iter() {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        VarTable(Arc::new(names))
    }

    pub fn with(&self, name: &str) -> VarTable {
        if self.index_of(name).is_some() {
            return self.clone();
        }
        let mut names = self.0.as_ref().clone();
        names.push(name.to_string());
        VarTable(Arc::new(names))
    }
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

/// Degree of a polynomial in one variable; the zero polynomial has degree
/// [`Degree::NegInfinity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    vars: VarTable,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(vars: VarTable) -> Self {
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: VarTable, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { vars, terms }
    }

    /// The polynomial consisting of the single variable `name`, which is added
    /// to the table if missing.
    pub fn var(vars: &VarTable, name: &str) -> Self {
        let vars = vars.with(name);
        let idx = vars.index_of(name).expect("just inserted");
        Polynomial::from_terms(vars, [(Monomial::var(idx), Scalar::one())])
    }

    pub fn from_terms(vars: VarTable, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            accumulate(&mut map, m, c);
        }
        Polynomial { vars, terms: map }
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_zero() {
            Some(Scalar::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> Degree {
        self.terms.keys().map(|m| Degree::Finite(m.total_degree())).max().unwrap_or(Degree::NegInfinity)
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Names of variables that actually occur, in table order.
    pub fn variables(&self) -> Vec<&str> {
        let mut used = vec![false; self.vars.len()];
        for m in self.terms.keys() {
            for &(i, _) in m.pairs() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| self.vars.name(i)).collect()
    }

    pub fn involves(&self, name: &str) -> bool {
        match self.vars.index_of(name) {
            Some(idx) => self.terms.keys().any(|m| m.exponent(idx) > 0),
            None => false,
        }
    }

    /// Re-expresses the polynomial over `table`, which must contain every
    /// occurring variable.
    pub fn with_table(&self, table: &VarTable) -> Polynomial {
        if self.vars.same(table) {
            return self.clone();
        }
        let map: Vec<usize> = self.vars.names().iter().map(|n| table.index_of(n).unwrap_or(usize::MAX)).collect();
        let terms = self.terms.iter().map(|(m, c)| {
            debug_assert!(m.pairs().iter().all(|&(i, _)| map[i] != usize::MAX));
            (m.remap(&map), c.clone())
        });
        Polynomial::from_terms(table.clone(), terms)
    }

    /// Renames every table variable through `f`. Names that collide after
    /// renaming become one variable.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Polynomial {
        let renamed: Vec<String> = self.vars.names().iter().map(|n| f(n)).collect();
        let mut unique: Vec<String> = Vec::with_capacity(renamed.len());
        for n in &renamed {
            if !unique.contains(n) {
                unique.push(n.clone());
            }
        }
        let map: Vec<usize> = renamed.iter().map(|n| unique.iter().position(|u| u == n).unwrap()).collect();
        let table = VarTable::new(unique);
        Polynomial::from_terms(table, self.terms.iter().map(|(m, c)| (m.remap(&map), c.clone())))
    }

    /// Both operands expressed over a common table.
    fn aligned<'a>(&'a self, other: &'a Polynomial) -> (VarTable, Aligned<'a>) {
        if self.vars.same(&other.vars) {
            (self.vars.clone(), Aligned::Borrowed(self, other))
        } else {
            let table = self.vars.union(&other.vars);
            let a = self.with_table(&table);
            let b = other.with_table(&table);
            (table, Aligned::Owned(a, b))
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let (table, al) = self.aligned(other);
        let (a, b) = al.pair();
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Polynomial { vars: table, terms }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let (table, al) = self.aligned(other);
        let (a, b) = al.pair();
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                accumulate(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Polynomial { vars: table, terms }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    /// Multiplies by `name^power`.
    pub fn mul_var_pow(&self, name: &str, power: u32) -> Polynomial {
        if power == 0 {
            return self.clone();
        }
        let vars = self.vars.with(name);
        let idx = vars.index_of(name).expect("present");
        self.with_table(&vars).mul_monomial(&Monomial::from_pairs([(idx, power)]))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.vars.clone(), Scalar::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact value at `point`. Only variables that occur need a value.
    pub fn evaluate(&self, point: &Point) -> Result<Scalar, PolyError> {
        let values = self.lookup(point, true)?;
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(i, e) in m.pairs() {
                t *= pow_scalar(values[i].as_ref().expect("checked"), e);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes the assigned variables, leaving the others symbolic.
    pub fn substitute(&self, point: &Point) -> Polynomial {
        let values = self.lookup(point, false).expect("partial lookup never fails");
        let terms = self.terms.iter().map(|(m, c)| {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &(i, e) in m.pairs() {
                match &values[i] {
                    Some(v) => coeff *= pow_scalar(v, e),
                    None => rest.push((i, e)),
                }
            }
            (Monomial::from_pairs(rest), coeff)
        });
        Polynomial::from_terms(self.vars.clone(), terms)
    }

    fn lookup(&self, point: &Point, strict: bool) -> Result<Vec<Option<Scalar>>, PolyError> {
        let mut values: Vec<Option<Scalar>> = vec![None; self.vars.len()];
        for m in self.terms.keys() {
            for &(i, _) in m.pairs() {
                if values[i].is_some() {
                    continue;
                }
                let name = self.vars.name(i);
                match point.get(name) {
                    Some(v) => values[i] = Some(v.clone()),
                    None if strict => return Err(PolyError::MissingAssignment(name.to_string())),
                    None => {}
                }
            }
        }
        Ok(values)
    }

    pub fn partial_derivative(&self, name: &str) -> Polynomial {
        let Some(idx) = self.vars.index_of(name) else {
            return Polynomial::zero(self.vars.clone());
        };
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| m.derivative(idx).map(|(e, dm)| (dm, c * Scalar::from_integer(BigInt::from(e)))));
        Polynomial::from_terms(self.vars.clone(), terms)
    }

    pub fn degree_in(&self, name: &str) -> Degree {
        if self.is_zero() {
            return Degree::NegInfinity;
        }
        let Some(idx) = self.vars.index_of(name) else {
            return Degree::Finite(0);
        };
        Degree::Finite(self.terms.keys().map(|m| m.exponent(idx)).max().unwrap_or(0))
    }

    /// `[A_0, ..., A_d]` with `self = sum A_i * name^i`; empty for zero.
    pub fn coefficients_in(&self, name: &str) -> Vec<Polynomial> {
        let Degree::Finite(d) = self.degree_in(name) else {
            return Vec::new();
        };
        let mut out = vec![Polynomial::zero(self.vars.clone()); d as usize + 1];
        let idx = self.vars.index_of(name);
        for (m, c) in &self.terms {
            let (rest, e) = match idx {
                Some(i) => m.without(i),
                None => (m.clone(), 0),
            };
            accumulate(&mut out[e as usize].terms, rest, c.clone());
        }
        out
    }

    /// Coefficient of `name^power`.
    pub fn coefficient_in(&self, name: &str, power: u32) -> Polynomial {
        self.coefficients_in(name)
            .into_iter()
            .nth(power as usize)
            .unwrap_or_else(|| Polynomial::zero(self.vars.clone()))
    }

    /// Leading coefficient as a polynomial in `name`; zero for zero.
    pub fn leading_coefficient_in(&self, name: &str) -> Polynomial {
        self.coefficients_in(name).pop().unwrap_or_else(|| Polynomial::zero(self.vars.clone()))
    }

    /// Inverse of [`Polynomial::coefficients_in`].
    pub fn from_coefficients(coeffs: &[Polynomial], name: &str, vars: &VarTable) -> Polynomial {
        let mut acc = Polynomial::zero(vars.clone());
        for (i, a) in coeffs.iter().enumerate() {
            acc = acc.add(&a.mul_var_pow(name, i as u32));
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. Multivariate division by leading terms.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (table, al) = self.aligned(divisor);
        let (num, den) = al.pair();
        let (lm, lc) = den.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = num.clone();
        let mut quot = Polynomial::zero(table);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            let t = Polynomial::from_terms(rem.vars.clone(), [(qm, qc)]);
            rem = rem.sub(&t.mul(den));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// True when `self == c * other` for some nonzero constant `c`.
    pub fn is_scalar_multiple_of(&self, other: &Polynomial) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let (_, al) = self.aligned(other);
        let (a, b) = al.pair();
        if a.terms.len() != b.terms.len() {
            return false;
        }
        let (_, ca) = a.leading_term().expect("nonzero");
        let (_, cb) = b.leading_term().expect("nonzero");
        let c = ca / cb;
        a.sub(&b.scale(&c)).is_zero()
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Multiplies by the least positive rational making all coefficients
    /// coprime integers with a positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
        }
        for c in self.terms.values() {
            let n = (c * Scalar::from_integer(lcm.clone())).to_integer();
            gcd = num_integer::Integer::gcd(&gcd, &n);
        }
        let mut f = Scalar::new(lcm, gcd);
        if self.leading_term().expect("nonzero").1.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }
}

enum Aligned<'a> {
    Borrowed(&'a Polynomial, &'a Polynomial),
    Owned(Polynomial, Polynomial),
}

impl Aligned<'_> {
    fn pair(&self) -> (&Polynomial, &Polynomial) {
        match self {
            Aligned::Borrowed(a, b) => (a, b),
            Aligned::Owned(a, b) => (a, b),
        }
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn pow_scalar(v: &Scalar, e: u32) -> Scalar {
    num_traits::pow(v.clone(), e as usize)
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.vars.same(&other.vars) {
            return self.terms == other.terms;
        }
        self.sub(other).is_zero()
    }
}

impl Eq for Polynomial {}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                Polynomial::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_scalar(c: &Scalar) -> String {
    c.to_string()
}

impl fmt::Display for Polynomial {
    /// Terms in descending graded-lex order, e.g. `2*x^2 - 7*x + 5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            for (k, &(i, e)) in m.pairs().iter().enumerate() {
                if k > 0 {
                    f.write_str("*")?;
                }
                f.write_str(self.vars.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
