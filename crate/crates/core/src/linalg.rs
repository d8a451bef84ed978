//! Fraction-free (Bareiss) elimination over exact rings.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::poly::{Polynomial, Scalar};

/// Minimal ring interface needed by Bareiss elimination. `div_exact` is only
/// ever called when the division is known to be exact.
pub trait ExactRing: Clone {
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_exact(&self, divisor: &Self) -> Self;
    /// Smaller is a better pivot.
    fn pivot_cost(&self) -> usize {
        0
    }
}

impl ExactRing for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, divisor: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % divisor)));
        self / divisor
    }
    fn pivot_cost(&self) -> usize {
        self.abs().bits() as usize
    }
}

impl ExactRing for Scalar {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, divisor: &Self) -> Self {
        self / divisor
    }
}

impl ExactRing for Polynomial {
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        Polynomial::mul(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Polynomial::sub(self, other)
    }
    fn neg(&self) -> Self {
        Polynomial::neg(self)
    }
    fn div_exact(&self, divisor: &Self) -> Self {
        Polynomial::div_exact(self, divisor).expect("Bareiss division is exact")
    }
    fn pivot_cost(&self) -> usize {
        if self.is_constant() {
            0
        } else {
            let deg = self.total_degree().finite().unwrap_or(0) as usize;
            1 + deg * 64 + self.num_terms()
        }
    }
}

/// Row echelon form produced by [`echelon`].
#[derive(Clone, Debug)]
pub struct Echelon<R> {
    pub rows: Vec<Vec<R>>,
    pub rank: usize,
    /// Original indices of the pivot rows, in pivot order.
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
    /// Original row index of each row of `rows`.
    pub row_order: Vec<usize>,
    /// True when an odd number of row swaps was performed.
    pub odd_swaps: bool,
}

/// Fraction-free Gaussian elimination. Every intermediate entry is a minor of
/// the input, so all divisions are exact.
pub fn echelon<R: ExactRing>(matrix: Vec<Vec<R>>) -> Echelon<R> {
    let mut a = matrix;
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut order: Vec<usize> = (0..nrows).collect();
    let mut prev: Option<R> = None;
    let mut r = 0;
    let mut pivot_cols = Vec::new();
    let mut odd = false;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| (a[i][c].pivot_cost(), i)) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            order.swap(p, r);
            odd = !odd;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..ncols {
                let t = piv.mul(&row[j]).sub(&lead.mul(&pivot_row[j]));
                row[j] = match &prev {
                    Some(d) => t.div_exact(d),
                    None => t,
                };
            }
            row[c] = lead.sub(&lead);
        }
        prev = Some(piv);
        pivot_cols.push(c);
        r += 1;
    }
    Echelon { pivot_rows: order[..r].to_vec(), rows: a, rank: r, pivot_cols, row_order: order, odd_swaps: odd }
}

/// Determinant of a square matrix, or `None` for an empty matrix.
pub fn determinant<R: ExactRing>(matrix: Vec<Vec<R>>) -> Option<R> {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let zero = matrix.first()?.first()?.sub(&matrix[0][0]);
    let e = echelon(matrix);
    if e.rank < n {
        return Some(zero);
    }
    let d = e.rows[n - 1][n - 1].clone();
    Some(if e.odd_swaps { d.neg() } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn integer_determinants() {
        assert_eq!(determinant(ints(&[&[2, 1], &[1, 3]])), Some(BigInt::from(5)));
        assert_eq!(determinant(ints(&[&[0, 1], &[1, 0]])), Some(BigInt::from(-1)));
        assert_eq!(determinant(ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), Some(BigInt::from(-3)));
        assert_eq!(determinant(ints(&[&[1, 2], &[2, 4]])), Some(BigInt::from(0)));
    }

    #[test]
    fn rank_of_rectangular() {
        assert_eq!(echelon(ints(&[&[1, 2], &[2, 4], &[3, 6]])).rank, 1);
        assert_eq!(echelon(ints(&[&[0, 0, 1], &[0, 1, 0], &[0, 1, 1]])).rank, 2);
    }

    #[test]
    fn polynomial_determinant() {
        let p = |s: &str| parse_polynomial(s).unwrap();
        let m = vec![vec![p("x"), p("-2")], vec![p("1"), p("x - 3")]];
        assert_eq!(determinant(m), Some(p("x^2 - 3*x + 2")));
    }
}
