//! The field Q(ζ_n), represented as rational coefficient blocks modulo Φ_n,
//! and exact Gaussian elimination over it.
//!
//! Used for full-rank checks of orthogonal bases: each matrix entry is a
//! polynomial of degree < φ(n) with rational coefficients, and elimination
//! runs entirely in exact arithmetic.

use super::{cyclotomic_polynomial, CycInt};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An element of Q(ζ_n): φ(n) rational coefficients in the power basis.
pub type FieldElem = Vec<BigRational>;

/// Arithmetic context for Q(ζ_n).
pub struct CycField {
    order: u32,
    /// Φ_n as rationals, monic, constant term first.
    modulus: Vec<BigRational>,
}

impl CycField {
    pub fn new(order: u32) -> Self {
        let modulus = cyclotomic_polynomial(order)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        CycField { order, modulus }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of the extension, φ(n).
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn zero(&self) -> FieldElem {
        vec![BigRational::zero(); self.degree()]
    }

    /// Embed a cyclotomic integer (same order) as a field element.
    pub fn from_cyc(&self, x: &CycInt) -> FieldElem {
        assert_eq!(x.order(), self.order, "field/element order mismatch");
        x.reduced()
            .into_iter()
            .map(BigRational::from_integer)
            .collect()
    }

    pub fn is_zero(e: &FieldElem) -> bool {
        e.iter().all(Zero::is_zero)
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let deg = self.degree();
        let mut prod = vec![BigRational::zero(); 2 * deg - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        // reduce modulo Φ_n
        for i in (deg..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[i], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for j in 0..deg {
                let t = &c * &self.modulus[j];
                prod[i - deg + j] -= t;
            }
        }
        prod.truncate(deg);
        prod
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// polynomials over Q. Returns `None` for zero.
    pub fn invert(&self, a: &FieldElem) -> Option<FieldElem> {
        if Self::is_zero(a) {
            return None;
        }
        // Work with (r0, r1) = (Φ_n, a); track s only for r1's side.
        let mut r0 = self.modulus.clone();
        let mut r1 = trim(a.clone());
        let mut t0: Vec<BigRational> = vec![];
        let mut t1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        // r0 is now gcd(Φ_n, a); Φ_n is irreducible so r0 is a nonzero constant.
        debug_assert_eq!(r0.len(), 1, "Φ_n must be irreducible");
        let lead = r0[0].clone();
        let mut inv: FieldElem = t0.iter().map(|c| c / &lead).collect();
        inv.resize(self.degree(), BigRational::zero());
        Some(inv)
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder of polynomials over Q (divisor nonzero).
fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    assert!(!den.is_empty(), "division by zero polynomial");
    if rem.len() < den.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - den.len() + 1];
    let lead = den.last().unwrap().clone();
    for i in (den.len() - 1..rem.len()).rev() {
        let c = &rem[i] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            let t = &c * d;
            rem[i - (den.len() - 1) + j] -= t;
        }
        quot[i - (den.len() - 1)] = c;
    }
    (trim(quot), trim(rem))
}

/// Rank of a matrix over Q(ζ_n) by exact Gaussian elimination.
///
/// `rows[i][j]` is the entry in row i, column j. Zero entries are skipped, so
/// block-structured matrices (as produced by the recursive KS constructions)
/// eliminate quickly.
pub fn rank(field: &CycField, mut rows: Vec<Vec<FieldElem>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut row_at = 0;
    for col in 0..ncols {
        // find a pivot in this column
        let Some(pivot_row) = (row_at..rows.len()).find(|&r| !CycField::is_zero(&rows[r][col]))
        else {
            continue;
        };
        rows.swap(row_at, pivot_row);
        let inv = field
            .invert(&rows[row_at][col])
            .expect("pivot is nonzero");
        for r in row_at + 1..rows.len() {
            if CycField::is_zero(&rows[r][col]) {
                continue;
            }
            let factor = field.mul(&rows[r][col], &inv);
            for c in col..ncols {
                if CycField::is_zero(&rows[row_at][c]) {
                    continue;
                }
                let t = field.mul(&factor, &rows[row_at][c]);
                rows[r][c] = field.sub(&rows[r][c], &t);
            }
        }
        rank += 1;
        row_at += 1;
        if row_at == rows.len() {
            break;
        }
    }
    rank
}

/// Convenience: field elements from BigInt constants.
pub fn elem_from_int(field: &CycField, v: impl Into<BigInt>) -> FieldElem {
    let mut e = field.zero();
    e[0] = BigRational::from_integer(v.into());
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::cyc_root;

    #[test]
    fn inversion_round_trip() {
        let f = CycField::new(5);
        // (1 + ζ_5) is a unit in Q(ζ_5)
        let a = f.from_cyc(&(&cyc_root(5, 0).unwrap() + &cyc_root(5, 1).unwrap()));
        let inv = f.invert(&a).unwrap();
        let prod = f.mul(&a, &inv);
        assert_eq!(prod, elem_from_int(&f, 1));
        assert!(f.invert(&f.zero()).is_none());
    }

    #[test]
    fn rank_of_root_matrix() {
        let f = CycField::new(3);
        let z = |k| f.from_cyc(&cyc_root(3, k).unwrap());
        // rows (1, ζ), (ζ, ζ^2) are parallel: rank 1
        let rows = vec![vec![z(0), z(1)], vec![z(1), z(2)]];
        assert_eq!(rank(&f, rows), 1);
        // rows (1, 1), (1, ζ) are independent
        let rows = vec![vec![z(0), z(0)], vec![z(0), z(1)]];
        assert_eq!(rank(&f, rows), 2);
    }

    #[test]
    fn rank_over_rationals_order_one() {
        let f = CycField::new(1);
        let e = |v: i64| elem_from_int(&f, v);
        let rows = vec![
            vec![e(1), e(2), e(3)],
            vec![e(2), e(4), e(6)],
            vec![e(0), e(1), e(1)],
        ];
        assert_eq!(rank(&f, rows), 2);
    }
}
