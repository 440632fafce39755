//! Exact arithmetic in Z[ζ_n], the integers adjoined with a primitive n-th
//! root of unity.
//!
//! Elements are stored as integer coefficient vectors modulo `x^n - 1`, which
//! keeps multiplication a plain cyclic convolution. Reduction modulo the n-th
//! cyclotomic polynomial Φ_n happens only inside [`CycInt::is_zero`] (and the
//! routines built on it), so correctness of every orthogonality decision is
//! isolated in one place.
//!
//! The Hermitian inner product is conjugate-linear in the FIRST argument:
//! `⟨u,v⟩ = Σ_k conj(u_k)·v_k`. This convention is fixed once here and used
//! everywhere in the crate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};
use thiserror::Error;

pub mod field;

/// Errors for cyclotomic arithmetic.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycError {
    #[error("order must be >= 1, got 0")]
    InvalidOrder,
    #[error("dimension mismatch: {0} vs {1}")]
    ShapeMismatch(usize, usize),
    #[error("incompatible root orders {0} and {1} (neither divides the other)")]
    OrderMismatch(u32, u32),
}

/// The n-th cyclotomic polynomial Φ_n as a monic integer coefficient vector
/// (constant term first), computed by iterated exact division of `x^n - 1`
/// by Φ_d over the proper divisors d of n. Results are cached per order.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "order must be >= 1");
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    // x^n - 1
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = -BigInt::one();
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            poly = exact_div(&poly, &phi_d);
        }
    }
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

/// Exact division of integer polynomials; panics if the division leaves a
/// remainder (it never does for cyclotomic factors).
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd);
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (dd..=dn).rev() {
        let c = std::mem::replace(&mut rem[i], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        for j in 0..dd {
            rem[i - dd + j] -= &c * &den[j];
        }
        quot[i - dd] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "non-exact polynomial division");
    quot
}

/// Euler's totient; the degree of Φ_n.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// An element of Z[ζ_n], stored as n integer coefficients modulo `x^n - 1`
/// (coefficient of ζ_n^k at position k).
#[derive(Debug, Clone)]
pub struct CycInt {
    order: u32,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    /// Zero of the given order.
    pub fn zero(order: u32) -> Result<Self, CycError> {
        if order == 0 {
            return Err(CycError::InvalidOrder);
        }
        Ok(CycInt {
            order,
            coeffs: vec![BigInt::zero(); order as usize],
        })
    }

    /// The root of unity ζ_n^k (`k` reduced mod n).
    pub fn root(order: u32, k: i64) -> Result<Self, CycError> {
        let mut z = CycInt::zero(order)?;
        let idx = k.rem_euclid(order as i64) as usize;
        z.coeffs[idx] = BigInt::one();
        Ok(z)
    }

    /// The rational integer `value` embedded at the given order.
    pub fn from_integer(value: impl Into<BigInt>, order: u32) -> Result<Self, CycError> {
        let mut z = CycInt::zero(order)?;
        z.coeffs[0] = value.into();
        Ok(z)
    }

    /// Construct from a raw coefficient vector (length = order).
    pub fn from_coeffs(coeffs: Vec<BigInt>, order: u32) -> Result<Self, CycError> {
        if order == 0 {
            return Err(CycError::InvalidOrder);
        }
        if coeffs.len() != order as usize {
            return Err(CycError::ShapeMismatch(coeffs.len(), order as usize));
        }
        Ok(CycInt { order, coeffs })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Raw coefficients modulo `x^n - 1` (unreduced).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// True iff this element is 0 in Z[ζ_n], decided by exact polynomial
    /// remainder of the coefficients modulo Φ_n.
    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(Zero::is_zero)
    }

    /// Coefficients reduced modulo Φ_n: the coordinates of the element in the
    /// power basis {1, ζ, ..., ζ^(φ(n)-1)}. Length φ(n).
    pub fn reduced(&self) -> Vec<BigInt> {
        let phi = cyclotomic_polynomial(self.order);
        let deg = phi.len() - 1;
        let mut rem = self.coeffs.clone();
        for i in (deg..rem.len()).rev() {
            let c = std::mem::replace(&mut rem[i], BigInt::zero());
            if c.is_zero() {
                continue;
            }
            for j in 0..deg {
                rem[i - deg + j] -= &c * &phi[j];
            }
        }
        rem.truncate(deg);
        rem
    }

    /// If the element is a rational integer, return it.
    pub fn as_integer(&self) -> Option<BigInt> {
        let red = self.reduced();
        if red[1..].iter().all(Zero::is_zero) {
            Some(red[0].clone())
        } else {
            None
        }
    }

    /// Complex conjugate: ζ_n^k ↦ ζ_n^(n-k).
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut out = vec![BigInt::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[(n - k) % n] = c.clone();
        }
        CycInt {
            order: self.order,
            coeffs: out,
        }
    }

    /// Re-express this element in Z[ζ_m] where the current order divides m.
    pub fn promote(&self, m: u32) -> Result<Self, CycError> {
        if m == 0 {
            return Err(CycError::InvalidOrder);
        }
        if m == self.order {
            return Ok(self.clone());
        }
        if m % self.order != 0 {
            return Err(CycError::OrderMismatch(self.order, m));
        }
        let stride = (m / self.order) as usize;
        let mut out = vec![BigInt::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k * stride] = c.clone();
        }
        Ok(CycInt {
            order: m,
            coeffs: out,
        })
    }

    /// `|self|^2 = self · conj(self)`, an element of the real subfield.
    pub fn norm_squared(&self) -> Self {
        self * &self.conj()
    }

    fn assert_same_order(&self, other: &Self) {
        assert_eq!(
            self.order, other.order,
            "cyclotomic order mismatch: promote explicitly before mixing orders"
        );
    }
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return (self - other).is_zero();
        }
        // Orders differ: equal iff both live in the smaller common field.
        if self.order % other.order == 0 {
            let p = other.promote(self.order).expect("divisor promotes");
            (self - &p).is_zero()
        } else if other.order % self.order == 0 {
            let p = self.promote(other.order).expect("divisor promotes");
            (&p - other).is_zero()
        } else {
            false
        }
    }
}

impl Eq for CycInt {}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let red = self.reduced();
        let mut first = true;
        for (k, c) in red.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "z{}^{}", self.order, k)?;
            } else {
                write!(f, "{a}*z{}^{}", self.order, k)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl std::ops::Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.assert_same_order(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycInt {
            order: self.order,
            coeffs,
        }
    }
}

impl std::ops::Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.assert_same_order(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycInt {
            order: self.order,
            coeffs,
        }
    }
}

impl std::ops::Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Mul for &CycInt {
    type Output = CycInt;
    /// Cyclic convolution modulo `x^n - 1`.
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.assert_same_order(rhs);
        let n = self.order as usize;
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[(i + j) % n] += a * b;
            }
        }
        CycInt {
            order: self.order,
            coeffs: out,
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: CycInt) -> CycInt {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

/// The root of unity ζ_n^k. Errors when n = 0.
pub fn cyc_root(n: u32, k: i64) -> Result<CycInt, CycError> {
    CycInt::root(n, k)
}

/// Exact zero test in Z[ζ_n].
pub fn cyc_is_zero(x: &CycInt) -> bool {
    x.is_zero()
}

/// A vector with entries in a common Z[ζ_n].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycVector {
    order: u32,
    entries: Vec<CycInt>,
}

impl CycVector {
    /// Build from entries. Entries whose order divides the largest order
    /// present are promoted; incompatible orders are an error.
    pub fn new(entries: Vec<CycInt>) -> Result<Self, CycError> {
        if entries.is_empty() {
            return Err(CycError::ShapeMismatch(0, 1));
        }
        let order = entries.iter().map(|e| e.order).max().unwrap();
        let entries = entries
            .into_iter()
            .map(|e| e.promote(order))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CycVector { order, entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn entries(&self) -> &[CycInt] {
        &self.entries
    }

    pub fn is_zero_vector(&self) -> bool {
        self.entries.iter().all(CycInt::is_zero)
    }

    /// Re-express every entry in Z[ζ_m]; the current order must divide m.
    pub fn promote(&self, m: u32) -> Result<Self, CycError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.promote(m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CycVector { order: m, entries })
    }
}

/// Exact Hermitian inner product, conjugate-linear in the first argument:
/// `⟨u,v⟩ = Σ_k conj(u_k)·v_k`.
///
/// Vectors of different root orders are unified when one order divides the
/// other (in particular, integer vectors of order 1 embed into any order).
pub fn inner_product(u: &CycVector, v: &CycVector) -> Result<CycInt, CycError> {
    if u.dim() != v.dim() {
        return Err(CycError::ShapeMismatch(u.dim(), v.dim()));
    }
    let (u, v) = if u.order == v.order {
        (u.clone(), v.clone())
    } else if v.order % u.order == 0 {
        (u.promote(v.order)?, v.clone())
    } else if u.order % v.order == 0 {
        (u.clone(), v.promote(u.order)?)
    } else {
        return Err(CycError::OrderMismatch(u.order, v.order));
    };
    let mut acc = CycInt::zero(u.order).expect("order >= 1");
    for (a, b) in u.entries.iter().zip(&v.entries) {
        acc = &acc + &(&a.conj() * b);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn phi_as_i64(n: u32) -> Vec<i64> {
        cyclotomic_polynomial(n)
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn cyclotomic_polynomials_small_orders() {
        assert_eq!(phi_as_i64(1), vec![-1, 1]);
        assert_eq!(phi_as_i64(2), vec![1, 1]);
        assert_eq!(phi_as_i64(3), vec![1, 1, 1]);
        assert_eq!(phi_as_i64(4), vec![1, 0, 1]);
        assert_eq!(phi_as_i64(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(phi_as_i64(6), vec![1, -1, 1]);
        assert_eq!(phi_as_i64(12), vec![1, 0, -1, 0, 1]);
        // degree of Φ_n is φ(n)
        for n in 1..=30 {
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, euler_phi(n));
        }
    }

    #[test]
    fn root_constructor() {
        // ζ_1 = 1
        let one = cyc_root(1, 0).unwrap();
        assert_eq!(one.as_integer().unwrap(), BigInt::from(1));
        // ζ_3^2 has a single 1 at position 2
        let z = cyc_root(3, 2).unwrap();
        assert_eq!(
            z.coeffs(),
            &[BigInt::from(0), BigInt::from(0), BigInt::from(1)]
        );
        // exponent reduction mod 3
        assert_eq!(cyc_root(3, 5).unwrap(), z);
        assert_eq!(cyc_root(3, -1).unwrap(), cyc_root(3, 2).unwrap());
        assert_eq!(CycInt::root(0, 1), Err(CycError::InvalidOrder));
    }

    #[test]
    fn zero_test_examples() {
        // 1 + ζ_3 + ζ_3^2 = 0
        let s = &(&cyc_root(3, 0).unwrap() + &cyc_root(3, 1).unwrap()) + &cyc_root(3, 2).unwrap();
        assert!(cyc_is_zero(&s));
        // 1 + ζ_5 != 0
        let t = &cyc_root(5, 0).unwrap() + &cyc_root(5, 1).unwrap();
        assert!(!cyc_is_zero(&t));
        // scalar multiple of zero
        let three = CycInt::from_integer(3, 3).unwrap();
        assert!(cyc_is_zero(&(&three * &s)));
    }

    #[test]
    fn conjugation_and_promotion() {
        let z = cyc_root(12, 5).unwrap();
        assert_eq!(z.conj(), cyc_root(12, 7).unwrap());
        // ζ_3 viewed inside Z[ζ_12] is ζ_12^4
        let promoted = cyc_root(3, 1).unwrap().promote(12).unwrap();
        assert_eq!(promoted, cyc_root(12, 4).unwrap());
        // cross-order equality through promotion
        assert_eq!(cyc_root(3, 1).unwrap(), cyc_root(12, 4).unwrap());
        assert_ne!(cyc_root(3, 1).unwrap(), cyc_root(12, 5).unwrap());
        assert_eq!(
            cyc_root(3, 1).unwrap().promote(5),
            Err(CycError::OrderMismatch(3, 5))
        );
    }

    #[test]
    fn inner_product_basics() {
        // standard basis vectors of any dim are orthogonal
        let e1 = CycVector::new(vec![
            CycInt::from_integer(1, 1).unwrap(),
            CycInt::from_integer(0, 1).unwrap(),
        ])
        .unwrap();
        let e2 = CycVector::new(vec![
            CycInt::from_integer(0, 1).unwrap(),
            CycInt::from_integer(1, 1).unwrap(),
        ])
        .unwrap();
        assert!(inner_product(&e1, &e2).unwrap().is_zero());
        // dimension mismatch is a shape error
        let e3 = CycVector::new(vec![CycInt::from_integer(1, 1).unwrap()]).unwrap();
        assert_eq!(
            inner_product(&e1, &e3),
            Err(CycError::ShapeMismatch(2, 1))
        );
    }

    #[test]
    fn inner_product_promotes_integer_vectors() {
        // order-1 (integer) entries embed into order 3
        let u = CycVector::new(vec![
            CycInt::from_integer(1, 1).unwrap(),
            CycInt::from_integer(-1, 1).unwrap(),
        ])
        .unwrap();
        let v = CycVector::new(vec![cyc_root(3, 1).unwrap(), cyc_root(3, 1).unwrap()]).unwrap();
        let ip = inner_product(&u, &v).unwrap();
        assert!(ip.is_zero());
    }

    /// Float evaluation of an element at ζ_n = exp(2πi/n); sanity oracle only.
    fn eval_complex(x: &CycInt) -> (f64, f64) {
        let n = x.order() as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in x.coeffs().iter().enumerate() {
            let c = c.to_f64().unwrap();
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / n;
            re += c * theta.cos();
            im += c * theta.sin();
        }
        (re, im)
    }

    #[test]
    fn zero_test_agrees_with_float_evaluation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_cafe);
        let orders = [3u32, 5, 8, 12];
        for trial in 0..1000 {
            let n = orders[trial % orders.len()];
            let coeffs: Vec<BigInt> = (0..n)
                .map(|_| BigInt::from(rng.gen_range(-4i64..=4)))
                .collect();
            let x = CycInt::from_coeffs(coeffs, n).unwrap();
            let (re, im) = eval_complex(&x);
            let float_zero = re.abs() < 1e-9 && im.abs() < 1e-9;
            assert_eq!(x.is_zero(), float_zero, "disagreement on {x}");
        }
    }

    #[test]
    fn no_zero_divisors_after_reduction() {
        // products of random nonzero elements stay nonzero for n in {3,5,8,12}
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xd00d1e5);
        for &n in &[3u32, 5, 8, 12] {
            for _ in 0..200 {
                let sample = |rng: &mut rand_chacha::ChaCha8Rng| loop {
                    let coeffs: Vec<BigInt> = (0..n)
                        .map(|_| BigInt::from(rng.gen_range(-3i64..=3)))
                        .collect();
                    let x = CycInt::from_coeffs(coeffs, n).unwrap();
                    if !x.is_zero() {
                        return x;
                    }
                };
                let x = sample(&mut rng);
                let y = sample(&mut rng);
                assert!(!(&x * &y).is_zero(), "zero divisor: ({x})*({y})");
            }
        }
    }

    proptest! {
        // ⟨u,v⟩ = conj(⟨v,u⟩)
        #[test]
        fn inner_product_conjugate_symmetry(
            seed in 0u64..100,
            n in prop::sample::select(vec![3u32, 5, 8, 12]),
            dim in 1usize..6,
        ) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let rand_vec = |rng: &mut rand_chacha::ChaCha8Rng| {
                let entries = (0..dim).map(|_| {
                    let coeffs: Vec<BigInt> =
                        (0..n).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
                    CycInt::from_coeffs(coeffs, n).unwrap()
                }).collect();
                CycVector::new(entries).unwrap()
            };
            let u = rand_vec(&mut rng);
            let v = rand_vec(&mut rng);
            let uv = inner_product(&u, &v).unwrap();
            let vu = inner_product(&v, &u).unwrap();
            prop_assert_eq!(uv, vu.conj());
        }

        // multiplying by a root of unity preserves the zero test
        #[test]
        fn root_multiplication_preserves_zero(
            n in prop::sample::select(vec![3u32, 5, 8, 12]),
            k in 0i64..12,
            c in -3i64..=3,
        ) {
            let x = CycInt::from_integer(c, n).unwrap();
            let y = &x * &cyc_root(n, k).unwrap();
            prop_assert_eq!(x.is_zero(), y.is_zero());
        }
    }
}
