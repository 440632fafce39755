//! Generalized Hadamard matrices over Z_g and S-Hadamard matrices.
//!
//! A GH(g,λ) is a gλ×gλ matrix over Z_g in which the entrywise difference of
//! any two distinct rows hits every residue exactly λ times. Mapping entries
//! h ↦ ζ_g^h (g ≥ 3) yields an S-Hadamard matrix: a unit-modulus complex
//! Hadamard matrix whose entrywise square also has pairwise orthogonal rows.
//!
//! Constructions provided: the two-block Jungnickel GH(q,2) for odd prime q,
//! the multiplication-table GH(p,1), and Kronecker products (entries add
//! mod g), which together reach all orders 2^k·p^m with m ≥ k.

use crate::cyclotomic::CycInt;
use crate::report::VerificationReport;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HadamardError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("{0} is a square modulo {1}; a quadratic non-residue is required")]
    SquareResidue(u32, u32),
    #[error("group order mismatch: {0} vs {1}")]
    GroupOrderMismatch(u32, u32),
    #[error("S-Hadamard conversion requires group order >= 3, got {0}")]
    RootOrderTooSmall(u32),
    #[error("input is not a valid generalized Hadamard matrix:\n{0}")]
    InvalidGh(String),
    #[error("malformed matrix: {0}")]
    BadShape(String),
}

/// A generalized Hadamard matrix GH(g,λ) over Z_g, entries stored as
/// residues mod g.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GHMatrix {
    pub group_order: u32,
    pub lam: u32,
    pub rows: Vec<Vec<u32>>,
}

/// An S-Hadamard matrix of order n with entries ζ_g^e, stored as the
/// exponent matrix (unit modulus is structural in this representation).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SHadamard {
    pub root_order: u32,
    pub rows: Vec<Vec<u32>>,
    pub normalized: bool,
}

impl GHMatrix {
    pub fn side(&self) -> usize {
        self.rows.len()
    }

    pub fn from_rows(group_order: u32, rows: Vec<Vec<u32>>) -> Result<Self, HadamardError> {
        let side = rows.len();
        if side == 0 || rows.iter().any(|r| r.len() != side) {
            return Err(HadamardError::BadShape("matrix must be square".into()));
        }
        if group_order == 0 || side % group_order as usize != 0 {
            return Err(HadamardError::BadShape(format!(
                "side {side} is not a multiple of group order {group_order}"
            )));
        }
        if rows.iter().flatten().any(|&e| e >= group_order) {
            return Err(HadamardError::BadShape("entry out of residue range".into()));
        }
        let lam = side as u32 / group_order;
        Ok(GHMatrix {
            group_order,
            lam,
            rows,
        })
    }
}

impl SHadamard {
    pub fn order(&self) -> usize {
        self.rows.len()
    }
}

fn is_odd_prime(q: u32) -> bool {
    if q < 3 || q % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime, a != 0 mod p
    mod_pow(a, p - 2, p)
}

/// True iff c is a quadratic residue mod the odd prime q (c != 0).
pub fn is_quadratic_residue(c: u32, q: u32) -> bool {
    mod_pow(c as u64 % q as u64, (q as u64 - 1) / 2, q as u64) == 1
}

/// The smallest quadratic non-residue mod the odd prime q.
pub fn smallest_non_residue(q: u32) -> u32 {
    (2..q)
        .find(|&c| !is_quadratic_residue(c, q))
        .expect("every odd prime has a non-residue")
}

/// Jungnickel's two-block construction of a GH(q,2) over Z_q for an odd
/// prime q and a quadratic non-residue c. The four q×q blocks are
///
/// ```text
///   A1 = xy + x²/4        A2 = xy + c·x²/4
///   A3 = xy - y² - x²/4   A4 = [xy - y² - x²/4]/c
/// ```
///
/// arranged D = [[A1,A2],[A3,A4]], with rows/columns in the natural order
/// 0,1,…,q-1 and divisions taken as multiplications by modular inverses.
pub fn jungnickel_gh(q: u32, c: u32) -> Result<GHMatrix, HadamardError> {
    if !is_odd_prime(q) {
        return Err(HadamardError::NotOddPrime(q));
    }
    let c = c % q;
    if c == 0 || is_quadratic_residue(c, q) {
        return Err(HadamardError::SquareResidue(c, q));
    }
    let qq = q as u64;
    let inv4 = mod_inv(4 % qq, qq);
    let inv_c = mod_inv(c as u64, qq);
    let side = 2 * q as usize;
    let mut rows = vec![vec![0u32; side]; side];
    for x in 0..qq {
        for y in 0..qq {
            let a1 = (x * y + x * x % qq * inv4) % qq;
            let a2 = (x * y + c as u64 * x % qq * x % qq * inv4) % qq;
            // xy - y² - x²/4, kept non-negative by adding multiples of q
            let a3 = (x * y % qq + 2 * qq - y * y % qq - x * x % qq * inv4 % qq) % qq;
            let a4 = a3 * inv_c % qq;
            rows[x as usize][y as usize] = a1 as u32;
            rows[x as usize][(y + qq) as usize] = a2 as u32;
            rows[(x + qq) as usize][y as usize] = a3 as u32;
            rows[(x + qq) as usize][(y + qq) as usize] = a4 as u32;
        }
    }
    Ok(GHMatrix {
        group_order: q,
        lam: 2,
        rows,
    })
}

/// The p×p multiplication table (entry i·j mod p), a GH(p,1) for odd
/// prime p. Smallest Kronecker factor for reaching higher λ.
pub fn gh_mult_table(p: u32) -> Result<GHMatrix, HadamardError> {
    if !is_odd_prime(p) {
        return Err(HadamardError::NotOddPrime(p));
    }
    let rows = (0..p)
        .map(|i| (0..p).map(|j| i * j % p).collect())
        .collect();
    Ok(GHMatrix {
        group_order: p,
        lam: 1,
        rows,
    })
}

/// Kronecker product of GH matrices over the same Z_g: block (i,j) of the
/// result is `a[i][j] + b` entrywise mod g. λ of the result is recomputed
/// from the side, never trusted from the inputs.
pub fn gh_kronecker(a: &GHMatrix, b: &GHMatrix) -> Result<GHMatrix, HadamardError> {
    if a.group_order != b.group_order {
        return Err(HadamardError::GroupOrderMismatch(
            a.group_order,
            b.group_order,
        ));
    }
    let g = a.group_order;
    let (sa, sb) = (a.side(), b.side());
    let side = sa * sb;
    let mut rows = vec![vec![0u32; side]; side];
    for i in 0..sa {
        for j in 0..sa {
            let shift = a.rows[i][j];
            for k in 0..sb {
                for l in 0..sb {
                    rows[i * sb + k][j * sb + l] = (shift + b.rows[k][l]) % g;
                }
            }
        }
    }
    Ok(GHMatrix {
        group_order: g,
        lam: side as u32 / g,
        rows,
    })
}

/// Check the GH defining property: every residue occurs exactly λ times in
/// the difference of any pair of distinct rows. Runs over row pairs in
/// parallel; the report lists each violating pair.
pub fn verify_gh(m: &GHMatrix) -> VerificationReport {
    let mut report = VerificationReport::new(format!(
        "GH({},{}) matrix of side {}",
        m.group_order,
        m.lam,
        m.side()
    ));
    let side = m.side();
    let g = m.group_order as usize;
    if side != (m.group_order * m.lam) as usize {
        report.push("side is not g*lambda", vec![side]);
        return report;
    }
    let pairs: Vec<(usize, usize)> = (0..side)
        .flat_map(|r| (r + 1..side).map(move |s| (r, s)))
        .collect();
    let mut bad: Vec<(usize, usize, u32, usize)> = pairs
        .par_iter()
        .flat_map_iter(|&(r, s)| {
            let mut counts = vec![0usize; g];
            for j in 0..side {
                let d = (m.rows[r][j] + m.group_order - m.rows[s][j]) % m.group_order;
                counts[d as usize] += 1;
            }
            counts
                .into_iter()
                .enumerate()
                .filter(|&(_, cnt)| cnt != m.lam as usize)
                .map(move |(res, cnt)| (r, s, res as u32, cnt))
                .collect::<Vec<_>>()
        })
        .collect();
    bad.sort_unstable();
    for (r, s, res, cnt) in bad {
        report.push(
            format!("residue {res} occurs {cnt} times (expected {}) in row difference", m.lam),
            vec![r, s],
        );
    }
    report
}

/// Map a GH(g,λ) with g ≥ 3 to the S-Hadamard matrix S = (ζ_g^{h_ij}).
/// The input is verified first; an invalid GH matrix is an error.
pub fn gh_to_shadamard(m: &GHMatrix) -> Result<SHadamard, HadamardError> {
    if m.group_order < 3 {
        return Err(HadamardError::RootOrderTooSmall(m.group_order));
    }
    let report = verify_gh(m);
    if !report.is_pass() {
        return Err(HadamardError::InvalidGh(report.to_string()));
    }
    let normalized = m.rows[0].iter().all(|&e| e == 0);
    Ok(SHadamard {
        root_order: m.group_order,
        rows: m.rows.clone(),
        normalized,
    })
}

/// Exponent-difference row sum Σ_j ζ^(mult·(rows[k][j]-rows[l][j])) as a
/// cyclotomic integer, the quantity behind both S-Hadamard row conditions.
fn row_pair_sum(s: &SHadamard, k: usize, l: usize, mult: u32) -> CycInt {
    let g = s.root_order;
    let mut counts = vec![BigInt::zero(); g as usize];
    for j in 0..s.order() {
        let d = (mult * s.rows[k][j] + mult * g - mult * s.rows[l][j]) % g;
        counts[d as usize] += 1;
    }
    CycInt::from_coeffs(counts, g).expect("g >= 1")
}

/// Check all three S-Hadamard conditions exactly:
/// 1. HH* = nI;
/// 2. unit modulus (structural in the exponent representation);
/// 3. pairwise orthogonality of the rows of the entrywise square.
pub fn verify_shadamard(s: &SHadamard) -> VerificationReport {
    let n = s.order();
    let mut report = VerificationReport::new(format!(
        "S-Hadamard matrix of order {n} over Z[zeta_{}]; unit modulus holds structurally",
        s.root_order
    ));
    if s.rows.iter().any(|r| r.len() != n) {
        report.push("matrix is not square", vec![]);
        return report;
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|k| (k..n).map(move |l| (k, l)))
        .collect();
    let mut bad: Vec<(usize, usize, &'static str)> = pairs
        .par_iter()
        .flat_map_iter(|&(k, l)| {
            let mut v = Vec::new();
            let hh = row_pair_sum(s, k, l, 1);
            if k == l {
                let expect = CycInt::from_integer(n as i64, s.root_order).unwrap();
                if hh != expect {
                    v.push((k, l, "diagonal of HH* is not n"));
                }
            } else {
                if !hh.is_zero() {
                    v.push((k, l, "rows not orthogonal (HH* != nI)"));
                }
                if !row_pair_sum(s, k, l, 2).is_zero() {
                    v.push((k, l, "squared rows not orthogonal (condition 3)"));
                }
            }
            v
        })
        .collect();
    bad.sort_unstable();
    for (k, l, what) in bad {
        report.push(what, vec![k, l]);
    }
    report
}

/// Normalize so the first row is all ones: multiply every row entrywise by
/// the inverse of row 1 (exponents subtract mod g). Idempotent, and
/// preserves all S-Hadamard conditions.
pub fn normalize_shadamard(s: &SHadamard) -> SHadamard {
    let g = s.root_order;
    let first = s.rows[0].clone();
    let rows = s
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .zip(&first)
                .map(|(&e, &f)| (e + g - f) % g)
                .collect()
        })
        .collect();
    SHadamard {
        root_order: g,
        rows,
        normalized: true,
    }
}
