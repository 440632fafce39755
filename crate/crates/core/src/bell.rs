//! Bell functionals for the star games: coefficient tensors, exact local
//! bounds, Collins-Gisin coordinates, and the non-tightness certificate.
//!
//! Outputs here are POSITION-based: output n on line i names the n-th point
//! of the line in lexicographic order ({i,j} before {i,j'} iff j < j'),
//! which for line i is just its partners in ascending order. The games
//! module labels outputs by partner instead; [`position_to_partner`] and
//! [`partner_to_position`] convert.

use crate::engine::{self, PayoffTable};
use crate::ksets::{KSSet, Pair};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BellError {
    #[error("Bell functional needs odd N >= 7, got {0}")]
    BadLineCount(u16),
    #[error("KS set shape mismatch: {0} lines in dimension {1}")]
    RealizationShape(u16, usize),
    #[error("strategy does not cover the input set")]
    BadStrategy,
}

/// Convert a 1-based output position on `line` to the partner label.
pub fn position_to_partner(line: u16, pos: u16) -> u16 {
    debug_assert!(pos >= 1);
    pos + u16::from(pos >= line)
}

/// Convert a partner label on `line` to the 1-based output position.
pub fn partner_to_position(line: u16, partner: u16) -> u16 {
    debug_assert!(partner != line);
    partner - u16::from(partner > line)
}

/// The Bell functional of the colored star game on N lines: coefficients
/// c(a,b|x,y) for red x, blue y, with position-based outputs 1..N-1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BellFunctional {
    pub n_lines: u16,
    /// Red lines (Alice's inputs), 1..N-2.
    pub alice_inputs: Vec<u16>,
    /// Blue lines (Bob's inputs), 3..N.
    pub bob_inputs: Vec<u16>,
    /// Local bound (N-2)² - 1 the functional is claimed to satisfy.
    pub claimed_bound: i64,
}

/// The coefficient c(a,b|x,y) for 1-based positions a,b in 1..N-1 and lines
/// x,y in 1..N:
///
/// ```text
///   c(a,b|x,y) = δ(a=b)            for x = y
///              = c'(a,b|x,y)       for x < y
///              = c(b,a|y,x)        for x > y
///   c'(a,b|x,y) = δ(a≠b) + δ(a=b)δ(x ≤ b ≤ y-1) - δ(a=b-1)δ(x < b < y)
///               - δ(a=y-1)δ(b≠x) - δ(a≠y-1)δ(b=x)
/// ```
pub fn coefficient(a: u16, b: u16, x: u16, y: u16) -> i64 {
    fn cprime(a: i32, b: i32, x: i32, y: i32) -> i64 {
        let d = |cond: bool| i64::from(cond);
        d(a != b) + d(a == b) * d(x <= b && b <= y - 1)
            - d(a == b - 1) * d(x < b && b < y)
            - d(a == y - 1) * d(b != x)
            - d(a != y - 1) * d(b == x)
    }
    let (a, b, x, y) = (a as i32, b as i32, x as i32, y as i32);
    match x.cmp(&y) {
        std::cmp::Ordering::Equal => i64::from(a == b),
        std::cmp::Ordering::Less => cprime(a, b, x, y),
        std::cmp::Ordering::Greater => cprime(b, a, y, x),
    }
}

/// Build the functional for odd N ≥ 7 with the standard coloring.
pub fn build_functional(n_lines: u16) -> Result<BellFunctional, BellError> {
    if n_lines < 7 || n_lines % 2 == 0 {
        return Err(BellError::BadLineCount(n_lines));
    }
    Ok(BellFunctional {
        n_lines,
        alice_inputs: (1..=n_lines - 2).collect(),
        bob_inputs: (3..=n_lines).collect(),
        claimed_bound: ((n_lines as i64) - 2) * ((n_lines as i64) - 2) - 1,
    })
}

impl BellFunctional {
    pub fn n_outputs(&self) -> usize {
        self.n_lines as usize - 1
    }

    /// The coefficient matrix M_{x,y} with rows a and columns b.
    pub fn m_matrix(&self, x: u16, y: u16) -> Vec<Vec<i64>> {
        let outs = self.n_outputs() as u16;
        (1..=outs)
            .map(|a| (1..=outs).map(|b| coefficient(a, b, x, y)).collect())
            .collect()
    }

    /// CSV rendering of M_{x,y} (one row per line, comma separated).
    pub fn m_matrix_csv(&self, x: u16, y: u16) -> String {
        self.m_matrix(x, y)
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
            + "\n"
    }

    /// Functional value of a deterministic strategy pair (0-based position
    /// choices per input, in input-set order).
    pub fn value_of(&self, alice: &[usize], bob: &[usize]) -> Result<i64, BellError> {
        if alice.len() != self.alice_inputs.len() || bob.len() != self.bob_inputs.len() {
            return Err(BellError::BadStrategy);
        }
        let mut total = 0i64;
        for (xi, &x) in self.alice_inputs.iter().enumerate() {
            for (yi, &y) in self.bob_inputs.iter().enumerate() {
                total += coefficient(alice[xi] as u16 + 1, bob[yi] as u16 + 1, x, y);
            }
        }
        Ok(total)
    }

    pub(crate) fn payoff_table(&self) -> PayoffTable {
        let outs = self.n_outputs();
        let ax = self.alice_inputs.clone();
        let by = self.bob_inputs.clone();
        PayoffTable::build(
            vec![outs; ax.len()],
            vec![outs; by.len()],
            move |xi, yi, a, b| coefficient(a as u16 + 1, b as u16 + 1, ax[xi], by[yi]),
        )
    }

    /// Common lines (inputs both parties may receive).
    pub fn common_lines(&self) -> Vec<u16> {
        self.alice_inputs
            .iter()
            .filter(|x| self.bob_inputs.contains(x))
            .copied()
            .collect()
    }
}

/// Exact local bound: the maximum of the functional over deterministic
/// strategy pairs, with the lexicographically least witness (0-based
/// position choices in input-set order).
pub fn local_bound(f: &BellFunctional) -> (i64, Vec<usize>, Vec<usize>) {
    let outcome = engine::exhaustive_max(&f.payoff_table());
    (outcome.value, outcome.alice, outcome.bob)
}

/// Collins-Gisin coordinates of a behavior: the joint block drops the last
/// output of each party, then Alice's and Bob's marginal blocks follow.
/// Coordinate order: joint lexicographic in (x, y, a, b), then (x, a), then
/// (y, b), with inputs in input-set order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CGVector {
    pub entries: Vec<i64>,
}

/// dim(NS) = |X||Y|(|A|-1)(|B|-1) + |X|(|A|-1) + |Y|(|B|-1).
pub fn cg_dim(f: &BellFunctional) -> usize {
    let nx = f.alice_inputs.len();
    let ny = f.bob_inputs.len();
    let na = f.n_outputs() - 1;
    let nb = f.n_outputs() - 1;
    nx * ny * na * nb + nx * na + ny * nb
}

/// CG coordinates of the deterministic behavior given by 0-based position
/// choices per input.
pub fn to_cg(alice: &[usize], bob: &[usize], f: &BellFunctional) -> Result<CGVector, BellError> {
    if alice.len() != f.alice_inputs.len() || bob.len() != f.bob_inputs.len() {
        return Err(BellError::BadStrategy);
    }
    let na = f.n_outputs() - 1;
    let mut entries = Vec::with_capacity(cg_dim(f));
    for &fa in alice {
        for &gb in bob {
            for a in 0..na {
                for b in 0..na {
                    entries.push(i64::from(fa == a && gb == b));
                }
            }
        }
    }
    for &fa in alice {
        for a in 0..na {
            entries.push(i64::from(fa == a));
        }
    }
    for &gb in bob {
        for b in 0..na {
            entries.push(i64::from(gb == b));
        }
    }
    debug_assert_eq!(entries.len(), cg_dim(f));
    Ok(CGVector { entries })
}

/// Exact functional value of the maximally-entangled-state strategy built
/// from a KS realization: Σ c(a,b|x,y)·p(a,b|x,y) with
/// p = ⟨u,v⟩·conj(⟨u,v⟩) / (d‖u‖²‖v‖²), accumulated in Z[ζ] over a common
/// integer denominator. The total must land in Q even though individual
/// probabilities need not.
pub fn functional_quantum_value(f: &BellFunctional, k: &KSSet) -> Result<BigRational, BellError> {
    if k.n_lines != f.n_lines || k.dim != f.n_outputs() {
        return Err(BellError::RealizationShape(k.n_lines, k.dim));
    }
    let d = k.dim as i64;
    // ‖v‖² is a positive rational integer for these vectors
    let norm = |p: &Pair| -> BigInt {
        k.vectors[p]
            .inner_product(&k.vectors[p])
            .expect("same vector")
            .as_integer()
            .expect("norms are rational integers")
    };
    let mut lcm_norms = BigInt::one();
    for &x in f.alice_inputs.iter().chain(&f.bob_inputs) {
        for pos in 1..=f.n_outputs() as u16 {
            let p = Pair::new(x, position_to_partner(x, pos)).unwrap();
            lcm_norms = lcm_norms.lcm(&norm(&p));
        }
    }
    // common denominator D = d · L², accumulate numerator in Z[ζ]
    let order = k.root_order.max(1);
    let mut numer = crate::cyclotomic::CycInt::zero(order).unwrap();
    for &x in &f.alice_inputs {
        for &y in &f.bob_inputs {
            for a in 1..=f.n_outputs() as u16 {
                for b in 1..=f.n_outputs() as u16 {
                    let c = coefficient(a, b, x, y);
                    if c == 0 {
                        continue;
                    }
                    let pa = Pair::new(x, position_to_partner(x, a)).unwrap();
                    let pb = Pair::new(y, position_to_partner(y, b)).unwrap();
                    let z = k.vectors[&pa]
                        .inner_product(&k.vectors[&pb])
                        .expect("dimensions match")
                        .promote(order)
                        .expect("orders unify");
                    let zz = &z * &z.conj();
                    // weight c·L²/(‖u‖²‖v‖²) as an exact integer scalar
                    let scale = BigInt::from(c) * (&lcm_norms * &lcm_norms)
                        / (norm(&pa) * norm(&pb));
                    let scaled = crate::cyclotomic::CycInt::from_coeffs(
                        zz.coeffs().iter().map(|co| co * &scale).collect(),
                        order,
                    )
                    .unwrap();
                    numer = &numer + &scaled;
                }
            }
        }
    }
    let total = numer
        .as_integer()
        .expect("functional value on a quantum behavior must be rational here");
    Ok(BigRational::new(total, BigInt::from(d) * &lcm_norms * &lcm_norms))
}

/// Incremental exact rank over Q of integer vectors, kept as a pivot-sorted
/// primitive integer echelon basis. Insertion is fraction-free: eliminate
/// pivot columns in ascending order, divide by the content, and keep the
/// vector iff something nonzero survives (which decides membership in the
/// rational span exactly).
pub struct IncrementalRank {
    cols: usize,
    /// (pivot column, primitive row with first nonzero at the pivot),
    /// sorted by pivot column.
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl IncrementalRank {
    pub fn new(cols: usize) -> Self {
        IncrementalRank { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn normalize(v: &mut Vec<BigInt>) {
        let mut content = BigInt::zero();
        for e in v.iter() {
            content = content.gcd(e);
            if content.is_one() {
                return;
            }
        }
        if content.is_zero() || content.is_one() {
            return;
        }
        for e in v.iter_mut() {
            *e /= &content;
        }
    }

    /// Reduce v against the basis; returns the residue (primitive or zero).
    pub fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        for (pc, row) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let (vp, rp) = (v[*pc].clone(), row[*pc].clone());
            for (ve, re) in v.iter_mut().zip(row) {
                *ve = &*ve * &rp - re * &vp;
            }
            debug_assert!(v[*pc].is_zero());
            Self::normalize(&mut v);
        }
        v
    }

    /// Insert a vector; true iff it increased the rank.
    pub fn insert(&mut self, v: Vec<BigInt>) -> bool {
        let mut res = self.reduce(v);
        let Some(pivot) = res.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        if res[pivot].is_negative() {
            for e in res.iter_mut() {
                *e = -&*e;
            }
        }
        let at = self.rows.partition_point(|(pc, _)| *pc < pivot);
        self.rows.insert(at, (pivot, res));
        true
    }
}

/// Plain rational Gaussian elimination rank; brute-force oracle for
/// validating [`IncrementalRank`] on subsets.
pub fn rational_rank(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut mat: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|e| BigRational::from_integer(e.clone())).collect())
        .collect();
    let cols = mat[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pr);
        let inv = mat[rank][col].recip();
        for r in rank + 1..mat.len() {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] * &inv;
            for c in col..cols {
                let t = &factor * &mat[rank][c];
                mat[r][c] -= t;
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    rank
}

/// Everything the non-tightness certificate establishes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonTightness {
    pub n_lines: u16,
    pub bound: i64,
    pub dim_ns: usize,
    /// Deterministic points attaining the bound.
    pub n_saturating: usize,
    /// CG joint-block positions with zero coefficient over the ordered
    /// common-line input pairs; every saturating point vanishes there.
    pub forced_zeros: usize,
    /// Zero positions contributed by the first ordered common pair and its
    /// transpose alone (≥ 6(N-3)).
    pub forced_zeros_first_pair: usize,
    /// Every saturating point individually vanishes on all forced-zero
    /// coordinates (the per-point form of the zero argument).
    pub per_point_zeros: bool,
    /// Deterministic pairs winning both common diagonals and losing at
    /// (x',y') also lose at (y',x'), checked exhaustively.
    pub symmetry_lemma: bool,
    /// Exact affine rank of the saturating set in CG coordinates.
    pub affine_rank: usize,
    /// rank < dim_ns - 1 certifies the inequality is not a facet.
    pub tight: bool,
    /// False when the enumeration budget cut the saturating set; the
    /// certificate is then incomplete.
    pub complete: bool,
}

/// Budget for the certificate enumeration.
#[derive(Debug, Clone, Copy)]
pub struct CertificateBudget {
    /// Hard cap on the number of saturating points processed.
    pub max_saturating: usize,
}

impl Default for CertificateBudget {
    fn default() -> Self {
        CertificateBudget {
            max_saturating: 2_000_000,
        }
    }
}

/// Produce the non-tightness certificate:
///
/// 1. verify the symmetry lemma on common-line inputs exhaustively;
/// 2. enumerate all saturating deterministic points (value = local bound);
/// 3. verify each vanishes at every zero-coefficient CG position of the
///    ordered common-line pairs, and count those positions;
/// 4. compute the exact affine rank of the saturating set and compare with
///    dim(NS) - 1.
pub fn nontightness_certificate(
    f: &BellFunctional,
    budget: CertificateBudget,
) -> NonTightness {
    let outs = f.n_outputs() as u16;
    let common = f.common_lines();

    // (1) symmetry lemma, exhaustive over the relevant output values
    let mut symmetry = true;
    for &xp in &common {
        for &yp in &common {
            if xp == yp {
                continue;
            }
            for fx in 1..=outs {
                for gx in 1..=outs {
                    if coefficient(fx, gx, xp, xp) != 1 {
                        continue;
                    }
                    for fy in 1..=outs {
                        for gy in 1..=outs {
                            if coefficient(fy, gy, yp, yp) != 1 {
                                continue;
                            }
                            if coefficient(fx, gy, xp, yp) <= 0
                                && coefficient(fy, gx, yp, xp) > 0
                            {
                                symmetry = false;
                            }
                        }
                    }
                }
            }
        }
    }

    // forced-zero CG positions: zero coefficients in the (|A|-1)×(|B|-1)
    // joint block at ordered common-line pairs with x' != y'
    let na = f.n_outputs() - 1;
    let mut zero_positions: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut first_pair_zeros = 0usize;
    let mut first_pair: Option<(u16, u16)> = None;
    for &xp in &common {
        for &yp in &common {
            if xp == yp {
                continue;
            }
            for a in 0..na {
                for b in 0..na {
                    if coefficient(a as u16 + 1, b as u16 + 1, xp, yp) == 0 {
                        let xi = f.alice_inputs.iter().position(|&x| x == xp).unwrap();
                        let yi = f.bob_inputs.iter().position(|&y| y == yp).unwrap();
                        zero_positions.push((xi, yi, a, b));
                        let fp = *first_pair.get_or_insert((xp.min(yp), yp.max(xp)));
                        if fp == (xp.min(yp), yp.max(xp)) {
                            first_pair_zeros += 1;
                        }
                    }
                }
            }
        }
    }

    // (2) saturating enumeration
    let table = f.payoff_table();
    let outcome = engine::exhaustive_max(&table);
    let bound = outcome.value;
    let sat = engine::saturators(&table, bound);

    // (3) per-point zeros and (4) exact affine rank
    let dim_ns = cg_dim(f);
    let joint_index = |xi: usize, yi: usize, a: usize, b: usize| {
        ((xi * f.bob_inputs.len() + yi) * na + a) * na + b
    };
    let mut per_point_zeros = true;
    let mut n_saturating = 0usize;
    let mut complete = true;
    let mut rank = IncrementalRank::new(dim_ns);
    let mut base: Option<Vec<i64>> = None;
    'outer: for (alice, argmaxes) in &sat {
        // walk the product of per-input optimal Bob responses
        let mut idx = vec![0usize; argmaxes.len()];
        loop {
            let bob: Vec<usize> = idx.iter().zip(argmaxes).map(|(&i, s)| s[i]).collect();
            n_saturating += 1;
            if n_saturating > budget.max_saturating {
                complete = false;
                n_saturating -= 1;
                break 'outer;
            }
            let cg = to_cg(alice, &bob, f).expect("strategies cover inputs");
            for &(xi, yi, a, b) in &zero_positions {
                if cg.entries[joint_index(xi, yi, a, b)] != 0 {
                    per_point_zeros = false;
                }
            }
            match &base {
                None => base = Some(cg.entries.clone()),
                Some(b0) => {
                    let diff: Vec<BigInt> = cg
                        .entries
                        .iter()
                        .zip(b0)
                        .map(|(e, b)| BigInt::from(e - b))
                        .collect();
                    rank.insert(diff);
                }
            }
            // increment the mixed-radix index
            let mut pos = idx.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < argmaxes[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }

    let affine_rank = rank.rank();
    NonTightness {
        n_lines: f.n_lines,
        bound,
        dim_ns,
        n_saturating,
        forced_zeros: zero_positions.len(),
        forced_zeros_first_pair: first_pair_zeros,
        per_point_zeros,
        symmetry_lemma: symmetry,
        affine_rank,
        tight: affine_rank >= dim_ns - 1,
        complete,
    }
}
