//! KS sets over the Johnson configuration J(N,2): construction from
//! S-Hadamard matrices, orthogonality/rank verification, parity certificates,
//! exhaustive assignment search, and faithfulness analysis.
//!
//! A KS set here is a family of nonzero vectors indexed by unordered pairs
//! {i,j} ⊆ {1..N} together with its list of orthogonal bases, where basis b_r
//! collects the vectors {r,j} for j ≠ r. Every orthogonality decision runs
//! through exact cyclotomic arithmetic.

pub mod golden;

use crate::cyclotomic::{field, CycError, CycInt, CycVector};
use crate::hadamard::{normalize_shadamard, SHadamard};
use crate::report::VerificationReport;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KsError {
    #[error("pair indices must differ")]
    DegenerateLabel,
    #[error("S-Hadamard order must be even to close the parity argument, got {0}")]
    OddOrder(usize),
    #[error("vector for pair {0} has dimension {1}, expected {2}")]
    WrongDimension(Pair, usize, usize),
    #[error("cyclotomic arithmetic: {0}")]
    Cyc(#[from] CycError),
    #[error("malformed KS set: {0}")]
    Malformed(String),
}

/// An unordered pair {i,j} of 1-based line indices, stored with i < j.
/// `v^{i,j}` and `v^{j,i}` name the same vector, which this type makes
/// structural.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[u16; 2]", into = "[u16; 2]")]
pub struct Pair {
    i: u16,
    j: u16,
}

impl Pair {
    pub fn new(a: u16, b: u16) -> Result<Self, KsError> {
        if a == b {
            return Err(KsError::DegenerateLabel);
        }
        Ok(Pair {
            i: a.min(b),
            j: a.max(b),
        })
    }

    pub fn small(&self) -> u16 {
        self.i
    }

    pub fn large(&self) -> u16 {
        self.j
    }

    pub fn contains(&self, x: u16) -> bool {
        self.i == x || self.j == x
    }

    /// The partner of x in this pair, if x belongs to it.
    pub fn other(&self, x: u16) -> Option<u16> {
        if self.i == x {
            Some(self.j)
        } else if self.j == x {
            Some(self.i)
        } else {
            None
        }
    }

    /// Size of the intersection with another pair (0, 1, or 2).
    pub fn meet(&self, other: &Pair) -> usize {
        usize::from(other.contains(self.i)) + usize::from(other.contains(self.j))
    }

    /// All pairs {i,j} ⊆ {1..n} in lexicographic order.
    pub fn all(n: u16) -> impl Iterator<Item = Pair> {
        (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| Pair { i, j }))
    }
}

impl TryFrom<[u16; 2]> for Pair {
    type Error = KsError;
    fn try_from(v: [u16; 2]) -> Result<Self, KsError> {
        Pair::new(v[0], v[1])
    }
}

impl From<Pair> for [u16; 2] {
    fn from(p: Pair) -> [u16; 2] {
        [p.i, p.j]
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.i, self.j)
    }
}

/// One coordinate of a KS vector: zero, a root of unity ζ^e (with respect to
/// the vector's root order), or a plain integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VecEntry {
    Zero,
    Root(u32),
    Int(i64),
}

/// A KS vector in compact form. All orthogonality decisions still reduce to
/// exact [`CycInt`] zero tests; this representation just keeps the bulk data
/// small and the inner products cheap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KsVector {
    root_order: u32,
    entries: Vec<VecEntry>,
}

impl KsVector {
    pub fn from_exponents(root_order: u32, exps: &[u32]) -> Self {
        KsVector {
            root_order,
            entries: exps.iter().map(|&e| VecEntry::Root(e % root_order)).collect(),
        }
    }

    /// Exponent vector with explicit zero coordinates.
    pub fn from_sparse_exponents(root_order: u32, exps: &[Option<u32>]) -> Self {
        KsVector {
            root_order,
            entries: exps
                .iter()
                .map(|e| match e {
                    Some(k) => VecEntry::Root(k % root_order),
                    None => VecEntry::Zero,
                })
                .collect(),
        }
    }

    pub fn from_ints(ints: &[i64]) -> Self {
        KsVector {
            root_order: 1,
            entries: ints
                .iter()
                .map(|&v| if v == 0 { VecEntry::Zero } else { VecEntry::Int(v) })
                .collect(),
        }
    }

    pub fn from_entries(root_order: u32, entries: Vec<VecEntry>) -> Self {
        KsVector {
            root_order,
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn entries(&self) -> &[VecEntry] {
        &self.entries
    }

    pub fn is_zero_vector(&self) -> bool {
        self.entries.iter().all(|e| matches!(e, VecEntry::Zero))
    }

    /// Entrywise product with exponent addition (both vectors interpreted
    /// over the same root order).
    pub fn hadamard(&self, other: &KsVector) -> Result<KsVector, KsError> {
        if self.dim() != other.dim() {
            return Err(KsError::Cyc(CycError::ShapeMismatch(self.dim(), other.dim())));
        }
        if self.root_order != other.root_order {
            return Err(KsError::Cyc(CycError::OrderMismatch(
                self.root_order,
                other.root_order,
            )));
        }
        let n = self.root_order;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| match (a, b) {
                (VecEntry::Zero, _) | (_, VecEntry::Zero) => VecEntry::Zero,
                (VecEntry::Root(x), VecEntry::Root(y)) => VecEntry::Root((x + y) % n),
                (VecEntry::Int(x), VecEntry::Int(y)) => VecEntry::Int(x * y),
                (VecEntry::Int(x), VecEntry::Root(y)) | (VecEntry::Root(y), VecEntry::Int(x)) => {
                    if *x == 1 {
                        VecEntry::Root(*y)
                    } else {
                        VecEntry::Int(0) // unreachable for the constructions here
                    }
                }
            })
            .collect();
        Ok(KsVector {
            root_order: n,
            entries,
        })
    }

    /// Re-express over root order m (the current order must divide m).
    pub fn promote(&self, m: u32) -> Result<KsVector, KsError> {
        if m % self.root_order != 0 {
            return Err(KsError::Cyc(CycError::OrderMismatch(self.root_order, m)));
        }
        let stride = m / self.root_order;
        Ok(KsVector {
            root_order: m,
            entries: self
                .entries
                .iter()
                .map(|e| match e {
                    VecEntry::Root(k) => VecEntry::Root(k * stride),
                    other => *other,
                })
                .collect(),
        })
    }

    /// Materialize as a full cyclotomic vector.
    pub fn to_cyc(&self) -> CycVector {
        let order = self.root_order.max(1);
        let entries = self
            .entries
            .iter()
            .map(|e| match e {
                VecEntry::Zero => CycInt::zero(order).unwrap(),
                VecEntry::Root(k) => CycInt::root(order, *k as i64).unwrap(),
                VecEntry::Int(v) => CycInt::from_integer(*v, order).unwrap(),
            })
            .collect();
        CycVector::new(entries).expect("uniform order by construction")
    }

    /// Exact Hermitian inner product ⟨self, other⟩ (conjugate-linear in the
    /// first argument), with root orders unified by promotion. Produces the
    /// same cyclotomic integer as the [`CycVector`] route, without
    /// materializing full coefficient vectors per entry.
    pub fn inner_product(&self, other: &KsVector) -> Result<CycInt, KsError> {
        if self.dim() != other.dim() {
            return Err(KsError::Cyc(CycError::ShapeMismatch(self.dim(), other.dim())));
        }
        let n = self.root_order.lcm(&other.root_order);
        if n % self.root_order != 0 || n % other.root_order != 0 {
            return Err(KsError::Cyc(CycError::OrderMismatch(
                self.root_order,
                other.root_order,
            )));
        }
        let su = (n / self.root_order) as u64;
        let sv = (n / other.root_order) as u64;
        let n64 = n as u64;
        let mut acc = vec![BigInt::zero(); n as usize];
        for (a, b) in self.entries.iter().zip(&other.entries) {
            match (a, b) {
                (VecEntry::Zero, _) | (_, VecEntry::Zero) => {}
                (VecEntry::Root(x), VecEntry::Root(y)) => {
                    let e = (*y as u64 * sv % n64 + n64 - *x as u64 * su % n64) % n64;
                    acc[e as usize] += 1;
                }
                (VecEntry::Root(x), VecEntry::Int(m)) => {
                    let e = (n64 - *x as u64 * su % n64) % n64;
                    acc[e as usize] += *m;
                }
                (VecEntry::Int(m), VecEntry::Root(y)) => {
                    let e = *y as u64 * sv % n64;
                    acc[e as usize] += *m;
                }
                (VecEntry::Int(m1), VecEntry::Int(m2)) => {
                    acc[0] += BigInt::from(*m1) * BigInt::from(*m2);
                }
            }
        }
        Ok(CycInt::from_coeffs(acc, n)?)
    }

    /// True iff the two vectors are exactly orthogonal.
    pub fn orthogonal_to(&self, other: &KsVector) -> Result<bool, KsError> {
        Ok(self.inner_product(other)?.is_zero())
    }
}

/// A labeled family of vectors over J(N,2) with its orthogonal bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSSet {
    pub n_lines: u16,
    pub dim: usize,
    pub root_order: u32,
    pub vectors: BTreeMap<Pair, KsVector>,
    pub bases: Vec<Vec<Pair>>,
}

/// The standard basis list for J(N,2): b_r = [{r,j} : j ≠ r], partners
/// ascending, r = 1..N.
pub fn standard_bases(n_lines: u16) -> Vec<Vec<Pair>> {
    (1..=n_lines)
        .map(|r| {
            (1..=n_lines)
                .filter(|&j| j != r)
                .map(|j| Pair::new(r, j).unwrap())
                .collect()
        })
        .collect()
}

impl KSSet {
    pub fn vector(&self, p: &Pair) -> Option<&KsVector> {
        self.vectors.get(p)
    }

    /// How many bases each vector label appears in.
    pub fn basis_incidence(&self) -> BTreeMap<Pair, usize> {
        let mut counts: BTreeMap<Pair, usize> = BTreeMap::new();
        for basis in &self.bases {
            for p in basis {
                *counts.entry(*p).or_insert(0) += 1;
            }
        }
        counts
    }
}

/// Construct the KS set of an even-order S-Hadamard matrix: with rows
/// h_1..h_n of the normalized matrix,
///
/// ```text
///   v^{1,s} = h_{s-1}                  s = 2..n+1
///   v^{2,s} = h_{s-1} ∘ h_{s-1}        s = 3..n+1
///   v^{r,s} = h_{r-1} ∘ h_{s-1}        3 ≤ r < s ≤ n+1
/// ```
///
/// on N = n+1 lines in dimension n, with the standard bases. The input is
/// normalized internally first, so the output is invariant under any prior
/// row-1 shift of the matrix.
pub fn lisonek_construct(s: &SHadamard) -> Result<KSSet, KsError> {
    let n = s.order();
    if n % 2 != 0 {
        return Err(KsError::OddOrder(n));
    }
    let s = if s.normalized {
        s.clone()
    } else {
        normalize_shadamard(s)
    };
    let g = s.root_order;
    let n_lines = (n + 1) as u16;
    let row = |idx1: usize| KsVector::from_exponents(g, &s.rows[idx1 - 1]);

    let mut vectors = BTreeMap::new();
    for t in 2..=n + 1 {
        vectors.insert(Pair::new(1, t as u16).unwrap(), row(t - 1));
    }
    for t in 3..=n + 1 {
        let h = row(t - 1);
        vectors.insert(Pair::new(2, t as u16).unwrap(), h.hadamard(&h)?);
    }
    for r in 3..=n + 1 {
        for t in r + 1..=n + 1 {
            vectors.insert(
                Pair::new(r as u16, t as u16).unwrap(),
                row(r - 1).hadamard(&row(t - 1))?,
            );
        }
    }
    Ok(KSSet {
        n_lines,
        dim: n,
        root_order: g,
        vectors,
        bases: standard_bases(n_lines),
    })
}

/// Verify that every listed basis really is one: present and nonzero
/// vectors, exact pairwise orthogonality, and full rank d by Gaussian
/// elimination over Q(ζ_n) represented as rational coefficient blocks.
/// Violations carry the 1-based basis number.
pub fn verify_bases(k: &KSSet) -> VerificationReport {
    let mut report = VerificationReport::new(format!(
        "{} bases of the {}-line KS set in dimension {}",
        k.bases.len(),
        k.n_lines,
        k.dim
    ));
    let fld = field::CycField::new(k.root_order.max(1));
    let per_basis: Vec<Vec<(String, Vec<usize>)>> = k
        .bases
        .par_iter()
        .enumerate()
        .map(|(bi, basis)| {
            let bnum = bi + 1;
            let mut bad = Vec::new();
            if basis.len() != k.dim {
                bad.push((
                    format!("basis {} has {} vectors, expected {}", bnum, basis.len(), k.dim),
                    vec![bnum],
                ));
            }
            let mut vecs = Vec::with_capacity(basis.len());
            for p in basis {
                match k.vectors.get(p) {
                    None => bad.push((format!("basis {bnum}: no vector for {p}"), vec![bnum])),
                    Some(v) if v.is_zero_vector() => {
                        bad.push((format!("basis {bnum}: zero vector at {p}"), vec![bnum]))
                    }
                    Some(v) if v.dim() != k.dim => bad.push((
                        format!("basis {bnum}: {p} has dimension {}", v.dim()),
                        vec![bnum],
                    )),
                    Some(v) => vecs.push((*p, v)),
                }
            }
            for a in 0..vecs.len() {
                for b in a + 1..vecs.len() {
                    match vecs[a].1.inner_product(vecs[b].1) {
                        Ok(ip) if ip.is_zero() => {}
                        Ok(_) => bad.push((
                            format!(
                                "basis {bnum}: {} and {} not orthogonal",
                                vecs[a].0, vecs[b].0
                            ),
                            vec![bnum],
                        )),
                        Err(e) => bad.push((format!("basis {bnum}: {e}"), vec![bnum])),
                    }
                }
            }
            if bad.is_empty() {
                let rows: Vec<Vec<field::FieldElem>> = vecs
                    .iter()
                    .map(|(_, v)| {
                        v.to_cyc()
                            .entries()
                            .iter()
                            .map(|e| {
                                fld.from_cyc(&e.promote(fld.order()).expect("orders unify"))
                            })
                            .collect()
                    })
                    .collect();
                let rank = field::rank(&fld, rows);
                if rank != k.dim {
                    bad.push((
                        format!("basis {bnum} has rank {rank}, expected {}", k.dim),
                        vec![bnum],
                    ));
                }
            }
            bad
        })
        .collect();
    for bad in per_basis {
        for (what, items) in bad {
            report.push(what, items);
        }
    }
    report
}

/// Parity certificate: an odd number of bases with every vector in an even
/// number of them means summing the per-basis constraints Σf = 1 gives an
/// odd total on one side and an even total on the other, so no KS
/// assignment exists.
pub fn parity_check(k: &KSSet) -> bool {
    k.bases.len() % 2 == 1 && k.basis_incidence().values().all(|&c| c % 2 == 0)
}

/// Search budget for exhaustive runs; exceeding it yields an indeterminate
/// outcome, which is distinct from a proof of none.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: Option<f64>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 200_000_000,
            max_seconds: None,
        }
    }
}

/// Outcome of [`ks_assignment_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A satisfying assignment: the labels mapped to 1.
    Assignment(Vec<Pair>),
    /// The search tree was exhausted without finding an assignment.
    ProofOfNone { nodes: u64 },
    /// Budget exceeded before the tree was exhausted.
    Indeterminate { nodes: u64 },
}

/// Backtracking search for a KS assignment f: one 1-valued vector per basis,
/// no two 1-valued vectors orthogonal. With `use_full_orthogonality` the
/// orthogonality constraint ranges over all exactly-orthogonal label pairs
/// (covering non-faithful extras); otherwise only over pairs that share a
/// stored basis. Bases are processed in stored order and candidates in
/// stored order, so transcripts are deterministic.
pub fn ks_assignment_search(
    k: &KSSet,
    use_full_orthogonality: bool,
    budget: SearchBudget,
) -> SearchOutcome {
    let labels: Vec<Pair> = k.vectors.keys().copied().collect();
    let index: BTreeMap<Pair, usize> = labels
        .iter()
        .enumerate()
        .map(|(idx, p)| (*p, idx))
        .collect();
    let bases_idx: Vec<Vec<usize>> = k
        .bases
        .iter()
        .map(|b| b.iter().map(|p| index[p]).collect())
        .collect();
    let in_bases: Vec<Vec<usize>> = {
        let mut v = vec![Vec::new(); labels.len()];
        for (bi, b) in bases_idx.iter().enumerate() {
            for &l in b {
                v[l].push(bi);
            }
        }
        v
    };
    // conflict adjacency between labels
    let mut conflicts: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); labels.len()];
    if use_full_orthogonality {
        let pairs: Vec<(usize, usize)> = (0..labels.len())
            .flat_map(|a| (a + 1..labels.len()).map(move |b| (a, b)))
            .collect();
        let orth: Vec<(usize, usize)> = pairs
            .par_iter()
            .filter(|&&(a, b)| {
                k.vectors[&labels[a]]
                    .orthogonal_to(&k.vectors[&labels[b]])
                    .unwrap_or(false)
            })
            .copied()
            .collect();
        for (a, b) in orth {
            conflicts[a].insert(b);
            conflicts[b].insert(a);
        }
    } else {
        for b in &bases_idx {
            for x in 0..b.len() {
                for y in x + 1..b.len() {
                    conflicts[b[x]].insert(b[y]);
                    conflicts[b[y]].insert(b[x]);
                }
            }
        }
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Free,
        One,
        Zero,
    }

    /// Trail entries: `Label(l)` undoes a mark, `Satisfied(b)` undoes a
    /// basis-satisfied flag.
    enum Step {
        Label(usize),
        Satisfied(usize),
    }

    struct Ctx<'a> {
        bases: &'a [Vec<usize>],
        in_bases: &'a [Vec<usize>],
        conflicts: &'a [Vec<usize>],
        marks: Vec<Mark>,
        satisfied: Vec<bool>,
        trail: Vec<Step>,
        nodes: u64,
        budget: SearchBudget,
        started: Instant,
    }

    impl Ctx<'_> {
        fn out_of_budget(&self) -> bool {
            self.nodes > self.budget.max_nodes
                || self
                    .budget
                    .max_seconds
                    .map_or(false, |s| self.started.elapsed().as_secs_f64() > s)
        }

        /// Assign label := 1 and propagate forced zeros. False on conflict;
        /// the caller rewinds the trail either way.
        fn set_one(&mut self, label: usize) -> bool {
            match self.marks[label] {
                Mark::One => return true,
                Mark::Zero => return false,
                Mark::Free => {}
            }
            self.marks[label] = Mark::One;
            self.trail.push(Step::Label(label));
            for idx in 0..self.conflicts[label].len() {
                let c = self.conflicts[label][idx];
                if !self.set_zero(c) {
                    return false;
                }
            }
            for idx in 0..self.in_bases[label].len() {
                let bi = self.in_bases[label][idx];
                if self.satisfied[bi] {
                    continue;
                }
                self.satisfied[bi] = true;
                self.trail.push(Step::Satisfied(bi));
                for pos in 0..self.bases[bi].len() {
                    let l = self.bases[bi][pos];
                    if l != label && !self.set_zero(l) {
                        return false;
                    }
                }
            }
            true
        }

        fn set_zero(&mut self, label: usize) -> bool {
            match self.marks[label] {
                Mark::One => false,
                Mark::Zero => true,
                Mark::Free => {
                    self.marks[label] = Mark::Zero;
                    self.trail.push(Step::Label(label));
                    true
                }
            }
        }

        fn rewind(&mut self, to: usize) {
            while self.trail.len() > to {
                match self.trail.pop().unwrap() {
                    Step::Label(l) => self.marks[l] = Mark::Free,
                    Step::Satisfied(b) => self.satisfied[b] = false,
                }
            }
        }

        fn solve(&mut self) -> Result<bool, ()> {
            self.nodes += 1;
            if self.nodes % 4096 == 0 && self.out_of_budget() {
                return Err(());
            }
            let Some(bi) = (0..self.bases.len()).find(|&b| !self.satisfied[b]) else {
                return Ok(true);
            };
            for pos in 0..self.bases[bi].len() {
                let label = self.bases[bi][pos];
                if self.marks[label] != Mark::Free {
                    continue;
                }
                let mark = self.trail.len();
                if self.set_one(label) && self.solve()? {
                    return Ok(true);
                }
                self.rewind(mark);
            }
            Ok(false)
        }
    }

    let conflicts_vec: Vec<Vec<usize>> = conflicts
        .into_iter()
        .map(|s| s.into_iter().collect())
        .collect();
    let mut ctx = Ctx {
        bases: &bases_idx,
        in_bases: &in_bases,
        conflicts: &conflicts_vec,
        marks: vec![Mark::Free; labels.len()],
        satisfied: vec![false; bases_idx.len()],
        trail: Vec::new(),
        nodes: 0,
        budget,
        started: Instant::now(),
    };
    match ctx.solve() {
        Ok(true) => {
            let ones = ctx
                .marks
                .iter()
                .enumerate()
                .filter(|(_, m)| matches!(m, Mark::One))
                .map(|(idx, _)| labels[idx])
                .collect();
            SearchOutcome::Assignment(ones)
        }
        Ok(false) => SearchOutcome::ProofOfNone { nodes: ctx.nodes },
        Err(()) => SearchOutcome::Indeterminate { nodes: ctx.nodes },
    }
}

/// Orthogonality graph: one vertex per labeled vector, an edge exactly when
/// the inner product is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityGraph {
    pub labels: Vec<Pair>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl OrthogonalityGraph {
    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    /// Edges as label pairs.
    pub fn edge_labels(&self) -> BTreeSet<(Pair, Pair)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.labels[a], self.labels[b]))
            .collect()
    }
}

pub fn orthogonality_graph(k: &KSSet) -> OrthogonalityGraph {
    let labels: Vec<Pair> = k.vectors.keys().copied().collect();
    let pairs: Vec<(usize, usize)> = (0..labels.len())
        .flat_map(|a| (a + 1..labels.len()).map(move |b| (a, b)))
        .collect();
    let edges: BTreeSet<(usize, usize)> = pairs
        .par_iter()
        .filter(|&&(a, b)| {
            k.vectors[&labels[a]]
                .orthogonal_to(&k.vectors[&labels[b]])
                .unwrap_or(false)
        })
        .copied()
        .collect();
    OrthogonalityGraph { labels, edges }
}

/// Check the orthogonal-representation property against J(N,2): every pair
/// of labels that intersect (adjacent vertices) must carry exactly
/// orthogonal vectors. Runs over all meeting pairs in parallel.
pub fn verify_or_property(k: &KSSet) -> VerificationReport {
    let mut report = VerificationReport::new(format!(
        "orthogonal representation of J({},2)",
        k.n_lines
    ));
    let labels: Vec<Pair> = k.vectors.keys().copied().collect();
    let pairs: Vec<(usize, usize)> = (0..labels.len())
        .flat_map(|a| (a + 1..labels.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| labels[a].meet(&labels[b]) > 0)
        .collect();
    let mut bad: Vec<(Pair, Pair)> = pairs
        .par_iter()
        .filter(|&&(a, b)| {
            !k.vectors[&labels[a]]
                .orthogonal_to(&k.vectors[&labels[b]])
                .unwrap_or(false)
        })
        .map(|&(a, b)| (labels[a], labels[b]))
        .collect();
    bad.sort_unstable();
    for (p, q) in bad {
        report.push(format!("adjacent labels {p}, {q} are not orthogonal"), vec![]);
    }
    report
}

/// All label pairs that are disjoint in J(N,2) (hence non-adjacent) yet
/// exactly orthogonal — the obstructions to faithfulness. Empty iff the
/// orthogonal representation is faithful.
pub fn faithfulness_check(k: &KSSet) -> Vec<(Pair, Pair)> {
    let labels: Vec<Pair> = k.vectors.keys().copied().collect();
    let pairs: Vec<(usize, usize)> = (0..labels.len())
        .flat_map(|a| (a + 1..labels.len()).map(move |b| (a, b)))
        .collect();
    let mut extra: Vec<(Pair, Pair)> = pairs
        .par_iter()
        .filter(|&&(a, b)| {
            labels[a].meet(&labels[b]) == 0
                && k.vectors[&labels[a]]
                    .orthogonal_to(&k.vectors[&labels[b]])
                    .unwrap_or(false)
        })
        .map(|&(a, b)| (labels[a], labels[b]))
        .collect();
    extra.sort_unstable();
    extra
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct VectorFile {
    pair: [u16; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    exponents: Option<Vec<Option<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coeffs: Option<Vec<i64>>,
}

/// On-disk schema for KS sets.
#[derive(Serialize, Deserialize)]
pub struct KsFile {
    pub n_lines: u16,
    pub dim: usize,
    pub root_order: u32,
    vectors: Vec<VectorFile>,
    bases: Vec<Vec<[u16; 2]>>,
}

impl From<&KSSet> for KsFile {
    fn from(k: &KSSet) -> KsFile {
        let vectors = k
            .vectors
            .iter()
            .map(|(p, v)| {
                let integral = v
                    .entries()
                    .iter()
                    .all(|e| matches!(e, VecEntry::Zero | VecEntry::Int(_)));
                if integral {
                    VectorFile {
                        pair: (*p).into(),
                        exponents: None,
                        coeffs: Some(
                            v.entries()
                                .iter()
                                .map(|e| match e {
                                    VecEntry::Int(v) => *v,
                                    _ => 0,
                                })
                                .collect(),
                        ),
                    }
                } else {
                    VectorFile {
                        pair: (*p).into(),
                        exponents: Some(
                            v.entries()
                                .iter()
                                .map(|e| match e {
                                    VecEntry::Zero => None,
                                    VecEntry::Root(k) => Some(*k),
                                    VecEntry::Int(1) => Some(0),
                                    VecEntry::Int(_) => None, // lossy; not produced by the constructions
                                })
                                .collect(),
                        ),
                        coeffs: None,
                    }
                }
            })
            .collect();
        KsFile {
            n_lines: k.n_lines,
            dim: k.dim,
            root_order: k.root_order,
            vectors,
            bases: k
                .bases
                .iter()
                .map(|b| b.iter().map(|p| (*p).into()).collect())
                .collect(),
        }
    }
}

impl TryFrom<KsFile> for KSSet {
    type Error = KsError;
    fn try_from(f: KsFile) -> Result<KSSet, KsError> {
        let mut vectors = BTreeMap::new();
        for vf in f.vectors {
            let pair = Pair::new(vf.pair[0], vf.pair[1])?;
            let v = match (&vf.exponents, &vf.coeffs) {
                (Some(exps), None) => KsVector::from_sparse_exponents(f.root_order, exps),
                (None, Some(ints)) => KsVector::from_ints(ints),
                _ => {
                    return Err(KsError::Malformed(format!(
                        "vector {pair} must have exactly one of exponents/coeffs"
                    )))
                }
            };
            if v.dim() != f.dim {
                return Err(KsError::WrongDimension(pair, v.dim(), f.dim));
            }
            if vectors.insert(pair, v).is_some() {
                return Err(KsError::Malformed(format!("duplicate vector for {pair}")));
            }
        }
        let mut bases = Vec::new();
        for b in f.bases {
            let mut basis = Vec::new();
            for raw in b {
                let p = Pair::new(raw[0], raw[1])?;
                if !vectors.contains_key(&p) {
                    return Err(KsError::Malformed(format!("basis references missing {p}")));
                }
                basis.push(p);
            }
            bases.push(basis);
        }
        Ok(KSSet {
            n_lines: f.n_lines,
            dim: f.dim,
            root_order: f.root_order,
            vectors,
            bases,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::inner_product as cyc_inner;
    use crate::hadamard::{gh_to_shadamard, jungnickel_gh};
    use num_bigint::BigInt;

    fn j7() -> KSSet {
        lisonek_construct(&gh_to_shadamard(&jungnickel_gh(3, 2).unwrap()).unwrap()).unwrap()
    }

    fn j11() -> KSSet {
        lisonek_construct(&gh_to_shadamard(&jungnickel_gh(5, 2).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn constructed_j7_matches_golden_table() {
        let k = j7();
        assert_eq!(k.n_lines, 7);
        assert_eq!(k.vectors.len(), 21);
        let golden = golden::table_j7();
        assert_eq!(k, golden);
        // spot value
        let v14 = k.vector(&Pair::new(1, 4).unwrap()).unwrap();
        assert_eq!(v14, &KsVector::from_exponents(3, &[1, 0, 2, 2, 1, 0]));
    }

    #[test]
    fn constructed_j11_matches_golden_table() {
        let k = j11();
        assert_eq!(k.n_lines, 11);
        assert_eq!(k.vectors.len(), 55);
        assert_eq!(k, golden::table_j11());
        let v34 = k.vector(&Pair::new(3, 4).unwrap()).unwrap();
        assert_eq!(
            v34,
            &KsVector::from_exponents(5, &[0, 3, 1, 4, 2, 0, 3, 1, 4, 2])
        );
    }

    #[test]
    fn construction_invariant_under_prenormalization() {
        let s = gh_to_shadamard(&jungnickel_gh(3, 2).unwrap()).unwrap();
        let mut shifted = s.clone();
        for row in &mut shifted.rows {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (*e + (1 + j as u32) % 3) % 3;
            }
        }
        shifted.normalized = false;
        assert_eq!(lisonek_construct(&shifted).unwrap(), lisonek_construct(&s).unwrap());
    }

    #[test]
    fn odd_order_is_rejected() {
        let s = SHadamard {
            root_order: 3,
            rows: vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]],
            normalized: true,
        };
        assert_eq!(lisonek_construct(&s), Err(KsError::OddOrder(3)));
    }

    #[test]
    fn bases_verify_for_golden_sets() {
        for (k, nb, sz) in [(j7(), 7, 6), (j11(), 11, 10), (golden::table_j9(), 9, 8)] {
            let report = verify_bases(&k);
            assert!(report.is_pass(), "{report}");
            assert_eq!(k.bases.len(), nb);
            assert!(k.bases.iter().all(|b| b.len() == sz));
        }
    }

    #[test]
    fn first_basis_of_j7_is_rows_of_matrix() {
        // b_1 = {v^{1,s}} are the matrix rows; pairwise orthogonal via HH*=6I
        let k = j7();
        let b1 = &k.bases[0];
        for a in 0..b1.len() {
            for b in a + 1..b1.len() {
                assert!(k.vectors[&b1[a]].orthogonal_to(&k.vectors[&b1[b]]).unwrap());
            }
        }
    }

    #[test]
    fn tampered_set_fails_in_touched_bases() {
        let mut k = j7();
        let v13 = k.vectors[&Pair::new(1, 3).unwrap()].clone();
        k.vectors.insert(Pair::new(3, 4).unwrap(), v13);
        let report = verify_bases(&k);
        assert!(!report.is_pass());
        assert!(report.involves(3) && report.involves(4));
        assert!(!report.involves(1) && !report.involves(2));
    }

    #[test]
    fn parity_certificates() {
        assert!(parity_check(&j7()));
        assert!(parity_check(&j11()));
        assert!(parity_check(&golden::table_j9()));
        // deleting one basis flips the parity certificate
        let mut k = j7();
        k.bases.pop();
        assert!(!parity_check(&k));
    }

    #[test]
    fn norms_equal_dimension_on_golden_vectors() {
        for k in [j7(), j11()] {
            for v in k.vectors.values() {
                let norm = v.inner_product(v).unwrap();
                assert_eq!(norm.as_integer().unwrap(), BigInt::from(k.dim as i64));
            }
        }
    }

    #[test]
    fn fast_inner_product_agrees_with_cyclotomic_route() {
        let k = j11();
        let labels: Vec<Pair> = k.vectors.keys().copied().collect();
        for a in 0..6 {
            for b in 0..labels.len() {
                let u = &k.vectors[&labels[a]];
                let v = &k.vectors[&labels[b]];
                let fast = u.inner_product(v).unwrap();
                let slow = cyc_inner(&u.to_cyc(), &v.to_cyc()).unwrap();
                assert_eq!(fast, slow);
            }
        }
        // and across root orders (integer vs exponent vectors)
        let j9 = golden::table_j9();
        let intvec = j9.vectors.values().next().unwrap();
        let expvec = KsVector::from_exponents(5, &[0, 1, 2, 3, 4, 0, 1, 2]);
        let fast = intvec.inner_product(&expvec).unwrap();
        let slow = cyc_inner(&intvec.to_cyc(), &expvec.to_cyc()).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn ks_search_finds_no_assignment_for_golden_sets() {
        for k in [j7(), golden::table_j9()] {
            for full in [false, true] {
                match ks_assignment_search(&k, full, SearchBudget::default()) {
                    SearchOutcome::ProofOfNone { .. } => {}
                    other => panic!("expected proof of none, got {other:?}"),
                }
            }
        }
    }

    #[test]
    fn ks_search_on_j11_with_and_without_extra_edges() {
        let k = j11();
        for full in [false, true] {
            match ks_assignment_search(&k, full, SearchBudget::default()) {
                SearchOutcome::ProofOfNone { .. } => {}
                other => panic!("expected proof of none, got {other:?}"),
            }
        }
    }

    #[test]
    fn removing_a_basis_admits_an_assignment() {
        let mut k = j7();
        k.bases.pop();
        match ks_assignment_search(&k, false, SearchBudget::default()) {
            SearchOutcome::Assignment(ones) => {
                // one label per remaining basis, pairwise non-conflicting
                assert_eq!(ones.len(), 3);
            }
            other => panic!("expected assignment, got {other:?}"),
        }
    }

    #[test]
    fn faithfulness_of_golden_sets() {
        assert!(faithfulness_check(&j7()).is_empty());
        let extras = faithfulness_check(&j11());
        assert!(!extras.is_empty());
        let p12 = Pair::new(1, 2).unwrap();
        let p34 = Pair::new(3, 4).unwrap();
        assert!(extras.contains(&(p12, p34)));
        assert!(!faithfulness_check(&golden::table_j9()).is_empty());
    }

    #[test]
    fn orthogonality_graph_of_j7_is_johnson() {
        let k = j7();
        let g = orthogonality_graph(&k);
        // adjacency in J(7,2) (labels meet) <=> orthogonality, no extras
        let expected: BTreeSet<(Pair, Pair)> = {
            let labels: Vec<Pair> = k.vectors.keys().copied().collect();
            let mut s = BTreeSet::new();
            for a in 0..labels.len() {
                for b in a + 1..labels.len() {
                    if labels[a].meet(&labels[b]) > 0 {
                        s.insert((labels[a], labels[b]));
                    }
                }
            }
            s
        };
        assert_eq!(g.edge_labels(), expected);
    }

    #[test]
    fn json_round_trip() {
        for k in [j7(), golden::table_j9()] {
            let file: KsFile = (&k).into();
            let text = serde_json::to_string(&file).unwrap();
            let parsed: KsFile = serde_json::from_str(&text).unwrap();
            let back: KSSet = parsed.try_into().unwrap();
            assert_eq!(back, k);
        }
    }

    #[test]
    fn pair_basics() {
        let p = Pair::new(5, 2).unwrap();
        assert_eq!((p.small(), p.large()), (2, 5));
        assert_eq!(p.other(2), Some(5));
        assert_eq!(p.other(7), None);
        assert_eq!(p.meet(&Pair::new(5, 9).unwrap()), 1);
        assert!(Pair::new(3, 3).is_err());
        assert_eq!(Pair::all(4).count(), 6);
    }
}
