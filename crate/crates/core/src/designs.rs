//! Combinatorial machinery behind the recursive KS constructions: simple
//! graphs, line graphs, k-factorizations, resolvable block designs, and the
//! block-padding embedding that turns factor-wise orthogonal representations
//! into one for the whole line graph.
//!
//! Vertices are 0-based inside graphs and designs; at the KS-set boundary
//! they become the 1-based line labels used everywhere else.

use crate::ksets::{standard_bases, KSSet, KsError, KsVector, Pair, VecEntry};
use crate::report::VerificationReport;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("resolvable factorization recipe needs lambda = 1, got {0}")]
    LambdaNotOne(usize),
    #[error("representation {0} does not label the edges of factor {0} exactly")]
    EdgeLabelMismatch(usize),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error(transparent)]
    Ks(#[from] KsError),
}

/// A finite simple graph on 0-based vertices, edges stored as sorted pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    pub n_vertices: usize,
    pub edges: BTreeSet<(usize, usize)>,
    /// Optional pair labels (used when vertices stand for 2-subsets).
    pub labels: Option<Vec<Pair>>,
}

impl SimpleGraph {
    pub fn new(n_vertices: usize) -> Self {
        SimpleGraph {
            n_vertices,
            edges: BTreeSet::new(),
            labels: None,
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "no loops");
        assert!(u < self.n_vertices && v < self.n_vertices);
        self.edges.insert((u.min(v), u.max(v)));
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n_vertices]; self.n_vertices];
        for &(u, v) in &self.edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        adj
    }
}

/// The complete graph K_n.
pub fn complete_graph(n: usize) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

/// The Johnson graph J(n,2): vertices are the 2-subsets of {1..n} in
/// lexicographic order, adjacent when they intersect.
pub fn johnson_graph(n: u16) -> SimpleGraph {
    assert!(n >= 4, "johnson_graph needs n >= 4");
    let labels: Vec<Pair> = Pair::all(n).collect();
    let mut g = SimpleGraph::new(labels.len());
    for a in 0..labels.len() {
        for b in a + 1..labels.len() {
            if labels[a].meet(&labels[b]) > 0 {
                g.add_edge(a, b);
            }
        }
    }
    g.labels = Some(labels);
    g
}

/// The line graph L(g): one vertex per edge of g, adjacent when the edges
/// share an endpoint. Vertices are labeled by the (1-based) endpoint pairs.
pub fn line_graph(g: &SimpleGraph) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = g.edges.iter().copied().collect();
    let mut lg = SimpleGraph::new(edges.len());
    for a in 0..edges.len() {
        for b in a + 1..edges.len() {
            let (u1, v1) = edges[a];
            let (u2, v2) = edges[b];
            if u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2 {
                lg.add_edge(a, b);
            }
        }
    }
    lg.labels = Some(
        edges
            .iter()
            .map(|&(u, v)| Pair::new(u as u16 + 1, v as u16 + 1).unwrap())
            .collect(),
    );
    lg
}

/// Clique number by Bron-Kerbosch with pivoting (exact; small graphs only).
pub fn clique_number(g: &SimpleGraph) -> usize {
    let adj = g.adjacency();
    fn extend(
        adj: &[Vec<bool>],
        r: usize,
        p: &mut Vec<usize>,
        x: &mut Vec<usize>,
        best: &mut usize,
    ) {
        if p.is_empty() && x.is_empty() {
            *best = (*best).max(r);
            return;
        }
        if r + p.len() <= *best {
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count())
            .unwrap();
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
        for v in candidates {
            let mut p2: Vec<usize> = p.iter().copied().filter(|&u| adj[v][u]).collect();
            let mut x2: Vec<usize> = x.iter().copied().filter(|&u| adj[v][u]).collect();
            extend(adj, r + 1, &mut p2, &mut x2, best);
            p.retain(|&u| u != v);
            x.push(v);
        }
    }
    let mut best = 0;
    let mut p: Vec<usize> = (0..g.n_vertices).collect();
    let mut x = Vec::new();
    extend(&adj, 0, &mut p, &mut x, &mut best);
    best
}

/// Strongly-regular parameters (n, k, λ, μ) if the graph has them.
pub fn srg_parameters(g: &SimpleGraph) -> Option<(usize, usize, usize, usize)> {
    let n = g.n_vertices;
    let adj = g.adjacency();
    let deg: Vec<usize> = (0..n).map(|v| adj[v].iter().filter(|&&b| b).count()).collect();
    let k = deg[0];
    if deg.iter().any(|&d| d != k) {
        return None;
    }
    let mut lam: Option<usize> = None;
    let mut mu: Option<usize> = None;
    for u in 0..n {
        for v in u + 1..n {
            let common = (0..n).filter(|&w| adj[u][w] && adj[v][w]).count();
            let slot = if adj[u][v] { &mut lam } else { &mut mu };
            match slot {
                None => *slot = Some(common),
                Some(c) if *c == common => {}
                Some(_) => return None,
            }
        }
    }
    Some((n, k, lam.unwrap_or(0), mu.unwrap_or(0)))
}

/// Find an explicit isomorphism a → b by backtracking with degree and
/// adjacency-consistency pruning. Returns the vertex mapping, or None.
pub fn find_isomorphism(a: &SimpleGraph, b: &SimpleGraph) -> Option<Vec<usize>> {
    if a.n_vertices != b.n_vertices || a.edges.len() != b.edges.len() {
        return None;
    }
    let n = a.n_vertices;
    let adj_a = a.adjacency();
    let adj_b = b.adjacency();
    let deg = |adj: &[Vec<bool>], v: usize| adj[v].iter().filter(|&&x| x).count();
    let da: Vec<usize> = (0..n).map(|v| deg(&adj_a, v)).collect();
    let db: Vec<usize> = (0..n).map(|v| deg(&adj_b, v)).collect();
    {
        let mut sa = da.clone();
        let mut sb = db.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return None;
        }
    }
    // map vertices in an order that keeps each new vertex attached to the
    // already-mapped prefix, so adjacency constraints bite early
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !seen[v])
            .max_by_key(|&v| (order.iter().filter(|&&u| adj_a[u][v]).count(), da[v]))
            .unwrap();
        seen[next] = true;
        order.push(next);
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        pos: usize,
        order: &[usize],
        adj_a: &[Vec<bool>],
        adj_b: &[Vec<bool>],
        da: &[usize],
        db: &[usize],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        'cand: for w in 0..adj_b.len() {
            if used[w] || db[w] != da[v] {
                continue;
            }
            for &u in &order[..pos] {
                if adj_a[u][v] != adj_b[map[u]][w] {
                    continue 'cand;
                }
            }
            map[v] = w;
            used[w] = true;
            if assign(pos + 1, order, adj_a, adj_b, da, db, map, used) {
                return true;
            }
            map[v] = usize::MAX;
            used[w] = false;
        }
        false
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if assign(0, &order, &adj_a, &adj_b, &da, &db, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// A partition of a host graph's edges into k-regular spanning factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub host: SimpleGraph,
    pub factors: Vec<BTreeSet<(usize, usize)>>,
}

impl Factorization {
    /// Check spanning, regularity (common k), edge-disjointness, and
    /// exhaustiveness.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport::new(format!(
            "{}-factorization of a graph on {} vertices",
            self.factors.len(),
            self.host.n_vertices
        ));
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut k_common: Option<usize> = None;
        for (fi, factor) in self.factors.iter().enumerate() {
            let mut deg = vec![0usize; self.host.n_vertices];
            for &(u, v) in factor {
                if !self.host.edges.contains(&(u, v)) {
                    report.push(format!("factor {fi} uses non-host edge ({u},{v})"), vec![fi]);
                }
                if !seen.insert((u, v)) {
                    report.push(format!("edge ({u},{v}) appears in two factors"), vec![fi]);
                }
                deg[u] += 1;
                deg[v] += 1;
            }
            let k = deg[0];
            if deg.iter().any(|&d| d != k) || k == 0 {
                report.push(format!("factor {fi} is not regular spanning"), vec![fi]);
            }
            match k_common {
                None => k_common = Some(k),
                Some(kc) if kc == k => {}
                Some(kc) => {
                    report.push(format!("factor {fi} has degree {k}, others {kc}"), vec![fi])
                }
            }
        }
        if seen != self.host.edges {
            report.push("factors do not cover the host's edge set", vec![]);
        }
        report
    }

    pub fn factor_graph(&self, i: usize) -> SimpleGraph {
        SimpleGraph {
            n_vertices: self.host.n_vertices,
            edges: self.factors[i].clone(),
            labels: None,
        }
    }
}

/// The pinned 4-factorization of K₉ into two copies of the Paley graph of
/// order 9. The split (and its vertex labeling) is exactly the one the
/// golden J(9,2) data encodes through its block supports, so the two factor
/// representations pair up with it directly.
pub fn k9_paley_factorization() -> Factorization {
    use crate::ksets::golden::TABLE_J9;
    let host = complete_graph(9);
    let mut factors = vec![BTreeSet::new(), BTreeSet::new()];
    for ((i, j), entries) in TABLE_J9 {
        let first_half_nonzero = entries[..4].iter().any(|&e| e != 0);
        let which = usize::from(!first_half_nonzero);
        factors[which].insert((i as usize - 1, j as usize - 1));
    }
    Factorization { host, factors }
}

/// The standard Paley graph of order 9 over GF(9) = GF(3)[x]/(x²+1):
/// vertices a+bx, adjacent when the difference is a nonzero square.
pub fn paley9() -> SimpleGraph {
    let idx = |a: u32, b: u32| (a * 3 + b) as usize;
    let mut squares = BTreeSet::new();
    for a in 0..3u32 {
        for b in 0..3u32 {
            if (a, b) == (0, 0) {
                continue;
            }
            // (a+bx)² = a² - b² + 2abx over GF(3), with x² = -1
            squares.insert(((a * a + 2 * b * b) % 3, 2 * a * b % 3));
        }
    }
    let mut g = SimpleGraph::new(9);
    for a1 in 0..3u32 {
        for b1 in 0..3u32 {
            for a2 in 0..3u32 {
                for b2 in 0..3u32 {
                    let d = ((a1 + 3 - a2) % 3, (b1 + 3 - b2) % 3);
                    if d != (0, 0) && squares.contains(&d) {
                        let (u, v) = (idx(a1, b1), idx(a2, b2));
                        if u < v {
                            g.add_edge(u, v);
                        }
                    }
                }
            }
        }
    }
    g
}

/// One of the two 18-vector, 9-basis KS records in dimension 4 hidden in the
/// golden J(9,2) table: vectors are the nonzero block halves, labeled by the
/// edges of the corresponding Paley factor, with one basis per K₉ vertex
/// (its four factor edges).
pub fn ceg18_on_factor(which: usize) -> KSSet {
    use crate::ksets::golden::TABLE_J9;
    assert!(which < 2);
    let mut vectors = BTreeMap::new();
    for ((i, j), entries) in TABLE_J9 {
        let first_half_nonzero = entries[..4].iter().any(|&e| e != 0);
        if usize::from(!first_half_nonzero) != which {
            continue;
        }
        let half = if which == 0 { &entries[..4] } else { &entries[4..] };
        vectors.insert(Pair::new(i, j).unwrap(), KsVector::from_ints(half));
    }
    let bases = (1u16..=9)
        .map(|r| {
            vectors
                .keys()
                .filter(|p| p.contains(r))
                .copied()
                .collect::<Vec<_>>()
        })
        .collect();
    KSSet {
        n_lines: 9,
        dim: 4,
        root_order: 1,
        vectors,
        bases,
    }
}

/// The 18-vector KS set in dimension 4 (first-factor labeling).
pub fn ceg18() -> KSSet {
    ceg18_on_factor(0)
}

/// Block-padding embedding: given a factorization with ℓ factors and, for
/// each factor, an orthogonal representation of its line graph in dimension
/// k (a KS-style record whose vector labels are that factor's edges), embed
/// rep i into coordinate block i. Every host edge receives a kℓ-dimensional
/// vector; vectors from different blocks are orthogonal by disjoint support,
/// and each host vertex's edge star becomes a basis.
pub fn factor_embed(reps: &[KSSet], f: &Factorization) -> Result<KSSet, DesignError> {
    if reps.len() != f.factors.len() {
        return Err(DesignError::InvalidComposition(format!(
            "{} representations for {} factors",
            reps.len(),
            f.factors.len()
        )));
    }
    let k = reps
        .first()
        .map(|r| r.dim)
        .ok_or_else(|| DesignError::InvalidComposition("no factors".into()))?;
    if reps.iter().any(|r| r.dim != k) {
        return Err(DesignError::InvalidComposition(
            "factor representations have inconsistent dimensions".into(),
        ));
    }
    let order = reps
        .iter()
        .fold(1u32, |acc, r| acc.lcm(&r.root_order.max(1)));
    let ell = reps.len();
    for (i, (rep, factor)) in reps.iter().zip(&f.factors).enumerate() {
        let edge_labels: BTreeSet<Pair> = factor
            .iter()
            .map(|&(u, v)| Pair::new(u as u16 + 1, v as u16 + 1).unwrap())
            .collect();
        let rep_labels: BTreeSet<Pair> = rep.vectors.keys().copied().collect();
        if edge_labels != rep_labels {
            return Err(DesignError::EdgeLabelMismatch(i));
        }
    }
    let mut vectors = BTreeMap::new();
    for (i, rep) in reps.iter().enumerate() {
        for (pair, v) in &rep.vectors {
            let v = v.promote(order)?;
            let mut entries = vec![VecEntry::Zero; k * ell];
            entries[i * k..(i + 1) * k].copy_from_slice(v.entries());
            vectors.insert(*pair, KsVector::from_entries(order, entries));
        }
    }
    let n_lines = f.host.n_vertices as u16;
    let bases = (1..=n_lines)
        .map(|r| {
            vectors
                .keys()
                .filter(|p| p.contains(r))
                .copied()
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(KSSet {
        n_lines,
        dim: k * ell,
        root_order: order,
        vectors,
        bases,
    })
}

/// A resolvable balanced incomplete block design.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rbibd {
    /// Number of points (0-based indices 0..v).
    pub v: usize,
    /// Number of blocks.
    pub b: usize,
    /// Replication: blocks through each point.
    pub r: usize,
    /// Block size.
    pub k: usize,
    /// Blocks through each point pair.
    pub lam: usize,
    pub blocks: Vec<Vec<usize>>,
    /// Partition of block indices into parallel classes.
    pub resolution: Vec<Vec<usize>>,
}

/// The affine plane AG(2,k) as a (k²,k,1)-RBIBD for odd prime k: points are
/// Z_k², lines y = mx + c grouped by slope into parallel classes, vertical
/// lines x = c as the last class. Blocks are ordered lexicographically by
/// (slope, intercept); points ascending within each block.
pub fn ag2_rbibd(k: u32) -> Result<Rbibd, DesignError> {
    let odd_prime = k >= 3 && k % 2 == 1 && (3..k).step_by(2).all(|d| d * d > k || k % d != 0);
    if !odd_prime {
        return Err(DesignError::NotOddPrime(k));
    }
    let k = k as usize;
    let v = k * k;
    let idx = |x: usize, y: usize| x * k + y;
    let mut blocks = Vec::with_capacity(k * (k + 1));
    let mut resolution = Vec::with_capacity(k + 1);
    for slope in 0..k {
        let mut class = Vec::with_capacity(k);
        for c in 0..k {
            let mut block: Vec<usize> = (0..k).map(|x| idx(x, (slope * x + c) % k)).collect();
            block.sort_unstable();
            class.push(blocks.len());
            blocks.push(block);
        }
        resolution.push(class);
    }
    let mut vertical = Vec::with_capacity(k);
    for c in 0..k {
        let block: Vec<usize> = (0..k).map(|y| idx(c, y)).collect();
        vertical.push(blocks.len());
        blocks.push(block);
    }
    resolution.push(vertical);
    Ok(Rbibd {
        v,
        b: blocks.len(),
        r: k + 1,
        k,
        lam: 1,
        blocks,
        resolution,
    })
}

/// Check all four design axioms plus the resolution: block sizes, point
/// replication, pair balance, and that each parallel class partitions the
/// points while the classes partition the blocks.
pub fn verify_rbibd(d: &Rbibd) -> VerificationReport {
    let mut report = VerificationReport::new(format!(
        "({},{},{})-RBIBD with {} blocks in {} classes",
        d.v,
        d.k,
        d.lam,
        d.b,
        d.resolution.len()
    ));
    if d.blocks.len() != d.b {
        report.push("block count differs from b", vec![]);
    }
    for (bi, block) in d.blocks.iter().enumerate() {
        if block.len() != d.k {
            report.push(format!("block {bi} has size {}", block.len()), vec![bi]);
        }
        if block.iter().any(|&p| p >= d.v) {
            report.push(format!("block {bi} has out-of-range point"), vec![bi]);
        }
    }
    let mut replication = vec![0usize; d.v];
    let mut pair_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for block in &d.blocks {
        for (a, &p) in block.iter().enumerate() {
            replication[p] += 1;
            for &q in &block[a + 1..] {
                *pair_count.entry((p.min(q), p.max(q))).or_insert(0) += 1;
            }
        }
    }
    for (p, &c) in replication.iter().enumerate() {
        if c != d.r {
            report.push(format!("point {p} lies in {c} blocks, expected {}", d.r), vec![p]);
        }
    }
    for p in 0..d.v {
        for q in p + 1..d.v {
            let c = pair_count.get(&(p, q)).copied().unwrap_or(0);
            if c != d.lam {
                report.push(
                    format!("pair ({p},{q}) lies in {c} blocks, expected {}", d.lam),
                    vec![p, q],
                );
            }
        }
    }
    let mut block_seen = vec![false; d.blocks.len()];
    for (ci, class) in d.resolution.iter().enumerate() {
        let mut covered = vec![false; d.v];
        for &bi in class {
            if bi >= d.blocks.len() {
                report.push(format!("class {ci} references block {bi}"), vec![ci]);
                continue;
            }
            if std::mem::replace(&mut block_seen[bi], true) {
                report.push(format!("block {bi} appears in two classes"), vec![bi]);
            }
            for &p in &d.blocks[bi] {
                if std::mem::replace(&mut covered[p], true) {
                    report.push(format!("class {ci} covers point {p} twice"), vec![ci, p]);
                }
            }
        }
        if covered.iter().any(|&c| !c) {
            report.push(format!("class {ci} does not cover all points"), vec![ci]);
        }
    }
    if block_seen.iter().any(|&s| !s) {
        report.push("resolution does not cover all blocks", vec![]);
    }
    report
}

/// Turn a λ=1 RBIBD into a (k-1)-factorization of K_v: each parallel class
/// becomes the disjoint union of complete graphs on its blocks.
pub fn rbibd_to_factorization(d: &Rbibd) -> Result<Factorization, DesignError> {
    if d.lam != 1 {
        return Err(DesignError::LambdaNotOne(d.lam));
    }
    let host = complete_graph(d.v);
    let factors = d
        .resolution
        .iter()
        .map(|class| {
            let mut edges = BTreeSet::new();
            for &bi in class {
                let block = &d.blocks[bi];
                for (a, &p) in block.iter().enumerate() {
                    for &q in &block[a + 1..] {
                        edges.insert((p.min(q), p.max(q)));
                    }
                }
            }
            edges
        })
        .collect();
    Ok(Factorization { host, factors })
}

/// Compose a KS set for J(k,2) with an (N,k,1)-RBIBD into a KS set for
/// J(N,2) in dimension N-1: every parallel class contributes one coordinate
/// block of size k-1, and inside each block of the class the base vectors
/// are reused with points identified by their rank in the block.
pub fn recursive_construct(base: &KSSet, d: &Rbibd) -> Result<KSSet, DesignError> {
    let k = d.k;
    if base.dim + 1 != k || base.n_lines as usize != k {
        return Err(DesignError::InvalidComposition(format!(
            "base set realizes J({},2) in dimension {}, need dimension {} on {} lines",
            base.n_lines,
            base.dim,
            k - 1,
            k
        )));
    }
    if d.lam != 1 {
        return Err(DesignError::LambdaNotOne(d.lam));
    }
    let m = d.resolution.len();
    if (k - 1) * m != d.v - 1 {
        return Err(DesignError::InvalidComposition(format!(
            "(k-1)·classes = {} but v-1 = {}",
            (k - 1) * m,
            d.v - 1
        )));
    }
    let dim = d.v - 1;
    let mut vectors: BTreeMap<Pair, KsVector> = BTreeMap::new();
    for (ci, class) in d.resolution.iter().enumerate() {
        for &bi in class {
            let block = &d.blocks[bi];
            debug_assert!(block.windows(2).all(|w| w[0] < w[1]));
            for a in 0..block.len() {
                for b in a + 1..block.len() {
                    let host_pair = Pair::new(block[a] as u16 + 1, block[b] as u16 + 1).unwrap();
                    let base_pair = Pair::new(a as u16 + 1, b as u16 + 1).unwrap();
                    let bv = base.vectors.get(&base_pair).ok_or_else(|| {
                        DesignError::InvalidComposition(format!(
                            "base set has no vector for {base_pair}"
                        ))
                    })?;
                    let mut entries = vec![VecEntry::Zero; dim];
                    entries[ci * (k - 1)..(ci + 1) * (k - 1)].copy_from_slice(bv.entries());
                    if vectors
                        .insert(host_pair, KsVector::from_entries(base.root_order, entries))
                        .is_some()
                    {
                        return Err(DesignError::InvalidComposition(format!(
                            "point pair {host_pair} covered twice; design is not lambda = 1"
                        )));
                    }
                }
            }
        }
    }
    if vectors.len() != d.v * (d.v - 1) / 2 {
        return Err(DesignError::InvalidComposition(
            "design does not cover every point pair".into(),
        ));
    }
    Ok(KSSet {
        n_lines: d.v as u16,
        dim,
        root_order: base.root_order,
        vectors,
        bases: standard_bases(d.v as u16),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ksets::golden;
    use crate::ksets::{
        ks_assignment_search, parity_check, verify_bases, SearchBudget, SearchOutcome,
    };

    #[test]
    fn johnson_graph_shape() {
        let j7 = johnson_graph(7);
        assert_eq!(j7.n_vertices, 21);
        assert_eq!(j7.edges.len(), 105);
        assert_eq!(clique_number(&j7), 6);
        // vertex stars {ij : j != i} are cliques of size n-1
        let labels = j7.labels.clone().unwrap();
        let star: Vec<usize> = (0..21).filter(|&v| labels[v].contains(1)).collect();
        assert_eq!(star.len(), 6);
        for a in 0..star.len() {
            for b in a + 1..star.len() {
                assert!(j7.has_edge(star[a], star[b]));
            }
        }
        // J(4,2) is the octahedron: 6 vertices, 12 edges, 4-regular
        let j4 = johnson_graph(4);
        assert_eq!((j4.n_vertices, j4.edges.len()), (6, 12));
        assert!((0..6).all(|v| j4.degree(v) == 4));
    }

    #[test]
    fn line_graph_examples() {
        // L(K_7) is J(7,2), with identical pair labels
        let lk7 = line_graph(&complete_graph(7));
        let j7 = johnson_graph(7);
        assert_eq!(lk7.labels, j7.labels);
        assert_eq!(lk7.edges, j7.edges);
        assert!(find_isomorphism(&lk7, &j7).is_some());
        // L(K_3) = K_3
        let lk3 = line_graph(&complete_graph(3));
        assert_eq!(lk3.edges, complete_graph(3).edges);
        // line graph of a 3-vertex path is a single edge
        let mut path = SimpleGraph::new(3);
        path.add_edge(0, 1);
        path.add_edge(1, 2);
        let lp = line_graph(&path);
        assert_eq!((lp.n_vertices, lp.edges.len()), (2, 1));
    }

    #[test]
    fn paley_factorization_structure() {
        let f = k9_paley_factorization();
        assert!(f.verify().is_pass());
        assert_eq!(f.factors.len(), 2);
        for i in 0..2 {
            let g = f.factor_graph(i);
            assert_eq!(srg_parameters(&g), Some((9, 4, 1, 2)));
            assert!(find_isomorphism(&g, &paley9()).is_some());
        }
        assert!(find_isomorphism(&f.factor_graph(0), &f.factor_graph(1)).is_some());
        // disjoint cover of K_9
        let union: BTreeSet<_> = f.factors[0].union(&f.factors[1]).copied().collect();
        assert_eq!(union, complete_graph(9).edges);
        assert_eq!(f.factors[0].intersection(&f.factors[1]).count(), 0);
    }

    #[test]
    fn ceg18_is_a_ks_record() {
        let c = ceg18();
        assert_eq!(c.vectors.len(), 18);
        assert_eq!(c.bases.len(), 9);
        assert!(c.bases.iter().all(|b| b.len() == 4));
        assert!(verify_bases(&c).is_pass());
        assert!(parity_check(&c));
        match ks_assignment_search(&c, true, SearchBudget::default()) {
            SearchOutcome::ProofOfNone { .. } => {}
            other => panic!("expected proof of none, got {other:?}"),
        }
        // recovered vector from the (0,a)-padded golden row for {1,2}
        let c2 = ceg18_on_factor(1);
        assert_eq!(
            c2.vectors[&Pair::new(1, 2).unwrap()],
            KsVector::from_ints(&[0, 0, 0, 1])
        );
    }

    #[test]
    fn ceg18_with_one_basis_removed_admits_assignment() {
        let mut c = ceg18();
        c.bases.pop();
        match ks_assignment_search(&c, true, SearchBudget::default()) {
            SearchOutcome::Assignment(ones) => {
                // one 1 per remaining basis, consistent with the conflicts
                assert!(!ones.is_empty());
            }
            other => panic!("expected assignment, got {other:?}"),
        }
    }

    #[test]
    fn factor_embed_reproduces_golden_j9() {
        let f = k9_paley_factorization();
        let embedded = factor_embed(&[ceg18_on_factor(0), ceg18_on_factor(1)], &f).unwrap();
        assert_eq!(embedded, golden::table_j9());
        assert!(verify_bases(&embedded).is_pass());
        assert!(parity_check(&embedded));
    }

    #[test]
    fn factor_embed_rejects_label_mismatch() {
        let f = k9_paley_factorization();
        // both representations labeled by factor-0 edges: factor 1 mismatches
        let result = factor_embed(&[ceg18_on_factor(0), ceg18_on_factor(0)], &f);
        assert_eq!(result, Err(DesignError::EdgeLabelMismatch(1)));
    }

    #[test]
    fn blocks_from_different_factors_are_orthogonal() {
        let f = k9_paley_factorization();
        let embedded = factor_embed(&[ceg18_on_factor(0), ceg18_on_factor(1)], &f).unwrap();
        let as_pair = |&(u, v): &(usize, usize)| Pair::new(u as u16 + 1, v as u16 + 1).unwrap();
        let p0 = as_pair(f.factors[0].iter().next().unwrap());
        let p1 = as_pair(f.factors[1].iter().next().unwrap());
        assert!(embedded.vectors[&p0]
            .orthogonal_to(&embedded.vectors[&p1])
            .unwrap());
    }

    #[test]
    fn ag2_examples() {
        let d3 = ag2_rbibd(3).unwrap();
        assert_eq!((d3.v, d3.b, d3.r, d3.k, d3.lam), (9, 12, 4, 3, 1));
        assert_eq!(d3.resolution.len(), 4);
        assert!(verify_rbibd(&d3).is_pass());

        let d5 = ag2_rbibd(5).unwrap();
        assert_eq!((d5.v, d5.b, d5.resolution.len()), (25, 30, 6));
        assert!(verify_rbibd(&d5).is_pass());

        assert_eq!(ag2_rbibd(9), Err(DesignError::NotOddPrime(9)));
        assert_eq!(ag2_rbibd(2), Err(DesignError::NotOddPrime(2)));
    }

    #[test]
    fn rbibd_factorization_recipe() {
        let d = ag2_rbibd(3).unwrap();
        let f = rbibd_to_factorization(&d).unwrap();
        assert!(f.verify().is_pass());
        assert_eq!(f.factors.len(), 4);
        // each factor: three disjoint triangles, i.e. 2-regular with 9 edges
        for i in 0..4 {
            let g = f.factor_graph(i);
            assert_eq!(g.edges.len(), 9);
            assert!((0..9).all(|v| g.degree(v) == 2));
        }
        // λ != 1 designs are rejected
        let mut bad = d.clone();
        bad.lam = 2;
        assert_eq!(
            rbibd_to_factorization(&bad),
            Err(DesignError::LambdaNotOne(2))
        );
    }

    #[test]
    fn recursive_construct_j49_from_j7() {
        let base = golden::table_j7();
        let d = ag2_rbibd(7).unwrap();
        let k49 = recursive_construct(&base, &d).unwrap();
        assert_eq!((k49.n_lines, k49.dim), (49, 48));
        assert_eq!(k49.vectors.len(), 49 * 48 / 2);
        assert!(parity_check(&k49));
        assert!(verify_bases(&k49).is_pass());
    }

    #[test]
    fn recursive_construct_rejects_dimension_mismatch() {
        let base = golden::table_j7(); // dim 6, k = 7
        let d = ag2_rbibd(5).unwrap(); // wants a dim-4 base
        assert!(matches!(
            recursive_construct(&base, &d),
            Err(DesignError::InvalidComposition(_))
        ));
    }
}
