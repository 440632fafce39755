//! Deterministic maximization of separable two-party payoffs.
//!
//! Both the game optima and the Bell local bounds maximize an objective of
//! the form Σ_{x,y} payoff(x, y, f(x), g(y)) over deterministic strategy
//! pairs. Because the objective is additive over input pairs and every term
//! involving Bob's input y depends only on g(y), Bob's best response
//! decomposes per input: max_g Σ = Σ_y max_b Σ_x payoff(x, y, f(x), b).
//! That leaves an exhaustive (or branch-and-bound) walk over Alice's
//! strategy space only.
//!
//! Parallel runs reduce with a total order (value first, then the
//! lexicographically least Alice vector), so results are identical for any
//! thread count.

use rayon::prelude::*;

/// A dense payoff table. `choices` counts may differ per input; values are
/// laid out as [x][a][y][b] for cache-friendly access in the inner loop.
pub struct PayoffTable {
    alice_choices: Vec<usize>,
    bob_choices: Vec<usize>,
    values: Vec<i64>,
    /// Stride of one (y,b) plane, Σ_y bob_choices[y].
    plane: usize,
    alice_offsets: Vec<usize>,
    bob_offsets: Vec<usize>,
}

impl PayoffTable {
    pub fn build(
        alice_choices: Vec<usize>,
        bob_choices: Vec<usize>,
        payoff: impl Fn(usize, usize, usize, usize) -> i64,
    ) -> Self {
        let bob_offsets: Vec<usize> = bob_choices
            .iter()
            .scan(0usize, |acc, &c| {
                let at = *acc;
                *acc += c;
                Some(at)
            })
            .collect();
        let plane: usize = bob_choices.iter().sum();
        let alice_offsets: Vec<usize> = alice_choices
            .iter()
            .scan(0usize, |acc, &c| {
                let at = *acc;
                *acc += c;
                Some(at)
            })
            .collect();
        let total_alice: usize = alice_choices.iter().sum();
        let mut values = vec![0i64; total_alice * plane];
        let mut at = 0usize;
        for (x, &ca) in alice_choices.iter().enumerate() {
            for a in 0..ca {
                for (y, &cb) in bob_choices.iter().enumerate() {
                    for b in 0..cb {
                        values[at * plane + bob_offsets[y] + b] = payoff(x, y, a, b);
                    }
                }
                at += 1;
            }
        }
        PayoffTable {
            alice_choices,
            bob_choices,
            values,
            plane,
            alice_offsets,
            bob_offsets,
        }
    }

    pub fn n_alice_inputs(&self) -> usize {
        self.alice_choices.len()
    }

    pub fn n_bob_inputs(&self) -> usize {
        self.bob_choices.len()
    }

    pub fn alice_strategy_count(&self) -> u128 {
        self.alice_choices.iter().map(|&c| c as u128).product()
    }

    pub fn bob_strategy_count(&self) -> u128 {
        self.bob_choices.iter().map(|&c| c as u128).product()
    }

    fn alice_flat(&self, x: usize, a: usize) -> usize {
        self.alice_offsets[x] + a
    }

    #[inline]
    fn row(&self, x: usize, a: usize) -> &[i64] {
        let at = self.alice_flat(x, a);
        &self.values[at * self.plane..(at + 1) * self.plane]
    }

    /// Decode a strategy id into per-input choices, most significant digit
    /// first so that ascending ids are lexicographically ascending vectors.
    pub fn decode_alice(&self, mut id: u64) -> Vec<usize> {
        let mut out = vec![0usize; self.alice_choices.len()];
        for (i, &c) in self.alice_choices.iter().enumerate().rev() {
            out[i] = (id % c as u64) as usize;
            id /= c as u64;
        }
        out
    }

    /// Per-(y,b) sums Σ_x payoff(x, y, f(x), b) for a fixed Alice strategy,
    /// in bob-plane layout.
    fn bob_plane_sums(&self, f: &[usize]) -> Vec<i64> {
        let mut sums = vec![0i64; self.plane];
        for (x, &a) in f.iter().enumerate() {
            for (s, v) in sums.iter_mut().zip(self.row(x, a)) {
                *s += v;
            }
        }
        sums
    }

    /// Best-response value and (least-index) argmax per Bob input.
    fn best_response(&self, sums: &[i64]) -> (i64, Vec<usize>) {
        let mut total = 0i64;
        let mut bob = Vec::with_capacity(self.bob_choices.len());
        for (y, &cb) in self.bob_choices.iter().enumerate() {
            let slice = &sums[self.bob_offsets[y]..self.bob_offsets[y] + cb];
            let (mut best_b, mut best_v) = (0usize, slice[0]);
            for (b, &v) in slice.iter().enumerate().skip(1) {
                if v > best_v {
                    best_b = b;
                    best_v = v;
                }
            }
            total += best_v;
            bob.push(best_b);
        }
        (total, bob)
    }

    /// All optimal Bob responses per input.
    fn argmax_sets(&self, sums: &[i64]) -> Vec<Vec<usize>> {
        self.bob_choices
            .iter()
            .enumerate()
            .map(|(y, &cb)| {
                let slice = &sums[self.bob_offsets[y]..self.bob_offsets[y] + cb];
                let m = *slice.iter().max().unwrap();
                (0..cb).filter(|&b| slice[b] == m).collect()
            })
            .collect()
    }
}

/// Result of a maximization run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxOutcome {
    pub value: i64,
    /// Choice index per Alice input.
    pub alice: Vec<usize>,
    /// Choice index per Bob input (one best response; least index on ties).
    pub bob: Vec<usize>,
    /// False when a budget cut the search tree, making `value` a lower bound.
    pub certified: bool,
}

/// Exact maximum by exhausting Alice's strategy space with per-input Bob
/// best responses. Ties break to the lexicographically least Alice vector.
pub fn exhaustive_max(table: &PayoffTable) -> MaxOutcome {
    let count = table.alice_strategy_count();
    assert!(count <= u64::MAX as u128, "strategy space too large");
    let count = count as u64;
    let best = (0..count)
        .into_par_iter()
        .fold(
            || None::<(i64, u64)>,
            |acc, id| {
                let f = table.decode_alice(id);
                let (value, _) = table.best_response(&table.bob_plane_sums(&f));
                match acc {
                    Some((bv, bid)) if (bv, std::cmp::Reverse(bid)) >= (value, std::cmp::Reverse(id)) => {
                        Some((bv, bid))
                    }
                    _ => Some((value, id)),
                }
            },
        )
        .reduce(
            || None,
            |a, b| match (a, b) {
                (None, x) | (x, None) => x,
                (Some((av, ai)), Some((bv, bi))) => {
                    if (av, std::cmp::Reverse(ai)) >= (bv, std::cmp::Reverse(bi)) {
                        Some((av, ai))
                    } else {
                        Some((bv, bi))
                    }
                }
            },
        )
        .expect("nonempty strategy space");
    let alice = table.decode_alice(best.1);
    let (value, bob) = table.best_response(&table.bob_plane_sums(&alice));
    debug_assert_eq!(value, best.0);
    MaxOutcome {
        value,
        alice,
        bob,
        certified: true,
    }
}

/// Branch-and-bound over Alice's inputs with the bound
/// Σ_y max_b (assigned sum + Σ_unassigned max_a payoff(x,y,a,b)).
/// Stops early when the budget is exhausted; the outcome is then flagged
/// uncertified.
pub fn branch_and_bound_max(table: &PayoffTable, max_nodes: u64) -> MaxOutcome {
    struct Bb<'t> {
        table: &'t PayoffTable,
        // per unassigned x and bob plane position: max over a of payoff
        per_input_max: Vec<Vec<i64>>,
        best: i64,
        best_alice: Vec<usize>,
        nodes: u64,
        max_nodes: u64,
        cut: bool,
    }
    impl Bb<'_> {
        fn run(&mut self, x: usize, f: &mut Vec<usize>, sums: Vec<i64>) {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                self.cut = true;
                return;
            }
            let n_inputs = self.table.alice_choices.len();
            if x == n_inputs {
                // DFS visits Alice vectors in lexicographic order, so the
                // first strict improvement is the lex-least maximizer.
                let (value, _) = self.table.best_response(&sums);
                if value > self.best {
                    self.best = value;
                    self.best_alice = f.clone();
                }
                return;
            }
            // optimistic completion of the remaining inputs
            let mut optimistic = sums.clone();
            for rem in x..n_inputs {
                for (s, m) in optimistic.iter_mut().zip(&self.per_input_max[rem]) {
                    *s += m;
                }
            }
            let (bound, _) = self.table.best_response(&optimistic);
            if bound <= self.best {
                return;
            }
            for a in 0..self.table.alice_choices[x] {
                let mut next = sums.clone();
                for (s, v) in next.iter_mut().zip(self.table.row(x, a)) {
                    *s += v;
                }
                f.push(a);
                self.run(x + 1, f, next);
                f.pop();
                if self.cut {
                    return;
                }
            }
        }
    }
    let per_input_max: Vec<Vec<i64>> = (0..table.alice_choices.len())
        .map(|x| {
            let mut m = vec![i64::MIN; table.plane];
            for a in 0..table.alice_choices[x] {
                for (mm, v) in m.iter_mut().zip(table.row(x, a)) {
                    *mm = (*mm).max(*v);
                }
            }
            m
        })
        .collect();
    let mut bb = Bb {
        table,
        per_input_max,
        best: i64::MIN,
        best_alice: Vec::new(),
        nodes: 0,
        max_nodes,
        cut: false,
    };
    bb.run(0, &mut Vec::new(), vec![0i64; table.plane]);
    let (value, bob) = table.best_response(&table.bob_plane_sums(&bb.best_alice));
    MaxOutcome {
        value,
        alice: bb.best_alice,
        bob,
        certified: !bb.cut,
    }
}

/// Oracle-grade joint enumeration: iterate every (f, g) pair explicitly and
/// return the maximum value. Exponential in both parties; small cases only.
pub fn joint_max_bruteforce(table: &PayoffTable) -> i64 {
    let a_count = table.alice_strategy_count();
    let b_count = table.bob_strategy_count();
    assert!(a_count.checked_mul(b_count).is_some());
    assert!(a_count <= u64::MAX as u128 && b_count <= u64::MAX as u128);
    (0..a_count as u64)
        .into_par_iter()
        .map(|aid| {
            let f = table.decode_alice(aid);
            let sums = table.bob_plane_sums(&f);
            let mut best = i64::MIN;
            let mut g = vec![0usize; table.bob_choices.len()];
            loop {
                let mut total = 0i64;
                for (y, &b) in g.iter().enumerate() {
                    total += sums[table.bob_offsets[y] + b];
                }
                best = best.max(total);
                // increment mixed-radix g
                let mut pos = table.bob_choices.len();
                loop {
                    if pos == 0 {
                        return best;
                    }
                    pos -= 1;
                    g[pos] += 1;
                    if g[pos] < table.bob_choices[pos] {
                        break;
                    }
                    g[pos] = 0;
                }
            }
        })
        .max()
        .expect("nonempty")
}

/// Visit every saturating deterministic pair at the given target value: all
/// Alice strategies whose best-response total equals `target`, together with
/// the full per-input sets of optimal Bob responses. Alice vectors arrive in
/// lexicographic order.
pub fn saturators(table: &PayoffTable, target: i64) -> Vec<(Vec<usize>, Vec<Vec<usize>>)> {
    let count = table.alice_strategy_count();
    assert!(count <= u64::MAX as u128, "strategy space too large");
    let mut hits: Vec<(u64, Vec<usize>, Vec<Vec<usize>>)> = (0..count as u64)
        .into_par_iter()
        .filter_map(|id| {
            let f = table.decode_alice(id);
            let sums = table.bob_plane_sums(&f);
            let (value, _) = table.best_response(&sums);
            if value == target {
                Some((id, f, table.argmax_sets(&sums)))
            } else {
                None
            }
        })
        .collect();
    hits.sort_by_key(|(id, _, _)| *id);
    hits.into_iter().map(|(_, f, am)| (f, am)).collect()
}
