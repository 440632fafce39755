//! The star games played on the J(N,2)-configuration: exact classical optima
//! by brute force, exact quantum values from a KS realization, bipartite KS
//! solving with optimal-pair enumeration, and visibility analysis under
//! Werner noise.
//!
//! Outputs are partner labels throughout this module: when a player holds
//! line x and answers a, the named point is {x,a}. (The Bell module uses
//! position-based outputs instead and provides the conversion.)
//!
//! The input distribution is uniform everywhere; optima are reported as
//! exact win counts over the total number of input pairs.

use crate::engine::{self, PayoffTable};
use crate::ksets::{verify_bases, KSSet, Pair};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("game needs odd N >= 5, got {0}")]
    BadLineCount(u16),
    #[error("KS set has {0} lines / dimension {1}; game expects {2} lines / dimension {3}")]
    RealizationShape(u16, usize, u16, usize),
    #[error("quantum value is implemented for the colored variant")]
    VariantUnsupported,
    #[error("KS set bases fail verification:\n{0}")]
    InvalidRealization(String),
    #[error("visibility must lie in [0,1]")]
    VisibilityOutOfRange,
    #[error("noise analysis needs even d >= {1}, got {0}")]
    BadDimensionForNoise(u32, u32),
    #[error("B-KS basis sets must be nonempty subsets of 1..=N")]
    BadBksPair,
}

/// The three game variants on the star configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Alice holds red lines {1..N-2}, Bob blue lines {3..N}; outputs are
    /// points on the held line; win iff the two points are the same or
    /// disjoint.
    Colored,
    /// Both players may hold any of the N lines; same winning predicate.
    LineLine,
    /// Alice holds a line, Bob a point on it; Alice marks one point of her
    /// line, Bob answers a bit; win iff Bob's bit says whether his point is
    /// the marked one.
    PointLine,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Colored => "colored",
            Variant::LineLine => "line_line",
            Variant::PointLine => "point_line",
        }
    }
}

/// A star game instance: the variant, N, and the two input sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarGame {
    pub n_lines: u16,
    pub variant: Variant,
    /// Alice's input lines (colored/line_line; point_line uses all lines).
    pub alice_inputs: Vec<u16>,
    /// Bob's input lines (colored/line_line; point_line draws points).
    pub bob_inputs: Vec<u16>,
}

impl StarGame {
    pub fn standard(variant: Variant, n_lines: u16) -> Result<Self, GameError> {
        if n_lines < 5 || n_lines % 2 == 0 {
            return Err(GameError::BadLineCount(n_lines));
        }
        let (alice_inputs, bob_inputs) = match variant {
            Variant::Colored => ((1..=n_lines - 2).collect(), (3..=n_lines).collect()),
            Variant::LineLine | Variant::PointLine => {
                ((1..=n_lines).collect(), (1..=n_lines).collect())
            }
        };
        Ok(StarGame {
            n_lines,
            variant,
            alice_inputs,
            bob_inputs,
        })
    }

    /// Colored game with caller-chosen line colorings.
    pub fn colored_with_inputs(
        n_lines: u16,
        alice_inputs: Vec<u16>,
        bob_inputs: Vec<u16>,
    ) -> Result<Self, GameError> {
        if n_lines < 5 || n_lines % 2 == 0 {
            return Err(GameError::BadLineCount(n_lines));
        }
        Ok(StarGame {
            n_lines,
            variant: Variant::Colored,
            alice_inputs,
            bob_inputs,
        })
    }

    /// Winning predicate for line inputs with partner-label outputs:
    /// {x,a} and {y,b} must be the same point or disjoint.
    pub fn win_lines(x: u16, a: u16, y: u16, b: u16) -> bool {
        let meet =
            usize::from(x == y) + usize::from(x == b) + usize::from(a == y) + usize::from(a == b);
        meet == 0 || meet == 2
    }

    /// Partners of a line in ascending order; output choice k (0-based)
    /// names the point {line, partners[k]}. This coincides with the
    /// lexicographic point order on the line.
    pub fn partners(&self, line: u16) -> Vec<u16> {
        (1..=self.n_lines).filter(|&j| j != line).collect()
    }

    /// Total number of (equally likely) input pairs.
    pub fn total_inputs(&self) -> u64 {
        match self.variant {
            Variant::Colored | Variant::LineLine => {
                self.alice_inputs.len() as u64 * self.bob_inputs.len() as u64
            }
            Variant::PointLine => self.n_lines as u64 * (self.n_lines as u64 - 1),
        }
    }
}

/// A deterministic one-player strategy: chosen partner per input line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetStrategy {
    pub choices: Vec<(u16, u16)>,
}

impl DetStrategy {
    pub fn choice(&self, line: u16) -> Option<u16> {
        self.choices
            .iter()
            .find(|(l, _)| *l == line)
            .map(|(_, c)| *c)
    }
}

/// Witness strategies attaining a classical optimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    /// Colored / line-line: partner choice per input line for each player.
    Lines { alice: DetStrategy, bob: DetStrategy },
    /// Point-line: Alice's marked partner per line; Bob's bit per point.
    PointLine {
        alice: DetStrategy,
        bob_bits: Vec<(Pair, u8)>,
    },
}

/// Exact classical optimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalOutcome {
    pub max_wins: u64,
    pub total: u64,
    pub witness: Witness,
    /// False when a search budget cut the tree: `max_wins` is then only a
    /// lower bound and the result is explicitly non-optimal.
    pub certified: bool,
}

/// Search controls for [`classical_optimum`].
#[derive(Debug, Clone, Copy)]
pub struct OptimumBudget {
    /// Largest Alice strategy space still enumerated exhaustively.
    pub exhaustive_cap: u64,
    /// Node budget for the branch-and-bound fallback.
    pub bb_nodes: u64,
}

impl Default for OptimumBudget {
    fn default() -> Self {
        OptimumBudget {
            exhaustive_cap: 4_400_000,
            bb_nodes: 50_000_000,
        }
    }
}

fn lines_payoff_table(game: &StarGame) -> PayoffTable {
    let ax = game.alice_inputs.clone();
    let by = game.bob_inputs.clone();
    let n = game.n_lines;
    let choices = (n - 1) as usize;
    // choice k on a line names its k-th smallest partner
    let partner_of = move |line: u16, k: usize| {
        let p = k as u16 + 1;
        p + u16::from(p >= line)
    };
    PayoffTable::build(
        vec![choices; ax.len()],
        vec![choices; by.len()],
        move |xi, yi, a, b| {
            let x = ax[xi];
            let y = by[yi];
            i64::from(StarGame::win_lines(
                x,
                partner_of(x, a),
                y,
                partner_of(y, b),
            ))
        },
    )
}

fn point_line_payoff_table(game: &StarGame) -> (PayoffTable, Vec<Pair>) {
    let n = game.n_lines;
    let points: Vec<Pair> = Pair::all(n).collect();
    let pts = points.clone();
    let choices = (n - 1) as usize;
    let table = PayoffTable::build(
        vec![choices; n as usize],
        vec![2; points.len()],
        move |xi, yi, a, bit| {
            let x = xi as u16 + 1;
            let point = pts[yi];
            // inputs are correlated: Bob's point must lie on Alice's line
            if !point.contains(x) {
                return 0;
            }
            let p = a as u16 + 1;
            let marked = Pair::new(x, p + u16::from(p >= x)).unwrap();
            i64::from((bit == 1) == (marked == point))
        },
    );
    (table, points)
}

fn choices_to_strategy(inputs: &[u16], picks: &[usize]) -> DetStrategy {
    DetStrategy {
        choices: inputs
            .iter()
            .zip(picks)
            .map(|(&line, &k)| {
                let p = k as u16 + 1;
                (line, p + u16::from(p >= line))
            })
            .collect(),
    }
}

/// Exact maximum winning count over deterministic strategy pairs, by
/// exhausting Alice's strategies with per-input Bob best responses
/// (branch-and-bound beyond the exhaustive cap). The witness is the
/// lexicographically least optimal pair.
pub fn classical_optimum(
    game: &StarGame,
    budget: OptimumBudget,
) -> Result<ClassicalOutcome, GameError> {
    match game.variant {
        Variant::Colored | Variant::LineLine => {
            let table = lines_payoff_table(game);
            let outcome = run_table(&table, budget);
            Ok(ClassicalOutcome {
                max_wins: outcome.value as u64,
                total: game.total_inputs(),
                witness: Witness::Lines {
                    alice: choices_to_strategy(&game.alice_inputs, &outcome.alice),
                    bob: choices_to_strategy(&game.bob_inputs, &outcome.bob),
                },
                certified: outcome.certified,
            })
        }
        Variant::PointLine => {
            let (table, points) = point_line_payoff_table(game);
            let outcome = run_table(&table, budget);
            let all_lines: Vec<u16> = (1..=game.n_lines).collect();
            let alice = choices_to_strategy(&all_lines, &outcome.alice);
            let bob_bits = points
                .iter()
                .zip(&outcome.bob)
                .map(|(&p, &bit)| (p, bit as u8))
                .collect();
            Ok(ClassicalOutcome {
                max_wins: outcome.value as u64,
                total: game.total_inputs(),
                witness: Witness::PointLine { alice, bob_bits },
                certified: outcome.certified,
            })
        }
    }
}

fn run_table(table: &PayoffTable, budget: OptimumBudget) -> engine::MaxOutcome {
    if table.alice_strategy_count() <= budget.exhaustive_cap as u128 {
        engine::exhaustive_max(table)
    } else {
        engine::branch_and_bound_max(table, budget.bb_nodes)
    }
}

/// Count how many input pairs a given pair of line strategies loses.
pub fn count_losses(game: &StarGame, alice: &DetStrategy, bob: &DetStrategy) -> u64 {
    let mut losses = 0;
    for &x in &game.alice_inputs {
        for &y in &game.bob_inputs {
            let a = alice.choice(x).expect("strategy covers alice inputs");
            let b = bob.choice(y).expect("strategy covers bob inputs");
            if !StarGame::win_lines(x, a, y, b) {
                losses += 1;
            }
        }
    }
    losses
}

/// Outcome of the exact quantum-value computation for the colored game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuantumValue {
    /// Every losing outcome pair has exactly zero amplitude and every basis
    /// is complete, so the strategy wins with probability exactly 1.
    One { losing_pairs_checked: usize },
    /// Some losing outcome pairs have nonzero amplitude; the strategy wins
    /// with probability strictly below 1 on those inputs.
    LessThanOne { violations: Vec<(u16, u16, u16, u16)> },
}

/// Evaluate the maximally-entangled-state strategy where Alice measures the
/// basis of her line and Bob the conjugate basis of his. The trace identity
/// over |ψ⟩ = Σ|kk⟩/√d turns each outcome probability into
/// |⟨v_{a|x}, v_{b|y}⟩|² / (d‖v_{a|x}‖²‖v_{b|y}‖²) with the plain table
/// vectors on both sides, so the game is won with probability exactly 1 iff
/// every losing (x,y,a,b) names an exactly-orthogonal vector pair and every
/// basis is complete.
pub fn quantum_value(game: &StarGame, k: &KSSet) -> Result<QuantumValue, GameError> {
    if game.variant != Variant::Colored {
        return Err(GameError::VariantUnsupported);
    }
    if k.n_lines != game.n_lines || k.dim != game.n_lines as usize - 1 {
        return Err(GameError::RealizationShape(
            k.n_lines,
            k.dim,
            game.n_lines,
            game.n_lines as usize - 1,
        ));
    }
    let mut losing: Vec<(u16, u16, u16, u16)> = Vec::new();
    for &x in &game.alice_inputs {
        for &y in &game.bob_inputs {
            for a in game.partners(x) {
                for b in game.partners(y) {
                    if !StarGame::win_lines(x, a, y, b) {
                        losing.push((x, y, a, b));
                    }
                }
            }
        }
    }
    let mut violations: Vec<(u16, u16, u16, u16)> = losing
        .par_iter()
        .filter(|&&(x, y, a, b)| {
            let va = &k.vectors[&Pair::new(x, a).unwrap()];
            let vb = &k.vectors[&Pair::new(y, b).unwrap()];
            !va.orthogonal_to(vb).unwrap_or(false)
        })
        .copied()
        .collect();
    if !violations.is_empty() {
        violations.sort_unstable();
        return Ok(QuantumValue::LessThanOne { violations });
    }
    // completeness: each line's basis must be a genuine orthogonal basis
    let report = verify_bases(k);
    if !report.is_pass() {
        return Err(GameError::InvalidRealization(report.to_string()));
    }
    Ok(QuantumValue::One {
        losing_pairs_checked: losing.len(),
    })
}

/// A pair of basis-index subsets, one per player (1-based, nonempty).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BKSPair {
    pub s_a: BTreeSet<u16>,
    pub s_b: BTreeSet<u16>,
}

impl BKSPair {
    pub fn new(s_a: BTreeSet<u16>, s_b: BTreeSet<u16>) -> Result<Self, GameError> {
        if s_a.is_empty() || s_b.is_empty() {
            return Err(GameError::BadBksPair);
        }
        Ok(BKSPair { s_a, s_b })
    }

    /// Both sides of size N-2: remove `drop_a`'s bases from Alice's side
    /// and `drop_b`'s from Bob's.
    pub fn from_removed(n: u16, drop_a: Pair, drop_b: Pair) -> Self {
        let keep = |drop: Pair| (1..=n).filter(|&r| !drop.contains(r)).collect();
        BKSPair {
            s_a: keep(drop_a),
            s_b: keep(drop_b),
        }
    }
}

/// Outcome of the bipartite-KS backtracking solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BksOutcome {
    /// A classical assignment: the 1-labeled point (as its partner index)
    /// per basis, for each player.
    Assignment {
        alice: Vec<(u16, u16)>,
        bob: Vec<(u16, u16)>,
    },
    /// Exhausted the tree: (S_A, S_B) is a bipartite KS set.
    None { nodes: u64 },
}

/// Decide whether (S_A, S_B) admits a classical assignment: one 1-labeled
/// point per basis on each side, where Alice's point in basis i and Bob's
/// in basis k may never intersect in exactly one index (sharing the whole
/// point is allowed, and per-player labelings are otherwise unconstrained).
///
/// Backtracks over Alice's bases in ascending order with ascending partner
/// choices, propagating per-basis candidate masks for Bob; at each Alice
/// leaf the Bob bases decouple, so the masks decide satisfiability.
pub fn bks_solve(k: &KSSet, pair: &BKSPair) -> Result<BksOutcome, GameError> {
    let n = k.n_lines;
    if pair.s_a.is_empty()
        || pair.s_b.is_empty()
        || pair.s_a.iter().any(|&r| r == 0 || r > n)
        || pair.s_b.iter().any(|&r| r == 0 || r > n)
    {
        return Err(GameError::BadBksPair);
    }
    assert!(n < 128, "bitmask solver supports N < 128");
    let a_bases: Vec<u16> = pair.s_a.iter().copied().collect();
    let b_bases: Vec<u16> = pair.s_b.iter().copied().collect();
    let full_mask = |basis: u16| -> u128 {
        let mut m = 0u128;
        for j in 1..=n {
            if j != basis {
                m |= 1 << j;
            }
        }
        m
    };
    // partners q of basis kb whose point {kb,q} is compatible with a_point
    let compat_mask = |a_point: Pair, kb: u16| -> u128 {
        let mut m = 0u128;
        for q in 1..=n {
            if q == kb {
                continue;
            }
            if a_point.meet(&Pair::new(kb, q).unwrap()) != 1 {
                m |= 1 << q;
            }
        }
        m
    };

    fn run(
        depth: usize,
        n: u16,
        a_bases: &[u16],
        b_bases: &[u16],
        masks: &mut Vec<u128>,
        picks: &mut Vec<u16>,
        nodes: &mut u64,
        compat: &impl Fn(Pair, u16) -> u128,
    ) -> Option<(Vec<(u16, u16)>, Vec<(u16, u16)>)> {
        *nodes += 1;
        if depth == a_bases.len() {
            let bob = b_bases
                .iter()
                .zip(masks.iter())
                .map(|(&kb, &m)| (kb, m.trailing_zeros() as u16))
                .collect();
            let alice = a_bases.iter().copied().zip(picks.iter().copied()).collect();
            return Some((alice, bob));
        }
        let ia = a_bases[depth];
        for p in 1..=n {
            if p == ia {
                continue;
            }
            let a_point = Pair::new(ia, p).unwrap();
            let saved = masks.clone();
            let mut dead = false;
            for (mi, &kb) in b_bases.iter().enumerate() {
                masks[mi] &= compat(a_point, kb);
                if masks[mi] == 0 {
                    dead = true;
                    break;
                }
            }
            if !dead {
                picks.push(p);
                if let Some(hit) = run(depth + 1, n, a_bases, b_bases, masks, picks, nodes, compat)
                {
                    return Some(hit);
                }
                picks.pop();
            }
            *masks = saved;
        }
        None
    }

    let mut masks: Vec<u128> = b_bases.iter().map(|&kb| full_mask(kb)).collect();
    let mut picks = Vec::new();
    let mut nodes = 0u64;
    match run(
        0,
        n,
        &a_bases,
        &b_bases,
        &mut masks,
        &mut picks,
        &mut nodes,
        &compat_mask,
    ) {
        Some((alice, bob)) => Ok(BksOutcome::Assignment { alice, bob }),
        None => Ok(BksOutcome::None { nodes }),
    }
}

/// Enumerate all (S_A, S_B) with |S_A| = |S_B| = N-2 that are bipartite KS
/// sets, over all C(N,2)² ordered removed-pair choices. Exhaustive; meant
/// for N ≤ 9.
pub fn optimal_bks_enumerate(k: &KSSet) -> Result<Vec<BKSPair>, GameError> {
    let n = k.n_lines;
    let removals: Vec<(Pair, Pair)> = Pair::all(n)
        .flat_map(|da| Pair::all(n).map(move |db| (da, db)))
        .collect();
    let mut hits: Vec<(Pair, Pair, BKSPair)> = removals
        .par_iter()
        .filter_map(|&(da, db)| {
            let pair = BKSPair::from_removed(n, da, db);
            match bks_solve(k, &pair) {
                Ok(BksOutcome::None { .. }) => Some((da, db, pair)),
                _ => None,
            }
        })
        .collect();
    hits.sort_by_key(|&(da, db, _)| (da, db));
    Ok(hits.into_iter().map(|(_, _, p)| p).collect())
}

// ---------------------------------------------------------------------------
// Werner-noise visibility analysis
// ---------------------------------------------------------------------------

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Outcome probabilities for one projector pair under the Werner state of
/// visibility v in local dimension d, with Bob measuring the conjugate
/// vector: tr[(P_a ⊗ P_b)ρ(V)] = V·|amp|²/d + (1-V)/d², where the
/// amplitude is 1 for the same point and 0 for orthogonal points — the only
/// two cases the games need.
struct Primitives {
    /// P(A=1, B=1) when both projectors name the same point.
    p11_same: BigRational,
    /// P(A=1, B=1) when the points are orthogonal.
    p11_orth: BigRational,
    /// Single-party marginal P(A=1) (state-independent, = 1/d).
    marginal: BigRational,
}

fn primitives(d: i64, v: &BigRational) -> Primitives {
    let d2 = ratio(1, d * d);
    let one = BigRational::one();
    Primitives {
        p11_same: v * ratio(1, d) + (&one - v) * &d2,
        p11_orth: (&one - v) * &d2,
        marginal: ratio(1, d),
    }
}

/// Winning probability of the quantum strategy on the Werner state,
/// assembled per input pair from the primitive outcome probabilities and
/// the count of losing outcome pairs (all of which are orthogonal-point
/// events).
fn noisy_value_direct(variant: Variant, d: i64, v: &BigRational) -> BigRational {
    let pr = primitives(d, v);
    let one = BigRational::one();
    // same-line inputs: win iff both fire the same point, over d points
    let same_line_win = ratio(d, 1) * &pr.p11_same;
    // distinct-line inputs: lose on (shared, other) and (other, shared) —
    // d-1 outcome pairs each — and on the d-1 colinear third-line pairs
    let diff_line_win = &one - ratio(3 * (d - 1), 1) * &pr.p11_orth;
    match variant {
        Variant::Colored => {
            // d-1 input lines per party, d-3 of them shared
            let same = ratio(d - 3, 1);
            let total = ratio((d - 1) * (d - 1), 1);
            (same.clone() * same_line_win + (total.clone() - same) * diff_line_win) / total
        }
        Variant::LineLine => {
            let same = ratio(d + 1, 1);
            let total = ratio((d + 1) * (d + 1), 1);
            (same.clone() * same_line_win + (total.clone() - same) * diff_line_win) / total
        }
        Variant::PointLine => {
            // lose iff exactly one of (Alice marks P, Bob flags P) happens
            let disagree = (&pr.marginal - &pr.p11_same) * ratio(2, 1);
            &one - disagree
        }
    }
}

/// Winning probability under visibility V via the closed forms
///
/// ```text
///   P1 = ((d-1)V + 1)/d,      P2 = 1 - 3(d-1)(1-V)/d²,
///   colored:    [(d-3)P1 + ((d-1)² - (d-3))P2] / (d-1)²
///   line-line:  [(d+1)P1 + ((d+1)² - (d+1))P2] / (d+1)²
///   point-line: (d² - 2(d-1)(1-V)) / d²
/// ```
///
/// The closed form and the direct per-outcome assembly are computed
/// independently and must agree; a mismatch is a logic error.
pub fn noisy_value(variant: Variant, d: u32, v: &BigRational) -> Result<BigRational, GameError> {
    if d < 4 || d % 2 != 0 {
        return Err(GameError::BadDimensionForNoise(d, 4));
    }
    if v < &BigRational::zero() || v > &BigRational::one() {
        return Err(GameError::VisibilityOutOfRange);
    }
    let d = d as i64;
    let one = BigRational::one();
    let p1 = ratio(d - 1, d) * v + ratio(1, d);
    let p2 = &one - ratio(3 * (d - 1), d * d) * (&one - v);
    let closed = match variant {
        Variant::Colored => {
            (ratio(d - 3, 1) * p1 + ratio((d - 1) * (d - 1) - (d - 3), 1) * p2)
                / ratio((d - 1) * (d - 1), 1)
        }
        Variant::LineLine => {
            (ratio(d + 1, 1) * p1 + ratio((d + 1) * (d + 1) - (d + 1), 1) * p2)
                / ratio((d + 1) * (d + 1), 1)
        }
        Variant::PointLine => {
            (ratio(d * d, 1) - ratio(2 * (d - 1), 1) * (&one - v)) / ratio(d * d, 1)
        }
    };
    let direct = noisy_value_direct(variant, d, v);
    assert_eq!(closed, direct, "closed form and direct assembly disagree");
    Ok(closed)
}

/// Classical winning probability of each variant: the optimal strategies
/// lose once, four times, and once out of (d-1)², (d+1)², d(d+1)
/// respectively.
pub fn classical_value(variant: Variant, d: u32) -> BigRational {
    let d = d as i64;
    let one = BigRational::one();
    match variant {
        Variant::Colored => &one - ratio(1, (d - 1) * (d - 1)),
        Variant::LineLine => &one - ratio(4, (d + 1) * (d + 1)),
        Variant::PointLine => &one - ratio(1, d * (d + 1)),
    }
}

/// Exact visibility analysis for one variant and dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisibilityReport {
    pub d: u32,
    pub variant: Variant,
    pub classical_value: BigRational,
    /// noisy_value(V) = intercept + slope·V.
    pub noisy_intercept: BigRational,
    pub noisy_slope: BigRational,
    pub threshold: BigRational,
}

/// The visibility above which the noisy quantum strategy beats the optimal
/// classical one. Computed as the crossing point of the (affine) noisy
/// value with the classical value, and asserted equal to the closed forms
///
/// ```text
///   colored:    (d-2)(4d²-9d+6) / (4(d-1)(d²-3d+3))
///   line-line:  (d²-d-1) / ((d+1)(d-1))
///   point-line: (2d²-d-2) / (2(d+1)(d-1))
/// ```
pub fn visibility_threshold(variant: Variant, d: u32) -> Result<VisibilityReport, GameError> {
    if d < 6 || d % 2 != 0 {
        return Err(GameError::BadDimensionForNoise(d, 6));
    }
    let zero = BigRational::zero();
    let one = BigRational::one();
    let at0 = noisy_value(variant, d, &zero)?;
    let at1 = noisy_value(variant, d, &one)?;
    let half = ratio(1, 2);
    let at_half = noisy_value(variant, d, &half)?;
    // affine in V: check from three sample points
    assert_eq!(
        &at_half - &at0,
        (&at1 - &at0) * &half,
        "noisy value is not affine in V"
    );
    let slope = &at1 - &at0;
    let classical = classical_value(variant, d);
    let threshold = (&classical - &at0) / &slope;
    let di = d as i64;
    let expected = match variant {
        Variant::Colored => BigRational::new(
            BigInt::from((di - 2) * (4 * di * di - 9 * di + 6)),
            BigInt::from(4 * (di - 1) * (di * di - 3 * di + 3)),
        ),
        Variant::LineLine => BigRational::new(
            BigInt::from(di * di - di - 1),
            BigInt::from((di + 1) * (di - 1)),
        ),
        Variant::PointLine => BigRational::new(
            BigInt::from(2 * di * di - di - 2),
            BigInt::from(2 * (di + 1) * (di - 1)),
        ),
    };
    assert_eq!(
        threshold, expected,
        "crossing point disagrees with the closed-form threshold"
    );
    // the noiseless strategy is perfect; the threshold sits inside (0,1]
    assert!(at1.is_one());
    assert!(threshold > zero && threshold <= one);
    Ok(VisibilityReport {
        d,
        variant,
        classical_value: classical,
        noisy_intercept: at0,
        noisy_slope: slope,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ksets::golden;

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn colored_n7_optimum_is_24_of_25() {
        let game = StarGame::standard(Variant::Colored, 7).unwrap();
        let out = classical_optimum(&game, OptimumBudget::default()).unwrap();
        assert_eq!((out.max_wins, out.total), (24, 25));
        assert!(out.certified);
        // the witness loses exactly once
        if let Witness::Lines { alice, bob } = &out.witness {
            assert_eq!(count_losses(&game, alice, bob), 1);
        } else {
            panic!("line witness expected");
        }
    }

    #[test]
    fn colored_n11_certified_by_branch_and_bound() {
        // the strategy space (10^9 Alice vectors) is beyond the exhaustive
        // cap; the bound tree certifies the optimum anyway
        let game = StarGame::standard(Variant::Colored, 11).unwrap();
        let budget = OptimumBudget {
            exhaustive_cap: 1,
            bb_nodes: 10_000_000,
        };
        let out = classical_optimum(&game, budget).unwrap();
        assert!(out.certified);
        assert_eq!((out.max_wins, out.total), (80, 81));
        // and a tiny node budget yields an explicitly uncertified result
        let cut = classical_optimum(
            &game,
            OptimumBudget {
                exhaustive_cap: 1,
                bb_nodes: 50,
            },
        )
        .unwrap();
        assert!(!cut.certified);
        assert!(cut.max_wins <= 80);
    }

    #[test]
    fn published_table_strategy_achieves_24() {
        // Alice: point 12 for lines 1,2; 34 for 3,4; 56 for 5.
        // Bob: 34 for 3,4; 56 for 5,6; 67 for 7.
        let game = StarGame::standard(Variant::Colored, 7).unwrap();
        let alice = DetStrategy {
            choices: vec![(1, 2), (2, 1), (3, 4), (4, 3), (5, 6)],
        };
        let bob = DetStrategy {
            choices: vec![(3, 4), (4, 3), (5, 6), (6, 5), (7, 6)],
        };
        assert_eq!(count_losses(&game, &alice, &bob), 1);
    }

    #[test]
    fn line_line_n7_optimum_is_45_of_49() {
        let game = StarGame::standard(Variant::LineLine, 7).unwrap();
        let out = classical_optimum(&game, OptimumBudget::default()).unwrap();
        assert_eq!((out.max_wins, out.total), (45, 49));
        if let Witness::Lines { alice, bob } = &out.witness {
            assert_eq!(count_losses(&game, alice, bob), 4);
        } else {
            panic!("line witness expected");
        }
    }

    #[test]
    fn point_line_n7_optimum_is_41_of_42() {
        let game = StarGame::standard(Variant::PointLine, 7).unwrap();
        let out = classical_optimum(&game, OptimumBudget::default()).unwrap();
        assert_eq!((out.max_wins, out.total), (41, 42));
    }

    #[test]
    fn separable_engine_matches_joint_enumeration_n7() {
        let game = StarGame::standard(Variant::Colored, 7).unwrap();
        let table = lines_payoff_table(&game);
        let separable = engine::exhaustive_max(&table).value;
        let joint = engine::joint_max_bruteforce(&table);
        assert_eq!(separable, joint);
    }

    #[test]
    fn shifted_input_witness_loses_once() {
        // Alice holds every line except N-3, N-2; Bob everything but
        // N-1, N; both pick {i,i+1} for odd i; Alice maps line N to
        // {N-1,N}.
        let n = 7u16;
        let game = StarGame::colored_with_inputs(
            n,
            (1..=n).filter(|&i| i != n - 3 && i != n - 2).collect(),
            (1..=n - 2).collect(),
        )
        .unwrap();
        let choice = |i: u16| -> u16 {
            if i == n {
                n - 1
            } else if i % 2 == 1 {
                i + 1
            } else {
                i - 1
            }
        };
        let alice = DetStrategy {
            choices: game.alice_inputs.iter().map(|&i| (i, choice(i))).collect(),
        };
        let bob = DetStrategy {
            choices: game.bob_inputs.iter().map(|&i| (i, choice(i))).collect(),
        };
        assert_eq!(count_losses(&game, &alice, &bob), 1);
        // the single loss is Alice at line N against Bob at line N-2
        for &x in &game.alice_inputs {
            for &y in &game.bob_inputs {
                let w = StarGame::win_lines(x, choice(x), y, choice(y));
                assert_eq!(w, (x, y) != (n, n - 2));
            }
        }
    }

    #[test]
    fn quantum_value_is_one_on_golden_sets() {
        for (n, k) in [
            (7, golden::table_j7()),
            (9, golden::table_j9()),
            (11, golden::table_j11()),
        ] {
            let game = StarGame::standard(Variant::Colored, n).unwrap();
            match quantum_value(&game, &k).unwrap() {
                QuantumValue::One {
                    losing_pairs_checked,
                } => assert!(losing_pairs_checked > 0),
                other => panic!("expected value 1 at N={n}, got {other:?}"),
            }
        }
    }

    #[test]
    fn quantum_value_detects_impostor() {
        let mut k = golden::table_j7();
        let impostor = k.vectors[&Pair::new(1, 3).unwrap()].clone();
        k.vectors.insert(Pair::new(3, 4).unwrap(), impostor);
        let game = StarGame::standard(Variant::Colored, 7).unwrap();
        match quantum_value(&game, &k).unwrap() {
            QuantumValue::LessThanOne { violations } => {
                assert!(!violations.is_empty());
                // some violation touches the tampered point {3,4}
                assert!(violations.iter().any(|&(x, y, a, b)| {
                    (x.min(a), x.max(a)) == (3, 4) || (y.min(b), y.max(b)) == (3, 4)
                }));
            }
            other => panic!("expected < 1, got {other:?}"),
        }
    }

    #[test]
    fn bks_examples_n7() {
        let k = golden::table_j7();
        // disjoint removals {1,2} / {3,4}: no assignment
        let p = BKSPair::from_removed(7, Pair::new(1, 2).unwrap(), Pair::new(3, 4).unwrap());
        assert!(matches!(bks_solve(&k, &p).unwrap(), BksOutcome::None { .. }));
        // |S_A| = 4 with S_B = all bases: assignment exists
        let p = BKSPair::new([4, 5, 6, 7].into_iter().collect(), (1..=7).collect()).unwrap();
        assert!(matches!(
            bks_solve(&k, &p).unwrap(),
            BksOutcome::Assignment { .. }
        ));
        // overlapping removals {1,2} / {2,3}: assignment exists
        let p = BKSPair::from_removed(7, Pair::new(1, 2).unwrap(), Pair::new(2, 3).unwrap());
        assert!(matches!(
            bks_solve(&k, &p).unwrap(),
            BksOutcome::Assignment { .. }
        ));
    }

    #[test]
    fn bks_assignments_satisfy_the_constraints() {
        let k = golden::table_j7();
        let p = BKSPair::from_removed(7, Pair::new(1, 2).unwrap(), Pair::new(2, 3).unwrap());
        if let BksOutcome::Assignment { alice, bob } = bks_solve(&k, &p).unwrap() {
            for &(ia, pa) in &alice {
                for &(kb, qb) in &bob {
                    let a_point = Pair::new(ia, pa).unwrap();
                    let b_point = Pair::new(kb, qb).unwrap();
                    assert_ne!(a_point.meet(&b_point), 1);
                }
            }
        } else {
            panic!("assignment expected");
        }
    }

    #[test]
    fn bks_full_pair_has_no_assignment() {
        for k in [
            golden::table_j7(),
            golden::table_j9(),
            golden::table_j11(),
        ] {
            let all: BTreeSet<u16> = (1..=k.n_lines).collect();
            let p = BKSPair::new(all.clone(), all).unwrap();
            assert!(matches!(bks_solve(&k, &p).unwrap(), BksOutcome::None { .. }));
        }
    }

    #[test]
    fn optimal_bks_enumeration_n7_is_disjoint_family() {
        let k = golden::table_j7();
        let hits = optimal_bks_enumerate(&k).unwrap();
        assert_eq!(hits.len(), 210);
        for pair in &hits {
            let removed_a: Vec<u16> = (1..=7).filter(|r| !pair.s_a.contains(r)).collect();
            let removed_b: Vec<u16> = (1..=7).filter(|r| !pair.s_b.contains(r)).collect();
            assert_eq!((removed_a.len(), removed_b.len()), (2, 2));
            assert!(removed_a.iter().all(|r| !removed_b.contains(r)));
        }
    }

    #[test]
    fn noisy_value_examples() {
        // V = 1 is perfect for every variant
        for variant in [Variant::Colored, Variant::LineLine, Variant::PointLine] {
            for d in [6u32, 8, 10] {
                assert!(noisy_value(variant, d, &BigRational::one()).unwrap().is_one());
            }
        }
        // colored d=6 at the threshold equals the classical value exactly
        let v = noisy_value(Variant::Colored, 6, &rational(32, 35)).unwrap();
        assert_eq!(v, rational(24, 25));
        // point-line d=6 with no visibility: 13/18
        let v = noisy_value(Variant::PointLine, 6, &BigRational::zero()).unwrap();
        assert_eq!(v, rational(13, 18));
        // guards
        assert!(noisy_value(Variant::Colored, 7, &BigRational::one()).is_err());
        assert!(noisy_value(Variant::Colored, 6, &rational(3, 2)).is_err());
    }

    #[test]
    fn noisy_value_is_affine_in_v() {
        for variant in [Variant::Colored, Variant::LineLine, Variant::PointLine] {
            let f = |v: BigRational| noisy_value(variant, 8, &v).unwrap();
            let a = f(rational(0, 1));
            let b = f(rational(1, 3));
            let c = f(rational(2, 3));
            assert_eq!(&b - &a, &c - &b);
        }
    }

    #[test]
    fn visibility_thresholds_d6_to_d10() {
        let cases = [
            (Variant::Colored, 6, (32, 35)),
            (Variant::Colored, 8, (285, 301)),
            (Variant::Colored, 10, (632, 657)),
            (Variant::LineLine, 6, (29, 35)),
            (Variant::LineLine, 8, (55, 63)),
            (Variant::LineLine, 10, (89, 99)),
            (Variant::PointLine, 6, (32, 35)),
            (Variant::PointLine, 8, (59, 63)),
            (Variant::PointLine, 10, (94, 99)),
        ];
        for (variant, d, (num, den)) in cases {
            let report = visibility_threshold(variant, d).unwrap();
            assert_eq!(report.threshold, rational(num, den), "{variant:?} d={d}");
        }
    }

    #[test]
    fn closed_form_crosses_classical_at_threshold() {
        for variant in [Variant::Colored, Variant::LineLine, Variant::PointLine] {
            for d in [6u32, 8, 10] {
                let report = visibility_threshold(variant, d).unwrap();
                let at = noisy_value(variant, d, &report.threshold).unwrap();
                assert_eq!(at, report.classical_value);
            }
        }
    }
}
