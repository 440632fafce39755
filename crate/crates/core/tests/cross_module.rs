//! Cross-module invariants: facts that tie two subsystems together and
//! would not be caught by either module's own tests.

use num_bigint::BigInt;
use star_ks_core::bell;
use star_ks_core::designs;
use star_ks_core::games::{self, Variant};
use star_ks_core::ksets::{golden, orthogonality_graph, Pair};
use std::collections::BTreeSet;

/// The colored optimum equals the Bell local bound (N-2)²-1 at N = 7 and 9:
/// the functional counts wins, so the two brute-force engines must agree.
#[test]
fn classical_optimum_equals_bell_bound() {
    for n in [7u16, 9] {
        let game = games::StarGame::standard(Variant::Colored, n).unwrap();
        let classical =
            games::classical_optimum(&game, games::OptimumBudget::default()).unwrap();
        let f = bell::build_functional(n).unwrap();
        let (bound, _, _) = bell::local_bound(&f);
        let expected = (n as i64 - 2) * (n as i64 - 2) - 1;
        assert_eq!(classical.max_wins as i64, expected);
        assert_eq!(bound, expected);
        assert_eq!(classical.total as i64, expected + 1);
    }
}

/// The orthogonality graph of the faithful N=7 set is exactly J(7,2); the
/// N=11 and N=9 graphs contain it strictly.
#[test]
fn orthogonality_graphs_against_johnson() {
    let johnson_edges = |n: u16| -> BTreeSet<(Pair, Pair)> {
        let g = designs::johnson_graph(n);
        let labels = g.labels.clone().unwrap();
        g.edges
            .iter()
            .map(|&(a, b)| (labels[a], labels[b]))
            .collect()
    };

    let g7 = orthogonality_graph(&golden::table_j7());
    assert_eq!(g7.edge_labels(), johnson_edges(7));

    for (n, k) in [(11u16, golden::table_j11()), (9, golden::table_j9())] {
        let g = orthogonality_graph(&k);
        let edges = g.edge_labels();
        let johnson = johnson_edges(n);
        assert!(edges.is_superset(&johnson), "missing adjacency at N={n}");
        assert!(edges.len() > johnson.len(), "expected extras at N={n}");
    }
}

/// ω(J(N,2)) = N-1 equals the realization dimension, pinning the lower end
/// of ω ≤ ξ ≤ χ for the golden sets.
#[test]
fn clique_number_matches_dimension() {
    for (n, k) in [(7u16, golden::table_j7()), (9, golden::table_j9())] {
        let cq = designs::clique_number(&designs::johnson_graph(n));
        assert_eq!(cq, n as usize - 1);
        assert_eq!(k.dim, cq);
    }
}

/// The incremental exact rank agrees with a brute-force rational
/// row-reduction on a random 100-point subset of the actual N=7 saturating
/// set (not just synthetic data).
#[test]
fn affine_rank_validated_on_saturating_subset() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    let f = bell::build_functional(7).unwrap();
    let (bound, _, _) = bell::local_bound(&f);
    assert_eq!(bound, 24);

    // regenerate the saturating CG differences through the public pieces
    let cert = bell::nontightness_certificate(&f, bell::CertificateBudget::default());
    assert!(cert.complete);

    // rebuild a subset of saturating points by re-running the bound witness
    // machinery: sample deterministic pairs, keep those achieving 24
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5a7);
    let mut sat_cg: Vec<Vec<BigInt>> = Vec::new();
    let mut all: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    // exhaustive over Alice (6^5) with per-y best responses gives exactly
    // the saturating family; enumerate a thinned version here
    for id in 0..6u64.pow(5) {
        let mut alice = vec![0usize; 5];
        let mut v = id;
        for slot in alice.iter_mut().rev() {
            *slot = (v % 6) as usize;
            v /= 6;
        }
        // greedy best response per Bob input
        let mut bob = vec![0usize; 5];
        let mut total = 0i64;
        for (yi, slot) in bob.iter_mut().enumerate() {
            let mut best = i64::MIN;
            for b in 0..6usize {
                let mut s = 0i64;
                for (xi, &a) in alice.iter().enumerate() {
                    s += bell::coefficient(
                        a as u16 + 1,
                        b as u16 + 1,
                        f.alice_inputs[xi],
                        f.bob_inputs[yi],
                    );
                }
                if s > best {
                    best = s;
                    *slot = b;
                }
            }
            total += best;
        }
        if total == 24 {
            all.push((alice, bob));
        }
    }
    assert!(!all.is_empty());
    all.shuffle(&mut rng);
    let base = bell::to_cg(&all[0].0, &all[0].1, &f).unwrap();
    for (alice, bob) in all.iter().skip(1).take(100) {
        let cg = bell::to_cg(alice, bob, &f).unwrap();
        sat_cg.push(
            cg.entries
                .iter()
                .zip(&base.entries)
                .map(|(a, b)| BigInt::from(a - b))
                .collect(),
        );
    }
    let mut inc = bell::IncrementalRank::new(base.entries.len());
    for row in &sat_cg {
        inc.insert(row.clone());
    }
    assert_eq!(inc.rank(), bell::rational_rank(&sat_cg));
    assert!(inc.rank() <= cert.affine_rank);
}

/// Parity certificate implies the exhaustive search finds nothing, checked
/// on the two sets where exhaustion is instant.
#[test]
fn parity_implies_search_proves_none() {
    use star_ks_core::ksets::{ks_assignment_search, parity_check, SearchBudget, SearchOutcome};
    for k in [golden::table_j7(), golden::table_j9()] {
        assert!(parity_check(&k));
        assert!(matches!(
            ks_assignment_search(&k, false, SearchBudget::default()),
            SearchOutcome::ProofOfNone { .. }
        ));
    }
}

/// The Bell functional value of any strategy pair equals its win count in
/// the colored game (position/partner conversion included), so the payoff
/// the two modules optimize is literally the same function.
#[test]
fn functional_value_equals_win_count() {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
    let f = bell::build_functional(7).unwrap();
    let game = games::StarGame::standard(Variant::Colored, 7).unwrap();
    for _ in 0..2_000 {
        let alice: Vec<usize> = (0..5).map(|_| rng.gen_range(0..6)).collect();
        let bob: Vec<usize> = (0..5).map(|_| rng.gen_range(0..6)).collect();
        let value = f.value_of(&alice, &bob).unwrap();
        let mut wins = 0i64;
        for (xi, &x) in game.alice_inputs.iter().enumerate() {
            for (yi, &y) in game.bob_inputs.iter().enumerate() {
                let a = bell::position_to_partner(x, alice[xi] as u16 + 1);
                let b = bell::position_to_partner(y, bob[yi] as u16 + 1);
                if games::StarGame::win_lines(x, a, y, b) {
                    wins += 1;
                }
            }
        }
        assert_eq!(value, wins);
    }
}
