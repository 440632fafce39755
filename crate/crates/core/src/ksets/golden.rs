//! Golden vector data for the three base KS sets: the 21-vector set over
//! zeta_3 for J(7,2), the 55-vector set over zeta_5 for J(11,2), and the
//! 36-vector integer set for J(9,2). Construction tests pin their output to
//! these tables entry for entry.
//!
//! Entries of the first two tables are exponents e with the entry standing
//! for zeta_n^e; entries of the third are plain integers.

use super::{standard_bases, KSSet, KsVector, Pair};
use std::collections::BTreeMap;

/// J(7,2) realization in dimension 6: exponents of zeta_3.
pub const TABLE_J7: [((u16, u16), [u32; 6]); 21] = [
    ((1, 2), [0, 0, 0, 0, 0, 0]),
    ((1, 3), [1, 2, 0, 2, 0, 1]),
    ((1, 4), [1, 0, 2, 2, 1, 0]),
    ((1, 5), [0, 2, 2, 0, 1, 1]),
    ((1, 6), [2, 2, 0, 1, 1, 0]),
    ((1, 7), [2, 0, 2, 1, 0, 1]),
    ((2, 3), [2, 1, 0, 1, 0, 2]),
    ((2, 4), [2, 0, 1, 1, 2, 0]),
    ((2, 5), [0, 1, 1, 0, 2, 2]),
    ((2, 6), [1, 1, 0, 2, 2, 0]),
    ((2, 7), [1, 0, 1, 2, 0, 2]),
    ((3, 4), [2, 2, 2, 1, 1, 1]),
    ((3, 5), [1, 1, 2, 2, 1, 2]),
    ((3, 6), [0, 1, 0, 0, 1, 1]),
    ((3, 7), [0, 2, 2, 0, 0, 2]),
    ((4, 5), [1, 2, 1, 2, 2, 1]),
    ((4, 6), [0, 2, 2, 0, 2, 0]),
    ((4, 7), [0, 0, 1, 0, 1, 1]),
    ((5, 6), [2, 1, 2, 1, 2, 1]),
    ((5, 7), [2, 2, 1, 1, 1, 2]),
    ((6, 7), [1, 2, 2, 2, 1, 1]),
];

/// J(11,2) realization in dimension 10: exponents of zeta_5.
pub const TABLE_J11: [((u16, u16), [u32; 10]); 55] = [
    ((1, 2), [0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    ((1, 3), [4, 0, 1, 2, 3, 3, 4, 0, 1, 2]),
    ((1, 4), [1, 3, 0, 2, 4, 2, 4, 1, 3, 0]),
    ((1, 5), [1, 4, 2, 0, 3, 2, 0, 3, 1, 4]),
    ((1, 6), [4, 3, 2, 1, 0, 3, 2, 1, 0, 4]),
    ((1, 7), [0, 4, 1, 1, 4, 0, 2, 3, 3, 2]),
    ((1, 8), [1, 1, 4, 0, 4, 3, 3, 2, 0, 2]),
    ((1, 9), [4, 0, 4, 1, 1, 2, 0, 2, 3, 3]),
    ((1, 10), [4, 1, 1, 4, 0, 2, 3, 3, 2, 0]),
    ((1, 11), [1, 4, 0, 4, 1, 3, 2, 0, 2, 3]),
    ((2, 3), [3, 0, 2, 4, 1, 1, 3, 0, 2, 4]),
    ((2, 4), [2, 1, 0, 4, 3, 4, 3, 2, 1, 0]),
    ((2, 5), [2, 3, 4, 0, 1, 4, 0, 1, 2, 3]),
    ((2, 6), [3, 1, 4, 2, 0, 1, 4, 2, 0, 3]),
    ((2, 7), [0, 3, 2, 2, 3, 0, 4, 1, 1, 4]),
    ((2, 8), [2, 2, 3, 0, 3, 1, 1, 4, 0, 4]),
    ((2, 9), [3, 0, 3, 2, 2, 4, 0, 4, 1, 1]),
    ((2, 10), [3, 2, 2, 3, 0, 4, 1, 1, 4, 0]),
    ((2, 11), [2, 3, 0, 3, 2, 1, 4, 0, 4, 1]),
    ((3, 4), [0, 3, 1, 4, 2, 0, 3, 1, 4, 2]),
    ((3, 5), [0, 4, 3, 2, 1, 0, 4, 3, 2, 1]),
    ((3, 6), [3, 3, 3, 3, 3, 1, 1, 1, 1, 1]),
    ((3, 7), [4, 4, 2, 3, 2, 3, 1, 3, 4, 4]),
    ((3, 8), [0, 1, 0, 2, 2, 1, 2, 2, 1, 4]),
    ((3, 9), [3, 0, 0, 3, 4, 0, 4, 2, 4, 0]),
    ((3, 10), [3, 1, 2, 1, 3, 0, 2, 3, 3, 2]),
    ((3, 11), [0, 4, 1, 1, 4, 1, 1, 0, 3, 0]),
    ((4, 5), [2, 2, 2, 2, 2, 4, 4, 4, 4, 4]),
    ((4, 6), [0, 1, 2, 3, 4, 0, 1, 2, 3, 4]),
    ((4, 7), [1, 2, 1, 3, 3, 2, 1, 4, 1, 2]),
    ((4, 8), [2, 4, 4, 2, 3, 0, 2, 3, 3, 2]),
    ((4, 9), [0, 3, 4, 3, 0, 4, 4, 3, 1, 3]),
    ((4, 10), [0, 4, 1, 1, 4, 4, 2, 4, 0, 0]),
    ((4, 11), [2, 2, 0, 1, 0, 0, 1, 1, 0, 3]),
    ((5, 6), [0, 2, 4, 1, 3, 0, 2, 4, 1, 3]),
    ((5, 7), [1, 3, 3, 1, 2, 2, 2, 1, 4, 1]),
    ((5, 8), [2, 0, 1, 0, 2, 0, 3, 0, 1, 1]),
    ((5, 9), [0, 4, 1, 1, 4, 4, 0, 0, 4, 2]),
    ((5, 10), [0, 0, 3, 4, 3, 4, 3, 1, 3, 4]),
    ((5, 11), [2, 3, 2, 4, 4, 0, 2, 3, 3, 2]),
    ((6, 7), [4, 2, 3, 2, 4, 3, 4, 4, 3, 1]),
    ((6, 8), [0, 4, 1, 1, 4, 1, 0, 3, 0, 1]),
    ((6, 9), [3, 3, 1, 2, 1, 0, 2, 3, 3, 2]),
    ((6, 10), [3, 4, 3, 0, 0, 0, 0, 4, 2, 4]),
    ((6, 11), [0, 2, 2, 0, 1, 1, 4, 1, 2, 2]),
    ((7, 8), [1, 0, 0, 1, 3, 3, 0, 0, 3, 4]),
    ((7, 9), [4, 4, 0, 2, 0, 2, 2, 0, 1, 0]),
    ((7, 10), [4, 0, 2, 0, 4, 2, 0, 1, 0, 2]),
    ((7, 11), [1, 3, 1, 0, 0, 3, 4, 3, 0, 0]),
    ((8, 9), [0, 1, 3, 1, 0, 0, 3, 4, 3, 0]),
    ((8, 10), [0, 2, 0, 4, 4, 0, 1, 0, 2, 2]),
    ((8, 11), [2, 0, 4, 4, 0, 1, 0, 2, 2, 0]),
    ((9, 10), [3, 1, 0, 0, 1, 4, 3, 0, 0, 3]),
    ((9, 11), [0, 4, 4, 0, 2, 0, 2, 2, 0, 1]),
    ((10, 11), [0, 0, 1, 3, 1, 0, 0, 3, 4, 3]),
];

/// J(9,2) realization in dimension 8: integer entries.
pub const TABLE_J9: [((u16, u16), [i64; 8]); 36] = [
    ((1, 2), [0, 0, 0, 0, 0, 0, 0, 1]),
    ((1, 3), [0, 0, 0, 0, 0, 1, -1, 0]),
    ((1, 4), [0, 0, 0, 1, 0, 0, 0, 0]),
    ((1, 5), [0, 1, -1, 0, 0, 0, 0, 0]),
    ((1, 6), [0, 1, 1, 0, 0, 0, 0, 0]),
    ((1, 7), [1, 0, 0, 0, 0, 0, 0, 0]),
    ((1, 8), [0, 0, 0, 0, 0, 1, 1, 0]),
    ((1, 9), [0, 0, 0, 0, 1, 0, 0, 0]),
    ((2, 3), [1, 1, 1, 1, 0, 0, 0, 0]),
    ((2, 4), [1, 0, -1, 0, 0, 0, 0, 0]),
    ((2, 5), [0, 0, 0, 0, 1, 0, 1, 0]),
    ((2, 6), [1, -1, 1, -1, 0, 0, 0, 0]),
    ((2, 7), [0, 0, 0, 0, 1, 0, -1, 0]),
    ((2, 8), [0, 1, 0, -1, 0, 0, 0, 0]),
    ((2, 9), [0, 0, 0, 0, 0, 1, 0, 0]),
    ((3, 4), [0, 0, 0, 0, 1, 1, 1, -1]),
    ((3, 5), [0, 0, 0, 0, -1, 1, 1, 1]),
    ((3, 6), [1, 1, -1, -1, 0, 0, 0, 0]),
    ((3, 7), [0, 0, 1, -1, 0, 0, 0, 0]),
    ((3, 8), [0, 0, 0, 0, 1, 0, 0, 1]),
    ((3, 9), [1, -1, 0, 0, 0, 0, 0, 0]),
    ((4, 5), [0, 0, 0, 0, 1, 1, -1, 1]),
    ((4, 6), [0, 0, 0, 0, 1, -1, 0, 0]),
    ((4, 7), [0, 1, 0, 0, 0, 0, 0, 0]),
    ((4, 8), [1, 0, 1, 0, 0, 0, 0, 0]),
    ((4, 9), [0, 0, 0, 0, 0, 0, 1, 1]),
    ((5, 6), [1, 0, 0, 1, 0, 0, 0, 0]),
    ((5, 7), [0, 0, 0, 0, 0, 1, 0, -1]),
    ((5, 8), [-1, 1, 1, 1, 0, 0, 0, 0]),
    ((5, 9), [1, 1, 1, -1, 0, 0, 0, 0]),
    ((6, 7), [0, 0, 0, 0, 1, 1, 1, 1]),
    ((6, 8), [0, 0, 0, 0, 1, 1, -1, -1]),
    ((6, 9), [0, 0, 0, 0, 0, 0, 1, -1]),
    ((7, 8), [0, 0, 0, 0, 1, -1, 1, -1]),
    ((7, 9), [0, 0, 1, 1, 0, 0, 0, 0]),
    ((8, 9), [1, 1, -1, 1, 0, 0, 0, 0]),
];

fn assemble<const D: usize, T: Copy>(
    n_lines: u16,
    root_order: u32,
    data: &[((u16, u16), [T; D])],
    build: impl Fn(&[T; D]) -> KsVector,
) -> KSSet {
    let mut vectors = BTreeMap::new();
    for ((i, j), raw) in data {
        vectors.insert(Pair::new(*i, *j).unwrap(), build(raw));
    }
    KSSet {
        n_lines,
        dim: D,
        root_order,
        vectors,
        bases: standard_bases(n_lines),
    }
}

/// The golden J(7,2) set: 21 vectors, 7 bases of 6, root order 3.
pub fn table_j7() -> KSSet {
    assemble(7, 3, &TABLE_J7, |raw| KsVector::from_exponents(3, raw))
}

/// The golden J(11,2) set: 55 vectors, 11 bases of 10, root order 5.
pub fn table_j11() -> KSSet {
    assemble(11, 5, &TABLE_J11, |raw| KsVector::from_exponents(5, raw))
}

/// The golden J(9,2) set: 36 integer vectors, 9 bases of 8.
pub fn table_j9() -> KSSet {
    assemble(9, 1, &TABLE_J9, |raw| KsVector::from_ints(raw))
}
