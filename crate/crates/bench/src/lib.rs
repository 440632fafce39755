//! Shared fixtures for the benchmark suite.

use star_ks_core::designs;
use star_ks_core::hadamard::{gh_kronecker, gh_mult_table, gh_to_shadamard, jungnickel_gh};
use star_ks_core::ksets::{golden, lisonek_construct, KSSet};
use star_ks_core::GHMatrix;

pub fn gh18() -> GHMatrix {
    gh_kronecker(&jungnickel_gh(3, 2).unwrap(), &gh_mult_table(3).unwrap()).unwrap()
}

pub fn kset_j11() -> KSSet {
    lisonek_construct(&gh_to_shadamard(&jungnickel_gh(5, 2).unwrap()).unwrap()).unwrap()
}

pub fn kset_j49() -> KSSet {
    designs::recursive_construct(&golden::table_j7(), &designs::ag2_rbibd(7).unwrap()).unwrap()
}
