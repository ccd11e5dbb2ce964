//! Invariant checks shared by the property test targets and the acceptance
//! target. Every check returns `Err` with the failing case on a violation.
#![allow(dead_code)]

pub mod automata;
pub mod dsl;
pub mod gdata;
pub mod tree_ops;

use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};
use treeperm::automata::DEFAULT_LIMIT;
use treeperm::catalog;
use treeperm::TreeAutomorphism;

/// A word over generators and their inverses: `(generator index, inverted)`.
/// Indices are reduced modulo the number of generators when evaluated.
pub type GenWord = Vec<(usize, bool)>;

/// A deterministic runner, so failures reproduce across runs.
pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

pub fn report<V: std::fmt::Debug>(name: &str, r: Result<(), TestError<V>>) -> Result<(), String> {
    r.map_err(|e| format!("{name}: {e}"))
}

/// Machine entries of the catalog with their generators.
pub const ENTRIES: [&str; 7] = [
    "odometer",
    "zwrz-3",
    "zwrz-6",
    "c2-ext-16",
    "z-ext-8",
    "w3-10",
    "w3-2",
];

pub fn generators(entry: &str) -> Vec<TreeAutomorphism> {
    let file = catalog::load(entry).unwrap();
    file.machines()
        .unwrap()
        .generators()
        .into_iter()
        .map(|(_, g)| g)
        .collect()
}

pub fn eval_word(gens: &[TreeAutomorphism], w: &[(usize, bool)]) -> TreeAutomorphism {
    let mut acc = TreeAutomorphism::identity(gens[0].degree());
    for &(i, inv) in w {
        let g = &gens[i % gens.len()];
        let g = if inv { g.inverse() } else { g.clone() };
        acc = acc.compose(&g).unwrap();
    }
    acc
}

pub const LIMIT: usize = DEFAULT_LIMIT;

/// A named invariant check.
pub type Check = (&'static str, fn() -> Result<(), String>);

/// Panics with the readable failure message of a check.
pub fn check(f: fn() -> Result<(), String>) {
    if let Err(e) = f() {
        panic!("{e}");
    }
}
