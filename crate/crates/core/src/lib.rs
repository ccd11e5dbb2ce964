//! Exact computation with finite-state automorphisms of rooted regular trees.
//!
//! * [`automata`]: wreath recursion, products, inverses, state closures,
//!   minimization, the machine text format.
//! * [`tree_ops`]: k-inflation and deflation to the binary tree.
//! * [`gdata`]: self-similar representations from virtual endomorphism data
//!   and the wreath-product extensions built on them.
//! * [`catalog`]: shipped machines, ambient groups and an independent
//!   wreath-product oracle.
//! * [`dsl`]: the machine-definition language.

pub mod automata;
pub mod catalog;
pub mod dsl;
pub mod gdata;
pub mod perm;
pub mod tree_ops;

pub use automata::{Degree, Exceeded, MealyMachine, TreeAutomorphism, VertexWord};
pub use perm::Perm;
