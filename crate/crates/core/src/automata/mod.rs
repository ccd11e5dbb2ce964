//! Automorphisms of the rooted `m`-regular tree presented by wreath recursion.
//!
//! Convention: automorphisms act on the right and products compose left to
//! right, so `a.compose(&b)` acts as `a` first and then `b`:
//! `act(a·b, w) = act(b, act(a, w))`. Section rule: `(ab)_i = a_i · b_{σ_a(i)}`.

mod element;
mod machine;
mod portrait;
pub mod text;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use element::TreeAutomorphism;
pub use machine::{MealyMachine, StateRecord};
pub use portrait::Portrait;

/// Default bound on state closures.
pub const DEFAULT_LIMIT: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("state closure exceeded the limit of {limit}")]
pub struct Exceeded {
    pub limit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("degree must be at least 2, got {0}")]
    InvalidDegree(usize),
    #[error("letter {letter} out of range 1..={degree}")]
    LetterOutOfRange { letter: u32, degree: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("state {state}: {reason}")]
    MalformedState { state: usize, reason: String },
    #[error(transparent)]
    Exceeded(#[from] Exceeded),
}

/// Alphabet size of the tree; letters are `1..=m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree(usize);

impl Degree {
    pub fn new(m: usize) -> Result<Self, AutomataError> {
        if m < 2 {
            return Err(AutomataError::InvalidDegree(m));
        }
        Ok(Degree(m))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A vertex of the tree: a finite word over the 1-based alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexWord(Vec<u32>);

impl VertexWord {
    pub fn new(letters: Vec<u32>) -> Self {
        VertexWord(letters)
    }

    pub fn empty() -> Self {
        VertexWord(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, degree: Degree) -> Result<(), AutomataError> {
        for &l in &self.0 {
            if l == 0 || l as usize > degree.get() {
                return Err(AutomataError::LetterOutOfRange {
                    letter: l,
                    degree: degree.get(),
                });
            }
        }
        Ok(())
    }

    pub fn concat(&self, other: &VertexWord) -> VertexWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        VertexWord(v)
    }

    /// All words of exactly `len` letters, in lexicographic order.
    pub fn all_of_length(degree: Degree, len: usize) -> Vec<VertexWord> {
        let mut out = vec![VertexWord::empty()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * degree.get());
            for w in &out {
                for l in 1..=degree.get() as u32 {
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(VertexWord(v));
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for VertexWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for VertexWord {
    type Err = String;

    /// Comma-separated 1-based letters; the empty string is the root.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(VertexWord::empty());
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| format!("bad letter `{}`", t.trim()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(VertexWord)
    }
}
