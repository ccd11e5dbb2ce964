use std::collections::BTreeMap;
use std::fmt::Write;

use super::{Degree, VertexWord};
use crate::perm::Perm;

/// Activities of an automorphism at every vertex of length `< depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Portrait {
    degree: Degree,
    depth: usize,
    decorations: BTreeMap<VertexWord, Perm>,
}

impl Portrait {
    pub(crate) fn new(
        degree: Degree,
        depth: usize,
        decorations: BTreeMap<VertexWord, Perm>,
    ) -> Self {
        Portrait {
            degree,
            depth,
            decorations,
        }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn decoration(&self, w: &VertexWord) -> Option<&Perm> {
        self.decorations.get(w)
    }

    pub fn decorations(&self) -> &BTreeMap<VertexWord, Perm> {
        &self.decorations
    }

    /// One line per vertex in breadth-first order; the root is printed as `-`.
    pub fn to_text(&self) -> String {
        let mut vs: Vec<_> = self.decorations.iter().collect();
        vs.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(b.0)));
        let mut out = String::new();
        for (w, p) in vs {
            let label = if w.is_empty() {
                "-".to_string()
            } else {
                w.to_string()
            };
            writeln!(out, "{label}: {p}").unwrap();
        }
        out
    }

    /// The truncated tree in DOT; nodes are labeled with their activity.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph portrait {\n");
        let id = |w: &VertexWord| {
            if w.is_empty() {
                "v".to_string()
            } else {
                format!(
                    "v_{}",
                    w.letters()
                        .iter()
                        .map(|l| l.to_string())
                        .collect::<Vec<_>>()
                        .join("_")
                )
            }
        };
        for (w, p) in &self.decorations {
            writeln!(out, "  {} [label=\"{}\"];", id(w), p).unwrap();
        }
        for w in self.decorations.keys() {
            if w.is_empty() {
                continue;
            }
            let parent = VertexWord::new(w.letters()[..w.len() - 1].to_vec());
            let last = w.letters()[w.len() - 1];
            writeln!(out, "  {} -> {} [label=\"{}\"];", id(&parent), id(w), last).unwrap();
        }
        out.push_str("}\n");
        out
    }
}
