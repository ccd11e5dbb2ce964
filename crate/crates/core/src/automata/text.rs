//! The line-oriented machine format and DOT export.
//!
//! ```text
//! treeperm-machine v1
//! # free-form comments
//! degree 3
//! state gamma id -> gamma e alpha
//! state alpha (1 2) -> e alpha e
//! state e id -> e e e
//! root gamma
//! root alpha
//! ```
//!
//! Every `root` line names a generator; the first one is the default.

use std::collections::HashMap;
use std::fmt::Write;

use thiserror::Error;

use super::{Degree, MealyMachine, StateRecord, TreeAutomorphism};
use crate::perm::Perm;

pub const HEADER: &str = "treeperm-machine v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct TextError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> TextError {
    TextError {
        line,
        message: message.into(),
    }
}

/// A machine with named states and a list of named generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineFile {
    pub comments: Vec<String>,
    pub machine: MealyMachine,
    pub state_names: Vec<String>,
    /// Generator names in order, each with its state index.
    pub roots: Vec<(String, usize)>,
}

impl MachineFile {
    /// Canonical file for a list of named generators: bisimulation quotient of
    /// their union, numbered breadth-first from the generators in order.
    /// Generator states take the generator's name, the identity state is `e`,
    /// the rest are `q<index>`.
    pub fn from_generators(gens: &[(String, TreeAutomorphism)]) -> Result<Self, TextError> {
        let Some((_, first)) = gens.first() else {
            return Err(err(0, "no generators"));
        };
        let degree = first.degree();
        let mut union = MealyMachine::from_parts_unchecked(degree, Vec::new());
        let mut roots = Vec::new();
        for (name, g) in gens {
            if g.degree() != degree {
                return Err(err(
                    0,
                    format!("generator {name} has degree {}", g.degree()),
                ));
            }
            roots.push(union.len());
            union = union.disjoint_union(g.machine()).expect("same degree");
        }
        let (machine, roots) = union.canonical_from(&roots);
        let mut state_names: Vec<Option<String>> = vec![None; machine.len()];
        for ((name, _), &r) in gens.iter().zip(&roots) {
            if state_names[r].is_none() {
                state_names[r] = Some(name.clone());
            }
        }
        let state_names = state_names
            .into_iter()
            .enumerate()
            .map(|(q, n)| {
                n.unwrap_or_else(|| {
                    let s = machine.state(q);
                    if s.output.is_identity() && s.children.iter().all(|&c| c == q) {
                        "e".to_string()
                    } else {
                        format!("q{q}")
                    }
                })
            })
            .collect();
        let roots = gens
            .iter()
            .zip(roots)
            .map(|((name, _), r)| (name.clone(), r))
            .collect();
        Ok(MachineFile {
            comments: Vec::new(),
            machine,
            state_names,
            roots,
        })
    }

    pub fn degree(&self) -> Degree {
        self.machine.degree()
    }

    pub fn generator(&self, name: &str) -> Option<TreeAutomorphism> {
        let q = self
            .roots
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, q)| q)
            .or_else(|| self.state_names.iter().position(|n| n == name))?;
        TreeAutomorphism::new(&self.machine, q).ok()
    }

    pub fn generators(&self) -> Vec<(String, TreeAutomorphism)> {
        self.roots
            .iter()
            .map(|(n, q)| {
                (
                    n.clone(),
                    TreeAutomorphism::new(&self.machine, *q).expect("valid root"),
                )
            })
            .collect()
    }

    /// The root named on a `root` line, if it is a state name.
    fn root_state_name(&self, q: usize) -> &str {
        &self.state_names[q]
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{HEADER}").unwrap();
        for c in &self.comments {
            if c.is_empty() {
                out.push_str("#\n");
            } else {
                writeln!(out, "# {c}").unwrap();
            }
        }
        writeln!(out, "degree {}", self.degree()).unwrap();
        for (q, s) in self.machine.states().iter().enumerate() {
            let ch: Vec<&str> = s
                .children
                .iter()
                .map(|&c| self.state_names[c].as_str())
                .collect();
            writeln!(
                out,
                "state {} {} -> {}",
                self.state_names[q],
                s.output,
                ch.join(" ")
            )
            .unwrap();
        }
        for (name, q) in &self.roots {
            let sname = self.root_state_name(*q);
            if sname == name {
                writeln!(out, "root {name}").unwrap();
            } else {
                writeln!(out, "root {name} = {sname}").unwrap();
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph machine {\n  rankdir=LR;\n");
        for (q, s) in self.machine.states().iter().enumerate() {
            writeln!(
                out,
                "  \"{}\" [label=\"{} / {}\"];",
                self.state_names[q], self.state_names[q], s.output
            )
            .unwrap();
        }
        for (q, s) in self.machine.states().iter().enumerate() {
            for (i, &c) in s.children.iter().enumerate() {
                writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label=\"{}\"];",
                    self.state_names[q],
                    self.state_names[c],
                    i + 1
                )
                .unwrap();
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn parse(text: &str) -> Result<Self, TextError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, l)) if l.trim() == HEADER => {}
            Some((n, l)) => {
                return Err(err(n, format!("expected `{HEADER}`, found `{}`", l.trim())))
            }
            None => return Err(err(1, "empty input")),
        }
        let mut comments = Vec::new();
        let mut degree: Option<Degree> = None;
        let mut raw_states: Vec<(usize, String, Perm, Vec<String>)> = Vec::new();
        let mut raw_roots: Vec<(usize, String, String)> = Vec::new();
        for (n, line) in lines {
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(c) = t.strip_prefix('#') {
                comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
                continue;
            }
            let (kw, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
            let rest = rest.trim();
            match kw {
                "degree" => {
                    if degree.is_some() {
                        return Err(err(n, "duplicate degree line"));
                    }
                    let m: usize = rest
                        .parse()
                        .map_err(|_| err(n, format!("bad degree `{rest}`")))?;
                    degree = Some(Degree::new(m).map_err(|e| err(n, e.to_string()))?);
                }
                "state" => {
                    let d = degree.ok_or_else(|| err(n, "state before degree line"))?;
                    let (lhs, rhs) = rest
                        .split_once("->")
                        .ok_or_else(|| err(n, "expected `->` in state line"))?;
                    let lhs = lhs.trim();
                    let (name, cycles) = lhs.split_once(char::is_whitespace).unwrap_or((lhs, "id"));
                    check_name(n, name)?;
                    let output =
                        Perm::parse_cycles(d.get(), cycles).map_err(|e| err(n, e.to_string()))?;
                    let children: Vec<String> =
                        rhs.split_whitespace().map(str::to_string).collect();
                    if children.len() != d.get() {
                        return Err(err(
                            n,
                            format!(
                                "state {name} has {} children, degree is {d}",
                                children.len()
                            ),
                        ));
                    }
                    raw_states.push((n, name.to_string(), output, children));
                }
                "root" => {
                    let (name, target) = match rest.split_once('=') {
                        Some((a, b)) => (a.trim(), b.trim()),
                        None => (rest, rest),
                    };
                    check_name(n, name)?;
                    raw_roots.push((n, name.to_string(), target.to_string()));
                }
                other => return Err(err(n, format!("unknown keyword `{other}`"))),
            }
        }
        let degree = degree.ok_or_else(|| err(1, "missing degree line"))?;
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (q, (n, name, _, _)) in raw_states.iter().enumerate() {
            if index.insert(name.as_str(), q).is_some() {
                return Err(err(*n, format!("duplicate state {name}")));
            }
        }
        let mut states = Vec::with_capacity(raw_states.len());
        for (n, _, output, children) in &raw_states {
            let children = children
                .iter()
                .map(|c| {
                    index
                        .get(c.as_str())
                        .copied()
                        .ok_or_else(|| err(*n, format!("unknown state {c}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            states.push(StateRecord {
                output: output.clone(),
                children,
            });
        }
        if raw_roots.is_empty() {
            return Err(err(text.lines().count(), "no root line"));
        }
        let roots = raw_roots
            .iter()
            .map(|(n, name, target)| {
                index
                    .get(target.as_str())
                    .map(|&q| (name.clone(), q))
                    .ok_or_else(|| err(*n, format!("unknown root {target}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let machine = MealyMachine::new(degree, states).map_err(|e| err(0, e.to_string()))?;
        Ok(MachineFile {
            comments,
            machine,
            state_names: raw_states.into_iter().map(|(_, name, _, _)| name).collect(),
            roots,
        })
    }
}

fn check_name(line: usize, name: &str) -> Result<(), TextError> {
    let ok = name
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(())
    } else {
        Err(err(line, format!("bad name `{name}`")))
    }
}
