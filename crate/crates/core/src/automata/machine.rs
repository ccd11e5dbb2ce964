use std::collections::{HashMap, VecDeque};

use super::{AutomataError, Degree};
use crate::perm::Perm;

/// One state of a Mealy machine: its activity and its `m` sections.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateRecord {
    pub output: Perm,
    pub children: Vec<usize>,
}

/// A finite invertible Mealy machine over the alphabet `{1..m}`.
///
/// Explicit machines are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MealyMachine {
    degree: Degree,
    states: Vec<StateRecord>,
}

impl MealyMachine {
    pub fn new(degree: Degree, states: Vec<StateRecord>) -> Result<Self, AutomataError> {
        let n = states.len();
        for (i, s) in states.iter().enumerate() {
            if s.output.degree() != degree.get() {
                return Err(AutomataError::MalformedState {
                    state: i,
                    reason: format!("output acts on {} letters", s.output.degree()),
                });
            }
            if s.children.len() != degree.get() {
                return Err(AutomataError::MalformedState {
                    state: i,
                    reason: format!("{} children for degree {}", s.children.len(), degree),
                });
            }
            if let Some(c) = s.children.iter().find(|&&c| c >= n) {
                return Err(AutomataError::MalformedState {
                    state: i,
                    reason: format!("child {c} does not exist"),
                });
            }
        }
        Ok(MealyMachine { degree, states })
    }

    /// The one-state identity machine.
    pub fn identity(degree: Degree) -> Self {
        MealyMachine {
            degree,
            states: vec![StateRecord {
                output: Perm::identity(degree.get()),
                children: vec![0; degree.get()],
            }],
        }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, q: usize) -> &StateRecord {
        &self.states[q]
    }

    pub fn states(&self) -> &[StateRecord] {
        &self.states
    }

    /// States reachable from `roots`, in breadth-first order (children in
    /// letter order).
    pub fn reachable(&self, roots: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.states.len()];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        for &r in roots {
            if !seen[r] {
                seen[r] = true;
                queue.push_back(r);
            }
        }
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for &c in &self.states[q].children {
                if !seen[c] {
                    seen[c] = true;
                    queue.push_back(c);
                }
            }
        }
        order
    }

    /// Coarsest bisimulation: partition refinement on (output, child classes).
    /// Returns a class id per state; ids are assigned in order of first
    /// appearance by state index.
    pub fn bisimulation_classes(&self) -> Vec<usize> {
        let n = self.states.len();
        let mut class = vec![0usize; n];
        let mut ids: HashMap<&Perm, usize> = HashMap::new();
        for (q, s) in self.states.iter().enumerate() {
            let next = ids.len();
            class[q] = *ids.entry(&s.output).or_insert(next);
        }
        let mut count = ids.len();
        loop {
            let mut sig_ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut refined = vec![0usize; n];
            for (q, s) in self.states.iter().enumerate() {
                let sig = (class[q], s.children.iter().map(|&c| class[c]).collect());
                let next = sig_ids.len();
                refined[q] = *sig_ids.entry(sig).or_insert(next);
            }
            let new_count = sig_ids.len();
            class = refined;
            if new_count == count {
                return class;
            }
            count = new_count;
        }
    }

    /// Quotient by bisimulation, restricted to the states reachable from
    /// `roots` and renumbered breadth-first from the roots in order. Returns
    /// the new machine and the images of the roots.
    pub fn canonical_from(&self, roots: &[usize]) -> (MealyMachine, Vec<usize>) {
        let class = self.bisimulation_classes();
        // a representative per class
        let mut rep: HashMap<usize, usize> = HashMap::new();
        for (q, &c) in class.iter().enumerate() {
            rep.entry(c).or_insert(q);
        }
        let mut number: HashMap<usize, usize> = HashMap::new();
        let mut order: Vec<usize> = Vec::new();
        let mut queue = VecDeque::new();
        for &r in roots {
            let c = class[r];
            if let std::collections::hash_map::Entry::Vacant(e) = number.entry(c) {
                e.insert(order.len());
                order.push(c);
                queue.push_back(c);
            }
        }
        while let Some(c) = queue.pop_front() {
            for &child in &self.states[rep[&c]].children {
                let cc = class[child];
                if let std::collections::hash_map::Entry::Vacant(e) = number.entry(cc) {
                    e.insert(order.len());
                    order.push(cc);
                    queue.push_back(cc);
                }
            }
        }
        let states = order
            .iter()
            .map(|c| {
                let s = &self.states[rep[c]];
                StateRecord {
                    output: s.output.clone(),
                    children: s.children.iter().map(|&x| number[&class[x]]).collect(),
                }
            })
            .collect();
        let roots = roots.iter().map(|&r| number[&class[r]]).collect();
        (
            MealyMachine {
                degree: self.degree,
                states,
            },
            roots,
        )
    }

    /// Bisimulation minimization. Every state is kept up to bisimilarity;
    /// numbering is breadth-first from state 0, then from the lowest-index
    /// state not yet reached, and so on.
    pub fn minimize(&self) -> MealyMachine {
        if self.states.is_empty() {
            return self.clone();
        }
        let mut roots = Vec::new();
        let mut seen = vec![false; self.states.len()];
        for q in 0..self.states.len() {
            if !seen[q] {
                roots.push(q);
                for r in self.reachable(&[q]) {
                    seen[r] = true;
                }
            }
        }
        self.canonical_from(&roots).0
    }

    /// Disjoint union; the states of `other` are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &MealyMachine) -> Result<MealyMachine, AutomataError> {
        if self.degree != other.degree {
            return Err(AutomataError::DegreeMismatch {
                left: self.degree.get(),
                right: other.degree.get(),
            });
        }
        let off = self.states.len();
        let mut states = self.states.clone();
        states.extend(other.states.iter().map(|s| StateRecord {
            output: s.output.clone(),
            children: s.children.iter().map(|&c| c + off).collect(),
        }));
        Ok(MealyMachine {
            degree: self.degree,
            states,
        })
    }

    pub(crate) fn from_parts_unchecked(degree: Degree, states: Vec<StateRecord>) -> Self {
        MealyMachine { degree, states }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(out: &str, m: usize, children: &[usize]) -> StateRecord {
        StateRecord {
            output: Perm::parse_cycles(m, out).unwrap(),
            children: children.to_vec(),
        }
    }

    #[test]
    fn two_identity_loops_collapse() {
        let d = Degree::new(2).unwrap();
        let m = MealyMachine::new(d, vec![rec("id", 2, &[0, 0]), rec("id", 2, &[1, 1])]).unwrap();
        assert_eq!(m.minimize().len(), 1);
    }

    #[test]
    fn gamma_machine_is_already_minimal() {
        // gamma = (gamma, e, alpha), alpha = (e, alpha, e)(1 2), e
        let d = Degree::new(3).unwrap();
        let m = MealyMachine::new(
            d,
            vec![
                rec("id", 3, &[0, 2, 1]),
                rec("(1 2)", 3, &[2, 1, 2]),
                rec("id", 3, &[2, 2, 2]),
            ],
        )
        .unwrap();
        let min = m.minimize();
        assert_eq!(min.len(), 3);
        // breadth-first from state 0: gamma, gamma's children e (letter 2), alpha (letter 3)
        assert_eq!(min.state(0).children, vec![0, 1, 2]);
    }

    #[test]
    fn rejects_dangling_child() {
        let d = Degree::new(2).unwrap();
        assert!(MealyMachine::new(d, vec![rec("id", 2, &[0, 3])]).is_err());
    }
}
