use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{AutomataError, Degree, Exceeded, MealyMachine, Portrait, StateRecord, VertexWord};
use crate::perm::Perm;

/// A finite-state automorphism of the `m`-regular tree.
///
/// The machine is always kept minimal and numbered breadth-first from the
/// root (state 0), so two values are `==` exactly when they are the same
/// automorphism.
#[derive(Clone)]
pub struct TreeAutomorphism {
    machine: Arc<MealyMachine>,
}

impl TreeAutomorphism {
    /// The automorphism rooted at `root` of an explicit machine.
    pub fn new(machine: &MealyMachine, root: usize) -> Result<Self, AutomataError> {
        if root >= machine.len() {
            return Err(AutomataError::MalformedState {
                state: root,
                reason: "root does not exist".into(),
            });
        }
        let (m, _) = machine.canonical_from(&[root]);
        Ok(TreeAutomorphism {
            machine: Arc::new(m),
        })
    }

    pub fn identity(degree: Degree) -> Self {
        TreeAutomorphism {
            machine: Arc::new(MealyMachine::identity(degree)),
        }
    }

    /// Builds `(s_1, ..., s_m) σ` from its sections and activity.
    pub fn from_recursion(
        sections: &[TreeAutomorphism],
        activity: &Perm,
    ) -> Result<Self, AutomataError> {
        let m = activity.degree();
        let degree = Degree::new(m)?;
        if sections.len() != m {
            return Err(AutomataError::MalformedState {
                state: 0,
                reason: format!("{} sections for degree {m}", sections.len()),
            });
        }
        let mut states = vec![StateRecord {
            output: activity.clone(),
            children: Vec::with_capacity(m),
        }];
        let mut roots = Vec::with_capacity(m);
        for s in sections {
            if s.degree() != degree {
                return Err(AutomataError::DegreeMismatch {
                    left: m,
                    right: s.degree().get(),
                });
            }
            let off = states.len();
            roots.push(off);
            states.extend(s.machine.states().iter().map(|r| StateRecord {
                output: r.output.clone(),
                children: r.children.iter().map(|&c| c + off).collect(),
            }));
        }
        states[0].children = roots;
        let machine = MealyMachine::from_parts_unchecked(degree, states);
        TreeAutomorphism::new(&machine, 0)
    }

    pub fn degree(&self) -> Degree {
        self.machine.degree()
    }

    /// The canonical minimal machine; the automorphism is its state 0.
    pub fn machine(&self) -> &MealyMachine {
        &self.machine
    }

    pub fn activity(&self) -> &Perm {
        &self.machine.state(0).output
    }

    /// Number of distinct states, `|Q(a)|`.
    pub fn state_count(&self) -> usize {
        self.machine.len()
    }

    fn at(&self, q: usize) -> TreeAutomorphism {
        if q == 0 {
            return self.clone();
        }
        let (m, _) = self.machine.canonical_from(&[q]);
        TreeAutomorphism {
            machine: Arc::new(m),
        }
    }

    /// Image of a vertex.
    pub fn act(&self, w: &VertexWord) -> Result<VertexWord, AutomataError> {
        w.validate(self.degree())?;
        let mut q = 0;
        let mut out = Vec::with_capacity(w.len());
        for &l in w.letters() {
            let s = self.machine.state(q);
            let i = l as usize - 1;
            out.push(s.output.apply(i) as u32 + 1);
            q = s.children[i];
        }
        Ok(VertexWord::new(out))
    }

    /// Section `a_w`.
    pub fn section(&self, w: &VertexWord) -> Result<TreeAutomorphism, AutomataError> {
        w.validate(self.degree())?;
        let mut q = 0;
        for &l in w.letters() {
            q = self.machine.state(q).children[l as usize - 1];
        }
        Ok(self.at(q))
    }

    /// First-level section at a 1-based letter.
    pub fn child(&self, letter: u32) -> Result<TreeAutomorphism, AutomataError> {
        self.section(&VertexWord::new(vec![letter]))
    }

    /// Product `a·b`: first `a`, then `b`.
    pub fn compose(&self, other: &TreeAutomorphism) -> Result<TreeAutomorphism, AutomataError> {
        if self.degree() != other.degree() {
            return Err(AutomataError::DegreeMismatch {
                left: self.degree().get(),
                right: other.degree().get(),
            });
        }
        let (a, b) = (&*self.machine, &*other.machine);
        let m = self.degree().get();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(0usize, 0usize)];
        index.insert((0, 0), 0);
        let mut states = Vec::new();
        let mut k = 0;
        while k < pairs.len() {
            let (qa, qb) = pairs[k];
            let (sa, sb) = (a.state(qa), b.state(qb));
            let mut children = Vec::with_capacity(m);
            for i in 0..m {
                let p = (sa.children[i], sb.children[sa.output.apply(i)]);
                let next = pairs.len();
                let id = *index.entry(p).or_insert_with(|| {
                    pairs.push(p);
                    next
                });
                children.push(id);
            }
            states.push(StateRecord {
                output: sa.output.then(&sb.output),
                children,
            });
            k += 1;
        }
        let machine = MealyMachine::from_parts_unchecked(self.degree(), states);
        TreeAutomorphism::new(&machine, 0)
    }

    pub fn inverse(&self) -> TreeAutomorphism {
        let states = self
            .machine
            .states()
            .iter()
            .map(|s| {
                let inv = s.output.inverse();
                let children = (0..s.children.len())
                    .map(|i| s.children[inv.apply(i)])
                    .collect();
                StateRecord {
                    output: inv,
                    children,
                }
            })
            .collect();
        let machine = MealyMachine::from_parts_unchecked(self.degree(), states);
        TreeAutomorphism::new(&machine, 0).expect("state 0 exists")
    }

    /// `a^n` for any integer `n`, by repeated squaring.
    pub fn pow(&self, n: i64) -> TreeAutomorphism {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = TreeAutomorphism::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base).expect("same degree");
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base).expect("same degree");
            }
        }
        acc
    }

    /// Conjugate `h⁻¹ a h`.
    pub fn conjugate(&self, h: &TreeAutomorphism) -> Result<TreeAutomorphism, AutomataError> {
        h.inverse().compose(self)?.compose(h)
    }

    /// Commutator `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, b: &TreeAutomorphism) -> Result<TreeAutomorphism, AutomataError> {
        self.inverse()
            .compose(&b.inverse())?
            .compose(self)?
            .compose(b)
    }

    /// The state closure `Q(a)`, starting with `a` itself, in breadth-first
    /// order.
    pub fn states(&self, limit: usize) -> Result<Vec<TreeAutomorphism>, Exceeded> {
        if self.machine.len() > limit {
            return Err(Exceeded { limit });
        }
        Ok((0..self.machine.len()).map(|q| self.at(q)).collect())
    }

    pub fn is_trivial(&self, limit: usize) -> Result<bool, Exceeded> {
        if self.machine.len() > limit {
            return Err(Exceeded { limit });
        }
        Ok(self.is_identity())
    }

    /// Exact identity test on the canonical form.
    pub fn is_identity(&self) -> bool {
        self.machine.len() == 1 && self.machine.state(0).output.is_identity()
    }

    pub fn equal(&self, other: &TreeAutomorphism, limit: usize) -> Result<bool, AutomataError> {
        if self.degree() != other.degree() {
            return Err(AutomataError::DegreeMismatch {
                left: self.degree().get(),
                right: other.degree().get(),
            });
        }
        if self.machine.len() > limit || other.machine.len() > limit {
            return Err(Exceeded { limit }.into());
        }
        Ok(self == other)
    }

    /// Activities of all vertices above `depth`.
    pub fn portrait(&self, depth: usize) -> Portrait {
        let mut decorations = BTreeMap::new();
        let mut queue = VecDeque::from([(VertexWord::empty(), 0usize)]);
        while let Some((w, q)) = queue.pop_front() {
            if w.len() >= depth {
                continue;
            }
            let s = self.machine.state(q);
            for (i, &c) in s.children.iter().enumerate() {
                queue.push_back((w.concat(&VertexWord::new(vec![i as u32 + 1])), c));
            }
            decorations.insert(w, s.output.clone());
        }
        Portrait::new(self.degree(), depth, decorations)
    }

    /// Smallest `1 <= n <= n_max` with `a^n` trivial, or `None` if there is
    /// none in range.
    pub fn order_bounded(&self, n_max: usize, limit: usize) -> Result<Option<usize>, Exceeded> {
        let mut p = self.clone();
        for n in 1..=n_max {
            if p.is_trivial(limit)? {
                return Ok(Some(n));
            }
            p = p.compose(self).expect("same degree");
        }
        Ok(None)
    }
}

impl PartialEq for TreeAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.machine, &other.machine) || self.machine == other.machine
    }
}

impl Eq for TreeAutomorphism {}

impl Hash for TreeAutomorphism {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.machine.hash(state);
    }
}

impl fmt::Debug for TreeAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreeAutomorphism[{}]{{", self.degree())?;
        for (q, s) in self.machine.states().iter().enumerate() {
            let ch: Vec<String> = s.children.iter().map(|c| format!("q{c}")).collect();
            write!(f, " q{q}=({}){}", ch.join(","), s.output)?;
        }
        write!(f, " }}")
    }
}
