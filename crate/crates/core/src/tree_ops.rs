//! Re-encodings of the tree: k-inflation and deflation to the binary tree.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::automata::{Degree, Exceeded, MealyMachine, StateRecord, TreeAutomorphism, VertexWord};
use crate::perm::Perm;

/// Largest alphabet `inflate` will build.
pub const MAX_INFLATED_DEGREE: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeOpsError {
    #[error("malformed encoding tree: {0}")]
    BadTree(String),
    #[error("tree has {leaves} leaves but the automorphism has degree {degree}")]
    DegreeMismatch { leaves: usize, degree: usize },
    #[error("permutation {perm} of state {state} is not realizable at node {node}")]
    NotRealizable {
        state: usize,
        perm: String,
        node: String,
    },
    #[error("inflation exponent must be at least 1")]
    InvalidExponent,
    #[error("inflated degree {0} is too large")]
    TooLarge(usize),
    #[error(transparent)]
    Exceeded(#[from] Exceeded),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Leaf(u32),
    Internal(usize, usize),
}

/// A full binary tree whose leaves are the letters `1..=m`, each once.
///
/// Text syntax: `tree := <letter> | "(" tree "," tree ")"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingTree {
    nodes: Vec<Node>,
    root: usize,
    leaves: Vec<Vec<u32>>,
    paths: BTreeMap<u32, Vec<u32>>,
}

impl EncodingTree {
    pub fn leaf_count(&self) -> usize {
        self.paths.len()
    }

    pub fn internal_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::Internal(..)))
            .count()
    }

    /// Root-to-leaf path of a letter: 1 for the first child, 2 for the second.
    pub fn path(&self, letter: u32) -> Option<&[u32]> {
        self.paths.get(&letter).map(Vec::as_slice)
    }

    fn leaf_set(&self, n: usize) -> &[u32] {
        &self.leaves[n]
    }

    fn render(&self, n: usize, out: &mut String) {
        match self.nodes[n] {
            Node::Leaf(l) => out.push_str(&l.to_string()),
            Node::Internal(a, b) => {
                out.push('(');
                self.render(a, out);
                out.push(',');
                self.render(b, out);
                out.push(')');
            }
        }
    }

    fn node_text(&self, n: usize) -> String {
        let mut s = String::new();
        self.render(n, &mut s);
        s
    }

    fn from_nodes(nodes: Vec<Node>, root: usize) -> Result<Self, TreeOpsError> {
        fn walk(
            nodes: &[Node],
            n: usize,
            path: &mut Vec<u32>,
            leaves: &mut [Vec<u32>],
            paths: &mut BTreeMap<u32, Vec<u32>>,
        ) -> Result<(), TreeOpsError> {
            match nodes[n] {
                Node::Leaf(l) => {
                    if paths.insert(l, path.clone()).is_some() {
                        return Err(TreeOpsError::BadTree(format!("letter {l} appears twice")));
                    }
                    leaves[n] = vec![l];
                }
                Node::Internal(a, b) => {
                    path.push(1);
                    walk(nodes, a, path, leaves, paths)?;
                    path.pop();
                    path.push(2);
                    walk(nodes, b, path, leaves, paths)?;
                    path.pop();
                    let mut ls = leaves[a].clone();
                    ls.extend_from_slice(&leaves[b]);
                    ls.sort_unstable();
                    leaves[n] = ls;
                }
            }
            Ok(())
        }
        let mut leaves = vec![Vec::new(); nodes.len()];
        let mut paths = BTreeMap::new();
        walk(&nodes, root, &mut Vec::new(), &mut leaves, &mut paths)?;
        let m = paths.len();
        if m < 2 {
            return Err(TreeOpsError::BadTree("need at least two leaves".into()));
        }
        if paths.keys().copied().ne(1..=m as u32) {
            return Err(TreeOpsError::BadTree(format!(
                "leaves are not the letters 1..={m}"
            )));
        }
        Ok(EncodingTree {
            nodes,
            root,
            leaves,
            paths,
        })
    }

    /// Maps each letter to its root-to-leaf path and concatenates.
    pub fn encode(&self, w: &VertexWord) -> Result<VertexWord, TreeOpsError> {
        let mut out = Vec::new();
        for &l in w.letters() {
            let p = self.path(l).ok_or_else(|| TreeOpsError::DegreeMismatch {
                leaves: self.leaf_count(),
                degree: l as usize,
            })?;
            out.extend_from_slice(p);
        }
        Ok(VertexWord::new(out))
    }
}

impl fmt::Display for EncodingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.node_text(self.root))
    }
}

impl FromStr for EncodingTree {
    type Err = TreeOpsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        struct P<'a> {
            s: &'a [u8],
            i: usize,
            nodes: Vec<Node>,
        }
        impl P<'_> {
            fn skip(&mut self) {
                while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
                    self.i += 1;
                }
            }
            fn expect(&mut self, c: u8) -> Result<(), TreeOpsError> {
                self.skip();
                if self.s.get(self.i) == Some(&c) {
                    self.i += 1;
                    Ok(())
                } else {
                    Err(TreeOpsError::BadTree(format!(
                        "expected `{}` at offset {}",
                        c as char, self.i
                    )))
                }
            }
            fn tree(&mut self) -> Result<usize, TreeOpsError> {
                self.skip();
                match self.s.get(self.i) {
                    Some(b'(') => {
                        self.i += 1;
                        let a = self.tree()?;
                        self.expect(b',')?;
                        let b = self.tree()?;
                        self.expect(b')')?;
                        self.nodes.push(Node::Internal(a, b));
                    }
                    Some(c) if c.is_ascii_digit() => {
                        let start = self.i;
                        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                            self.i += 1;
                        }
                        let text = std::str::from_utf8(&self.s[start..self.i]).expect("ascii");
                        let l: u32 = text
                            .parse()
                            .map_err(|_| TreeOpsError::BadTree(format!("bad letter {text}")))?;
                        self.nodes.push(Node::Leaf(l));
                    }
                    _ => {
                        return Err(TreeOpsError::BadTree(format!(
                            "expected a letter or `(` at offset {}",
                            self.i
                        )))
                    }
                }
                Ok(self.nodes.len() - 1)
            }
        }
        let mut p = P {
            s: s.as_bytes(),
            i: 0,
            nodes: Vec::new(),
        };
        let root = p.tree()?;
        p.skip();
        if p.i != p.s.len() {
            return Err(TreeOpsError::BadTree(format!(
                "trailing input at offset {}",
                p.i
            )));
        }
        EncodingTree::from_nodes(p.nodes, root)
    }
}

/// Swap flags for the internal nodes of an encoding tree, keyed by node in
/// preorder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoration {
    swaps: HashMap<usize, bool>,
}

impl Decoration {
    /// Number of swapping nodes.
    pub fn swap_count(&self) -> usize {
        self.swaps.values().filter(|&&s| s).count()
    }

    pub fn is_all_keep(&self) -> bool {
        self.swap_count() == 0
    }

    fn swaps(&self, node: usize) -> bool {
        self.swaps.get(&node).copied().unwrap_or(false)
    }
}

fn maps_onto(p: &Perm, src: &[u32], dst: &[u32]) -> bool {
    if src.len() != dst.len() {
        return false;
    }
    let mut img: Vec<u32> = src
        .iter()
        .map(|&l| p.apply(l as usize - 1) as u32 + 1)
        .collect();
    img.sort_unstable();
    img == dst
}

fn realize(
    p: &Perm,
    t: &EncodingTree,
    src: usize,
    dst: usize,
    swaps: &mut HashMap<usize, bool>,
) -> Result<(), usize> {
    match (&t.nodes[src], &t.nodes[dst]) {
        (Node::Leaf(a), Node::Leaf(b)) => {
            if p.apply(*a as usize - 1) as u32 + 1 == *b {
                Ok(())
            } else {
                Err(src)
            }
        }
        (&Node::Internal(sl, sr), &Node::Internal(dl, dr)) => {
            if maps_onto(p, t.leaf_set(sl), t.leaf_set(dl)) {
                swaps.insert(src, false);
                realize(p, t, sl, dl, swaps)?;
                realize(p, t, sr, dr, swaps)
            } else if maps_onto(p, t.leaf_set(sl), t.leaf_set(dr)) {
                swaps.insert(src, true);
                realize(p, t, sl, dr, swaps)?;
                realize(p, t, sr, dl, swaps)
            } else {
                Err(src)
            }
        }
        _ => Err(src),
    }
}

/// Decomposes `p` into keep/swap flags on `t`, if `p` lies in the iterated
/// wreath product of `C_2` shaped by the tree.
pub fn realizable(p: &Perm, t: &EncodingTree) -> Result<Decoration, TreeOpsError> {
    if p.degree() != t.leaf_count() {
        return Err(TreeOpsError::DegreeMismatch {
            leaves: t.leaf_count(),
            degree: p.degree(),
        });
    }
    let mut swaps = HashMap::new();
    realize(p, t, t.root, t.root, &mut swaps).map_err(|node| TreeOpsError::NotRealizable {
        state: 0,
        perm: p.to_cycle_string(),
        node: t.node_text(node),
    })?;
    Ok(Decoration { swaps })
}

/// Rewrites `a` over the binary alphabet: every letter becomes its path in
/// `t`, and every state becomes one binary state per internal node.
pub fn deflate(
    a: &TreeAutomorphism,
    t: &EncodingTree,
    limit: usize,
) -> Result<TreeAutomorphism, TreeOpsError> {
    let m = a.degree().get();
    if m != t.leaf_count() {
        return Err(TreeOpsError::DegreeMismatch {
            leaves: t.leaf_count(),
            degree: m,
        });
    }
    let mach = a.machine();
    if mach.len() > limit {
        return Err(Exceeded { limit }.into());
    }
    let decorations = mach
        .states()
        .iter()
        .enumerate()
        .map(|(q, s)| {
            realizable(&s.output, t).map_err(|e| match e {
                TreeOpsError::NotRealizable { perm, node, .. } => TreeOpsError::NotRealizable {
                    state: q,
                    perm,
                    node,
                },
                other => other,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let internal: Vec<usize> = (0..t.nodes.len())
        .filter(|&n| matches!(t.nodes[n], Node::Internal(..)))
        .collect();
    let slot: HashMap<usize, usize> = internal.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let k = internal.len();
    let id = |q: usize, n: usize| q * k + slot[&n];
    let swap = Perm::from_cycles(2, &[vec![1, 2]]).expect("valid");
    let keep = Perm::identity(2);
    let mut states = Vec::with_capacity(mach.len() * k);
    for (q, s) in mach.states().iter().enumerate() {
        for &n in &internal {
            let Node::Internal(l, r) = t.nodes[n] else {
                unreachable!()
            };
            let child = |c: usize| match t.nodes[c] {
                Node::Leaf(letter) => id(s.children[letter as usize - 1], t.root),
                Node::Internal(..) => id(q, c),
            };
            states.push(StateRecord {
                output: if decorations[q].swaps(n) {
                    swap.clone()
                } else {
                    keep.clone()
                },
                children: vec![child(l), child(r)],
            });
        }
    }
    let machine = MealyMachine::new(Degree::new(2).expect("2"), states).expect("well formed");
    Ok(TreeAutomorphism::new(&machine, id(0, t.root)).expect("root exists"))
}

/// Reads blocks of `k` letters (first letter most significant) as single
/// letters of `{1..m^k}`. The word length must be a multiple of `k`.
pub fn block_word(w: &VertexWord, m: usize, k: usize) -> Option<VertexWord> {
    if k == 0 || !w.len().is_multiple_of(k) {
        return None;
    }
    Some(VertexWord::new(
        w.letters()
            .chunks(k)
            .map(|c| c.iter().fold(0u32, |acc, &y| acc * m as u32 + (y - 1)) + 1)
            .collect(),
    ))
}

/// The `k`-inflation of `a`: the same automorphism read `k` levels at a time.
pub fn inflate(a: &TreeAutomorphism, k: usize) -> Result<TreeAutomorphism, TreeOpsError> {
    if k == 0 {
        return Err(TreeOpsError::InvalidExponent);
    }
    let m = a.degree().get();
    let big = m
        .checked_pow(k as u32)
        .filter(|&b| b <= MAX_INFLATED_DEGREE)
        .ok_or(TreeOpsError::TooLarge(usize::MAX))?;
    let mach = a.machine();
    let mut states = Vec::with_capacity(mach.len());
    for q in 0..mach.len() {
        let mut images = Vec::with_capacity(big);
        let mut children = Vec::with_capacity(big);
        for b in 0..big {
            // digits of b, most significant first
            let mut digits = vec![0usize; k];
            let mut x = b;
            for d in digits.iter_mut().rev() {
                *d = x % m;
                x /= m;
            }
            let mut state = q;
            let mut img = 0usize;
            for d in digits {
                let s = mach.state(state);
                img = img * m + s.output.apply(d);
                state = s.children[d];
            }
            images.push(img as u32);
            children.push(state);
        }
        states.push(StateRecord {
            output: Perm::from_images(images).expect("bijective"),
            children,
        });
    }
    let machine =
        MealyMachine::new(Degree::new(big).expect("m^k >= 2"), states).expect("well formed");
    Ok(TreeAutomorphism::new(&machine, 0).expect("root exists"))
}

#[cfg(test)]
mod tests {
    use super::*;

    const W3_TREE: &str = "((((1,2),(3,4)),((5,6),(7,8))),(9,10))";

    fn odometer() -> TreeAutomorphism {
        let m = MealyMachine::new(
            Degree::new(2).unwrap(),
            vec![
                StateRecord {
                    output: Perm::parse_cycles(2, "(1 2)").unwrap(),
                    children: vec![1, 0],
                },
                StateRecord {
                    output: Perm::identity(2),
                    children: vec![1, 1],
                },
            ],
        )
        .unwrap();
        TreeAutomorphism::new(&m, 0).unwrap()
    }

    #[test]
    fn tree_round_trip_and_paths() {
        let t: EncodingTree = W3_TREE.parse().unwrap();
        assert_eq!(t.to_string(), W3_TREE);
        assert_eq!(t.path(9), Some(&[2, 1][..]));
        assert_eq!(t.path(1), Some(&[1, 1, 1, 1][..]));
        assert_eq!(t.encode(&VertexWord::empty()).unwrap(), VertexWord::empty());
        assert_eq!(t.internal_count(), 9);
        assert!("((1,2),(2,3))".parse::<EncodingTree>().is_err());
        assert!("((1,2),(4,5))".parse::<EncodingTree>().is_err());
        assert!("((1,2),3".parse::<EncodingTree>().is_err());
    }

    #[test]
    fn realizability() {
        let t: EncodingTree = W3_TREE.parse().unwrap();
        let rev = Perm::parse_cycles(10, "(1 8)(2 7)(3 6)(4 5)").unwrap();
        let d = realizable(&rev, &t).unwrap();
        assert_eq!(d.swap_count(), 7);
        assert!(realizable(&Perm::identity(10), &t).unwrap().is_all_keep());
        let cyc = Perm::parse_cycles(10, "(1 2 3 4 5 6 7 8 9)").unwrap();
        assert!(matches!(
            realizable(&cyc, &t),
            Err(TreeOpsError::NotRealizable { .. })
        ));
    }

    #[test]
    fn odometer_inflation() {
        let t = odometer();
        let t2 = inflate(&t, 2).unwrap();
        assert_eq!(t2.degree().get(), 4);
        // blocks 11,12,21,22 are letters 1,2,3,4: 11->21->12->22->11
        assert_eq!(t2.activity().to_cycle_string(), "(1 3 2 4)");
        for l in 1..=3 {
            assert!(t2.child(l).unwrap().is_identity());
        }
        assert_eq!(t2.child(4).unwrap(), t2);
        assert_eq!(inflate(&t, 1).unwrap(), t);
        assert!(inflate(&t, 0).is_err());
    }

    #[test]
    fn deflating_identity() {
        let t: EncodingTree = W3_TREE.parse().unwrap();
        let e = TreeAutomorphism::identity(Degree::new(10).unwrap());
        assert!(deflate(&e, &t, 100).unwrap().is_identity());
    }
}
