use proptest::collection::vec;
use proptest::prelude::*;
use treeperm::{MealyMachine, TreeAutomorphism, VertexWord};

use super::{eval_word, generators, report, runner, GenWord, ENTRIES, LIMIT};

fn word(max_len: usize) -> impl Strategy<Value = GenWord> {
    vec((0..64usize, any::<bool>()), 0..=max_len)
}

fn pools() -> Vec<Vec<TreeAutomorphism>> {
    ENTRIES.iter().map(|e| generators(e)).collect()
}

fn entry() -> impl Strategy<Value = usize> {
    0..ENTRIES.len()
}

fn vertices(degree: usize, exhaustive: usize, sampled: &[Vec<u32>]) -> Vec<VertexWord> {
    let d = treeperm::Degree::new(degree).unwrap();
    let mut out: Vec<_> = (0..=exhaustive)
        .flat_map(|n| VertexWord::all_of_length(d, n))
        .collect();
    for s in sampled {
        out.push(VertexWord::new(
            s.iter().map(|l| l % degree as u32 + 1).collect(),
        ));
    }
    out
}

/// Depth up to which every vertex is checked: all of depth 5 for degree ≤ 6,
/// depth 3 plus sampled depth-5 vertices for the larger alphabets.
fn exhaustive_depth(degree: usize) -> usize {
    if degree <= 6 {
        5
    } else {
        3
    }
}

/// act(a·b, w) = act(b, act(a, w)).
pub fn action_homomorphism() -> Result<(), String> {
    let pools = pools();
    let strat = (entry(), word(3), word(3), vec(vec(any::<u32>(), 5), 64));
    let r = runner(64).run(&strat, |(e, a, b, sample)| {
        let gens = &pools[e];
        let (a, b) = (eval_word(gens, &a), eval_word(gens, &b));
        let ab = a.compose(&b).unwrap();
        let m = a.degree().get();
        for w in vertices(m, exhaustive_depth(m), &sample) {
            let lhs = ab.act(&w).unwrap();
            let rhs = b.act(&a.act(&w).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs, "{} at {:?}", ENTRIES[e], w);
        }
        Ok(())
    });
    report("action homomorphism", r)
}

/// a·a⁻¹ is trivial for 100 words of length ≤ 6.
pub fn inverse_law() -> Result<(), String> {
    let pools = pools();
    let r = runner(100).run(&(entry(), word(6)), |(e, w)| {
        let gens = &pools[e];
        let a = eval_word(gens, &w);
        prop_assert!(a.compose(&a.inverse()).unwrap().is_trivial(LIMIT).unwrap());
        Ok(())
    });
    report("inverse law", r)
}

/// (a·b)|_i = a|_i · b|_{σa(i)} at every first-level letter.
pub fn section_product() -> Result<(), String> {
    let pools = pools();
    let r = runner(100).run(&(entry(), word(4), word(4)), |(e, a, b)| {
        let gens = &pools[e];
        let (a, b) = (eval_word(gens, &a), eval_word(gens, &b));
        let ab = a.compose(&b).unwrap();
        for i in 1..=a.degree().get() as u32 {
            let j = a.activity().apply(i as usize - 1) as u32 + 1;
            let rhs = a.child(i).unwrap().compose(&b.child(j).unwrap()).unwrap();
            prop_assert_eq!(ab.child(i).unwrap(), rhs, "letter {}", i);
        }
        Ok(())
    });
    report("section-product compatibility", r)
}

/// |Q(g_1⋯g_L)| ≤ ∏|Q(g_i)| for L ≤ 4.
pub fn closure_bound() -> Result<(), String> {
    let pools = pools();
    let r = runner(100).run(&(entry(), word(4)), |(e, w)| {
        let gens = &pools[e];
        let bound: usize = w
            .iter()
            .map(|&(i, _)| gens[i % gens.len()].state_count())
            .product();
        let q = eval_word(gens, &w).states(LIMIT).unwrap().len();
        prop_assert!(q <= bound, "{} > {}", q, bound);
        Ok(())
    });
    report("state-closure bound", r)
}

/// Walks an explicit machine from `root` without any minimization.
fn raw_act(m: &MealyMachine, root: usize, w: &VertexWord) -> VertexWord {
    let mut q = root;
    let mut out = Vec::with_capacity(w.len());
    for &l in w.letters() {
        let s = m.state(q);
        out.push(s.output.apply(l as usize - 1) as u32 + 1);
        q = s.children[l as usize - 1];
    }
    VertexWord::new(out)
}

/// A redundant machine (two copies of `a` and one of `b`) and its minimized
/// element act identically on all vertices of depth ≤ 5.
pub fn minimization_soundness() -> Result<(), String> {
    let pools = pools();
    let strat = (entry(), word(3), word(3), vec(vec(any::<u32>(), 5), 64));
    let r = runner(32).run(&strat, |(e, a, b, sample)| {
        let gens = &pools[e];
        let (a, b) = (eval_word(gens, &a), eval_word(gens, &b));
        let raw = a
            .machine()
            .disjoint_union(b.machine())
            .and_then(|m| m.disjoint_union(a.machine()))
            .unwrap();
        let root = a.machine().len() + b.machine().len();
        let min = TreeAutomorphism::new(&raw, root).unwrap();
        prop_assert_eq!(min.state_count(), a.state_count());
        let m = a.degree().get();
        for w in vertices(m, exhaustive_depth(m), &sample) {
            prop_assert_eq!(min.act(&w).unwrap(), raw_act(&raw, root, &w), "at {:?}", w);
        }
        Ok(())
    });
    report("minimization soundness", r)
}

/// act(a, uv) = act(a, u) · act(a|_u, v).
pub fn prefix_compatibility() -> Result<(), String> {
    let pools = pools();
    let strat = (
        entry(),
        word(4),
        vec(any::<u32>(), 0..=4),
        vec(any::<u32>(), 0..=4),
    );
    let r = runner(200).run(&strat, |(e, a, u, v)| {
        let gens = &pools[e];
        let a = eval_word(gens, &a);
        let m = a.degree().get() as u32;
        let u = VertexWord::new(u.iter().map(|l| l % m + 1).collect());
        let v = VertexWord::new(v.iter().map(|l| l % m + 1).collect());
        let lhs = a.act(&u.concat(&v)).unwrap();
        let rhs = a
            .act(&u)
            .unwrap()
            .concat(&a.section(&u).unwrap().act(&v).unwrap());
        prop_assert_eq!(lhs, rhs);
        Ok(())
    });
    report("prefix compatibility", r)
}

pub const ALL: [super::Check; 6] = [
    ("action homomorphism", action_homomorphism),
    ("inverse law", inverse_law),
    ("section-product compatibility", section_product),
    ("state-closure bound", closure_bound),
    ("minimization soundness", minimization_soundness),
    ("prefix compatibility", prefix_compatibility),
];
