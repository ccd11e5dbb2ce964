use proptest::collection::vec;
use proptest::prelude::*;
use treeperm::catalog::build;
use treeperm::tree_ops::{deflate, inflate};
use treeperm::{Degree, TreeAutomorphism, VertexWord};

use super::{eval_word, generators, report, runner, GenWord, ENTRIES, LIMIT};

fn word() -> impl Strategy<Value = GenWord> {
    vec((0..64usize, any::<bool>()), 0..=3)
}

/// Deflation homomorphism, action conjugacy and injectivity evidence on 100
/// random pairs of words of length ≤ 3 over the degree-10 generators.
pub fn deflation() -> Result<(), String> {
    let gens = generators("w3-10");
    let tree = build::w3_tree();
    let d = Degree::new(10).unwrap();
    let verts: Vec<_> = (0..=2)
        .flat_map(|n| VertexWord::all_of_length(d, n))
        .collect();
    let r = runner(100).run(&(word(), word()), |(u, v)| {
        let (u, v) = (eval_word(&gens, &u), eval_word(&gens, &v));
        let uv = u.compose(&v).unwrap();
        let (du, dv) = (
            deflate(&u, &tree, LIMIT).unwrap(),
            deflate(&v, &tree, LIMIT).unwrap(),
        );
        let duv = deflate(&uv, &tree, LIMIT).unwrap();
        prop_assert!(
            duv.equal(&du.compose(&dv).unwrap(), LIMIT).unwrap(),
            "homomorphism"
        );
        let comm = u.commutator(&v).unwrap();
        let dcomm = deflate(&comm, &tree, LIMIT).unwrap();
        for (g, dg) in [(&u, &du), (&v, &dv), (&uv, &duv), (&comm, &dcomm)] {
            for w in &verts {
                let lhs = tree.encode(&g.act(w).unwrap()).unwrap();
                let rhs = dg.act(&tree.encode(w).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs, "conjugacy at {:?}", w);
            }
            prop_assert_eq!(
                g.is_trivial(LIMIT).unwrap(),
                dg.is_trivial(LIMIT).unwrap(),
                "injectivity"
            );
        }
        Ok(())
    });
    report("deflation", r)
}

/// inflate(ab, k) = inflate(a, k)·inflate(b, k) for all generator pairs of
/// every catalog entry and k ∈ {1, 2}.
pub fn inflation_embedding() -> Result<(), String> {
    for entry in ENTRIES {
        let gens = generators(entry);
        let mut elems: Vec<TreeAutomorphism> = gens.clone();
        elems.extend(gens.iter().map(|g| g.inverse()));
        for k in 1..=2 {
            let inflated: Vec<_> = elems.iter().map(|g| inflate(g, k).unwrap()).collect();
            for (i, a) in elems.iter().enumerate() {
                for (j, b) in elems.iter().enumerate() {
                    let lhs = inflate(&a.compose(b).unwrap(), k).unwrap();
                    let rhs = inflated[i].compose(&inflated[j]).unwrap();
                    if !lhs.equal(&rhs, LIMIT).unwrap() {
                        return Err(format!(
                            "inflation embedding: {entry}, k = {k}, pair ({i}, {j})"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

pub const ALL: [super::Check; 2] = [
    (
        "deflation homomorphism, action conjugacy, injectivity",
        deflation,
    ),
    ("inflation embedding", inflation_embedding),
];
