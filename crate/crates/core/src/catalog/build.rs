//! Pipelines that produce the shipped machine files.

use crate::automata::text::MachineFile;
use crate::automata::{Degree, MealyMachine, StateRecord, TreeAutomorphism};
use crate::gdata::{
    theorem_b_extend, theorem_c_extend, AbelianBase, AmbientGroup, CExtOptions, GData, GDataError,
    MuTarget, PowerGroup, SplitGroup,
};
use crate::perm::Perm;
use crate::tree_ops::{deflate, EncodingTree, TreeOpsError};

use super::ambients::{c2wrz_gdata, zwrz_gdata, zwrz_refined, LampGroup};

/// Extension data over a power of a lamplighter group.
pub type ExtData = GData<SplitGroup<PowerGroup<LampGroup>>>;

/// The encoding tree of the degree-10 `ℤ≀(ℤ≀ℤ)` machine: the eight `H^3`
/// slots as a depth-4 comb hanging off the two appended letters.
pub const W3_TREE: &str = "((((1,2),(3,4)),((5,6),(7,8))),(9,10))";

/// Order of the `H^3` slots in the degree-10 machine, as transversal index
/// tuples over `{e, x}`: `e, x2, x3, x2x3, x1x2x3, x1x3, x1x2, x1`.
pub fn w3_slot_order() -> Vec<Vec<usize>> {
    [
        [0, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [0, 1, 1],
        [1, 1, 1],
        [1, 0, 1],
        [1, 1, 0],
        [1, 0, 0],
    ]
    .iter()
    .map(|t| t.to_vec())
    .collect()
}

/// `τ = (e, τ)(1 2)`.
pub fn odometer() -> MachineFile {
    let d = Degree::new(2).expect("2 >= 2");
    let machine = MealyMachine::new(
        d,
        vec![
            StateRecord {
                output: Perm::from_cycles(2, &[vec![1, 2]]).expect("valid cycle"),
                children: vec![1, 0],
            },
            StateRecord {
                output: Perm::identity(2),
                children: vec![1, 1],
            },
        ],
    )
    .expect("well-formed");
    let t = TreeAutomorphism::new(&machine, 0).expect("root exists");
    MachineFile::from_generators(&[("tau".into(), t)]).expect("one generator")
}

/// `γ, α` over the degree-3 data.
pub fn zwrz3(limit: usize) -> Result<MachineFile, GDataError> {
    let gd = zwrz_gdata();
    let g = gd.ambient.clone();
    gd.representation().machine_file(
        &[("gamma".into(), g.lamp(0)), ("alpha".into(), g.top(1))],
        limit,
    )
}

/// `γ₁, α₁` over the degree-6 refinement.
pub fn zwrz6(limit: usize) -> Result<MachineFile, GDataError> {
    let gd = zwrz_refined();
    let g = gd.ambient.clone();
    gd.representation().machine_file(
        &[("gamma1".into(), g.lamp(0)), ("alpha1".into(), g.top(1))],
        limit,
    )
}

/// Extension of the `C_2≀ℤ` data by `base`, with generators named
/// `lamp, t1, t2, s1, s2` for the basepoint lamp, the two copies of `a`
/// and the two copies of `x`.
fn c2_ext(base: &AbelianBase, names: [&str; 5], limit: usize) -> Result<MachineFile, GDataError> {
    let ext = c2_ext_data(base)?;
    let split = ext.ambient.clone();
    let power = split.top.clone();
    let g = &power.base;
    let (a, x) = (g.lamp(0), g.top(1));
    let gens = vec![
        (names[0].to_string(), split.basepoint(0)),
        (names[1].to_string(), split.from_top(&power.embed(0, &a))),
        (names[2].to_string(), split.from_top(&power.embed(1, &a))),
        (names[3].to_string(), split.from_top(&power.embed(0, &x))),
        (names[4].to_string(), split.from_top(&power.embed(1, &x))),
    ];
    ext.representation().machine_file(&gens, limit)
}

/// Extension data of the `C_2≀ℤ` data by `base`, with trivial coset labels.
pub fn c2_ext_data(base: &AbelianBase) -> Result<ExtData, GDataError> {
    theorem_b_extend(&c2wrz_gdata(), base, None, None)
}

/// `C_2^(X) ⋊ (C_2≀ℤ)^2`: `γ, β₁, β₂, α₁, α₂`.
pub fn c2_ext16(limit: usize) -> Result<MachineFile, GDataError> {
    let base = AbelianBase::cyclic(2)?;
    c2_ext(
        &base,
        ["gamma", "beta1", "beta2", "alpha1", "alpha2"],
        limit,
    )
}

/// `ℤ^(X) ⋊ (C_2≀ℤ)^2`: `y, a₁, a₂, x₁, x₂`.
pub fn z_ext(limit: usize) -> Result<MachineFile, GDataError> {
    c2_ext(
        &AbelianBase::integers(),
        ["y", "a1", "a2", "x1", "x2"],
        limit,
    )
}

/// `ℤ^((ℤ≀ℤ)^3) ⋊ (ℤ≀ℤ)^3` over the refined degree-6 data:
/// `a, y1, y2, y3, x1, x2, x3`.
pub fn w3_10(limit: usize) -> Result<MachineFile, GDataError> {
    let ext = w3_data()?;
    let split = ext.ambient.clone();
    let g = split.top.base.clone();
    let y = g.lamp(0);
    let power: &PowerGroup<LampGroup> = &split.top;
    let mut gens = vec![("a".to_string(), split.basepoint(0))];
    for (name, u) in [("y", &y), ("x", &g.top(1))] {
        for i in 0..3 {
            gens.push((
                format!("{name}{}", i + 1),
                split.from_top(&power.embed(i, u)),
            ));
        }
    }
    ext.representation().machine_file(&gens, limit)
}

/// Data over `ℤ^((ℤ≀ℤ)^3) ⋊ (ℤ≀ℤ)^3` behind [`w3_10`], with `μ(a) = y₁`.
pub fn w3_data() -> Result<ExtData, GDataError> {
    let gd = zwrz_refined();
    let g = gd.ambient.clone();
    let options = CExtOptions {
        mu: MuTarget::Tuple(vec![g.lamp(0), g.identity(), g.identity()]),
        slot_order: Some(w3_slot_order()),
    };
    theorem_c_extend(&gd, &AbelianBase::integers(), &options)
}

pub fn w3_tree() -> EncodingTree {
    W3_TREE.parse().expect("valid tree")
}

/// The binary deflation of [`w3_10`] along [`w3_tree`].
pub fn w3_2(w3_10: &MachineFile, limit: usize) -> Result<MachineFile, TreeOpsError> {
    let tree = w3_tree();
    let gens = w3_10
        .generators()
        .into_iter()
        .map(|(n, a)| Ok((n, deflate(&a, &tree, limit)?)))
        .collect::<Result<Vec<_>, TreeOpsError>>()?;
    MachineFile::from_generators(&gens).map_err(|e| TreeOpsError::BadTree(e.to_string()))
}
