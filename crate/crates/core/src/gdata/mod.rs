//! Self-similar representations from virtual endomorphism data.
//!
//! A [`GData`] over an ambient group `G` is a list of parts `(H_i, f_i)`:
//! a finite-index subgroup given by a coset oracle with a right transversal
//! `T_i`, and a homomorphism `f_i: H_i -> G`. The induced representation acts
//! on the letters `(i, t)` for `t ∈ T_i`, numbered part by part in
//! transversal order:
//!
//! * activity: `(i, t_j) ↦ (i, t_k)` where `H_i t_k = H_i t_j g`;
//! * section at `(i, t_j)`: the representation of `f_i(t_j g t_k⁻¹)`.
//!
//! Conventions: `g^h = h⁻¹gh` and `[g, h] = g⁻¹h⁻¹gh`.

mod construct;
mod represent;
mod split;

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

use crate::automata::{AutomataError, Exceeded};

pub use construct::{power_data, product_oracle, refine, restrict, PowerGroup, PowerVariant};
pub use represent::{Record, Representation};
pub use split::{
    concat, diagonal_embed, theorem_b_extend, theorem_c_extend, AbelianBase, CExtOptions,
    CosetLabeler, MuTarget, SplitElement, SplitGroup,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GDataError {
    #[error("element {0} is not in the transversal of part {1}")]
    NotInTransversal(String, usize),
    #[error("part {0} does not exist")]
    NoSuchPart(usize),
    #[error("oracle inconsistency: {0}")]
    BadOracle(String),
    #[error("subgroup {subgroup} is not normal: conjugating {generator} by {by} leaves it")]
    NotNormal {
        subgroup: String,
        generator: String,
        by: String,
    },
    #[error("coset labels are not invariant: {0}")]
    LabelNotInvariant(String),
    #[error("ambient group has no element of infinite order")]
    MissingWitness,
    #[error("data is not flagged as having trivial parabolic subgroup")]
    NotTrivialParabolic,
    #[error("parts do not share one subgroup")]
    UnequalSubgroups,
    #[error("top groups differ")]
    TopMismatch,
    #[error("unsupported abelian base: {0}")]
    UnsupportedBase(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Exceeded(#[from] Exceeded),
    #[error(transparent)]
    Automata(#[from] AutomataError),
}

/// A group given by its operations on canonical elements.
///
/// `Elem` values must be canonical: two values are `==` exactly when they
/// are the same group element. Memoization relies on this.
pub trait AmbientGroup: Send + Sync + 'static {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync + 'static;

    fn identity(&self) -> Self::Elem;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn invert(&self, a: &Self::Elem) -> Self::Elem;
    /// A canonical printable key; equal exactly for equal elements.
    fn normal_form(&self, a: &Self::Elem) -> String;
    fn generators(&self) -> Vec<(String, Self::Elem)>;
    /// An element of infinite order, if the group has a designated one.
    fn infinite_order_witness(&self) -> Option<Self::Elem> {
        None
    }

    fn pow(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        let mut base = if n < 0 { self.invert(a) } else { a.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    /// `g^h = h⁻¹ g h`.
    fn conjugate(&self, g: &Self::Elem, h: &Self::Elem) -> Self::Elem {
        self.multiply(&self.multiply(&self.invert(h), g), h)
    }

    /// `[g, h] = g⁻¹ h⁻¹ g h`.
    fn commutator(&self, g: &Self::Elem, h: &Self::Elem) -> Self::Elem {
        let gi = self.invert(g);
        let hi = self.invert(h);
        self.multiply(&self.multiply(&gi, &hi), &self.multiply(g, h))
    }

    fn product<'a, I>(&self, elems: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
    {
        elems
            .into_iter()
            .fold(self.identity(), |acc, e| self.multiply(&acc, e))
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }
}

pub type CosetIndexFn<E> = Arc<dyn Fn(&E) -> usize + Send + Sync>;
pub type EndoFn<E> = Arc<dyn Fn(&E) -> E + Send + Sync>;

/// A finite-index subgroup `H` given by a right transversal and a coset
/// oracle: `coset_index(g) = j` iff `H t_j = H g` (0-based; `t_0 = e`).
#[derive(Clone)]
pub struct SubgroupOracle<E> {
    pub name: String,
    pub transversal: Vec<E>,
    coset_index: CosetIndexFn<E>,
    /// Generators of `H`, used for spot checks.
    pub generators: Vec<E>,
}

impl<E> SubgroupOracle<E> {
    pub fn new(
        name: impl Into<String>,
        transversal: Vec<E>,
        coset_index: impl Fn(&E) -> usize + Send + Sync + 'static,
        generators: Vec<E>,
    ) -> Self {
        SubgroupOracle {
            name: name.into(),
            transversal,
            coset_index: Arc::new(coset_index),
            generators,
        }
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn coset_index(&self, g: &E) -> usize {
        (self.coset_index)(g)
    }

    pub fn contains(&self, g: &E) -> bool {
        self.coset_index(g) == 0
    }

    pub(crate) fn index_fn(&self) -> CosetIndexFn<E> {
        self.coset_index.clone()
    }
}

impl<E: fmt::Debug> fmt::Debug for SubgroupOracle<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupOracle")
            .field("name", &self.name)
            .field("index", &self.transversal.len())
            .finish()
    }
}

/// A homomorphism from a finite-index subgroup into the ambient group.
#[derive(Clone)]
pub struct VirtualEndo<E> {
    pub name: String,
    map: EndoFn<E>,
}

impl<E> VirtualEndo<E> {
    pub fn new(name: impl Into<String>, map: impl Fn(&E) -> E + Send + Sync + 'static) -> Self {
        VirtualEndo {
            name: name.into(),
            map: Arc::new(map),
        }
    }

    pub fn apply(&self, h: &E) -> E {
        (self.map)(h)
    }

    pub(crate) fn map_fn(&self) -> EndoFn<E> {
        self.map.clone()
    }
}

impl<E> fmt::Debug for VirtualEndo<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VirtualEndo({})", self.name)
    }
}

#[derive(Clone, Debug)]
pub struct Part<E> {
    pub subgroup: SubgroupOracle<E>,
    pub endo: VirtualEndo<E>,
}

impl<E> Part<E> {
    pub fn new(subgroup: SubgroupOracle<E>, endo: VirtualEndo<E>) -> Self {
        Part { subgroup, endo }
    }
}

/// Data `(m, H, F)` over an ambient group.
pub struct GData<G: AmbientGroup> {
    pub ambient: Arc<G>,
    pub parts: Vec<Part<G::Elem>>,
    /// Set by [`refine`] or asserted by the caller: coset labels of the
    /// parabolic subgroup may be taken to be ambient elements.
    pub trivial_parabolic: bool,
}

impl<G: AmbientGroup> Clone for GData<G> {
    fn clone(&self) -> Self {
        GData {
            ambient: self.ambient.clone(),
            parts: self.parts.clone(),
            trivial_parabolic: self.trivial_parabolic,
        }
    }
}

impl<G: AmbientGroup> fmt::Debug for GData<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GData")
            .field("orbit_type", &self.orbit_type())
            .field("parts", &self.parts)
            .field("trivial_parabolic", &self.trivial_parabolic)
            .finish()
    }
}

impl<G: AmbientGroup> GData<G> {
    pub fn new(ambient: Arc<G>, parts: Vec<Part<G::Elem>>) -> Self {
        GData {
            ambient,
            parts,
            trivial_parabolic: false,
        }
    }

    /// Transversal sizes `(m_1, ..., m_s)`.
    pub fn orbit_type(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.subgroup.index()).collect()
    }

    pub fn degree(&self) -> usize {
        self.orbit_type().iter().sum()
    }

    /// First letter (0-based) of each part.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = 0;
        self.parts
            .iter()
            .map(|p| {
                let o = off;
                off += p.subgroup.index();
                o
            })
            .collect()
    }

    fn part(&self, i: usize) -> Result<&Part<G::Elem>, GDataError> {
        self.parts.get(i).ok_or(GDataError::NoSuchPart(i))
    }

    /// `θ_i(g, t_j) = t_j g t_k⁻¹` with `k` the coset index of `t_j g`;
    /// returns the value and `k`.
    pub fn schreier_at(
        &self,
        i: usize,
        g: &G::Elem,
        j: usize,
    ) -> Result<(G::Elem, usize), GDataError> {
        let part = self.part(i)?;
        let amb = &*self.ambient;
        let t = part.subgroup.transversal.get(j).ok_or_else(|| {
            GDataError::BadOracle(format!("no transversal element {j} in part {i}"))
        })?;
        let tg = amb.multiply(t, g);
        let k = part.subgroup.coset_index(&tg);
        let tk = part.subgroup.transversal.get(k).ok_or_else(|| {
            GDataError::BadOracle(format!(
                "coset index {k} out of range in part {i} ({})",
                part.subgroup.name
            ))
        })?;
        Ok((amb.multiply(&tg, &amb.invert(tk)), k))
    }

    /// Schreier function with the transversal element given explicitly.
    pub fn schreier(&self, i: usize, g: &G::Elem, t: &G::Elem) -> Result<G::Elem, GDataError> {
        let part = self.part(i)?;
        let j = part
            .subgroup
            .transversal
            .iter()
            .position(|x| x == t)
            .ok_or_else(|| GDataError::NotInTransversal(self.ambient.normal_form(t), i))?;
        Ok(self.schreier_at(i, g, j)?.0)
    }

    /// A lazy representation with its own memo table.
    pub fn representation(&self) -> Representation<G> {
        Representation::new(self.clone())
    }

    /// The finite-state automorphism representing `g`, or `Exceeded` if the
    /// section closure of `g` in the ambient group is larger than `limit`.
    pub fn represent(
        &self,
        g: &G::Elem,
        limit: usize,
    ) -> Result<crate::automata::TreeAutomorphism, GDataError> {
        self.representation().element(g, limit)
    }

    /// The smallest set of ambient elements containing `g` and closed under
    /// all section maps `g ↦ f_i(θ_i(g, t))`.
    pub fn explore_finite_state(
        &self,
        g: &G::Elem,
        limit: usize,
    ) -> Result<Vec<G::Elem>, GDataError> {
        self.representation()
            .explore(std::slice::from_ref(g), limit)
    }

    /// Spot checks of the oracle axioms on the given sample:
    /// `coset_index(t_j) = j`, Schreier values land in `H_i`, and `f_i` is
    /// multiplicative on pairs of subgroup generators.
    pub fn validate(&self, sample: &[G::Elem]) -> Result<(), GDataError> {
        let amb = &*self.ambient;
        for (i, part) in self.parts.iter().enumerate() {
            let sub = &part.subgroup;
            for (j, t) in sub.transversal.iter().enumerate() {
                if sub.coset_index(t) != j {
                    return Err(GDataError::BadOracle(format!(
                        "part {i}: transversal element {} has coset index {}",
                        amb.normal_form(t),
                        sub.coset_index(t)
                    )));
                }
            }
            for g in sample {
                for j in 0..sub.index() {
                    let (th, _) = self.schreier_at(i, g, j)?;
                    if !sub.contains(&th) {
                        return Err(GDataError::BadOracle(format!(
                            "part {i}: schreier value {} not in {}",
                            amb.normal_form(&th),
                            sub.name
                        )));
                    }
                }
            }
            for a in &sub.generators {
                if !sub.contains(a) {
                    return Err(GDataError::BadOracle(format!(
                        "part {i}: generator {} not in {}",
                        amb.normal_form(a),
                        sub.name
                    )));
                }
                for b in &sub.generators {
                    let ab = amb.multiply(a, b);
                    let lhs = part.endo.apply(&ab);
                    let rhs = amb.multiply(&part.endo.apply(a), &part.endo.apply(b));
                    if lhs != rhs {
                        return Err(GDataError::BadOracle(format!(
                            "part {i}: {} is not multiplicative on {} and {}",
                            part.endo.name,
                            amb.normal_form(a),
                            amb.normal_form(b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
