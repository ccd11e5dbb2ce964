//! Split extensions `A^(X) ⋊ U` with `A` finitely generated abelian, and the
//! wreath-product extensions of self-similar data built on them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::construct::{endo_list, product_oracle, shared_subgroup};
use super::{AmbientGroup, GData, GDataError, Part, PowerGroup, SubgroupOracle, VirtualEndo};

/// `ℤ^rank × C_{n_1} × ... × C_{n_r}`. Values are vectors with the free
/// coordinates first; torsion coordinates are kept in `0..n_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianBase {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianBase {
    pub fn new(rank: usize, torsion: Vec<i64>) -> Result<Self, GDataError> {
        if let Some(n) = torsion.iter().find(|&&n| n < 2) {
            return Err(GDataError::UnsupportedBase(format!(
                "torsion order {n} < 2"
            )));
        }
        Ok(AbelianBase { rank, torsion })
    }

    pub fn trivial() -> Self {
        AbelianBase {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn integers() -> Self {
        AbelianBase {
            rank: 1,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(n: i64) -> Result<Self, GDataError> {
        AbelianBase::new(0, vec![n])
    }

    /// Number of coordinates of a value.
    pub fn width(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.width() == 0
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.width()]
    }

    pub fn unit(&self, k: usize) -> Vec<i64> {
        let mut v = self.zero();
        v[k] = 1;
        v
    }

    pub fn reduce(&self, v: &mut [i64]) {
        for (x, &n) in v[self.rank..].iter_mut().zip(&self.torsion) {
            *x = x.rem_euclid(n);
        }
    }

    /// Single-coordinate factors in coordinate order.
    pub fn factors(&self) -> Vec<AbelianBase> {
        let mut out: Vec<_> = (0..self.rank).map(|_| AbelianBase::integers()).collect();
        out.extend(self.torsion.iter().map(|&n| AbelianBase {
            rank: 0,
            torsion: vec![n],
        }));
        out
    }

    /// Order of a finite base.
    pub fn order(&self) -> Option<usize> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().map(|&n| n as usize).product())
    }

    /// Mixed-radix index of a value of a finite base (first coordinate
    /// least significant).
    fn finite_index(&self, v: &[i64]) -> usize {
        let mut idx = 0usize;
        for (x, &n) in v.iter().zip(&self.torsion).rev() {
            idx = idx * n as usize + *x as usize;
        }
        idx
    }

    fn finite_value(&self, mut idx: usize) -> Vec<i64> {
        self.torsion
            .iter()
            .map(|&n| {
                let d = idx % n as usize;
                idx /= n as usize;
                d as i64
            })
            .collect()
    }
}

impl fmt::Display for AbelianBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank == 1 {
            parts.push("Z".to_string());
        } else if self.rank > 1 {
            parts.push(format!("Z^{}", self.rank));
        }
        parts.extend(self.torsion.iter().map(|n| format!("C{n}")));
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

/// Canonical representatives of right cosets `H_ω u`.
#[derive(Clone)]
pub struct CosetLabeler<E> {
    pub name: String,
    canonical: Arc<dyn Fn(&E) -> E + Send + Sync>,
    /// Generators of `H_ω`, used for invariance checks.
    pub subgroup_generators: Vec<E>,
}

impl<E: Clone + Send + Sync + 'static> CosetLabeler<E> {
    pub fn new(
        name: impl Into<String>,
        canonical: impl Fn(&E) -> E + Send + Sync + 'static,
        subgroup_generators: Vec<E>,
    ) -> Self {
        CosetLabeler {
            name: name.into(),
            canonical: Arc::new(canonical),
            subgroup_generators,
        }
    }

    /// Labels are the elements themselves (trivial `H_ω`).
    pub fn trivial() -> Self {
        CosetLabeler::new("1", |e: &E| e.clone(), Vec::new())
    }

    pub fn canonical(&self, e: &E) -> E {
        (self.canonical)(e)
    }

    /// Coordinatewise labeler on `G^s`.
    pub fn product(factors: Vec<CosetLabeler<E>>) -> CosetLabeler<Vec<E>> {
        let name = factors
            .iter()
            .map(|f| f.name.clone())
            .collect::<Vec<_>>()
            .join(" × ");
        let fs: Vec<_> = factors.iter().map(|f| f.canonical.clone()).collect();
        CosetLabeler {
            name,
            canonical: Arc::new(move |v: &Vec<E>| v.iter().zip(&fs).map(|(x, f)| f(x)).collect()),
            subgroup_generators: Vec::new(),
        }
    }
}

impl<E> fmt::Debug for CosetLabeler<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CosetLabeler({})", self.name)
    }
}

/// `(c, u)` with `c` a finitely supported map from coset labels to base
/// values and `u` in the top group. Zero values are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplitElement<E> {
    pub coords: BTreeMap<E, Vec<i64>>,
    pub top: E,
}

/// The group `A^(H_ω \ U) ⋊ U`. The lamp at label `L` is the basepoint lamp
/// conjugated by `L`, so `u` moves it to the label of `L u⁻¹`:
/// `(c_1, u_1)(c_2, u_2) = (c_1 + u_1·c_2, u_1 u_2)`.
pub struct SplitGroup<U: AmbientGroup> {
    pub top: Arc<U>,
    pub base: AbelianBase,
    pub labeler: CosetLabeler<U::Elem>,
    pub base_names: Vec<String>,
}

impl<U: AmbientGroup> SplitGroup<U> {
    pub fn new(top: Arc<U>, base: AbelianBase, labeler: CosetLabeler<U::Elem>) -> Self {
        let base_names = match base.width() {
            1 => vec!["a".to_string()],
            w => (1..=w).map(|k| format!("a_{k}")).collect(),
        };
        SplitGroup {
            top,
            base,
            labeler,
            base_names,
        }
    }

    pub fn with_base_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(
            names.len(),
            self.base.width(),
            "one name per base coordinate"
        );
        self.base_names = names;
        self
    }

    pub fn label(&self, u: &U::Elem) -> U::Elem {
        self.labeler.canonical(u)
    }

    pub fn from_top(&self, u: &U::Elem) -> SplitElement<U::Elem> {
        SplitElement {
            coords: BTreeMap::new(),
            top: u.clone(),
        }
    }

    /// The lamp with value `v` at the coset of `u`.
    pub fn lamp(&self, u: &U::Elem, mut v: Vec<i64>) -> SplitElement<U::Elem> {
        self.base.reduce(&mut v);
        let mut coords = BTreeMap::new();
        if v.iter().any(|&x| x != 0) {
            coords.insert(self.label(u), v);
        }
        SplitElement {
            coords,
            top: self.top.identity(),
        }
    }

    /// Unit lamp of coordinate `k` at the basepoint.
    pub fn basepoint(&self, k: usize) -> SplitElement<U::Elem> {
        self.lamp(&self.top.identity(), self.base.unit(k))
    }

    /// Total of all lamp values.
    pub fn coord_sum(&self, c: &BTreeMap<U::Elem, Vec<i64>>) -> Vec<i64> {
        let mut s = self.base.zero();
        for v in c.values() {
            for (a, b) in s.iter_mut().zip(v) {
                *a += b;
            }
        }
        self.base.reduce(&mut s);
        s
    }

    fn add_into(&self, acc: &mut BTreeMap<U::Elem, Vec<i64>>, label: U::Elem, v: &[i64]) {
        let entry = acc.entry(label.clone()).or_insert_with(|| self.base.zero());
        for (a, b) in entry.iter_mut().zip(v) {
            *a += b;
        }
        self.base.reduce(entry);
        if entry.iter().all(|&x| x == 0) {
            acc.remove(&label);
        }
    }

    /// Rebuilds an element from arbitrary lamp values, relabeling and
    /// pruning zeros.
    pub fn element(&self, lamps: &[(U::Elem, Vec<i64>)], top: &U::Elem) -> SplitElement<U::Elem> {
        let mut coords = BTreeMap::new();
        for (l, v) in lamps {
            self.add_into(&mut coords, self.label(l), v);
        }
        SplitElement {
            coords,
            top: top.clone(),
        }
    }
}

impl<U: AmbientGroup> AmbientGroup for SplitGroup<U> {
    type Elem = SplitElement<U::Elem>;

    fn identity(&self) -> Self::Elem {
        self.from_top(&self.top.identity())
    }

    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut coords = a.coords.clone();
        if !b.coords.is_empty() {
            let ui = self.top.invert(&a.top);
            for (l, v) in &b.coords {
                let moved = self.label(&self.top.multiply(l, &ui));
                self.add_into(&mut coords, moved, v);
            }
        }
        SplitElement {
            coords,
            top: self.top.multiply(&a.top, &b.top),
        }
    }

    fn invert(&self, a: &Self::Elem) -> Self::Elem {
        let ui = self.top.invert(&a.top);
        let mut coords = BTreeMap::new();
        for (l, v) in &a.coords {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            self.add_into(&mut coords, self.label(&self.top.multiply(l, &a.top)), &neg);
        }
        SplitElement { coords, top: ui }
    }

    fn normal_form(&self, a: &Self::Elem) -> String {
        let lamps: Vec<String> = a
            .coords
            .iter()
            .map(|(l, v)| {
                let vs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("{}:{}", self.top.normal_form(l), vs.join(","))
            })
            .collect();
        format!("[{}] {}", lamps.join(" + "), self.top.normal_form(&a.top))
    }

    fn generators(&self) -> Vec<(String, Self::Elem)> {
        let mut out: Vec<_> = (0..self.base.width())
            .map(|k| (self.base_names[k].clone(), self.basepoint(k)))
            .collect();
        out.extend(
            self.top
                .generators()
                .into_iter()
                .map(|(n, u)| (n, self.from_top(&u))),
        );
        out
    }

    fn infinite_order_witness(&self) -> Option<Self::Elem> {
        self.top.infinite_order_witness().map(|u| self.from_top(&u))
    }
}

type Ext<G> = GData<SplitGroup<PowerGroup<G>>>;

/// What `μ` sends the basepoint lamp to in [`theorem_c_extend`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuTarget<E> {
    /// `(x, ..., x)` with `x` the ambient infinite-order witness.
    Diagonal,
    /// An explicit tuple in `G^s`.
    Tuple(Vec<E>),
}

/// Options of [`theorem_c_extend`].
#[derive(Debug, Clone)]
pub struct CExtOptions<E> {
    pub mu: MuTarget<E>,
    /// Explicit numbering of the `m^s` slots of `H^s`, as index tuples.
    pub slot_order: Option<Vec<Vec<usize>>>,
}

impl<E> Default for CExtOptions<E> {
    fn default() -> Self {
        CExtOptions {
            mu: MuTarget::Diagonal,
            slot_order: None,
        }
    }
}

/// Common pieces of both extensions for one base factor.
struct ExtContext<G: AmbientGroup> {
    split: Arc<SplitGroup<PowerGroup<G>>>,
    h: SubgroupOracle<G::Elem>,
    hs: SubgroupOracle<Vec<G::Elem>>,
    endos: Vec<VirtualEndo<G::Elem>>,
}

impl<G: AmbientGroup> ExtContext<G> {
    fn new(
        gd: &GData<G>,
        base: AbelianBase,
        labeler: CosetLabeler<Vec<G::Elem>>,
        slot_order: Option<&[Vec<usize>]>,
    ) -> Result<Self, GDataError> {
        let s = gd.parts.len();
        let h = shared_subgroup(gd)?;
        let endos = endo_list(gd, s)?;
        let power = Arc::new(PowerGroup::new(gd.ambient.clone(), s));
        let hs = product_oracle(&vec![h.clone(); s], slot_order)?;
        let split = Arc::new(SplitGroup::new(power, base, labeler));
        Ok(ExtContext {
            split,
            h,
            hs,
            endos,
        })
    }

    fn s(&self) -> usize {
        self.endos.len()
    }

    /// `ρ` with coordinate `k` handled by `f_{k + shift}`: lamps whose label
    /// lies in `H^s` are relabeled through the maps, the others vanish.
    fn rho(&self, shift: usize) -> VirtualEndo<SplitElement<Vec<G::Elem>>> {
        let s = self.s();
        let fs: Vec<_> = (0..s)
            .map(|k| self.endos[(k + shift) % s].map_fn())
            .collect();
        let names: Vec<String> = (0..s)
            .map(|k| self.endos[(k + shift) % s].name.clone())
            .collect();
        let split = self.split.clone();
        let h = self.h.clone();
        VirtualEndo::new(
            format!("ρ({})", names.join(", ")),
            move |g: &SplitElement<Vec<G::Elem>>| {
                let apply = |v: &Vec<G::Elem>| -> Vec<G::Elem> {
                    v.iter().zip(&fs).map(|(x, f)| f(x)).collect()
                };
                let lamps: Vec<(Vec<G::Elem>, Vec<i64>)> = g
                    .coords
                    .iter()
                    .filter(|(l, _)| l.iter().all(|x| h.contains(x)))
                    .map(|(l, v)| (apply(l), v.clone()))
                    .collect();
                split.element(&lamps, &apply(&g.top))
            },
        )
    }

    fn whole(&self) -> SubgroupOracle<SplitElement<Vec<G::Elem>>> {
        let split = &*self.split;
        SubgroupOracle::whole(
            "𝒢",
            split.identity(),
            split.generators().into_iter().map(|(_, g)| g).collect(),
        )
    }

    /// `𝓗 = A^(X) ⋊ H^s` (free base) or `{Σc = 0} ⋊ H^s` (finite base).
    fn big_h(&self) -> SubgroupOracle<SplitElement<Vec<G::Elem>>> {
        let split = self.split.clone();
        let hs_index = self.hs.index_fn();
        let ms = self.hs.index();
        let mut generators: Vec<_> = self
            .hs
            .generators
            .iter()
            .map(|u| split.from_top(u))
            .collect();
        match split.base.order() {
            Some(order) if order > 1 => {
                let transversal = (0..order)
                    .flat_map(|b| {
                        let v = split.base.finite_value(b);
                        let split = split.clone();
                        self.hs.transversal.iter().map(move |t| {
                            let lamp = split.lamp(&split.top.identity(), v.clone());
                            split.multiply(&lamp, &split.from_top(t))
                        })
                    })
                    .collect();
                for (_, u) in split.top.generators() {
                    for k in 0..split.base.width() {
                        generators.push(split.commutator(&split.basepoint(k), &split.from_top(&u)));
                    }
                }
                let sp = split.clone();
                SubgroupOracle::new(
                    format!("[{}, 𝒢] ⋊ {}", split.base, self.hs.name),
                    transversal,
                    move |g: &SplitElement<Vec<G::Elem>>| {
                        sp.base.finite_index(&sp.coord_sum(&g.coords)) * ms + hs_index(&g.top)
                    },
                    generators,
                )
            }
            _ => {
                for k in 0..split.base.width() {
                    generators.push(split.basepoint(k));
                }
                SubgroupOracle::new(
                    format!("{}^(X) ⋊ {}", split.base, self.hs.name),
                    self.hs
                        .transversal
                        .iter()
                        .map(|t| split.from_top(t))
                        .collect(),
                    move |g: &SplitElement<Vec<G::Elem>>| hs_index(&g.top),
                    generators,
                )
            }
        }
    }

    /// `(c, g) ↦ target^{Σc}` for a free base of rank 1.
    fn mu(&self, target: Vec<G::Elem>) -> VirtualEndo<SplitElement<Vec<G::Elem>>> {
        let split = self.split.clone();
        VirtualEndo::new("μ", move |g: &SplitElement<Vec<G::Elem>>| {
            let n = split.coord_sum(&g.coords).first().copied().unwrap_or(0);
            split.from_top(&split.top.pow(&target, n))
        })
    }
}

fn check_labels<G: AmbientGroup>(
    gd: &GData<G>,
    labelers: &[CosetLabeler<G::Elem>],
) -> Result<(), GDataError> {
    let s = gd.parts.len();
    let endos = endo_list(gd, s)?;
    let amb = &*gd.ambient;
    for (k, lab) in labelers.iter().enumerate() {
        let id = lab.canonical(&amb.identity());
        for w in &lab.subgroup_generators {
            if lab.canonical(w) != id {
                return Err(GDataError::LabelNotInvariant(format!(
                    "{} does not label {} as the basepoint",
                    lab.name,
                    amb.normal_form(w)
                )));
            }
            for shift in 0..s {
                let f = &endos[(k + shift) % s];
                if lab.canonical(&f.apply(w)) != id {
                    return Err(GDataError::LabelNotInvariant(format!(
                        "{} maps {} out of {} in coordinate {}",
                        f.name,
                        amb.normal_form(w),
                        lab.name,
                        k + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Extension of data with `s` parts over a common subgroup `H` to the group
/// `B^(X) ⋊ G^s`, `X = H_{ω_1}\G × ... × H_{ω_s}\G`.
///
/// Free factor `ℤ`: `s` parts `(𝓗, ρ_j)` of size `m^s` plus `(𝒢, μ)` with
/// `μ(c, g) = (x, ..., x)^{Σc}`. Finite cyclic factor `C_n`: `s` parts over
/// `{Σc = 0} ⋊ H^s` of size `n·m^s`, transversal `ḃ·t`. General bases are
/// concatenations of their cyclic factors. Without labelers, labels are the
/// elements of `G^s` themselves.
pub fn theorem_b_extend<G: AmbientGroup>(
    gd: &GData<G>,
    base: &AbelianBase,
    labelers: Option<Vec<CosetLabeler<G::Elem>>>,
    slot_order: Option<&[Vec<usize>]>,
) -> Result<Ext<G>, GDataError> {
    let s = gd.parts.len();
    let labeler = match labelers {
        Some(ls) => {
            if ls.len() != s {
                return Err(GDataError::InvalidArgument(format!(
                    "{} labelers for {s} coordinates",
                    ls.len()
                )));
            }
            check_labels(gd, &ls)?;
            CosetLabeler::product(ls)
        }
        None => CosetLabeler::trivial(),
    };
    let factors = if base.is_trivial() {
        vec![AbelianBase::trivial()]
    } else {
        base.factors()
    };
    let mut acc: Option<Ext<G>> = None;
    for factor in factors {
        let ctx = ExtContext::new(gd, factor.clone(), labeler.clone(), slot_order)?;
        let big_h = ctx.big_h();
        let mut parts: Vec<_> = (0..s)
            .map(|j| Part::new(big_h.clone(), ctx.rho(j)))
            .collect();
        if factor.rank == 1 {
            let x = gd
                .ambient
                .infinite_order_witness()
                .ok_or(GDataError::MissingWitness)?;
            parts.push(Part::new(ctx.whole(), ctx.mu(vec![x; s])));
        }
        let data = GData {
            ambient: ctx.split.clone(),
            parts,
            trivial_parabolic: false,
        };
        acc = Some(match acc {
            None => data,
            Some(prev) => concat(&prev, &data)?,
        });
    }
    Ok(acc.expect("at least one factor"))
}

/// Extension of data with trivial parabolic subgroup to `ℤ^(G^s) ⋊ G^s`
/// with parts `((m^s, 1, 1), (𝓗, 𝒢, 𝒢), (ρ, τ, μ))`:
/// `ρ = (f_1, ..., f_s)` on `𝓗 = ℤ^(G^s) ⋊ H^s`,
/// `τ(g_1, ..., g_s) = (g_2, ..., g_s, g_1)` on tops and labels, and `μ`
/// sending the basepoint lamp to the target and killing `G^s`.
/// Bases `ℤ^l` are concatenations of `l` copies.
pub fn theorem_c_extend<G: AmbientGroup>(
    gd: &GData<G>,
    base: &AbelianBase,
    options: &CExtOptions<G::Elem>,
) -> Result<Ext<G>, GDataError> {
    if !gd.trivial_parabolic {
        return Err(GDataError::NotTrivialParabolic);
    }
    if !base.torsion.is_empty() {
        return Err(GDataError::UnsupportedBase(format!(
            "{base}: only free abelian bases are supported here"
        )));
    }
    let s = gd.parts.len();
    let target = match &options.mu {
        MuTarget::Diagonal => vec![
            gd.ambient
                .infinite_order_witness()
                .ok_or(GDataError::MissingWitness)?;
            s
        ],
        MuTarget::Tuple(t) => {
            if t.len() != s {
                return Err(GDataError::InvalidArgument(format!(
                    "μ target has {} coordinates, expected {s}",
                    t.len()
                )));
            }
            t.clone()
        }
    };
    let factors = if base.is_trivial() {
        vec![AbelianBase::trivial()]
    } else {
        base.factors()
    };
    let mut acc: Option<Ext<G>> = None;
    for factor in factors {
        let ctx = ExtContext::new(
            gd,
            factor.clone(),
            CosetLabeler::trivial(),
            options.slot_order.as_deref(),
        )?;
        let split = ctx.split.clone();
        let tau = VirtualEndo::new("τ", move |g: &SplitElement<Vec<G::Elem>>| {
            let lamps: Vec<_> = g
                .coords
                .iter()
                .map(|(l, v)| (PowerGroup::<G>::rotate_left(l), v.clone()))
                .collect();
            split.element(&lamps, &PowerGroup::<G>::rotate_left(&g.top))
        });
        let mu = if factor.rank == 1 {
            ctx.mu(target.clone())
        } else {
            let split = ctx.split.clone();
            VirtualEndo::new("μ", move |_: &SplitElement<Vec<G::Elem>>| split.identity())
        };
        let data = GData {
            ambient: ctx.split.clone(),
            parts: vec![
                Part::new(ctx.big_h(), ctx.rho(0)),
                Part::new(ctx.whole(), tau),
                Part::new(ctx.whole(), mu),
            ],
            trivial_parabolic: false,
        };
        acc = Some(match acc {
            None => data,
            Some(prev) => concat(&prev, &data)?,
        });
    }
    Ok(acc.expect("at least one factor"))
}

/// `δ: A^(G) ⋊ G → A^(G^s) ⋊ G^s`, lamp at `g` to the lamp at `(g, ..., g)`
/// and `g` to `(g, ..., g)`.
pub fn diagonal_embed<G: AmbientGroup>(
    ext: &SplitGroup<PowerGroup<G>>,
    lamps: &[(G::Elem, Vec<i64>)],
    top: &G::Elem,
) -> SplitElement<Vec<G::Elem>> {
    let power = &*ext.top;
    let lamps: Vec<_> = lamps
        .iter()
        .map(|(g, v)| (power.diagonal(g), v.clone()))
        .collect();
    ext.element(&lamps, &power.diagonal(top))
}

/// Concatenation of two data over split groups with the same top group:
/// data over `(A_1 ⊕ A_2)^(X) ⋊ U` whose parts are those of each operand,
/// lifted so that each map kills the other operand's base.
pub fn concat<U: AmbientGroup>(
    gd1: &GData<SplitGroup<U>>,
    gd2: &GData<SplitGroup<U>>,
) -> Result<GData<SplitGroup<U>>, GDataError> {
    let (a1, a2) = (&*gd1.ambient, &*gd2.ambient);
    let nf = |a: &SplitGroup<U>| -> Vec<(String, String)> {
        a.top
            .generators()
            .iter()
            .map(|(n, u)| (n.clone(), a.top.normal_form(u)))
            .collect()
    };
    if nf(a1) != nf(a2) || a1.labeler.name != a2.labeler.name {
        return Err(GDataError::TopMismatch);
    }
    let (b1, b2) = (&a1.base, &a2.base);
    let base = AbelianBase {
        rank: b1.rank + b2.rank,
        torsion: b1.torsion.iter().chain(&b2.torsion).copied().collect(),
    };
    // positions of each operand's coordinates in the combined value
    let pos1: Vec<usize> = (0..b1.rank)
        .chain((0..b1.torsion.len()).map(|i| b1.rank + b2.rank + i))
        .collect();
    let pos2: Vec<usize> = (0..b2.rank)
        .map(|i| b1.rank + i)
        .chain((0..b2.torsion.len()).map(|i| b1.rank + b2.rank + b1.torsion.len() + i))
        .collect();
    let mut names = vec![String::new(); base.width()];
    for (k, &p) in pos1.iter().enumerate() {
        names[p] = a1.base_names[k].clone();
    }
    for (k, &p) in pos2.iter().enumerate() {
        names[p] = a2.base_names[k].clone();
    }
    let mut seen = std::collections::HashMap::new();
    for n in names.iter() {
        *seen.entry(n.clone()).or_insert(0) += 1;
    }
    let names: Vec<String> = names
        .iter()
        .enumerate()
        .map(|(k, n)| {
            if seen[n] > 1 {
                format!("{n}_{}", k + 1)
            } else {
                n.clone()
            }
        })
        .collect();
    let combined = Arc::new(
        SplitGroup {
            top: a1.top.clone(),
            base,
            labeler: a1.labeler.clone(),
            base_names: Vec::new(),
        }
        .with_base_names(names),
    );

    fn lift<U: AmbientGroup>(
        gd: &GData<SplitGroup<U>>,
        combined: &Arc<SplitGroup<U>>,
        pos: Vec<usize>,
    ) -> Vec<Part<SplitElement<U::Elem>>> {
        let pos = Arc::new(pos);
        let project = {
            let pos = pos.clone();
            move |g: &SplitElement<U::Elem>| -> SplitElement<U::Elem> {
                let coords = g
                    .coords
                    .iter()
                    .filter_map(|(l, v)| {
                        let w: Vec<i64> = pos.iter().map(|&p| v[p]).collect();
                        w.iter().any(|&x| x != 0).then(|| (l.clone(), w))
                    })
                    .collect();
                SplitElement {
                    coords,
                    top: g.top.clone(),
                }
            }
        };
        let embed = {
            let pos = pos.clone();
            let width = combined.base.width();
            move |g: &SplitElement<U::Elem>| -> SplitElement<U::Elem> {
                let coords = g
                    .coords
                    .iter()
                    .map(|(l, v)| {
                        let mut w = vec![0; width];
                        for (k, &p) in pos.iter().enumerate() {
                            w[p] = v[k];
                        }
                        (l.clone(), w)
                    })
                    .collect();
                SplitElement {
                    coords,
                    top: g.top.clone(),
                }
            }
        };
        gd.parts
            .iter()
            .map(|p| {
                let idx = p.subgroup.index_fn();
                let pr = project.clone();
                let sub = SubgroupOracle::new(
                    format!("lift({})", p.subgroup.name),
                    p.subgroup.transversal.iter().map(&embed).collect(),
                    move |g| idx(&pr(g)),
                    p.subgroup.generators.iter().map(&embed).collect(),
                );
                let f = p.endo.map_fn();
                let (pr, em) = (project.clone(), embed.clone());
                let endo =
                    VirtualEndo::new(format!("lift({})", p.endo.name), move |g| em(&f(&pr(g))));
                Part::new(sub, endo)
            })
            .collect()
    }

    let mut parts = lift(gd1, &combined, pos1);
    parts.extend(lift(gd2, &combined, pos2));
    Ok(GData {
        ambient: combined,
        parts,
        trivial_parabolic: gd1.trivial_parabolic && gd2.trivial_parabolic,
    })
}
