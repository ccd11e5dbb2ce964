//! Restriction to a subgroup, direct powers, and refinement to the normal
//! core.

use std::sync::Arc;

use super::{AmbientGroup, GData, GDataError, Part, SubgroupOracle, VirtualEndo};

impl<E: Clone + Send + Sync + 'static> SubgroupOracle<E> {
    /// The whole group as a subgroup of index 1.
    pub fn whole(name: impl Into<String>, identity: E, generators: Vec<E>) -> Self {
        SubgroupOracle::new(name, vec![identity], |_| 0, generators)
    }
}

/// The direct power `G^s` with coordinatewise operations.
pub struct PowerGroup<G: AmbientGroup> {
    pub base: Arc<G>,
    pub s: usize,
}

impl<G: AmbientGroup> PowerGroup<G> {
    pub fn new(base: Arc<G>, s: usize) -> Self {
        PowerGroup { base, s }
    }

    /// `g` in coordinate `i` (0-based), identity elsewhere.
    pub fn embed(&self, i: usize, g: &G::Elem) -> Vec<G::Elem> {
        let mut v = vec![self.base.identity(); self.s];
        v[i] = g.clone();
        v
    }

    pub fn diagonal(&self, g: &G::Elem) -> Vec<G::Elem> {
        vec![g.clone(); self.s]
    }

    /// `(g_1, ..., g_s) ↦ (g_s, g_1, ..., g_{s-1})`.
    pub fn rotate_right(v: &[G::Elem]) -> Vec<G::Elem> {
        let mut out = v.to_vec();
        out.rotate_right(1);
        out
    }

    /// `(g_1, ..., g_s) ↦ (g_2, ..., g_s, g_1)`.
    pub fn rotate_left(v: &[G::Elem]) -> Vec<G::Elem> {
        let mut out = v.to_vec();
        out.rotate_left(1);
        out
    }
}

impl<G: AmbientGroup> AmbientGroup for PowerGroup<G> {
    type Elem = Vec<G::Elem>;

    fn identity(&self) -> Self::Elem {
        vec![self.base.identity(); self.s]
    }

    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.base.multiply(x, y))
            .collect()
    }

    fn invert(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.invert(x)).collect()
    }

    fn normal_form(&self, a: &Self::Elem) -> String {
        let parts: Vec<String> = a.iter().map(|x| self.base.normal_form(x)).collect();
        format!("({})", parts.join("; "))
    }

    fn generators(&self) -> Vec<(String, Self::Elem)> {
        let mut out = Vec::new();
        for (name, g) in self.base.generators() {
            for i in 0..self.s {
                out.push((format!("{name}{}", i + 1), self.embed(i, &g)));
            }
        }
        out
    }

    fn infinite_order_witness(&self) -> Option<Self::Elem> {
        self.base
            .infinite_order_witness()
            .map(|x| self.diagonal(&x))
    }
}

/// `H_1 × ... × H_s` inside `G^s`. Slots are numbered little-endian in the
/// coordinate indices (coordinate 1 varies fastest) unless `order` lists the
/// index tuples explicitly.
pub fn product_oracle<E: Clone + Send + Sync + 'static>(
    factors: &[SubgroupOracle<E>],
    order: Option<&[Vec<usize>]>,
) -> Result<SubgroupOracle<Vec<E>>, GDataError> {
    let sizes: Vec<usize> = factors.iter().map(|f| f.index()).collect();
    let total: usize = sizes.iter().product();
    let tuples: Vec<Vec<usize>> = match order {
        Some(o) => {
            let mut sorted = o.to_vec();
            sorted.sort();
            sorted.dedup();
            let valid = o.len() == total
                && sorted.len() == total
                && o.iter()
                    .all(|t| t.len() == sizes.len() && t.iter().zip(&sizes).all(|(a, b)| a < b));
            if !valid {
                return Err(GDataError::InvalidArgument(
                    "slot order must list every index tuple once".into(),
                ));
            }
            o.to_vec()
        }
        None => (0..total)
            .map(|mut x| {
                sizes
                    .iter()
                    .map(|&m| {
                        let d = x % m;
                        x /= m;
                        d
                    })
                    .collect()
            })
            .collect(),
    };
    let position: std::collections::HashMap<Vec<usize>, usize> = tuples
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, t)| (t, i))
        .collect();
    let transversal = tuples
        .iter()
        .map(|t| {
            t.iter()
                .zip(factors)
                .map(|(&j, f)| f.transversal[j].clone())
                .collect()
        })
        .collect();
    let fns: Vec<_> = factors.iter().map(|f| f.index_fn()).collect();
    let ids: Vec<E> = factors.iter().map(|f| f.transversal[0].clone()).collect();
    let mut generators = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for g in &f.generators {
            let mut v = ids.clone();
            v[i] = g.clone();
            generators.push(v);
        }
    }
    let name = factors
        .iter()
        .map(|f| f.name.as_str())
        .collect::<Vec<_>>()
        .join(" × ");
    Ok(SubgroupOracle::new(
        name,
        transversal,
        move |g: &Vec<E>| {
            let t: Vec<usize> = g.iter().zip(&fns).map(|(x, f)| f(x)).collect();
            position[&t]
        },
        generators,
    ))
}

/// Replaces part `i` by `(K, f_i|_K)` for a subgroup `K ≤ H_i`, where `sub`
/// gives a transversal `L` of `K` in `H_i` and decides `K`-cosets of elements
/// of `H_i`. The new transversal is `{l·t}` ordered by `l`, then by `t`.
pub fn restrict<G: AmbientGroup>(
    gd: &GData<G>,
    i: usize,
    sub: &SubgroupOracle<G::Elem>,
) -> Result<GData<G>, GDataError> {
    let part = gd.parts.get(i).ok_or(GDataError::NoSuchPart(i))?;
    let amb = gd.ambient.clone();
    let h = part.subgroup.clone();
    let t_len = h.index();
    let mut transversal = Vec::with_capacity(sub.index() * t_len);
    for l in &sub.transversal {
        for t in &h.transversal {
            transversal.push(amb.multiply(l, t));
        }
    }
    let h_index = h.index_fn();
    let k_index = sub.index_fn();
    let h_trans = h.transversal.clone();
    let a2 = amb.clone();
    let oracle = SubgroupOracle::new(
        format!("{} ∩ {}", sub.name, h.name),
        transversal,
        move |g| {
            let j = h_index(g);
            let rest = a2.multiply(g, &a2.invert(&h_trans[j]));
            k_index(&rest) * t_len + j
        },
        sub.generators.clone(),
    );
    let endo = VirtualEndo {
        name: format!("{}|{}", part.endo.name, sub.name),
        map: part.endo.map_fn(),
    };
    let mut out = gd.clone();
    out.parts[i] = Part::new(oracle, endo);
    out.trivial_parabolic = false;
    Ok(out)
}

/// How [`power_data`] arranges the endomorphisms over `H^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerVariant {
    /// `s` parts over `H^s`; part `j` applies `f_{k+j}` (indices mod `s`)
    /// in coordinate `k`.
    Cyclic,
    /// Parts `(H^s, ρ)` and `(G^s, τ)` with `ρ = (f_1, ..., f_s)` and
    /// `τ(g_1, ..., g_s) = (g_s, g_1, ..., g_{s-1})`.
    Shift,
}

pub(crate) fn shared_subgroup<G: AmbientGroup>(
    gd: &GData<G>,
) -> Result<SubgroupOracle<G::Elem>, GDataError> {
    let first = gd
        .parts
        .first()
        .ok_or_else(|| GDataError::InvalidArgument("data has no parts".into()))?;
    for p in &gd.parts[1..] {
        if p.subgroup.name != first.subgroup.name
            || p.subgroup.transversal != first.subgroup.transversal
        {
            return Err(GDataError::UnequalSubgroups);
        }
    }
    Ok(first.subgroup.clone())
}

/// Endomorphisms `f_1..f_s`: either one per part, or a single one repeated.
pub(crate) fn endo_list<G: AmbientGroup>(
    gd: &GData<G>,
    s: usize,
) -> Result<Vec<VirtualEndo<G::Elem>>, GDataError> {
    let r = gd.parts.len();
    if r != s && r != 1 {
        return Err(GDataError::InvalidArgument(format!(
            "{r} parts cannot be spread over {s} coordinates"
        )));
    }
    Ok((0..s).map(|k| gd.parts[k % r].endo.clone()).collect())
}

/// Data for `G^s` from data for `G` whose parts share one subgroup.
pub fn power_data<G: AmbientGroup>(
    gd: &GData<G>,
    s: usize,
    variant: PowerVariant,
    slot_order: Option<&[Vec<usize>]>,
) -> Result<GData<PowerGroup<G>>, GDataError> {
    if s == 0 {
        return Err(GDataError::InvalidArgument("s must be at least 1".into()));
    }
    let h = shared_subgroup(gd)?;
    let endos = endo_list(gd, s)?;
    let power = Arc::new(PowerGroup::new(gd.ambient.clone(), s));
    let hs = product_oracle(&vec![h; s], slot_order)?;
    let coordinatewise = |shift: usize| {
        let fs: Vec<_> = (0..s).map(|k| endos[(k + shift) % s].map_fn()).collect();
        let name = (0..s)
            .map(|k| endos[(k + shift) % s].name.clone())
            .collect::<Vec<_>>()
            .join(", ");
        VirtualEndo::new(format!("({name})"), move |h: &Vec<G::Elem>| {
            h.iter().zip(&fs).map(|(x, f)| f(x)).collect()
        })
    };
    let parts = match variant {
        PowerVariant::Cyclic => (0..s)
            .map(|j| Part::new(hs.clone(), coordinatewise(j)))
            .collect(),
        PowerVariant::Shift => {
            let whole = SubgroupOracle::whole(
                "G^s",
                power.identity(),
                power.generators().into_iter().map(|(_, g)| g).collect(),
            );
            vec![
                Part::new(hs, coordinatewise(0)),
                Part::new(
                    whole,
                    VirtualEndo::new("τ", |g: &Vec<G::Elem>| PowerGroup::<G>::rotate_right(g)),
                ),
            ]
        }
    };
    Ok(GData {
        ambient: power,
        parts,
        trivial_parabolic: false,
    })
}

/// Refinement to a normal subgroup `K` contained in every `H_i`: parts
/// `(K, h ↦ f_i(t⁻¹ h t))` for every part `i` and every `t` in the
/// transversal of `K`. Parts whose maps agree on the generators of `K`
/// are kept once. The result is flagged `trivial_parabolic`.
pub fn refine<G: AmbientGroup>(
    gd: &GData<G>,
    core: &SubgroupOracle<G::Elem>,
) -> Result<GData<G>, GDataError> {
    let amb = gd.ambient.clone();
    let gens = amb.generators();
    for k in &core.generators {
        for (gname, g) in &gens {
            for (by, c) in [
                (gname.clone(), amb.conjugate(k, g)),
                (format!("{gname}^-1"), amb.conjugate(k, &amb.invert(g))),
            ] {
                if !core.contains(&c) {
                    return Err(GDataError::NotNormal {
                        subgroup: core.name.clone(),
                        generator: amb.normal_form(k),
                        by,
                    });
                }
            }
        }
        for p in &gd.parts {
            if !p.subgroup.contains(k) {
                return Err(GDataError::BadOracle(format!(
                    "{} is not contained in {}",
                    core.name, p.subgroup.name
                )));
            }
        }
    }
    let mut parts: Vec<Part<G::Elem>> = Vec::new();
    let mut signatures: Vec<Vec<G::Elem>> = Vec::new();
    for p in &gd.parts {
        for t in &core.transversal {
            let f = p.endo.map_fn();
            let a = amb.clone();
            let t = t.clone();
            let name = if amb.is_identity(&t) {
                p.endo.name.clone()
            } else {
                format!("{}·{}", amb.normal_form(&t), p.endo.name)
            };
            let endo = VirtualEndo::new(name, move |h: &G::Elem| f(&a.conjugate(h, &t)));
            let sig: Vec<G::Elem> = core.generators.iter().map(|k| endo.apply(k)).collect();
            if signatures.contains(&sig) {
                continue;
            }
            signatures.push(sig);
            parts.push(Part::new(core.clone(), endo));
        }
    }
    Ok(GData {
        ambient: amb,
        parts,
        trivial_parabolic: true,
    })
}
