//! The lamplighter-type groups `ℤ≀ℤ` and `C_2≀ℤ` and the data over them.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::gdata::{refine, AmbientGroup, GData, Part, SubgroupOracle, VirtualEndo};

/// `(c, n)`: lamp values `c` (finite support, no zeros) and top `n ∈ ℤ`.
/// The lamp at `p` is `t^{x^p}` where `t` is the basepoint lamp.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LampElem {
    pub lamps: BTreeMap<i64, i64>,
    pub top: i64,
}

/// `A≀ℤ` with `A = ℤ` (`modulus = None`) or `A = C_n`.
#[derive(Debug, Clone)]
pub struct LampGroup {
    pub modulus: Option<i64>,
    pub lamp_name: String,
    pub top_name: String,
}

impl LampGroup {
    /// `ℤ≀ℤ = ⟨y⟩≀⟨x⟩`.
    pub fn z_wr_z() -> Self {
        LampGroup {
            modulus: None,
            lamp_name: "y".into(),
            top_name: "x".into(),
        }
    }

    /// `C_2≀ℤ = ⟨a⟩≀⟨x⟩`.
    pub fn c2_wr_z() -> Self {
        LampGroup {
            modulus: Some(2),
            lamp_name: "a".into(),
            top_name: "x".into(),
        }
    }

    fn reduce(&self, v: i64) -> i64 {
        match self.modulus {
            Some(n) => v.rem_euclid(n),
            None => v,
        }
    }

    pub fn elem(&self, lamps: &[(i64, i64)], top: i64) -> LampElem {
        let mut out = BTreeMap::new();
        for &(p, v) in lamps {
            let e = out.entry(p).or_insert(0);
            *e = self.reduce(*e + v);
            if *e == 0 {
                out.remove(&p);
            }
        }
        LampElem { lamps: out, top }
    }

    pub fn lamp(&self, p: i64) -> LampElem {
        self.elem(&[(p, 1)], 0)
    }

    pub fn top(&self, n: i64) -> LampElem {
        self.elem(&[], n)
    }

    /// Sum of lamp values.
    pub fn lamp_sum(&self, g: &LampElem) -> i64 {
        self.reduce(g.lamps.values().sum())
    }
}

impl AmbientGroup for LampGroup {
    type Elem = LampElem;

    fn identity(&self) -> LampElem {
        LampElem::default()
    }

    fn multiply(&self, a: &LampElem, b: &LampElem) -> LampElem {
        let mut lamps = a.lamps.clone();
        for (&p, &v) in &b.lamps {
            let q = p - a.top;
            let e = lamps.entry(q).or_insert(0);
            *e = self.reduce(*e + v);
            if *e == 0 {
                lamps.remove(&q);
            }
        }
        LampElem {
            lamps,
            top: a.top + b.top,
        }
    }

    fn invert(&self, a: &LampElem) -> LampElem {
        let lamps = a
            .lamps
            .iter()
            .map(|(&p, &v)| (p + a.top, self.reduce(-v)))
            .collect();
        LampElem { lamps, top: -a.top }
    }

    fn normal_form(&self, a: &LampElem) -> String {
        let lamps: Vec<String> = a.lamps.iter().map(|(p, v)| format!("{p}:{v}")).collect();
        format!("{{{}}}{}^{}", lamps.join(","), self.top_name, a.top)
    }

    fn generators(&self) -> Vec<(String, LampElem)> {
        vec![
            (self.lamp_name.clone(), self.lamp(0)),
            (self.top_name.clone(), self.top(1)),
        ]
    }

    fn infinite_order_witness(&self) -> Option<LampElem> {
        Some(self.top(1))
    }
}

/// `H = ⟨y⟩^⟨x⟩⟨x²⟩ ≤ ℤ≀ℤ`, the elements with even top; transversal `{e, x}`.
pub fn zwrz_even_top(g: &Arc<LampGroup>) -> SubgroupOracle<LampElem> {
    SubgroupOracle::new(
        "H",
        vec![g.identity(), g.top(1)],
        |e: &LampElem| e.top.rem_euclid(2) as usize,
        vec![g.lamp(0), g.lamp(1), g.top(2)],
    )
}

/// The degree-3 data over `ℤ≀ℤ`:
/// `(H, f_1)` with `f_1(c, 2k) = (n ↦ c(2n), k)` and `(G, f_2)` with
/// `f_2(c, n) = x^{Σc}`.
pub fn zwrz_gdata() -> GData<LampGroup> {
    let g = Arc::new(LampGroup::z_wr_z());
    let f1 = VirtualEndo::new("f1", |e: &LampElem| LampElem {
        lamps: e
            .lamps
            .iter()
            .filter(|(p, _)| p.rem_euclid(2) == 0)
            .map(|(p, v)| (p.div_euclid(2), *v))
            .collect(),
        top: e.top.div_euclid(2),
    });
    let g2 = g.clone();
    let f2 = VirtualEndo::new("f2", move |e: &LampElem| g2.top(g2.lamp_sum(e)));
    let whole = SubgroupOracle::whole(
        "G",
        g.identity(),
        g.generators().into_iter().map(|(_, e)| e).collect(),
    );
    GData::new(
        g.clone(),
        vec![Part::new(zwrz_even_top(&g), f1), Part::new(whole, f2)],
    )
}

/// The degree-6 refinement of [`zwrz_gdata`] to the normal subgroup `H`.
pub fn zwrz_refined() -> GData<LampGroup> {
    let gd = zwrz_gdata();
    let core = zwrz_even_top(&gd.ambient);
    refine(&gd, &core).expect("H is normal and contained in both subgroups")
}

/// Data over `C_2≀ℤ` with two parts over `H = G'⟨x⟩` (even lamp sum),
/// transversal `{e, a}`: `f` with `[a,x] ↦ a`, `x ↦ x` (prefix sums of the
/// lamps), and `f_a = a f a`.
pub fn c2wrz_gdata() -> GData<LampGroup> {
    let g = Arc::new(LampGroup::c2_wr_z());
    let a = g.lamp(0);
    let g1 = g.clone();
    let h = SubgroupOracle::new(
        "G'<x>",
        vec![g.identity(), a.clone()],
        move |e: &LampElem| g1.lamp_sum(e) as usize,
        vec![g.commutator(&a, &g.top(1)), g.top(1)],
    );
    let f = move |e: &LampElem| {
        let mut lamps = BTreeMap::new();
        let mut acc = 0;
        let mut positions = e.lamps.keys().copied().peekable();
        // prefix sums mod 2 are 1 exactly between consecutive pairs of lamps
        while let Some(p) = positions.next() {
            acc ^= 1;
            if acc == 1 {
                let q = positions.peek().copied().expect("even lamp sum");
                for k in p..q {
                    lamps.insert(k, 1);
                }
            }
        }
        LampElem { lamps, top: e.top }
    };
    let fa = {
        let g = g.clone();
        let a = a.clone();
        move |e: &LampElem| {
            let inner = g.multiply(&g.multiply(&a, e), &a);
            g.multiply(&g.multiply(&a, &f(&inner)), &a)
        }
    };
    GData::new(
        g.clone(),
        vec![
            Part::new(h.clone(), VirtualEndo::new("f", f)),
            Part::new(h, VirtualEndo::new("f_a", fa)),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lamp_conjugation() {
        let g = LampGroup::z_wr_z();
        let (y, x) = (g.lamp(0), g.top(1));
        assert_eq!(g.conjugate(&y, &g.pow(&x, 3)), g.lamp(3));
        assert_eq!(g.conjugate(&y, &g.pow(&x, -2)), g.lamp(-2));
        let yx = g.conjugate(&y, &x);
        assert_eq!(g.multiply(&y, &yx), g.multiply(&yx, &y));
    }

    #[test]
    fn data_axioms_hold_on_samples() {
        let gd = zwrz_gdata();
        let g = gd.ambient.clone();
        let sample: Vec<_> = vec![
            g.lamp(0),
            g.top(1),
            g.elem(&[(2, 3), (-1, -2)], 5),
            g.top(-3),
        ];
        gd.validate(&sample).unwrap();
        zwrz_refined().validate(&sample).unwrap();
        let c2 = c2wrz_gdata();
        let g = c2.ambient.clone();
        c2.validate(&[g.lamp(0), g.top(1), g.elem(&[(0, 1), (3, 1), (4, 1)], -2)])
            .unwrap();
    }

    #[test]
    fn c2_endomorphisms() {
        let gd = c2wrz_gdata();
        let g = gd.ambient.clone();
        let (a, x) = (g.lamp(0), g.top(1));
        let f = &gd.parts[0].endo;
        let fa = &gd.parts[1].endo;
        assert_eq!(f.apply(&g.commutator(&a, &x)), a);
        assert_eq!(f.apply(&x), x);
        assert_eq!(fa.apply(&g.commutator(&a, &x)), a);
        assert_eq!(fa.apply(&x), g.multiply(&a, &x));
    }
}
