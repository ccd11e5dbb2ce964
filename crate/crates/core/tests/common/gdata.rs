use proptest::collection::vec;
use proptest::prelude::*;
use treeperm::catalog::suites::reduced_words;
use treeperm::catalog::{build, c2wrz_gdata, zwrz_gdata, zwrz_refined};
use treeperm::gdata::{
    theorem_b_extend, theorem_c_extend, AbelianBase, AmbientGroup, CExtOptions, GData,
};

use super::{report, runner, GenWord, LIMIT};

fn word(max_len: usize) -> impl Strategy<Value = GenWord> {
    vec((0..64usize, any::<bool>()), 0..=max_len)
}

fn ambient_word<G: AmbientGroup>(
    g: &G,
    gens: &[(String, G::Elem)],
    w: &[(usize, bool)],
) -> G::Elem {
    let mut acc = g.identity();
    for &(i, inv) in w {
        let x = &gens[i % gens.len()].1;
        let x = if inv { g.invert(x) } else { x.clone() };
        acc = g.multiply(&acc, &x);
    }
    acc
}

/// Runs `check` on every catalog data set.
fn each_data(
    check: &mut dyn FnMut(&str, &dyn DataChecks) -> Result<(), String>,
) -> Result<(), String> {
    check("zwrz-gdata", &zwrz_gdata())?;
    check("zwrz-refined", &zwrz_refined())?;
    check("c2wrz-gdata", &c2wrz_gdata())?;
    check(
        "c2-ext",
        &build::c2_ext_data(&AbelianBase::cyclic(2).unwrap()).unwrap(),
    )?;
    check("w3", &build::w3_data().unwrap())
}

/// Object-safe view of the generic checks, so the data sets over different
/// ambient groups can share one driver.
trait DataChecks {
    fn homomorphism(&self, cases: u32, len: usize) -> Result<(), String>;
    fn cocycle(&self, cases: u32, len: usize) -> Result<(), String>;
    fn mirror(&self) -> Result<(), String>;
}

impl<G: AmbientGroup> DataChecks for GData<G> {
    fn homomorphism(&self, cases: u32, len: usize) -> Result<(), String> {
        let amb = &*self.ambient;
        let gens = amb.generators();
        let rep = self.representation();
        let r = runner(cases).run(&(word(len), word(len)), |(g, h)| {
            let (g, h) = (ambient_word(amb, &gens, &g), ambient_word(amb, &gens, &h));
            let gh = amb.multiply(&g, &h);
            let lhs = rep
                .element(&g, LIMIT)
                .unwrap()
                .compose(&rep.element(&h, LIMIT).unwrap())
                .unwrap();
            let rhs = rep.element(&gh, LIMIT).unwrap();
            prop_assert!(
                lhs.equal(&rhs, LIMIT).unwrap(),
                "g = {}, h = {}",
                amb.normal_form(&g),
                amb.normal_form(&h)
            );
            Ok(())
        });
        report("represent homomorphism", r)
    }

    fn cocycle(&self, cases: u32, len: usize) -> Result<(), String> {
        let amb = &*self.ambient;
        let gens = amb.generators();
        let r = runner(cases).run(
            &(word(len), word(len), 0..64usize, 0..64usize),
            |(g, h, i, j)| {
                let (g, h) = (ambient_word(amb, &gens, &g), ambient_word(amb, &gens, &h));
                let i = i % self.parts.len();
                let j = j % self.parts[i].subgroup.index();
                let (tg, k) = self.schreier_at(i, &g, j).unwrap();
                let (th, l) = self.schreier_at(i, &h, k).unwrap();
                let (tgh, l2) = self.schreier_at(i, &amb.multiply(&g, &h), j).unwrap();
                prop_assert_eq!(l, l2);
                prop_assert!(
                    tgh == amb.multiply(&tg, &th),
                    "part {}, slot {}: {} vs {}",
                    i,
                    j,
                    amb.normal_form(&tgh),
                    amb.normal_form(&amb.multiply(&tg, &th))
                );
                prop_assert_eq!(self.parts[i].subgroup.coset_index(&tgh), 0);
                Ok(())
            },
        );
        report("Schreier cocycle", r)
    }

    fn mirror(&self) -> Result<(), String> {
        let amb = &*self.ambient;
        for (name, g) in amb.generators() {
            let closure = self
                .explore_finite_state(&g, LIMIT)
                .map_err(|e| e.to_string())?;
            let states = self
                .represent(&g, LIMIT)
                .map_err(|e| e.to_string())?
                .state_count();
            if closure.len() != states {
                return Err(format!(
                    "finite-state mirror: {name}: {} ambient vs {states} states",
                    closure.len()
                ));
            }
        }
        Ok(())
    }
}

/// represent(g)·represent(h) = represent(gh) on 100 random pairs per data set.
pub fn represent_homomorphism() -> Result<(), String> {
    each_data(&mut |name, d| d.homomorphism(100, 4).map_err(|e| format!("{name}: {e}")))
}

/// θ_i(gh, t_j) = θ_i(g, t_j)·θ_i(h, t_k) with k the slot of t_j g.
pub fn schreier_cocycle() -> Result<(), String> {
    each_data(&mut |name, d| d.cocycle(100, 5).map_err(|e| format!("{name}: {e}")))
}

/// Ambient section closure and automaton closure have the same size.
pub fn finite_state_mirror() -> Result<(), String> {
    each_data(&mut |name, d| d.mirror().map_err(|e| format!("{name}: {e}")))
}

/// After refine, no nontrivial reduced ambient word of length ≤ 6 is
/// represented by the identity.
pub fn refine_faithful() -> Result<(), String> {
    let gd = zwrz_refined();
    let amb = &*gd.ambient;
    let gens = amb.generators();
    let rep = gd.representation();
    for w in reduced_words(gens.len(), 6) {
        let g = ambient_word(amb, &gens, &w.0);
        let a = rep.element(&g, LIMIT).map_err(|e| e.to_string())?;
        if a.is_identity() && !amb.is_identity(&g) {
            return Err(format!(
                "refine faithfulness: {} is represented trivially",
                amb.normal_form(&g)
            ));
        }
    }
    Ok(())
}

/// theorem_c_extend has degree m^s + 2; theorem_b_extend over ℤ has orbit
/// type (m^s, …, m^s, 1).
pub fn degree_formulas() -> Result<(), String> {
    let refined = zwrz_refined();
    let (m, s) = (refined.orbit_type()[0], refined.parts.len());
    let c = theorem_c_extend(&refined, &AbelianBase::integers(), &CExtOptions::default())
        .map_err(|e| e.to_string())?;
    if c.degree() != m.pow(s as u32) + 2 {
        return Err(format!(
            "theorem_c_extend degree {} for m = {m}, s = {s}",
            c.degree()
        ));
    }
    for (name, gd) in [("c2wrz-gdata", c2wrz_gdata()), ("zwrz-refined", refined)] {
        let (m, s) = (gd.orbit_type()[0], gd.parts.len());
        let b = theorem_b_extend(&gd, &AbelianBase::integers(), None, None)
            .map_err(|e| e.to_string())?;
        let mut expect = vec![m.pow(s as u32); s];
        expect.push(1);
        if b.orbit_type() != expect {
            return Err(format!(
                "{name}: theorem_b_extend orbit type {:?}, expected {expect:?}",
                b.orbit_type()
            ));
        }
    }
    Ok(())
}

pub const ALL: [super::Check; 5] = [
    ("represent homomorphism", represent_homomorphism),
    ("Schreier cocycle", schreier_cocycle),
    ("finite-state mirror", finite_state_mirror),
    ("refine faithfulness", refine_faithful),
    ("extension degree formulas", degree_formulas),
];
