//! Group words, relation suites and oracle comparison for catalog entries.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracle::{OElem, OGroup};
use crate::automata::text::MachineFile;
use crate::automata::{AutomataError, TreeAutomorphism};

/// A word over an indexed alphabet; each letter is a generator or its
/// inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<(usize, bool)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        Word(vec![(i, false)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inv(&self) -> Self {
        Word(self.0.iter().rev().map(|&(g, i)| (g, !i)).collect())
    }

    pub fn mul(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `h⁻¹ self h`.
    pub fn conj(&self, h: &Word) -> Self {
        h.inv().mul(self).mul(h)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn comm(a: &Word, b: &Word) -> Self {
        a.inv().mul(&b.inv()).mul(a).mul(b)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "e".into();
        }
        self.0
            .iter()
            .map(|&(g, i)| {
                if i {
                    format!("{}^-1", names[g])
                } else {
                    names[g].clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// All freely reduced words of length at most `max_len` over `k` generators.
pub fn reduced_words(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::identity()];
    let mut frontier = vec![Word::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..k {
                for inv in [false, true] {
                    if w.0.last() == Some(&(g, !inv)) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.0.push((g, inv));
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// `count` words of length at most `max_len`, seeded.
pub fn random_words(k: usize, max_len: usize, count: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            Word(
                (0..len)
                    .map(|_| (rng.gen_range(0..k), rng.gen_bool(0.5)))
                    .collect(),
            )
        })
        .collect()
}

/// The intended isomorphism between a machine group and an oracle group,
/// given on an alphabet of machine elements.
#[derive(Debug, Clone)]
pub struct Model {
    pub names: Vec<String>,
    pub machines: Vec<TreeAutomorphism>,
    pub group: OGroup,
    pub images: Vec<OElem>,
}

impl Model {
    pub fn eval_machine(&self, w: &Word) -> Result<TreeAutomorphism, AutomataError> {
        let d = self.machines[0].degree();
        let mut acc = TreeAutomorphism::identity(d);
        for &(g, inv) in &w.0 {
            let m = if inv {
                self.machines[g].inverse()
            } else {
                self.machines[g].clone()
            };
            acc = acc.compose(&m)?;
        }
        Ok(acc)
    }

    pub fn eval_oracle(&self, w: &Word) -> OElem {
        w.0.iter().fold(self.group.identity(), |acc, &(g, inv)| {
            let x = if inv {
                self.group.invert(&self.images[g])
            } else {
                self.images[g].clone()
            };
            self.group.multiply(&acc, &x)
        })
    }

    /// Looks up a letter by name.
    pub fn letter(&self, name: &str) -> Word {
        Word::gen(
            self.names
                .iter()
                .position(|n| n == name)
                .expect("letter in alphabet"),
        )
    }
}

fn named(file: &MachineFile, names: &[&str]) -> Vec<TreeAutomorphism> {
    names
        .iter()
        .map(|n| {
            file.generator(n)
                .unwrap_or_else(|| panic!("generator {n} missing"))
        })
        .collect()
}

/// The model of a catalog machine file, or `None` when the entry has no
/// oracle counterpart.
pub fn model(entry: &str, file: &MachineFile) -> Option<Model> {
    let int = OElem::Int;
    let zwrz = OGroup::wreath(OGroup::Z, OGroup::Z);
    let c2wrz = OGroup::wreath(OGroup::Cyclic(2), OGroup::Z);
    let strs = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    match entry {
        "odometer" => Some(Model {
            names: strs(&["tau"]),
            machines: named(file, &["tau"]),
            group: OGroup::Z,
            images: vec![int(1)],
        }),
        "zwrz-3" | "zwrz-6" => {
            let names: &[&str] = if entry == "zwrz-3" {
                &["gamma", "alpha"]
            } else {
                &["gamma1", "alpha1"]
            };
            Some(Model {
                names: strs(names),
                machines: named(file, names),
                images: vec![zwrz.lamp_at(&int(0), &int(1)), zwrz.from_top(&int(1))],
                group: zwrz,
            })
        }
        "c2-ext-16" | "z-ext-8" => {
            let names: &[&str] = if entry == "c2-ext-16" {
                &["gamma", "beta1", "beta2", "alpha1", "alpha2"]
            } else {
                &["y", "a1", "a2", "x1", "x2"]
            };
            let base = if entry == "c2-ext-16" {
                OGroup::Cyclic(2)
            } else {
                OGroup::Z
            };
            let top = OGroup::Product(vec![c2wrz.clone(), c2wrz.clone()]);
            let a = c2wrz.lamp_at(&int(0), &int(1));
            let x = c2wrz.from_top(&int(1));
            let group = OGroup::wreath(base, top.clone());
            let images = vec![
                group.lamp_at(&top.identity(), &int(1)),
                group.from_top(&top.embed(0, &a)),
                group.from_top(&top.embed(1, &a)),
                group.from_top(&top.embed(0, &x)),
                group.from_top(&top.embed(1, &x)),
            ];
            Some(Model {
                names: strs(names),
                machines: named(file, names),
                group,
                images,
            })
        }
        "w3-10" | "w3-2" => {
            let g = named(file, &["a", "y1", "y2", "y3", "x1", "x2", "x3"]);
            let prod = |v: &[TreeAutomorphism]| {
                v[1..]
                    .iter()
                    .try_fold(v[0].clone(), |acc, m| acc.compose(m))
                    .expect("same degree")
            };
            let group = OGroup::wreath(OGroup::Z, zwrz.clone());
            let images = vec![
                group.lamp_at(&zwrz.identity(), &int(1)),
                group.from_top(&zwrz.lamp_at(&int(0), &int(1))),
                group.from_top(&zwrz.from_top(&int(1))),
            ];
            Some(Model {
                names: strs(&["a", "y", "x"]),
                machines: vec![g[0].clone(), prod(&g[1..4]), prod(&g[4..7])],
                group,
                images,
            })
        }
        _ => None,
    }
}

/// A word with its expected triviality.
#[derive(Debug, Clone)]
pub struct Relation {
    pub word: Word,
    pub trivial: bool,
}

impl Relation {
    fn holds(word: Word) -> Self {
        Relation {
            word,
            trivial: true,
        }
    }

    fn fails(word: Word) -> Self {
        Relation {
            word,
            trivial: false,
        }
    }
}

fn nontrivial_powers(out: &mut Vec<Relation>, g: &Word, max: i64) {
    out.extend((1..=max).map(|n| Relation::fails(g.pow(n))));
}

/// Ten fixed words over the `C_2≀ℤ`-squared generators
/// `(β₁, β₂, α₁, α₂) = letters 1..=4`.
fn c2_sample() -> Vec<Word> {
    let [b1, b2, a1, a2] = [1, 2, 3, 4].map(Word::gen);
    vec![
        b1.clone(),
        a1.clone(),
        a2.clone(),
        b2.mul(&a1),
        a1.mul(&a2),
        a1.pow(2).mul(&b1),
        Word::comm(&b1, &a1),
        a2.inv().mul(&b2).mul(&a1),
        a1.inv().mul(&b1).mul(&a2).mul(&b2),
        a1.pow(-3).mul(&a2.pow(2)),
    ]
}

/// The relation suite of an entry, over its [`Model`] alphabet.
pub fn suite(entry: &str) -> Option<Vec<Relation>> {
    let mut out = Vec::new();
    match entry {
        "odometer" => nontrivial_powers(&mut out, &Word::gen(0), 32),
        "zwrz-3" | "zwrz-6" => {
            let (g, a) = (Word::gen(0), Word::gen(1));
            for i in -3..=3 {
                for j in -3..=3 {
                    out.push(Relation::holds(Word::comm(
                        &g.conj(&a.pow(i)),
                        &g.conj(&a.pow(j)),
                    )));
                }
            }
            nontrivial_powers(&mut out, &g, 32);
            nontrivial_powers(&mut out, &a, 32);
        }
        "w3-10" | "w3-2" => {
            let (a, y, x) = (Word::gen(0), Word::gen(1), Word::gen(2));
            for k in -3..=3 {
                out.push(Relation::holds(Word::comm(&y, &y.conj(&x.pow(k)))));
            }
            for g in [y.clone(), x.clone(), y.mul(&x), x.pow(2), y.conj(&x)] {
                out.push(Relation::holds(Word::comm(&a, &a.conj(&g))));
            }
            for g in [&a, &y, &x] {
                nontrivial_powers(&mut out, g, 16);
            }
        }
        "c2-ext-16" | "z-ext-8" => {
            let lamp = Word::gen(0);
            if entry == "c2-ext-16" {
                out.push(Relation::holds(lamp.pow(2)));
            }
            for i in [1, 2] {
                out.push(Relation::holds(Word::gen(i).pow(2)));
            }
            for g in c2_sample() {
                let moved = lamp.conj(&g);
                out.push(Relation::holds(Word::comm(&lamp, &moved)));
                if entry == "c2-ext-16" {
                    out.push(Relation::holds(moved.pow(2)));
                } else {
                    out.push(Relation::fails(moved));
                }
            }
        }
        _ => return None,
    }
    Some(out)
}

/// Outcome of checking words against a model.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub total: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.passed == self.total
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} relations hold", self.passed, self.total)?;
        for line in &self.failures {
            write!(f, "\n  {line}")?;
        }
        Ok(())
    }
}

fn machine_trivial(model: &Model, w: &Word, limit: usize) -> Result<bool, String> {
    model
        .eval_machine(w)
        .map_err(|e| e.to_string())?
        .is_trivial(limit)
        .map_err(|e| e.to_string())
}

/// Checks every relation on the machines and on the oracle.
pub fn check_suite(model: &Model, relations: &[Relation], limit: usize) -> Report {
    let mut report = Report {
        total: relations.len(),
        ..Report::default()
    };
    for r in relations {
        let text = r.word.render(&model.names);
        let oracle = model.group.is_identity(&model.eval_oracle(&r.word));
        match machine_trivial(model, &r.word, limit) {
            Ok(m) if m == r.trivial && oracle == r.trivial => report.passed += 1,
            Ok(m) => report.failures.push(format!(
                "{text}: expected trivial={}, machine {m}, oracle {oracle}",
                r.trivial
            )),
            Err(e) => report.failures.push(format!("{text}: {e}")),
        }
    }
    report
}

/// Compares machine triviality with oracle triviality on each word.
pub fn oracle_check(model: &Model, words: &[Word], limit: usize) -> Report {
    let mut report = Report {
        total: words.len(),
        ..Report::default()
    };
    for w in words {
        let text = w.render(&model.names);
        let oracle = model.group.is_identity(&model.eval_oracle(w));
        match machine_trivial(model, w, limit) {
            Ok(m) if m == oracle => report.passed += 1,
            Ok(m) => report.failures.push(format!(
                "{text}: machine trivial={m}, oracle trivial={oracle}"
            )),
            Err(e) => report.failures.push(format!("{text}: {e}")),
        }
    }
    report
}
