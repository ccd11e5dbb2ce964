use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use super::{AmbientGroup, GData, GDataError};
use crate::automata::text::MachineFile;
use crate::automata::{Degree, Exceeded, MealyMachine, StateRecord, TreeAutomorphism, VertexWord};
use crate::perm::Perm;

/// Activity and first-level sections of one ambient element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record<E> {
    pub activity: Perm,
    pub sections: Vec<E>,
}

type Memo<E> = HashMap<E, Arc<Record<E>>>;

/// The lazily evaluated representation of a [`GData`].
///
/// Records are memoized by ambient element; the memo is behind a mutex, so
/// concurrent callers see one record per element.
pub struct Representation<G: AmbientGroup> {
    gd: GData<G>,
    degree: Degree,
    memo: Mutex<Memo<G::Elem>>,
}

impl<G: AmbientGroup> Representation<G> {
    pub fn new(gd: GData<G>) -> Self {
        let degree = Degree::new(gd.degree().max(2)).expect(">= 2");
        Representation {
            gd,
            degree,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn data(&self) -> &GData<G> {
        &self.gd
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    fn check_degree(&self) -> Result<(), GDataError> {
        if self.gd.degree() < 2 {
            return Err(GDataError::InvalidArgument(format!(
                "data of degree {} does not act on a tree",
                self.gd.degree()
            )));
        }
        Ok(())
    }

    pub fn record(&self, g: &G::Elem) -> Result<Arc<Record<G::Elem>>, GDataError> {
        if let Some(r) = self.memo.lock().expect("memo poisoned").get(g) {
            return Ok(r.clone());
        }
        self.check_degree()?;
        let m = self.gd.degree();
        let offsets = self.gd.offsets();
        let mut images = vec![0u32; m];
        let mut sections = Vec::with_capacity(m);
        for (i, part) in self.gd.parts.iter().enumerate() {
            for j in 0..part.subgroup.index() {
                let (th, k) = self.gd.schreier_at(i, g, j)?;
                images[offsets[i] + j] = (offsets[i] + k) as u32;
                sections.push(part.endo.apply(&th));
            }
        }
        let activity = Perm::from_images(images).map_err(|_| {
            GDataError::BadOracle(format!(
                "right multiplication by {} does not permute cosets",
                self.gd.ambient.normal_form(g)
            ))
        })?;
        let rec = Arc::new(Record { activity, sections });
        let mut memo = self.memo.lock().expect("memo poisoned");
        Ok(memo.entry(g.clone()).or_insert(rec).clone())
    }

    /// Image of a vertex; works for elements that are not finite-state.
    pub fn act(&self, g: &G::Elem, w: &VertexWord) -> Result<VertexWord, GDataError> {
        w.validate(self.degree)?;
        let mut cur = g.clone();
        let mut out = Vec::with_capacity(w.len());
        for &l in w.letters() {
            let r = self.record(&cur)?;
            let i = l as usize - 1;
            out.push(r.activity.apply(i) as u32 + 1);
            cur = r.sections[i].clone();
        }
        Ok(VertexWord::new(out))
    }

    /// The ambient element whose representation is the section at `w`.
    pub fn section(&self, g: &G::Elem, w: &VertexWord) -> Result<G::Elem, GDataError> {
        w.validate(self.degree)?;
        let mut cur = g.clone();
        for &l in w.letters() {
            cur = self.record(&cur)?.sections[l as usize - 1].clone();
        }
        Ok(cur)
    }

    /// Section closure of `roots` in the ambient group, breadth-first.
    pub fn explore(&self, roots: &[G::Elem], limit: usize) -> Result<Vec<G::Elem>, GDataError> {
        let mut index: HashMap<G::Elem, usize> = HashMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        for r in roots {
            if !index.contains_key(r) {
                index.insert(r.clone(), order.len());
                order.push(r.clone());
                queue.push_back(r.clone());
            }
        }
        while let Some(g) = queue.pop_front() {
            if order.len() > limit {
                return Err(Exceeded { limit }.into());
            }
            let rec = self.record(&g)?;
            for s in &rec.sections {
                if !index.contains_key(s) {
                    index.insert(s.clone(), order.len());
                    order.push(s.clone());
                    queue.push_back(s.clone());
                }
            }
        }
        if order.len() > limit {
            return Err(Exceeded { limit }.into());
        }
        Ok(order)
    }

    fn machine_of(
        &self,
        roots: &[G::Elem],
        limit: usize,
    ) -> Result<(MealyMachine, Vec<usize>), GDataError> {
        let elems = self.explore(roots, limit)?;
        let index: HashMap<&G::Elem, usize> =
            elems.iter().enumerate().map(|(q, e)| (e, q)).collect();
        let states = elems
            .iter()
            .map(|e| {
                let rec = self.record(e)?;
                Ok(StateRecord {
                    output: rec.activity.clone(),
                    children: rec.sections.iter().map(|s| index[s]).collect(),
                })
            })
            .collect::<Result<Vec<_>, GDataError>>()?;
        let roots = roots.iter().map(|r| index[r]).collect();
        Ok((MealyMachine::new(self.degree, states)?, roots))
    }

    /// The explicit automorphism of a finite-state element.
    pub fn element(&self, g: &G::Elem, limit: usize) -> Result<TreeAutomorphism, GDataError> {
        let (machine, _) = self.machine_of(std::slice::from_ref(g), limit)?;
        Ok(TreeAutomorphism::new(&machine, 0)?)
    }

    /// A machine file with one generator per named element.
    pub fn machine_file(
        &self,
        gens: &[(String, G::Elem)],
        limit: usize,
    ) -> Result<MachineFile, GDataError> {
        let elems: Vec<_> = gens.iter().map(|(_, g)| g.clone()).collect();
        let (machine, roots) = self.machine_of(&elems, limit)?;
        let named = gens
            .iter()
            .zip(roots)
            .map(|((n, _), q)| Ok((n.clone(), TreeAutomorphism::new(&machine, q)?)))
            .collect::<Result<Vec<_>, GDataError>>()?;
        MachineFile::from_generators(&named).map_err(|e| GDataError::InvalidArgument(e.to_string()))
    }
}
