//! Finite-state solutions of wreath recursions.
//!
//! Every recursion `s = (w_1, ..., w_m) σ` becomes a symbol whose sections
//! are reduced words over the symbols and their inverses. Breadth-first
//! search from the symbols visits words closed under taking sections; two
//! words are merged when their signatures agree, where the signature of
//! depth `d` hashes the activity together with the depth `d - 1` signatures
//! of the sections. The merged classes form a candidate machine. A recursion
//! has exactly one solution among tree automorphisms, so a candidate whose
//! states satisfy every defining equation is that solution. When a check
//! fails the depth doubles.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use super::{cycles_perm, DslError, Expr, ExprKind, Program};
use crate::automata::{Degree, Exceeded, MealyMachine, StateRecord, TreeAutomorphism};
use crate::perm::Perm;

/// Longest word a definition may expand to.
pub const MAX_WORD_LETTERS: usize = 1 << 20;

const DEPTHS: [usize; 4] = [4, 8, 16, 32];

/// Symbol index and whether it is inverted.
type Letter = (usize, bool);
type Word = Vec<Letter>;

struct Symbol {
    activity: Perm,
    inverse: Perm,
    sections: Vec<Word>,
}

struct System {
    degree: Degree,
    symbols: Vec<Symbol>,
}

fn push_reduced(w: &mut Word, l: Letter) {
    if w.last() == Some(&(l.0, !l.1)) {
        w.pop();
    } else {
        w.push(l);
    }
}

fn concat(mut a: Word, b: &[Letter]) -> Word {
    for &l in b {
        push_reduced(&mut a, l);
    }
    a
}

fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|&(s, i)| (s, !i)).collect()
}

fn power(w: &[Letter], n: i64) -> Result<Word, DslError> {
    let base = if n < 0 { invert(w) } else { w.to_vec() };
    let k = n.unsigned_abs() as usize;
    if base.len().saturating_mul(k) > MAX_WORD_LETTERS {
        return Err(Exceeded {
            limit: MAX_WORD_LETTERS,
        }
        .into());
    }
    Ok((0..k).fold(Word::new(), |acc, _| concat(acc, &base)))
}

struct Compiler<'a> {
    prog: &'a Program,
    /// Symbol of each recursion definition.
    def_symbol: HashMap<&'a str, usize>,
    /// Compiled words of the non-recursive definitions.
    words: HashMap<&'a str, Word>,
    symbols: Vec<Option<Symbol>>,
}

impl<'a> Compiler<'a> {
    fn word(&mut self, e: &'a Expr) -> Result<Word, DslError> {
        Ok(match &e.kind {
            ExprKind::Identity => Word::new(),
            ExprKind::Name(n) => {
                if let Some(&s) = self.def_symbol.get(n.as_str()) {
                    vec![(s, false)]
                } else if let Some(w) = self.words.get(n.as_str()) {
                    w.clone()
                } else {
                    // parse() rejects unknown names and alias loops
                    let def = self.prog.definition(n).expect("checked name");
                    let w = self.word(&def.body)?;
                    self.words.insert(&def.name, w.clone());
                    w
                }
            }
            ExprKind::Product(v) => {
                let mut acc = Word::new();
                for x in v {
                    let w = self.word(x)?;
                    acc = concat(acc, &w);
                    if acc.len() > MAX_WORD_LETTERS {
                        return Err(Exceeded {
                            limit: MAX_WORD_LETTERS,
                        }
                        .into());
                    }
                }
                acc
            }
            ExprKind::Power(b, n) => power(&self.word(b)?, *n)?,
            ExprKind::Conj(b, by) => {
                let g = self.word(b)?;
                let h = self.word(by)?;
                concat(concat(invert(&h), &g), &h)
            }
            ExprKind::Comm(a, b) => {
                let g = self.word(a)?;
                let h = self.word(b)?;
                concat(concat(concat(invert(&g), &invert(&h)), &g), &h)
            }
            ExprKind::Tuple(..) => {
                let s = self.symbols.len();
                self.symbols.push(None);
                self.fill(s, e)?;
                vec![(s, false)]
            }
        })
    }

    fn fill(&mut self, s: usize, e: &'a Expr) -> Result<(), DslError> {
        let ExprKind::Tuple(entries, cycles) = &e.kind else {
            unreachable!("only tuples become symbols");
        };
        let activity =
            cycles_perm(cycles, self.prog.degree).map_err(|d| DslError::Parse(vec![d]))?;
        let sections = entries
            .iter()
            .map(|x| self.word(x))
            .collect::<Result<_, _>>()?;
        self.symbols[s] = Some(Symbol {
            inverse: activity.inverse(),
            activity,
            sections,
        });
        Ok(())
    }
}

fn compile(prog: &Program) -> Result<(System, Vec<Word>), DslError> {
    let mut c = Compiler {
        prog,
        def_symbol: HashMap::new(),
        words: HashMap::new(),
        symbols: Vec::new(),
    };
    for d in &prog.definitions {
        if d.is_recursion() {
            c.def_symbol.insert(&d.name, c.symbols.len());
            c.symbols.push(None);
        }
    }
    for d in &prog.definitions {
        if d.is_recursion() {
            let s = c.def_symbol[d.name.as_str()];
            c.fill(s, &d.body)?;
        }
    }
    let mut named = Vec::new();
    for d in &prog.definitions {
        named.push(match c.def_symbol.get(d.name.as_str()) {
            Some(&s) => vec![(s, false)],
            None => c.word(&d.body)?,
        });
    }
    let symbols = c
        .symbols
        .into_iter()
        .map(|s| s.expect("every symbol filled"))
        .collect();
    Ok((
        System {
            degree: prog.degree,
            symbols,
        },
        named,
    ))
}

impl System {
    fn letter_activity(&self, (s, inv): Letter) -> &Perm {
        let sym = &self.symbols[s];
        if inv {
            &sym.inverse
        } else {
            &sym.activity
        }
    }

    fn activity(&self, w: &[Letter]) -> Perm {
        w.iter().fold(Perm::identity(self.degree.get()), |p, &l| {
            p.then(self.letter_activity(l))
        })
    }

    /// Section of `w` at the 0-based letter `i`.
    fn section(&self, w: &[Letter], mut i: usize) -> Word {
        let mut out = Word::new();
        for &(s, inv) in w {
            let sym = &self.symbols[s];
            if inv {
                let j = sym.inverse.apply(i);
                for &l in invert(&sym.sections[j]).iter() {
                    push_reduced(&mut out, l);
                }
                i = j;
            } else {
                for &l in &sym.sections[i] {
                    push_reduced(&mut out, l);
                }
                i = sym.activity.apply(i);
            }
        }
        out
    }

    fn signature(&self, w: &Word, depth: usize, memo: &mut HashMap<(Word, usize), u64>) -> u64 {
        if let Some(&h) = memo.get(&(w.clone(), depth)) {
            return h;
        }
        let mut hasher = DefaultHasher::new();
        self.activity(w).hash(&mut hasher);
        if depth > 0 {
            for i in 0..self.degree.get() {
                let child = self.section(w, i);
                self.signature(&child, depth - 1, memo).hash(&mut hasher);
            }
        }
        let h = hasher.finish();
        memo.insert((w.clone(), depth), h);
        h
    }

    /// Candidate machine from signatures of the given depth, with the class
    /// of every symbol.
    fn candidate(
        &self,
        depth: usize,
        limit: usize,
    ) -> Result<(MealyMachine, Vec<usize>), Exceeded> {
        let mut memo = HashMap::new();
        let mut class_of: HashMap<u64, usize> = HashMap::new();
        let mut reps: Vec<Word> = Vec::new();
        let mut queue = VecDeque::new();
        let mut classify = |w: Word,
                            memo: &mut HashMap<(Word, usize), u64>,
                            reps: &mut Vec<Word>,
                            queue: &mut VecDeque<usize>| {
            let sig = self.signature(&w, depth, memo);
            *class_of.entry(sig).or_insert_with(|| {
                reps.push(w);
                queue.push_back(reps.len() - 1);
                reps.len() - 1
            })
        };
        let roots: Vec<usize> = (0..self.symbols.len())
            .map(|s| classify(vec![(s, false)], &mut memo, &mut reps, &mut queue))
            .collect();
        let mut records: Vec<Option<StateRecord>> = Vec::new();
        while let Some(q) = queue.pop_front() {
            if reps.len() > limit {
                return Err(Exceeded { limit });
            }
            let w = reps[q].clone();
            let children = (0..self.degree.get())
                .map(|i| classify(self.section(&w, i), &mut memo, &mut reps, &mut queue))
                .collect();
            if records.len() <= q {
                records.resize(q + 1, None);
            }
            records[q] = Some(StateRecord {
                output: self.activity(&w),
                children,
            });
        }
        let states = records
            .into_iter()
            .map(|r| r.expect("every class expanded"))
            .collect();
        let machine = MealyMachine::new(self.degree, states).expect("well-formed candidate");
        Ok((machine, roots))
    }

    fn eval(
        &self,
        w: &[Letter],
        elems: &[TreeAutomorphism],
        inverses: &[TreeAutomorphism],
    ) -> TreeAutomorphism {
        w.iter()
            .fold(TreeAutomorphism::identity(self.degree), |acc, &(s, inv)| {
                let g = if inv { &inverses[s] } else { &elems[s] };
                acc.compose(g).expect("same degree")
            })
    }

    fn satisfied(&self, elems: &[TreeAutomorphism]) -> bool {
        let inverses: Vec<_> = elems.iter().map(|g| g.inverse()).collect();
        self.symbols.iter().zip(elems).all(|(sym, g)| {
            *g.activity() == sym.activity
                && sym.sections.iter().enumerate().all(|(i, w)| {
                    g.child(i as u32 + 1).expect("letter in range")
                        == self.eval(w, elems, &inverses)
                })
        })
    }
}

/// Solves every definition of `prog`, in order.
pub fn solve(prog: &Program, limit: usize) -> Result<Vec<(String, TreeAutomorphism)>, DslError> {
    let (system, named) = compile(prog)?;
    for depth in DEPTHS {
        let (machine, roots) = system.candidate(depth, limit)?;
        let elems: Vec<TreeAutomorphism> = roots
            .iter()
            .map(|&r| TreeAutomorphism::new(&machine, r))
            .collect::<Result<_, _>>()?;
        if system.satisfied(&elems) {
            let inverses: Vec<_> = elems.iter().map(|g| g.inverse()).collect();
            return Ok(prog
                .definitions
                .iter()
                .zip(&named)
                .map(|(d, w)| (d.name.clone(), system.eval(w, &elems, &inverses)))
                .collect());
        }
    }
    Err(DslError::Unsolved {
        depth: DEPTHS[DEPTHS.len() - 1],
    })
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn sections_of_inverse_letters() {
        let prog = parse("degree 2\nt = (e, t) (1 2)\n").unwrap();
        let (sys, _) = compile(&prog).unwrap();
        // t⁻¹ = (t⁻¹, e)(1 2)
        assert_eq!(sys.section(&[(0, true)], 0), vec![(0, true)]);
        assert!(sys.section(&[(0, true)], 1).is_empty());
        assert!(sys.section(&[(0, false), (0, true)], 0).is_empty());
    }

    #[test]
    fn nested_tuples_become_symbols() {
        let prog = parse("degree 2\na = ((a, e), e) (1 2)\n").unwrap();
        let (sys, _) = compile(&prog).unwrap();
        assert_eq!(sys.symbols.len(), 2);
        let sol = solve(&prog, 100).unwrap();
        assert_eq!(sol[0].1.state_count(), 3);
    }

    #[test]
    fn states_that_need_deep_signatures() {
        // s and u agree on the first nine levels and differ below
        let mut src = String::from("degree 2\ns = (s1, e)\nu = (u1, e)\n");
        for k in 1..10 {
            src.push_str(&format!("s{k} = (s{}, e)\nu{k} = (u{}, e)\n", k + 1, k + 1));
        }
        src.push_str("s10 = (e, e) (1 2)\nu10 = (e, e)\n");
        let sol = solve(&parse(&src).unwrap(), 100).unwrap();
        assert_ne!(sol[0].1, sol[1].1);
        assert!(sol[1].1.is_identity());
    }

    #[test]
    fn closure_limit() {
        let prog = parse("degree 2\nt = (e, t) (1 2)\n").unwrap();
        assert!(matches!(solve(&prog, 0), Err(DslError::Exceeded(_))));
    }
}
