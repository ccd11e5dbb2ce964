use proptest::collection::vec;
use proptest::prelude::*;
use treeperm::dsl::{parse, DslError};
use treeperm::Perm;

use super::{report, runner};

/// Expression text over the given names.
fn expr(pool: Vec<String>) -> BoxedStrategy<String> {
    let mut leaves = pool;
    leaves.push("e".into());
    prop::sample::select(leaves)
        .prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} {b}")),
                (inner.clone(), -3i64..=3).prop_map(|(a, n)| format!("({a})^{n}")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})^({b})")),
                (inner.clone(), inner).prop_map(|(a, b)| format!("[{a}, {b}]")),
            ]
        })
        .boxed()
}

fn activity(degree: usize) -> impl Strategy<Value = String> {
    (
        Just((0..degree as u32).collect::<Vec<_>>()).prop_shuffle(),
        any::<bool>(),
    )
        .prop_map(|(images, id)| {
            let p = Perm::from_images(images).unwrap();
            match (p.is_identity(), id) {
                (true, true) => " id".to_string(),
                (true, false) => String::new(),
                (false, _) => format!(" {}", p.to_cycle_string()),
            }
        })
}

fn tuple(entries: Vec<String>, act: String) -> String {
    format!("({}){act}", entries.join(", "))
}

/// A well-formed program, kept in pieces so that it can be damaged in
/// controlled ways.
#[derive(Debug, Clone)]
struct Prog {
    degree: usize,
    /// Entries and activity of each recursion `s0, s1, ...`.
    recursions: Vec<(Vec<String>, String)>,
    /// Bodies of the word definitions `w0, w1, ...`.
    words: Vec<String>,
}

impl Prog {
    fn render(&self) -> String {
        let mut out = format!("degree {}\n", self.degree);
        for (i, (entries, act)) in self.recursions.iter().enumerate() {
            out += &format!("s{i} = {}\n", tuple(entries.clone(), act.clone()));
        }
        for (j, w) in self.words.iter().enumerate() {
            out += &format!("w{j} = {w}\n");
        }
        out
    }
}

fn program() -> impl Strategy<Value = Prog> {
    (2..=4usize, 1..=3usize).prop_flat_map(|(degree, r)| {
        let names: Vec<String> = (0..r).map(|i| format!("s{i}")).collect();
        let simple = expr(names.clone());
        let nested =
            (vec(expr(names.clone()), degree), activity(degree)).prop_map(|(e, a)| tuple(e, a));
        let entry = prop_oneof![6 => simple, 1 => nested];
        let recursion = (vec(entry, degree), activity(degree));
        let mut word_pool = names.clone();
        word_pool.push("w0".into());
        let words = (expr(names), expr(word_pool), 0..=2usize)
            .prop_map(|(w0, w1, n)| [w0, w1].into_iter().take(n).collect::<Vec<_>>());
        (vec(recursion, r), words).prop_map(move |(recursions, words)| Prog {
            degree,
            recursions,
            words,
        })
    })
}

/// print(parse(s)) reparses to a structurally identical program.
pub fn round_trip() -> Result<(), String> {
    let r = runner(256).run(&program(), |p| {
        let src = p.render();
        let first = parse(&src).map_err(|e| TestCaseError::fail(format!("{src}: {e}")))?;
        let printed = first.to_string();
        let second = parse(&printed).map_err(|e| TestCaseError::fail(format!("{printed}: {e}")))?;
        prop_assert!(
            first.same_shape(&second),
            "{}\nprinted as\n{}",
            src,
            printed
        );
        Ok(())
    });
    report("parse/print round trip", r)
}

#[derive(Debug, Clone)]
enum Damage {
    UnknownName(usize, usize),
    ExtraEntry(usize),
    BadCycle(usize),
    NoDegree,
    Duplicate(usize),
    Reserved,
}

fn damage() -> impl Strategy<Value = Damage> {
    prop_oneof![
        (0..8usize, 0..8usize).prop_map(|(i, j)| Damage::UnknownName(i, j)),
        (0..8usize).prop_map(Damage::ExtraEntry),
        (0..8usize).prop_map(Damage::BadCycle),
        Just(Damage::NoDegree),
        (0..8usize).prop_map(Damage::Duplicate),
        Just(Damage::Reserved),
    ]
}

fn apply_damage(p: &Prog, d: &Damage) -> String {
    let mut p = p.clone();
    let r = p.recursions.len();
    match *d {
        Damage::UnknownName(i, j) => {
            let entries = &mut p.recursions[i % r].0;
            let k = j % entries.len();
            entries[k] = format!("{} zz", entries[k]);
        }
        Damage::ExtraEntry(i) => p.recursions[i % r].0.push("e".into()),
        Damage::BadCycle(i) => p.recursions[i % r].1 = format!(" (1 {})", p.degree + 1),
        Damage::NoDegree => {
            let src = p.render();
            return src.split_once('\n').unwrap().1.to_string();
        }
        Damage::Duplicate(i) => {
            let src = p.render();
            let line = format!(
                "s{} = {}\n",
                i % r,
                tuple(p.recursions[i % r].0.clone(), p.recursions[i % r].1.clone())
            );
            return src + &line;
        }
        Damage::Reserved => p.words.push("id".into()),
    }
    let src = p.render();
    match d {
        // the reserved-name damage renames the last word definition
        Damage::Reserved => {
            let last = format!("w{} = id\n", p.words.len() - 1);
            src.replace(&last, "id = s0\n")
        }
        _ => src,
    }
}

/// Applying the suggested replacement at every reported span (outermost
/// first where spans nest) yields a program that parses.
pub fn diagnostic_repair() -> Result<(), String> {
    let r = runner(256).run(&(program(), damage()), |(p, d)| {
        let src = apply_damage(&p, &d);
        let diags = match parse(&src) {
            Err(DslError::Parse(diags)) => diags,
            other => {
                return Err(TestCaseError::fail(format!(
                    "{d:?} not reported in\n{src}: {other:?}"
                )))
            }
        };
        let mut fixes = Vec::new();
        for diag in &diags {
            prop_assert!(
                diag.span.start <= diag.span.end && diag.span.end <= src.len(),
                "span outside source: {}",
                diag
            );
            prop_assert!(
                src.is_char_boundary(diag.span.start) && src.is_char_boundary(diag.span.end)
            );
            let Some(fix) = &diag.replacement else {
                return Err(TestCaseError::fail(format!(
                    "no replacement for {diag} in\n{src}"
                )));
            };
            fixes.push((diag.span.start, diag.span.end, fix.clone()));
        }
        fixes.sort_by_key(|&(s, e, _)| (s, std::cmp::Reverse(e)));
        let mut kept: Vec<(usize, usize, String)> = Vec::new();
        for f in fixes {
            match kept.last() {
                Some(prev) if f.0 < prev.1 || (f.0 == prev.0 && f.0 == f.1 && prev.0 == prev.1) => {
                }
                _ => kept.push(f),
            }
        }
        let mut fixed = src.clone();
        for (s, e, text) in kept.iter().rev() {
            fixed.replace_range(*s..*e, text);
        }
        prop_assert!(
            parse(&fixed).is_ok(),
            "{:?}\n{}\nrepaired to\n{}\n{:?}",
            d,
            src,
            fixed,
            parse(&fixed).err()
        );
        Ok(())
    });
    report("diagnostic repair", r)
}

pub const ALL: [super::Check; 2] = [
    ("parse/print round trip", round_trip),
    ("diagnostic repair", diagnostic_repair),
];
