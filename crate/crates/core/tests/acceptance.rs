//! Acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test -p treeperm --test acceptance -- --nocapture`.
//!
//! Every comparison is exact: machines, degrees, closure sizes and relation
//! outcomes are integers or structural equalities, so there are no
//! tolerances to tune. Sample sizes and seeds are pinned below.

mod common;

use treeperm::automata::text::MachineFile;
use treeperm::automata::DEFAULT_LIMIT;
use treeperm::catalog::{self, build, suites};
use treeperm::{Perm, TreeAutomorphism};

/// Seed of the random oracle sample of criterion 5.
const ORACLE_SEED: u64 = 0x7233;
const ORACLE_SAMPLE: usize = 200;
const ORACLE_MAX_LEN: usize = 5;
/// Closure limit of criterion 7.
const CLOSURE_LIMIT: usize = 10_000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.notes.push(what);
        } else {
            self.failures.push(what);
        }
    }

    fn fail(&mut self, what: impl Into<String>) {
        self.failures.push(what.into());
    }
}

fn machines(name: &str) -> MachineFile {
    catalog::load(name).unwrap().machines().unwrap().clone()
}

fn element(file: &MachineFile, name: &str) -> TreeAutomorphism {
    file.generator(name)
        .unwrap_or_else(|| panic!("{name} missing"))
}

/// Checks `name = (sections) activity` against the elements of `file`.
fn recursion(
    out: &mut Outcome,
    entry: &str,
    file: &MachineFile,
    name: &str,
    sections: &[&str],
    activity: &str,
) {
    let g = element(file, name);
    let d = g.degree();
    let expected = Perm::parse_cycles(d.get(), activity).unwrap();
    let mut bad = Vec::new();
    if g.activity() != &expected {
        bad.push(format!(
            "activity {} (expected {activity})",
            g.activity().to_cycle_string()
        ));
    }
    for (i, s) in sections.iter().enumerate() {
        let want = if *s == "e" {
            TreeAutomorphism::identity(d)
        } else {
            element(file, s)
        };
        if g.child(i as u32 + 1).unwrap() != want {
            bad.push(format!("section {} is not {s}", i + 1));
        }
    }
    if bad.is_empty() {
        out.notes.push(format!("{entry} {name} exact"));
    } else {
        out.fail(format!("{entry} {name}: {}", bad.join(", ")));
    }
}

fn byte_equal(out: &mut Outcome, name: &str) {
    let fresh = catalog::generate(name, DEFAULT_LIMIT).unwrap();
    let golden = catalog::golden(name).unwrap().unwrap();
    out.check(fresh == golden, format!("{name} byte-equal to golden"));
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    byte_equal(&mut out, "zwrz-3");
    byte_equal(&mut out, "zwrz-6");
    let z3 = machines("zwrz-3");
    recursion(
        &mut out,
        "zwrz-3",
        &z3,
        "gamma",
        &["gamma", "e", "alpha"],
        "id",
    );
    recursion(
        &mut out,
        "zwrz-3",
        &z3,
        "alpha",
        &["e", "alpha", "e"],
        "(1 2)",
    );
    let z6 = machines("zwrz-6");
    let gamma1 = ["gamma1", "e", "e", "gamma1", "alpha1", "alpha1"];
    recursion(&mut out, "zwrz-6", &z6, "gamma1", &gamma1, "id");
    let alpha1 = ["e", "alpha1", "e", "alpha1", "e", "e"];
    recursion(&mut out, "zwrz-6", &z6, "alpha1", &alpha1, "(1 2)(3 4)");
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    byte_equal(&mut out, "w3-10");
    let w10 = machines("w3-10");
    out.check(w10.machine.degree().get() == 10, "w3-10 degree 10");
    for name in ["w3-10", "w3-2"] {
        let file = machines(name);
        let model = suites::model(name, &file).unwrap();
        let report = suites::check_suite(&model, &suites::suite(name).unwrap(), DEFAULT_LIMIT);
        out.check(report.ok(), format!("{name}: {report}"));
    }
    let deflated = build::w3_2(&w10, DEFAULT_LIMIT).unwrap();
    let golden = catalog::golden("w3-2").unwrap().unwrap();
    let body = |s: &str| {
        s.lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let same = body(&deflated.to_text()) == body(golden);
    out.check(
        same,
        "deflate(w3-10) byte-equal to w3-2 apart from comments",
    );
    let w2 = machines("w3-2");
    let tree = build::w3_tree();
    for (name, g) in w10.generators() {
        let d = treeperm::tree_ops::deflate(&g, &tree, DEFAULT_LIMIT).unwrap();
        if d != element(&w2, &name) {
            out.fail(format!("deflate({name}) differs from w3-2 {name}"));
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    for (name, d) in [
        ("c2-ext-16", 16),
        ("z-ext-8", 8),
        ("zwrz-3", 3),
        ("zwrz-6", 6),
        ("w3-2", 2),
        ("w3-10", 10),
    ] {
        let got = catalog::load(name).unwrap().degree;
        out.check(got == d, format!("{name} degree {got} (expected {d})"));
    }
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    for name in ["zwrz-3", "w3-10", "w3-2", "c2-ext-16"] {
        let file = machines(name);
        let model = suites::model(name, &file).unwrap();
        let report = suites::check_suite(&model, &suites::suite(name).unwrap(), DEFAULT_LIMIT);
        out.check(report.ok(), format!("{name}: {report}"));
    }
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let z3 = suites::model("zwrz-3", &machines("zwrz-3")).unwrap();
    let words = suites::reduced_words(2, 4);
    let report = suites::oracle_check(&z3, &words, DEFAULT_LIMIT);
    out.check(
        report.ok() && report.total == 161,
        format!("zwrz-3 reduced words: {report}"),
    );
    let w3 = suites::model("w3-10", &machines("w3-10")).unwrap();
    let words = suites::random_words(3, ORACLE_MAX_LEN, ORACLE_SAMPLE, ORACLE_SEED);
    let report = suites::oracle_check(&w3, &words, DEFAULT_LIMIT);
    out.check(
        report.ok() && report.total == ORACLE_SAMPLE,
        format!("w3-10 random words: {report}"),
    );
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    let checks = common::automata::ALL
        .iter()
        .chain(&common::tree_ops::ALL)
        .chain(&common::gdata::ALL)
        .chain(&common::dsl::ALL);
    for (name, f) in checks {
        match f() {
            Ok(()) => out.notes.push(name.to_string()),
            Err(e) => out.fail(e),
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let z3 = machines("zwrz-3");
    let odo = machines("odometer");
    for (file, name, size) in [(&z3, "gamma", 3), (&z3, "alpha", 2), (&odo, "tau", 2)] {
        let got = element(file, name).states(DEFAULT_LIMIT).unwrap().len();
        out.check(
            got == size,
            format!("|Q({name})| = {got} (expected {size})"),
        );
    }
    let w10 = machines("w3-10");
    let recorded = catalog::recorded_closures(&w10);
    out.check(
        recorded.len() == 7,
        format!("{} closure sizes recorded for w3-10", recorded.len()),
    );
    for (name, size) in recorded {
        match element(&w10, &name).states(CLOSURE_LIMIT) {
            Ok(q) => out.check(
                q.len() == size,
                format!("w3-10 |Q({name})| = {} (recorded {size})", q.len()),
            ),
            Err(e) => out.fail(format!("w3-10 {name}: {e}")),
        }
    }
    out
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("golden reproduction, Z wr Z data", criterion_1),
        (
            "golden reproduction, degree-10 entry and its deflation",
            criterion_2,
        ),
        ("degrees", criterion_3),
        ("relation suites", criterion_4),
        ("oracle equivalence", criterion_5),
        ("property suites", criterion_6),
        ("finite-state closure sizes", criterion_7),
    ];
    let mut failed = Vec::new();
    println!();
    for (i, (title, run)) in criteria.iter().enumerate() {
        let o = run();
        if o.failures.is_empty() {
            println!("PASS {}. {title}: {}", i + 1, o.notes.join("; "));
        } else {
            println!("FAIL {}. {title}: {}", i + 1, o.failures.join("; "));
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
