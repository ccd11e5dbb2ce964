use std::path::PathBuf;
use std::process::{Command, Output};

use treeperm::automata::DEFAULT_LIMIT;
use treeperm::dsl::Context;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treeperm"))
        .args(args)
        .current_dir(root())
        .env_remove("TREEPERM_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn act_on_a_vertex() {
    let o = run(&["act", "-f", "catalog/zwrz-3", "-e", "alpha", "-w", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2,2\n");
}

#[test]
fn equal_is_a_predicate() {
    let o = run(&[
        "equal",
        "-f",
        "zwrz-3",
        "-e",
        "alpha alpha",
        "-e",
        "(alpha,alpha,e)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["equal", "-f", "zwrz-3", "-e", "alpha", "-e", "gamma"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn trivial_is_a_predicate() {
    let o = run(&["trivial", "-f", "zwrz-3", "-e", "[gamma, gamma^(alpha^2)]"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["trivial", "-f", "zwrz-3", "-e", "gamma alpha^-1"]);
    assert_eq!(
        (o.status.code(), stdout(&o).as_str()),
        (Some(1), "nontrivial\n")
    );
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(
        run(&["act", "-f", "zwrz-3", "-e", "beta", "-w", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["act", "-f", "zwrz-3", "-w", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["act", "-f", "no/such/file", "-w", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let o = run(&["minimize", "-f", "catalog/printed/c2-ext-16.tp"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("15 entries"));
}

#[test]
fn limit_exceeded_exits_3() {
    let o = run(&["states", "-f", "zwrz-3", "-e", "alpha^5", "--limit", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_treeperm"))
        .args(["states", "-f", "zwrz-3", "-e", "alpha^5"])
        .current_dir(root())
        .env("TREEPERM_LIMIT", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn check_runs_the_suite() {
    let o = run(&["check", "zwrz-3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "113/113 relations hold\n");
}

#[test]
fn closure_sizes() {
    for (expr, n) in [("gamma", "3"), ("alpha", "2")] {
        let o = run(&["states", "-f", "zwrz-3", "-e", expr]);
        assert_eq!(stdout(&o).trim(), n);
    }
    assert_eq!(stdout(&run(&["states", "-f", "odometer"])).trim(), "2");
}

#[test]
fn dsl_files_are_accepted() {
    let o = run(&["minimize", "-f", "catalog/printed/zwrz-3.tp"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = std::fs::read_to_string(root().join("catalog/zwrz-3")).unwrap();
    let body = |s: &str| {
        s.lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(body(&stdout(&o)), body(&golden));
}

#[test]
fn deflate_reproduces_the_binary_entry() {
    let o = run(&[
        "deflate",
        "-f",
        "catalog/w3-10",
        "--tree",
        "catalog/w3-encoding-tree",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let golden = std::fs::read_to_string(root().join("catalog/w3-2")).unwrap();
    let body = |s: &str| {
        s.lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(body(&stdout(&o)), body(&golden));
}

#[test]
fn inflate_and_portrait() {
    let o = run(&["inflate", "-f", "odometer", "-k", "2"]);
    assert!(stdout(&o).contains("degree 4"));
    let o = run(&["portrait", "-f", "odometer", "--depth", "2"]);
    assert_eq!(stdout(&o), "-: (1 2)\n1: id\n2: (1 2)\n");
    let o = run(&["portrait", "-f", "odometer", "--depth", "1", "--dot"]);
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn gdata_constructions() {
    let o = run(&["gdata", "zwrz-gdata"]);
    assert!(stdout(&o).starts_with("# degree 3, orbit type (2, 1)\n"));
    let o = run(&["gdata", "zwrz-gdata", "--op", "refine"]);
    assert!(stdout(&o).starts_with("# degree 6, orbit type (2, 2, 2)\n"));
    let o = run(&["gdata", "zwrz-gdata", "--op", "extend-c"]);
    assert!(stdout(&o).starts_with("# degree 10, orbit type (8, 1, 1)\n"));
    let o = run(&["gdata", "c2wrz-gdata", "--op", "extend-b", "--base", "c2"]);
    assert!(stdout(&o).starts_with("# degree 16, orbit type (8, 8)\n"));
    let o = run(&["gdata", "c2wrz-gdata", "--op", "concat", "--base", "z,c2"]);
    assert!(stdout(&o).contains("# degree 25"));
    let o = run(&["gdata", "zwrz-gdata", "-g", "[y, y^x]"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# w1 = [y, y^x]\ndegree 3\nstate w1 id -> w1 w1 w1\n"));
    assert_eq!(
        run(&["gdata", "c2wrz-gdata", "--op", "refine"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn catalog_listing() {
    let o = run(&["catalog", "list"]);
    assert_eq!(stdout(&o).lines().count(), treeperm::catalog::list().len());
    let o = run(&["catalog", "show", "w3-encoding-tree"]);
    assert!(stdout(&o).contains("((((1,2),(3,4)),((5,6),(7,8))),(9,10))"));
    assert_eq!(run(&["catalog", "show", "nope"]).status.code(), Some(2));
}

#[test]
fn cli_equal_agrees_with_library() {
    let ctx = Context::load(
        treeperm::catalog::golden("zwrz-3").unwrap().unwrap(),
        DEFAULT_LIMIT,
    )
    .unwrap();
    let words = [
        "alpha gamma",
        "gamma alpha",
        "gamma^alpha",
        "gamma^-1 alpha^2",
        "[alpha, gamma]",
        "e",
    ];
    for a in words {
        for b in words {
            let lib = ctx
                .eval(a, DEFAULT_LIMIT)
                .unwrap()
                .equal(&ctx.eval(b, DEFAULT_LIMIT).unwrap(), DEFAULT_LIMIT)
                .unwrap();
            let code = run(&["equal", "-f", "zwrz-3", "-e", a, "-e", b])
                .status
                .code();
            assert_eq!(code, Some(if lib { 0 } else { 1 }), "{a} vs {b}");
        }
    }
}
