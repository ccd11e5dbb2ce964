//! `treeperm`: command-line access to the automaton, tree and data
//! operations.
//!
//! Exit codes: 0 success, 1 a predicate answered "no", 2 usage or input
//! errors, 3 a state-closure limit was exceeded.

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use treeperm::automata::text::MachineFile;
use treeperm::automata::{AutomataError, TreeAutomorphism, VertexWord, DEFAULT_LIMIT};
use treeperm::catalog::{self, build, suites, CatalogError, EntryData};
use treeperm::dsl::{self, Context, DslError};
use treeperm::gdata::{AbelianBase, AmbientGroup, GData, GDataError};
use treeperm::tree_ops::{self, EncodingTree, TreeOpsError};

#[derive(Parser)]
#[command(
    name = "treeperm",
    version,
    about = "Finite-state automorphisms of regular rooted trees"
)]
struct Cli {
    /// Largest state closure any operation may build.
    #[arg(long, global = true, env = "TREEPERM_LIMIT", default_value_t = DEFAULT_LIMIT)]
    limit: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Source {
    /// Machine file, DSL program, or catalog entry name.
    #[arg(short = 'f', long = "file")]
    file: String,
}

#[derive(clap::Args)]
struct Element {
    #[command(flatten)]
    source: Source,
    /// Word over the defined names; defaults to the first generator.
    #[arg(short = 'e', long = "expr")]
    expr: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Image of a vertex word, e.g. `-w 1,2`.
    Act {
        #[command(flatten)]
        element: Element,
        #[arg(short = 'w', long = "word")]
        word: String,
    },
    /// Section at a vertex, as a machine file.
    Section {
        #[command(flatten)]
        element: Element,
        #[arg(short = 'w', long = "word")]
        word: String,
    },
    /// Number of states of the element.
    States {
        #[command(flatten)]
        element: Element,
        /// Also print the minimal machine.
        #[arg(long)]
        machine: bool,
    },
    /// Whether two words define the same automorphism.
    Equal {
        #[command(flatten)]
        source: Source,
        #[arg(short = 'e', long = "expr", num_args = 1, required = true)]
        exprs: Vec<String>,
    },
    /// Whether a word is the identity.
    Trivial {
        #[command(flatten)]
        element: Element,
    },
    /// Order of the element, searched up to `--max`.
    Order {
        #[command(flatten)]
        element: Element,
        #[arg(long, default_value_t = 64)]
        max: usize,
    },
    /// Decorations of the first `--depth` levels.
    Portrait {
        #[command(flatten)]
        element: Element,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Canonical minimal machine file of all generators.
    Minimize {
        #[command(flatten)]
        source: Source,
        /// Graphviz output instead of the text format.
        #[arg(long)]
        dot: bool,
    },
    /// The generators read `k` levels at a time.
    Inflate {
        #[command(flatten)]
        source: Source,
        #[arg(short = 'k')]
        k: usize,
    },
    /// The generators rewritten over the binary tree.
    Deflate {
        #[command(flatten)]
        source: Source,
        /// Encoding tree, a file holding one, or a catalog entry name.
        #[arg(long)]
        tree: String,
    },
    /// Machines of a shipped data set and its constructions.
    Gdata {
        /// `zwrz-gdata` or `c2wrz-gdata`.
        name: String,
        #[arg(long, value_enum, default_value_t = Op::Represent)]
        op: Op,
        /// Abelian base for the extensions: comma-separated `z` and `cN`.
        #[arg(long, default_value = "z")]
        base: String,
        /// Ambient words to represent; defaults to the generators.
        #[arg(short = 'g', long = "word")]
        words: Vec<String>,
    },
    /// Shipped entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Runs the relation suite of a catalog entry.
    Check { name: String },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Represent,
    Refine,
    ExtendB,
    ExtendC,
    Concat,
}

enum Failure {
    Usage(String),
    Limit(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Limit(_) => 3,
        }
    }
}

impl From<DslError> for Failure {
    fn from(e: DslError) -> Self {
        match e {
            DslError::Exceeded(_) | DslError::Automata(AutomataError::Exceeded(_)) => {
                Failure::Limit(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<AutomataError> for Failure {
    fn from(e: AutomataError) -> Self {
        DslError::from(e).into()
    }
}

impl From<treeperm::automata::Exceeded> for Failure {
    fn from(e: treeperm::automata::Exceeded) -> Self {
        Failure::Limit(e.to_string())
    }
}

impl From<GDataError> for Failure {
    fn from(e: GDataError) -> Self {
        match e {
            GDataError::Exceeded(_) | GDataError::Automata(AutomataError::Exceeded(_)) => {
                Failure::Limit(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<TreeOpsError> for Failure {
    fn from(e: TreeOpsError) -> Self {
        match e {
            TreeOpsError::Exceeded(_) => Failure::Limit(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::GData(g) => g.into(),
            CatalogError::TreeOps(t) => t.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read_source(arg: &str) -> Result<String, Failure> {
    if Path::new(arg).exists() {
        return std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")));
    }
    match catalog::golden(arg) {
        Ok(Some(text)) => Ok(text.to_string()),
        _ => Err(Failure::Usage(format!(
            "{arg}: no such file or catalog entry"
        ))),
    }
}

fn context(source: &Source, limit: usize) -> Result<Context, Failure> {
    Ok(Context::load(&read_source(&source.file)?, limit)?)
}

fn element(el: &Element, limit: usize) -> Result<(Context, TreeAutomorphism), Failure> {
    let ctx = context(&el.source, limit)?;
    let g = match &el.expr {
        Some(e) => ctx.eval(e, limit)?,
        None => ctx
            .elements()
            .first()
            .map(|(_, g)| g.clone())
            .ok_or_else(|| Failure::Usage("no generators defined".into()))?,
    };
    Ok((ctx, g))
}

fn vertex(text: &str, g: &TreeAutomorphism) -> Result<VertexWord, Failure> {
    let letters = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u32>()
                .map_err(|_| Failure::Usage(format!("bad letter `{s}` in vertex word")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let w = VertexWord::new(letters);
    w.validate(g.degree())?;
    Ok(w)
}

fn render_word(w: &VertexWord) -> String {
    w.letters()
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn machine_text(gens: &[(String, TreeAutomorphism)]) -> Result<String, Failure> {
    MachineFile::from_generators(gens)
        .map(|f| f.to_text())
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_tree(arg: &str) -> Result<EncodingTree, Failure> {
    let text = if arg.trim_start().starts_with('(') {
        arg.to_string()
    } else {
        read_source(arg)?
    };
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    Ok(line.parse()?)
}

fn parse_base(arg: &str) -> Result<AbelianBase, Failure> {
    let mut rank = 0;
    let mut torsion = Vec::new();
    for f in arg.split(',').map(str::trim) {
        match f {
            "z" | "Z" => rank += 1,
            _ => {
                let n = f
                    .strip_prefix(['c', 'C'])
                    .and_then(|n| n.parse::<i64>().ok())
                    .ok_or_else(|| {
                        Failure::Usage(format!("bad base factor `{f}`; use `z` or `cN`"))
                    })?;
                torsion.push(n);
            }
        }
    }
    Ok(AbelianBase::new(rank, torsion)?)
}

/// Represents ambient words (default: the generators) over `gd`.
fn represent<G: AmbientGroup>(
    gd: &GData<G>,
    words: &[String],
    limit: usize,
) -> Result<String, Failure> {
    let amb = &*gd.ambient;
    let gens = amb.generators();
    let named = if words.is_empty() {
        gens.clone()
    } else {
        words
            .iter()
            .enumerate()
            .map(|(i, w)| Ok((format!("w{}", i + 1), dsl::eval_ambient(amb, &gens, w)?)))
            .collect::<Result<Vec<_>, Failure>>()?
    };
    let mut file = gd.representation().machine_file(&named, limit)?;
    file.comments = words
        .iter()
        .enumerate()
        .map(|(i, w)| format!("w{} = {w}", i + 1))
        .collect();
    let orbit: Vec<String> = gd.orbit_type().iter().map(|m| m.to_string()).collect();
    Ok(format!(
        "# degree {}, orbit type ({})\n{}",
        gd.degree(),
        orbit.join(", "),
        file.to_text()
    ))
}

fn gdata(
    name: &str,
    op: Op,
    base: &str,
    words: &[String],
    limit: usize,
) -> Result<String, Failure> {
    let unsupported = |what: &str| Failure::Usage(format!("{what} is not available for {name}"));
    match (name, op) {
        (_, Op::Represent) => match catalog::load(name)?.data {
            EntryData::GData(gd) => represent(&gd, words, limit),
            _ => Err(Failure::Usage(format!("{name} is not a data entry"))),
        },
        ("zwrz-gdata", Op::Refine) => represent(&catalog::zwrz_refined(), words, limit),
        ("zwrz-gdata", Op::ExtendC) => {
            if base != "z" {
                return Err(Failure::Usage("extend-c supports the base `z` only".into()));
            }
            represent(&build::w3_data()?, words, limit)
        }
        ("c2wrz-gdata", Op::ExtendB) => {
            represent(&build::c2_ext_data(&parse_base(base)?)?, words, limit)
        }
        ("c2wrz-gdata", Op::Concat) => {
            let b = parse_base(base)?;
            let factors = b.factors();
            if factors.len() < 2 {
                return Err(Failure::Usage(
                    "concat needs at least two base factors, e.g. `--base z,c2`".into(),
                ));
            }
            let mut out = String::new();
            for f in &factors {
                let d = build::c2_ext_data(f)?;
                out.push_str(&format!("# factor {f}: degree {}\n", d.degree()));
            }
            out.push_str(&represent(&build::c2_ext_data(&b)?, words, limit)?);
            Ok(out)
        }
        ("c2wrz-gdata", Op::Refine) => Err(unsupported("refine")),
        ("zwrz-gdata" | "c2wrz-gdata", _) => Err(unsupported("this construction")),
        _ => Err(Failure::Usage(format!("{name} is not a data entry"))),
    }
}

fn check(name: &str, limit: usize) -> Outcome {
    let entry = catalog::load(name)?;
    let Some(file) = entry.machines() else {
        return Err(Failure::Usage(format!("{name} has no machines to check")));
    };
    let (Some(model), Some(relations)) = (suites::model(name, file), suites::suite(name)) else {
        return Err(Failure::Usage(format!("{name} has no relation suite")));
    };
    let report = suites::check_suite(&model, &relations, limit);
    println!("{report}");
    for f in &report.failures {
        println!("  {f}");
    }
    Ok(report.ok())
}

fn run(cli: Cli) -> Outcome {
    let limit = cli.limit;
    match cli.command {
        Command::Act { element: el, word } => {
            let (_, g) = element(&el, limit)?;
            println!("{}", render_word(&g.act(&vertex(&word, &g)?)?));
        }
        Command::Section { element: el, word } => {
            let (_, g) = element(&el, limit)?;
            let s = g.section(&vertex(&word, &g)?)?;
            print!("{}", machine_text(&[("s".into(), s)])?);
        }
        Command::States {
            element: el,
            machine,
        } => {
            let (_, g) = element(&el, limit)?;
            println!("{}", g.states(limit)?.len());
            if machine {
                print!("{}", machine_text(&[("g".into(), g)])?);
            }
        }
        Command::Equal { source, exprs } => {
            if exprs.len() != 2 {
                return Err(Failure::Usage("equal takes exactly two -e words".into()));
            }
            let ctx = context(&source, limit)?;
            let a = ctx.eval(&exprs[0], limit)?;
            let b = ctx.eval(&exprs[1], limit)?;
            let same = a.equal(&b, limit)?;
            println!("{}", if same { "equal" } else { "not equal" });
            return Ok(same);
        }
        Command::Trivial { element: el } => {
            let (_, g) = element(&el, limit)?;
            let t = g.is_trivial(limit)?;
            println!("{}", if t { "trivial" } else { "nontrivial" });
            return Ok(t);
        }
        Command::Order { element: el, max } => {
            let (_, g) = element(&el, limit)?;
            match g.order_bounded(max, limit)? {
                Some(n) => println!("{n}"),
                None => println!("no finite order up to {max}"),
            }
        }
        Command::Portrait {
            element: el,
            depth,
            dot,
        } => {
            let (_, g) = element(&el, limit)?;
            let p = g.portrait(depth);
            print!("{}", if dot { p.to_dot() } else { p.to_text() });
        }
        Command::Minimize { source, dot } => {
            let ctx = context(&source, limit)?;
            let file = ctx.machine_file()?;
            print!("{}", if dot { file.to_dot() } else { file.to_text() });
        }
        Command::Inflate { source, k } => {
            let ctx = context(&source, limit)?;
            let gens = ctx
                .elements()
                .iter()
                .map(|(n, g)| Ok((n.clone(), tree_ops::inflate(g, k)?)))
                .collect::<Result<Vec<_>, Failure>>()?;
            print!("{}", machine_text(&gens)?);
        }
        Command::Deflate { source, tree } => {
            let ctx = context(&source, limit)?;
            let t = parse_tree(&tree)?;
            let gens = ctx
                .elements()
                .iter()
                .map(|(n, g)| Ok((n.clone(), tree_ops::deflate(g, &t, limit)?)))
                .collect::<Result<Vec<_>, Failure>>()?;
            print!("{}", machine_text(&gens)?);
        }
        Command::Gdata {
            name,
            op,
            base,
            words,
        } => {
            print!("{}", gdata(&name, op, &base, &words, limit)?);
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for name in catalog::list() {
                    println!("{name}\t{}", catalog::provenance(name)?);
                }
            }
            CatalogAction::Show { name } => {
                let entry = catalog::load(&name)?;
                match (&entry.data, catalog::golden(&name)?) {
                    (_, Some(text)) => print!("{text}"),
                    (EntryData::GData(gd), None) => {
                        let orbit: Vec<String> =
                            gd.orbit_type().iter().map(|m| m.to_string()).collect();
                        println!("# {}: {}", entry.name, entry.provenance);
                        println!("degree {}", entry.degree);
                        println!("orbit type ({})", orbit.join(", "));
                        for p in &gd.parts {
                            println!(
                                "part {} index {} endo {}",
                                p.subgroup.name,
                                p.subgroup.index(),
                                p.endo.name
                            );
                        }
                    }
                    _ => println!("# {}: {}", entry.name, entry.provenance),
                }
            }
        },
        Command::Check { name } => return check(&name, limit),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let (Failure::Usage(msg) | Failure::Limit(msg)) = &f;
            eprintln!("treeperm: {msg}");
            ExitCode::from(f.code())
        }
    }
}
