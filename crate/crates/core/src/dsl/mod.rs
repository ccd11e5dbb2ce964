//! A small language for automorphisms given by wreath recursion.
//!
//! ```text
//! degree 3
//! gamma = (gamma, e, alpha)
//! alpha = (e, alpha, e) (1 2)
//! w = [gamma, gamma^(alpha^2)]
//! ```
//!
//! A definition whose body is a tuple is a recursion `(s_1, ..., s_m) σ`;
//! any other body names a group word. Sections are group words over defined
//! names, so definitions may refer to each other in any order. Words are
//! built from juxtaposition (product, left factor acts first), `x^n`,
//! `x^y = y⁻¹ x y`, `[x, y] = x⁻¹ y⁻¹ x y`, the identity `e`, parentheses and
//! nested tuple literals.

mod lexer;
mod parser;
mod solve;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::automata::text::{MachineFile, TextError, HEADER};
use crate::automata::{AutomataError, Degree, Exceeded, TreeAutomorphism};
use crate::gdata::AmbientGroup;
use crate::perm::Perm;

pub use parser::{parse, parse_expr};
pub use solve::MAX_WORD_LETTERS;

/// Byte range `start..end` of the source, with the line and column (both
/// 1-based) of `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

impl Span {
    pub fn to(self, other: Span) -> Span {
        Span {
            end: other.end.max(self.end),
            ..self
        }
    }

    /// Empty span at the very beginning of the source.
    pub fn origin() -> Span {
        Span {
            start: 0,
            end: 0,
            line: 1,
            col: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub span: Span,
    pub message: String,
    pub hint: Option<String>,
    /// Text that, put in place of the span, fixes this problem.
    pub replacement: Option<String>,
}

impl Diagnostic {
    pub fn error(span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            span,
            message: message.into(),
            hint: None,
            replacement: None,
        }
    }

    pub fn with_hint(mut self, hint: impl Into<String>) -> Self {
        self.hint = Some(hint.into());
        self
    }

    pub fn with_replacement(mut self, text: impl Into<String>) -> Self {
        self.replacement = Some(text.into());
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        let width = self.span.end.saturating_sub(self.span.start).max(1);
        write!(
            f,
            "line {}, columns {}-{}: {sev}: {}",
            self.span.line,
            self.span.col,
            self.span.col + width - 1,
            self.message
        )?;
        if let Some(h) = &self.hint {
            write!(f, " (hint: {h})")?;
        }
        Ok(())
    }
}

fn render(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{}", render(.0))]
    Parse(Vec<Diagnostic>),
    #[error("no finite-state solution found with signatures up to depth {depth}")]
    Unsolved { depth: usize },
    #[error(transparent)]
    Exceeded(#[from] Exceeded),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error("machine file line {}: {}", .0.line, .0.message)]
    Text(#[from] TextError),
}

/// Activity written after a tuple: disjoint cycles, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cycles {
    pub cycles: Vec<Vec<u32>>,
    pub span: Option<Span>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Identity,
    Name(String),
    Product(Vec<Expr>),
    Power(Box<Expr>, i64),
    /// `base^by`.
    Conj(Box<Expr>, Box<Expr>),
    Comm(Box<Expr>, Box<Expr>),
    Tuple(Vec<Expr>, Cycles),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    /// Equality of the trees, ignoring source positions.
    pub fn same_shape(&self, other: &Expr) -> bool {
        use ExprKind::*;
        let all = |a: &[Expr], b: &[Expr]| {
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_shape(y))
        };
        match (&self.kind, &other.kind) {
            (Identity, Identity) => true,
            (Name(a), Name(b)) => a == b,
            (Product(a), Product(b)) => all(a, b),
            (Power(a, n), Power(b, k)) => n == k && a.same_shape(b),
            (Conj(a, x), Conj(b, y)) | (Comm(a, x), Comm(b, y)) => {
                a.same_shape(b) && x.same_shape(y)
            }
            (Tuple(a, c), Tuple(b, d)) => c.cycles == d.cycles && all(a, b),
            _ => false,
        }
    }

    /// Every name the expression mentions, with its span.
    pub fn names(&self, out: &mut Vec<(String, Span)>) {
        match &self.kind {
            ExprKind::Identity => {}
            ExprKind::Name(n) => out.push((n.clone(), self.span)),
            ExprKind::Product(v) | ExprKind::Tuple(v, _) => v.iter().for_each(|e| e.names(out)),
            ExprKind::Power(b, _) => b.names(out),
            ExprKind::Conj(a, b) | ExprKind::Comm(a, b) => {
                a.names(out);
                b.names(out);
            }
        }
    }

    fn is_atomic(&self) -> bool {
        matches!(
            self.kind,
            ExprKind::Identity | ExprKind::Name(_) | ExprKind::Comm(..) | ExprKind::Tuple(..)
        )
    }
}

fn write_cycles(f: &mut fmt::Formatter<'_>, c: &Cycles) -> fmt::Result {
    for cycle in &c.cycles {
        let pts: Vec<String> = cycle.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", pts.join(" "))?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atom = |f: &mut fmt::Formatter<'_>, e: &Expr| {
            if e.is_atomic() {
                write!(f, "{e}")
            } else {
                write!(f, "({e})")
            }
        };
        match &self.kind {
            ExprKind::Identity => f.write_str("e"),
            ExprKind::Name(n) => f.write_str(n),
            ExprKind::Product(v) => {
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    if matches!(e.kind, ExprKind::Product(_)) {
                        write!(f, "({e})")?;
                    } else {
                        write!(f, "{e}")?;
                    }
                }
                Ok(())
            }
            ExprKind::Power(b, n) => {
                atom(f, b)?;
                write!(f, "^{n}")
            }
            ExprKind::Conj(b, by) => {
                atom(f, b)?;
                f.write_str("^")?;
                if matches!(by.kind, ExprKind::Name(_) | ExprKind::Identity) {
                    write!(f, "{by}")
                } else {
                    write!(f, "({by})")
                }
            }
            ExprKind::Comm(a, b) => write!(f, "[{a}, {b}]"),
            ExprKind::Tuple(v, c) => {
                f.write_str("(")?;
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(")")?;
                if !c.cycles.is_empty() {
                    f.write_str(" ")?;
                    write_cycles(f, c)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub name_span: Span,
    pub body: Expr,
}

impl Definition {
    /// Whether the body is a wreath recursion rather than a word.
    pub fn is_recursion(&self) -> bool {
        matches!(self.body.kind, ExprKind::Tuple(..))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub degree: Degree,
    pub definitions: Vec<Definition>,
}

impl Program {
    pub fn definition(&self, name: &str) -> Option<&Definition> {
        self.definitions.iter().find(|d| d.name == name)
    }

    /// Equality ignoring source positions.
    pub fn same_shape(&self, other: &Program) -> bool {
        self.degree == other.degree
            && self.definitions.len() == other.definitions.len()
            && self
                .definitions
                .iter()
                .zip(&other.definitions)
                .all(|(a, b)| a.name == b.name && a.body.same_shape(&b.body))
    }

    /// Solves every definition.
    pub fn solve(&self, limit: usize) -> Result<Context, DslError> {
        let elements = solve::solve(self, limit)?;
        Ok(Context {
            degree: self.degree,
            elements,
        })
    }

    /// A machine file with one generator per definition, in order.
    pub fn machine_file(&self, limit: usize) -> Result<MachineFile, DslError> {
        self.solve(limit)?.machine_file()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree {}", self.degree)?;
        for d in &self.definitions {
            writeln!(f, "{} = {}", d.name, d.body)?;
        }
        Ok(())
    }
}

/// Named elements to evaluate words against.
#[derive(Debug, Clone)]
pub struct Context {
    degree: Degree,
    elements: Vec<(String, TreeAutomorphism)>,
}

impl Context {
    pub fn from_machine_file(file: &MachineFile) -> Self {
        let mut elements = file.generators();
        for (q, name) in file.state_names.iter().enumerate() {
            if name != "e" && !elements.iter().any(|(n, _)| n == name) {
                let g = TreeAutomorphism::new(&file.machine, q).expect("state exists");
                elements.push((name.clone(), g));
            }
        }
        Context {
            degree: file.degree(),
            elements,
        }
    }

    /// Reads a machine file or a DSL program, told apart by the header line.
    pub fn load(text: &str, limit: usize) -> Result<Self, DslError> {
        if text.trim_start().starts_with(HEADER) {
            Ok(Context::from_machine_file(&MachineFile::parse(text)?))
        } else {
            parse(text)?.solve(limit)
        }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn names(&self) -> Vec<&str> {
        self.elements.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&TreeAutomorphism> {
        self.elements
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
    }

    pub fn elements(&self) -> &[(String, TreeAutomorphism)] {
        &self.elements
    }

    pub fn machine_file(&self) -> Result<MachineFile, DslError> {
        Ok(MachineFile::from_generators(&self.elements)?)
    }

    /// Evaluates a word given as text.
    pub fn eval(&self, src: &str, limit: usize) -> Result<TreeAutomorphism, DslError> {
        let expr = parse_expr(src)?;
        let mut diags = Vec::new();
        let mut names = Vec::new();
        expr.names(&mut names);
        for (n, span) in names {
            if self.get(&n).is_none() {
                diags.push(
                    Diagnostic::error(span, format!("unknown name `{n}`"))
                        .with_hint(format!("known names: {}", self.names().join(", ")))
                        .with_replacement("e"),
                );
            }
        }
        check_tuples(&expr, self.degree, &mut diags);
        if !diags.is_empty() {
            return Err(DslError::Parse(diags));
        }
        let g = self.eval_expr(&expr)?;
        if g.state_count() > limit {
            return Err(Exceeded { limit }.into());
        }
        Ok(g)
    }

    pub fn eval_expr(&self, e: &Expr) -> Result<TreeAutomorphism, DslError> {
        Ok(match &e.kind {
            ExprKind::Identity => TreeAutomorphism::identity(self.degree),
            ExprKind::Name(n) => self.get(n).cloned().ok_or_else(|| {
                DslError::Parse(vec![Diagnostic::error(
                    e.span,
                    format!("unknown name `{n}`"),
                )])
            })?,
            ExprKind::Product(v) => {
                let mut acc = TreeAutomorphism::identity(self.degree);
                for x in v {
                    acc = acc.compose(&self.eval_expr(x)?)?;
                }
                acc
            }
            ExprKind::Power(b, n) => self.eval_expr(b)?.pow(*n),
            ExprKind::Conj(b, by) => self.eval_expr(b)?.conjugate(&self.eval_expr(by)?)?,
            ExprKind::Comm(a, b) => self.eval_expr(a)?.commutator(&self.eval_expr(b)?)?,
            ExprKind::Tuple(v, c) => {
                let sections = v
                    .iter()
                    .map(|x| self.eval_expr(x))
                    .collect::<Result<Vec<_>, _>>()?;
                let activity = cycles_perm(c, self.degree).map_err(|d| DslError::Parse(vec![d]))?;
                TreeAutomorphism::from_recursion(&sections, &activity)?
            }
        })
    }
}

/// Evaluates a word over named elements of an ambient group. Tuples have no
/// meaning there and are rejected.
pub fn eval_ambient<G: AmbientGroup>(
    group: &G,
    names: &[(String, G::Elem)],
    src: &str,
) -> Result<G::Elem, DslError> {
    fn go<G: AmbientGroup>(
        group: &G,
        names: &[(String, G::Elem)],
        e: &Expr,
    ) -> Result<G::Elem, Diagnostic> {
        Ok(match &e.kind {
            ExprKind::Identity => group.identity(),
            ExprKind::Name(n) => names
                .iter()
                .find(|(m, _)| m == n)
                .map(|(_, g)| g.clone())
                .ok_or_else(|| {
                    let known: Vec<&str> = names.iter().map(|(m, _)| m.as_str()).collect();
                    Diagnostic::error(e.span, format!("unknown generator `{n}`"))
                        .with_hint(format!("generators: {}", known.join(", ")))
                        .with_replacement("e")
                })?,
            ExprKind::Product(v) => {
                let mut acc = group.identity();
                for x in v {
                    acc = group.multiply(&acc, &go(group, names, x)?);
                }
                acc
            }
            ExprKind::Power(b, n) => group.pow(&go(group, names, b)?, *n),
            ExprKind::Conj(b, by) => group.conjugate(&go(group, names, b)?, &go(group, names, by)?),
            ExprKind::Comm(a, b) => group.commutator(&go(group, names, a)?, &go(group, names, b)?),
            ExprKind::Tuple(..) => {
                return Err(Diagnostic::error(
                    e.span,
                    "tuples denote tree automorphisms, not group words",
                )
                .with_replacement("e"))
            }
        })
    }
    let expr = parse_expr(src)?;
    go(group, names, &expr).map_err(|d| DslError::Parse(vec![d]))
}

/// Evaluates `expr` over the definitions of `prog`.
pub fn elaborate(prog: &Program, expr: &str, limit: usize) -> Result<TreeAutomorphism, DslError> {
    prog.solve(limit)?.eval(expr, limit)
}

pub(crate) fn cycles_perm(c: &Cycles, degree: Degree) -> Result<Perm, Diagnostic> {
    Perm::from_cycles(degree.get(), &c.cycles).map_err(|e| {
        Diagnostic::error(c.span.unwrap_or_default(), format!("malformed cycles: {e}"))
            .with_hint(format!(
                "points must be distinct and lie in 1..={}",
                degree.get()
            ))
            .with_replacement("(1 2)")
    })
}

/// Arity and cycle checks of every tuple in `e`.
pub(crate) fn check_tuples(e: &Expr, degree: Degree, diags: &mut Vec<Diagnostic>) {
    match &e.kind {
        ExprKind::Identity | ExprKind::Name(_) => {}
        ExprKind::Product(v) => v.iter().for_each(|x| check_tuples(x, degree, diags)),
        ExprKind::Power(b, _) => check_tuples(b, degree, diags),
        ExprKind::Conj(a, b) | ExprKind::Comm(a, b) => {
            check_tuples(a, degree, diags);
            check_tuples(b, degree, diags);
        }
        ExprKind::Tuple(v, c) => {
            let m = degree.get();
            if v.len() != m {
                let filler = vec!["e"; m].join(", ");
                diags.push(
                    Diagnostic::error(
                        e.span,
                        format!("tuple has {} entries, degree is {m}", v.len()),
                    )
                    .with_hint(format!("write exactly {m} sections"))
                    .with_replacement(format!("({filler})")),
                );
            } else {
                v.iter().for_each(|x| check_tuples(x, degree, diags));
            }
            if let Err(d) = cycles_perm(c, degree) {
                diags.push(d);
            }
        }
    }
}

/// Names used by definitions, for diagnostics.
pub(crate) fn defined_names(prog_defs: &[Definition]) -> BTreeMap<&str, usize> {
    prog_defs
        .iter()
        .enumerate()
        .map(|(i, d)| (d.name.as_str(), i))
        .collect()
}
