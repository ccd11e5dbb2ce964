//! Parser and static checks.

use std::collections::{BTreeMap, HashMap};

use super::lexer::{tokenize, Tok, Token};
use super::{
    check_tuples, defined_names, Cycles, Definition, Diagnostic, DslError, Expr, ExprKind, Program,
    Span,
};
use crate::automata::Degree;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Diagnostic {
        let t = &self.toks[self.pos];
        Diagnostic::error(
            t.span,
            format!("expected {wanted}, found {}", t.tok.describe()),
        )
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> PResult<Span> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn skip_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.bump();
        }
    }

    /// Skips to the start of the next line.
    fn recover(&mut self) {
        while !matches!(self.peek(), Tok::Newline | Tok::Eof) {
            self.bump();
        }
    }

    fn at_expr_end(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Newline | Tok::Eof | Tok::RParen | Tok::RBracket | Tok::Comma
        )
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut factors = Vec::new();
        while !self.at_expr_end() {
            factors.push(self.factor()?);
        }
        match factors.len() {
            0 => Err(self.unexpected("an expression")),
            1 => Ok(factors.pop().expect("one factor")),
            _ => {
                let span = factors[0].span.to(factors[factors.len() - 1].span);
                Ok(Expr {
                    kind: ExprKind::Product(factors),
                    span,
                })
            }
        }
    }

    fn factor(&mut self) -> PResult<Expr> {
        let mut base = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let (kind, end) = match self.peek().clone() {
                Tok::Int(n) => (ExprKind::Power(Box::new(base.clone()), n), self.bump().span),
                Tok::Minus => {
                    self.bump();
                    let Tok::Int(n) = self.peek().clone() else {
                        return Err(self.unexpected("an exponent"));
                    };
                    (
                        ExprKind::Power(Box::new(base.clone()), -n),
                        self.bump().span,
                    )
                }
                Tok::Ident(_) => {
                    let by = self.primary()?;
                    let end = by.span;
                    (ExprKind::Conj(Box::new(base.clone()), Box::new(by)), end)
                }
                Tok::LParen => {
                    self.bump();
                    let by = self.expr()?;
                    let end = self.expect(Tok::RParen, "`)`")?;
                    (ExprKind::Conj(Box::new(base.clone()), Box::new(by)), end)
                }
                _ => return Err(self.unexpected("an exponent")),
            };
            base = Expr {
                kind,
                span: base.span.to(end),
            };
        }
        Ok(base)
    }

    fn primary(&mut self) -> PResult<Expr> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                let kind = if name == "e" {
                    ExprKind::Identity
                } else {
                    ExprKind::Name(name)
                };
                Ok(Expr { kind, span: start })
            }
            Tok::LBracket => {
                self.bump();
                let a = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.expr()?;
                let end = self.expect(Tok::RBracket, "`]`")?;
                Ok(Expr {
                    kind: ExprKind::Comm(Box::new(a), Box::new(b)),
                    span: start.to(end),
                })
            }
            Tok::LParen => {
                self.bump();
                let first = self.expr()?;
                if *self.peek() == Tok::RParen {
                    let end = self.bump().span;
                    let mut inner = first;
                    // keep the parentheses in the span so repairs cover them
                    inner.span = start.to(end);
                    return Ok(inner);
                }
                let mut entries = vec![first];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    entries.push(self.expr()?);
                }
                let end = self.expect(Tok::RParen, "`,` or `)`")?;
                let cycles = self.cycles()?;
                let span = match cycles.span {
                    Some(c) => start.to(c),
                    None => start.to(end),
                };
                Ok(Expr {
                    kind: ExprKind::Tuple(entries, cycles),
                    span,
                })
            }
            _ => Err(self.unexpected("a name, `e`, `(` or `[`")),
        }
    }

    /// Cycles `(1 2)(3 4)` or `id` after a tuple.
    fn cycles(&mut self) -> PResult<Cycles> {
        if matches!(self.peek(), Tok::Ident(s) if s == "id") {
            let span = self.bump().span;
            return Ok(Cycles {
                cycles: Vec::new(),
                span: Some(span),
            });
        }
        let mut out = Cycles::default();
        while *self.peek() == Tok::LParen && matches!(self.peek_at(1), Tok::Int(_)) {
            let start = self.bump().span;
            let mut cycle = Vec::new();
            while let Tok::Int(n) = *self.peek() {
                self.bump();
                cycle.push(u32::try_from(n).unwrap_or(u32::MAX));
            }
            let end = self.expect(Tok::RParen, "a point or `)`")?;
            out.cycles.push(cycle);
            out.span = Some(out.span.unwrap_or(start).to(end));
        }
        Ok(out)
    }
}

fn lex(src: &str) -> Result<Vec<Token>, DslError> {
    tokenize(src).map_err(|e| {
        DslError::Parse(vec![Diagnostic::error(
            e.span,
            format!("unexpected character `{}`", e.found),
        )
        .with_replacement("")])
    })
}

/// Parses a single word, e.g. `[gamma, alpha^2]`.
pub fn parse_expr(src: &str) -> Result<Expr, DslError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    p.skip_newlines();
    let e = p.expr().map_err(|d| DslError::Parse(vec![d]))?;
    p.skip_newlines();
    if *p.peek() != Tok::Eof {
        return Err(DslError::Parse(vec![p.unexpected("end of input")]));
    }
    Ok(e)
}

/// Largest tuple arity in `e`, used to suggest a degree.
fn max_arity(e: &Expr) -> usize {
    match &e.kind {
        ExprKind::Identity | ExprKind::Name(_) => 0,
        ExprKind::Product(v) => v.iter().map(max_arity).max().unwrap_or(0),
        ExprKind::Power(b, _) => max_arity(b),
        ExprKind::Conj(a, b) | ExprKind::Comm(a, b) => max_arity(a).max(max_arity(b)),
        ExprKind::Tuple(v, _) => v.len().max(v.iter().map(max_arity).max().unwrap_or(0)),
    }
}

/// Parses and checks a program. All problems found are reported together.
pub fn parse(src: &str) -> Result<Program, DslError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let mut diags = Vec::new();
    p.skip_newlines();

    let mut degree = None;
    if matches!(p.peek(), Tok::Ident(s) if s == "degree") {
        p.bump();
        match p.peek().clone() {
            Tok::Int(n) => {
                let span = p.bump().span;
                match Degree::new(n.max(0) as usize) {
                    Ok(d) => degree = Some(d),
                    Err(e) => {
                        diags.push(Diagnostic::error(span, e.to_string()).with_replacement("2"))
                    }
                }
            }
            _ => diags.push(p.unexpected("the tree degree")),
        }
        if !matches!(p.peek(), Tok::Newline | Tok::Eof) {
            diags.push(p.unexpected("end of line"));
            p.recover();
        }
    }

    let mut defs: Vec<Definition> = Vec::new();
    let mut first_def: HashMap<String, Span> = HashMap::new();
    loop {
        p.skip_newlines();
        if *p.peek() == Tok::Eof {
            break;
        }
        let line_start = p.span();
        let parsed = (|| {
            let Tok::Ident(name) = p.peek().clone() else {
                return Err(p.unexpected("a definition `name = ...`"));
            };
            let name_span = p.bump().span;
            p.expect(Tok::Equals, "`=`")?;
            let body = p.expr()?;
            if !matches!(p.peek(), Tok::Newline | Tok::Eof) {
                return Err(p.unexpected("end of line"));
            }
            Ok(Definition {
                name,
                name_span,
                body,
            })
        })();
        match parsed {
            Ok(d) => {
                if d.name == "e" || d.name == "id" || d.name == "degree" {
                    diags.push(
                        Diagnostic::error(d.name_span, format!("`{}` is reserved", d.name))
                            .with_replacement(format!("{}_", d.name)),
                    );
                } else if let Some(prev) = first_def.get(&d.name) {
                    let line = line_start.to(p.prev_span());
                    diags.push(
                        Diagnostic::error(line, format!("`{}` is already defined", d.name))
                            .with_hint(format!("first definition on line {}", prev.line))
                            .with_replacement(""),
                    );
                } else {
                    first_def.insert(d.name.clone(), d.name_span);
                    defs.push(d);
                }
            }
            Err(d) => {
                diags.push(d);
                p.recover();
            }
        }
    }

    let degree = match degree {
        Some(d) => d,
        None => {
            if !diags.iter().any(|d| d.message.contains("degree")) {
                let guess = defs
                    .iter()
                    .map(|d| max_arity(&d.body))
                    .max()
                    .unwrap_or(0)
                    .max(2);
                diags.insert(
                    0,
                    Diagnostic::error(Span::origin(), "missing degree declaration")
                        .with_hint("the first line must be `degree N`")
                        .with_replacement(format!("degree {guess}\n")),
                );
            }
            return Err(DslError::Parse(diags));
        }
    };

    let known = defined_names(&defs);
    for d in &defs {
        let mut names = Vec::new();
        d.body.names(&mut names);
        for (n, span) in names {
            if !known.contains_key(n.as_str()) {
                diags.push(
                    Diagnostic::error(span, format!("unknown name `{n}`"))
                        .with_hint("define it, or use `e` for the identity")
                        .with_replacement("e"),
                );
            }
        }
        check_tuples(&d.body, degree, &mut diags);
    }
    alias_cycles(&defs, &mut diags);

    if diags.is_empty() {
        Ok(Program {
            degree,
            definitions: defs,
        })
    } else {
        diags.sort_by_key(|d| d.span.start);
        Err(DslError::Parse(diags))
    }
}

/// Word definitions that depend on themselves without passing through a
/// recursion have no value.
fn alias_cycles(defs: &[Definition], diags: &mut Vec<Diagnostic>) {
    let index = defined_names(defs);
    let edges: Vec<Vec<(usize, Span)>> = defs
        .iter()
        .map(|d| {
            if d.is_recursion() {
                return Vec::new();
            }
            let mut names = Vec::new();
            d.body.names(&mut names);
            names
                .into_iter()
                .filter_map(|(n, s)| index.get(n.as_str()).map(|&j| (j, s)))
                .filter(|&(j, _)| !defs[j].is_recursion())
                .collect()
        })
        .collect();
    // 0 unvisited, 1 on the stack, 2 done
    let mut state = vec![0u8; defs.len()];
    let mut reported = BTreeMap::new();
    fn visit(
        i: usize,
        edges: &[Vec<(usize, Span)>],
        state: &mut [u8],
        reported: &mut BTreeMap<usize, Span>,
    ) {
        state[i] = 1;
        for &(j, span) in &edges[i] {
            match state[j] {
                0 => visit(j, edges, state, reported),
                1 => {
                    reported.entry(span.start).or_insert(span);
                }
                _ => {}
            }
        }
        state[i] = 2;
    }
    for i in 0..defs.len() {
        if state[i] == 0 {
            visit(i, &edges, &mut state, &mut reported);
        }
    }
    for span in reported.into_values() {
        diags.push(
            Diagnostic::error(span, "word definition refers to itself")
                .with_hint("only recursions `(s_1, ..., s_m)` may be self-referential")
                .with_replacement("e"),
        );
    }
}
