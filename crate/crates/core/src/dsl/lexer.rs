//! Tokens of the recursion language. Newlines end definitions, except
//! inside brackets, so long tuples may span several lines.

use super::Span;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Caret,
    Minus,
    Equals,
    Newline,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

/// A character the lexer does not accept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub span: Span,
    pub found: char,
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, LexError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut line = 1;
    let mut line_start = 0;
    let mut chars = src.char_indices().peekable();
    let span = |start: usize, end: usize, line: usize, line_start: usize| Span {
        start,
        end,
        line,
        col: start - line_start + 1,
    };
    while let Some(&(i, c)) = chars.peek() {
        match c {
            '\n' => {
                chars.next();
                if depth == 0 {
                    out.push(Token {
                        tok: Tok::Newline,
                        span: span(i, i + 1, line, line_start),
                    });
                }
                line += 1;
                line_start = i + 1;
            }
            '#' => {
                while let Some(&(_, c)) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            c if c.is_ascii_digit() => {
                let mut end = i;
                let mut value: i64 = 0;
                while let Some(&(j, d)) = chars.peek() {
                    let Some(v) = d.to_digit(10) else { break };
                    value = value.saturating_mul(10).saturating_add(v as i64);
                    end = j + 1;
                    chars.next();
                }
                out.push(Token {
                    tok: Tok::Int(value),
                    span: span(i, end, line, line_start),
                });
            }
            c if is_ident_start(c) => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if !is_ident_char(d) {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                out.push(Token {
                    tok: Tok::Ident(src[i..end].to_string()),
                    span: span(i, end, line, line_start),
                });
            }
            _ => {
                chars.next();
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    '^' => Tok::Caret,
                    '-' => Tok::Minus,
                    '=' => Tok::Equals,
                    _ => {
                        return Err(LexError {
                            span: span(i, i + c.len_utf8(), line, line_start),
                            found: c,
                        })
                    }
                };
                match tok {
                    Tok::LParen | Tok::LBracket => depth += 1,
                    Tok::RParen | Tok::RBracket => depth = depth.saturating_sub(1),
                    _ => {}
                }
                out.push(Token {
                    tok,
                    span: span(i, i + 1, line, line_start),
                });
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        span: span(src.len(), src.len(), line, line_start),
    });
    Ok(out)
}
