use crate::error::{Error, Result};

use super::{Expr, Node, Span};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Semi,
    Star,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("name {s:?}"),
            Tok::Semi => "\";\"".into(),
            Tok::Star => "\"*\"".into(),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::LBracket => "\"[\"".into(),
            Tok::RBracket => "\"]\"".into(),
            Tok::Comma => "\",\"".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(span: Span, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: span.line,
        column: span.column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let span = Span { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_alphanumeric() || d == '_' || d == '\'' {
                    s.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(s), span));
            continue;
        }
        let t = match c {
            ';' => Tok::Semi,
            '*' => Tok::Star,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            _ => return Err(syntax(span, format!("unexpected character {c:?}"))),
        };
        chars.next();
        column += 1;
        out.push((t, span));
    }
    out.push((Tok::End, Span { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Span) {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Span> {
        let (t, span) = self.bump();
        if t == want {
            Ok(span)
        } else {
            Err(syntax(span, format!("expected {}, found {}", want.describe(), t.describe())))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.bump() {
            (Tok::Ident(s), _) => Ok(s),
            (t, span) => Err(syntax(span, format!("expected a space name, found {}", t.describe()))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let first = self.term()?;
        if self.peek().0 != Tok::Semi {
            return Ok(first);
        }
        let span = first.span;
        let mut parts = vec![first];
        while self.peek().0 == Tok::Semi {
            self.bump();
            parts.push(self.term()?);
        }
        Ok(Expr {
            node: Node::Compose(parts),
            span,
        })
    }

    fn term(&mut self) -> Result<Expr> {
        let first = self.factor()?;
        if self.peek().0 != Tok::Star {
            return Ok(first);
        }
        let span = first.span;
        let mut parts = vec![first];
        while self.peek().0 == Tok::Star {
            self.bump();
            parts.push(self.factor()?);
        }
        Ok(Expr {
            node: Node::Tensor(parts),
            span,
        })
    }

    fn factor(&mut self) -> Result<Expr> {
        let (t, span) = self.bump();
        match t {
            Tok::LParen => {
                let mut e = self.expr()?;
                self.expect(Tok::RParen)?;
                e.span = span;
                Ok(e)
            }
            Tok::Ident(name) => {
                let keyword = matches!(name.as_str(), "id" | "swap" | "braid");
                if !keyword || self.peek().0 != Tok::LBracket {
                    return Ok(Expr {
                        node: Node::Name(name),
                        span,
                    });
                }
                self.bump();
                let a = self.ident()?;
                let node = if name == "id" {
                    Node::Id(a)
                } else {
                    self.expect(Tok::Comma)?;
                    let b = self.ident()?;
                    if name == "swap" {
                        Node::Swap(a, b)
                    } else {
                        Node::Braid(a, b)
                    }
                };
                self.expect(Tok::RBracket)?;
                Ok(Expr { node, span })
            }
            t => Err(syntax(span, format!("expected a map, found {}", t.describe()))),
        }
    }
}

/// Parses an expression, reporting the first syntax error with its line and column.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        (Tok::End, _) => Ok(e),
        (t, span) => Err(syntax(*span, format!("unexpected {}", t.describe()))),
    }
}
