//! A small language for composing linear maps, read like a string diagram:
//! `;` composes top to bottom (first-listed applies first), `*` tensors left to right.
//!
//! ```text
//! expr   := term (";" term)*
//! term   := factor ("*" factor)*
//! factor := IDENT | "id[" IDENT "]" | "swap[" IDENT "," IDENT "]"
//!         | "braid[" IDENT "," IDENT "]" | "(" expr ")"
//! ```

mod eval;
mod parse;

use std::fmt;

pub use eval::{evaluate, Environment};
pub use parse::parse;

/// 1-based position of a node in the source text.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Name(String),
    Id(String),
    Swap(String, String),
    Braid(String, String),
    /// At least two parts, applied in order.
    Compose(Vec<Expr>),
    /// At least two parts, left to right.
    Tensor(Vec<Expr>),
}

/// A parsed expression. Equality ignores source positions.
#[derive(Clone, Debug)]
pub struct Expr {
    pub node: Node,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, o: &Expr) -> bool {
        self.node == o.node
    }
}

impl Expr {
    pub fn new(node: Node) -> Expr {
        Expr {
            node,
            span: Span::default(),
        }
    }

    pub fn name(s: &str) -> Expr {
        Expr::new(Node::Name(s.to_string()))
    }

    /// `a ; b` as a two-part composition.
    pub fn then(self, o: Expr) -> Expr {
        Expr::new(Node::Compose(vec![self, o]))
    }

    pub fn tensor(self, o: Expr) -> Expr {
        Expr::new(Node::Tensor(vec![self, o]))
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match &self.node {
            Node::Compose(xs) | Node::Tensor(xs) => 1 + xs.iter().map(Expr::size).sum::<usize>(),
            _ => 1,
        }
    }
}

fn write_part(f: &mut fmt::Formatter<'_>, e: &Expr, in_tensor: bool) -> fmt::Result {
    let wrap = match &e.node {
        Node::Compose(_) => true,
        Node::Tensor(_) => in_tensor,
        _ => false,
    };
    if wrap {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Name(n) => f.write_str(n),
            Node::Id(s) => write!(f, "id[{s}]"),
            Node::Swap(a, b) => write!(f, "swap[{a},{b}]"),
            Node::Braid(a, b) => write!(f, "braid[{a},{b}]"),
            Node::Compose(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ; ")?;
                    }
                    match &x.node {
                        Node::Compose(_) => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
            Node::Tensor(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    write_part(f, x, true)?;
                }
                Ok(())
            }
        }
    }
}
