//! Newick reading and writing for rooted binary leaf-labelled trees.
//!
//! Accepted: nested `(x,y)` groups, unquoted labels made of
//! `[A-Za-z0-9_.|-]`, single-quoted labels (`''` escapes a quote), optional
//! `:length` suffixes (ignored), `[...]` comments and whitespace anywhere
//! between tokens. Internal node labels are rejected. The parser is
//! iterative so arbitrarily deep trees do not exhaust the stack.

use crate::error::{Error, Result};
use crate::tree::{build_tree, build_tree_with_taxa, NodeId, TaxonSet, Topology, Tree};

pub fn parse_newick(text: &str) -> Result<(Tree, TaxonSet)> {
    build_tree(&parse_topology(text)?)
}

/// Parses a second tree that must be on exactly the taxa of `taxa`, reusing
/// its identifiers.
pub fn parse_newick_with_taxa(text: &str, taxa: &TaxonSet) -> Result<Tree> {
    build_tree_with_taxa(&parse_topology(text)?, taxa)
}

/// Parses the structure without validating binarity or label uniqueness.
pub fn parse_topology(text: &str) -> Result<Topology<String>> {
    Parser {
        src: text.as_bytes(),
        text,
        pos: 0,
    }
    .run()
}

struct Parser<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
}

fn is_label_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'_' | b'.' | b'|' | b'-')
}

impl Parser<'_> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_trivia(&mut self) -> Result<()> {
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'[' {
                let start = self.pos;
                match self.src[self.pos..].iter().position(|&c| c == b']') {
                    Some(off) => self.pos += off + 1,
                    None => {
                        self.pos = start;
                        return self.error("unterminated comment");
                    }
                }
            } else {
                break;
            }
        }
        Ok(())
    }

    /// Label at the cursor, if one starts here.
    fn label(&mut self) -> Result<Option<String>> {
        match self.peek() {
            Some(b'\'') => {
                let start = self.pos;
                self.pos += 1;
                let mut out = String::new();
                loop {
                    match self.src[self.pos..].iter().position(|&c| c == b'\'') {
                        None => {
                            self.pos = start;
                            return self.error("unterminated quoted label");
                        }
                        Some(off) => {
                            out.push_str(&self.text[self.pos..self.pos + off]);
                            self.pos += off + 1;
                            if self.peek() == Some(b'\'') {
                                out.push('\'');
                                self.pos += 1;
                            } else {
                                break;
                            }
                        }
                    }
                }
                if out.is_empty() {
                    self.pos = start;
                    return self.error("empty quoted label");
                }
                Ok(Some(out))
            }
            Some(b) if is_label_byte(b) => {
                let start = self.pos;
                while self.peek().is_some_and(is_label_byte) {
                    self.pos += 1;
                }
                Ok(Some(self.text[start..self.pos].to_string()))
            }
            _ => Ok(None),
        }
    }

    fn branch_length(&mut self) -> Result<()> {
        self.skip_trivia()?;
        if self.peek() != Some(b':') {
            return Ok(());
        }
        self.pos += 1;
        self.skip_trivia()?;
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|b| b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E'))
        {
            self.pos += 1;
        }
        if self.text[start..self.pos].parse::<f64>().is_err() {
            self.pos = start;
            return self.error("expected a number after ':'");
        }
        Ok(())
    }

    fn run(mut self) -> Result<Topology<String>> {
        let mut topo = Topology::new();
        // children collected so far for every open '('
        let mut open: Vec<Vec<usize>> = Vec::new();
        let root;
        'subtree: loop {
            self.skip_trivia()?;
            let mut node = match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    open.push(Vec::new());
                    continue 'subtree;
                }
                _ => match self.label()? {
                    Some(label) => topo.add_leaf(label),
                    None if self.peek().is_none() => return self.error("unexpected end of input"),
                    None => return self.error("expected a label or '('"),
                },
            };
            loop {
                self.branch_length()?;
                self.skip_trivia()?;
                match (self.peek(), open.last_mut()) {
                    (Some(b','), Some(children)) => {
                        children.push(node);
                        self.pos += 1;
                        continue 'subtree;
                    }
                    (Some(b')'), Some(_)) => {
                        let mut children = open.pop().unwrap();
                        children.push(node);
                        self.pos += 1;
                        node = topo.add_internal(children);
                        self.skip_trivia()?;
                        if let Some(label) = self.label()? {
                            return Err(Error::InternalLabel { node, label });
                        }
                    }
                    (Some(b';'), None) => {
                        self.pos += 1;
                        root = node;
                        break 'subtree;
                    }
                    (Some(b','), None) | (Some(b')'), None) => {
                        return self.error("unbalanced parentheses");
                    }
                    (Some(b';'), Some(_)) => return self.error("unbalanced parentheses"),
                    (None, _) => return self.error("expected ';' before end of input"),
                    (Some(_), _) => return self.error("unexpected character"),
                }
            }
        }
        self.skip_trivia()?;
        if self.pos != self.src.len() {
            return self.error("trailing content after ';'");
        }
        topo.set_root(root);
        Ok(topo)
    }
}

fn push_label(out: &mut String, label: &str) {
    if !label.is_empty() && label.bytes().all(is_label_byte) {
        out.push_str(label);
    } else {
        out.push('\'');
        out.push_str(&label.replace('\'', "''"));
        out.push('\'');
    }
}

/// Writes `tree` as Newick, children in stored order, no branch lengths.
pub fn serialize_newick(tree: &Tree, taxa: &TaxonSet) -> String {
    let mut out = String::with_capacity(tree.num_leaves() * 6);
    let mut stack: Vec<(NodeId, u8)> = vec![(tree.root(), 0)];
    while let Some(top) = stack.last_mut() {
        let (v, state) = *top;
        match (tree.children(v), state) {
            (None, _) => {
                push_label(&mut out, taxa.name(tree.taxon(v).unwrap()));
                stack.pop();
            }
            (Some([a, _]), 0) => {
                out.push('(');
                top.1 = 1;
                stack.push((a, 0));
            }
            (Some([_, b]), 1) => {
                out.push(',');
                top.1 = 2;
                stack.push((b, 0));
            }
            (Some(_), _) => {
                out.push(')');
                stack.pop();
            }
        }
    }
    out.push(';');
    out
}
