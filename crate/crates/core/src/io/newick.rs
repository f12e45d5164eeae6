//! Newick trees.
//!
//! Branch lengths default to 1.0. Labels may be single-quoted (with `''` for a
//! literal quote); bracketed comments are skipped.

use std::collections::HashMap;

use super::FormatError;
use crate::error::{Error, Result};
use crate::network::{PhyloNetwork, Ultranetwork};
use crate::taxa::TaxaSet;

pub const DEFAULT_BRANCH_LENGTH: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
pub struct NewickNode {
    pub name: Option<String>,
    pub length: f64,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewickTree {
    nodes: Vec<NewickNode>,
    root: usize,
}

impl NewickTree {
    pub fn nodes(&self) -> &[NewickNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Leaf node ids in left-to-right order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            let node = &self.nodes[v];
            if node.children.is_empty() {
                out.push(v);
            }
            stack.extend(node.children.iter().rev());
        }
        out
    }

    pub fn leaf_names(&self) -> Vec<Option<&str>> {
        self.leaves().into_iter().map(|v| self.nodes[v].name.as_deref()).collect()
    }
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn err(&self, msg: impl Into<String>) -> FormatError {
        FormatError::new(self.line, self.col, msg)
    }

    fn skip_ws(&mut self) -> Result<(), FormatError> {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('[') => {
                    let (line, col) = (self.line, self.col);
                    loop {
                        match self.bump() {
                            Some(']') => break,
                            Some(_) => {}
                            None => return Err(FormatError::new(line, col, "unterminated comment")),
                        }
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn expect_more(&mut self) -> Result<char, FormatError> {
        self.peek().ok_or_else(|| self.err("unexpected end of input"))
    }
}

fn is_plain(c: char) -> bool {
    !c.is_whitespace() && !"(),:;[]'".contains(c)
}

struct Parser<'a> {
    cur: Cursor<'a>,
    nodes: Vec<NewickNode>,
    leaf_pos: Vec<(String, usize, usize)>,
}

impl Parser<'_> {
    fn label(&mut self) -> Result<Option<String>, FormatError> {
        self.cur.skip_ws()?;
        match self.cur.peek() {
            Some('\'') => {
                self.cur.bump();
                let mut s = String::new();
                loop {
                    match self.cur.bump() {
                        None => return Err(self.cur.err("unterminated quoted label")),
                        Some('\'') if self.cur.peek() == Some('\'') => {
                            self.cur.bump();
                            s.push('\'');
                        }
                        Some('\'') => break,
                        Some(c) => s.push(c),
                    }
                }
                Ok(Some(s))
            }
            Some(c) if is_plain(c) => {
                let mut s = String::new();
                while let Some(c) = self.cur.peek().filter(|&c| is_plain(c)) {
                    s.push(c);
                    self.cur.bump();
                }
                Ok(Some(s))
            }
            _ => Ok(None),
        }
    }

    fn length(&mut self) -> Result<f64, FormatError> {
        self.cur.skip_ws()?;
        if self.cur.peek() != Some(':') {
            return Ok(DEFAULT_BRANCH_LENGTH);
        }
        self.cur.bump();
        self.cur.skip_ws()?;
        let (line, col) = (self.cur.line, self.cur.col);
        let mut s = String::new();
        while let Some(c) = self.cur.peek().filter(|c| c.is_ascii_digit() || "+-.eE".contains(*c)) {
            s.push(c);
            self.cur.bump();
        }
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(FormatError::new(line, col, format!("malformed branch length {s:?}"))),
        }
    }

    fn subtree(&mut self) -> Result<usize, FormatError> {
        self.cur.skip_ws()?;
        let mut children = Vec::new();
        if self.cur.expect_more()? == '(' {
            self.cur.bump();
            loop {
                children.push(self.subtree()?);
                self.cur.skip_ws()?;
                match self.cur.expect_more()? {
                    ',' => {
                        self.cur.bump();
                    }
                    ')' => {
                        self.cur.bump();
                        break;
                    }
                    c => return Err(self.cur.err(format!("expected ',' or ')', found {c:?}"))),
                }
            }
        }
        self.cur.skip_ws()?;
        let (line, col) = (self.cur.line, self.cur.col);
        let name = self.label()?;
        if children.is_empty() {
            if let Some(n) = &name {
                self.leaf_pos.push((n.clone(), line, col));
            }
        }
        let length = self.length()?;
        self.nodes.push(NewickNode { name, length, children });
        Ok(self.nodes.len() - 1)
    }

    fn tree(&mut self) -> Result<NewickTree, FormatError> {
        self.nodes.clear();
        self.leaf_pos.clear();
        let root = self.subtree()?;
        self.cur.skip_ws()?;
        match self.cur.peek() {
            Some(';') => {
                self.cur.bump();
            }
            Some(c) => return Err(self.cur.err(format!("expected ';', found {c:?}"))),
            None => return Err(self.cur.err("unexpected end of input, expected ';'")),
        }
        let mut seen = HashMap::new();
        for (name, line, col) in &self.leaf_pos {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(FormatError::new(*line, *col, format!("duplicate leaf name {name:?}")));
            }
        }
        Ok(NewickTree { nodes: std::mem::take(&mut self.nodes), root })
    }
}

/// Parses every `;`-terminated tree in `text`.
pub fn parse_newick(text: &str) -> Result<Vec<NewickTree>, FormatError> {
    let mut p = Parser {
        cur: Cursor { chars: text.chars().peekable(), line: 1, col: 1 },
        nodes: Vec::new(),
        leaf_pos: Vec::new(),
    };
    let mut trees = Vec::new();
    loop {
        p.cur.skip_ws()?;
        if p.cur.peek().is_none() {
            return Ok(trees);
        }
        trees.push(p.tree()?);
    }
}

/// Quotes a label when it contains characters with meaning in Newick.
pub fn quote_label(label: &str) -> String {
    if !label.is_empty() && label.chars().all(is_plain) {
        label.to_string()
    } else {
        format!("'{}'", label.replace('\'', "''"))
    }
}

pub fn write_newick(tree: &NewickTree) -> String {
    fn go(t: &NewickTree, v: usize, root: bool, out: &mut String) {
        let node = &t.nodes[v];
        if !node.children.is_empty() {
            out.push('(');
            for (k, c) in node.children.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                go(t, *c, false, out);
            }
            out.push(')');
        }
        if let Some(n) = &node.name {
            out.push_str(&quote_label(n));
        }
        if !root {
            out.push_str(&format!(":{}", node.length));
        }
    }
    let mut out = String::new();
    go(tree, tree.root, true, &mut out);
    out.push(';');
    out
}

/// Ultranetwork of a rooted tree. With `H` the largest root-to-leaf length, a
/// node at depth `d` sits at height `H − d`; `U(x,y)` is the height of the
/// lowest common ancestor and `U(x,x)` the height of the leaf itself, or 0 for
/// every leaf when `ultrametrize` is set.
pub fn ultranetwork_from_newick(tree: &NewickTree, ultrametrize: bool) -> Result<Ultranetwork> {
    let nodes = &tree.nodes;
    if let Some(v) = nodes.iter().position(|n| n.length < 0.0) {
        return Err(Error::InvalidTree(format!(
            "negative branch length {} above {}",
            nodes[v].length,
            nodes[v].name.as_deref().unwrap_or("an internal node")
        )));
    }
    let leaves = tree.leaves();
    let mut labels = Vec::with_capacity(leaves.len());
    for &v in &leaves {
        match &nodes[v].name {
            Some(n) => labels.push(n.clone()),
            None => return Err(Error::InvalidTree("unnamed leaf".into())),
        }
    }
    let taxa = TaxaSet::new(labels)?;
    let n = taxa.len();
    let mut leaf_index = vec![usize::MAX; nodes.len()];
    for (i, &v) in leaves.iter().enumerate() {
        leaf_index[v] = i;
    }
    let mut depth = vec![0.0; nodes.len()];
    let mut order = vec![tree.root];
    let mut k = 0;
    while k < order.len() {
        let v = order[k];
        for &c in &nodes[v].children {
            depth[c] = depth[v] + nodes[c].length;
            order.push(c);
        }
        k += 1;
    }
    let h_max = leaves.iter().map(|&v| depth[v]).fold(0.0, f64::max);
    let mut vals = vec![0.0; n * n];
    // leaf sets bottom-up; pairs split at a node get that node's height
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for &v in order.iter().rev() {
        if nodes[v].children.is_empty() {
            let i = leaf_index[v];
            vals[i * n + i] = if ultrametrize { 0.0 } else { h_max - depth[v] };
            below[v].push(i);
            continue;
        }
        let h = h_max - depth[v];
        let mut acc: Vec<usize> = Vec::new();
        for &c in &nodes[v].children {
            let part = std::mem::take(&mut below[c]);
            for &x in &acc {
                for &y in &part {
                    vals[x * n + y] = h;
                    vals[y * n + x] = h;
                }
            }
            acc.extend(part);
        }
        below[v] = acc;
    }
    let net = PhyloNetwork::from_fn(taxa, |i, j| vals[i * n + j])?;
    Ultranetwork::new(net)
}
