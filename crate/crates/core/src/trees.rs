//! Complete binary trees, colored complete ternary trees and plane forests.
//!
//! Trees are immutable values with structural equality. Subtrees are shared
//! through `Arc`, so cloning is cheap and the generators can reuse smaller
//! trees when building larger ones.
//!
//! Canonical text format:
//!
//! | value                          | text            |
//! |--------------------------------|-----------------|
//! | binary leaf                    | `L`             |
//! | binary internal vertex         | `(<l> <r>)`     |
//! | ternary leaf with color `c`    | `c`             |
//! | ternary internal with color `c`| `(c: <a> <b> <d>)` |
//!
//! A forest is written one component per line.

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::hash::Hash;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

/// Default bound on the weight `n` accepted by the exhaustive generators.
pub const DEFAULT_MAX_N: u64 = 12;

/// Upper bound on `n` for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeCap(pub u64);

impl Default for SizeCap {
    fn default() -> Self {
        SizeCap(DEFAULT_MAX_N)
    }
}

impl SizeCap {
    pub fn check(self, n: u64) -> Result<(), SizeError> {
        if n > self.0 {
            Err(SizeError { n, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("n = {n} exceeds the enumeration cap {cap}")]
pub struct SizeError {
    pub n: u64,
    pub cap: u64,
}

/// The two tree families related by the bijection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Binary,
    ColoredTernary,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Binary => "binary",
            Family::ColoredTernary => "colored-ternary",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Behaviour shared by both tree families.
pub trait PlaneTree: Clone + Eq + Hash + fmt::Display + FromStr<Err = TreeError> {
    const FAMILY: Family;

    /// Number of vertices with children.
    fn internal_count(&self) -> u64;

    /// The index `n` of the family the tree belongs to: internal vertices for
    /// binary trees, `2p + color_sum` for colored ternary trees.
    fn weight(&self) -> u64;

    /// Ordered children (empty for a leaf).
    fn subtrees(&self) -> &[Self];

    /// Text shown next to the vertex in a drawing.
    fn vertex_label(&self) -> Option<String>;

    /// Every tree of the given weight, in canonical order. Unchecked against
    /// any cap.
    fn all_of_weight(n: u64) -> Vec<Self>;

    /// Converts a raw parse tree, failing on the first rule violation.
    /// `path` is the address prefix used in the reported violation.
    fn from_raw(raw: &RawTree, path: &mut Vec<usize>) -> Result<Self, Violation>;

    /// Graphviz rendering of the tree as a single digraph.
    fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n");
        let mut next_id = 0usize;
        write_dot_vertex(self, &mut out, &mut next_id);
        out.push_str("}\n");
        out
    }
}

fn write_dot_vertex<T: PlaneTree>(t: &T, out: &mut String, next_id: &mut usize) -> usize {
    let id = *next_id;
    *next_id += 1;
    let label = t.vertex_label().unwrap_or_default();
    if t.subtrees().is_empty() {
        if label.is_empty() {
            let _ = writeln!(out, "  v{id} [shape=point];");
        } else {
            let _ = writeln!(out, "  v{id} [shape=point, xlabel=\"{label}\"];");
        }
    } else {
        let _ = writeln!(out, "  v{id} [shape=circle, label=\"{label}\"];");
    }
    for (ordinal, child) in t.subtrees().iter().enumerate() {
        let cid = write_dot_vertex(child, out, next_id);
        let _ = writeln!(out, "  v{id} -> v{cid} [label=\"{}\"];", ordinal + 1);
    }
    id
}

// ---------------------------------------------------------------------------
// Binary trees

/// A complete binary tree: every vertex has 0 or 2 children.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryTree {
    Leaf,
    Internal(Arc<[BinaryTree; 2]>),
}

impl BinaryTree {
    pub fn internal(left: BinaryTree, right: BinaryTree) -> BinaryTree {
        BinaryTree::Internal(Arc::new([left, right]))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, BinaryTree::Leaf)
    }

    pub fn left(&self) -> Option<&BinaryTree> {
        match self {
            BinaryTree::Leaf => None,
            BinaryTree::Internal(c) => Some(&c[0]),
        }
    }

    pub fn right(&self) -> Option<&BinaryTree> {
        match self {
            BinaryTree::Leaf => None,
            BinaryTree::Internal(c) => Some(&c[1]),
        }
    }

    pub fn leaf_count(&self) -> u64 {
        self.internal_count() + 1
    }

    /// Subtree at a child-index address (`0` = left, `1` = right).
    pub fn at(&self, address: &[usize]) -> Option<&BinaryTree> {
        address.iter().try_fold(self, |t, &i| t.subtrees().get(i))
    }
}

impl PlaneTree for BinaryTree {
    const FAMILY: Family = Family::Binary;

    fn internal_count(&self) -> u64 {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Internal(c) => 1 + c[0].internal_count() + c[1].internal_count(),
        }
    }

    fn weight(&self) -> u64 {
        self.internal_count()
    }

    fn subtrees(&self) -> &[Self] {
        match self {
            BinaryTree::Leaf => &[],
            BinaryTree::Internal(c) => &c[..],
        }
    }

    fn vertex_label(&self) -> Option<String> {
        None
    }

    fn all_of_weight(n: u64) -> Vec<Self> {
        BinaryTrees::new_unchecked(n).collect()
    }

    fn from_raw(raw: &RawTree, path: &mut Vec<usize>) -> Result<Self, Violation> {
        binary_from_raw(raw, path)
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Leaf => f.write_str("L"),
            BinaryTree::Internal(c) => write!(f, "({} {})", c[0], c[1]),
        }
    }
}

impl FromStr for BinaryTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, TreeError> {
        let raw = parse_raw(s)?;
        Ok(binary_from_raw(&raw, &mut Vec::new())?)
    }
}

// ---------------------------------------------------------------------------
// Colored ternary trees

/// A complete ternary tree with a color number on every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredTernaryTree {
    color: u64,
    children: Option<Arc<[ColoredTernaryTree; 3]>>,
}

impl ColoredTernaryTree {
    pub fn leaf(color: u64) -> Self {
        ColoredTernaryTree {
            color,
            children: None,
        }
    }

    pub fn node(color: u64, children: [ColoredTernaryTree; 3]) -> Self {
        ColoredTernaryTree {
            color,
            children: Some(Arc::new(children)),
        }
    }

    pub fn color(&self) -> u64 {
        self.color
    }

    pub fn children(&self) -> Option<&[ColoredTernaryTree; 3]> {
        self.children.as_deref()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    /// Same shape, different root color.
    pub fn with_color(&self, color: u64) -> Self {
        ColoredTernaryTree {
            color,
            children: self.children.clone(),
        }
    }

    /// Sum of the color numbers over all vertices.
    pub fn color_sum(&self) -> u64 {
        self.color
            + self
                .subtrees()
                .iter()
                .map(ColoredTernaryTree::color_sum)
                .sum::<u64>()
    }

    pub fn vertex_count(&self) -> u64 {
        3 * self.internal_count() + 1
    }

    /// Same shape with the colors replaced, in preorder, by `colors`.
    ///
    /// Panics if `colors` has fewer entries than the tree has vertices.
    pub fn with_preorder_colors(&self, colors: &[u64]) -> Self {
        fn go(t: &ColoredTernaryTree, colors: &[u64], pos: &mut usize) -> ColoredTernaryTree {
            let color = colors[*pos];
            *pos += 1;
            match t.children() {
                None => ColoredTernaryTree::leaf(color),
                Some([a, b, c]) => {
                    let a = go(a, colors, pos);
                    let b = go(b, colors, pos);
                    let c = go(c, colors, pos);
                    ColoredTernaryTree::node(color, [a, b, c])
                }
            }
        }
        go(self, colors, &mut 0)
    }

    /// Colors in preorder.
    pub fn preorder_colors(&self) -> Vec<u64> {
        fn go(t: &ColoredTernaryTree, out: &mut Vec<u64>) {
            out.push(t.color);
            for c in t.subtrees() {
                go(c, out);
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }
}

impl PlaneTree for ColoredTernaryTree {
    const FAMILY: Family = Family::ColoredTernary;

    fn internal_count(&self) -> u64 {
        match self.children() {
            None => 0,
            Some(c) => 1 + c.iter().map(PlaneTree::internal_count).sum::<u64>(),
        }
    }

    fn weight(&self) -> u64 {
        2 * self.internal_count() + self.color_sum()
    }

    fn subtrees(&self) -> &[Self] {
        match &self.children {
            None => &[],
            Some(c) => &c[..],
        }
    }

    fn vertex_label(&self) -> Option<String> {
        Some(self.color.to_string())
    }

    fn all_of_weight(n: u64) -> Vec<Self> {
        (0..=n / 2)
            .flat_map(|p| ColoredTernaryTrees::new_unchecked(n, p))
            .collect()
    }

    fn from_raw(raw: &RawTree, path: &mut Vec<usize>) -> Result<Self, Violation> {
        ternary_from_raw(raw, path)
    }
}

impl fmt::Display for ColoredTernaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.children() {
            None => write!(f, "{}", self.color),
            Some([a, b, c]) => write!(f, "({}: {} {} {})", self.color, a, b, c),
        }
    }
}

impl FromStr for ColoredTernaryTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, TreeError> {
        let raw = parse_raw(s)?;
        Ok(ternary_from_raw(&raw, &mut Vec::new())?)
    }
}

// ---------------------------------------------------------------------------
// Forests

/// An ordered sequence of `m >= 1` trees of one family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Forest<T> {
    components: Vec<T>,
}

impl<T: PlaneTree> Forest<T> {
    /// Returns `None` for an empty component list.
    pub fn new(components: Vec<T>) -> Option<Self> {
        if components.is_empty() {
            None
        } else {
            Some(Forest { components })
        }
    }

    pub fn components(&self) -> &[T] {
        &self.components
    }

    pub fn into_components(self) -> Vec<T> {
        self.components
    }

    /// Number of components `m`.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weight(&self) -> u64 {
        self.components.iter().map(PlaneTree::weight).sum()
    }

    pub fn internal_count(&self) -> u64 {
        self.components.iter().map(PlaneTree::internal_count).sum()
    }

    /// Parses one component per nonblank line. Errors carry the component
    /// index as the first element of any violation path; parse offsets are
    /// relative to the whole text.
    pub fn parse_lines(text: &str) -> Result<Self, TreeError> {
        let mut components = Vec::new();
        let mut line_start = 0usize;
        for line in text.split_inclusive('\n') {
            let body = line.trim_end_matches(['\n', '\r']);
            if !body.trim().is_empty() {
                let raw = parse_raw(body).map_err(|e| e.shifted(line_start))?;
                let mut path = vec![components.len()];
                let tree = T::from_raw(&raw, &mut path)?;
                components.push(tree);
            }
            line_start += line.len();
        }
        Forest::new(components).ok_or(TreeError::Parse(ParseError {
            offset: text.len(),
            expected: "at least one tree".into(),
            found: None,
        }))
    }
}

impl<T: PlaneTree> fmt::Display for Forest<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Raw parse trees and validation

/// Leaf token of the text format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawAtom {
    L,
    Int(i128),
}

/// Untyped parse result: arities and colors are not yet checked, so invalid
/// trees can be represented and reported on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawTree {
    Atom {
        atom: RawAtom,
        offset: usize,
    },
    List {
        color: Option<i128>,
        children: Vec<RawTree>,
        offset: usize,
    },
}

impl RawTree {
    pub fn offset(&self) -> usize {
        match self {
            RawTree::Atom { offset, .. } | RawTree::List { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {expected}, found {}", found.map(|c| format!("{c:?}")).unwrap_or_else(|| "end of input".into()))]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
    pub found: Option<char>,
}

impl ParseError {
    fn shifted(mut self, by: usize) -> Self {
        self.offset += by;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    /// An internal vertex has the wrong number of children.
    Arity {
        expected: usize,
        found: usize,
    },
    /// A color number on a binary tree vertex.
    ColorInBinary,
    /// A vertex of a colored ternary tree without a color.
    MissingColor,
    NegativeColor(i128),
    ColorOutOfRange(i128),
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::Arity { expected, found } => {
                write!(f, "vertex has {found} children, expected 0 or {expected}")
            }
            ViolationKind::ColorInBinary => f.write_str("binary tree vertex carries a color"),
            ViolationKind::MissingColor => f.write_str("colored ternary vertex has no color"),
            ViolationKind::NegativeColor(c) => write!(f, "negative color {c}"),
            ViolationKind::ColorOutOfRange(c) => write!(f, "color {c} out of range"),
        }
    }
}

/// First problem found in a tree, located by its child-index path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid {family} tree at {}: {kind}", format_path(path))]
pub struct Violation {
    pub family: Family,
    pub path: Vec<usize>,
    pub kind: ViolationKind,
}

pub fn format_path(path: &[usize]) -> String {
    if path.is_empty() {
        "root".into()
    } else {
        path.iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(".")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] Violation),
}

/// Outcome of [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub family: Family,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks a raw tree against the rules of `family`, reporting the first
/// violation in preorder.
pub fn validate(raw: &RawTree, family: Family) -> ValidationReport {
    let violation = match family {
        Family::Binary => binary_from_raw(raw, &mut Vec::new()).err(),
        Family::ColoredTernary => ternary_from_raw(raw, &mut Vec::new()).err(),
    };
    ValidationReport { family, violation }
}

/// [`validate`] for a forest; violation paths start with the component index.
pub fn validate_forest(raws: &[RawTree], family: Family) -> ValidationReport {
    for (i, raw) in raws.iter().enumerate() {
        let mut report = validate(raw, family);
        if let Some(v) = report.violation.as_mut() {
            v.path.insert(0, i);
            return report;
        }
    }
    ValidationReport {
        family,
        violation: None,
    }
}

fn binary_from_raw(raw: &RawTree, path: &mut Vec<usize>) -> Result<BinaryTree, Violation> {
    let fail = |path: &Vec<usize>, kind| Violation {
        family: Family::Binary,
        path: path.clone(),
        kind,
    };
    match raw {
        RawTree::Atom {
            atom: RawAtom::L, ..
        } => Ok(BinaryTree::Leaf),
        RawTree::Atom {
            atom: RawAtom::Int(_),
            ..
        } => Err(fail(path, ViolationKind::ColorInBinary)),
        RawTree::List { color: Some(_), .. } => Err(fail(path, ViolationKind::ColorInBinary)),
        RawTree::List {
            color: None,
            children,
            ..
        } => {
            if children.len() != 2 {
                return Err(fail(
                    path,
                    ViolationKind::Arity {
                        expected: 2,
                        found: children.len(),
                    },
                ));
            }
            let mut sub = Vec::with_capacity(2);
            for (i, c) in children.iter().enumerate() {
                path.push(i);
                sub.push(binary_from_raw(c, path)?);
                path.pop();
            }
            let right = sub.pop().unwrap();
            let left = sub.pop().unwrap();
            Ok(BinaryTree::internal(left, right))
        }
    }
}

fn ternary_from_raw(raw: &RawTree, path: &mut Vec<usize>) -> Result<ColoredTernaryTree, Violation> {
    let fail = |path: &Vec<usize>, kind| Violation {
        family: Family::ColoredTernary,
        path: path.clone(),
        kind,
    };
    let check_color = |path: &Vec<usize>, c: i128| -> Result<u64, Violation> {
        if c < 0 {
            Err(fail(path, ViolationKind::NegativeColor(c)))
        } else {
            u64::try_from(c).map_err(|_| fail(path, ViolationKind::ColorOutOfRange(c)))
        }
    };
    match raw {
        RawTree::Atom {
            atom: RawAtom::L, ..
        } => Err(fail(path, ViolationKind::MissingColor)),
        RawTree::Atom {
            atom: RawAtom::Int(c),
            ..
        } => Ok(ColoredTernaryTree::leaf(check_color(path, *c)?)),
        RawTree::List { color: None, .. } => Err(fail(path, ViolationKind::MissingColor)),
        RawTree::List {
            color: Some(c),
            children,
            ..
        } => {
            let color = check_color(path, *c)?;
            if children.len() != 3 {
                return Err(fail(
                    path,
                    ViolationKind::Arity {
                        expected: 3,
                        found: children.len(),
                    },
                ));
            }
            let mut sub = Vec::with_capacity(3);
            for (i, c) in children.iter().enumerate() {
                path.push(i);
                sub.push(ternary_from_raw(c, path)?);
                path.pop();
            }
            let sub: [ColoredTernaryTree; 3] = sub.try_into().unwrap();
            Ok(ColoredTernaryTree::node(color, sub))
        }
    }
}

/// Parses the text format without enforcing either family's rules.
/// Whitespace between tokens is free; the whole input must be one tree.
pub fn parse_raw(text: &str) -> Result<RawTree, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let tree = p.tree()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("end of input"));
    }
    Ok(tree)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, expected: &str) -> ParseError {
        let found = std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .or_else(|| self.peek().map(char::from));
        ParseError {
            offset: self.pos,
            expected: expected.into(),
            found,
        }
    }

    fn is_int_start(b: u8) -> bool {
        b.is_ascii_digit() || b == b'-'
    }

    fn int(&mut self) -> Result<i128, ParseError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.error("a decimal digit"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().map_err(|_| ParseError {
            offset: start,
            expected: "an integer that fits in 128 bits".into(),
            found: text.chars().next(),
        })
    }

    fn tree(&mut self) -> Result<RawTree, ParseError> {
        self.skip_ws();
        let offset = self.pos;
        match self.peek() {
            Some(b'L') => {
                self.pos += 1;
                Ok(RawTree::Atom {
                    atom: RawAtom::L,
                    offset,
                })
            }
            Some(b) if Self::is_int_start(b) => Ok(RawTree::Atom {
                atom: RawAtom::Int(self.int()?),
                offset,
            }),
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let mut color = None;
                let mut children = Vec::new();
                if self.peek().is_some_and(Self::is_int_start) {
                    let int_offset = self.pos;
                    let value = self.int()?;
                    self.skip_ws();
                    if self.peek() == Some(b':') {
                        self.pos += 1;
                        color = Some(value);
                    } else {
                        children.push(RawTree::Atom {
                            atom: RawAtom::Int(value),
                            offset: int_offset,
                        });
                    }
                }
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        Some(b'L' | b'(') => children.push(self.tree()?),
                        Some(b) if Self::is_int_start(b) => children.push(self.tree()?),
                        _ => return Err(self.error("a subtree or ')'")),
                    }
                }
                Ok(RawTree::List {
                    color,
                    children,
                    offset,
                })
            }
            _ => Err(self.error("'(', 'L' or a color number")),
        }
    }
}

// ---------------------------------------------------------------------------
// Generators

/// Weak compositions of `total` into `parts` nonnegative parts, in reverse
/// lexicographic order (`[total, 0, ..]` first, `[.., 0, total]` last).
#[derive(Clone, Debug)]
pub struct WeakCompositions {
    current: Option<Vec<u64>>,
    total: u64,
}

impl WeakCompositions {
    /// Zero parts admit a composition only of zero.
    pub fn new(total: u64, parts: usize) -> Self {
        let current = if parts == 0 {
            (total == 0).then(Vec::new)
        } else {
            let mut v = vec![0; parts];
            v[0] = total;
            Some(v)
        };
        WeakCompositions { current, total }
    }
}

impl Iterator for WeakCompositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.take()?;
        let k = out.len();
        if k > 0 && out[k - 1] != self.total {
            let mut next = out.clone();
            // rightmost nonzero part strictly before the last one
            let i = (0..k - 1)
                .rev()
                .find(|&i| next[i] > 0)
                .expect("a nonzero part exists");
            let tail = next[k - 1];
            next[i] -= 1;
            next[k - 1] = 0;
            next[i + 1] = tail + 1;
            self.current = Some(next);
        }
        Some(out)
    }
}

/// All complete binary trees with fewer than `upto` internal vertices, indexed
/// by size, each list in canonical order.
fn binary_table(upto: u64) -> Vec<Vec<BinaryTree>> {
    let mut table: Vec<Vec<BinaryTree>> = Vec::new();
    for s in 0..upto as usize {
        let list = if s == 0 {
            vec![BinaryTree::Leaf]
        } else {
            let mut list = Vec::new();
            for a in (0..s).rev() {
                for l in &table[a] {
                    for r in &table[s - 1 - a] {
                        list.push(BinaryTree::internal(l.clone(), r.clone()));
                    }
                }
            }
            list
        };
        table.push(list);
    }
    table
}

/// Stream of every complete binary tree with `n` internal vertices.
///
/// Canonical order: the left subtree size runs from `n - 1` down to `0`; for
/// each split, left subtrees vary slowest.
#[derive(Clone, Debug)]
pub struct BinaryTrees {
    n: u64,
    table: Vec<Vec<BinaryTree>>,
    left_size: usize,
    i: usize,
    j: usize,
    done: bool,
}

impl BinaryTrees {
    fn new_unchecked(n: u64) -> Self {
        BinaryTrees {
            n,
            table: binary_table(n),
            left_size: n.saturating_sub(1) as usize,
            i: 0,
            j: 0,
            done: false,
        }
    }
}

impl Iterator for BinaryTrees {
    type Item = BinaryTree;

    fn next(&mut self) -> Option<BinaryTree> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(BinaryTree::Leaf);
        }
        loop {
            let a = self.left_size;
            let b = self.n as usize - 1 - a;
            if self.i < self.table[a].len() {
                if self.j < self.table[b].len() {
                    let t = BinaryTree::internal(
                        self.table[a][self.i].clone(),
                        self.table[b][self.j].clone(),
                    );
                    self.j += 1;
                    return Some(t);
                }
                self.j = 0;
                self.i += 1;
            } else if a == 0 {
                self.done = true;
                return None;
            } else {
                self.left_size -= 1;
                self.i = 0;
                self.j = 0;
            }
        }
    }
}

/// Every element of the set of complete binary trees with `n` internal
/// vertices, exactly once, in canonical order.
pub fn enumerate_binary(n: u64, cap: SizeCap) -> Result<BinaryTrees, SizeError> {
    cap.check(n)?;
    Ok(BinaryTrees::new_unchecked(n))
}

/// Uncolored (all-zero) ternary shapes with `p` internal vertices for every
/// `p <= upto`. Child sizes `(a, b, c)` are ordered with `a` descending, then
/// `b` descending.
fn ternary_shape_table(upto: u64) -> Vec<Vec<ColoredTernaryTree>> {
    let mut table: Vec<Vec<ColoredTernaryTree>> = Vec::new();
    for p in 0..=upto as usize {
        let list = if p == 0 {
            vec![ColoredTernaryTree::leaf(0)]
        } else {
            let mut list = Vec::new();
            for a in (0..p).rev() {
                for b in (0..p - a).rev() {
                    let c = p - 1 - a - b;
                    for ta in &table[a] {
                        for tb in &table[b] {
                            for tc in &table[c] {
                                list.push(ColoredTernaryTree::node(
                                    0,
                                    [ta.clone(), tb.clone(), tc.clone()],
                                ));
                            }
                        }
                    }
                }
            }
            list
        };
        table.push(list);
    }
    table
}

/// Stream of every colored ternary tree with `p` internal vertices and color
/// sum `n - 2p`: shapes in canonical order, and for each shape the weak
/// compositions of `n - 2p` over its `3p + 1` vertices in preorder.
#[derive(Clone, Debug)]
pub struct ColoredTernaryTrees {
    shapes: Vec<ColoredTernaryTree>,
    shape: usize,
    colors: WeakCompositions,
    total: u64,
    parts: usize,
}

impl ColoredTernaryTrees {
    fn new_unchecked(n: u64, p: u64) -> Self {
        if 2 * p > n {
            return ColoredTernaryTrees {
                shapes: Vec::new(),
                shape: 0,
                colors: WeakCompositions::new(0, 1),
                total: 0,
                parts: 1,
            };
        }
        let total = n - 2 * p;
        let parts = (3 * p + 1) as usize;
        ColoredTernaryTrees {
            shapes: ternary_shape_table(p).pop().unwrap(),
            shape: 0,
            colors: WeakCompositions::new(total, parts),
            total,
            parts,
        }
    }
}

impl Iterator for ColoredTernaryTrees {
    type Item = ColoredTernaryTree;

    fn next(&mut self) -> Option<ColoredTernaryTree> {
        loop {
            let shape = self.shapes.get(self.shape)?;
            if let Some(colors) = self.colors.next() {
                return Some(shape.with_preorder_colors(&colors));
            }
            self.shape += 1;
            self.colors = WeakCompositions::new(self.total, self.parts);
        }
    }
}

/// Every colored ternary tree with `p` internal vertices and color sum
/// `n - 2p`. Empty when `2p > n`.
pub fn enumerate_colored_ternary(
    n: u64,
    p: u64,
    cap: SizeCap,
) -> Result<ColoredTernaryTrees, SizeError> {
    cap.check(n)?;
    Ok(ColoredTernaryTrees::new_unchecked(n, p))
}

/// Every colored ternary tree of weight `n`, i.e. the union over
/// `p = 0..=n/2`, in increasing `p`.
pub fn enumerate_colored_ternary_all(
    n: u64,
    cap: SizeCap,
) -> Result<impl Iterator<Item = ColoredTernaryTree>, SizeError> {
    cap.check(n)?;
    Ok((0..=n / 2).flat_map(move |p| ColoredTernaryTrees::new_unchecked(n, p)))
}

/// Stream of all `m`-component forests of total weight `n`. Component weights
/// follow [`WeakCompositions`] order; within one weight vector the first
/// component varies slowest.
#[derive(Clone, Debug)]
pub struct Forests<T> {
    by_weight: Vec<Vec<T>>,
    weights: WeakCompositions,
    current: Option<(Vec<u64>, Vec<usize>)>,
}

impl<T: PlaneTree> Iterator for Forests<T> {
    type Item = Forest<T>;

    fn next(&mut self) -> Option<Forest<T>> {
        if self.current.is_none() {
            let w = self.weights.next()?;
            let idx = vec![0; w.len()];
            self.current = Some((w, idx));
        }
        let (weights, idx) = self.current.as_mut().unwrap();
        let components: Vec<T> = weights
            .iter()
            .zip(idx.iter())
            .map(|(&w, &i)| self.by_weight[w as usize][i].clone())
            .collect();
        // advance the mixed-radix counter, last component fastest
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < self.by_weight[weights[pos] as usize].len() {
                break;
            }
            idx[pos] = 0;
        }
        Forest::new(components)
    }
}

/// All ordered `m`-tuples of trees of `T`'s family with total weight `n`.
///
/// Panics if `m == 0`.
pub fn enumerate_forests<T: PlaneTree>(
    n: u64,
    m: usize,
    cap: SizeCap,
) -> Result<Forests<T>, SizeError> {
    assert!(m >= 1, "a forest has at least one component");
    cap.check(n)?;
    Ok(Forests {
        by_weight: (0..=n).map(T::all_of_weight).collect(),
        weights: WeakCompositions::new(n, m),
        current: None,
    })
}

/// Canonical-text set of a stream, or the first duplicate found.
pub fn distinct_canonical<T: fmt::Display>(
    items: impl IntoIterator<Item = T>,
) -> Result<HashSet<String>, String> {
    let mut seen = HashSet::new();
    for t in items {
        let s = t.to_string();
        if !seen.insert(s.clone()) {
            return Err(s);
        }
    }
    Ok(seen)
}
