//! The bijection between colored ternary trees of weight `n` and complete
//! binary trees with `n` internal vertices.
//!
//! Forward direction (`phi`):
//!
//! 1. every vertex `v` with color `k` is pushed down below a fresh chain
//!    `v_1 .. v_k` of binary vertices, each chain vertex carrying a leaf as
//!    its left child and the next chain vertex (finally `v`) as its right
//!    child;
//! 2. every vertex with three subtrees `T1 T2 T3` keeps `T3` as its right
//!    subtree and gets a new left child whose subtrees are `T1` and `T2`.
//!
//! Inverse direction (`phi_inverse`):
//!
//! 3. on every maximal L-path `v_1 .. v_k` with `k >= 3`, `v_{2i-1}` absorbs
//!    its left child `v_{2i}` for `i <= (k-1)/2`, becoming a vertex with
//!    children (left of `v_{2i}`, right of `v_{2i}`, right of `v_{2i-1}`);
//! 4. every maximal R-path `u_1 .. u_k` is removed together with its left
//!    leaves, and the right child of `u_k` takes its place with color `k`.
//!
//! The intermediate trees of both directions have mixed arities and never
//! leave this module.

use std::fmt;
use std::mem;

use thiserror::Error;

use crate::trees::{format_path, BinaryTree, ColoredTernaryTree, Forest, PlaneTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("vertex at {} has {arity} children; only 0, 2 or 3 can be binarized", format_path(.path))]
    Arity { path: Vec<usize>, arity: usize },
    #[error("out-degree-2 vertex survived R-path contraction at {}", format_path(.path))]
    ResidualBinaryVertex { path: Vec<usize> },
}

/// Uncolored-or-colored tree with arities 0, 2 or 3.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Mixed {
    color: u64,
    children: Vec<Mixed>,
}

impl Mixed {
    fn leaf() -> Self {
        Mixed::default()
    }

    fn with_children(children: Vec<Mixed>) -> Self {
        Mixed { color: 0, children }
    }

    fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    fn is_binary(&self) -> bool {
        self.children.len() == 2
    }

    /// Out-degree-2 vertex whose left child is a leaf: a possible R-path
    /// vertex. A colored leaf is the result of an earlier R-path contraction,
    /// not a leaf of the tree being contracted, so it does not qualify.
    fn is_r_vertex(&self) -> bool {
        self.is_binary() && self.children[0].is_leaf() && self.children[0].color == 0
    }

    fn at_mut(&mut self, address: &[usize]) -> &mut Mixed {
        address.iter().fold(self, |node, &i| &mut node.children[i])
    }

    pub(crate) fn from_binary(b: &BinaryTree) -> Mixed {
        Mixed::with_children(b.subtrees().iter().map(Mixed::from_binary).collect())
    }

    fn into_ternary(self, path: &mut Vec<usize>) -> Result<ColoredTernaryTree, BijectionError> {
        match self.children.len() {
            0 => Ok(ColoredTernaryTree::leaf(self.color)),
            3 => {
                let mut kids = Vec::with_capacity(3);
                for (i, c) in self.children.into_iter().enumerate() {
                    path.push(i);
                    kids.push(c.into_ternary(path)?);
                    path.pop();
                }
                let kids: [ColoredTernaryTree; 3] = kids.try_into().expect("three children");
                Ok(ColoredTernaryTree::node(self.color, kids))
            }
            _ => Err(BijectionError::ResidualBinaryVertex { path: path.clone() }),
        }
    }
}

impl fmt::Display for Mixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_leaf() {
            return if self.color == 0 {
                f.write_str("*")
            } else {
                write!(f, "{}", self.color)
            };
        }
        f.write_str("(")?;
        if self.color != 0 {
            write!(f, "{}:", self.color)?;
        }
        for (i, c) in self.children.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

// ---------------------------------------------------------------------------
// Forward direction

/// Replaces every color `k` by a chain of `k` binary vertices above the
/// vertex, each with a left leaf. Colors are dropped.
pub(crate) fn expand_colors(t: &ColoredTernaryTree) -> Mixed {
    let mut node = Mixed::with_children(t.subtrees().iter().map(expand_colors).collect());
    for _ in 0..t.color() {
        node = Mixed::with_children(vec![Mixed::leaf(), node]);
    }
    node
}

/// Splits every out-degree-3 vertex `(T1 T2 T3)` into `((T1 T2) T3)`.
pub(crate) fn binarize(t: &Mixed) -> Result<BinaryTree, BijectionError> {
    fn go(t: &Mixed, path: &mut Vec<usize>) -> Result<BinaryTree, BijectionError> {
        let sub = |i: usize, path: &mut Vec<usize>| {
            path.push(i);
            let r = go(&t.children[i], path);
            path.pop();
            r
        };
        match t.children.len() {
            0 => Ok(BinaryTree::Leaf),
            2 => Ok(BinaryTree::internal(sub(0, path)?, sub(1, path)?)),
            3 => {
                let split = BinaryTree::internal(sub(0, path)?, sub(1, path)?);
                Ok(BinaryTree::internal(split, sub(2, path)?))
            }
            arity => Err(BijectionError::Arity {
                path: path.clone(),
                arity,
            }),
        }
    }
    go(t, &mut Vec::new())
}

/// Maps a colored ternary tree of weight `n` to a complete binary tree with
/// `n` internal vertices.
pub fn phi(t: &ColoredTernaryTree) -> Result<BinaryTree, BijectionError> {
    binarize(&expand_colors(t))
}

// ---------------------------------------------------------------------------
// Inverse direction

/// Number of vertices on the L-path that starts at `node` and follows left
/// children of out-degree-2 vertices.
fn left_spine_len(node: &Mixed) -> usize {
    let mut len = 1;
    let mut cur = node;
    while cur.is_binary() {
        cur = &cur.children[0];
        len += 1;
    }
    len
}

/// Address of the first vertex, in preorder, that starts a maximal L-path of
/// at least three vertices. A maximal L-path can only start at the root or
/// at a vertex that is not the left child of an out-degree-2 vertex.
fn find_long_l_path(node: &Mixed, can_start: bool, address: &mut Vec<usize>) -> Option<Vec<usize>> {
    if can_start && left_spine_len(node) >= 3 {
        return Some(address.clone());
    }
    let binary = node.is_binary();
    for (i, child) in node.children.iter().enumerate() {
        address.push(i);
        let found = find_long_l_path(child, !(binary && i == 0), address);
        address.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Performs the absorptions along the maximal L-path starting at `v1`.
fn absorb_l_path(v1: Mixed) -> Mixed {
    let mut rights = Vec::new();
    let mut cur = v1;
    while cur.is_binary() {
        let mut kids = mem::take(&mut cur.children);
        let right = kids.pop().unwrap();
        let left = kids.pop().unwrap();
        rights.push(right);
        cur = left;
    }
    // rights[i] is the right subtree of v_{i+1}; the path has k = rights.len() + 1 vertices
    let internal = rights.len();
    let pairs = internal / 2;
    let mut built = cur;
    if internal % 2 == 1 {
        let r = rights.pop().unwrap();
        built = Mixed::with_children(vec![built, r]);
    }
    debug_assert_eq!(rights.len(), 2 * pairs);
    for _ in 0..pairs {
        let absorbed_right = rights.pop().unwrap();
        let absorber_right = rights.pop().unwrap();
        built = Mixed::with_children(vec![built, absorbed_right, absorber_right]);
    }
    built
}

/// Absorbs along maximal L-paths of length three or more, one path at a
/// time in preorder, until none is left.
pub(crate) fn contract_l_paths(b: &BinaryTree) -> Mixed {
    let mut tree = Mixed::from_binary(b);
    while let Some(address) = find_long_l_path(&tree, true, &mut Vec::new()) {
        let slot = tree.at_mut(&address);
        let v1 = mem::take(slot);
        *slot = absorb_l_path(v1);
    }
    tree
}

/// Address of the first vertex, in preorder, that starts a maximal R-path.
/// A vertex cannot start one if it is the right child of an R-path vertex.
fn find_r_path(node: &Mixed, can_start: bool, address: &mut Vec<usize>) -> Option<Vec<usize>> {
    if can_start && node.is_r_vertex() {
        return Some(address.clone());
    }
    let r_vertex = node.is_r_vertex();
    for (i, child) in node.children.iter().enumerate() {
        address.push(i);
        let found = find_r_path(child, !(r_vertex && i == 1), address);
        address.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Collapses every maximal R-path onto the right child of its last vertex,
/// recording the path length as that vertex's color.
pub(crate) fn contract_r_paths(t: Mixed) -> Result<ColoredTernaryTree, BijectionError> {
    let mut tree = t;
    while let Some(address) = find_r_path(&tree, true, &mut Vec::new()) {
        let slot = tree.at_mut(&address);
        let mut cur = mem::take(slot);
        let mut len = 0;
        while cur.is_r_vertex() {
            cur = cur.children.pop().unwrap();
            len += 1;
        }
        debug_assert_eq!(cur.color, 0, "absorbing vertex already colored");
        cur.color = len;
        *slot = cur;
    }
    tree.into_ternary(&mut Vec::new())
}

/// Maps a complete binary tree with `n` internal vertices back to a colored
/// ternary tree of weight `n`.
pub fn phi_inverse(b: &BinaryTree) -> Result<ColoredTernaryTree, BijectionError> {
    contract_r_paths(contract_l_paths(b))
}

/// Componentwise [`phi`].
pub fn phi_forest(f: &Forest<ColoredTernaryTree>) -> Result<Forest<BinaryTree>, BijectionError> {
    let components = f
        .components()
        .iter()
        .map(phi)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Forest::new(components).expect("same number of components"))
}

/// Componentwise [`phi_inverse`].
pub fn phi_inverse_forest(
    f: &Forest<BinaryTree>,
) -> Result<Forest<ColoredTernaryTree>, BijectionError> {
    let components = f
        .components()
        .iter()
        .map(phi_inverse)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Forest::new(components).expect("same number of components"))
}

// ---------------------------------------------------------------------------
// Path analysis on binary trees

/// Child-index address of a vertex (`0` = left, `1` = right).
pub type Address = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathKind {
    /// Right-child chain whose vertices all have a leaf as left child.
    R,
    /// Left-child chain.
    L,
}

/// A downward path `v_1 .. v_k`; its length is the vertex count `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreePath {
    pub kind: PathKind,
    pub vertices: Vec<Address>,
}

impl TreePath {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Why a path cannot be extended upwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeadBlocker {
    Root,
    /// R-path: `v_1` is a left child.
    LeftChild,
    /// R-path: `v_1` is a right child but its father's left child is not a
    /// leaf.
    FatherLeftNotLeaf,
    /// L-path: `v_1` is a right child.
    RightChild,
}

/// Why a path cannot be extended downwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailBlocker {
    /// R-path: the right child of `v_k` is a leaf.
    RightChildLeaf,
    /// R-path: the left child of `v_k`'s right child is not a leaf.
    RightChildLeftNotLeaf,
    /// L-path: `v_k` is a leaf.
    Leaf,
}

/// Evidence that a path is maximal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalityWitness {
    pub path: TreePath,
    pub head: HeadBlocker,
    pub tail: TailBlocker,
}

fn is_r_vertex(b: &BinaryTree) -> bool {
    b.left().is_some_and(BinaryTree::is_leaf)
}

fn child_address(a: &[usize], i: usize) -> Address {
    let mut out = a.to_vec();
    out.push(i);
    out
}

fn is_chain(vertices: &[Address], step: usize) -> bool {
    vertices
        .windows(2)
        .all(|w| w[1] == child_address(&w[0], step))
}

/// Whether `vertices` form an R-path of `b`.
pub fn is_r_path(b: &BinaryTree, vertices: &[Address]) -> bool {
    !vertices.is_empty()
        && is_chain(vertices, 1)
        && vertices.iter().all(|a| b.at(a).is_some_and(is_r_vertex))
}

/// Whether `vertices` form an L-path of `b`.
pub fn is_l_path(b: &BinaryTree, vertices: &[Address]) -> bool {
    !vertices.is_empty() && is_chain(vertices, 0) && vertices.iter().all(|a| b.at(a).is_some())
}

/// Returns the head and tail blockers of `path` when it is a maximal path of
/// its kind, `None` otherwise.
pub fn maximality_witness(b: &BinaryTree, path: &TreePath) -> Option<MaximalityWitness> {
    let first = path.vertices.first()?;
    let last = path.vertices.last()?;
    let (head, tail) = match path.kind {
        PathKind::R => {
            if !is_r_path(b, &path.vertices) {
                return None;
            }
            let head = match first.split_last() {
                None => HeadBlocker::Root,
                Some((0, _)) => HeadBlocker::LeftChild,
                Some((_, parent)) => {
                    if is_r_vertex(b.at(parent)?) {
                        return None;
                    }
                    HeadBlocker::FatherLeftNotLeaf
                }
            };
            let u = b.at(last)?.right()?;
            let tail = if u.is_leaf() {
                TailBlocker::RightChildLeaf
            } else if !is_r_vertex(u) {
                TailBlocker::RightChildLeftNotLeaf
            } else {
                return None;
            };
            (head, tail)
        }
        PathKind::L => {
            if !is_l_path(b, &path.vertices) {
                return None;
            }
            let head = match first.last() {
                None => HeadBlocker::Root,
                Some(1) => HeadBlocker::RightChild,
                Some(_) => return None,
            };
            if !b.at(last)?.is_leaf() {
                return None;
            }
            (head, TailBlocker::Leaf)
        }
    };
    Some(MaximalityWitness {
        path: path.clone(),
        head,
        tail,
    })
}

/// Every maximal R-path of `b`, ordered by the preorder position of `v_1`.
pub fn maximal_r_paths(b: &BinaryTree) -> Vec<TreePath> {
    fn go(t: &BinaryTree, can_start: bool, address: &mut Address, out: &mut Vec<TreePath>) {
        if can_start && is_r_vertex(t) {
            let mut vertices = vec![address.clone()];
            let mut cur = t.right().unwrap();
            while is_r_vertex(cur) {
                vertices.push(child_address(vertices.last().unwrap(), 1));
                cur = cur.right().unwrap();
            }
            out.push(TreePath {
                kind: PathKind::R,
                vertices,
            });
        }
        let r = is_r_vertex(t);
        for (i, c) in t.subtrees().iter().enumerate() {
            address.push(i);
            go(c, !(r && i == 1), address, out);
            address.pop();
        }
    }
    let mut out = Vec::new();
    go(b, true, &mut Vec::new(), &mut out);
    out
}

/// Every maximal L-path of `b`, ordered by the preorder position of `v_1`.
/// They partition the vertex set.
pub fn maximal_l_paths(b: &BinaryTree) -> Vec<TreePath> {
    fn go(t: &BinaryTree, can_start: bool, address: &mut Address, out: &mut Vec<TreePath>) {
        if can_start {
            let mut vertices = vec![address.clone()];
            let mut cur = t;
            while let Some(l) = cur.left() {
                vertices.push(child_address(vertices.last().unwrap(), 0));
                cur = l;
            }
            out.push(TreePath {
                kind: PathKind::L,
                vertices,
            });
        }
        for (i, c) in t.subtrees().iter().enumerate() {
            address.push(i);
            go(c, i == 1, address, out);
            address.pop();
        }
    }
    let mut out = Vec::new();
    go(b, true, &mut Vec::new(), &mut out);
    out
}
