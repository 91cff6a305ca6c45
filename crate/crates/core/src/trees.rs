//! OPE channels as plane rooted binary trees.
//!
//! A channel on `N` external fields is stored as a rooted binary tree whose
//! leaves carry the labels `1..N-1`; the reference field `N` hangs above the
//! root vertex ρ*. The plane order is canonical: at every vertex the child
//! whose subtree holds the smaller minimum label goes left.
//!
//! Text form: `TREE := NODE ";" INT`, `NODE := "(" NODE "," NODE ")" | INT`,
//! whitespace ignored, e.g. `(((1,2),3),4);5` for the five-point comb.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{parse_q, qint, Q};
use crate::wpoly::WPolynomial;

pub const MAX_ENUMERATION_N: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("leaf label {0} appears more than once")]
    DuplicateLabel(u32),
    #[error("leaf labels must be exactly 1..{max}; label {label} is missing")]
    MissingLabel { label: u32, max: u32 },
    #[error("leaf label {label} outside 1..{max}")]
    LabelOutOfRange { label: u32, max: u32 },
    #[error("reference label {found} does not equal N = {expected}")]
    ReferenceMismatch { expected: usize, found: u64 },
    #[error("a channel needs N >= 3 external fields, got {0}")]
    TooSmall(usize),
    #[error("N = {0} outside the enumerable range 3..={MAX_ENUMERATION_N}")]
    OutOfRange(usize),
    #[error("node is not part of this tree")]
    UnknownNode,
    #[error("malformed tree JSON: {0}")]
    Json(String),
}

/// Index of an internal vertex in a [`ChannelTree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Either an internal vertex or the external edge with a given label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeRef {
    Vertex(VertexId),
    Leaf(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Leaf(u32),
    Internal { left: usize, right: usize },
}

/// Path from ρ* downwards: `1` = left turn, `2` = right turn.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinarySequence(pub Vec<u8>);

impl BinarySequence {
    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn turns(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Branch labels of the three edges meeting at a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
    pub up: Vec<u32>,
}

/// Immutable plane rooted binary tree encoding one OPE channel.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChannelTree {
    n: usize,
    // preorder from the root; index 0 is ρ*
    nodes: Vec<Node>,
    parent: Vec<Option<usize>>,
}

/// Recursive shape used while parsing and enumerating.
#[derive(Clone, Debug)]
enum Shape {
    Leaf(u32),
    Node(Box<Shape>, Box<Shape>),
}

impl Shape {
    fn min_label(&self) -> u32 {
        match self {
            Shape::Leaf(l) => *l,
            Shape::Node(a, b) => a.min_label().min(b.min_label()),
        }
    }

    fn leaves(&self, out: &mut Vec<u32>) {
        match self {
            Shape::Leaf(l) => out.push(*l),
            Shape::Node(a, b) => {
                a.leaves(out);
                b.leaves(out);
            }
        }
    }

    fn canonical(self) -> Shape {
        match self {
            Shape::Leaf(_) => self,
            Shape::Node(a, b) => {
                let (a, b) = (a.canonical(), b.canonical());
                if a.min_label() <= b.min_label() {
                    Shape::Node(Box::new(a), Box::new(b))
                } else {
                    Shape::Node(Box::new(b), Box::new(a))
                }
            }
        }
    }

    /// Every tree obtained by grafting leaf `label` onto one edge of `self`
    /// (including the edge above its root).
    fn graft_all(&self, label: u32) -> Vec<Shape> {
        let mut out = vec![Shape::Node(Box::new(self.clone()), Box::new(Shape::Leaf(label)))];
        if let Shape::Node(a, b) = self {
            for a2 in a.graft_all(label) {
                out.push(Shape::Node(Box::new(a2), b.clone()));
            }
            for b2 in b.graft_all(label) {
                out.push(Shape::Node(a.clone(), Box::new(b2)));
            }
        }
        out
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, msg: impl Into<String>) -> TreeError {
        TreeError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn expect(&mut self, byte: u8) -> Result<(), TreeError> {
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", byte as char)))
        }
    }

    fn int(&mut self) -> Result<u64, TreeError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| TreeError::Syntax { pos: start, msg: "integer too large".into() })
    }

    fn node(&mut self, depth: usize) -> Result<Shape, TreeError> {
        if depth > 4096 {
            return Err(self.err("nesting too deep"));
        }
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&b'(') {
            self.pos += 1;
            let a = self.node(depth + 1)?;
            self.expect(b',')?;
            let b = self.node(depth + 1)?;
            self.expect(b')')?;
            Ok(Shape::Node(Box::new(a), Box::new(b)))
        } else {
            let v = self.int()?;
            let label = u32::try_from(v).map_err(|_| self.err("leaf label too large"))?;
            Ok(Shape::Leaf(label))
        }
    }
}

impl ChannelTree {
    fn from_shape(shape: Shape, n: usize) -> Self {
        fn push(shape: &Shape, parent: Option<usize>, nodes: &mut Vec<Node>, parents: &mut Vec<Option<usize>>) -> usize {
            let idx = nodes.len();
            match shape {
                Shape::Leaf(l) => {
                    nodes.push(Node::Leaf(*l));
                    parents.push(parent);
                }
                Shape::Node(a, b) => {
                    nodes.push(Node::Internal { left: 0, right: 0 });
                    parents.push(parent);
                    let left = push(a, Some(idx), nodes, parents);
                    let right = push(b, Some(idx), nodes, parents);
                    nodes[idx] = Node::Internal { left, right };
                }
            }
            idx
        }
        let mut nodes = Vec::with_capacity(2 * n);
        let mut parent = Vec::with_capacity(2 * n);
        push(&shape, None, &mut nodes, &mut parent);
        ChannelTree { n, nodes, parent }
    }

    fn validated(shape: Shape, reference: Option<u64>) -> Result<Self, TreeError> {
        let mut labels = Vec::new();
        shape.leaves(&mut labels);
        let n = labels.len() + 1;
        if n < 3 {
            return Err(TreeError::TooSmall(n));
        }
        let max = (n - 1) as u32;
        let mut seen = BTreeSet::new();
        for &l in &labels {
            if l == 0 || l > max {
                return Err(TreeError::LabelOutOfRange { label: l, max });
            }
            if !seen.insert(l) {
                return Err(TreeError::DuplicateLabel(l));
            }
        }
        if let Some(label) = (1..=max).find(|l| !seen.contains(l)) {
            return Err(TreeError::MissingLabel { label, max });
        }
        if let Some(r) = reference {
            if r != n as u64 {
                return Err(TreeError::ReferenceMismatch { expected: n, found: r });
            }
        }
        Ok(Self::from_shape(shape.canonical(), n))
    }

    /// Parses `NODE ";" INT`; the reference integer must equal the inferred N.
    pub fn parse(text: &str) -> Result<Self, TreeError> {
        if !text.is_ascii() {
            return Err(TreeError::Syntax { pos: 0, msg: "non-ASCII input".into() });
        }
        let mut p = Parser { bytes: text.as_bytes(), pos: 0 };
        let shape = p.node(0)?;
        p.expect(b';')?;
        let reference = p.int()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.err("trailing characters"));
        }
        Self::validated(shape, Some(reference))
    }

    /// The left-leaning caterpillar `((…((1,2),3)…),N−1);N`.
    pub fn comb(n: usize) -> Result<Self, TreeError> {
        if n < 3 {
            return Err(TreeError::TooSmall(n));
        }
        let mut shape = Shape::Leaf(1);
        for l in 2..n as u32 {
            shape = Shape::Node(Box::new(shape), Box::new(Shape::Leaf(l)));
        }
        Self::validated(shape, None)
    }

    /// Number of external fields.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> VertexId {
        VertexId(0)
    }

    /// Internal vertices in preorder; the first is ρ*.
    pub fn vertices(&self) -> Vec<VertexId> {
        (0..self.nodes.len())
            .filter(|&k| matches!(self.nodes[k], Node::Internal { .. }))
            .map(VertexId)
            .collect()
    }

    /// Internal edges, identified with the vertices below them (all but ρ*).
    pub fn internal_edges(&self) -> Vec<VertexId> {
        self.vertices().into_iter().filter(|v| v.0 != 0).collect()
    }

    fn is_vertex(&self, v: VertexId) -> bool {
        matches!(self.nodes.get(v.0), Some(Node::Internal { .. }))
    }

    fn children(&self, v: VertexId) -> Result<(usize, usize), TreeError> {
        match self.nodes.get(v.0) {
            Some(Node::Internal { left, right }) => Ok((*left, *right)),
            _ => Err(TreeError::UnknownNode),
        }
    }

    fn leaf_index(&self, label: u32) -> Option<usize> {
        self.nodes.iter().position(|n| *n == Node::Leaf(label))
    }

    fn path_to(&self, mut idx: usize) -> BinarySequence {
        let mut seq = Vec::new();
        while let Some(p) = self.parent[idx] {
            match self.nodes[p] {
                Node::Internal { left, .. } if left == idx => seq.push(1),
                _ => seq.push(2),
            }
            idx = p;
        }
        seq.reverse();
        BinarySequence(seq)
    }

    pub fn binary_sequence(&self, node: NodeRef) -> Result<BinarySequence, TreeError> {
        match node {
            NodeRef::Vertex(v) if self.is_vertex(v) => Ok(self.path_to(v.0)),
            NodeRef::Vertex(_) => Err(TreeError::UnknownNode),
            NodeRef::Leaf(l) => self.leaf_index(l).map(|k| self.path_to(k)).ok_or(TreeError::UnknownNode),
        }
    }

    pub fn depth(&self, node: NodeRef) -> Result<usize, TreeError> {
        self.binary_sequence(node).map(|s| s.depth())
    }

    /// `g_ρ(ϖ) = Σ_a ϖ^{a−1}·[s_a = 2]`
    pub fn g_poly(&self, v: VertexId) -> Result<WPolynomial, TreeError> {
        if !self.is_vertex(v) {
            return Err(TreeError::UnknownNode);
        }
        let seq = self.path_to(v.0);
        let mut p = WPolynomial::zero();
        for (a, &s) in seq.turns().iter().enumerate() {
            if s == 2 {
                p.add_term(a as i32, Q::one());
            }
        }
        Ok(p)
    }

    /// Site polynomial of external edge `i`: `f_N = ϖ^{−1}`; for `i < N` the
    /// right turns of the path plus `ϖ^{δ_i}` when the last turn is left.
    pub fn f_poly(&self, i: u32) -> Result<WPolynomial, TreeError> {
        if i as usize == self.n {
            return Ok(WPolynomial::monomial(-1, Q::one()));
        }
        let idx = self.leaf_index(i).ok_or(TreeError::UnknownNode)?;
        let seq = self.path_to(idx);
        let mut p = WPolynomial::zero();
        for (a, &s) in seq.turns().iter().enumerate() {
            if s == 2 {
                p.add_term(a as i32, Q::one());
            }
        }
        if seq.turns().last() == Some(&1) {
            p.add_term(seq.depth() as i32, Q::one());
        }
        Ok(p)
    }

    fn collect_leaves(&self, idx: usize, out: &mut Vec<u32>) {
        match self.nodes[idx] {
            Node::Leaf(l) => out.push(l),
            Node::Internal { left, right } => {
                self.collect_leaves(left, out);
                self.collect_leaves(right, out);
            }
        }
    }

    /// Sorted leaf labels strictly below vertex `v`.
    pub fn leaves_below(&self, v: VertexId) -> Result<Vec<u32>, TreeError> {
        if !self.is_vertex(v) {
            return Err(TreeError::UnknownNode);
        }
        let mut out = Vec::new();
        self.collect_leaves(v.0, &mut out);
        out.sort_unstable();
        Ok(out)
    }

    pub fn partition(&self, v: VertexId) -> Result<Partition, TreeError> {
        let (l, r) = self.children(v)?;
        let mut left = Vec::new();
        let mut right = Vec::new();
        self.collect_leaves(l, &mut left);
        self.collect_leaves(r, &mut right);
        left.sort_unstable();
        right.sort_unstable();
        let up = (1..=self.n as u32).filter(|x| !left.contains(x) && !right.contains(x)).collect();
        Ok(Partition { left, right, up })
    }

    /// The two downward neighbours of `v`: `Ok(vertex)` or `Err(leaf label)`.
    pub fn child_nodes(&self, v: VertexId) -> Result<[NodeRef; 2], TreeError> {
        let (l, r) = self.children(v)?;
        let as_ref = |k: usize| match self.nodes[k] {
            Node::Leaf(label) => NodeRef::Leaf(label),
            Node::Internal { .. } => NodeRef::Vertex(VertexId(k)),
        };
        Ok([as_ref(l), as_ref(r)])
    }

    /// Comb numbering `[r]` with `δ_[r] = N − 2 − r`.
    pub fn comb_index(&self, v: VertexId) -> Result<usize, TreeError> {
        let depth = self.depth(NodeRef::Vertex(v))?;
        Ok(self.n - 2 - depth)
    }

    /// Stable textual vertex id: `v` followed by its binary sequence.
    pub fn vertex_label(&self, v: VertexId) -> String {
        format!("v{}", self.path_to(v.0))
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.vertices().into_iter().find(|v| self.vertex_label(*v) == label)
    }

    pub fn is_comb(&self) -> bool {
        *self == Self::comb(self.n).expect("n >= 3 by construction")
    }

    fn write_node(&self, idx: usize, out: &mut String) {
        match self.nodes[idx] {
            Node::Leaf(l) => out.push_str(&l.to_string()),
            Node::Internal { left, right } => {
                out.push('(');
                self.write_node(left, out);
                out.push(',');
                self.write_node(right, out);
                out.push(')');
            }
        }
    }

    pub fn to_newick(&self) -> String {
        let mut s = String::new();
        self.write_node(0, &mut s);
        s.push(';');
        s.push_str(&self.n.to_string());
        s
    }

    pub fn to_json(&self) -> TreeJson {
        let vertices = self
            .vertices()
            .into_iter()
            .map(|v| VertexJson {
                id: self.vertex_label(v),
                seq: self.path_to(v.0).0,
                g: self.g_poly(v).expect("vertex of this tree").to_pairs(),
            })
            .collect();
        let leaves = (1..=self.n as u32)
            .map(|i| LeafJson { i, f: self.f_poly(i).expect("label of this tree").to_pairs() })
            .collect();
        TreeJson { n: self.n, newick: self.to_newick(), vertices, leaves }
    }

    /// Rebuilds a tree from its JSON emission and checks the recorded data.
    pub fn from_json(json: &TreeJson) -> Result<Self, TreeError> {
        let tree = Self::parse(&json.newick)?;
        if tree.n != json.n {
            return Err(TreeError::Json(format!("N = {} but newick has N = {}", json.n, tree.n)));
        }
        for leaf in &json.leaves {
            let f = tree.f_poly(leaf.i)?;
            let mut recorded = WPolynomial::zero();
            for (e, c) in &leaf.f {
                recorded.add_term(*e, parse_q(c).map_err(|e| TreeError::Json(e.to_string()))?);
            }
            if f != recorded {
                return Err(TreeError::Json(format!("f_{} does not match the topology", leaf.i)));
            }
        }
        Ok(tree)
    }
}

impl fmt::Display for ChannelTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_newick())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    pub seq: Vec<u8>,
    pub g: Vec<(i32, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafJson {
    pub i: u32,
    pub f: Vec<(i32, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub newick: String,
    pub vertices: Vec<VertexJson>,
    pub leaves: Vec<LeafJson>,
}

/// `(2N−5)!!`, the number of channels on N ≥ 3 fields.
pub fn channel_count(n: usize) -> u64 {
    (1..=(2 * n as u64).saturating_sub(5)).step_by(2).product()
}

/// Calls `visit` once per channel topology on `n` fields, in a fixed order.
pub fn for_each_channel(n: usize, mut visit: impl FnMut(ChannelTree)) -> Result<(), TreeError> {
    if !(3..=MAX_ENUMERATION_N).contains(&n) {
        return Err(TreeError::OutOfRange(n));
    }
    fn grow(shape: Shape, next: u32, last: u32, n: usize, visit: &mut dyn FnMut(ChannelTree)) {
        if next > last {
            visit(ChannelTree::from_shape(shape.canonical(), n));
            return;
        }
        for s in shape.graft_all(next) {
            grow(s, next + 1, last, n, visit);
        }
    }
    grow(Shape::Leaf(1), 2, n as u32 - 1, n, &mut visit);
    Ok(())
}

/// All channel topologies on `n` fields, one canonical plane representative each.
pub fn enumerate_channels(n: usize) -> Result<Vec<ChannelTree>, TreeError> {
    let mut out = Vec::with_capacity(channel_count(n.min(MAX_ENUMERATION_N)) as usize);
    for_each_channel(n, |t| out.push(t))?;
    Ok(out)
}

/// `ϖ^{N−1−i}` as a [`WPolynomial`], the comb-channel site parameter.
pub fn comb_site_poly(n: usize, i: u32) -> WPolynomial {
    WPolynomial::monomial(n as i32 - 1 - i as i32, qint(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comb_and_balanced_trees() {
        let comb = ChannelTree::parse("(((1,2),3),4);5").unwrap();
        assert_eq!(comb.n(), 5);
        assert!(comb.is_comb());
        let balanced = ChannelTree::parse("((1,2),(3,4));5").unwrap();
        assert_eq!(balanced.n(), 5);
        assert!(!balanced.is_comb());
        assert_eq!(balanced.vertices().len(), 3);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(ChannelTree::parse("((1,1),2);3"), Err(TreeError::DuplicateLabel(1)));
        assert!(matches!(ChannelTree::parse("((1,2),3);5"), Err(TreeError::ReferenceMismatch { .. })));
        assert!(matches!(ChannelTree::parse("((1,2),4);4"), Err(TreeError::LabelOutOfRange { .. })));
        assert!(matches!(ChannelTree::parse("((1,2),3;4"), Err(TreeError::Syntax { .. })));
        assert!(matches!(ChannelTree::parse("((1,2),3);4x"), Err(TreeError::Syntax { .. })));
        assert!(matches!(ChannelTree::parse("1;2"), Err(TreeError::TooSmall(2))));
        assert!(matches!(ChannelTree::parse(""), Err(TreeError::Syntax { .. })));
    }

    #[test]
    fn parse_ignores_whitespace_and_canonicalizes_plane_order() {
        let t = ChannelTree::parse(" ( 3 , ( 2 , 1 ) ) ; 4 ").unwrap();
        assert_eq!(t.to_newick(), "((1,2),3);4");
    }

    #[test]
    fn small_channel_counts() {
        assert_eq!(enumerate_channels(3).unwrap().len(), 1);
        assert_eq!(enumerate_channels(4).unwrap().len(), 3);
        assert_eq!(enumerate_channels(6).unwrap().len(), 105);
        assert!(matches!(enumerate_channels(2), Err(TreeError::OutOfRange(2))));
        assert!(matches!(enumerate_channels(11), Err(TreeError::OutOfRange(11))));
    }

    #[test]
    fn sequences_and_depths() {
        let t = ChannelTree::parse("((1,2),3);4").unwrap();
        assert_eq!(t.binary_sequence(NodeRef::Leaf(2)).unwrap(), BinarySequence(vec![1, 2]));
        assert_eq!(t.binary_sequence(NodeRef::Vertex(t.root())).unwrap().depth(), 0);
        let comb = ChannelTree::comb(6).unwrap();
        for v in comb.vertices() {
            let r = comb.comb_index(v).unwrap();
            assert_eq!(comb.depth(NodeRef::Vertex(v)).unwrap(), 6 - 2 - r);
        }
    }

    #[test]
    fn f_polynomials_of_four_point_comb() {
        let t = ChannelTree::parse("((1,2),3);4").unwrap();
        assert_eq!(t.f_poly(1).unwrap(), WPolynomial::monomial(2, qint(1)));
        assert_eq!(t.f_poly(2).unwrap(), WPolynomial::monomial(1, qint(1)));
        assert_eq!(t.f_poly(3).unwrap(), WPolynomial::constant(qint(1)));
        assert_eq!(t.f_poly(4).unwrap(), WPolynomial::monomial(-1, qint(1)));
    }

    #[test]
    fn g_polynomials() {
        let t = ChannelTree::parse("((1,2),(3,4));5").unwrap();
        assert!(t.g_poly(t.root()).unwrap().is_zero());
        let [_, right] = t.child_nodes(t.root()).unwrap();
        let NodeRef::Vertex(rv) = right else { panic!("right child is a vertex") };
        assert_eq!(t.g_poly(rv).unwrap(), WPolynomial::constant(qint(1)));
    }

    #[test]
    fn partitions() {
        let t = ChannelTree::parse("((1,2),(3,4));5").unwrap();
        let p = t.partition(t.root()).unwrap();
        assert_eq!(p, Partition { left: vec![1, 2], right: vec![3, 4], up: vec![5] });
        let comb = ChannelTree::comb(6).unwrap();
        let v2 = comb.vertices().into_iter().find(|v| comb.comb_index(*v).unwrap() == 2).unwrap();
        assert_eq!(comb.leaves_below(v2).unwrap(), vec![1, 2, 3]);
        assert_eq!(comb.partition(v2).unwrap().up, vec![4, 5, 6]);
    }

    #[test]
    fn json_round_trip() {
        for t in enumerate_channels(6).unwrap() {
            let json = serde_json::to_string(&t.to_json()).unwrap();
            let back: TreeJson = serde_json::from_str(&json).unwrap();
            assert_eq!(ChannelTree::from_json(&back).unwrap(), t);
        }
    }

    #[test]
    fn channel_count_formula() {
        assert_eq!(channel_count(3), 1);
        assert_eq!(channel_count(4), 3);
        assert_eq!(channel_count(8), 10395);
        assert_eq!(channel_count(10), 2027025);
    }
}
