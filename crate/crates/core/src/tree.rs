//! Rooted ribbon trees.
//!
//! A tree is stored as a plane tree: every internal node keeps its children in
//! the cyclic order of its vertex, read starting just after the half-edge that
//! points toward the parent. That order, together with the root, is all the
//! ribbon structure a rooted tree carries, so two trees are isomorphic exactly
//! when their plane structures coincide.
//!
//! Leaves are numbered `1..=n` from left to right. [`HalfEdges`] rebuilds the
//! half-edge model (`ι`, `τ`) so that this numbering can be checked against the
//! cyclic order on external half-edges instead of being assumed.

use std::fmt;
use std::ops::Range;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("an internal vertex needs at least 2 children, got {0}")]
    SingleChild(usize),
    #[error("a corolla needs at least one leaf")]
    EmptyCorolla,
    #[error("a caterpillar needs at least 2 leaves, got {0}")]
    ShortCaterpillar(usize),
    #[error("leaf position {position} out of range 1..={leaves}")]
    LeafOutOfRange { position: usize, leaves: usize },
    #[error("no edge at path {0}")]
    NoSuchEdge(EdgeRef),
    #[error("edge {0} is not internal")]
    NotInternal(EdgeRef),
}

/// A rooted ribbon tree. A node with no children is a leaf.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RibbonTree {
    children: Vec<RibbonTree>,
}

/// Address of an edge: the child indices (0-based) followed from the root node.
///
/// Every node owns the edge joining it to its parent, so the empty path is the
/// root edge. Paths order lexicographically, which is preorder on edges.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef(Vec<usize>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// The root edge of a tree with at least two leaves.
    Root,
    /// The edge at leaf `i` (1-based).
    Leaf(usize),
    /// Root edge and leaf edge at once: the exceptional one-leaf tree.
    RootLeaf,
    Internal,
}

impl EdgeRef {
    pub fn root() -> Self {
        EdgeRef(Vec::new())
    }

    pub fn from_path(path: Vec<usize>) -> Self {
        EdgeRef(path)
    }

    pub fn path(&self) -> &[usize] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, index: usize) -> Self {
        let mut path = self.0.clone();
        path.push(index);
        EdgeRef(path)
    }

    /// `self` followed by `tail`.
    pub fn join(&self, tail: &EdgeRef) -> Self {
        let mut path = self.0.clone();
        path.extend_from_slice(&tail.0);
        EdgeRef(path)
    }

    /// If `self` lies at or below `prefix`, the remainder of the path.
    pub fn strip_prefix(&self, prefix: &EdgeRef) -> Option<EdgeRef> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|rest| EdgeRef(rest.to_vec()))
    }
}

/// Paths print as `/` for the root edge and `/0/1` below it.
impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("/");
        }
        for index in &self.0 {
            write!(f, "/{index}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed edge path {0:?}: expected `/` or `/i/j/...`")]
pub struct EdgeRefParseError(pub String);

impl std::str::FromStr for EdgeRef {
    type Err = EdgeRefParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "/" {
            return Ok(EdgeRef::root());
        }
        let rest = s
            .strip_prefix('/')
            .ok_or_else(|| EdgeRefParseError(s.to_string()))?;
        rest.split('/')
            .map(|part| part.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map(EdgeRef)
            .map_err(|_| EdgeRefParseError(s.to_string()))
    }
}

impl RibbonTree {
    /// The exceptional tree: one edge, root and leaf 1 at its two ends.
    pub fn leaf() -> Self {
        RibbonTree {
            children: Vec::new(),
        }
    }

    pub fn node(children: Vec<RibbonTree>) -> Result<Self, TreeError> {
        if children.len() < 2 {
            return Err(TreeError::SingleChild(children.len()));
        }
        Ok(RibbonTree { children })
    }

    pub(crate) fn binary(left: RibbonTree, right: RibbonTree) -> Self {
        RibbonTree {
            children: vec![left, right],
        }
    }

    pub fn children(&self) -> &[RibbonTree] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn leaf_count(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(RibbonTree::leaf_count).sum()
        }
    }

    /// Every internal vertex has valence 3 (two children plus the parent).
    pub fn is_trivalent(&self) -> bool {
        self.is_leaf()
            || (self.children.len() == 2 && self.children.iter().all(RibbonTree::is_trivalent))
    }

    pub fn internal_node_count(&self) -> usize {
        if self.is_leaf() {
            0
        } else {
            1 + self
                .children
                .iter()
                .map(RibbonTree::internal_node_count)
                .sum::<usize>()
        }
    }

    /// Number of edges whose two end vertices are both internal.
    pub fn internal_edge_count(&self) -> usize {
        self.internal_node_count().saturating_sub(1)
    }

    /// The subtree hanging from `edge`.
    pub fn subtree(&self, edge: &EdgeRef) -> Option<&RibbonTree> {
        edge.0
            .iter()
            .try_fold(self, |node, &index| node.children.get(index))
    }

    pub fn contains_edge(&self, edge: &EdgeRef) -> bool {
        self.subtree(edge).is_some()
    }

    /// All edges in preorder (root edge first, then lexicographic paths).
    pub fn edges(&self) -> Vec<EdgeRef> {
        fn walk(node: &RibbonTree, path: &mut Vec<usize>, out: &mut Vec<EdgeRef>) {
            out.push(EdgeRef(path.clone()));
            for (index, child) in node.children.iter().enumerate() {
                path.push(index);
                walk(child, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Internal edges in path order.
    pub fn internal_edges(&self) -> Vec<EdgeRef> {
        self.edges()
            .into_iter()
            .filter(|e| !e.is_root() && !self.subtree(e).is_some_and(RibbonTree::is_leaf))
            .collect()
    }

    /// Edges at leaves `1..=n`, in leaf order.
    pub fn leaf_edges(&self) -> Vec<EdgeRef> {
        self.edges()
            .into_iter()
            .filter(|e| self.subtree(e).is_some_and(RibbonTree::is_leaf))
            .collect()
    }

    pub fn edge_kind(&self, edge: &EdgeRef) -> Option<EdgeKind> {
        let sub = self.subtree(edge)?;
        Some(match (edge.is_root(), sub.is_leaf()) {
            (true, true) => EdgeKind::RootLeaf,
            (true, false) => EdgeKind::Root,
            (false, true) => EdgeKind::Leaf(self.leaf_range(edge)?.start + 1),
            (false, false) => EdgeKind::Internal,
        })
    }

    /// 0-based positions of the leaves lying beyond `edge`.
    pub fn leaf_range(&self, edge: &EdgeRef) -> Option<Range<usize>> {
        let mut node = self;
        let mut start = 0;
        for &index in &edge.0 {
            let children = &node.children;
            if index >= children.len() {
                return None;
            }
            start += children[..index]
                .iter()
                .map(RibbonTree::leaf_count)
                .sum::<usize>();
            node = &children[index];
        }
        Some(start..start + node.leaf_count())
    }

    /// Canonical text; isomorphic trees and only those share it.
    pub fn canonical_form(&self) -> String {
        self.to_string()
    }

    pub fn is_isomorphic(&self, other: &RibbonTree) -> bool {
        self.canonical_form() == other.canonical_form()
    }
}

impl fmt::Display for RibbonTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_leaf() {
            return f.write_str("*");
        }
        f.write_str("(")?;
        for (index, child) in self.children.iter().enumerate() {
            if index > 0 {
                f.write_str(",")?;
            }
            write!(f, "{child}")?;
        }
        f.write_str(")")
    }
}

/// The `n`-corolla: one internal vertex carrying all `n` leaves.
pub fn corolla(n: usize) -> Result<RibbonTree, TreeError> {
    match n {
        0 => Err(TreeError::EmptyCorolla),
        1 => Ok(RibbonTree::leaf()),
        _ => RibbonTree::node(vec![RibbonTree::leaf(); n]),
    }
}

/// The `n`-caterpillar, built by grafting caterpillars along the second leaf of
/// the 2-corolla.
pub fn caterpillar(n: usize) -> Result<RibbonTree, TreeError> {
    if n < 2 {
        return Err(TreeError::ShortCaterpillar(n));
    }
    let two = corolla(2)?;
    let mut tree = two.clone();
    for _ in 3..=n {
        tree = graft(&two, 2, &tree)?;
    }
    Ok(tree)
}

/// Replace leaf `position` (1-based) of `tree` by the whole of `scion`.
///
/// The leaves of `scion` take positions `position..position + m` of the result.
pub fn graft(
    tree: &RibbonTree,
    position: usize,
    scion: &RibbonTree,
) -> Result<RibbonTree, TreeError> {
    let leaves = tree.leaf_count();
    if position == 0 || position > leaves {
        return Err(TreeError::LeafOutOfRange { position, leaves });
    }
    fn replace(node: &RibbonTree, remaining: &mut usize, scion: &RibbonTree) -> RibbonTree {
        if node.is_leaf() {
            *remaining -= 1;
            return if *remaining == 0 {
                scion.clone()
            } else {
                node.clone()
            };
        }
        let mut children = Vec::with_capacity(node.children.len());
        for child in &node.children {
            if *remaining == 0 {
                children.push(child.clone());
            } else {
                children.push(replace(child, remaining, scion));
            }
        }
        RibbonTree { children }
    }
    let mut remaining = position;
    Ok(replace(tree, &mut remaining, scion))
}

/// Result of cutting a tree at an internal edge: `graft(root_side, position,
/// branch)` rebuilds the original tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub root_side: RibbonTree,
    pub branch: RibbonTree,
    pub position: usize,
}

pub fn split_at_edge(tree: &RibbonTree, edge: &EdgeRef) -> Result<Split, TreeError> {
    let branch = tree
        .subtree(edge)
        .ok_or_else(|| TreeError::NoSuchEdge(edge.clone()))?;
    if edge.is_root() || branch.is_leaf() {
        return Err(TreeError::NotInternal(edge.clone()));
    }
    let position = tree.leaf_range(edge).expect("edge exists").start + 1;
    fn cut(node: &RibbonTree, path: &[usize]) -> RibbonTree {
        match path.split_first() {
            None => RibbonTree::leaf(),
            Some((&index, rest)) => {
                let mut children = node.children.clone();
                children[index] = cut(&node.children[index], rest);
                RibbonTree { children }
            }
        }
    }
    Ok(Split {
        root_side: cut(tree, edge.path()),
        branch: branch.clone(),
        position,
    })
}

/// One representative of every isomorphism class of trivalent trees with `n`
/// leaves. Ordered by the leaf count of the first root child, then
/// recursively.
pub fn enumerate_trivalent(n: usize) -> Vec<RibbonTree> {
    let mut table: Vec<Vec<RibbonTree>> = vec![Vec::new(), vec![RibbonTree::leaf()]];
    for size in 2..=n {
        let mut trees = Vec::new();
        for left_size in 1..size {
            for left in &table[left_size] {
                for right in &table[size - left_size] {
                    trees.push(RibbonTree::binary(left.clone(), right.clone()));
                }
            }
        }
        table.push(trees);
    }
    if n == 0 {
        Vec::new()
    } else {
        table.swap_remove(n)
    }
}

/// A half-edge: the part of an edge adjacent to one of its two vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge(usize);

/// The half-edge model of a rooted ribbon tree: vertices, half-edges, the
/// involution `h ↦ -h`, and the cyclic orders `σ_v`.
///
/// Each edge gets two half-edges: `2k` at its parent-side vertex (the external
/// root vertex for the root edge) and `2k + 1` at its child-side vertex, where
/// `k` indexes edges in preorder.
#[derive(Debug, Clone)]
pub struct HalfEdges {
    edges: Vec<EdgeRef>,
    vertex_of: Vec<usize>,
    /// `sigma[h]` is the successor of `h` in the cyclic order at its vertex.
    sigma: Vec<usize>,
    valence: Vec<usize>,
}

impl HalfEdges {
    pub fn new(tree: &RibbonTree) -> Self {
        let edges = tree.edges();
        let index_of = |path: &EdgeRef| edges.binary_search(path).expect("edge in preorder");
        let count = 2 * edges.len();
        let mut vertex_of = vec![0; count];
        let mut sigma = vec![0; count];
        // Vertex 0 is the external root vertex; vertex k + 1 is the child-side
        // vertex of edge k.
        let mut valence = vec![0; edges.len() + 1];
        vertex_of[0] = 0;
        sigma[0] = 0;
        valence[0] = 1;
        for (k, edge) in edges.iter().enumerate() {
            let node = tree.subtree(edge).expect("edge exists");
            let up = 2 * k + 1;
            vertex_of[up] = k + 1;
            // Around the vertex: the half-edge toward the parent, then the
            // children's parent-side half-edges in order.
            let mut around = vec![up];
            for index in 0..node.children.len() {
                let child = index_of(&edge.child(index));
                vertex_of[2 * child] = k + 1;
                around.push(2 * child);
            }
            valence[k + 1] = around.len();
            for (pos, &h) in around.iter().enumerate() {
                sigma[h] = around[(pos + 1) % around.len()];
            }
        }
        HalfEdges {
            edges,
            vertex_of,
            sigma,
            valence,
        }
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    /// The root `r_T`: the root edge's half at the external root vertex.
    pub fn root(&self) -> HalfEdge {
        HalfEdge(0)
    }

    pub fn edge_of(&self, h: HalfEdge) -> &EdgeRef {
        &self.edges[h.0 / 2]
    }

    pub fn opposite(&self, h: HalfEdge) -> HalfEdge {
        HalfEdge(h.0 ^ 1)
    }

    pub fn sigma(&self, h: HalfEdge) -> HalfEdge {
        HalfEdge(self.sigma[h.0])
    }

    pub fn is_external(&self, h: HalfEdge) -> bool {
        self.valence[self.vertex_of[h.0]] == 1
    }

    /// `ι(h) = σ_v(-h)` with `v` the vertex at `-h`.
    pub fn iota(&self, h: HalfEdge) -> HalfEdge {
        self.sigma(self.opposite(h))
    }

    /// `τ(h) = ι^N(h)` for the least `N > 0` landing on an external half-edge.
    pub fn tau(&self, h: HalfEdge) -> HalfEdge {
        let mut next = self.iota(h);
        while !self.is_external(next) {
            next = self.iota(next);
        }
        next
    }

    pub fn external(&self) -> Vec<HalfEdge> {
        (0..self.len())
            .map(HalfEdge)
            .filter(|&h| self.is_external(h))
            .collect()
    }
}

/// External half-edges `[r, τ(r), τ²(r), …]` until `τ` returns to the root,
/// reported as the edges they belong to.
pub fn tau_order(tree: &RibbonTree) -> Vec<EdgeRef> {
    let model = HalfEdges::new(tree);
    let root = model.root();
    let mut order = vec![model.edge_of(root).clone()];
    let mut h = model.tau(root);
    while h != root {
        order.push(model.edge_of(h).clone());
        h = model.tau(h);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> RibbonTree {
        s.parse().unwrap()
    }

    #[test]
    fn corollas() {
        assert_eq!(corolla(1).unwrap().to_string(), "*");
        assert_eq!(corolla(2).unwrap().to_string(), "(*,*)");
        assert_eq!(corolla(4).unwrap().to_string(), "(*,*,*,*)");
        assert_eq!(corolla(0), Err(TreeError::EmptyCorolla));
    }

    #[test]
    fn caterpillars() {
        assert_eq!(caterpillar(2).unwrap().to_string(), "(*,*)");
        assert_eq!(caterpillar(3).unwrap().to_string(), "(*,(*,*))");
        assert_eq!(caterpillar(4).unwrap().to_string(), "(*,(*,(*,*)))");
        assert!(caterpillar(1).is_err());
        assert_eq!(caterpillar(7).unwrap().internal_edge_count(), 5);
    }

    #[test]
    fn graft_examples() {
        let five = corolla(5).unwrap();
        let three = corolla(3).unwrap();
        assert_eq!(
            graft(&five, 3, &three).unwrap().to_string(),
            "(*,*,(*,*,*),*,*)"
        );
        let two = corolla(2).unwrap();
        assert_eq!(graft(&two, 2, &two).unwrap(), caterpillar(3).unwrap());
        let tree = t("((*,*),(*,(*,*)))");
        for i in 1..=5 {
            assert_eq!(graft(&tree, i, &RibbonTree::leaf()).unwrap(), tree);
        }
        assert_eq!(
            graft(&two, 3, &two),
            Err(TreeError::LeafOutOfRange {
                position: 3,
                leaves: 2
            })
        );
        assert!(graft(&two, 0, &two).is_err());
    }

    #[test]
    fn graft_is_textual_substitution() {
        let tree = t("((*,*),(*,*,*))");
        let scion = t("(*,(*,*))");
        for i in 1..=5 {
            let text = tree.to_string();
            let star = text.match_indices('*').nth(i - 1).unwrap().0;
            let expected = format!("{}{}{}", &text[..star], scion, &text[star + 1..]);
            assert_eq!(graft(&tree, i, &scion).unwrap().to_string(), expected);
        }
    }

    #[test]
    fn split_examples() {
        let cat3 = caterpillar(3).unwrap();
        let split = split_at_edge(&cat3, &EdgeRef::from_path(vec![1])).unwrap();
        assert_eq!(split.root_side.to_string(), "(*,*)");
        assert_eq!(split.branch.to_string(), "(*,*)");
        assert_eq!(split.position, 2);

        let two = corolla(2).unwrap();
        for edge in two.edges() {
            assert!(split_at_edge(&two, &edge).is_err());
        }
        assert_eq!(
            split_at_edge(&cat3, &EdgeRef::from_path(vec![5])),
            Err(TreeError::NoSuchEdge(EdgeRef::from_path(vec![5])))
        );
    }

    #[test]
    fn split_then_graft_round_trips() {
        for n in 3..=6 {
            for tree in enumerate_trivalent(n) {
                for edge in tree.internal_edges() {
                    let s = split_at_edge(&tree, &edge).unwrap();
                    assert!(s.root_side.leaf_count() >= 2 && s.branch.leaf_count() >= 2);
                    let back = graft(&s.root_side, s.position, &s.branch).unwrap();
                    assert!(back.is_isomorphic(&tree), "{tree} at {edge}");
                }
            }
        }
    }

    #[test]
    fn edge_bookkeeping() {
        let tree = t("((*,*),(*,(*,*)))");
        assert_eq!(tree.leaf_count(), 5);
        assert_eq!(tree.edges().len(), 9);
        assert_eq!(tree.internal_edges().len(), 3);
        assert_eq!(tree.internal_edge_count(), 3);
        assert_eq!(tree.leaf_edges().len(), 5);
        let e = EdgeRef::from_path(vec![1, 1]);
        assert_eq!(tree.leaf_range(&e), Some(3..5));
        assert_eq!(tree.edge_kind(&e), Some(EdgeKind::Internal));
        assert_eq!(
            tree.edge_kind(&EdgeRef::from_path(vec![1, 0])),
            Some(EdgeKind::Leaf(3))
        );
        assert_eq!(tree.edge_kind(&EdgeRef::root()), Some(EdgeKind::Root));
        assert_eq!(
            RibbonTree::leaf().edge_kind(&EdgeRef::root()),
            Some(EdgeKind::RootLeaf)
        );
        assert_eq!(tree.edge_kind(&EdgeRef::from_path(vec![2])), None);
    }

    #[test]
    fn edge_ref_text() {
        let e = EdgeRef::from_path(vec![1, 0]);
        assert_eq!(e.to_string(), "/1/0");
        assert_eq!("/1/0".parse::<EdgeRef>().unwrap(), e);
        assert_eq!("/".parse::<EdgeRef>().unwrap(), EdgeRef::root());
        assert!("1/0".parse::<EdgeRef>().is_err());
        assert!("/a".parse::<EdgeRef>().is_err());
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_trivalent(1), vec![RibbonTree::leaf()]);
        assert_eq!(enumerate_trivalent(2), vec![corolla(2).unwrap()]);
        let three: Vec<String> = enumerate_trivalent(3)
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(three, ["(*,(*,*))", "((*,*),*)"]);
        assert!(enumerate_trivalent(0).is_empty());
    }

    #[test]
    fn isomorphism_respects_child_order() {
        let a = t("(*,(*,*))");
        let b = t("((*,*),*)");
        assert!(a.is_isomorphic(&a));
        assert!(!a.is_isomorphic(&b));
        assert_eq!(caterpillar(3).unwrap().canonical_form(), "(*,(*,*))");
    }

    #[test]
    fn tau_on_exceptional_tree() {
        let leaf = RibbonTree::leaf();
        let model = HalfEdges::new(&leaf);
        assert_eq!(model.len(), 2);
        assert_eq!(model.external().len(), 2);
        let r = model.root();
        assert_ne!(model.tau(r), r);
        assert_eq!(model.tau(model.tau(r)), r);
        assert_eq!(tau_order(&leaf), vec![EdgeRef::root(), EdgeRef::root()]);
    }

    #[test]
    fn tau_on_corolla_and_caterpillar() {
        let c4 = corolla(4).unwrap();
        let mut expected = vec![EdgeRef::root()];
        expected.extend((0..4).map(|i| EdgeRef::from_path(vec![i])));
        assert_eq!(tau_order(&c4), expected);

        let cat3 = caterpillar(3).unwrap();
        assert_eq!(
            tau_order(&cat3),
            vec![
                EdgeRef::root(),
                EdgeRef::from_path(vec![0]),
                EdgeRef::from_path(vec![1, 0]),
                EdgeRef::from_path(vec![1, 1]),
            ]
        );
    }

    #[test]
    fn tau_is_one_cycle_matching_star_order() {
        for n in 1..=6 {
            for tree in enumerate_trivalent(n) {
                let model = HalfEdges::new(&tree);
                let external = model.external();
                assert_eq!(external.len(), n + 1);
                let order = tau_order(&tree);
                assert_eq!(order.len(), n + 1, "{tree}");
                // τ permutes the external half-edges as a single cycle.
                let mut seen = std::collections::BTreeSet::new();
                let mut h = model.root();
                for _ in 0..=n {
                    assert!(seen.insert(h));
                    h = model.tau(h);
                }
                assert_eq!(h, model.root());
                if n > 1 {
                    assert_eq!(&order[1..], tree.leaf_edges().as_slice());
                }
            }
        }
        let wide = corolla(5).unwrap();
        assert_eq!(tau_order(&wide).len(), 6);
    }
}
