//! Admissible integral labelings of trivalent trees and their counts.
//!
//! A labeling puts a nonnegative integer on every edge, with the root edge
//! carrying `d`, the edge at leaf `i` carrying `cᵢ`, and the three labels around
//! every internal vertex satisfying the triangle inequalities. The number of
//! such labelings is the number of lattice points in the image of the bending
//! system of the dual triangulated polygon.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::operad::{Count, Evaluate, WElement};
use crate::tree::{caterpillar, EdgeRef, RibbonTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BendingError {
    #[error("tree {0} is not trivalent")]
    NotTrivalent(String),
    #[error("tree has {leaves} leaves but {given} leaf lengths were given")]
    LengthMismatch { leaves: usize, given: usize },
    #[error("labeling does not cover exactly the edges of the tree (first mismatch at {0})")]
    DomainMismatch(EdgeRef),
    #[error("need at least 4 side lengths, got {0}")]
    TooFewEdges(usize),
    #[error("side length {index} is zero; lengths must be positive")]
    NonPositiveLength { index: usize },
    #[error("the polygon space for these lengths is empty")]
    EmptyModuli,
    #[error("beta is defined for n >= 3, got {0}")]
    BetaOutOfRange(usize),
    #[error("malformed length list {0:?}")]
    BadLengths(String),
}

/// Side lengths `(d; c₁, …, cₙ)` with `d` the root length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LengthVector {
    pub d: u64,
    pub c: Vec<u64>,
}

impl LengthVector {
    pub fn new(d: u64, c: Vec<u64>) -> Self {
        LengthVector { d, c }
    }

    /// `r = (r₀, r₁, …)` read as `(r₀; r₁, …)`. Needs at least two entries.
    pub fn from_sides(r: &[u64]) -> Option<Self> {
        match r {
            [d, c @ ..] if !c.is_empty() => Some(LengthVector::new(*d, c.to_vec())),
            _ => None,
        }
    }

    pub fn sides(&self) -> Vec<u64> {
        let mut r = vec![self.d];
        r.extend_from_slice(&self.c);
        r
    }

    pub fn leaf_total(&self) -> u64 {
        self.c.iter().sum()
    }
}

/// Comma-separated, root length first: `"1,1,1"` is `(1; 1, 1)`.
impl FromStr for LengthVector {
    type Err = BendingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split(',')
            .map(|part| part.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| BendingError::BadLengths(s.to_string()))?;
        LengthVector::from_sides(&values).ok_or_else(|| BendingError::BadLengths(s.to_string()))
    }
}

impl fmt::Display for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.d)?;
        for x in &self.c {
            write!(f, ",{x}")?;
        }
        Ok(())
    }
}

/// Edge labels keyed by edge path.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling(BTreeMap<EdgeRef, u64>);

impl Labeling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, edge: &EdgeRef) -> Option<u64> {
        self.0.get(edge).copied()
    }

    pub fn insert(&mut self, edge: EdgeRef, value: u64) {
        self.0.insert(edge, value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EdgeRef, &u64)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Labels on the root, leaf and given internal edges.
    fn with_boundary(
        tree: &RibbonTree,
        lv: &LengthVector,
        internal: &[EdgeRef],
        values: &[u64],
    ) -> Self {
        let mut phi = Labeling::new();
        for (edge, &c) in tree.leaf_edges().into_iter().zip(&lv.c) {
            phi.insert(edge, c);
        }
        phi.insert(EdgeRef::root(), lv.d);
        for (edge, &value) in internal.iter().zip(values) {
            phi.insert(edge.clone(), value);
        }
        phi
    }
}

impl FromIterator<(EdgeRef, u64)> for Labeling {
    fn from_iter<I: IntoIterator<Item = (EdgeRef, u64)>>(iter: I) -> Self {
        Labeling(iter.into_iter().collect())
    }
}

impl Serialize for Labeling {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_map(self.0.iter().map(|(edge, value)| (edge.to_string(), value)))
    }
}

impl<'de> Deserialize<'de> for Labeling {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, u64>::deserialize(deserializer)?;
        raw.into_iter()
            .map(|(key, value)| {
                key.parse::<EdgeRef>()
                    .map(|edge| (edge, value))
                    .map_err(serde::de::Error::custom)
            })
            .collect()
    }
}

fn check_shape(tree: &RibbonTree, lv: &LengthVector) -> Result<(), BendingError> {
    if !tree.is_trivalent() {
        return Err(BendingError::NotTrivalent(tree.to_string()));
    }
    let leaves = tree.leaf_count();
    if leaves != lv.c.len() {
        return Err(BendingError::LengthMismatch {
            leaves,
            given: lv.c.len(),
        });
    }
    Ok(())
}

fn triangle(e: u64, a: u64, b: u64) -> bool {
    a.abs_diff(b) <= e && e <= a + b
}

/// Whether `phi` satisfies the boundary conditions and the triangle
/// inequalities at every internal vertex.
pub fn is_admissible(
    tree: &RibbonTree,
    phi: &Labeling,
    lv: &LengthVector,
) -> Result<bool, BendingError> {
    check_shape(tree, lv)?;
    let edges = tree.edges();
    if let Some(stray) = phi.0.keys().find(|e| !tree.contains_edge(e)) {
        return Err(BendingError::DomainMismatch(stray.clone()));
    }
    if let Some(missing) = edges.iter().find(|e| !phi.0.contains_key(e)) {
        return Err(BendingError::DomainMismatch(missing.clone()));
    }
    let value = |e: &EdgeRef| phi.0[e];
    if value(&EdgeRef::root()) != lv.d {
        return Ok(false);
    }
    if tree
        .leaf_edges()
        .iter()
        .zip(&lv.c)
        .any(|(edge, &c)| value(edge) != c)
    {
        return Ok(false);
    }
    Ok(edges
        .iter()
        .filter(|e| !tree.subtree(e).expect("edge exists").is_leaf())
        .all(|e| triangle(value(e), value(&e.child(0)), value(&e.child(1)))))
}

/// Per-edge search range used by [`enumerate_labelings_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchBox {
    /// Each internal label is at most the sum of the leaf lengths beyond it.
    Tight,
    /// Every internal label ranges over `0..=d + Σcᵢ`.
    Loose,
}

/// Every admissible labeling, by exhaustive search.
pub fn enumerate_labelings(
    tree: &RibbonTree,
    lv: &LengthVector,
) -> Result<Vec<Labeling>, BendingError> {
    enumerate_labelings_with(tree, lv, SearchBox::Tight)
}

/// Exhaustive search over internal labels. Output is lexicographic in the
/// internal labels, taken in edge-path order.
pub fn enumerate_labelings_with(
    tree: &RibbonTree,
    lv: &LengthVector,
    search: SearchBox,
) -> Result<Vec<Labeling>, BendingError> {
    check_shape(tree, lv)?;
    if tree.is_leaf() {
        let mut phi = Labeling::new();
        phi.insert(EdgeRef::root(), lv.d);
        return Ok(if lv.d == lv.c[0] {
            vec![phi]
        } else {
            Vec::new()
        });
    }
    let internal = tree.internal_edges();
    let limits: Vec<u64> = internal
        .iter()
        .map(|e| match search {
            SearchBox::Tight => lv.c[tree.leaf_range(e).expect("edge exists")].iter().sum(),
            SearchBox::Loose => lv.d + lv.leaf_total(),
        })
        .collect();
    // Every edge value lives in one flat slot; internal vertices are checked
    // as (parent, left, right) slot triples without building a labeling.
    let edges = tree.edges();
    let slot_of: HashMap<&EdgeRef, usize> = edges.iter().enumerate().map(|(k, e)| (e, k)).collect();
    let mut flat = vec![0u64; edges.len()];
    flat[slot_of[&EdgeRef::root()]] = lv.d;
    for (edge, &c) in tree.leaf_edges().iter().zip(&lv.c) {
        flat[slot_of[edge]] = c;
    }
    let free: Vec<usize> = internal.iter().map(|e| slot_of[e]).collect();
    let vertices: Vec<[usize; 3]> = edges
        .iter()
        .filter(|e| !tree.subtree(e).expect("edge exists").is_leaf())
        .map(|e| [slot_of[e], slot_of[&e.child(0)], slot_of[&e.child(1)]])
        .collect();
    let mut values = vec![0u64; internal.len()];
    let mut found = Vec::new();
    loop {
        for (&slot, &value) in free.iter().zip(&values) {
            flat[slot] = value;
        }
        if vertices
            .iter()
            .all(|&[e, a, b]| triangle(flat[e], flat[a], flat[b]))
        {
            found.push(Labeling::with_boundary(tree, lv, &internal, &values));
        }
        // Odometer with the last internal edge fastest.
        let mut slot = internal.len();
        loop {
            if slot == 0 {
                return Ok(found);
            }
            slot -= 1;
            if values[slot] < limits[slot] {
                values[slot] += 1;
                break;
            }
            values[slot] = 0;
        }
    }
}

/// Counts indexed by the label on a subtree's top edge.
type Profile = Arc<Vec<Count>>;

/// A node of a trivalent tree flattened for the counting recursion.
struct FlatNode {
    /// Children as indices into the flat list; empty for a leaf.
    children: Option<(usize, usize)>,
    leaves: std::ops::Range<usize>,
}

/// Counts labelings by dynamic programming over the tree: for each subtree and
/// each assignment of its leaf lengths, the number of labelings as a function
/// of the label on the subtree's top edge.
struct BendingCount {
    nodes: Vec<FlatNode>,
    arity: usize,
    profiles: RwLock<HashMap<(usize, Vec<u64>), Profile>>,
}

impl BendingCount {
    fn new(tree: &RibbonTree) -> Self {
        fn flatten(node: &RibbonTree, first_leaf: usize, out: &mut Vec<FlatNode>) -> usize {
            let index = out.len();
            out.push(FlatNode {
                children: None,
                leaves: first_leaf..first_leaf + node.leaf_count(),
            });
            if let [left, right] = node.children() {
                let l = flatten(left, first_leaf, out);
                let r = flatten(right, first_leaf + left.leaf_count(), out);
                out[index].children = Some((l, r));
            }
            index
        }
        let mut nodes = Vec::new();
        flatten(tree, 0, &mut nodes);
        BendingCount {
            nodes,
            arity: tree.leaf_count(),
            profiles: RwLock::new(HashMap::new()),
        }
    }

    /// `profile[a]` = number of labelings of the subtree at `node` whose top
    /// edge carries `a`, given the full leaf-length tuple `c`.
    fn profile(&self, node: usize, c: &[u64]) -> Arc<Vec<Count>> {
        let flat = &self.nodes[node];
        let local = &c[flat.leaves.clone()];
        let key = (node, local.to_vec());
        if let Some(hit) = self.profiles.read().expect("profile lock").get(&key) {
            return hit.clone();
        }
        let profile = match flat.children {
            None => {
                let mut p = vec![Count::zero(); local[0] as usize + 1];
                p[local[0] as usize] = Count::from(1u32);
                p
            }
            Some((left, right)) => {
                let (pl, pr) = (self.profile(left, c), self.profile(right, c));
                let top = local.iter().sum::<u64>() as usize;
                let mut p = vec![Count::zero(); top + 1];
                for (a, x) in pl.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (b, y) in pr.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        let product = x * y;
                        for slot in &mut p[a.abs_diff(b)..=a + b] {
                            *slot += &product;
                        }
                    }
                }
                p
            }
        };
        let profile = Arc::new(profile);
        self.profiles
            .write()
            .expect("profile lock")
            .insert(key, profile.clone());
        profile
    }
}

impl Evaluate for BendingCount {
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, d: u64, c: &[u64]) -> Count {
        if d > self.support_bound(c) {
            return Count::zero();
        }
        self.profile(0, c)[d as usize].clone()
    }

    fn support_bound(&self, c: &[u64]) -> u64 {
        c.iter().sum()
    }
}

/// The element `(d; c) ↦ #{admissible labelings of tree relative to (d; c)}`.
pub fn f_re(tree: &RibbonTree) -> Result<WElement, BendingError> {
    if !tree.is_trivalent() {
        return Err(BendingError::NotTrivalent(tree.to_string()));
    }
    Ok(WElement::from_evaluator(Arc::new(BendingCount::new(tree))))
}

/// Polygon inequalities (allowing degenerate polygons): every side is at most
/// the sum of the others.
pub fn is_nonempty(lv: &LengthVector) -> bool {
    let total = lv.d + lv.leaf_total();
    std::iter::once(lv.d)
        .chain(lv.c.iter().copied())
        .all(|side| 2 * side <= total)
}

/// No choice of signs makes `Σ ±rᵢ` vanish.
pub fn is_smooth(r: &[u64]) -> Result<bool, BendingError> {
    if let Some(index) = r.iter().position(|&x| x == 0) {
        return Err(BendingError::NonPositiveLength { index });
    }
    let total: u64 = r.iter().sum();
    if total % 2 == 1 {
        return Ok(true);
    }
    let half = (total / 2) as usize;
    let mut reachable = vec![false; half + 1];
    reachable[0] = true;
    for &x in r {
        let x = x as usize;
        for s in (x..=half).rev() {
            if reachable[s - x] {
                reachable[s] = true;
            }
        }
    }
    Ok(!reachable[half])
}

/// `β_{n,i}` counted directly: labelings of the `(n−1)`-caterpillar relative to
/// `(i; 1, …, 1)`.
pub fn beta_direct(n: usize, i: u64) -> Result<Count, BendingError> {
    if n < 3 {
        return Err(BendingError::BetaOutOfRange(n));
    }
    let tree = caterpillar(n - 1).expect("n - 1 >= 2");
    Ok(f_re(&tree)?.eval(i, &vec![1; n - 1]))
}

/// Rows `β_{3,·}, …, β_{max_n,·}`, each over `i = 0..=max_i`, by the
/// three-term recurrence from the base row `β_{3,i} = [i ≤ 2]`.
pub fn beta_table(max_n: usize, max_i: u64) -> Result<Vec<Vec<Count>>, BendingError> {
    if max_n < 3 {
        return Err(BendingError::BetaOutOfRange(max_n));
    }
    let width = max_i as usize + 1;
    let base: Vec<Count> = (0..width).map(|i| Count::from(u32::from(i <= 2))).collect();
    let mut rows = vec![base];
    for n in 4..=max_n {
        let prev = rows.last().expect("base row");
        let at = |i: usize| prev.get(i).cloned().unwrap_or_default();
        let row = (0..width)
            .map(|i| {
                if i == 0 {
                    at(1)
                } else if i < n {
                    at(i - 1) + at(i) + at(i + 1)
                } else {
                    Count::zero()
                }
            })
            .collect();
        rows.push(row);
    }
    Ok(rows)
}

/// `β_{n,i}` from the recurrence.
pub fn beta_recurrence(n: usize, i: u64) -> Result<Count, BendingError> {
    if n < 3 {
        return Err(BendingError::BetaOutOfRange(n));
    }
    // Row n only reads columns up to n of row n − 1, and so on down.
    let width = i.max(n as u64 + 1);
    let table = beta_table(n, width)?;
    Ok(table[n - 3][i as usize].clone())
}

/// Number of lattice points of the bending system of the polygon with side
/// lengths `r = (r₀, …, r_{n−1})` triangulated dually to `tree`.
pub fn lattice_count(tree: &RibbonTree, r: &[u64]) -> Result<Count, BendingError> {
    if r.len() < 4 {
        return Err(BendingError::TooFewEdges(r.len()));
    }
    if let Some(index) = r.iter().position(|&x| x == 0) {
        return Err(BendingError::NonPositiveLength { index });
    }
    let lv = LengthVector::from_sides(r).expect("len >= 4");
    check_shape(tree, &lv)?;
    if !is_nonempty(&lv) {
        return Err(BendingError::EmptyModuli);
    }
    Ok(f_re(tree)?.eval(lv.d, &lv.c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{corolla, enumerate_trivalent};

    fn n(x: u64) -> Count {
        Count::from(x)
    }

    fn t(s: &str) -> RibbonTree {
        s.parse().unwrap()
    }

    fn lv(s: &str) -> LengthVector {
        s.parse().unwrap()
    }

    #[test]
    fn length_vectors() {
        assert_eq!(lv("2,1, 1"), LengthVector::new(2, vec![1, 1]));
        assert!("3".parse::<LengthVector>().is_err());
        assert!("1,x".parse::<LengthVector>().is_err());
        assert_eq!(lv("3,1,2").to_string(), "3,1,2");
    }

    #[test]
    fn admissibility_examples() {
        let two = corolla(2).unwrap();
        let mut phi = Labeling::new();
        phi.insert(EdgeRef::root(), 1);
        phi.insert(EdgeRef::from_path(vec![0]), 1);
        phi.insert(EdgeRef::from_path(vec![1]), 1);
        assert!(is_admissible(&two, &phi, &lv("1,1,1")).unwrap());

        let cat3 = caterpillar(3).unwrap();
        let mut phi =
            Labeling::with_boundary(&cat3, &lv("1,1,1,1"), &[EdgeRef::from_path(vec![1])], &[3]);
        assert!(!is_admissible(&cat3, &phi, &lv("1,1,1,1")).unwrap());
        phi.insert(EdgeRef::from_path(vec![1]), 2);
        assert!(is_admissible(&cat3, &phi, &lv("1,1,1,1")).unwrap());

        let leaf = RibbonTree::leaf();
        let mut phi = Labeling::new();
        phi.insert(EdgeRef::root(), 2);
        assert!(is_admissible(&leaf, &phi, &lv("2,2")).unwrap());
        assert!(!is_admissible(&leaf, &phi, &lv("2,3")).unwrap());
    }

    #[test]
    fn admissibility_errors() {
        let two = corolla(2).unwrap();
        let partial: Labeling = [(EdgeRef::root(), 1)].into_iter().collect();
        assert_eq!(
            is_admissible(&two, &partial, &lv("1,1,1")),
            Err(BendingError::DomainMismatch(EdgeRef::from_path(vec![0])))
        );
        let stray: Labeling = [(EdgeRef::from_path(vec![4]), 1)].into_iter().collect();
        assert!(matches!(
            is_admissible(&two, &stray, &lv("1,1,1")),
            Err(BendingError::DomainMismatch(_))
        ));
        assert!(matches!(
            is_admissible(&two, &partial, &lv("1,1")),
            Err(BendingError::LengthMismatch {
                leaves: 2,
                given: 1
            })
        ));
        assert!(matches!(
            enumerate_labelings(&corolla(3).unwrap(), &lv("1,1,1,1")),
            Err(BendingError::NotTrivalent(_))
        ));
    }

    #[test]
    fn enumeration_examples() {
        let cat3 = caterpillar(3).unwrap();
        let found = enumerate_labelings(&cat3, &lv("1,1,1,1")).unwrap();
        let inner: Vec<u64> = found
            .iter()
            .map(|phi| phi.get(&EdgeRef::from_path(vec![1])).unwrap())
            .collect();
        assert_eq!(inner, [0, 1, 2]);

        for tree in enumerate_trivalent(4) {
            assert!(enumerate_labelings(&tree, &lv("5,1,1,1,1"))
                .unwrap()
                .is_empty());
        }

        let two = corolla(2).unwrap();
        for (d, c1, c2) in [(1, 1, 1), (3, 1, 1), (0, 2, 2), (1, 3, 1), (4, 3, 1)] {
            let count = enumerate_labelings(&two, &LengthVector::new(d, vec![c1, c2]))
                .unwrap()
                .len();
            let expected = usize::from(c1.abs_diff(c2) <= d && d <= c1 + c2);
            assert_eq!(count, expected, "({d};{c1},{c2})");
        }
    }

    #[test]
    fn tight_box_matches_loose_box() {
        for size in 1..=4 {
            for tree in enumerate_trivalent(size) {
                for d in 0..=3 {
                    let c: Vec<u64> = (0..size as u64).map(|k| (k * 2 + d) % 3).collect();
                    let v = LengthVector::new(d, c);
                    assert_eq!(
                        enumerate_labelings_with(&tree, &v, SearchBox::Tight).unwrap(),
                        enumerate_labelings_with(&tree, &v, SearchBox::Loose).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn f_re_examples() {
        let leaf = f_re(&RibbonTree::leaf()).unwrap();
        for d in 0..4 {
            for c in 0..4 {
                assert_eq!(leaf.eval(d, &[c]), n(u64::from(d == c)));
            }
        }
        let cat4 = f_re(&caterpillar(4).unwrap()).unwrap();
        assert_eq!(cat4.eval(1, &[1, 1, 1, 1]), n(6));
        for tree in enumerate_trivalent(4) {
            assert_eq!(f_re(&tree).unwrap().eval(1, &[1, 1, 1, 1]), n(6), "{tree}");
        }
        // Frozen from an independent brute-force enumeration.
        assert_eq!(
            f_re(&t("((*,*),(*,*))")).unwrap().eval(2, &[1, 2, 1, 2]),
            n(9)
        );
        assert_eq!(f_re(&t("(*,(*,*))")).unwrap().eval(3, &[2, 2, 1]), n(3));
        assert!(f_re(&corolla(3).unwrap()).is_err());
    }

    #[test]
    fn nonempty_and_smooth() {
        assert!(!is_nonempty(&lv("1,3,1")));
        assert!(is_nonempty(&lv("2,1,1")));
        assert!(is_nonempty(&lv("0,0,0")));
        assert!(!is_nonempty(&lv("4,1,1,1")));
        assert!(is_smooth(&[1, 1, 1]).unwrap());
        assert!(!is_smooth(&[1, 1, 1, 1]).unwrap());
        assert!(!is_smooth(&[2, 1, 1]).unwrap());
        assert!(is_smooth(&[3, 2, 2, 2]).unwrap());
        assert_eq!(
            is_smooth(&[1, 0]),
            Err(BendingError::NonPositiveLength { index: 1 })
        );
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_direct(4, 1).unwrap(), n(3));
        assert_eq!(beta_direct(4, 0).unwrap(), n(1));
        assert_eq!(beta_direct(4, 2).unwrap(), n(2));
        assert_eq!(beta_direct(5, 1).unwrap(), n(6));
        assert_eq!(beta_recurrence(5, 1).unwrap(), n(6));
        assert_eq!(
            beta_recurrence(4, 0).unwrap(),
            beta_recurrence(3, 1).unwrap()
        );
        for n_ in 3..=8 {
            for i in n_ as u64..n_ as u64 + 3 {
                assert!(beta_direct(n_, i).unwrap().is_zero());
                assert!(beta_recurrence(n_, i).unwrap().is_zero());
            }
        }
        assert_eq!(beta_direct(2, 0), Err(BendingError::BetaOutOfRange(2)));
    }

    #[test]
    fn lattice_count_examples() {
        let cat4 = caterpillar(4).unwrap();
        let cat3 = caterpillar(3).unwrap();
        assert_eq!(lattice_count(&cat4, &[1, 1, 1, 1, 1]).unwrap(), n(6));
        assert_eq!(lattice_count(&cat3, &[1, 1, 1, 1]).unwrap(), n(3));
        assert_eq!(
            lattice_count(&cat3, &[3, 1, 1, 1]).unwrap(),
            f_re(&cat3).unwrap().eval(3, &[1, 1, 1])
        );
        assert_eq!(
            lattice_count(&corolla(2).unwrap(), &[1, 1, 1]),
            Err(BendingError::TooFewEdges(3))
        );
        assert_eq!(
            lattice_count(&cat3, &[4, 1, 1, 1]),
            Err(BendingError::EmptyModuli)
        );
        assert_eq!(
            lattice_count(&cat3, &[1, 1, 0, 1]),
            Err(BendingError::NonPositiveLength { index: 2 })
        );
        assert!(matches!(
            lattice_count(&cat4, &[1, 1, 1, 1]),
            Err(BendingError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn labeling_edge_order() {
        let cat3 = caterpillar(3).unwrap();
        let phi =
            Labeling::with_boundary(&cat3, &lv("1,1,1,1"), &[EdgeRef::from_path(vec![1])], &[2]);
        let json = render(&phi);
        assert_eq!(json, "/=1 /0=1 /1=2 /1/0=1 /1/1=1");
    }

    fn render(phi: &Labeling) -> String {
        phi.iter()
            .map(|(e, v)| format!("{e}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}
