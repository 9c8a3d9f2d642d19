//! Spatial polygons realizing admissible labelings.
//!
//! A polygon is a closed chain `u₀ + u₁ + … + uₙ = 0` in R³ with `‖u₀‖ = d` and
//! `‖uᵢ‖ = cᵢ`. Each tree edge splits the sides into the root side `I_e` and the
//! far side `I'_e`; its bending value is `‖Σ_{i∈I_e} uᵢ‖`.
//!
//! [`realize`] builds a polygon whose bending values reproduce a given
//! admissible labeling: cut the tree at an internal edge, realize both halves,
//! rotate the branch so that its root side cancels the matching side of the
//! root half, and splice.

use std::collections::BTreeSet;

use nalgebra::{Rotation3, Unit, Vector3};
use thiserror::Error;

use crate::bending::{is_admissible, BendingError, Labeling, LengthVector};
use crate::tree::{split_at_edge, EdgeRef, RibbonTree};

pub type Vec3 = Vector3<f64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("labeling is not admissible for these lengths")]
    InadmissibleLabeling,
    #[error(transparent)]
    Bending(#[from] BendingError),
    #[error("no edge at path {0}")]
    NoSuchEdge(EdgeRef),
}

/// Absolute tolerance for lengths summing to `total`.
pub fn tolerance(total: f64) -> f64 {
    1e-9 * (1.0 + total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolygonRealization {
    pub vectors: Vec<Vec3>,
}

impl PolygonRealization {
    pub fn closure_residual(&self) -> f64 {
        self.vectors.iter().sum::<Vec3>().norm()
    }

    pub fn side_lengths(&self) -> Vec<f64> {
        self.vectors.iter().map(|u| u.norm()).collect()
    }
}

/// Indices `0..=n` of the polygon's sides, split by a tree edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexPartition {
    /// Contains the root index 0.
    pub root_side: BTreeSet<usize>,
    pub far_side: BTreeSet<usize>,
}

pub fn index_partition(tree: &RibbonTree, edge: &EdgeRef) -> Result<IndexPartition, GeometryError> {
    let leaves = tree
        .leaf_range(edge)
        .ok_or_else(|| GeometryError::NoSuchEdge(edge.clone()))?;
    let n = tree.leaf_count();
    // The root edge's far side is everything but the root itself.
    let far_side: BTreeSet<usize> = if edge.is_root() {
        (1..=n).collect()
    } else {
        leaves.map(|i| i + 1).collect()
    };
    let root_side = (0..=n).filter(|i| !far_side.contains(i)).collect();
    Ok(IndexPartition {
        root_side,
        far_side,
    })
}

/// `‖Σ_{i∈I_e} uᵢ‖`.
pub fn bending_value(u: &PolygonRealization, part: &IndexPartition) -> f64 {
    part.root_side
        .iter()
        .map(|&i| u.vectors[i])
        .sum::<Vec3>()
        .norm()
}

/// Bending values at every edge of `tree`.
pub fn bending_values(tree: &RibbonTree, u: &PolygonRealization) -> Vec<(EdgeRef, f64)> {
    tree.edges()
        .into_iter()
        .map(|e| {
            let part = index_partition(tree, &e).expect("edge of tree");
            let value = bending_value(u, &part);
            (e, value)
        })
        .collect()
}

/// The rotation taking direction `from` to direction `to` about their common
/// normal. Antiparallel directions turn by π about `e_z × from`, or `e_x` if
/// that vanishes.
fn aligning_rotation(from: &Vec3, to: &Vec3) -> Rotation3<f64> {
    let (a, b) = (from.normalize(), to.normalize());
    if let Some(r) = Rotation3::rotation_between(&a, &b) {
        return r;
    }
    let axis = Unit::try_new(Vec3::z().cross(&a), 1e-12).unwrap_or_else(Vec3::x_axis);
    Rotation3::from_axis_angle(&axis, std::f64::consts::PI)
}

fn triangle(d: f64, c1: f64, c2: f64) -> Vec<Vec3> {
    let u0 = Vec3::new(d, 0.0, 0.0);
    let u1 = if c1 == 0.0 {
        Vec3::zeros()
    } else if d == 0.0 {
        Vec3::new(c1, 0.0, 0.0)
    } else {
        // u1 + u2 = -u0 with |u1| = c1 and |u2| = c2 (law of cosines).
        let x = -(d * d + c1 * c1 - c2 * c2) / (2.0 * d);
        Vec3::new(x, (c1 * c1 - x * x).max(0.0).sqrt(), 0.0)
    };
    let u2 = if c2 == 0.0 { Vec3::zeros() } else { -u0 - u1 };
    vec![u0, u1, u2]
}

fn build(tree: &RibbonTree, lv: &LengthVector, phi: &Labeling) -> PolygonRealization {
    let d = lv.d as f64;
    if tree.is_leaf() {
        return PolygonRealization {
            vectors: vec![Vec3::new(d, 0.0, 0.0), Vec3::new(-d, 0.0, 0.0)],
        };
    }
    let internal = tree.internal_edges();
    let Some(edge) = internal.first() else {
        return PolygonRealization {
            vectors: triangle(d, lv.c[0] as f64, lv.c[1] as f64),
        };
    };
    let split = split_at_edge(tree, edge).expect("internal edge");
    let i = split.position;
    let m = split.branch.leaf_count();
    let k = phi.get(edge).expect("labeling covers tree");

    let root_lengths = LengthVector::new(lv.d, crate::operad::substitute_block(&lv.c, i, m, k));
    let branch_lengths = LengthVector::new(k, crate::operad::extract_block(&lv.c, i, m).to_vec());
    let restrict = |part: &RibbonTree, map: &dyn Fn(&EdgeRef) -> EdgeRef| -> Labeling {
        part.edges()
            .into_iter()
            .map(|e| {
                let value = phi.get(&map(&e)).expect("labeling covers tree");
                (e, value)
            })
            .collect()
    };
    // Edges of the root half keep their paths; the new leaf sits where the
    // branch was cut. Branch edges are the cut edge followed by their path.
    let root_phi = restrict(&split.root_side, &|e| e.clone());
    let branch_phi = restrict(&split.branch, &|e| edge.join(e));

    let v = build(&split.root_side, &root_lengths, &root_phi).vectors;
    let w = build(&split.branch, &branch_lengths, &branch_phi).vectors;
    let g = if k == 0 {
        Rotation3::identity()
    } else {
        aligning_rotation(&w[0], &(-v[i]))
    };
    let mut vectors = Vec::with_capacity(lv.c.len() + 1);
    vectors.extend_from_slice(&v[..i]);
    vectors.extend(w[1..].iter().map(|x| g * x));
    vectors.extend_from_slice(&v[i + 1..]);
    PolygonRealization { vectors }
}

/// A polygon with side lengths `lv` whose bending values equal `phi`.
pub fn realize(
    tree: &RibbonTree,
    lv: &LengthVector,
    phi: &Labeling,
) -> Result<PolygonRealization, GeometryError> {
    if !is_admissible(tree, phi, lv)? {
        return Err(GeometryError::InadmissibleLabeling);
    }
    Ok(build(tree, lv, phi))
}
