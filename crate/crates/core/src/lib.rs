//! Counting lattice points of bending systems on spatial polygon spaces, and
//! comparing them with tensor-product multiplicities of SO(3).
//!
//! Both counts are morphisms of operads into [`operad::WElement`]s:
//! [`kaehler::f_kaehler`] depends only on the number of leaves, while
//! [`bending::f_re`] is computed from a trivalent tree. The two agree on every
//! tree; [`verify`] checks this exhaustively at small size.

pub mod bending;
pub mod geometry;
pub mod kaehler;
pub mod notation;
pub mod operad;
pub mod tree;
pub mod verify;

pub use bending::{
    beta_direct, beta_recurrence, beta_table, enumerate_labelings, enumerate_labelings_with, f_re,
    is_admissible, is_nonempty, is_smooth, lattice_count, BendingError, Labeling, LengthVector,
    SearchBox,
};
pub use geometry::{
    bending_value, bending_values, index_partition, realize, GeometryError, IndexPartition,
    PolygonRealization,
};
pub use kaehler::{
    cg, cg_element, dim_h0, f_kaehler, f_kaehler_with, weight_oracle, Fold, KaehlerDimension,
    SpinLabel,
};
pub use notation::{parse, serialize, ParseError};
pub use operad::{
    extract_block, label_box, project_leafcount, pullback, substitute_block, w_compose, w_unit,
    Count, IndexMap, OperadError, WElement,
};
pub use tree::{
    caterpillar, corolla, enumerate_trivalent, graft, split_at_edge, tau_order, EdgeRef,
    RibbonTree, Split, TreeError,
};
pub use verify::{verify_operad_axioms, verify_recurrence, verify_theorem, VerificationReport};
