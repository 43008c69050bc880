//! Finiteness of Néron models of torsors and twisted roots attached to a
//! nodal curve, computed from its dual graph.
//!
//! The crate works with a connected [`MultiGraph`] (loops and parallel edges
//! allowed) whose edges carry a thickness and a stabilizer order. From it we
//! compute the component group `Phi` of the Néron model of the Jacobian, the
//! circuit invariant `c`, the thickness invariant `t`, the indices `m2, m3`
//! and the finiteness verdicts of [`analyze`].

pub mod circuit;
pub mod component_group;
pub mod document;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod group;
pub mod homology;
pub mod invariants;
pub mod matrix;
pub mod smith;
pub mod verify;

pub use circuit::{
    enumerate_circuits, fundamental_cycle_basis, signed_common_edges, Circuit, Direction, OrientedCycleVector,
    Traversal, DEFAULT_CIRCUIT_CAP,
};
pub use component_group::{
    coboundary_witness, homological_criterion, is_full_r_torsion, phi_group, phi_r_torsion, spanning_tree_count,
};
pub use document::{analyze_document, parse_input, parse_report, DocumentError, InputDocument, ReportDocument};
pub use error::{Error, Result};
pub use graph::{EdgeId, EdgeRecord, MultiGraph, VertexId, VertexRecord};
pub use group::AbelianGroup;
pub use homology::{boundary_matrix, coboundary_matrix, intersection_matrix};
pub use invariants::{
    analyze, circuit_invariant_c, circuit_invariant_c_enumerated, group_neron_finite, index_m2, index_m3,
    thickness_invariant_t, torsor_neron_finite, twisted_roots_finite, AnalysisReport, ReductionData,
};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithDecomposition};
pub use verify::{verify_lemma, VerifySummary};
