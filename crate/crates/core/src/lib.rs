//! Non-inclusion certificates for Nash arc families on resolution graphs of
//! surface singularities.
//!
//! The crate works on weighted dual graphs together with their exact
//! intersection matrices. Two rules prove `N̄_α ⊄ N̄_β`:
//!
//! * the order criterion ([`order`]): some function has smaller order along
//!   `E_α` than along `E_β`, decided on the anti-nef cone of the graph;
//! * propagation ([`certificate`]): a non-inclusion on a quotient is pulled
//!   back along a dominant birational morphism, realized for minimal graphs
//!   by the bamboo decomposition into A_m pieces ([`decompose`]).
//!
//! [`arcs`] samples truncated arcs on `z^{n+1} = xy` as an independent check
//! of the A_n orders.

pub mod arcs;
pub mod certificate;
pub mod classify;
pub mod contraction;
pub mod cycle;
pub mod decompose;
pub mod error;
pub mod generate;
pub mod graph;
pub mod matrix;
pub mod order;
pub mod report;

pub use cycle::{
    fundamental_cycle, is_anti_nef, is_rational, order_cycle_witness, ray_basis, Cycle, RayBasis,
};
pub use error::{Error, Result};
pub use graph::WeightedDualGraph;
pub use matrix::RationalMatrix;
pub use order::{relate, relation_matrix, NashRelation, RelationMatrix, Verdict};
