//! Semi-algebraic sets, piecewise-rational maps between them, and the
//! explicit maps of simplicial homotopy theory over a real closed field.

use thiserror::Error;

pub mod families;
pub mod map;
pub mod serial;
pub mod set;
pub mod verify;

pub use families::{
    contraction_homotopy, cube_simplex_pair_iso, delta_map, horn_inclusion, horn_retraction,
    loop_concat, PairIso, PairStages,
};
pub use map::{Chain, Piece, PiecewiseMap, RationalMap, SemiAlgMap};
pub use set::{
    canonical_set, cube, cube_boundary, horn, interval, simplex, simplex_base, simplex_boundary, tent,
    tent_base, tent_boundary, Formula, Rel, SemiAlgSet, SetKind, Support,
};
pub use verify::{
    algebraic_cube_points, algebraic_simplex_points, verify_identity, Mismatch, VerificationReport,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemiAlgError {
    #[error("index {index} out of range (bound {bound})")]
    BadIndex { index: usize, bound: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("vertex map is not order-preserving")]
    NotMonotone,
    #[error("point is not in the source")]
    PointOutsideSource,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no piece contains the point")]
    NoPieceContainsPoint,
    #[error("denominator of piece {piece} vanishes at the point")]
    DenominatorVanishes { piece: usize },
    #[error("a boundary point does not map to the basepoint")]
    BoundaryNotBased,
    #[error("parse error: {0}")]
    Parse(String),
}
