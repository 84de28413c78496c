//! Exact fields and sparse subspace calculus.

pub mod echelon;
pub mod field;
pub mod subspace;

pub use echelon::{Echelon, SparseRow};
pub use field::{Field, FieldKind, Scalar};
pub use subspace::{
    span_dim, sum_intersection_dims, ColumnIndex, Label, SparseVector, Subspace,
    SumIntersectionDims,
};
