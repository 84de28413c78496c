//! Exact algebraic entropy for modules over group algebras and crossed
//! products `K*G` of concrete finitely generated amenable groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`groups`]: `Z^d`, `Z x Z/2` and the discrete Heisenberg group, word
//!   balls and finite-set algebra.
//! - [`folner`]: `C`-interior, exterior and boundary, Følner schemes and
//!   boundary-ratio diagnostics.
//! - [`tiling`]: ε-disjoint families, α-covers, greedy quasi-tilings,
//!   `(E, F)`-nets and the quasi-tiling upper bound.
//! - [`linalg`]: exact fields (`GF(p)`, `GF(p^2)` with Frobenius, `Q`) and
//!   sparse subspace calculus.
//! - [`crossed`]: crossed-product arithmetic, cocycle validation, the
//!   action on free modules and annihilator search.
//! - [`shift`]: subshift presentations, trajectories and quotient
//!   trajectory dimensions.
//! - [`entropy`]: entropy estimates, certified bounds, addition checks and
//!   zero-divisor scans.
//!
//! No floating point is used anywhere; every reported ratio is an exact
//! [`Rational`].

pub mod crossed;
pub mod entropy;
pub mod error;
pub mod folner;
pub mod groups;
pub mod linalg;
pub mod rational;
pub mod shift;
pub mod tiling;

pub use crossed::{CocycleData, CrossedElement, Sigma};
pub use entropy::{
    AdditionReport, BoundConfig, CertifiedBound, EntropyEstimate, RatioRow, SesRow, Verdict,
    ZeroDivisorReport,
};
pub use error::{Error, Result};
pub use folner::{FolnerScheme, SchemeKind};
pub use groups::{FiniteSubset, GroupElement, GroupKind, GroupSpec};
pub use linalg::{Field, Scalar, SparseVector, Subspace};
pub use rational::Rational;
pub use shift::{
    QuotientDim, SesDims, StabilizationConfig, SubshiftPresentation, TrajectoryResult,
};
pub use tiling::{Net, QuasiTiling};
