//! Exact-arithmetic engine for tau-tilting theory over finite-dimensional
//! elementary algebras presented by quivers with relations.
//!
//! The crate builds bounded path-algebra quotients with certified
//! dimension, represents modules by explicit generator actions, computes
//! Auslander-Reiten translates via minimal projective presentations and
//! the Nakayama functor, and enumerates tau-exceptional, signed
//! tau-exceptional, and brick sequences through iterated reduction to
//! endomorphism algebras of projective bundles.

pub mod algebra;
pub mod ar;
pub mod config;
pub mod decomp;
pub mod error;
pub mod field;
pub mod matrix;
pub mod module;
pub mod quiver;
pub mod sequences;
pub mod stability;
pub mod universe;
pub mod verify;

pub use algebra::{build_path_algebra, BasedAlgebra};
pub use config::Caps;
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use matrix::{ExactMatrix, Subspace};
pub use module::Module;
pub use quiver::{parse_quiver_json, QuiverPresentation, ResolvedQuiver};
