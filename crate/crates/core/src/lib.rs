//! Exact certificates for the generalized lower bound theorem on concrete
//! simplicial spheres, balls and polytopes.
//!
//! The crate is organized by subject:
//!
//! * [`complex`]: simplicial complexes, f- and h-vectors, missing faces, `Δ(i)`.
//! * [`homology`]: reduced homology over ℚ or 𝔽_p, sphere/ball recognition,
//!   boundary complexes, stackedness and Reisner's criterion.
//! * [`algebra`]: Stanley–Reisner ideals, artinian reductions and the weak
//!   Lefschetz property, Gröbner bases and generic initial ideals.
//! * [`geometry`]: exact rational volumes, intersection tests and
//!   certification of geometric triangulations.
//! * [`generators`]: the standard families used as test instances.
//! * [`verify`]: theorem-level pipelines and shelling search.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod homology;
pub mod linalg;
mod rng;
pub mod verify;

pub use complex::{FVector, Face, HVector, SimplicialComplex};
pub use error::{Error, Result};
pub use linalg::FieldSpec;
