//! Exact computational models of the Brauer, oriented Brauer and enhanced
//! Brauer diagram categories, their tensor functors into representations of
//! classical groups and supergroups, and the invariant-theory kernels that
//! describe what those functors annihilate.
//!
//! Everything is computed over exact rationals (or polynomials in the loop
//! parameter); there is no floating point anywhere.

pub mod checks;
pub mod diagram;
pub mod enhanced;
pub mod error;
pub mod functor;
pub mod invariants;
pub mod linalg;
pub mod oriented;
pub mod perm;
pub mod poly;
pub mod render;
pub mod space;
pub mod sum;
pub mod word;

pub use diagram::{BrauerDiagram, ScaledDiagram, Valency};
pub use error::{Error, Result};
pub use perm::Perm;
pub use poly::{Poly, Rat};
pub use sum::DiagramSum;
