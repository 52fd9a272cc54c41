//! Exact-arithmetic combinatorics and polyhedral geometry for the symmetric
//! pair (GL_{p+q}, GL_p × GL_q): clans and their smoothness patterns, orbit
//! closure membership by rank conditions, torus fixed points of the
//! configuration spaces built from words, their moment images, tangent
//! weights, and the resulting moment polytopes with exact f-vectors.
//!
//! Every computation is over the rationals with no floating point and no
//! tolerances; counts such as vertex and facet numbers are bit-exact.

pub mod bem;
pub mod clans;
pub mod error;
pub mod flags;
pub mod linalg;
pub mod polytope;
pub mod rat;
pub mod report;
pub mod table;
pub mod weyl;

pub use error::{Error, Result};
pub use weyl::{Permutation, QVec, Word};
