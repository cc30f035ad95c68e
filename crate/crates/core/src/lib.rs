//! Exact computation of cohomology for simplicial complexes, Lie algebras and
//! trivial Lie algebroids built from piecewise polynomial forms.

pub mod algebroid;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod liealg;
pub mod mv;
pub mod polyform;
pub mod rational;
pub mod simplicial;
pub mod verify;

pub use error::{Error, Result};
