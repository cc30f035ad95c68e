//! Piecewise polynomial differential forms on carrier families: polynomials
//! in affine simplex coordinates, local forms, compatible piecewise forms,
//! Whitney forms and the finite model spaces used for cohomology.

mod json;
mod local;
mod piecewise;
mod polynomial;
mod space;

pub use json::{ComponentJson, LocalJson, PiecewiseFormJson, TermJson};
pub use local::{check_point, determinant, index_subsets, merge_indices, IndexSet, LocalForm};
pub use piecewise::{same_family, PiecewiseForm};
pub use polynomial::{monomials_up_to, Exponents, Polynomial};
pub use space::{
    basis_pr, whitney_cells, whitney_elementary_form, whitney_local, BaseModel, DegreeBasis,
    FormSpace, WhitneyCell,
};
