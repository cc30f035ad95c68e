//! Trivial Lie algebroids `TΔ × g` over carrier families: Künneth-split
//! algebroid forms, polynomial sections with the algebroid bracket, the Cartan
//! formula differential, and the model complexes `V ⊗ Λg*`.

mod form;
mod section;
mod space;

pub use form::{AlgebroidComponentJson, AlgebroidForm, AlgebroidFormJson, TrivialAlgebroid};
pub use section::{
    cartan_d_squared_symbolic, cartan_derivative_evaluate, cartan_derivative_symbolic, cartan_symbolic,
    directional_derivative, evaluate_algebroid_form, evaluate_on, evaluate_symbolic, pointwise_bracket,
    vector_field_bracket, BracketSign, Functional, PolySection,
};
pub use space::{build_algebroid_complex, AlgebroidSpace};
