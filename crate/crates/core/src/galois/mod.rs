//! Galois points: the projection extension, its deck group, and extensions of
//! deck transformations to plane maps.

mod deck;
mod extension;
mod functions;
mod low_degree;
mod mobius;
mod model;
mod verdict;

pub use deck::{
    deck_group_from_candidates, deck_group_search, deck_verify, express_sigma_on_x, fiber_coordinates, projection_forms,
    GaloisCertificate, GaloisMethod, GaloisVerdict,
};
pub use extension::{check_extension, jonquieres_builder, linear_extension_solver, ExtensionCheck, LinearOutcome};
pub use functions::{clear_denominators, ParamFn, RatFn};
pub use low_degree::{discriminant, galois_test_low_degree};
pub use mobius::{lemma31_formulas, mobius_solver, monic_cubic_coefficients, polynomial_form, relation_space, MobiusOutcome};
pub use model::{projection_model, ProjectionModel};
pub use verdict::{
    extension_verdict, only_linear_symmetries, quadratic_involution, ElementExtension, ExtensionClass, ExtensionWitness,
};
