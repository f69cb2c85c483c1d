//! Change of base along a functor `c: y -> z`: direct image, pullback and
//! comma functors between slices, their adjunction data, and the
//! admissibility check for a reflection onto preorders.

pub mod adjunction;
pub mod admissible;
pub mod functors;

pub use adjunction::{
    counit, counit_natural, factorization_iso, factorization_natural, is_isomorphism, kz_witness, unit, unit_natural,
    verify_comma_adjunction, CommaAdjunctionWitness, Factorization, KzWitness,
};
pub use admissible::{
    default_samples, lifted_fully_faithful_check, AdmissibilityRecord, AdmissibilityReport, AmbientAdjunction,
    CollapseToPoint, PreorderReflection,
};
pub use functors::{comma_cell_along, comma_morphism_along, BaseChangeContext, ConstructionCache};
