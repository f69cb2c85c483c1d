//! Lax slices over a base category and their coalgebra description.

pub mod coalgebra;
pub mod slice;

pub use coalgebra::{
    cell_from_coalgebra, cell_to_coalgebra, coalg_morphism_coassoc_failures, coalgebra_coassociative,
    morphism_from_coalgebra, morphism_to_coalgebra, object_from_coalgebra, object_to_coalgebra, validate_coalg_2cell,
    validate_coalg_morphism, validate_coalgebra, CoalgTwoCell, CoalgebraObject, LaxCoalgMorphism, ProductCache,
};
pub use slice::{
    lax_compose, slice_hom_category, slice_morphisms, validate_lax_2cell, whisker_base, Ambient, LaxSliceMorphism,
    LaxSliceTwoCell, SliceHom, SliceObject,
};
