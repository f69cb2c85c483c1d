//! Locally thin 2-categories: adjunctions, 2-monads and comma objects
//! decided by inequalities between parallel 1-cells.

pub mod adjunction;
pub mod comma_search;
pub mod kz_search;
pub mod monad;
pub mod pocat;

pub use adjunction::{
    adjunction_check, compose_adjunctions, is_lali, is_lari, is_rali, is_rari, left_adjoints, right_adjoints,
    Adjunction1Cell,
};
pub use comma_search::{comma_search, pullback_search, CommaCandidate};
pub use kz_search::{kz_search, KzSearchBounds, KzSearchReport};
pub use monad::{
    algebra_structures, idempotent_conditions, monad_classification, monads_on, two_adjunctions, validate_2monad,
    Adjunction2, AlgebraStructures, IdempotentConditions, Monad2Data, MonadClassification,
};
pub use pocat::{
    ord_full_subcategory, ord_one_two, pofunctors, validate_pocategory, PoCategory, PoFunctor, RawPoCategory,
};
