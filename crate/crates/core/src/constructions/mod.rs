//! Comma categories, pullbacks, preorder quotients, reflections,
//! coproducts and finite families.

pub mod comma;
pub mod fam;
pub mod preorder;

pub use comma::{
    comma_category, comma_factor, comma_factor_2cell, pasting_compatible, pullback_category, pullback_factor,
    CommaResult, PullbackResult,
};
pub use fam::{fam_build, FamCategory};
pub use preorder::{
    coproduct_preorder, default_targets, extensivity_check, preorder_coequalizer, preorder_reflection,
    verify_coequalizer, CoeqResult, CoproductResult, ExtensivityReport, Reflection,
};
