//! Pointwise Kan extensions, conical (co)limits, and coequalizers in the
//! lax slice over a preorder.

pub mod cones;
pub mod conical;
pub mod extension;
pub mod thin;

pub use cones::{conical_colimit, conical_limit, ConeSearchResult};
pub use conical::{conical_adjunction_check, k_object, shape_corpus, ConicalReport};
pub use extension::{left_kan, left_kan_with, right_kan, right_kan_with, to_point, KanResult};
pub use thin::{
    check_lax_coequalizer, coequalizer_preservation_check, is_lax_coequalizer, is_thin_ran, lax_slice_coequalizer,
    thin_ran, CoeqCheck, CoeqInstance, LaxCoequalizer, TestCocones,
};
