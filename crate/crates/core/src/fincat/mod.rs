//! Finite categories, preorders, functors and natural transformations.

mod category;
pub mod enumerate;
mod functor;
mod nat;
mod preorder;
mod product;

pub use category::{validate_category, FinCategory, Mor, Morphism, Obj, RawCategory};
pub use functor::{functor_properties, same, validate_functor, FinFunctor, FunctorProperties, RawFunctor};
pub use nat::{nat_hcomp, nat_vcomp, nat_whisker, whisker_left, whisker_right, NatTrans};
pub use preorder::{
    labeled_preorders, monotone_maps, next_permutation, preorders_up_to_iso, validate_preorder, FinPreorder,
    RawPreorder,
};
pub use product::{opposite_category, product_category, Product};

use std::sync::Arc;

use crate::error::{Error, Result};

/// The morphisms `x -> y` of `c`.
pub fn hom_set(c: &FinCategory, x: Obj, y: Obj) -> Result<&[Mor]> {
    if x >= c.num_objects() {
        return Err(Error::UnknownObject(format!("#{x}")));
    }
    if y >= c.num_objects() {
        return Err(Error::UnknownObject(format!("#{y}")));
    }
    Ok(c.hom(x, y))
}

/// Named lookup variant of [`hom_set`].
pub fn hom_set_by_name<'a>(c: &'a FinCategory, x: &str, y: &str) -> Result<&'a [Mor]> {
    let xi = c.object_index(x).ok_or_else(|| Error::UnknownObject(x.into()))?;
    let yi = c.object_index(y).ok_or_else(|| Error::UnknownObject(y.into()))?;
    Ok(c.hom(xi, yi))
}

/// Pairs a validated value with the name it was given.
pub fn arc(c: FinCategory) -> Arc<FinCategory> {
    Arc::new(c)
}
