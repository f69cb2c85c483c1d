use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::fincat::enumerate::functors;
use crate::fincat::{preorders_up_to_iso, FinCategory, FinFunctor, NatTrans, Obj};
use crate::lax_slice::{lax_compose, slice_morphisms, Ambient, LaxSliceMorphism, SliceObject};

use super::extension::{left_kan_with, right_kan_with, to_point};

/// Does `K: z -> (B//z)_0`, sending `b` to `(1, b)`, have a left adjoint on
/// the sampled diagrams?
#[derive(Debug, Clone, Serialize)]
pub struct ConicalReport {
    pub diagrams: usize,
    /// Every diagram has a right Kan extension along `x -> 1`.
    pub complete: bool,
    /// Every diagram has a left Kan extension along `x -> 1`.
    pub cocomplete: bool,
    /// Every diagram has a universal arrow into `K`.
    pub left_adjoint: bool,
    /// `|z(b, L a)| = |(B//z)(a, K b)|` for all `a`, `b`, when `L` exists.
    pub hom_counts_match: bool,
    pub missing_limit: Option<String>,
    pub missing_colimit: Option<String>,
    pub missing_arrow: Option<String>,
}

impl ConicalReport {
    /// The left adjoint exists exactly when every diagram has a colimit,
    /// and then both hom-sets have the same size.
    pub fn holds(&self) -> bool {
        self.left_adjoint == self.cocomplete && (!self.cocomplete || self.hom_counts_match)
    }

    /// The universal arrows found are limits, so this always holds.
    pub fn matches_complete(&self) -> bool {
        self.left_adjoint == self.complete
    }
}

/// Shapes: preorders of at most `max` elements up to iso, with the
/// parallel pair if asked.
pub fn shape_corpus(max: usize, parallel: bool) -> Vec<Arc<FinCategory>> {
    let mut out: Vec<Arc<FinCategory>> = (0..=max).flat_map(preorders_up_to_iso).map(|p| p.to_category_arc()).collect();
    if parallel {
        out.push(Arc::new(FinCategory::parallel_pair()));
    }
    out
}

pub fn k_object(z: &Arc<FinCategory>, b: Obj) -> SliceObject {
    SliceObject::new(FinFunctor::constant(&Arc::new(FinCategory::terminal()), z, b))
}

/// `K(alpha): K p -> K b` for `alpha: b -> p` in `z`.
fn k_morphism(z: &Arc<FinCategory>, p: Obj, b: Obj, alpha: usize) -> Result<LaxSliceMorphism> {
    let (kp, kb) = (k_object(z, p), k_object(z, b));
    let one = kp.w().clone();
    let phi = NatTrans::new(kb.a.clone(), kp.a.clone(), vec![alpha])?;
    LaxSliceMorphism::new(kp, kb, FinFunctor::identity(&one), phi)
}

/// A universal arrow `a -> K p`: every `a -> K b` is `K(alpha) . eta` for
/// exactly one `alpha`.
fn universal_arrow(a: &SliceObject) -> Result<Option<(Obj, LaxSliceMorphism)>> {
    let z = a.base().clone();
    let homs: Vec<Vec<LaxSliceMorphism>> =
        (0..z.num_objects()).map(|b| slice_morphisms(a, &k_object(&z, b), Ambient::Lax)).collect::<Result<_>>()?;
    for p in 0..z.num_objects() {
        'eta: for eta in &homs[p] {
            for b in 0..z.num_objects() {
                let images = z
                    .hom(b, p)
                    .iter()
                    .map(|&alpha| lax_compose(&k_morphism(&z, p, b, alpha)?, eta))
                    .collect::<Result<Vec<_>>>()?;
                for m in &homs[b] {
                    if images.iter().filter(|i| *i == m).count() != 1 {
                        continue 'eta;
                    }
                }
            }
            return Ok(Some((p, eta.clone())));
        }
    }
    Ok(None)
}

pub fn conical_adjunction_check(z: &Arc<FinCategory>, shapes: &[Arc<FinCategory>]) -> Result<ConicalReport> {
    let mut r = ConicalReport {
        diagrams: 0,
        complete: true,
        cocomplete: true,
        left_adjoint: true,
        hom_counts_match: true,
        missing_limit: None,
        missing_colimit: None,
        missing_arrow: None,
    };
    for x in shapes {
        for j in functors(x, z)? {
            r.diagrams += 1;
            let label = || j.describe();
            let bang = to_point(x);
            if !right_kan_with(&bang, &j, false)?.found {
                r.complete = false;
                r.missing_limit.get_or_insert_with(label);
            }
            if !left_kan_with(&bang, &j, false)?.found {
                r.cocomplete = false;
                r.missing_colimit.get_or_insert_with(label);
            }
            let a = SliceObject::new(j.clone());
            match universal_arrow(&a)? {
                Some((p, _)) => {
                    for b in 0..z.num_objects() {
                        let lax = slice_morphisms(&a, &k_object(z, b), Ambient::Lax)?.len();
                        if z.hom(b, p).len() != lax {
                            r.hom_counts_match = false;
                        }
                    }
                }
                None => {
                    r.left_adjoint = false;
                    r.missing_arrow.get_or_insert_with(label);
                }
            }
        }
    }
    Ok(r)
}
