use std::sync::Arc;

use serde::Serialize;

use crate::constructions::preorder_reflection;
use crate::error::Result;
use crate::fincat::enumerate::functors;
use crate::fincat::{preorders_up_to_iso, FinCategory, FinFunctor};
use crate::lax_slice::{slice_hom_category, slice_morphisms, Ambient, SliceObject};

use super::adjunction::is_isomorphism;
use super::functors::BaseChangeContext;

/// A reflection-like pair between categories and a full subcategory of
/// them, given by its unit at each `y`.
pub trait AmbientAdjunction {
    fn name(&self) -> &str;

    /// `eta_y: y -> G F y`
    fn unit(&self, y: &Arc<FinCategory>) -> FinFunctor;
}

/// Preorder reflection of categories, with the inclusion of preorders.
pub struct PreorderReflection;

impl AmbientAdjunction for PreorderReflection {
    fn name(&self) -> &str {
        "preorder-reflection"
    }

    fn unit(&self, y: &Arc<FinCategory>) -> FinFunctor {
        preorder_reflection(y).unit
    }
}

/// Sends everything to the point. Not adjoint to the inclusion of
/// preorders; kept as a negative control.
pub struct CollapseToPoint;

impl AmbientAdjunction for CollapseToPoint {
    fn name(&self) -> &str {
        "collapse-to-point"
    }

    fn unit(&self, y: &Arc<FinCategory>) -> FinFunctor {
        FinFunctor::constant(y, &Arc::new(FinCategory::terminal()), 0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AdmissibilityRecord {
    pub source: String,
    pub target: String,
    /// strict homs over `F y`
    pub before: usize,
    /// strict homs over `y` between the pulled-back objects
    pub after: usize,
    pub bijective: bool,
    /// lax homs over `F y`, and strict homs between their comma images
    pub lax_before: usize,
    pub comma_after: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdmissibilityReport {
    pub ambient: String,
    pub unit_iso: bool,
    pub records: Vec<AdmissibilityRecord>,
}

impl AdmissibilityReport {
    pub fn holds(&self) -> bool {
        self.records.iter().all(|r| r.bijective)
    }
}

/// Slice objects `(w, a)` over `F y` with `w` a preorder of at most
/// `max_size` elements (up to iso), every `a`, at most `limit` of them.
pub fn default_samples(fy: &Arc<FinCategory>, max_size: usize, limit: usize) -> Result<Vec<SliceObject>> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        for p in preorders_up_to_iso(n) {
            let w = p.to_category_arc();
            for a in functors(&w, fy)? {
                out.push(SliceObject::new(a));
            }
        }
    }
    // Even spread when there are too many.
    if out.len() > limit && limit > 0 {
        let step = out.len().div_ceil(limit);
        out = out.into_iter().step_by(step).collect();
    }
    Ok(out)
}

fn label(o: &SliceObject) -> String {
    format!("{}:{}", o.w().objects().join(","), o.a.describe())
}

/// For each sampled pair over `F y`, compares strict homs before and after
/// pulling back along `eta_y`, and records the lax homs against the
/// strict homs of their images under the comma along `eta_y`.
pub fn lifted_fully_faithful_check(
    ambient: &dyn AmbientAdjunction,
    y: &Arc<FinCategory>,
    samples: &[SliceObject],
) -> Result<AdmissibilityReport> {
    let eta = ambient.unit(y);
    let mut ctx = BaseChangeContext::new(eta.clone());
    let mut records = Vec::new();
    let pulled: Vec<SliceObject> = samples.iter().map(|o| ctx.pullback_object(o)).collect::<Result<_>>()?;
    let commas: Vec<SliceObject> = samples.iter().map(|o| ctx.comma_object(o)).collect::<Result<_>>()?;
    for (i, s) in samples.iter().enumerate() {
        for (j, t) in samples.iter().enumerate() {
            let homs = slice_morphisms(s, t, Ambient::Strict)?;
            let after = slice_morphisms(&pulled[i], &pulled[j], Ambient::Strict)?;
            let mut images = Vec::with_capacity(homs.len());
            for m in &homs {
                let im = ctx.pullback_morphism(m)?;
                if !images.contains(&im) {
                    images.push(im);
                }
            }
            let bijective = images.len() == homs.len() && homs.len() == after.len();
            let lax_before = slice_hom_category(s, t, Ambient::Lax)?.morphisms.len();
            let comma_after = slice_morphisms(&commas[i], &commas[j], Ambient::Strict)?.len();
            records.push(AdmissibilityRecord {
                source: label(s),
                target: label(t),
                before: homs.len(),
                after: after.len(),
                bijective,
                lax_before,
                comma_after,
            });
        }
    }
    Ok(AdmissibilityReport { ambient: ambient.name().to_string(), unit_iso: is_isomorphism(&eta), records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinPreorder;

    #[test]
    fn preorder_base_passes_trivially() {
        let y = FinPreorder::chain(2).to_category_arc();
        let fy = PreorderReflection.unit(&y).cod().clone();
        let samples = default_samples(&fy, 2, 0).unwrap();
        let r = lifted_fully_faithful_check(&PreorderReflection, &y, &samples).unwrap();
        assert!(r.unit_iso);
        assert!(r.holds());
    }

    #[test]
    fn parallel_pair_keeps_homs() {
        let y = Arc::new(FinCategory::parallel_pair());
        let fy = PreorderReflection.unit(&y).cod().clone();
        let samples = default_samples(&fy, 2, 0).unwrap();
        let r = lifted_fully_faithful_check(&PreorderReflection, &y, &samples).unwrap();
        assert!(!r.unit_iso);
        assert!(r.holds());
    }

    #[test]
    fn collapse_is_caught() {
        let y = Arc::new(FinCategory::discrete(&["p", "q"]));
        let fy = CollapseToPoint.unit(&y).cod().clone();
        let samples = default_samples(&fy, 2, 0).unwrap();
        let r = lifted_fully_faithful_check(&CollapseToPoint, &y, &samples).unwrap();
        assert!(!r.holds());
        let bad = r.records.iter().find(|r| !r.bijective).unwrap();
        assert!(bad.after > bad.before);
    }
}
