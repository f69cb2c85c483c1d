use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Report, Result, Violation};
use crate::fincat::{product_category, same, whisker_left, FinCategory, FinFunctor, NatTrans, Obj, Product};

use super::slice::{validate_lax_2cell, LaxSliceMorphism, LaxSliceTwoCell, SliceObject};

/// Products `y x w` built once per pair of categories.
#[derive(Debug, Default)]
pub struct ProductCache {
    map: HashMap<(usize, usize), Product>,
}

impl ProductCache {
    pub fn new() -> ProductCache {
        ProductCache::default()
    }

    pub fn get(&mut self, y: &Arc<FinCategory>, w: &Arc<FinCategory>) -> Product {
        // The stored product holds both Arcs, so the addresses stay unique.
        let key = (Arc::as_ptr(y) as usize, Arc::as_ptr(w) as usize);
        self.map.entry(key).or_insert_with(|| product_category(y, w)).clone()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// A coalgebra `a': w -> y x w` for the comonad `y x -`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalgebraObject {
    pub a: FinFunctor,
}

impl CoalgebraObject {
    pub fn w(&self) -> &Arc<FinCategory> {
        self.a.dom()
    }
}

fn counit_report(prod: &Product, a: &FinFunctor) -> Result<Report> {
    let w = a.dom();
    let back = prod.proj1.after(a)?;
    let mut report = Report::default();
    for x in 0..w.num_objects() {
        if back.obj(x) != x {
            report.push(Violation::UnitLawViolation(w.obj_name(x).into()));
        }
    }
    if report.is_empty() {
        for m in 0..w.num_morphisms() {
            if back.mor(m) != m {
                report.push(Violation::UnitLawViolation(w.mor_name(m).into()));
            }
        }
    }
    Ok(report)
}

/// Checks `a'` lands in `y x w` and `proj_w . a' = id`.
pub fn validate_coalgebra(cache: &mut ProductCache, y: &Arc<FinCategory>, a: FinFunctor) -> Result<CoalgebraObject> {
    let prod = cache.get(y, a.dom());
    if !same(a.cod(), &prod.cat) {
        return Err(Error::EndpointMismatch("coaction must land in y x w".into()));
    }
    counit_report(&prod, &a)?.into_result("coalgebra", CoalgebraObject { a })
}

fn split(cache: &mut ProductCache, y: &Arc<FinCategory>, a: &FinFunctor) -> Result<(Product, FinFunctor, FinFunctor)> {
    let prod = cache.get(y, a.dom());
    let p = prod.proj0.after(a)?;
    let q = prod.proj1.after(a)?;
    Ok((prod, p, q))
}

/// `(delta x w) . a' = (y x a') . a'` as functors into `y x (y x w)`.
pub fn coalgebra_coassociative(cache: &mut ProductCache, y: &Arc<FinCategory>, c: &CoalgebraObject) -> Result<bool> {
    let (prod, p, q) = split(cache, y, &c.a)?;
    let outer = cache.get(y, &prod.cat);
    let lhs = outer.pair(&p, &prod.pair(&p, &q)?)?;
    let rhs = outer.pair(&p, &c.a.after(&q)?)?;
    Ok(lhs == rhs)
}

/// `(f, phi')` with `phi': b' . f => (y x f) . a'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxCoalgMorphism {
    pub src: CoalgebraObject,
    pub tgt: CoalgebraObject,
    pub f: FinFunctor,
    pub phi: NatTrans,
}

impl LaxCoalgMorphism {
    pub fn is_strict(&self) -> bool {
        self.phi.is_identity()
    }
}

/// `(y x f) . a'`
fn lift(cache: &mut ProductCache, y: &Arc<FinCategory>, f: &FinFunctor, a: &FinFunctor) -> Result<FinFunctor> {
    let pw = cache.get(y, f.dom());
    let px = cache.get(y, f.cod());
    pw.map_into(&px, &FinFunctor::identity(y), f)?.after(a)
}

pub fn validate_coalg_morphism(
    cache: &mut ProductCache,
    y: &Arc<FinCategory>,
    src: &CoalgebraObject,
    tgt: &CoalgebraObject,
    f: FinFunctor,
    phi: NatTrans,
) -> Result<LaxCoalgMorphism> {
    if !same(f.dom(), src.w()) || !same(f.cod(), tgt.w()) {
        return Err(Error::EndpointMismatch("underlying functor does not match the coalgebras".into()));
    }
    if *phi.src() != tgt.a.after(&f)? || *phi.tgt() != lift(cache, y, &f, &src.a)? {
        return Err(Error::EndpointMismatch("2-cell must go from b' . f to (y x f) . a'".into()));
    }
    let px = cache.get(y, f.cod());
    let back = whisker_left(&px.proj1, &phi)?;
    let mut report = Report::default();
    for o in 0..f.dom().num_objects() {
        if !back.src().cod().is_identity(back.at(o)) {
            report.push(Violation::UnitLawViolation(f.dom().obj_name(o).into()));
        }
    }
    report.into_result("coalgebra morphism", LaxCoalgMorphism { src: src.clone(), tgt: tgt.clone(), f, phi })
}

/// Component form of the coassociativity equation for a coalgebra morphism:
/// `(delta x x)(phi'_o) = (id_{p o}, phi'_{q o}) . (y x b')(phi'_o)`.
/// Returns the objects where it fails.
pub fn coalg_morphism_coassoc_failures(
    cache: &mut ProductCache,
    y: &Arc<FinCategory>,
    m: &LaxCoalgMorphism,
) -> Result<Vec<Obj>> {
    let x = m.f.cod();
    let px = cache.get(y, x);
    let outer = cache.get(y, &px.cat);
    let (_, p, q) = split(cache, y, &m.src.a)?;
    let b = &m.tgt.a;
    let mut bad = Vec::new();
    for o in 0..m.f.dom().num_objects() {
        let k = m.phi.at(o);
        let (e, v) = (px.proj0.mor(k), px.proj1.mor(k));
        let lhs = outer.mor(e, px.mor(e, v));
        let left = outer.mor(y.identity(p.obj(o)), m.phi.at(q.obj(o)));
        let right = outer.mor(e, b.mor(v));
        match outer.cat.try_compose(left, right) {
            Ok(rhs) if rhs == lhs => {}
            _ => bad.push(o),
        }
    }
    Ok(bad)
}

/// A 2-cell `gamma: f => f'` between parallel coalgebra morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalgTwoCell {
    pub m1: LaxCoalgMorphism,
    pub m2: LaxCoalgMorphism,
    pub gamma: NatTrans,
}

/// `phi2'_o . b'(gamma_o) = (id_{p o}, gamma_{q o}) . phi1'_o` at every object.
pub fn validate_coalg_2cell(
    cache: &mut ProductCache,
    y: &Arc<FinCategory>,
    gamma: NatTrans,
    m1: &LaxCoalgMorphism,
    m2: &LaxCoalgMorphism,
) -> Result<CoalgTwoCell> {
    if m1.src != m2.src || m1.tgt != m2.tgt || *gamma.src() != m1.f || *gamma.tgt() != m2.f {
        return Err(Error::EndpointMismatch("2-cell endpoints do not match".into()));
    }
    let px = cache.get(y, m1.f.cod());
    let (_, p, q) = split(cache, y, &m1.src.a)?;
    let b = &m1.tgt.a;
    let w = m1.f.dom();
    let mut report = Report::default();
    for o in 0..w.num_objects() {
        let lhs = px.cat.try_compose(m2.phi.at(o), b.mor(gamma.at(o)));
        let rhs = px.cat.try_compose(px.mor(y.identity(p.obj(o)), gamma.at(q.obj(o))), m1.phi.at(o));
        if lhs.is_err() || lhs != rhs {
            report.push(Violation::CompatibilityViolation(w.obj_name(o).into()));
        }
    }
    report.into_result("coalgebra 2-cell", CoalgTwoCell { m1: m1.clone(), m2: m2.clone(), gamma })
}

/// `(w, a) -> (w, <a, id>)`
pub fn object_to_coalgebra(cache: &mut ProductCache, o: &SliceObject) -> Result<CoalgebraObject> {
    let prod = cache.get(o.base(), o.w());
    let a = prod.pair(&o.a, &FinFunctor::identity(o.w()))?;
    Ok(CoalgebraObject { a })
}

/// `(w, a') -> (w, proj_y . a')`
pub fn object_from_coalgebra(
    cache: &mut ProductCache,
    y: &Arc<FinCategory>,
    c: &CoalgebraObject,
) -> Result<SliceObject> {
    let prod = cache.get(y, c.w());
    Ok(SliceObject::new(prod.proj0.after(&c.a)?))
}

/// `(f, phi) -> (f, <phi, id_f>)`
pub fn morphism_to_coalgebra(cache: &mut ProductCache, m: &LaxSliceMorphism) -> Result<LaxCoalgMorphism> {
    let y = m.src.base().clone();
    let src = object_to_coalgebra(cache, &m.src)?;
    let tgt = object_to_coalgebra(cache, &m.tgt)?;
    let px = cache.get(&y, m.f.cod());
    let phi = px.pair_nat(&m.phi, &NatTrans::identity(&m.f))?;
    validate_coalg_morphism(cache, &y, &src, &tgt, m.f.clone(), phi)
}

/// `(f, phi') -> (f, proj_y * phi')`
pub fn morphism_from_coalgebra(
    cache: &mut ProductCache,
    y: &Arc<FinCategory>,
    m: &LaxCoalgMorphism,
) -> Result<LaxSliceMorphism> {
    let src = object_from_coalgebra(cache, y, &m.src)?;
    let tgt = object_from_coalgebra(cache, y, &m.tgt)?;
    let px = cache.get(y, m.f.cod());
    let phi = whisker_left(&px.proj0, &m.phi)?;
    LaxSliceMorphism::new(src, tgt, m.f.clone(), phi)
}

pub fn cell_to_coalgebra(cache: &mut ProductCache, c: &LaxSliceTwoCell) -> Result<CoalgTwoCell> {
    let y = c.m1.src.base().clone();
    let m1 = morphism_to_coalgebra(cache, &c.m1)?;
    let m2 = morphism_to_coalgebra(cache, &c.m2)?;
    validate_coalg_2cell(cache, &y, c.gamma.clone(), &m1, &m2)
}

pub fn cell_from_coalgebra(
    cache: &mut ProductCache,
    y: &Arc<FinCategory>,
    c: &CoalgTwoCell,
) -> Result<LaxSliceTwoCell> {
    let m1 = morphism_from_coalgebra(cache, y, &c.m1)?;
    let m2 = morphism_from_coalgebra(cache, y, &c.m2)?;
    validate_lax_2cell(c.gamma.clone(), &m1, &m2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::enumerate::functors;
    use crate::fincat::FinPreorder;
    use crate::lax_slice::slice::{slice_hom_category, slice_morphisms, Ambient};

    fn objects_over(y: &Arc<FinCategory>, ws: &[Arc<FinCategory>]) -> Vec<SliceObject> {
        ws.iter().flat_map(|w| functors(w, y).unwrap()).map(SliceObject::new).collect()
    }

    #[test]
    fn round_trips_over_two() {
        let y = FinPreorder::chain(2).to_category_arc();
        let ws = [Arc::new(FinCategory::terminal()), y.clone()];
        let objs = objects_over(&y, &ws);
        let mut cache = ProductCache::new();
        for o in &objs {
            let c = object_to_coalgebra(&mut cache, o).unwrap();
            assert!(validate_coalgebra(&mut cache, &y, c.a.clone()).is_ok());
            assert!(coalgebra_coassociative(&mut cache, &y, &c).unwrap());
            assert_eq!(object_from_coalgebra(&mut cache, &y, &c).unwrap(), *o);
        }
        for o1 in &objs {
            for o2 in &objs {
                let h = slice_hom_category(o1, o2, Ambient::Lax).unwrap();
                for m in &h.morphisms {
                    let c = morphism_to_coalgebra(&mut cache, m).unwrap();
                    assert_eq!(c.is_strict(), m.is_strict());
                    assert!(coalg_morphism_coassoc_failures(&mut cache, &y, &c).unwrap().is_empty());
                    assert_eq!(morphism_from_coalgebra(&mut cache, &y, &c).unwrap(), *m);
                }
                for (k, g) in h.cells.iter().enumerate() {
                    let arrow = &h.cat.morphisms()[k];
                    let (m1, m2) = (&h.morphisms[arrow.src], &h.morphisms[arrow.tgt]);
                    let cell = validate_lax_2cell(g.clone(), m1, m2).unwrap();
                    let cc = cell_to_coalgebra(&mut cache, &cell).unwrap();
                    assert_eq!(cell_from_coalgebra(&mut cache, &y, &cc).unwrap(), cell);
                }
            }
        }
        assert!(cache.len() <= 4);
    }

    #[test]
    fn counit_is_enforced() {
        let y = FinPreorder::chain(2).to_category_arc();
        let mut cache = ProductCache::new();
        let prod = cache.get(&y, &y);
        // <id, const 0> forgets w.
        let bad = prod.pair(&FinFunctor::identity(&y), &FinFunctor::constant(&y, &y, 0)).unwrap();
        let err = validate_coalgebra(&mut cache, &y, bad).unwrap_err();
        assert!(err.to_string().contains("unit-law-violation(1)"), "{err}");
    }

    #[test]
    fn strict_morphisms_stay_strict() {
        let y = FinPreorder::chain(2).to_category_arc();
        let p = Arc::new(FinCategory::terminal());
        let o = SliceObject::new(FinFunctor::constant(&p, &y, 1));
        let id = SliceObject::new(FinFunctor::identity(&y));
        let mut cache = ProductCache::new();
        for m in slice_morphisms(&o, &id, Ambient::Strict).unwrap() {
            assert!(morphism_to_coalgebra(&mut cache, &m).unwrap().is_strict());
        }
    }
}
