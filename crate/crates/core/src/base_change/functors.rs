use std::sync::Arc;

use crate::constructions::{
    comma_category, comma_factor_2cell, pullback_category, pullback_factor, CommaResult, PullbackResult,
};
use crate::error::{Error, Result};
use crate::fincat::{nat_vcomp, same, whisker_left, whisker_right, FinCategory, FinFunctor, NatTrans};
use crate::lax_slice::{validate_lax_2cell, Ambient, LaxSliceMorphism, LaxSliceTwoCell, SliceObject};

/// Comma objects and pullbacks built so far, keyed by the cospan.
#[derive(Debug, Default)]
pub struct ConstructionCache {
    commas: Vec<(FinFunctor, FinFunctor, CommaResult)>,
    pullbacks: Vec<(FinFunctor, FinFunctor, PullbackResult)>,
}

impl ConstructionCache {
    pub fn comma(&mut self, b: &FinFunctor, c: &FinFunctor) -> Result<CommaResult> {
        if let Some((_, _, r)) = self.commas.iter().find(|(x, y, _)| x == b && y == c) {
            return Ok(r.clone());
        }
        let r = comma_category(b, c)?;
        self.commas.push((b.clone(), c.clone(), r.clone()));
        Ok(r)
    }

    pub fn pullback(&mut self, a: &FinFunctor, c: &FinFunctor) -> Result<PullbackResult> {
        if let Some((_, _, r)) = self.pullbacks.iter().find(|(x, y, _)| x == a && y == c) {
            return Ok(r.clone());
        }
        let r = pullback_category(a, c)?;
        self.pullbacks.push((a.clone(), c.clone(), r.clone()));
        Ok(r)
    }
}

/// A base morphism `c: y -> z` together with the constructions it needs.
#[derive(Debug)]
pub struct BaseChangeContext {
    pub c: FinFunctor,
    pub cache: ConstructionCache,
}

impl BaseChangeContext {
    pub fn new(c: FinFunctor) -> BaseChangeContext {
        BaseChangeContext { c, cache: ConstructionCache::default() }
    }

    pub fn y(&self) -> &Arc<FinCategory> {
        self.c.dom()
    }

    pub fn z(&self) -> &Arc<FinCategory> {
        self.c.cod()
    }

    fn over_y(&self, o: &SliceObject) -> Result<()> {
        if !same(o.base(), self.y()) {
            return Err(Error::BaseMismatch("object is not over the domain of c".into()));
        }
        Ok(())
    }

    fn over_z(&self, o: &SliceObject) -> Result<()> {
        if !same(o.base(), self.z()) {
            return Err(Error::BaseMismatch("object is not over the codomain of c".into()));
        }
        Ok(())
    }

    /// `c!(x, a) = (x, c . a)`
    pub fn direct_image(&self, o: &SliceObject) -> Result<SliceObject> {
        self.over_y(o)?;
        Ok(SliceObject::new(self.c.after(&o.a)?))
    }

    /// `(f, phi) -> (f, c * phi)`. Strict mode only accepts strict input.
    pub fn direct_image_morphism(&self, m: &LaxSliceMorphism, mode: Ambient) -> Result<LaxSliceMorphism> {
        if mode == Ambient::Strict && !m.is_strict() {
            return Err(Error::NonStrictInput("strict direct image of a lax morphism".into()));
        }
        let src = self.direct_image(&m.src)?;
        let tgt = self.direct_image(&m.tgt)?;
        let phi = whisker_left(&self.c, &m.phi)?;
        LaxSliceMorphism::new(src, tgt, m.f.clone(), phi)
    }

    pub fn direct_image_cell(&self, cell: &LaxSliceTwoCell) -> Result<LaxSliceTwoCell> {
        let m1 = self.direct_image_morphism(&cell.m1, Ambient::Lax)?;
        let m2 = self.direct_image_morphism(&cell.m2, Ambient::Lax)?;
        validate_lax_2cell(cell.gamma.clone(), &m1, &m2)
    }

    /// `c*(w, a) = (w x_z y, proj_y)`
    pub fn pullback_object(&mut self, o: &SliceObject) -> Result<SliceObject> {
        self.over_z(o)?;
        let p = self.cache.pullback(&o.a, &self.c)?;
        Ok(SliceObject::new(p.proj1))
    }

    pub fn pullback_morphism(&mut self, m: &LaxSliceMorphism) -> Result<LaxSliceMorphism> {
        if !m.is_strict() {
            return Err(Error::NonStrictInput("pullback change of base is defined on strict morphisms".into()));
        }
        self.over_z(&m.src)?;
        let ps = self.cache.pullback(&m.src.a, &self.c)?;
        let pt = self.cache.pullback(&m.tgt.a, &self.c)?;
        let h = pullback_factor(&pt, &m.f.after(&ps.proj0)?, &ps.proj1)?;
        LaxSliceMorphism::strict(SliceObject::new(ps.proj1), SliceObject::new(pt.proj1), h)
    }

    /// Components `(gamma_w, id_y)`.
    pub fn pullback_cell(&mut self, cell: &LaxSliceTwoCell) -> Result<LaxSliceTwoCell> {
        let m1 = self.pullback_morphism(&cell.m1)?;
        let m2 = self.pullback_morphism(&cell.m2)?;
        let ps = self.cache.pullback(&cell.m1.src.a, &self.c)?;
        let pt = self.cache.pullback(&cell.m1.tgt.a, &self.c)?;
        let y = self.y().clone();
        let comps: Option<Vec<_>> = (0..ps.cat.num_objects())
            .map(|o| pt.morphism(cell.gamma.at(ps.proj0.obj(o)), y.identity(ps.proj1.obj(o))))
            .collect();
        let comps = comps.ok_or_else(|| Error::NonStrictInput("2-cell is not vertical over z".into()))?;
        let gamma = NatTrans::new(m1.f.clone(), m2.f.clone(), comps)?;
        validate_lax_2cell(gamma, &m1, &m2)
    }

    /// `c^<=(x, b) = (b | c, proj_y)`
    pub fn comma_object(&mut self, o: &SliceObject) -> Result<SliceObject> {
        self.over_z(o)?;
        Ok(SliceObject::new(self.cache.comma(&o.a, &self.c)?.proj1))
    }

    pub fn comma_morphism(&mut self, m: &LaxSliceMorphism) -> Result<LaxSliceMorphism> {
        let c = self.c.clone();
        comma_morphism_along(&mut self.cache, &c, m)
    }

    pub fn comma_cell(&mut self, cell: &LaxSliceTwoCell) -> Result<LaxSliceTwoCell> {
        let c = self.c.clone();
        comma_cell_along(&mut self.cache, &c, cell)
    }
}

/// `c^<=(f, phi)`: the functor `a|c -> b|c` with `proj0 h = f . proj0`,
/// `proj1 h = proj1` and `lambda h = lambda . (phi * proj0)`.
pub fn comma_morphism_along(
    cache: &mut ConstructionCache,
    c: &FinFunctor,
    m: &LaxSliceMorphism,
) -> Result<LaxSliceMorphism> {
    if !same(m.src.base(), c.cod()) {
        return Err(Error::BaseMismatch("morphism is not over the codomain of c".into()));
    }
    let ca = cache.comma(&m.src.a, c)?;
    let cb = cache.comma(&m.tgt.a, c)?;
    let h0 = m.f.after(&ca.proj0)?;
    let phi = nat_vcomp(&ca.lambda, &whisker_right(&m.phi, &ca.proj0)?)?;
    let h = cb.factor_direct(&h0, &ca.proj1, &phi)?;
    LaxSliceMorphism::strict(SliceObject::new(ca.proj1), SliceObject::new(cb.proj1), h)
}

/// Components `(gamma_x, id_y)` from the 2-dimensional clause.
pub fn comma_cell_along(
    cache: &mut ConstructionCache,
    c: &FinFunctor,
    cell: &LaxSliceTwoCell,
) -> Result<LaxSliceTwoCell> {
    let m1 = comma_morphism_along(cache, c, &cell.m1)?;
    let m2 = comma_morphism_along(cache, c, &cell.m2)?;
    let ca = cache.comma(&cell.m1.src.a, c)?;
    let cb = cache.comma(&cell.m1.tgt.a, c)?;
    let xi0 = whisker_right(&cell.gamma, &ca.proj0)?;
    let xi1 = NatTrans::identity(&ca.proj1);
    let xi = comma_factor_2cell(&cb, &m1.f, &m2.f, &xi0, &xi1)?;
    validate_lax_2cell(xi, &m1, &m2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinPreorder;
    use crate::lax_slice::{lax_compose, slice_hom_category, slice_morphisms};

    fn two() -> Arc<FinCategory> {
        FinPreorder::chain(2).to_category_arc()
    }

    fn point() -> Arc<FinCategory> {
        Arc::new(FinCategory::terminal())
    }

    #[test]
    fn direct_image_along_identity() {
        let t = two();
        let ctx = BaseChangeContext::new(FinFunctor::identity(&t));
        let o = SliceObject::new(FinFunctor::constant(&point(), &t, 0));
        assert_eq!(ctx.direct_image(&o).unwrap(), o);
        let id = SliceObject::new(FinFunctor::identity(&t));
        for m in slice_morphisms(&o, &id, Ambient::Lax).unwrap() {
            let d = ctx.direct_image_morphism(&m, Ambient::Lax).unwrap();
            assert_eq!(d, m);
            if !m.is_strict() {
                assert!(ctx.direct_image_morphism(&m, Ambient::Strict).is_err());
            }
        }
    }

    #[test]
    fn pullback_of_disjoint_faces_is_empty() {
        let (t, p) = (two(), point());
        let mut ctx = BaseChangeContext::new(FinFunctor::constant(&p, &t, 0));
        let o = SliceObject::new(FinFunctor::constant(&p, &t, 1));
        assert_eq!(ctx.pullback_object(&o).unwrap().w().num_objects(), 0);
        let o = SliceObject::new(FinFunctor::identity(&t));
        assert_eq!(ctx.pullback_object(&o).unwrap().w().num_objects(), 1);
    }

    #[test]
    fn pullback_is_functorial() {
        let t = two();
        let three = FinPreorder::chain(3).to_category_arc();
        let mut ctx = BaseChangeContext::new(FinFunctor::identity(&t));
        let objs: Vec<SliceObject> = [t.clone(), three.clone()]
            .iter()
            .flat_map(|w| crate::fincat::enumerate::functors(w, &t).unwrap())
            .map(SliceObject::new)
            .collect();
        let mut checked = 0;
        for a in &objs {
            for b in &objs {
                for cc in &objs {
                    for f in slice_morphisms(a, b, Ambient::Strict).unwrap() {
                        for g in slice_morphisms(b, cc, Ambient::Strict).unwrap() {
                            let gf = lax_compose(&g, &f).unwrap();
                            let lhs = ctx.pullback_morphism(&gf).unwrap();
                            let rhs =
                                lax_compose(&ctx.pullback_morphism(&g).unwrap(), &ctx.pullback_morphism(&f).unwrap())
                                    .unwrap();
                            assert_eq!(lhs, rhs);
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 50);
    }

    #[test]
    fn comma_along_identity_of_identity_is_arrow_category() {
        let t = two();
        let mut ctx = BaseChangeContext::new(FinFunctor::identity(&t));
        let o = ctx.comma_object(&SliceObject::new(FinFunctor::identity(&t))).unwrap();
        assert_eq!(o.w().num_objects(), 3);
        assert_eq!(o.w().num_morphisms(), 6);
    }

    #[test]
    fn comma_action_on_lax_morphisms_and_cells() {
        let (t, p) = (two(), point());
        let mut ctx = BaseChangeContext::new(FinFunctor::identity(&t));
        let objs = [
            SliceObject::new(FinFunctor::constant(&p, &t, 0)),
            SliceObject::new(FinFunctor::constant(&p, &t, 1)),
            SliceObject::new(FinFunctor::identity(&t)),
        ];
        for a in &objs {
            for b in &objs {
                let h = slice_hom_category(a, b, Ambient::Lax).unwrap();
                for m in &h.morphisms {
                    let cm = ctx.comma_morphism(m).unwrap();
                    assert!(cm.is_strict());
                    if m.is_strict() {
                        // agrees with the strict-input formula: (f . proj0, proj1, lambda)
                        let ca = ctx.cache.comma(&a.a, &ctx.c.clone()).unwrap();
                        assert_eq!(
                            ctx.cache.comma(&b.a, &ctx.c.clone()).unwrap().proj0.after(&cm.f).unwrap(),
                            m.f.after(&ca.proj0).unwrap()
                        );
                    }
                }
                for (k, g) in h.cells.iter().enumerate() {
                    let arrow = &h.cat.morphisms()[k];
                    let cell = validate_lax_2cell(g.clone(), &h.morphisms[arrow.src], &h.morphisms[arrow.tgt]).unwrap();
                    assert!(ctx.comma_cell(&cell).is_ok());
                }
            }
        }
    }
}
