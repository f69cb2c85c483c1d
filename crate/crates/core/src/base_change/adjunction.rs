use serde::Serialize;

use crate::constructions::{pullback_factor, CommaResult};
use crate::error::{Error, Result};
use crate::fincat::{whisker_left, whisker_right, FinFunctor, NatTrans};
use crate::lax_slice::{lax_compose, Ambient, LaxSliceMorphism, SliceObject};

use super::functors::{comma_morphism_along, BaseChangeContext};

/// `rho_(w,a) = (rho', id_a)` with `rho'(o) = (o, a o, id)`.
pub fn unit(ctx: &mut BaseChangeContext, o: &SliceObject) -> Result<(LaxSliceMorphism, [bool; 3])> {
    let ca = ctx.direct_image(o)?;
    let comma = ctx.cache.comma(&ca.a, &ctx.c.clone())?;
    let rho = comma.factor_direct(&FinFunctor::identity(o.w()), &o.a, &NatTrans::identity(&ca.a))?;
    let eqs = [
        comma.proj0.after(&rho)?.is_identity(),
        comma.proj1.after(&rho)? == o.a,
        whisker_right(&comma.lambda, &rho)?.is_identity(),
    ];
    let m = LaxSliceMorphism::strict(o.clone(), SliceObject::new(comma.proj1.clone()), rho)?;
    Ok((m, eqs))
}

/// `delta_(x,b) = (proj_x, lambda)` from `c!(c^<=(x, b))` to `(x, b)`.
pub fn counit(ctx: &mut BaseChangeContext, o: &SliceObject) -> Result<LaxSliceMorphism> {
    let comma = ctx.cache.comma(&o.a, &ctx.c.clone())?;
    let src = SliceObject::new(ctx.c.after(&comma.proj1)?);
    LaxSliceMorphism::new(src, o.clone(), comma.proj0.clone(), comma.lambda.clone())
}

#[derive(Debug, Clone, Serialize)]
pub struct CommaAdjunctionWitness {
    /// `(ca)^=>(c) . rho' = id`, `c^<=(ca) . rho' = a`, `lambda rho' = id`
    pub rho_equations: [bool; 3],
    pub triangle_left: bool,
    pub triangle_right: bool,
    #[serde(skip)]
    pub rho: LaxSliceMorphism,
    #[serde(skip)]
    pub delta: LaxSliceMorphism,
}

impl CommaAdjunctionWitness {
    pub fn holds(&self) -> bool {
        self.rho_equations.iter().all(|&b| b) && self.triangle_left && self.triangle_right
    }
}

/// Builds `rho` at `(w, a)` over `y` and `delta` at `(x, b)` over `z`, then
/// checks `delta_c!(w,a) . c!(rho) = id` and `c^<=(delta) . rho_c^<=(x,b) = id`.
pub fn verify_comma_adjunction(
    ctx: &mut BaseChangeContext,
    w_obj: &SliceObject,
    z_obj: &SliceObject,
) -> Result<CommaAdjunctionWitness> {
    let (rho, rho_equations) = unit(ctx, w_obj)?;
    let delta = counit(ctx, z_obj)?;

    let c_rho = ctx.direct_image_morphism(&rho, Ambient::Strict)?;
    let ca = ctx.direct_image(w_obj)?;
    let delta_ca = counit(ctx, &ca)?;
    let left = lax_compose(&delta_ca, &c_rho)?;
    let triangle_left = left == LaxSliceMorphism::identity(&ca);

    let cz = ctx.comma_object(z_obj)?;
    let (rho_cz, _) = unit(ctx, &cz)?;
    let c_delta = ctx.comma_morphism(&delta)?;
    let right = lax_compose(&c_delta, &rho_cz)?;
    let triangle_right = right == LaxSliceMorphism::identity(&cz);

    Ok(CommaAdjunctionWitness { rho_equations, triangle_left, triangle_right, rho, delta })
}

/// `c^<= c!(m) . rho = rho . m` for a strict morphism over `y`.
pub fn unit_natural(ctx: &mut BaseChangeContext, m: &LaxSliceMorphism) -> Result<bool> {
    let (rs, _) = unit(ctx, &m.src)?;
    let (rt, _) = unit(ctx, &m.tgt)?;
    let cm = ctx.direct_image_morphism(m, Ambient::Strict)?;
    let ccm = ctx.comma_morphism(&cm)?;
    Ok(lax_compose(&ccm, &rs)? == lax_compose(&rt, m)?)
}

/// `delta . c! c^<=(m) = m . delta` for a lax morphism over `z`.
pub fn counit_natural(ctx: &mut BaseChangeContext, m: &LaxSliceMorphism) -> Result<bool> {
    let ds = counit(ctx, &m.src)?;
    let dt = counit(ctx, &m.tgt)?;
    let cm = ctx.comma_morphism(m)?;
    let ccm = ctx.direct_image_morphism(&cm, Ambient::Strict)?;
    Ok(lax_compose(&dt, &ccm)? == lax_compose(m, &ds)?)
}

/// Both maps of the underlying functor are bijections.
pub fn is_isomorphism(f: &FinFunctor) -> bool {
    fn bijective(map: &[usize], n: usize) -> bool {
        let mut seen = vec![false; n];
        map.len() == n && map.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    }
    bijective(f.obj_map(), f.cod().num_objects()) && bijective(f.mor_map(), f.cod().num_morphisms())
}

#[derive(Debug, Clone)]
pub struct Factorization {
    /// `b|c -> (b|id_z) x_z y`
    pub comparison: FinFunctor,
    pub iso: bool,
}

/// The comparison from the comma along `c` to the pullback along `c` of the
/// comma along `id_z`, built from the two universal properties.
pub fn factorization_iso(ctx: &mut BaseChangeContext, o: &SliceObject) -> Result<Factorization> {
    let c = ctx.c.clone();
    let id_z = FinFunctor::identity(ctx.z());
    let bc = ctx.cache.comma(&o.a, &c)?;
    let bi = ctx.cache.comma(&o.a, &id_z)?;
    let p = ctx.cache.pullback(&bi.proj1, &c)?;
    let h0 = bi.factor_direct(&bc.proj0, &c.after(&bc.proj1)?, &bc.lambda)?;
    let comparison = pullback_factor(&p, &h0, &bc.proj1)?;
    let iso = is_isomorphism(&comparison);
    Ok(Factorization { comparison, iso })
}

/// `comparison_b' . c^<=(m) = c*(id^<=(m)) . comparison_b` for a lax `m`.
pub fn factorization_natural(ctx: &mut BaseChangeContext, m: &LaxSliceMorphism) -> Result<bool> {
    let f1 = factorization_iso(ctx, &m.src)?;
    let f2 = factorization_iso(ctx, &m.tgt)?;
    let cm = ctx.comma_morphism(m)?;
    let id_z = FinFunctor::identity(ctx.z());
    let im = comma_morphism_along(&mut ctx.cache, &id_z, m)?;
    let pim = ctx.pullback_morphism(&im)?;
    Ok(f2.comparison.after(&cm.f)? == pim.f.after(&f1.comparison)?)
}

/// The rari data `rho_bar -| delta_bar` with identity unit at `(x, b)` over `y`.
#[derive(Debug, Clone)]
pub struct KzWitness {
    pub comma: CommaResult,
    pub rho_bar: FinFunctor,
    pub delta_bar: FinFunctor,
    pub gamma: NatTrans,
    /// `delta_bar . rho_bar = id_x`
    pub unit_identity: bool,
    /// `proj_y * gamma = lambda`
    pub gamma_projects_to_lambda: bool,
    /// `delta_bar * gamma = id`
    pub gamma_delta: bool,
    /// `gamma * rho_bar = id`
    pub gamma_rho: bool,
}

impl KzWitness {
    pub fn holds(&self) -> bool {
        self.unit_identity && self.gamma_projects_to_lambda && self.gamma_delta && self.gamma_rho
    }
}

pub fn kz_witness(o: &SliceObject) -> Result<KzWitness> {
    let y = o.base();
    let id_y = FinFunctor::identity(y);
    let comma = crate::constructions::comma_category(&o.a, &id_y)?;
    let rho_bar = comma.factor_direct(&FinFunctor::identity(o.w()), &o.a, &NatTrans::identity(&o.a))?;
    let delta_bar = comma.proj0.clone();
    let rd = rho_bar.after(&delta_bar)?;
    let x = o.w();
    let comps: Option<Vec<_>> = (0..comma.cat.num_objects())
        .map(|q| {
            let (ox, _, beta) = comma.triple(q);
            comma.morphism(rd.obj(q), q, x.identity(ox), beta)
        })
        .collect();
    let comps = comps.ok_or_else(|| Error::Construction("gamma component missing from the comma".into()))?;
    let gamma = NatTrans::new(rd, FinFunctor::identity(&comma.cat), comps)?;
    let unit_identity = delta_bar.after(&rho_bar)?.is_identity();
    let gp = whisker_left(&comma.proj1, &gamma)?;
    let gamma_projects_to_lambda = gp.components() == comma.lambda.components();
    let gamma_delta = whisker_left(&delta_bar, &gamma)?.is_identity();
    let gamma_rho = whisker_right(&gamma, &rho_bar)?.is_identity();
    Ok(KzWitness { comma, rho_bar, delta_bar, gamma, unit_identity, gamma_projects_to_lambda, gamma_delta, gamma_rho })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::enumerate::functors;
    use crate::fincat::{FinCategory, FinPreorder};
    use crate::lax_slice::slice_morphisms;

    fn two() -> Arc<FinCategory> {
        FinPreorder::chain(2).to_category_arc()
    }

    fn point() -> Arc<FinCategory> {
        Arc::new(FinCategory::terminal())
    }

    fn objects(base: &Arc<FinCategory>) -> Vec<SliceObject> {
        [point(), two()].iter().flat_map(|w| functors(w, base).unwrap()).map(SliceObject::new).collect()
    }

    #[test]
    fn triangles_along_identity_and_faces() {
        let (t, p) = (two(), point());
        for c in [FinFunctor::identity(&t), FinFunctor::constant(&p, &t, 0), FinFunctor::constant(&p, &t, 1)] {
            let mut ctx = BaseChangeContext::new(c.clone());
            for wo in objects(c.dom()) {
                for zo in objects(c.cod()) {
                    let w = verify_comma_adjunction(&mut ctx, &wo, &zo).unwrap();
                    assert!(w.holds(), "{w:?}");
                }
            }
        }
    }

    #[test]
    fn rho_on_a_point_picks_the_identity_triple() {
        let t = two();
        let mut ctx = BaseChangeContext::new(FinFunctor::identity(&t));
        let o = SliceObject::new(FinFunctor::constant(&point(), &t, 1));
        let (rho, eqs) = unit(&mut ctx, &o).unwrap();
        assert_eq!(eqs, [true; 3]);
        let comma = ctx.cache.comma(&o.a, &ctx.c.clone()).unwrap();
        assert_eq!(comma.triple(rho.f.obj(0)), (0, 1, t.identity(1)));
    }

    #[test]
    fn unit_and_counit_are_natural() {
        let t = two();
        let mut ctx = BaseChangeContext::new(FinFunctor::constant(&point(), &t, 1));
        let ys = objects(ctx.y());
        for a in &ys {
            for b in &ys {
                for m in slice_morphisms(a, b, Ambient::Strict).unwrap() {
                    assert!(unit_natural(&mut ctx, &m).unwrap());
                }
            }
        }
        let zs = objects(ctx.z());
        for a in &zs {
            for b in &zs {
                for m in slice_morphisms(a, b, Ambient::Lax).unwrap() {
                    assert!(counit_natural(&mut ctx, &m).unwrap());
                    assert!(factorization_natural(&mut ctx, &m).unwrap());
                }
            }
        }
    }

    #[test]
    fn factorization_over_a_face() {
        let (t, p) = (two(), point());
        let mut ctx = BaseChangeContext::new(FinFunctor::constant(&p, &t, 0));
        let f = factorization_iso(&mut ctx, &SliceObject::new(FinFunctor::identity(&t))).unwrap();
        assert!(f.iso);
        // only (0, *, id_0) remains
        assert_eq!(f.comparison.dom().num_objects(), 1);
    }

    #[test]
    fn kz_witness_on_bottom_point() {
        let t = two();
        let w = kz_witness(&SliceObject::new(FinFunctor::constant(&point(), &t, 0))).unwrap();
        assert!(w.holds());
        assert_eq!(w.comma.cat.num_objects(), 2);
        assert_eq!(w.gamma.components().iter().filter(|&&k| !w.comma.cat.is_identity(k)).count(), 1);
        let w = kz_witness(&SliceObject::new(FinFunctor::identity(&t))).unwrap();
        assert!(w.holds());
        assert_eq!(w.comma.cat.num_objects(), 3);
    }
}
