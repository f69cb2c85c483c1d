use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::{Error, Report, Result, Violation};
use crate::fincat::enumerate::{for_each_nat, functors};
use crate::fincat::{nat_vcomp, same, whisker_left, whisker_right, FinCategory, FinFunctor, Morphism, NatTrans};
use crate::search::Budget;

/// An object `(w, a: w -> y)` of the lax slice over `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceObject {
    pub a: FinFunctor,
}

impl SliceObject {
    pub fn new(a: FinFunctor) -> SliceObject {
        SliceObject { a }
    }

    pub fn w(&self) -> &Arc<FinCategory> {
        self.a.dom()
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        self.a.cod()
    }
}

/// `(f, phi): (w, a) -> (x, b)` with `phi: b . f => a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxSliceMorphism {
    pub src: SliceObject,
    pub tgt: SliceObject,
    pub f: FinFunctor,
    pub phi: NatTrans,
}

impl LaxSliceMorphism {
    pub fn new(src: SliceObject, tgt: SliceObject, f: FinFunctor, phi: NatTrans) -> Result<LaxSliceMorphism> {
        if !same(src.base(), tgt.base()) {
            return Err(Error::BaseMismatch("slice objects over different bases".into()));
        }
        if !same(f.dom(), src.w()) || !same(f.cod(), tgt.w()) {
            return Err(Error::EndpointMismatch("underlying functor does not match the objects".into()));
        }
        if *phi.src() != tgt.a.after(&f)? || *phi.tgt() != src.a {
            return Err(Error::EndpointMismatch("2-cell must go from b . f to a".into()));
        }
        Ok(LaxSliceMorphism { src, tgt, f, phi })
    }

    pub fn identity(o: &SliceObject) -> LaxSliceMorphism {
        LaxSliceMorphism {
            src: o.clone(),
            tgt: o.clone(),
            f: FinFunctor::identity(o.w()),
            phi: NatTrans::identity(&o.a),
        }
    }

    /// The strict morphism on `f`, when `b . f = a`.
    pub fn strict(src: SliceObject, tgt: SliceObject, f: FinFunctor) -> Result<LaxSliceMorphism> {
        let bf = tgt.a.after(&f)?;
        if bf != src.a {
            return Err(Error::NonStrictInput("triangle does not commute".into()));
        }
        let phi = NatTrans::identity(&bf);
        LaxSliceMorphism::new(src, tgt, f, phi)
    }

    pub fn is_strict(&self) -> bool {
        self.phi.is_identity()
    }
}

/// `(g, alpha) . (f, beta) = (g . f, beta . (alpha * f))`
pub fn lax_compose(m2: &LaxSliceMorphism, m1: &LaxSliceMorphism) -> Result<LaxSliceMorphism> {
    if m1.tgt != m2.src {
        return Err(Error::EndpointMismatch("lax slice morphisms are not composable".into()));
    }
    let gf = m2.f.after(&m1.f)?;
    let alpha_f = whisker_right(&m2.phi, &m1.f)?;
    let phi = nat_vcomp(&m1.phi, &alpha_f)?;
    LaxSliceMorphism::new(m1.src.clone(), m2.tgt.clone(), gf, phi)
}

/// A 2-cell `gamma: f => f'` between parallel lax slice morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxSliceTwoCell {
    pub m1: LaxSliceMorphism,
    pub m2: LaxSliceMorphism,
    pub gamma: NatTrans,
}

/// Accepts `gamma` iff `phi' . (b * gamma) = phi` at every object.
pub fn validate_lax_2cell(gamma: NatTrans, m1: &LaxSliceMorphism, m2: &LaxSliceMorphism) -> Result<LaxSliceTwoCell> {
    if m1.src != m2.src || m1.tgt != m2.tgt {
        return Err(Error::EndpointMismatch("morphisms are not parallel".into()));
    }
    if *gamma.src() != m1.f || *gamma.tgt() != m2.f {
        return Err(Error::EndpointMismatch("2-cell must go from f to f'".into()));
    }
    let b = &m1.tgt.a;
    let y = b.cod();
    let w = m1.src.w();
    let mut report = Report::default();
    for o in 0..w.num_objects() {
        if y.compose(m2.phi.at(o), b.mor(gamma.at(o))) != m1.phi.at(o) {
            report.push(Violation::CompatibilityViolation(w.obj_name(o).into()));
        }
    }
    report.into_result("lax slice 2-cell", LaxSliceTwoCell { m1: m1.clone(), m2: m2.clone(), gamma })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    Strict,
    Lax,
}

/// Every morphism `o1 -> o2` of the strict or lax slice.
pub fn slice_morphisms(o1: &SliceObject, o2: &SliceObject, ambient: Ambient) -> Result<Vec<LaxSliceMorphism>> {
    if !same(o1.base(), o2.base()) {
        return Err(Error::BaseMismatch("slice objects over different bases".into()));
    }
    let mut out = Vec::new();
    let mut budget = Budget::from_env();
    for f in functors(o1.w(), o2.w())? {
        let bf = o2.a.after(&f)?;
        match ambient {
            Ambient::Strict => {
                if bf == o1.a {
                    let phi = NatTrans::identity(&bf);
                    out.push(LaxSliceMorphism { src: o1.clone(), tgt: o2.clone(), f, phi });
                }
            }
            Ambient::Lax => {
                let mut phis = Vec::new();
                for_each_nat(&bf, &o1.a, &|_, _| true, &mut budget, |c| {
                    phis.push(c.to_vec());
                    ControlFlow::Continue(())
                })?;
                for c in phis {
                    let phi = NatTrans::new(bf.clone(), o1.a.clone(), c)?;
                    out.push(LaxSliceMorphism { src: o1.clone(), tgt: o2.clone(), f: f.clone(), phi });
                }
            }
        }
    }
    Ok(out)
}

/// The hom-category of the slice between two objects, with the morphisms
/// and 2-cells each of its objects and arrows stands for.
#[derive(Debug, Clone)]
pub struct SliceHom {
    pub cat: Arc<FinCategory>,
    pub morphisms: Vec<LaxSliceMorphism>,
    pub cells: Vec<NatTrans>,
}

pub fn slice_hom_category(o1: &SliceObject, o2: &SliceObject, ambient: Ambient) -> Result<SliceHom> {
    let morphisms = slice_morphisms(o1, o2, ambient)?;
    let x = o2.w();
    let names: Vec<String> = morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let comps: Vec<&str> = m.phi.components().iter().map(|&k| o1.base().mor_name(k)).collect();
            format!("#{i}[{};{}]", m.f.describe(), comps.join(","))
        })
        .collect();
    let mut arrows = Vec::new();
    let mut cells = Vec::new();
    let mut ids = vec![0; morphisms.len()];
    let mut budget = Budget::from_env();
    for (i, m1) in morphisms.iter().enumerate() {
        for (j, m2) in morphisms.iter().enumerate() {
            let mut found = Vec::new();
            for_each_nat(&m1.f, &m2.f, &|_, _| true, &mut budget, |c| {
                found.push(c.to_vec());
                ControlFlow::Continue(())
            })?;
            for c in found {
                let gamma = NatTrans::new(m1.f.clone(), m2.f.clone(), c)?;
                if validate_lax_2cell(gamma.clone(), m1, m2).is_err() {
                    continue;
                }
                if i == j && gamma.is_identity() {
                    ids[i] = arrows.len();
                }
                let comps: Vec<&str> = gamma.components().iter().map(|&k| x.mor_name(k)).collect();
                arrows.push(Morphism { name: format!("{i}=>{j}[{}]", comps.join(",")), src: i, tgt: j });
                cells.push(gamma);
            }
        }
    }
    let cat = FinCategory::from_parts_trusted(names, arrows.clone(), ids, |g, f| {
        let comp = nat_vcomp(&cells[g], &cells[f]).ok()?;
        (0..cells.len()).find(|&k| arrows[k].src == arrows[f].src && arrows[k].tgt == arrows[g].tgt && cells[k] == comp)
    })?;
    Ok(SliceHom { cat: Arc::new(cat), morphisms, cells })
}

/// `c . a` with the 2-cells whiskered by `c`.
pub fn whisker_base(c: &FinFunctor, m: &LaxSliceMorphism) -> Result<(SliceObject, SliceObject, FinFunctor, NatTrans)> {
    let src = SliceObject::new(c.after(&m.src.a)?);
    let tgt = SliceObject::new(c.after(&m.tgt.a)?);
    let phi = whisker_left(c, &m.phi)?;
    Ok((src, tgt, m.f.clone(), phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinPreorder;

    fn two() -> Arc<FinCategory> {
        FinPreorder::chain(2).to_category_arc()
    }

    fn point() -> Arc<FinCategory> {
        Arc::new(FinCategory::terminal())
    }

    fn face(i: usize) -> SliceObject {
        SliceObject::new(FinFunctor::constant(&point(), &two(), i))
    }

    #[test]
    fn identities_are_units() {
        let t = two();
        let o = SliceObject::new(FinFunctor::identity(&t));
        let c0 = SliceObject::new(FinFunctor::constant(&t, &t, 0));
        for m in slice_morphisms(&c0, &o, Ambient::Lax).unwrap() {
            let l = lax_compose(&LaxSliceMorphism::identity(&o), &m).unwrap();
            let r = lax_compose(&m, &LaxSliceMorphism::identity(&c0)).unwrap();
            assert_eq!(l, m);
            assert_eq!(r, m);
        }
    }

    #[test]
    fn strict_and_lax_homs_between_faces() {
        // No strict triangle between the two points of 2.
        assert!(slice_morphisms(&face(0), &face(1), Ambient::Strict).unwrap().is_empty());
        // A lax morphism (1, d1) -> (1, d0) needs phi: d0 => d1, which is u.
        let h = slice_hom_category(&face(1), &face(0), Ambient::Lax).unwrap();
        assert_eq!(h.cat.num_objects(), 1);
        let h = slice_hom_category(&face(0), &face(1), Ambient::Lax).unwrap();
        assert_eq!(h.cat.num_objects(), 0);
    }

    #[test]
    fn composite_of_strict_is_strict() {
        let t = two();
        let id = SliceObject::new(FinFunctor::identity(&t));
        let m = LaxSliceMorphism::strict(face(1), id.clone(), FinFunctor::constant(&point(), &t, 1)).unwrap();
        let n = LaxSliceMorphism::identity(&id);
        assert!(lax_compose(&n, &m).unwrap().is_strict());
    }

    #[test]
    fn thin_base_accepts_every_cell() {
        let t = two();
        let o = SliceObject::new(FinFunctor::identity(&t));
        let ms = slice_morphisms(&o, &o, Ambient::Lax).unwrap();
        for m1 in &ms {
            for m2 in &ms {
                for g in crate::fincat::enumerate::nat_transformations(&m1.f, &m2.f).unwrap() {
                    assert!(validate_lax_2cell(g, m1, m2).is_ok());
                }
            }
        }
    }

    #[test]
    fn compatibility_is_checked() {
        // Base y = s, t: 0 -> 1. Over it, (2, b) with b(u) = s, and the
        // point 1. The morphisms (0, t) and (1, id) are related by u only if
        // id . b(u) = t, which fails.
        let y = Arc::new(FinCategory::parallel_pair());
        let x = two();
        let p = point();
        let s = y.morphism_index("s").unwrap();
        let tt = y.morphism_index("t").unwrap();
        let b = FinFunctor::new(x.clone(), y.clone(), vec![0, 1], vec![0, 1, s]).unwrap();
        let (o1, o2) = (SliceObject::new(FinFunctor::constant(&p, &y, 1)), SliceObject::new(b));
        let ms = slice_morphisms(&o1, &o2, Ambient::Lax).unwrap();
        assert_eq!(ms.len(), 3);
        let pick = |obj: usize, k: usize| ms.iter().find(|m| m.f.obj(0) == obj && m.phi.at(0) == k).unwrap();
        let to1 = pick(1, y.identity(1));
        let u = x.hom(0, 1)[0];
        let f0 = FinFunctor::constant(&p, &x, 0);
        let gamma = NatTrans::new(f0, to1.f.clone(), vec![u]).unwrap();
        assert!(validate_lax_2cell(gamma.clone(), pick(0, s), to1).is_ok());
        let err = validate_lax_2cell(gamma, pick(0, tt), to1).unwrap_err();
        assert!(err.to_string().contains("compatibility-violation(*)"), "{err}");
        let h = slice_hom_category(&o1, &o2, Ambient::Lax).unwrap();
        // identities plus the single cell (0, s) => (1, id)
        assert_eq!(h.cat.num_morphisms(), 4);
    }
}
