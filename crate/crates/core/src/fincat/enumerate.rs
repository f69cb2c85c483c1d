//! Exhaustive enumeration of functors and natural transformations.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::Result;
use crate::search::Budget;

use super::category::{FinCategory, Mor, Obj};
use super::functor::FinFunctor;
use super::nat::NatTrans;

/// Optional restrictions on candidate images. Unset means unrestricted.
#[derive(Default)]
pub struct Constraint<'a> {
    pub obj: Option<&'a dyn Fn(Obj, Obj) -> bool>,
    pub mor: Option<&'a dyn Fn(Mor, Mor) -> bool>,
}

/// Calls `visit(obj_map, mor_map)` for every functor `dom -> cod` allowed
/// by `cons`, in lexicographic order of (objects, morphisms).
pub fn for_each_functor(
    dom: &FinCategory,
    cod: &FinCategory,
    cons: &Constraint<'_>,
    budget: &mut Budget,
    mut visit: impl FnMut(&[Obj], &[Mor]) -> ControlFlow<()>,
) -> Result<()> {
    let n = dom.num_objects();
    let m = dom.num_morphisms();
    // Non-identity morphisms, and the composition checks that become
    // decidable once the last of (g, f, g.f) is assigned.
    let free: Vec<Mor> = (0..m).filter(|&f| !dom.is_identity(f)).collect();
    let mut slot = vec![usize::MAX; m];
    for (k, &f) in free.iter().enumerate() {
        slot[f] = k;
    }
    let mut checks: Vec<Vec<(Mor, Mor, Mor)>> = vec![Vec::new(); free.len()];
    for (g, f) in dom.composable_pairs() {
        let h = dom.compose(g, f);
        if dom.is_identity(g) || dom.is_identity(f) {
            continue;
        }
        let last = [g, f, h].iter().filter(|&&x| !dom.is_identity(x)).map(|&x| slot[x]).max().unwrap();
        checks[last].push((g, f, h));
    }
    // Morphisms whose endpoints are both among the first k objects.
    let mut by_obj: Vec<Vec<Mor>> = vec![Vec::new(); n];
    for &f in &free {
        by_obj[dom.src(f).max(dom.tgt(f))].push(f);
    }
    let mut obj_map = vec![0; n];
    let mut mor_map = vec![0; m];
    let mut stop = false;

    #[allow(clippy::too_many_arguments)]
    fn objects(
        k: usize,
        dom: &FinCategory,
        cod: &FinCategory,
        cons: &Constraint<'_>,
        by_obj: &[Vec<Mor>],
        free: &[Mor],
        checks: &[Vec<(Mor, Mor, Mor)>],
        obj_map: &mut Vec<Obj>,
        mor_map: &mut Vec<Mor>,
        budget: &mut Budget,
        stop: &mut bool,
        visit: &mut dyn FnMut(&[Obj], &[Mor]) -> ControlFlow<()>,
    ) -> Result<()> {
        if *stop {
            return Ok(());
        }
        if k == dom.num_objects() {
            for x in 0..k {
                mor_map[dom.identity(x)] = cod.identity(obj_map[x]);
            }
            return morphisms(0, dom, cod, cons, free, checks, obj_map, mor_map, budget, stop, visit);
        }
        for y in 0..cod.num_objects() {
            budget.tick()?;
            if cons.obj.is_some_and(|c| !c(k, y)) {
                continue;
            }
            obj_map[k] = y;
            let viable = by_obj[k].iter().all(|&f| !cod.hom(obj_map[dom.src(f)], obj_map[dom.tgt(f)]).is_empty());
            if viable {
                objects(k + 1, dom, cod, cons, by_obj, free, checks, obj_map, mor_map, budget, stop, visit)?;
            }
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn morphisms(
        k: usize,
        dom: &FinCategory,
        cod: &FinCategory,
        cons: &Constraint<'_>,
        free: &[Mor],
        checks: &[Vec<(Mor, Mor, Mor)>],
        obj_map: &mut Vec<Obj>,
        mor_map: &mut Vec<Mor>,
        budget: &mut Budget,
        stop: &mut bool,
        visit: &mut dyn FnMut(&[Obj], &[Mor]) -> ControlFlow<()>,
    ) -> Result<()> {
        if *stop {
            return Ok(());
        }
        if k == free.len() {
            if visit(obj_map, mor_map).is_break() {
                *stop = true;
            }
            return Ok(());
        }
        let f = free[k];
        let hom = cod.hom(obj_map[dom.src(f)], obj_map[dom.tgt(f)]);
        for &g in hom {
            budget.tick()?;
            if cons.mor.is_some_and(|c| !c(f, g)) {
                continue;
            }
            mor_map[f] = g;
            let ok = checks[k].iter().all(|&(a, b, h)| cod.compose(mor_map[a], mor_map[b]) == mor_map[h]);
            if ok {
                morphisms(k + 1, dom, cod, cons, free, checks, obj_map, mor_map, budget, stop, visit)?;
            }
        }
        Ok(())
    }

    objects(0, dom, cod, cons, &by_obj, &free, &checks, &mut obj_map, &mut mor_map, budget, &mut stop, &mut visit)
}

/// Every functor `dom -> cod`.
pub fn functors(dom: &Arc<FinCategory>, cod: &Arc<FinCategory>) -> Result<Vec<FinFunctor>> {
    functors_with(dom, cod, &Constraint::default())
}

pub fn functors_with(dom: &Arc<FinCategory>, cod: &Arc<FinCategory>, cons: &Constraint<'_>) -> Result<Vec<FinFunctor>> {
    let mut out = Vec::new();
    let mut budget = Budget::from_env();
    for_each_functor(dom, cod, cons, &mut budget, |o, m| {
        out.push(FinFunctor::new_trusted(dom.clone(), cod.clone(), o.to_vec(), m.to_vec()));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn count_functors_with(dom: &FinCategory, cod: &FinCategory, cons: &Constraint<'_>) -> Result<usize> {
    let mut n = 0;
    let mut budget = Budget::from_env();
    for_each_functor(dom, cod, cons, &mut budget, |_, _| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    Ok(n)
}

/// Calls `visit(components)` for every natural transformation `src => tgt`
/// whose component at x satisfies `allowed(x, k)`.
pub fn for_each_nat(
    src: &FinFunctor,
    tgt: &FinFunctor,
    allowed: &dyn Fn(Obj, Mor) -> bool,
    budget: &mut Budget,
    mut visit: impl FnMut(&[Mor]) -> ControlFlow<()>,
) -> Result<()> {
    let d = src.dom();
    let n = d.num_objects();
    let mut squares: Vec<Vec<Mor>> = vec![Vec::new(); n];
    for m in 0..d.num_morphisms() {
        if !d.is_identity(m) {
            squares[d.src(m).max(d.tgt(m))].push(m);
        }
    }
    let mut comps = vec![0; n];
    let mut stop = false;

    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        src: &FinFunctor,
        tgt: &FinFunctor,
        squares: &[Vec<Mor>],
        allowed: &dyn Fn(Obj, Mor) -> bool,
        comps: &mut Vec<Mor>,
        budget: &mut Budget,
        stop: &mut bool,
        visit: &mut dyn FnMut(&[Mor]) -> ControlFlow<()>,
    ) -> Result<()> {
        if *stop {
            return Ok(());
        }
        let d = src.dom();
        let c = src.cod();
        if k == d.num_objects() {
            if visit(comps).is_break() {
                *stop = true;
            }
            return Ok(());
        }
        for &h in c.hom(src.obj(k), tgt.obj(k)) {
            budget.tick()?;
            if !allowed(k, h) {
                continue;
            }
            comps[k] = h;
            let natural = squares[k].iter().all(|&m| {
                let (x, y) = (d.src(m), d.tgt(m));
                c.compose(tgt.mor(m), comps[x]) == c.compose(comps[y], src.mor(m))
            });
            if natural {
                go(k + 1, src, tgt, squares, allowed, comps, budget, stop, visit)?;
            }
        }
        Ok(())
    }

    go(0, src, tgt, &squares, allowed, &mut comps, budget, &mut stop, &mut visit)
}

/// Every natural transformation `src => tgt`.
pub fn nat_transformations(src: &FinFunctor, tgt: &FinFunctor) -> Result<Vec<NatTrans>> {
    let mut out = Vec::new();
    let mut budget = Budget::from_env();
    for_each_nat(src, tgt, &|_, _| true, &mut budget, |c| {
        out.push(NatTrans::new_trusted(src.clone(), tgt.clone(), c.to_vec()));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// An isomorphism of categories found by explicit bijection search.
pub fn find_isomorphism(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> Result<Option<FinFunctor>> {
    if a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms() {
        return Ok(None);
    }
    let mut found = None;
    let mut budget = Budget::from_env();
    for_each_functor(a, b, &Constraint::default(), &mut budget, |o, m| {
        let mut so = vec![false; b.num_objects()];
        let mut sm = vec![false; b.num_morphisms()];
        let bij = o.iter().all(|&x| !std::mem::replace(&mut so[x], true))
            && m.iter().all(|&x| !std::mem::replace(&mut sm[x], true));
        if bij {
            found = Some(FinFunctor::new_trusted(a.clone(), b.clone(), o.to_vec(), m.to_vec()));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{FinCategory, FinPreorder};

    #[test]
    fn functor_counts_match_hand_counts() {
        let two = FinPreorder::chain(2).to_category_arc();
        let three = FinPreorder::chain(3).to_category_arc();
        let pt = Arc::new(FinCategory::terminal());
        // Monotone maps 2 -> 3: pairs i <= j.
        assert_eq!(functors(&two, &three).unwrap().len(), 6);
        assert_eq!(functors(&three, &pt).unwrap().len(), 1);
        assert_eq!(functors(&pt, &three).unwrap().len(), 3);
        let z2 = Arc::new(FinCategory::monoid(&["e", "s"], |a, b| a ^ b).unwrap());
        // Endomorphisms of the group of order two.
        assert_eq!(functors(&z2, &z2).unwrap().len(), 2);
        let empty = Arc::new(FinCategory::empty());
        assert_eq!(functors(&empty, &z2).unwrap().len(), 1);
        assert_eq!(functors(&z2, &empty).unwrap().len(), 0);
    }

    #[test]
    fn every_enumerated_functor_validates() {
        let two = FinPreorder::chain(2).to_category_arc();
        let sq = FinPreorder::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            &[(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)],
        )
        .unwrap()
        .to_category_arc();
        for f in functors(&sq, &two).unwrap() {
            assert!(FinFunctor::new(sq.clone(), two.clone(), f.obj_map().to_vec(), f.mor_map().to_vec()).is_ok());
        }
    }

    #[test]
    fn nat_count_between_face_maps() {
        let two = FinPreorder::chain(2).to_category_arc();
        let id = FinFunctor::identity(&two);
        let c0 = FinFunctor::constant(&two, &two, 0);
        let c1 = FinFunctor::constant(&two, &two, 1);
        assert_eq!(nat_transformations(&c0, &id).unwrap().len(), 1);
        assert_eq!(nat_transformations(&id, &c0).unwrap().len(), 0);
        assert_eq!(nat_transformations(&c0, &c1).unwrap().len(), 1);
    }

    #[test]
    fn budget_cap_is_reported() {
        let c = FinPreorder::chain(4).to_category_arc();
        let mut budget = Budget::new(5);
        let r = for_each_functor(&c, &c, &Constraint::default(), &mut budget, |_, _| ControlFlow::Continue(()));
        assert!(matches!(r, Err(crate::error::Error::BudgetExhausted(5))));
    }

    #[test]
    fn isomorphism_search() {
        let a = FinPreorder::chain(3).to_category_arc();
        let b = Arc::new(FinPreorder::chain(3).opposite().to_category());
        assert!(find_isomorphism(&a, &b).unwrap().is_some());
        let v = FinPreorder::new(vec!["0".into(), "1".into(), "2".into()], &[(0, 1), (0, 2)]).unwrap();
        let vc = v.to_category_arc();
        assert!(find_isomorphism(&a, &vc).unwrap().is_none());
    }
}
