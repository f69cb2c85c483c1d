use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::constructions::{comma_category, CommaResult};
use crate::error::{Error, Result};
use crate::fincat::enumerate::{for_each_nat, functors, nat_transformations};
use crate::fincat::{nat_vcomp, same, whisker_right, FinCategory, FinFunctor, Mor, NatTrans, Obj};
use crate::search::Budget;

use super::cones::{conical_colimit, conical_limit, ConeSearchResult};

/// A pointwise Kan extension, or the object where it breaks down.
#[derive(Debug, Clone, Serialize)]
pub struct KanResult {
    pub found: bool,
    /// Object of the extension's domain with no pointwise (co)limit.
    pub failing: Option<String>,
    /// Functor/2-cell pairs the bijection was checked against.
    pub candidates: usize,
    /// Every candidate factored exactly once.
    pub certified: bool,
    #[serde(skip)]
    pub extension: Option<FinFunctor>,
    /// `ran . h => j`, or `j => lan . h`.
    #[serde(skip)]
    pub cell: Option<NatTrans>,
}

impl KanResult {
    fn missing(x: &FinCategory, o: Obj) -> KanResult {
        KanResult {
            found: false,
            failing: Some(x.obj_name(o).to_string()),
            candidates: 0,
            certified: false,
            extension: None,
            cell: None,
        }
    }
}

fn check(h: &FinFunctor, j: &FinFunctor) -> Result<()> {
    if !same(h.dom(), j.dom()) {
        return Err(Error::EndpointMismatch("h and j must share their domain".into()));
    }
    Ok(())
}

struct Pointwise {
    commas: Vec<CommaResult>,
    limits: Vec<ConeSearchResult>,
}

fn point(x: &Arc<FinCategory>, o: Obj) -> FinFunctor {
    FinFunctor::constant(&Arc::new(FinCategory::terminal()), x, o)
}

/// Right Kan extension of `j` along `h`, computed as limits over `o | h`,
/// then certified against every functor `f` and every `beta: f h => j`.
pub fn right_kan(h: &FinFunctor, j: &FinFunctor) -> Result<KanResult> {
    right_kan_with(h, j, true)
}

pub fn right_kan_with(h: &FinFunctor, j: &FinFunctor, certify: bool) -> Result<KanResult> {
    check(h, j)?;
    let (x, z) = (h.cod().clone(), j.cod().clone());
    let mut pw = Pointwise { commas: Vec::new(), limits: Vec::new() };
    for o in 0..x.num_objects() {
        let c = comma_category(&point(&x, o), h)?;
        let lim = conical_limit(&j.after(&c.proj1)?)?;
        if !lim.found {
            return Ok(KanResult::missing(&x, o));
        }
        pw.commas.push(c);
        pw.limits.push(lim);
    }
    let apex = |o: Obj| pw.limits[o].apex.unwrap();
    let mut mors = Vec::with_capacity(x.num_morphisms());
    for u in 0..x.num_morphisms() {
        let (o, o2) = (x.src(u), x.tgt(u));
        let (c, c2) = (&pw.commas[o], &pw.commas[o2]);
        // restrict the cone at o along u to a cone over the diagram at o2
        let legs: Vec<Mor> = c2
            .triples()
            .iter()
            .map(|&(_, ow, beta)| pw.limits[o].legs[c.object(0, ow, x.compose(beta, u)).unwrap()])
            .collect();
        let m = z
            .hom(apex(o), apex(o2))
            .iter()
            .copied()
            .find(|&m| pw.limits[o2].legs.iter().zip(&legs).all(|(&l, &l2)| z.compose(l, m) == l2))
            .ok_or_else(|| Error::Construction("limit cone has no mediating morphism".into()))?;
        mors.push(m);
    }
    let ran = FinFunctor::new(x.clone(), z.clone(), (0..x.num_objects()).map(apex).collect(), mors)?;
    let w = h.dom();
    let comps = (0..w.num_objects())
        .map(|ow| {
            let ho = h.obj(ow);
            pw.limits[ho].legs[pw.commas[ho].object(0, ow, x.identity(ho)).unwrap()]
        })
        .collect();
    let phi = NatTrans::new(ran.after(h)?, j.clone(), comps)?;
    let (candidates, certified) = if certify { certify_right(h, j, &ran, &phi)? } else { (0, false) };
    Ok(KanResult { found: true, failing: None, candidates, certified, extension: Some(ran), cell: Some(phi) })
}

/// For each `f: x -> z` and `beta: f h => j`, exactly one `b: f => ran`
/// with `phi . (b * h) = beta`.
fn certify_right(h: &FinFunctor, j: &FinFunctor, ran: &FinFunctor, phi: &NatTrans) -> Result<(usize, bool)> {
    let mut budget = Budget::from_env();
    let mut n = 0;
    for f in functors(h.cod(), j.cod())? {
        let mut hats = Vec::new();
        for_each_nat(&f, ran, &|_, _| true, &mut budget, |c| {
            hats.push(c.to_vec());
            ControlFlow::Continue(())
        })?;
        let hats: Vec<NatTrans> =
            hats.into_iter().map(|c| NatTrans::new(f.clone(), ran.clone(), c)).collect::<Result<_>>()?;
        let images: Vec<NatTrans> =
            hats.iter().map(|b| nat_vcomp(phi, &whisker_right(b, h)?)).collect::<Result<_>>()?;
        for beta in nat_transformations(&f.after(h)?, j)? {
            budget.tick()?;
            n += 1;
            if images.iter().filter(|i| **i == beta).count() != 1 {
                return Ok((n, false));
            }
        }
    }
    Ok((n, true))
}

/// Left Kan extension of `j` along `h`, computed as colimits over `h | o`.
pub fn left_kan(h: &FinFunctor, j: &FinFunctor) -> Result<KanResult> {
    left_kan_with(h, j, true)
}

pub fn left_kan_with(h: &FinFunctor, j: &FinFunctor, certify: bool) -> Result<KanResult> {
    check(h, j)?;
    let (x, z) = (h.cod().clone(), j.cod().clone());
    let mut pw = Pointwise { commas: Vec::new(), limits: Vec::new() };
    for o in 0..x.num_objects() {
        let c = comma_category(h, &point(&x, o))?;
        let colim = conical_colimit(&j.after(&c.proj0)?)?;
        if !colim.found {
            return Ok(KanResult::missing(&x, o));
        }
        pw.commas.push(c);
        pw.limits.push(colim);
    }
    let apex = |o: Obj| pw.limits[o].apex.unwrap();
    let mut mors = Vec::with_capacity(x.num_morphisms());
    for u in 0..x.num_morphisms() {
        let (o, o2) = (x.src(u), x.tgt(u));
        let (c, c2) = (&pw.commas[o], &pw.commas[o2]);
        let legs: Vec<Mor> = c
            .triples()
            .iter()
            .map(|&(ow, _, beta)| pw.limits[o2].legs[c2.object(ow, 0, x.compose(u, beta)).unwrap()])
            .collect();
        let m = z
            .hom(apex(o), apex(o2))
            .iter()
            .copied()
            .find(|&m| pw.limits[o].legs.iter().zip(&legs).all(|(&l, &l2)| z.compose(m, l) == l2))
            .ok_or_else(|| Error::Construction("colimit cocone has no mediating morphism".into()))?;
        mors.push(m);
    }
    let lan = FinFunctor::new(x.clone(), z.clone(), (0..x.num_objects()).map(apex).collect(), mors)?;
    let w = h.dom();
    let comps = (0..w.num_objects())
        .map(|ow| {
            let ho = h.obj(ow);
            pw.limits[ho].legs[pw.commas[ho].object(ow, 0, x.identity(ho)).unwrap()]
        })
        .collect();
    let phi = NatTrans::new(j.clone(), lan.after(h)?, comps)?;
    let (candidates, certified) = if certify { certify_left(h, j, &lan, &phi)? } else { (0, false) };
    Ok(KanResult { found: true, failing: None, candidates, certified, extension: Some(lan), cell: Some(phi) })
}

fn certify_left(h: &FinFunctor, j: &FinFunctor, lan: &FinFunctor, phi: &NatTrans) -> Result<(usize, bool)> {
    let mut budget = Budget::from_env();
    let mut n = 0;
    for f in functors(h.cod(), j.cod())? {
        let mut hats = Vec::new();
        for_each_nat(lan, &f, &|_, _| true, &mut budget, |c| {
            hats.push(c.to_vec());
            ControlFlow::Continue(())
        })?;
        let hats: Vec<NatTrans> =
            hats.into_iter().map(|c| NatTrans::new(lan.clone(), f.clone(), c)).collect::<Result<_>>()?;
        let images: Vec<NatTrans> =
            hats.iter().map(|b| nat_vcomp(&whisker_right(b, h)?, phi)).collect::<Result<_>>()?;
        for beta in nat_transformations(j, &f.after(h)?)? {
            budget.tick()?;
            n += 1;
            if images.iter().filter(|i| **i == beta).count() != 1 {
                return Ok((n, false));
            }
        }
    }
    Ok((n, true))
}

/// `x -> 1`
pub fn to_point(x: &Arc<FinCategory>) -> FinFunctor {
    FinFunctor::constant(x, &Arc::new(FinCategory::terminal()), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinPreorder;

    fn vee() -> Arc<FinCategory> {
        FinPreorder::new(vec!["0".into(), "1".into(), "2".into()], &[(0, 1), (0, 2)]).unwrap().to_category_arc()
    }

    #[test]
    fn along_identity() {
        let t = FinPreorder::chain(2).to_category_arc();
        let z = FinPreorder::chain(3).to_category_arc();
        for j in functors(&t, &z).unwrap() {
            let r = right_kan(&FinFunctor::identity(&t), &j).unwrap();
            assert!(r.found && r.certified);
            assert_eq!(r.extension.unwrap(), j);
            assert!(r.cell.unwrap().is_identity());
            let l = left_kan(&FinFunctor::identity(&t), &j).unwrap();
            assert_eq!(l.extension.unwrap(), j);
        }
    }

    #[test]
    fn along_the_point_is_the_limit() {
        let v = vee();
        let shape = Arc::new(FinCategory::discrete(&["l", "r"]));
        let j = FinFunctor::new(shape.clone(), v.clone(), vec![1, 2], vec![v.identity(1), v.identity(2)]).unwrap();
        let r = right_kan(&to_point(&shape), &j).unwrap();
        assert!(r.certified);
        assert_eq!(r.extension.unwrap().obj(0), conical_limit(&j).unwrap().apex.unwrap());
        let l = left_kan(&to_point(&shape), &j).unwrap();
        assert!(!l.found);
        assert_eq!(l.failing.as_deref(), Some("*"));
    }

    #[test]
    fn gap_is_named() {
        // x = {b, c <= t}; t needs the join of 1 and 2 in V for lan and the
        // empty meet (a top) for ran. V has neither.
        let v = vee();
        let x =
            FinPreorder::new(vec!["b".into(), "c".into(), "t".into()], &[(0, 2), (1, 2)]).unwrap().to_category_arc();
        let w = Arc::new(FinCategory::discrete(&["p", "q"]));
        let h = FinFunctor::new(w.clone(), x.clone(), vec![0, 1], vec![x.identity(0), x.identity(1)]).unwrap();
        let j = FinFunctor::new(w, v.clone(), vec![1, 2], vec![v.identity(1), v.identity(2)]).unwrap();
        let l = left_kan(&h, &j).unwrap();
        assert!(!l.found);
        assert_eq!(l.failing.as_deref(), Some("t"));
        let r = right_kan(&h, &j).unwrap();
        assert_eq!(r.failing.as_deref(), Some("t"));
        // Dropping t leaves a discrete x where both exist.
        let x2 = Arc::new(FinCategory::discrete(&["b", "c"]));
        let h2 = FinFunctor::new(h.dom().clone(), x2.clone(), vec![0, 1], vec![0, 1]).unwrap();
        assert!(right_kan(&h2, &j).unwrap().certified);
        assert!(left_kan(&h2, &j).unwrap().certified);
    }
}
