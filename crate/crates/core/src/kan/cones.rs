use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::Result;
use crate::fincat::enumerate::for_each_nat;
use crate::fincat::{FinFunctor, Mor, Obj};
use crate::search::Budget;

/// A terminal cone (or initial cocone) over a diagram, when one exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeSearchResult {
    pub found: bool,
    pub apex: Option<Obj>,
    pub legs: Vec<Mor>,
    /// Number of cones the candidate was tested against.
    pub competitors: usize,
    /// For each competing cone `(apex, legs)`, its mediating morphism.
    #[serde(skip)]
    pub certificate: Vec<(Obj, Vec<Mor>, Mor)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Limit,
    Colimit,
}

fn all_cones(d: &FinFunctor, side: Side, budget: &mut Budget) -> Result<Vec<(Obj, Vec<Mor>)>> {
    let (shape, z) = (d.dom(), d.cod());
    let mut out = Vec::new();
    for p in 0..z.num_objects() {
        let k = FinFunctor::constant(shape, z, p);
        let (src, tgt) = match side {
            Side::Limit => (&k, d),
            Side::Colimit => (d, &k),
        };
        for_each_nat(src, tgt, &|_, _| true, budget, |legs| {
            out.push((p, legs.to_vec()));
            ControlFlow::Continue(())
        })?;
    }
    Ok(out)
}

fn mediators(d: &FinFunctor, side: Side, cone: &(Obj, Vec<Mor>), other: &(Obj, Vec<Mor>)) -> Vec<Mor> {
    let z = d.cod();
    let (p, legs) = cone;
    let (q, legs2) = other;
    match side {
        Side::Limit => z
            .hom(*q, *p)
            .iter()
            .copied()
            .filter(|&m| legs.iter().zip(legs2).all(|(&l, &l2)| z.compose(l, m) == l2))
            .collect(),
        Side::Colimit => z
            .hom(*p, *q)
            .iter()
            .copied()
            .filter(|&m| legs.iter().zip(legs2).all(|(&l, &l2)| z.compose(m, l) == l2))
            .collect(),
    }
}

fn search(d: &FinFunctor, side: Side) -> Result<ConeSearchResult> {
    let mut budget = Budget::from_env();
    let cones = all_cones(d, side, &mut budget)?;
    'candidates: for cone in &cones {
        let mut certificate = Vec::with_capacity(cones.len());
        for other in &cones {
            budget.tick()?;
            match mediators(d, side, cone, other)[..] {
                [m] => certificate.push((other.0, other.1.clone(), m)),
                _ => continue 'candidates,
            }
        }
        return Ok(ConeSearchResult {
            found: true,
            apex: Some(cone.0),
            legs: cone.1.clone(),
            competitors: cones.len(),
            certificate,
        });
    }
    Ok(ConeSearchResult {
        found: false,
        apex: None,
        legs: Vec::new(),
        competitors: cones.len(),
        certificate: Vec::new(),
    })
}

/// Exhaustive search for a terminal cone over `d`.
pub fn conical_limit(d: &FinFunctor) -> Result<ConeSearchResult> {
    search(d, Side::Limit)
}

/// Exhaustive search for an initial cocone under `d`.
pub fn conical_colimit(d: &FinFunctor) -> Result<ConeSearchResult> {
    search(d, Side::Colimit)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::{FinCategory, FinPreorder};

    fn vee() -> Arc<FinCategory> {
        FinPreorder::new(vec!["0".into(), "1".into(), "2".into()], &[(0, 1), (0, 2)]).unwrap().to_category_arc()
    }

    #[test]
    fn empty_diagram_gives_terminal() {
        let z = FinPreorder::chain(3).to_category_arc();
        let d = FinFunctor::new(Arc::new(FinCategory::empty()), z.clone(), vec![], vec![]).unwrap();
        assert_eq!(conical_limit(&d).unwrap().apex, Some(2));
        assert_eq!(conical_colimit(&d).unwrap().apex, Some(0));
        let v = vee();
        let d = FinFunctor::new(Arc::new(FinCategory::empty()), v, vec![], vec![]).unwrap();
        assert!(!conical_limit(&d).unwrap().found);
    }

    #[test]
    fn meet_but_no_join_in_vee() {
        let v = vee();
        let shape = Arc::new(FinCategory::discrete(&["l", "r"]));
        let d = FinFunctor::new(shape, v.clone(), vec![1, 2], vec![v.identity(1), v.identity(2)]).unwrap();
        let lim = conical_limit(&d).unwrap();
        assert_eq!(lim.apex, Some(0));
        assert_eq!(lim.certificate.len(), lim.competitors);
        assert!(!conical_colimit(&d).unwrap().found);
    }

    #[test]
    fn equalizer_in_a_monoid_is_missing() {
        // Parallel pair mapped into the one-object monoid {1, e} with e.e = e.
        let m = Arc::new(FinCategory::monoid(&["1", "e"], |a, b| a | b).unwrap());
        let pp = Arc::new(FinCategory::parallel_pair());
        let d = FinFunctor::new(pp, m, vec![0, 0], vec![0, 0, 0, 1]).unwrap();
        // The only cone has legs (e, e), and both 1 and e mediate it to itself.
        let lim = conical_limit(&d).unwrap();
        assert!(!lim.found);
        assert_eq!(lim.competitors, 1);
    }
}
