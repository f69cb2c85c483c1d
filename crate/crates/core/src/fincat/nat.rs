use std::fmt;

use crate::error::{Error, Report, Result, Violation};

use super::category::{Mor, Obj};
use super::functor::{same, FinFunctor};

/// A natural transformation `src => tgt`, one component per domain object.
#[derive(Clone, PartialEq, Eq)]
pub struct NatTrans {
    src: FinFunctor,
    tgt: FinFunctor,
    components: Vec<Mor>,
}

impl fmt::Debug for NatTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("NatTrans").field(&self.components).finish()
    }
}

impl NatTrans {
    pub fn new(src: FinFunctor, tgt: FinFunctor, components: Vec<Mor>) -> Result<NatTrans> {
        let mut report = Report::default();
        if !same(src.dom(), tgt.dom()) || !same(src.cod(), tgt.cod()) {
            return Err(Error::EndpointMismatch("functors are not parallel".into()));
        }
        let d = src.dom().clone();
        let c = src.cod().clone();
        if components.len() != d.num_objects() || components.iter().any(|&m| m >= c.num_morphisms()) {
            return Err(Error::invalid(
                "natural transformation",
                Violation::Other("component list does not match the domain".into()),
            ));
        }
        for x in 0..d.num_objects() {
            let k = components[x];
            if c.src(k) != src.obj(x) || c.tgt(k) != tgt.obj(x) {
                report.push(Violation::ComponentEndpoint(d.obj_name(x).to_string()));
            }
        }
        if report.is_empty() {
            for m in 0..d.num_morphisms() {
                let (x, y) = (d.src(m), d.tgt(m));
                if c.compose(tgt.mor(m), components[x]) != c.compose(components[y], src.mor(m)) {
                    report.push(Violation::NaturalityViolation(d.mor_name(m).to_string()));
                }
            }
        }
        report.into_result("natural transformation", NatTrans { src, tgt, components })
    }

    pub(crate) fn new_trusted(src: FinFunctor, tgt: FinFunctor, components: Vec<Mor>) -> NatTrans {
        let t = NatTrans { src, tgt, components };
        debug_assert!(NatTrans::new(t.src.clone(), t.tgt.clone(), t.components.clone()).is_ok());
        t
    }

    pub fn identity(f: &FinFunctor) -> NatTrans {
        let c = f.cod();
        let components = (0..f.dom().num_objects()).map(|x| c.identity(f.obj(x))).collect();
        NatTrans { src: f.clone(), tgt: f.clone(), components }
    }

    pub fn src(&self) -> &FinFunctor {
        &self.src
    }

    pub fn tgt(&self) -> &FinFunctor {
        &self.tgt
    }

    #[inline]
    pub fn at(&self, x: Obj) -> Mor {
        self.components[x]
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt
            && self.components.iter().enumerate().all(|(x, &k)| k == self.src.cod().identity(self.src.obj(x)))
    }
}

/// `s . t`: first `t`, then `s`.
pub fn nat_vcomp(s: &NatTrans, t: &NatTrans) -> Result<NatTrans> {
    if t.tgt != s.src {
        return Err(Error::NotComposable("target of t is not the source of s".into()));
    }
    let c = s.src.cod();
    let components = (0..t.components.len()).map(|x| c.compose(s.at(x), t.at(x))).collect();
    Ok(NatTrans { src: t.src.clone(), tgt: s.tgt.clone(), components })
}

/// `g * t`, component at x is `g(t_x)`.
pub fn whisker_left(g: &FinFunctor, t: &NatTrans) -> Result<NatTrans> {
    let components = t.components.iter().map(|&k| g.mor(k)).collect();
    Ok(NatTrans { src: g.after(&t.src)?, tgt: g.after(&t.tgt)?, components })
}

/// `t * f`, component at x is `t_{f(x)}`.
pub fn whisker_right(t: &NatTrans, f: &FinFunctor) -> Result<NatTrans> {
    let components = f.obj_map().iter().map(|&x| t.at(x)).collect();
    Ok(NatTrans { src: t.src.after(f)?, tgt: t.tgt.after(f)?, components })
}

/// `g * t * f`, component at x is `g(t_{f(x)})`.
pub fn nat_whisker(f: &FinFunctor, t: &NatTrans, g: &FinFunctor) -> Result<NatTrans> {
    whisker_left(g, &whisker_right(t, f)?)
}

/// Horizontal composite `s * t` of `t: F => G: A -> B` and `s: H => K: B -> C`.
pub fn nat_hcomp(s: &NatTrans, t: &NatTrans) -> Result<NatTrans> {
    let left = whisker_right(s, &t.src)?;
    let right = whisker_left(&s.tgt, t)?;
    nat_vcomp(&right, &left)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::{FinCategory, FinPreorder};

    fn two() -> Arc<FinCategory> {
        FinPreorder::chain(2).to_category_arc()
    }

    fn point() -> Arc<FinCategory> {
        Arc::new(FinCategory::terminal())
    }

    #[test]
    fn face_maps_related_by_u() {
        let (t, p) = (two(), point());
        let d0 = FinFunctor::constant(&p, &t, 0);
        let d1 = FinFunctor::constant(&p, &t, 1);
        let u = t.hom(0, 1)[0];
        assert!(NatTrans::new(d0.clone(), d1.clone(), vec![u]).is_ok());
        assert!(NatTrans::new(d1, d0, vec![u]).is_err());
    }

    #[test]
    fn constant_to_identity_with_wrong_component() {
        let t = two();
        let c0 = FinFunctor::constant(&t, &t, 0);
        let id = FinFunctor::identity(&t);
        let u = t.hom(0, 1)[0];
        // Component at 1 must go 0 -> 1; id1 has the wrong endpoints.
        let err = NatTrans::new(c0.clone(), id.clone(), vec![t.identity(0), t.identity(1)]).unwrap_err();
        assert!(err.to_string().contains("component-endpoint-error(1)"), "{err}");
        let ok = NatTrans::new(c0, id, vec![t.identity(0), u]);
        assert!(ok.is_ok());
    }

    #[test]
    fn naturality_violation_is_named() {
        // Parallel pair s, t: a -> b.
        let p = Arc::new(
            FinCategory::from_parts(
                vec!["a".into(), "b".into()],
                vec![
                    crate::fincat::Morphism { name: "ia".into(), src: 0, tgt: 0 },
                    crate::fincat::Morphism { name: "ib".into(), src: 1, tgt: 1 },
                    crate::fincat::Morphism { name: "s".into(), src: 0, tgt: 1 },
                    crate::fincat::Morphism { name: "t".into(), src: 0, tgt: 1 },
                ],
                vec![0, 1],
                |g, f| {
                    if g < 2 {
                        Some(f)
                    } else if f < 2 {
                        Some(g)
                    } else {
                        None
                    }
                },
            )
            .unwrap(),
        );
        let two = two();
        // Identity components between the functors that swap s and t fail at s.
        let f = FinFunctor::new(p.clone(), two.clone(), vec![0, 1], vec![0, 1, 2, 2]).unwrap();
        assert!(NatTrans::new(f.clone(), f.clone(), vec![0, 1]).is_ok());
        let g = FinFunctor::new(p.clone(), p.clone(), vec![0, 1], vec![0, 1, 2, 3]).unwrap();
        let h = FinFunctor::new(p.clone(), p.clone(), vec![0, 1], vec![0, 1, 3, 2]).unwrap();
        let err = NatTrans::new(g, h, vec![0, 1]).unwrap_err();
        assert!(err.to_string().contains("naturality-violation(s)"), "{err}");
    }

    #[test]
    fn whisker_by_collapse_gives_identity() {
        let (t, p) = (two(), point());
        let d0 = FinFunctor::constant(&p, &t, 0);
        let d1 = FinFunctor::constant(&p, &t, 1);
        let u = NatTrans::new(d0, d1, vec![t.hom(0, 1)[0]]).unwrap();
        let s0 = FinFunctor::constant(&t, &p, 0);
        let w = whisker_left(&s0, &u).unwrap();
        assert!(w.is_identity());
    }

    #[test]
    fn vertical_composite_in_a_chain_is_the_transitivity_witness() {
        let c = FinPreorder::chain(3).to_category_arc();
        let p = point();
        let k = |x| FinFunctor::constant(&p, &c, x);
        let a = NatTrans::new(k(0), k(1), vec![c.hom(0, 1)[0]]).unwrap();
        let b = NatTrans::new(k(1), k(2), vec![c.hom(1, 2)[0]]).unwrap();
        let ba = nat_vcomp(&b, &a).unwrap();
        assert_eq!(ba.at(0), c.hom(0, 2)[0]);
        assert!(nat_vcomp(&a, &b).is_err());
    }
}
