use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{Mor, Obj};

use super::pocat::PoCategory;

/// A cone `(q, p0, p1)` universal against every test object of the
/// po-category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CommaCandidate {
    pub q: Obj,
    pub p0: Mor,
    pub p1: Mor,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Square {
    Lax,
    Strict,
}

/// A comma object of `a: x -> y` along `b: w -> y`, certified by its
/// universal property against every object of `k`, or `None`.
pub fn comma_search(k: &PoCategory, a: Mor, b: Mor) -> Result<Option<CommaCandidate>> {
    search(k, a, b, Square::Lax)
}

/// Same as [`comma_search`] with a strictly commuting square.
pub fn pullback_search(k: &PoCategory, a: Mor, b: Mor) -> Result<Option<CommaCandidate>> {
    search(k, a, b, Square::Strict)
}

fn search(k: &PoCategory, a: Mor, b: Mor, sq: Square) -> Result<Option<CommaCandidate>> {
    let c = k.cat();
    if c.tgt(a) != c.tgt(b) {
        return Err(Error::CodomainMismatch(format!(
            "{} and {} have different codomains",
            c.mor_name(a),
            c.mor_name(b)
        )));
    }
    let (x, w) = (c.src(a), c.src(b));
    let fits = |h0: Mor, h1: Mor| {
        let (l, r) = (c.compose(a, h0), c.compose(b, h1));
        match sq {
            Square::Lax => k.le(l, r),
            Square::Strict => l == r,
        }
    };
    for q in 0..c.num_objects() {
        for &p0 in c.hom(q, x) {
            for &p1 in c.hom(q, w) {
                if fits(p0, p1) && universal(k, x, w, p0, p1, &fits) {
                    return Ok(Some(CommaCandidate { q, p0, p1 }));
                }
            }
        }
    }
    Ok(None)
}

fn universal(k: &PoCategory, x: Obj, w: Obj, p0: Mor, p1: Mor, fits: &dyn Fn(Mor, Mor) -> bool) -> bool {
    let c = k.cat();
    let q = c.src(p0);
    (0..c.num_objects()).all(|t| {
        let through_q = c.hom(t, q);
        // 1-cells: each fitting pair factors exactly once.
        let one = c.hom(t, x).iter().all(|&h0| {
            c.hom(t, w).iter().all(|&h1| {
                let n = through_q.iter().filter(|&&h| c.compose(p0, h) == h0 && c.compose(p1, h) == h1).count();
                n == usize::from(fits(h0, h1))
            })
        });
        // 2-cells: componentwise comparable factorizations are comparable.
        let two = through_q.iter().all(|&h| {
            through_q.iter().all(|&g| {
                let legs = k.le(c.compose(p0, h), c.compose(p0, g)) && k.le(c.compose(p1, h), c.compose(p1, g));
                !legs || k.le(h, g)
            })
        });
        one && two
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::{FinCategory, FinPreorder};
    use crate::thin2::pocat::ord_one_two;

    #[test]
    fn comma_in_a_preorder_is_the_source() {
        let p = FinPreorder::chain(3);
        let k = PoCategory::locally_discrete(p.to_category_arc());
        let id = k.cat().identity(1);
        let got = comma_search(&k, id, id).unwrap().unwrap();
        assert_eq!(got.q, 1);
    }

    #[test]
    fn locally_discrete_comma_is_pullback() {
        let v = FinPreorder::new(vec!["0".into(), "1".into(), "2".into()], &[(0, 1), (0, 2)]).unwrap();
        let k = PoCategory::locally_discrete(v.to_category_arc());
        let c = k.cat();
        for &a in c.hom(1, 1).iter().chain(c.hom(0, 1)) {
            for &b in c.hom(0, 1).iter().chain(c.hom(1, 1)) {
                assert_eq!(comma_search(&k, a, b).unwrap(), pullback_search(&k, a, b).unwrap());
            }
        }
    }

    #[test]
    fn missing_comma_object() {
        // Two incomparable objects under a common top have no meet.
        let p = FinPreorder::new(vec!["a".into(), "b".into(), "t".into()], &[(0, 2), (1, 2)]).unwrap();
        let k = PoCategory::locally_discrete(p.to_category_arc());
        let c = k.cat();
        let (a, b) = (c.hom(0, 2)[0], c.hom(1, 2)[0]);
        assert_eq!(comma_search(&k, a, b).unwrap(), None);
    }

    #[test]
    fn comma_of_faces_in_ord_one_two() {
        // d0 <= d1, so the point is the comma of d0 along d1 but not of d1 along d0.
        let k = ord_one_two();
        let (d0, d1) = (k.mor("d0").unwrap(), k.mor("d1").unwrap());
        let got = comma_search(&k, d0, d1).unwrap().unwrap();
        assert_eq!(got.q, 0);
        assert_eq!(comma_search(&k, d1, d0).unwrap(), None);
        let one = Arc::new(PoCategory::locally_discrete(Arc::new(FinCategory::terminal())));
        let id = one.cat().identity(0);
        assert!(comma_search(&one, id, id).unwrap().is_some());
    }
}
