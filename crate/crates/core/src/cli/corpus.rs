//! Deterministic instance streams for the suites.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{preorders_up_to_iso, FinCategory, FinPreorder};
use crate::thin2::{ord_full_subcategory, ord_one_two, PoCategory};

/// Largest preorder size the enumerations accept.
pub const MAX_PREORDER_ELEMS: usize = 5;

fn guard(max: usize) -> Result<()> {
    if max > MAX_PREORDER_ELEMS {
        return Err(Error::BoundsTooLarge(format!("preorders with {max} elements (at most {MAX_PREORDER_ELEMS})")));
    }
    Ok(())
}

/// Preorders with `1..=max` elements up to iso, named `p<n>_<k>`.
pub fn preorder_corpus(max: usize) -> Result<Vec<(String, FinPreorder)>> {
    guard(max)?;
    let mut out = Vec::new();
    for n in 1..=max {
        for (k, p) in preorders_up_to_iso(n).into_iter().enumerate() {
            out.push((format!("p{n}_{k}"), p));
        }
    }
    Ok(out)
}

/// The posets among [`preorder_corpus`].
pub fn poset_corpus(max: usize) -> Result<Vec<(String, FinPreorder)>> {
    Ok(preorder_corpus(max)?.into_iter().filter(|(_, p)| p.is_poset()).collect())
}

pub fn square() -> FinPreorder {
    let names = ["00", "01", "10", "11"].iter().map(|s| s.to_string()).collect();
    FinPreorder::new(names, &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]).expect("square")
}

/// `1`, `2`, the parallel pair, the commutative square, and the two
/// monoids of order 2.
pub fn curated_categories() -> Vec<(String, Arc<FinCategory>)> {
    let z2 = FinCategory::monoid(&["1", "g"], |a, b| a ^ b).expect("Z/2");
    let idem = FinCategory::monoid(&["1", "e"], |a, b| a | b).expect("idempotent monoid");
    vec![
        ("one".into(), Arc::new(FinCategory::terminal())),
        ("two".into(), FinPreorder::chain(2).to_category_arc()),
        ("par".into(), Arc::new(FinCategory::parallel_pair())),
        ("square".into(), square().to_category_arc()),
        ("z2".into(), Arc::new(z2)),
        ("idem".into(), Arc::new(idem)),
    ]
}

/// The curated list followed by the thin categories of the preorder
/// enumeration that are not already on it.
pub fn category_corpus(max_elems: usize) -> Result<Vec<(String, Arc<FinCategory>)>> {
    let mut out = curated_categories();
    let curated = [FinPreorder::point(), FinPreorder::chain(2), square()];
    for (name, p) in preorder_corpus(max_elems)? {
        if !curated.iter().any(|c| c.is_isomorphic(&p)) {
            out.push((name, p.to_category_arc()));
        }
    }
    Ok(out)
}

/// Po-categories with at most 2 objects and hom-preorders of at most 3
/// elements: locally discrete copies of the small curated categories,
/// a few with non-trivial hom orders, and full sub-2-categories of ord.
pub fn pocategory_corpus() -> Vec<(String, Arc<PoCategory>)> {
    let mut out: Vec<(String, Arc<PoCategory>)> = curated_categories()
        .into_iter()
        .filter(|(_, c)| c.num_objects() <= 2)
        .map(|(n, c)| (format!("{n}/discrete"), Arc::new(PoCategory::locally_discrete(c))))
        .collect();
    let par = Arc::new(FinCategory::parallel_pair());
    let idem = Arc::new(FinCategory::monoid(&["1", "e"], |a, b| a | b).expect("idempotent monoid"));
    let ordered = [("par/s<=t", par, (2, 3)), ("idem/e<=1", idem.clone(), (1, 0)), ("idem/1<=e", idem, (0, 1))];
    for (name, c, pair) in ordered {
        out.push((name.into(), Arc::new(PoCategory::new(c, &[pair]).expect("monotone order"))));
    }
    let ord = |objs: &[(&str, FinPreorder)]| {
        let objs: Vec<(String, FinPreorder)> = objs.iter().map(|(n, p)| (n.to_string(), p.clone())).collect();
        Arc::new(ord_full_subcategory(&objs, &|_, _, _| None))
    };
    out.push(("ord{1}".into(), ord(&[("1", FinPreorder::point())])));
    out.push(("ord{2}".into(), ord(&[("2", FinPreorder::chain(2))])));
    out.push(("ord{1,2}".into(), Arc::new(ord_one_two())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_element_preorders_recount() {
        // discrete, chain, codiscrete; the chain's two labellings are one iso class
        let ps = preorder_corpus(2).unwrap();
        assert_eq!(ps.iter().filter(|(_, p)| p.len() == 2).count(), 3);
        assert_eq!(crate::fincat::labeled_preorders(2).len(), 4);
    }

    #[test]
    fn counts_up_to_four() {
        let sizes: Vec<usize> = (1..=4).map(|n| preorders_up_to_iso(n).len()).collect();
        assert_eq!(sizes, vec![1, 3, 9, 33]);
        assert_eq!(poset_corpus(4).unwrap().len(), 1 + 2 + 5 + 16);
    }

    #[test]
    fn categories_contain_two() {
        let cs = category_corpus(3).unwrap();
        assert!(cs.iter().any(|(n, c)| n == "two" && c.num_morphisms() == 3));
        assert_eq!(cs.len(), 6 + (1 + 3 + 9) - 2);
    }

    #[test]
    fn bound_guard() {
        assert!(matches!(preorder_corpus(6), Err(Error::BoundsTooLarge(_))));
    }

    #[test]
    fn pocategories_include_discrete_embeddings() {
        let ks = pocategory_corpus();
        for (n, c) in curated_categories().into_iter().filter(|(_, c)| c.num_objects() <= 2) {
            let k = ks.iter().find(|(m, _)| *m == format!("{n}/discrete")).unwrap();
            assert!(k.1.is_locally_discrete());
            assert_eq!(**k.1.cat(), *c);
        }
        for (_, k) in &ks {
            let c = k.cat();
            assert!(c.num_objects() <= 2);
            for x in 0..c.num_objects() {
                for y in 0..c.num_objects() {
                    assert!(c.hom(x, y).len() <= 3);
                }
            }
        }
    }
}
