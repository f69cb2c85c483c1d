use std::sync::Arc;

use crate::error::{Error, Result};

use super::category::{FinCategory, Morphism};
use super::enumerate::{functors_with, Constraint};
use super::functor::{same, FinFunctor};
use super::nat::NatTrans;

/// `a x b` with its projections. Object `(i, j)` has index `i * |b| + j`.
#[derive(Debug, Clone)]
pub struct Product {
    pub cat: Arc<FinCategory>,
    pub proj0: FinFunctor,
    pub proj1: FinFunctor,
}

pub fn product_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> Product {
    let (na, nb) = (a.num_objects(), b.num_objects());
    let mb = b.num_morphisms();
    let mut objects = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            objects.push(format!("({},{})", a.obj_name(i), b.obj_name(j)));
        }
    }
    let mut morphisms = Vec::with_capacity(a.num_morphisms() * mb);
    for f in 0..a.num_morphisms() {
        for g in 0..mb {
            morphisms.push(Morphism {
                name: format!("({},{})", a.mor_name(f), b.mor_name(g)),
                src: a.src(f) * nb + b.src(g),
                tgt: a.tgt(f) * nb + b.tgt(g),
            });
        }
    }
    let ids =
        (0..na).flat_map(|i| (0..nb).map(move |j| (i, j))).map(|(i, j)| a.identity(i) * mb + b.identity(j)).collect();
    let cat = Arc::new(
        FinCategory::from_parts_trusted(objects, morphisms, ids, |g, f| {
            Some(a.compose(g / mb, f / mb) * mb + b.compose(g % mb, f % mb))
        })
        .expect("product of valid categories"),
    );
    let proj0 = FinFunctor::new_trusted(
        cat.clone(),
        a.clone(),
        (0..na * nb).map(|x| x / nb).collect(),
        (0..cat.num_morphisms()).map(|m| m / mb).collect(),
    );
    let proj1 = FinFunctor::new_trusted(
        cat.clone(),
        b.clone(),
        (0..na * nb).map(|x| x % nb).collect(),
        (0..cat.num_morphisms()).map(|m| m % mb).collect(),
    );
    Product { cat, proj0, proj1 }
}

impl Product {
    pub fn left(&self) -> &Arc<FinCategory> {
        self.proj0.cod()
    }

    pub fn right(&self) -> &Arc<FinCategory> {
        self.proj1.cod()
    }

    pub fn obj(&self, i: usize, j: usize) -> usize {
        i * self.right().num_objects() + j
    }

    pub fn mor(&self, f: usize, g: usize) -> usize {
        f * self.right().num_morphisms() + g
    }

    /// `<f0, f1>`
    pub fn pair(&self, f0: &FinFunctor, f1: &FinFunctor) -> Result<FinFunctor> {
        if !same(f0.dom(), f1.dom()) || !same(f0.cod(), self.left()) || !same(f1.cod(), self.right()) {
            return Err(Error::EndpointMismatch("pairing legs do not match the product".into()));
        }
        let n = f0.dom().num_objects();
        let m = f0.dom().num_morphisms();
        Ok(FinFunctor::new_trusted(
            f0.dom().clone(),
            self.cat.clone(),
            (0..n).map(|x| self.obj(f0.obj(x), f1.obj(x))).collect(),
            (0..m).map(|k| self.mor(f0.mor(k), f1.mor(k))).collect(),
        ))
    }

    /// `<t0, t1>` for `t0: F0 => G0`, `t1: F1 => G1` with a common domain.
    pub fn pair_nat(&self, t0: &NatTrans, t1: &NatTrans) -> Result<NatTrans> {
        let src = self.pair(t0.src(), t1.src())?;
        let tgt = self.pair(t0.tgt(), t1.tgt())?;
        let comps = (0..t0.components().len()).map(|x| self.mor(t0.at(x), t1.at(x))).collect();
        NatTrans::new(src, tgt, comps)
    }

    /// `f0 x f1: a x b -> a' x b'` into another product.
    pub fn map_into(&self, target: &Product, f0: &FinFunctor, f1: &FinFunctor) -> Result<FinFunctor> {
        let l = f0.after(&self.proj0)?;
        let r = f1.after(&self.proj1)?;
        target.pair(&l, &r)
    }

    /// Counts functors `test -> a x b` agreeing with the given legs; the
    /// universal property asks for exactly one.
    pub fn count_factorizations(&self, f0: &FinFunctor, f1: &FinFunctor) -> Result<usize> {
        let test = f0.dom();
        let nb = self.right().num_objects();
        let mb = self.right().num_morphisms();
        let oc = |x: usize, y: usize| y / nb == f0.obj(x) && y % nb == f1.obj(x);
        let mc = |m: usize, k: usize| k / mb == f0.mor(m) && k % mb == f1.mor(m);
        let cons = Constraint { obj: Some(&oc), mor: Some(&mc) };
        Ok(functors_with(test, &self.cat, &cons)?.len())
    }
}

/// Same objects and morphism names, endpoints swapped, table transposed.
pub fn opposite_category(a: &FinCategory) -> FinCategory {
    let morphisms = a.morphisms().iter().map(|m| Morphism { name: m.name.clone(), src: m.tgt, tgt: m.src }).collect();
    FinCategory::from_parts_trusted(a.objects().to_vec(), morphisms, a.identities().to_vec(), |g, f| {
        Some(a.compose(f, g))
    })
    .expect("opposite of a valid category")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::enumerate::find_isomorphism;
    use crate::fincat::{functor_properties, FinPreorder};

    #[test]
    fn product_of_arrows_is_the_square() {
        let two = FinPreorder::chain(2).to_category_arc();
        let p = product_category(&two, &two);
        assert_eq!(p.cat.num_objects(), 4);
        assert_eq!(p.cat.num_morphisms(), 9);
        assert!(p.cat.law_report().is_empty());
        for pr in [&p.proj0, &p.proj1] {
            assert!(FinFunctor::new(p.cat.clone(), two.clone(), pr.obj_map().to_vec(), pr.mor_map().to_vec()).is_ok());
        }
    }

    #[test]
    fn unit_law_of_product() {
        let a = FinPreorder::chain(3).to_category_arc();
        let pt = Arc::new(FinCategory::terminal());
        let p = product_category(&a, &pt);
        assert!(functor_properties(&p.proj0).isomorphism);
        assert!(find_isomorphism(&p.cat, &a).unwrap().is_some());
    }

    #[test]
    fn pairing_is_unique() {
        let two = FinPreorder::chain(2).to_category_arc();
        let p = product_category(&two, &two);
        let id = FinFunctor::identity(&two);
        let c1 = FinFunctor::constant(&two, &two, 1);
        let h = p.pair(&id, &c1).unwrap();
        assert_eq!(p.proj0.after(&h).unwrap(), id);
        assert_eq!(p.proj1.after(&h).unwrap(), c1);
        assert_eq!(p.count_factorizations(&id, &c1).unwrap(), 1);
    }

    #[test]
    fn opposite_is_an_involution() {
        let v = FinPreorder::new(vec!["0".into(), "1".into(), "2".into()], &[(0, 1), (0, 2)]).unwrap().to_category();
        let op = opposite_category(&v);
        assert!(op.law_report().is_empty());
        assert_eq!(op.hom(1, 0).len(), 1);
        assert_eq!(opposite_category(&op), v);
    }
}
