use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::enumerate::{count_functors_with, for_each_nat, Constraint};
use crate::fincat::{same, FinCategory, FinFunctor, Mor, Morphism, NatTrans, Obj};
use crate::search::Budget;

/// The comma category `a | b` of `a: x -> y` along `b: w -> y`.
///
/// Objects are triples `(ox, ow, beta: a(ox) -> b(ow))`, listed in
/// lexicographic order; morphisms `(u, v)` make the square commute.
#[derive(Debug, Clone)]
pub struct CommaResult {
    pub cat: Arc<FinCategory>,
    pub a: FinFunctor,
    pub b: FinFunctor,
    pub proj0: FinFunctor,
    pub proj1: FinFunctor,
    pub lambda: NatTrans,
    triples: Vec<(Obj, Obj, Mor)>,
    obj_index: HashMap<(Obj, Obj, Mor), Obj>,
    pairs: Vec<(Mor, Mor)>,
    mor_index: HashMap<(Obj, Obj, Mor, Mor), Mor>,
}

fn check_cospan(a: &FinFunctor, b: &FinFunctor) -> Result<()> {
    if !same(a.cod(), b.cod()) {
        return Err(Error::CodomainMismatch("the two functors have different codomains".into()));
    }
    Ok(())
}

/// Gives every morphism a distinct name: the pair alone when that is
/// already unique, the pair with its endpoints otherwise.
fn unique_names(morphisms: &mut [Morphism], objects: &[String]) {
    let mut seen: HashMap<String, usize> = HashMap::new();
    for m in morphisms.iter() {
        *seen.entry(m.name.clone()).or_default() += 1;
    }
    for m in morphisms.iter_mut() {
        if seen[&m.name] > 1 {
            m.name = format!("{}:{}->{}", m.name, objects[m.src], objects[m.tgt]);
        }
    }
}

pub fn comma_category(a: &FinFunctor, b: &FinFunctor) -> Result<CommaResult> {
    check_cospan(a, b)?;
    let (x, w, y) = (a.dom(), b.dom(), a.cod());
    let mut triples = Vec::new();
    for ox in 0..x.num_objects() {
        for ow in 0..w.num_objects() {
            for &beta in y.hom(a.obj(ox), b.obj(ow)) {
                triples.push((ox, ow, beta));
            }
        }
    }
    let obj_index: HashMap<_, _> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let objects: Vec<String> = triples
        .iter()
        .map(|&(ox, ow, beta)| format!("({},{},{})", x.obj_name(ox), w.obj_name(ow), y.mor_name(beta)))
        .collect();
    let mut morphisms = Vec::new();
    let mut pairs = Vec::new();
    let mut mor_index = HashMap::new();
    let mut ids = vec![0; triples.len()];
    for (s, &(sx, sw, sb)) in triples.iter().enumerate() {
        for (t, &(tx, tw, tb)) in triples.iter().enumerate() {
            for &u in x.hom(sx, tx) {
                for &v in w.hom(sw, tw) {
                    if y.compose(tb, a.mor(u)) != y.compose(b.mor(v), sb) {
                        continue;
                    }
                    if s == t && u == x.identity(sx) && v == w.identity(sw) {
                        ids[s] = morphisms.len();
                    }
                    mor_index.insert((s, t, u, v), morphisms.len());
                    pairs.push((u, v));
                    morphisms.push(Morphism { name: format!("({},{})", x.mor_name(u), w.mor_name(v)), src: s, tgt: t });
                }
            }
        }
    }
    unique_names(&mut morphisms, &objects);
    let cat = Arc::new(FinCategory::from_parts_trusted(objects, morphisms.clone(), ids, |g, f| {
        let (s, t) = (morphisms[f].src, morphisms[g].tgt);
        let ((u1, v1), (u0, v0)) = (pairs[g], pairs[f]);
        mor_index.get(&(s, t, x.compose(u1, u0), w.compose(v1, v0))).copied()
    })?);
    let proj0 = FinFunctor::new_trusted(
        cat.clone(),
        x.clone(),
        triples.iter().map(|t| t.0).collect(),
        pairs.iter().map(|p| p.0).collect(),
    );
    let proj1 = FinFunctor::new_trusted(
        cat.clone(),
        w.clone(),
        triples.iter().map(|t| t.1).collect(),
        pairs.iter().map(|p| p.1).collect(),
    );
    let lambda = NatTrans::new(a.after(&proj0)?, b.after(&proj1)?, triples.iter().map(|t| t.2).collect())?;
    Ok(CommaResult { cat, a: a.clone(), b: b.clone(), proj0, proj1, lambda, triples, obj_index, pairs, mor_index })
}

impl CommaResult {
    pub fn triple(&self, o: Obj) -> (Obj, Obj, Mor) {
        self.triples[o]
    }

    pub fn triples(&self) -> &[(Obj, Obj, Mor)] {
        &self.triples
    }

    pub fn object(&self, ox: Obj, ow: Obj, beta: Mor) -> Option<Obj> {
        self.obj_index.get(&(ox, ow, beta)).copied()
    }

    pub fn pair(&self, m: Mor) -> (Mor, Mor) {
        self.pairs[m]
    }

    pub fn morphism(&self, s: Obj, t: Obj, u: Mor, v: Mor) -> Option<Mor> {
        self.mor_index.get(&(s, t, u, v)).copied()
    }

    fn check_cone(&self, h0: &FinFunctor, h1: &FinFunctor, phi: &NatTrans) -> Result<()> {
        let lhs = self.a.after(h0)?;
        let rhs = self.b.after(h1)?;
        if *phi.src() != lhs || *phi.tgt() != rhs {
            return Err(Error::EndpointMismatch("2-cell is not a . h0 => b . h1".into()));
        }
        Ok(())
    }

    /// The functor `t -> a|b` determined by the cone; no uniqueness check.
    pub fn factor_direct(&self, h0: &FinFunctor, h1: &FinFunctor, phi: &NatTrans) -> Result<FinFunctor> {
        self.check_cone(h0, h1, phi)?;
        let t = h0.dom();
        let objs: Option<Vec<Obj>> =
            (0..t.num_objects()).map(|o| self.object(h0.obj(o), h1.obj(o), phi.at(o))).collect();
        let objs =
            objs.ok_or_else(|| Error::NoFactorization("no object or morphism of the comma matches the cone".into()))?;
        let mors: Option<Vec<Mor>> = (0..t.num_morphisms())
            .map(|m| self.morphism(objs[t.src(m)], objs[t.tgt(m)], h0.mor(m), h1.mor(m)))
            .collect();
        let mors =
            mors.ok_or_else(|| Error::NoFactorization("no object or morphism of the comma matches the cone".into()))?;
        FinFunctor::new(t.clone(), self.cat.clone(), objs, mors)
    }

    /// Functors `t -> a|b` whose projections are `h0`, `h1` and whose
    /// whiskered comparison cell is `phi`, found by exhaustive search.
    pub fn count_factorizations(&self, h0: &FinFunctor, h1: &FinFunctor, phi: &NatTrans) -> Result<usize> {
        let t = h0.dom();
        let oc = |o: Obj, q: Obj| self.triples[q] == (h0.obj(o), h1.obj(o), phi.at(o));
        let mc = |m: Mor, k: Mor| self.pairs[k] == (h0.mor(m), h1.mor(m));
        let cons = Constraint { obj: Some(&oc), mor: Some(&mc) };
        count_functors_with(t, &self.cat, &cons)
    }
}

/// The unique `h` with `proj0 h = h0`, `proj1 h = h1` and `lambda h = phi`.
pub fn comma_factor(c: &CommaResult, h0: &FinFunctor, h1: &FinFunctor, phi: &NatTrans) -> Result<FinFunctor> {
    let h = c.factor_direct(h0, h1, phi)?;
    match c.count_factorizations(h0, h1, phi)? {
        0 => Err(Error::NoFactorization("no functor satisfies the constraints".into())),
        1 => Ok(h),
        n => Err(Error::NonUnique(n)),
    }
}

/// The 2-dimensional clause: the unique `xi: h => h'` with `proj0 xi = xi0`
/// and `proj1 xi = xi1`, given that the pair satisfies the pasting equation.
pub fn comma_factor_2cell(
    c: &CommaResult,
    h: &FinFunctor,
    h2: &FinFunctor,
    xi0: &NatTrans,
    xi1: &NatTrans,
) -> Result<NatTrans> {
    let t = h.dom();
    let comps: Option<Vec<Mor>> =
        (0..t.num_objects()).map(|o| c.morphism(h.obj(o), h2.obj(o), xi0.at(o), xi1.at(o))).collect();
    let comps =
        comps.ok_or_else(|| Error::NoFactorization("no object or morphism of the comma matches the cone".into()))?;
    let xi = NatTrans::new(h.clone(), h2.clone(), comps)?;
    let mut n = 0;
    let mut budget = Budget::from_env();
    for_each_nat(h, h2, &|o, k| c.pair(k) == (xi0.at(o), xi1.at(o)), &mut budget, |_| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    match n {
        1 => Ok(xi),
        0 => Err(Error::NoFactorization("no functor satisfies the constraints".into())),
        n => Err(Error::NonUnique(n)),
    }
}

/// `(lambda h') . (a xi0) = (b xi1) . (lambda h)`, componentwise.
pub fn pasting_compatible(c: &CommaResult, h: &FinFunctor, h2: &FinFunctor, xi0: &NatTrans, xi1: &NatTrans) -> bool {
    let y = c.a.cod();
    (0..h.dom().num_objects()).all(|o| {
        let (_, _, beta) = c.triple(h.obj(o));
        let (_, _, beta2) = c.triple(h2.obj(o));
        y.compose(beta2, c.a.mor(xi0.at(o))) == y.compose(c.b.mor(xi1.at(o)), beta)
    })
}

/// The strict pullback of `a` and `b`: pairs agreeing in the codomain.
#[derive(Debug, Clone)]
pub struct PullbackResult {
    pub cat: Arc<FinCategory>,
    pub a: FinFunctor,
    pub b: FinFunctor,
    pub proj0: FinFunctor,
    pub proj1: FinFunctor,
    obj_index: HashMap<(Obj, Obj), Obj>,
    pairs: Vec<(Mor, Mor)>,
    mor_index: HashMap<(Mor, Mor), Mor>,
}

pub fn pullback_category(a: &FinFunctor, b: &FinFunctor) -> Result<PullbackResult> {
    check_cospan(a, b)?;
    let (x, w) = (a.dom(), b.dom());
    let mut objs = Vec::new();
    for ox in 0..x.num_objects() {
        for ow in 0..w.num_objects() {
            if a.obj(ox) == b.obj(ow) {
                objs.push((ox, ow));
            }
        }
    }
    let obj_index: HashMap<_, _> = objs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut morphisms = Vec::new();
    let mut pairs = Vec::new();
    let mut mor_index = HashMap::new();
    let mut ids = vec![0; objs.len()];
    for u in 0..x.num_morphisms() {
        for v in 0..w.num_morphisms() {
            if a.mor(u) != b.mor(v) {
                continue;
            }
            let s = obj_index[&(x.src(u), w.src(v))];
            let t = obj_index[&(x.tgt(u), w.tgt(v))];
            if x.is_identity(u) && w.is_identity(v) {
                ids[s] = morphisms.len();
            }
            mor_index.insert((u, v), morphisms.len());
            pairs.push((u, v));
            morphisms.push(Morphism { name: format!("({},{})", x.mor_name(u), w.mor_name(v)), src: s, tgt: t });
        }
    }
    let objects = objs.iter().map(|&(i, j)| format!("({},{})", x.obj_name(i), w.obj_name(j))).collect();
    let cat = Arc::new(FinCategory::from_parts_trusted(objects, morphisms, ids, |g, f| {
        let ((u1, v1), (u0, v0)) = (pairs[g], pairs[f]);
        mor_index.get(&(x.compose(u1, u0), w.compose(v1, v0))).copied()
    })?);
    let proj0 = FinFunctor::new_trusted(
        cat.clone(),
        x.clone(),
        objs.iter().map(|p| p.0).collect(),
        pairs.iter().map(|p| p.0).collect(),
    );
    let proj1 = FinFunctor::new_trusted(
        cat.clone(),
        w.clone(),
        objs.iter().map(|p| p.1).collect(),
        pairs.iter().map(|p| p.1).collect(),
    );
    Ok(PullbackResult { cat, a: a.clone(), b: b.clone(), proj0, proj1, obj_index, pairs, mor_index })
}

impl PullbackResult {
    pub fn object(&self, ox: Obj, ow: Obj) -> Option<Obj> {
        self.obj_index.get(&(ox, ow)).copied()
    }

    pub fn pair(&self, m: Mor) -> (Mor, Mor) {
        self.pairs[m]
    }

    pub fn morphism(&self, u: Mor, v: Mor) -> Option<Mor> {
        self.mor_index.get(&(u, v)).copied()
    }
}

/// The unique `h` with `proj0 h = h0` and `proj1 h = h1`, given `a h0 = b h1`.
pub fn pullback_factor(p: &PullbackResult, h0: &FinFunctor, h1: &FinFunctor) -> Result<FinFunctor> {
    if p.a.after(h0)? != p.b.after(h1)? {
        return Err(Error::EndpointMismatch("the square does not commute".into()));
    }
    let t = h0.dom();
    let objs: Option<Vec<Obj>> = (0..t.num_objects()).map(|o| p.object(h0.obj(o), h1.obj(o))).collect();
    let mors: Option<Vec<Mor>> = (0..t.num_morphisms()).map(|m| p.morphism(h0.mor(m), h1.mor(m))).collect();
    let h = FinFunctor::new(
        t.clone(),
        p.cat.clone(),
        objs.ok_or_else(|| Error::NoFactorization("no object or morphism of the comma matches the cone".into()))?,
        mors.ok_or_else(|| Error::NoFactorization("no object or morphism of the comma matches the cone".into()))?,
    )?;
    let oc = |o: Obj, q: Obj| q == h.obj(o);
    let mc = |m: Mor, k: Mor| p.pairs[k] == (h0.mor(m), h1.mor(m));
    let cons = Constraint { obj: Some(&oc), mor: Some(&mc) };
    // Objects are pinned by the morphism constraint on identities; the
    // object constraint only prunes.
    match count_functors_with(t, &p.cat, &cons)? {
        1 => Ok(h),
        0 => Err(Error::NoFactorization("no functor satisfies the constraints".into())),
        n => Err(Error::NonUnique(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{enumerate::nat_transformations, FinPreorder};

    fn two() -> Arc<FinCategory> {
        FinPreorder::chain(2).to_category_arc()
    }

    fn point() -> Arc<FinCategory> {
        Arc::new(FinCategory::terminal())
    }

    #[test]
    fn comma_of_faces() {
        let (t, p) = (two(), point());
        let d0 = FinFunctor::constant(&p, &t, 0);
        let d1 = FinFunctor::constant(&p, &t, 1);
        let c = comma_category(&d0, &d1).unwrap();
        assert_eq!(c.cat.num_objects(), 1);
        assert_eq!(c.cat.num_morphisms(), 1);
        assert_eq!(c.lambda.at(0), t.hom(0, 1)[0]);
        let empty = comma_category(&d1, &d0).unwrap();
        assert_eq!(empty.cat.num_objects(), 0);
    }

    #[test]
    fn arrow_category_of_two() {
        let t = two();
        let id = FinFunctor::identity(&t);
        let c = comma_category(&id, &id).unwrap();
        assert_eq!(c.cat.num_objects(), 3);
        assert!(c.cat.law_report().is_empty());
        // The arrow category of 2 is the chain 3.
        assert!(c.cat.is_thin());
        assert_eq!(c.cat.num_morphisms(), 6);
    }

    #[test]
    fn own_cone_factors_as_identity() {
        let t = two();
        let id = FinFunctor::identity(&t);
        let c = comma_category(&id, &id).unwrap();
        let h = comma_factor(&c, &c.proj0, &c.proj1, &c.lambda).unwrap();
        assert!(h.is_identity());
    }

    #[test]
    fn point_of_a_comma() {
        let (t, p) = (two(), point());
        let d0 = FinFunctor::constant(&p, &t, 0);
        let d1 = FinFunctor::constant(&p, &t, 1);
        let c = comma_category(&d0, &d1).unwrap();
        let ip = FinFunctor::identity(&p);
        let phi = NatTrans::new(d0.clone(), d1.clone(), vec![t.hom(0, 1)[0]]).unwrap();
        let h = comma_factor(&c, &ip, &ip, &phi).unwrap();
        assert_eq!(h.obj(0), 0);
    }

    #[test]
    fn two_dimensional_clause_on_the_arrow_category() {
        let t = two();
        let id = FinFunctor::identity(&t);
        let c = comma_category(&id, &id).unwrap();
        let p = point();
        let points: Vec<FinFunctor> = (0..3).map(|o| FinFunctor::constant(&p, &c.cat, o)).collect();
        let mut checked = 0;
        for h in &points {
            for h2 in &points {
                let (l0, l1) = (c.proj0.after(h).unwrap(), c.proj1.after(h).unwrap());
                let (r0, r1) = (c.proj0.after(h2).unwrap(), c.proj1.after(h2).unwrap());
                for xi0 in nat_transformations(&l0, &r0).unwrap() {
                    for xi1 in nat_transformations(&l1, &r1).unwrap() {
                        if pasting_compatible(&c, h, h2, &xi0, &xi1) {
                            comma_factor_2cell(&c, h, h2, &xi0, &xi1).unwrap();
                            checked += 1;
                        } else {
                            assert!(comma_factor_2cell(&c, h, h2, &xi0, &xi1).is_err());
                        }
                    }
                }
            }
        }
        assert_eq!(checked, 6);
    }

    #[test]
    fn pullbacks_of_faces() {
        let (t, p) = (two(), point());
        let d0 = FinFunctor::constant(&p, &t, 0);
        let d1 = FinFunctor::constant(&p, &t, 1);
        assert_eq!(pullback_category(&d0, &d0).unwrap().cat.num_objects(), 1);
        assert_eq!(pullback_category(&d0, &d1).unwrap().cat.num_objects(), 0);
        let f = FinFunctor::constant(&t, &t, 1);
        let pb = pullback_category(&f, &FinFunctor::identity(&t)).unwrap();
        assert!(crate::fincat::functor_properties(&pb.proj0).isomorphism);
        let h = pullback_factor(&pb, &FinFunctor::identity(&t), &f).unwrap();
        assert!(crate::fincat::functor_properties(&h).isomorphism);
    }

    #[test]
    fn codomain_mismatch() {
        let (t, p) = (two(), point());
        let err = comma_category(&FinFunctor::identity(&t), &FinFunctor::identity(&p)).unwrap_err();
        assert!(matches!(err, Error::CodomainMismatch(_)));
    }
}
