use std::sync::Arc;

use crate::error::{Error, Report, Result, Violation};
use crate::fincat::{
    monotone_maps, validate_category, FinCategory, FinFunctor, FinPreorder, Mor, Morphism, Obj, RawCategory,
};

/// A locally thin 2-category: a finite category whose parallel 1-cells
/// carry a preorder, with composition monotone in both arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoCategory {
    cat: Arc<FinCategory>,
    // m * m; only parallel pairs can be related
    le: Vec<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawPoCategory {
    pub category: RawCategory,
    /// `(f, g)` meaning `f <= g`
    pub order: Vec<(String, String)>,
}

pub fn validate_pocategory(raw: &RawPoCategory) -> Result<PoCategory> {
    let cat = Arc::new(validate_category(&raw.category)?);
    let mut pairs = Vec::new();
    let mut report = Report::default();
    for (f, g) in &raw.order {
        match (cat.morphism_index(f), cat.morphism_index(g)) {
            (Some(a), Some(b)) => pairs.push((a, b)),
            (None, _) => report.push(Violation::UnknownIdentifier(f.clone())),
            (_, None) => report.push(Violation::UnknownIdentifier(g.clone())),
        }
    }
    if !report.is_empty() {
        return Err(Error::Invalid { kind: "pocategory", report });
    }
    PoCategory::new(cat, &pairs)
}

impl PoCategory {
    /// Reflexive closure is implicit; transitivity and monotonicity are checked.
    pub fn new(cat: Arc<FinCategory>, pairs: &[(Mor, Mor)]) -> Result<PoCategory> {
        let m = cat.num_morphisms();
        let mut le = vec![false; m * m];
        for f in 0..m {
            le[f * m + f] = true;
        }
        let mut report = Report::default();
        for &(f, g) in pairs {
            if cat.src(f) != cat.src(g) || cat.tgt(f) != cat.tgt(g) {
                report.push(Violation::Other(format!(
                    "order between non-parallel 1-cells {} and {}",
                    cat.mor_name(f),
                    cat.mor_name(g)
                )));
            } else {
                le[f * m + g] = true;
            }
        }
        if !report.is_empty() {
            return Err(Error::Invalid { kind: "pocategory", report });
        }
        let k = PoCategory { cat, le };
        k.law_report().into_result("pocategory", k)
    }

    pub(crate) fn from_matrix_trusted(cat: Arc<FinCategory>, le: Vec<bool>) -> PoCategory {
        let k = PoCategory { cat, le };
        debug_assert!(k.law_report().is_empty());
        k
    }

    /// Hom-wise transitivity and monotonicity of composition.
    pub fn law_report(&self) -> Report {
        let c = &self.cat;
        let m = c.num_morphisms();
        let mut report = Report::default();
        for f in 0..m {
            for g in 0..m {
                if !self.le(f, g) || f == g {
                    continue;
                }
                for h in 0..m {
                    if self.le(g, h) && !self.le(f, h) {
                        report.push(Violation::NotTransitive {
                            x: c.mor_name(f).into(),
                            y: c.mor_name(g).into(),
                            z: c.mor_name(h).into(),
                        });
                    }
                }
            }
        }
        for (g, f) in c.composable_pairs() {
            for &f2 in c.hom(c.src(f), c.tgt(f)) {
                for &g2 in c.hom(c.src(g), c.tgt(g)) {
                    if self.le(f, f2) && self.le(g, g2) && !self.le(c.compose(g, f), c.compose(g2, f2)) {
                        report.push(Violation::MonotonicityViolation {
                            left: format!("{}<={}", c.mor_name(g), c.mor_name(g2)),
                            right: format!("{}<={}", c.mor_name(f), c.mor_name(f2)),
                        });
                    }
                }
            }
        }
        report
    }

    /// Every hom-preorder discrete.
    pub fn locally_discrete(cat: Arc<FinCategory>) -> PoCategory {
        let m = cat.num_morphisms();
        let le = (0..m * m).map(|i| i / m == i % m).collect();
        PoCategory { cat, le }
    }

    pub fn cat(&self) -> &Arc<FinCategory> {
        &self.cat
    }

    #[inline]
    pub fn le(&self, f: Mor, g: Mor) -> bool {
        self.le[f * self.cat.num_morphisms() + g]
    }

    pub fn is_locally_discrete(&self) -> bool {
        let m = self.cat.num_morphisms();
        (0..m).all(|f| (0..m).all(|g| f == g || !self.le(f, g)))
    }

    pub fn order_pairs(&self) -> Vec<(Mor, Mor)> {
        let m = self.cat.num_morphisms();
        (0..m).flat_map(|f| (0..m).map(move |g| (f, g))).filter(|&(f, g)| f != g && self.le(f, g)).collect()
    }

    pub fn hom_preorder(&self, x: Obj, y: Obj) -> FinPreorder {
        let hom = self.cat.hom(x, y);
        let names = hom.iter().map(|&f| self.cat.mor_name(f).to_string()).collect();
        let mut pairs = Vec::new();
        for (i, &f) in hom.iter().enumerate() {
            for (j, &g) in hom.iter().enumerate() {
                if self.le(f, g) {
                    pairs.push((i, j));
                }
            }
        }
        FinPreorder::new(names, &pairs).expect("hom order is a preorder")
    }

    pub fn raw(&self) -> RawPoCategory {
        let c = &self.cat;
        RawPoCategory {
            category: c.raw(),
            order: self
                .order_pairs()
                .into_iter()
                .map(|(f, g)| (c.mor_name(f).to_string(), c.mor_name(g).to_string()))
                .collect(),
        }
    }

    pub fn mor(&self, name: &str) -> Result<Mor> {
        self.cat.morphism_index(name).ok_or_else(|| Error::UnknownMorphism(name.into()))
    }
}

/// A 2-functor between po-categories: a functor that preserves the hom orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoFunctor {
    pub dom: Arc<PoCategory>,
    pub cod: Arc<PoCategory>,
    pub map: FinFunctor,
}

impl PoFunctor {
    pub fn new(dom: Arc<PoCategory>, cod: Arc<PoCategory>, map: FinFunctor) -> Result<PoFunctor> {
        if !crate::fincat::same(map.dom(), dom.cat()) || !crate::fincat::same(map.cod(), cod.cat()) {
            return Err(Error::EndpointMismatch("functor does not match the po-categories".into()));
        }
        let mut report = Report::default();
        for (f, g) in dom.order_pairs() {
            if !cod.le(map.mor(f), map.mor(g)) {
                report.push(Violation::OrderNotPreserved {
                    lo: dom.cat().mor_name(f).into(),
                    hi: dom.cat().mor_name(g).into(),
                });
            }
        }
        report.into_result("pofunctor", PoFunctor { dom, cod, map })
    }

    pub fn identity(k: &Arc<PoCategory>) -> PoFunctor {
        PoFunctor { dom: k.clone(), cod: k.clone(), map: FinFunctor::identity(k.cat()) }
    }

    pub fn after(&self, first: &PoFunctor) -> Result<PoFunctor> {
        Ok(PoFunctor { dom: first.dom.clone(), cod: self.cod.clone(), map: self.map.after(&first.map)? })
    }

    pub fn obj(&self, x: Obj) -> Obj {
        self.map.obj(x)
    }

    pub fn mor(&self, f: Mor) -> Mor {
        self.map.mor(f)
    }
}

/// Every order-preserving functor `dom -> cod`.
pub fn pofunctors(dom: &Arc<PoCategory>, cod: &Arc<PoCategory>) -> Result<Vec<PoFunctor>> {
    let pairs = dom.order_pairs();
    Ok(crate::fincat::enumerate::functors(dom.cat(), cod.cat())?
        .into_iter()
        .filter(|f| pairs.iter().all(|&(a, b)| cod.le(f.mor(a), f.mor(b))))
        .map(|map| PoFunctor { dom: dom.clone(), cod: cod.clone(), map })
        .collect())
}

/// The full sub-2-category of preorders on the given objects: 1-cells are
/// monotone maps, ordered pointwise. A map is named `m_P_Q_i0.i1...`
/// unless `rename` supplies a name for it.
pub fn ord_full_subcategory(
    objects: &[(String, FinPreorder)],
    rename: &dyn Fn(usize, usize, &[usize]) -> Option<String>,
) -> PoCategory {
    let n = objects.len();
    let mut morphisms = Vec::new();
    let mut images: Vec<Vec<usize>> = Vec::new();
    let mut ids = vec![0; n];
    for i in 0..n {
        for j in 0..n {
            for map in monotone_maps(&objects[i].1, &objects[j].1) {
                let is_id = i == j && map.iter().enumerate().all(|(a, &b)| a == b);
                if is_id {
                    ids[i] = morphisms.len();
                }
                let name = rename(i, j, &map).unwrap_or_else(|| {
                    if is_id {
                        format!("id_{}", objects[i].0)
                    } else {
                        let im: Vec<String> = map.iter().map(|v| v.to_string()).collect();
                        format!("m_{}_{}_{}", objects[i].0, objects[j].0, im.join("."))
                    }
                });
                morphisms.push(Morphism { name, src: i, tgt: j });
                images.push(map);
            }
        }
    }
    let find = |src: usize, tgt: usize, img: &[usize]| -> usize {
        (0..morphisms.len())
            .find(|&k| morphisms[k].src == src && morphisms[k].tgt == tgt && images[k] == img)
            .expect("composite of monotone maps is monotone")
    };
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    let mut table = std::collections::HashMap::new();
    for f in 0..ends.len() {
        for g in 0..ends.len() {
            if ends[f].1 == ends[g].0 {
                let img: Vec<usize> = images[f].iter().map(|&v| images[g][v]).collect();
                table.insert((g, f), find(ends[f].0, ends[g].1, &img));
            }
        }
    }
    let names = objects.iter().map(|(s, _)| s.clone()).collect();
    let cat = Arc::new(
        FinCategory::from_parts(names, morphisms, ids, |g, f| table.get(&(g, f)).copied())
            .expect("ord composition is a category"),
    );
    let m = cat.num_morphisms();
    let mut le = vec![false; m * m];
    for f in 0..m {
        for g in 0..m {
            if ends[f] == ends[g] {
                let cod = &objects[ends[f].1].1;
                le[f * m + g] = images[f].iter().zip(&images[g]).all(|(&a, &b)| cod.le(a, b));
            }
        }
    }
    PoCategory::from_matrix_trusted(cat, le)
}

/// The sub-2-category of ord on the terminal preorder `1` and the chain `2`,
/// with the face and degeneracy maps named `d0`, `d1`, `s0`, `c0`, `c1`.
pub fn ord_one_two() -> PoCategory {
    let objs = vec![("1".to_string(), FinPreorder::point()), ("2".to_string(), FinPreorder::chain(2))];
    ord_full_subcategory(&objs, &|i, j, img| {
        let s = match (i, j, img) {
            (0, 1, [0]) => "d0",
            (0, 1, [1]) => "d1",
            (1, 0, [0, 0]) => "s0",
            (1, 1, [0, 0]) => "c0",
            (1, 1, [1, 1]) => "c1",
            _ => return None,
        };
        Some(s.to_string())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinPreorder;

    #[test]
    fn discrete_embeddings_validate() {
        let c = FinPreorder::chain(3).to_category_arc();
        let k = PoCategory::locally_discrete(c.clone());
        assert!(k.law_report().is_empty());
        assert!(validate_pocategory(&k.raw()).is_ok());
    }

    #[test]
    fn one_two_has_expected_homs() {
        let k = ord_one_two();
        let c = k.cat();
        assert_eq!(c.hom(0, 1).len(), 2);
        assert_eq!(c.hom(1, 1).len(), 3);
        assert_eq!(c.hom(1, 0).len(), 1);
        let (d0, d1) = (k.mor("d0").unwrap(), k.mor("d1").unwrap());
        assert!(k.le(d0, d1) && !k.le(d1, d0));
        let (c0, c1, id) = (k.mor("c0").unwrap(), k.mor("c1").unwrap(), k.mor("id_2").unwrap());
        assert!(k.le(c0, id) && k.le(id, c1));
    }

    #[test]
    fn perturbed_order_is_a_monotonicity_violation() {
        // In ord{1,2}, declare c1 <= c0 as well: composing with d0 then
        // needs d1 <= d0, which is absent.
        let k = ord_one_two();
        let mut raw = k.raw();
        raw.order.push(("c1".into(), "c0".into()));
        raw.order.push(("c1".into(), "id_2".into()));
        raw.order.push(("id_2".into(), "c0".into()));
        let err = validate_pocategory(&raw).unwrap_err();
        assert!(err.to_string().contains("monotonicity-violation"), "{err}");
    }
}
