use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FinFunctor, Mor, Morphism, Obj};

/// Finite families of length at most `bound` over a base category.
///
/// A morphism `(x_1..x_n) -> (y_1..y_m)` is a reindexing `t0: n -> m`
/// together with `t_i: x_i -> y_{t0(i)}`. Two parallel morphisms admit
/// 2-cells only when their reindexings agree; see [`FamCategory::two_cells_allowed`].
#[derive(Debug, Clone)]
pub struct FamCategory {
    pub base: Arc<FinCategory>,
    pub bound: usize,
    pub cat: Arc<FinCategory>,
    pub inclusion: FinFunctor,
    families: Vec<Vec<Obj>>,
    data: Vec<(Vec<usize>, Vec<Mor>)>,
}

fn families(n: usize, bound: usize) -> Vec<Vec<Obj>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..bound {
        layer = layer
            .into_iter()
            .flat_map(|f: Vec<Obj>| {
                (0..n).map(move |x| {
                    let mut g = f.clone();
                    g.push(x);
                    g
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Every `(t0, t)` from family `xs` to family `ys`.
fn fam_homs(base: &FinCategory, xs: &[Obj], ys: &[Obj]) -> Vec<(Vec<usize>, Vec<Mor>)> {
    let mut out = Vec::new();
    let mut t0 = Vec::with_capacity(xs.len());
    let mut t = Vec::with_capacity(xs.len());
    fn go(
        base: &FinCategory,
        xs: &[Obj],
        ys: &[Obj],
        t0: &mut Vec<usize>,
        t: &mut Vec<Mor>,
        out: &mut Vec<(Vec<usize>, Vec<Mor>)>,
    ) {
        let i = t0.len();
        if i == xs.len() {
            out.push((t0.clone(), t.clone()));
            return;
        }
        for (j, &y) in ys.iter().enumerate() {
            for &f in base.hom(xs[i], y) {
                t0.push(j);
                t.push(f);
                go(base, xs, ys, t0, t, out);
                t0.pop();
                t.pop();
            }
        }
    }
    go(base, xs, ys, &mut t0, &mut t, &mut out);
    out
}

pub fn fam_build(base: &Arc<FinCategory>, bound: usize) -> Result<FamCategory> {
    if bound == 0 {
        return Err(Error::BoundTooSmall("family length bound must be at least 1".into()));
    }
    let fams = families(base.num_objects(), bound);
    let index: HashMap<Vec<Obj>, Obj> = fams.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    let show_fam = |f: &[Obj]| format!("({})", f.iter().map(|&x| base.obj_name(x)).collect::<Vec<_>>().join(","));
    let objects: Vec<String> = fams.iter().map(|f| show_fam(f)).collect();
    let mut morphisms = Vec::new();
    let mut data = Vec::new();
    let mut lookup: HashMap<(Obj, Obj, Vec<usize>, Vec<Mor>), Mor> = HashMap::new();
    let mut ids = vec![0; fams.len()];
    for (s, xs) in fams.iter().enumerate() {
        for (t, ys) in fams.iter().enumerate() {
            for (t0, comps) in fam_homs(base, xs, ys) {
                let is_id =
                    s == t && t0.iter().enumerate().all(|(i, &j)| i == j) && comps.iter().all(|&f| base.is_identity(f));
                if is_id {
                    ids[s] = morphisms.len();
                }
                let name = format!(
                    "[{};{}]{}->{}",
                    t0.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(","),
                    comps.iter().map(|&f| base.mor_name(f)).collect::<Vec<_>>().join(","),
                    objects[s],
                    objects[t]
                );
                lookup.insert((s, t, t0.clone(), comps.clone()), morphisms.len());
                morphisms.push(Morphism { name, src: s, tgt: t });
                data.push((t0, comps));
            }
        }
    }
    let cat = Arc::new(FinCategory::from_parts_trusted(objects, morphisms.clone(), ids, |g, f| {
        let ((g0, gc), (f0, fc)) = (&data[g], &data[f]);
        let t0: Vec<usize> = f0.iter().map(|&j| g0[j]).collect();
        let comps: Vec<Mor> = f0.iter().zip(fc).map(|(&j, &c)| base.compose(gc[j], c)).collect();
        lookup.get(&(morphisms[f].src, morphisms[g].tgt, t0, comps)).copied()
    })?);
    let obj_map: Vec<Obj> = (0..base.num_objects()).map(|x| index[&vec![x]]).collect();
    let mor_map: Vec<Mor> = (0..base.num_morphisms())
        .map(|f| lookup[&(obj_map[base.src(f)], obj_map[base.tgt(f)], vec![0], vec![f])])
        .collect();
    let inclusion = FinFunctor::new(base.clone(), cat.clone(), obj_map, mor_map)?;
    Ok(FamCategory { base: base.clone(), bound, cat, inclusion, families: fams, data })
}

impl FamCategory {
    pub fn family(&self, o: Obj) -> &[Obj] {
        &self.families[o]
    }

    pub fn reindexing(&self, m: Mor) -> &[usize] {
        &self.data[m].0
    }

    pub fn components(&self, m: Mor) -> &[Mor] {
        &self.data[m].1
    }

    /// The empty family.
    pub fn empty(&self) -> Obj {
        0
    }

    /// There is no 2-cell `t => t'` unless `t0 = t'0`.
    pub fn two_cells_allowed(&self, t: Mor, t2: Mor) -> bool {
        self.cat.src(t) == self.cat.src(t2) && self.cat.tgt(t) == self.cat.tgt(t2) && self.data[t].0 == self.data[t2].0
    }

    /// The empty family maps exactly once to every family.
    pub fn empty_is_initial(&self) -> bool {
        (0..self.cat.num_objects()).all(|o| self.cat.hom(self.empty(), o).len() == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{functor_properties, FinPreorder};

    #[test]
    fn fam_of_the_point() {
        let p = Arc::new(FinCategory::terminal());
        let f = fam_build(&p, 2).unwrap();
        assert_eq!(f.cat.objects(), &["()", "(*)", "(*,*)"]);
        // Functions between index sets of sizes 0, 1, 2.
        assert_eq!(f.cat.num_morphisms(), 1 + 1 + 1 + 1 + 2 + 1 + 4);
        assert!(f.cat.law_report().is_empty());
        assert!(f.empty_is_initial());
    }

    #[test]
    fn inclusion_is_fully_faithful() {
        let two = FinPreorder::chain(2).to_category_arc();
        let f = fam_build(&two, 2).unwrap();
        let props = functor_properties(&f.inclusion);
        assert!(props.fully_faithful);
        assert!(!props.essentially_surjective);
        for x in 0..2 {
            for y in 0..2 {
                let (ix, iy) = (f.inclusion.obj(x), f.inclusion.obj(y));
                assert_eq!(f.cat.hom(ix, iy).len(), two.hom(x, y).len());
            }
        }
        assert!(f.empty_is_initial());
    }

    #[test]
    fn two_cells_need_equal_reindexing() {
        let p = Arc::new(FinCategory::terminal());
        let f = fam_build(&p, 2).unwrap();
        let pair = 2;
        let homs = f.cat.hom(pair, pair).to_vec();
        let allowed = homs.iter().filter(|&&a| homs.iter().any(|&b| a != b && f.two_cells_allowed(a, b))).count();
        assert_eq!(allowed, 0);
        assert!(fam_build(&p, 0).is_err());
    }
}
