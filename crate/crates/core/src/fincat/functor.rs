use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Report, Result, Violation};

use super::category::{FinCategory, Mor, Obj};

/// A functor between finite categories, stored as two index maps.
#[derive(Clone)]
pub struct FinFunctor {
    dom: Arc<FinCategory>,
    cod: Arc<FinCategory>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && same(&self.dom, &other.dom)
            && same(&self.cod, &other.cod)
    }
}

impl Eq for FinFunctor {}

impl fmt::Debug for FinFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinFunctor").field("obj_map", &self.obj_map).field("mor_map", &self.mor_map).finish()
    }
}

/// Structural equality with a pointer fast path.
pub fn same(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Unvalidated functor data by name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawFunctor {
    pub objects: Vec<(String, String)>,
    pub morphisms: Vec<(String, String)>,
}

/// Resolves names, fills morphism images that are forced (identities, and
/// targets with a one-element hom-set), then checks the functor laws.
pub fn validate_functor(dom: Arc<FinCategory>, cod: Arc<FinCategory>, raw: &RawFunctor) -> Result<FinFunctor> {
    let mut report = Report::default();
    let mut obj_map = vec![None; dom.num_objects()];
    for (a, x) in &raw.objects {
        match (dom.object_index(a), cod.object_index(x)) {
            (Some(i), Some(j)) => obj_map[i] = Some(j),
            (None, _) => report.push(Violation::UnknownIdentifier(a.clone())),
            (_, None) => report.push(Violation::UnknownIdentifier(x.clone())),
        }
    }
    for (i, o) in obj_map.iter().enumerate() {
        if o.is_none() {
            report.push(Violation::IncompleteMap(dom.obj_name(i).to_string()));
        }
    }
    if !report.is_empty() {
        return Err(Error::Invalid { kind: "functor", report });
    }
    let obj_map: Vec<Obj> = obj_map.into_iter().map(Option::unwrap).collect();
    let mut mor_map = vec![None; dom.num_morphisms()];
    for (f, g) in &raw.morphisms {
        match (dom.morphism_index(f), cod.morphism_index(g)) {
            (Some(i), Some(j)) => mor_map[i] = Some(j),
            (None, _) => report.push(Violation::UnknownIdentifier(f.clone())),
            (_, None) => report.push(Violation::UnknownIdentifier(g.clone())),
        }
    }
    for f in 0..dom.num_morphisms() {
        if mor_map[f].is_some() {
            continue;
        }
        let (x, y) = (obj_map[dom.src(f)], obj_map[dom.tgt(f)]);
        let hom = cod.hom(x, y);
        if dom.is_identity(f) {
            mor_map[f] = Some(cod.identity(x));
        } else if hom.len() == 1 {
            mor_map[f] = Some(hom[0]);
        } else {
            report.push(Violation::IncompleteMap(dom.mor_name(f).to_string()));
        }
    }
    if !report.is_empty() {
        return Err(Error::Invalid { kind: "functor", report });
    }
    let mor_map = mor_map.into_iter().map(Option::unwrap).collect();
    FinFunctor::new(dom, cod, obj_map, mor_map)
}

impl FinFunctor {
    /// Checks ranges, endpoints, identities and every composable pair.
    pub fn new(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Result<FinFunctor> {
        let mut report = Report::default();
        if obj_map.len() != dom.num_objects() || mor_map.len() != dom.num_morphisms() {
            report.push(Violation::Other("map lengths do not match the domain".into()));
            return Err(Error::Invalid { kind: "functor", report });
        }
        if obj_map.iter().any(|&x| x >= cod.num_objects()) || mor_map.iter().any(|&m| m >= cod.num_morphisms()) {
            report.push(Violation::Other("image out of range".into()));
            return Err(Error::Invalid { kind: "functor", report });
        }
        let f = FinFunctor { dom, cod, obj_map, mor_map };
        f.law_report(&mut report);
        report.into_result("functor", f)
    }

    pub(crate) fn new_trusted(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> FinFunctor {
        let f = FinFunctor { dom, cod, obj_map, mor_map };
        debug_assert!({
            let mut r = Report::default();
            f.law_report(&mut r);
            r.is_empty()
        });
        f
    }

    fn law_report(&self, report: &mut Report) {
        let (d, c) = (&*self.dom, &*self.cod);
        let mut typed = true;
        for m in 0..d.num_morphisms() {
            let im = self.mor_map[m];
            if c.src(im) != self.obj_map[d.src(m)] || c.tgt(im) != self.obj_map[d.tgt(m)] {
                report.push(Violation::EndpointMismatch(d.mor_name(m).to_string()));
                typed = false;
            }
        }
        for x in 0..d.num_objects() {
            if self.mor_map[d.identity(x)] != c.identity(self.obj_map[x]) {
                report.push(Violation::IdentityNotPreserved(d.obj_name(x).to_string()));
            }
        }
        if !typed {
            return;
        }
        for (g, f) in d.composable_pairs() {
            let lhs = self.mor_map[d.compose(g, f)];
            let rhs = c.compose(self.mor_map[g], self.mor_map[f]);
            if lhs != rhs {
                report.push(Violation::CompositionNotPreserved {
                    g: d.mor_name(g).to_string(),
                    f: d.mor_name(f).to_string(),
                });
            }
        }
    }

    pub fn identity(c: &Arc<FinCategory>) -> FinFunctor {
        FinFunctor {
            dom: c.clone(),
            cod: c.clone(),
            obj_map: (0..c.num_objects()).collect(),
            mor_map: (0..c.num_morphisms()).collect(),
        }
    }

    /// Constant at object `x` of `cod`.
    pub fn constant(dom: &Arc<FinCategory>, cod: &Arc<FinCategory>, x: Obj) -> FinFunctor {
        FinFunctor {
            dom: dom.clone(),
            cod: cod.clone(),
            obj_map: vec![x; dom.num_objects()],
            mor_map: vec![cod.identity(x); dom.num_morphisms()],
        }
    }

    /// `self . first`
    pub fn after(&self, first: &FinFunctor) -> Result<FinFunctor> {
        if !same(&first.cod, &self.dom) {
            return Err(Error::NotComposable("functor codomain differs from domain".into()));
        }
        Ok(FinFunctor {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            obj_map: first.obj_map.iter().map(|&x| self.obj_map[x]).collect(),
            mor_map: first.mor_map.iter().map(|&m| self.mor_map[m]).collect(),
        })
    }

    pub fn dom(&self) -> &Arc<FinCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCategory> {
        &self.cod
    }

    #[inline]
    pub fn obj(&self, x: Obj) -> Obj {
        self.obj_map[x]
    }

    #[inline]
    pub fn mor(&self, m: Mor) -> Mor {
        self.mor_map[m]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    pub fn is_identity(&self) -> bool {
        same(&self.dom, &self.cod)
            && self.obj_map.iter().enumerate().all(|(i, &x)| i == x)
            && self.mor_map.iter().enumerate().all(|(i, &m)| i == m)
    }

    /// The same maps, reinterpreted between opposite categories.
    pub fn opposite(&self, dom_op: &Arc<FinCategory>, cod_op: &Arc<FinCategory>) -> FinFunctor {
        FinFunctor::new_trusted(dom_op.clone(), cod_op.clone(), self.obj_map.clone(), self.mor_map.clone())
    }

    /// Rebinds domain or codomain to a structurally equal category.
    pub fn rebind(&self, dom: &Arc<FinCategory>, cod: &Arc<FinCategory>) -> Result<FinFunctor> {
        if !same(dom, &self.dom) || !same(cod, &self.cod) {
            return Err(Error::EndpointMismatch("rebind to a different category".into()));
        }
        Ok(FinFunctor { dom: dom.clone(), cod: cod.clone(), ..self.clone() })
    }

    pub fn describe(&self) -> String {
        let d = &self.dom;
        let c = &self.cod;
        let objs: Vec<String> =
            (0..d.num_objects()).map(|x| format!("{}->{}", d.obj_name(x), c.obj_name(self.obj_map[x]))).collect();
        objs.join(" ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct FunctorProperties {
    pub fully_faithful: bool,
    pub essentially_surjective: bool,
    pub isomorphism: bool,
}

pub fn functor_properties(f: &FinFunctor) -> FunctorProperties {
    let d = f.dom();
    let c = f.cod();
    let n = d.num_objects();
    let mut fully_faithful = true;
    'outer: for x in 0..n {
        for y in 0..n {
            let target = c.hom(f.obj(x), f.obj(y));
            let mut hit = vec![false; target.len()];
            let src = d.hom(x, y);
            if src.len() != target.len() {
                fully_faithful = false;
                break 'outer;
            }
            for &m in src {
                let k = target.iter().position(|&t| t == f.mor(m)).unwrap();
                if hit[k] {
                    fully_faithful = false;
                    break 'outer;
                }
                hit[k] = true;
            }
        }
    }
    let essentially_surjective = (0..c.num_objects()).all(|y| (0..n).any(|x| c.isomorphic(f.obj(x), y)));
    let bijective = |map: &[usize], size: usize| {
        let mut seen = vec![false; size];
        map.len() == size && map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    };
    let isomorphism = bijective(f.obj_map(), c.num_objects()) && bijective(f.mor_map(), c.num_morphisms());
    FunctorProperties { fully_faithful, essentially_surjective, isomorphism }
}
