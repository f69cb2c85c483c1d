use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Report, Result, Violation};

/// Index of an object inside its category.
pub type Obj = usize;
/// Index of a morphism inside its category.
pub type Mor = usize;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Morphism {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// Unvalidated category data, exactly as written in a presentation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// `(name, source, target)`
    pub morphisms: Vec<(String, String, String)>,
    /// `(object, identity morphism)`
    pub identities: Vec<(String, String)>,
    /// `(g, f, h)` meaning `g.f = h`
    pub compose: Vec<(String, String, String)>,
}

/// A finite category with an explicit composition table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<Mor>,
    // g * m + f -> g.f
    table: Vec<u32>,
    homs: Vec<Vec<Mor>>,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinCategory({} objects, {} morphisms)", self.objects.len(), self.morphisms.len())
    }
}

impl FinCategory {
    /// Builds a category from indexed data, filling the table from `compose`
    /// on composable pairs, then runs the full law scan.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<Mor>,
        compose: impl FnMut(Mor, Mor) -> Option<Mor>,
    ) -> Result<FinCategory> {
        let c = Self::assemble(objects, morphisms, identities, compose)?;
        let report = c.law_report();
        report.into_result("category", c)
    }

    /// Same as [`from_parts`](Self::from_parts) without the associativity scan.
    /// Used by constructions whose laws hold componentwise.
    pub(crate) fn from_parts_trusted(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<Mor>,
        compose: impl FnMut(Mor, Mor) -> Option<Mor>,
    ) -> Result<FinCategory> {
        let c = Self::assemble(objects, morphisms, identities, compose)?;
        debug_assert!(c.law_report().is_empty(), "trusted construction broke a law");
        Ok(c)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<Mor>,
        mut compose: impl FnMut(Mor, Mor) -> Option<Mor>,
    ) -> Result<FinCategory> {
        let n = objects.len();
        let m = morphisms.len();
        let mut report = Report::default();
        if identities.len() != n {
            report.push(Violation::Other(format!("{} identities for {} objects", identities.len(), n)));
        }
        for mm in &morphisms {
            if mm.src >= n || mm.tgt >= n {
                report.push(Violation::DanglingEndpoint {
                    morphism: mm.name.clone(),
                    endpoint: format!("#{}", mm.src.max(mm.tgt)),
                });
            }
        }
        if !report.is_empty() {
            return Err(Error::Invalid { kind: "category", report });
        }
        let mut homs = vec![Vec::new(); n * n];
        for (i, mm) in morphisms.iter().enumerate() {
            homs[mm.src * n + mm.tgt].push(i);
        }
        let mut table = vec![NONE; m * m];
        for f in 0..m {
            let mid = morphisms[f].tgt;
            for y in 0..n {
                for &g in &homs[mid * n + y] {
                    match compose(g, f) {
                        Some(h) if h < m => table[g * m + f] = h as u32,
                        Some(h) => report.push(Violation::DanglingEndpoint {
                            morphism: format!("{}.{}", morphisms[g].name, morphisms[f].name),
                            endpoint: format!("#{h}"),
                        }),
                        None => report.push(Violation::MissingComposite {
                            g: morphisms[g].name.clone(),
                            f: morphisms[f].name.clone(),
                        }),
                    }
                }
            }
        }
        report.into_result("category", FinCategory { objects, morphisms, identities, table, homs })
    }

    /// Full scan of typing, unit and associativity laws.
    pub fn law_report(&self) -> Report {
        let mut report = Report::default();
        let m = self.morphisms.len();
        for (x, &i) in self.identities.iter().enumerate() {
            let ok = i < m && self.morphisms[i].src == x && self.morphisms[i].tgt == x;
            if !ok {
                report.push(Violation::IdentityViolation(self.objects[x].clone()));
            }
        }
        if !report.is_empty() {
            return report;
        }
        for f in 0..m {
            for &g in self.out_of(self.tgt(f)) {
                let h = self.table[g * m + f] as usize;
                if self.src(h) != self.src(f) || self.tgt(h) != self.tgt(g) {
                    report.push(Violation::CompositeTyping {
                        g: self.mor_name(g).into(),
                        f: self.mor_name(f).into(),
                        h: self.mor_name(h).into(),
                    });
                }
            }
        }
        if !report.is_empty() {
            return report;
        }
        for f in 0..m {
            let (x, y) = (self.src(f), self.tgt(f));
            if self.compose(self.identity(y), f) != f || self.compose(f, self.identity(x)) != f {
                report.push(Violation::IdentityViolation(format!("{} at {}", self.mor_name(f), self.objects[x])));
            }
        }
        for f in 0..m {
            for &g in self.out_of(self.tgt(f)) {
                let gf = self.compose(g, f);
                for &h in self.out_of(self.tgt(g)) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        report.push(Violation::AssociativityViolation {
                            h: self.mor_name(h).into(),
                            g: self.mor_name(g).into(),
                            f: self.mor_name(f).into(),
                        });
                    }
                }
            }
        }
        report
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn obj_name(&self, x: Obj) -> &str {
        &self.objects[x]
    }

    pub fn mor_name(&self, f: Mor) -> &str {
        &self.morphisms[f].name
    }

    pub fn object_index(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<Mor> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    #[inline]
    pub fn src(&self, f: Mor) -> Obj {
        self.morphisms[f].src
    }

    #[inline]
    pub fn tgt(&self, f: Mor) -> Obj {
        self.morphisms[f].tgt
    }

    #[inline]
    pub fn identity(&self, x: Obj) -> Mor {
        self.identities[x]
    }

    pub fn identities(&self) -> &[Mor] {
        &self.identities
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identities[self.src(f)] == f
    }

    /// `g . f`; panics when the pair is not composable.
    #[inline]
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        let h = self.table[g * self.morphisms.len() + f];
        assert!(h != NONE, "compose of non-composable pair");
        h as usize
    }

    pub fn try_compose(&self, g: Mor, f: Mor) -> Result<Mor> {
        if g >= self.morphisms.len() || f >= self.morphisms.len() || self.tgt(f) != self.src(g) {
            return Err(Error::NotComposable(format!("{g} . {f}")));
        }
        Ok(self.compose(g, f))
    }

    #[inline]
    pub fn hom(&self, x: Obj, y: Obj) -> &[Mor] {
        &self.homs[x * self.objects.len() + y]
    }

    /// Morphisms with source `x`.
    fn out_of(&self, x: Obj) -> impl Iterator<Item = &Mor> + '_ {
        let n = self.objects.len();
        (0..n).flat_map(move |y| self.homs[x * n + y].iter())
    }

    /// Every composable pair `(g, f)`.
    pub fn composable_pairs(&self) -> Vec<(Mor, Mor)> {
        let mut out = Vec::new();
        for f in 0..self.morphisms.len() {
            for &g in self.out_of(self.tgt(f)) {
                out.push((g, f));
            }
        }
        out
    }

    /// At most one morphism between any two objects.
    pub fn is_thin(&self) -> bool {
        self.homs.iter().all(|h| h.len() <= 1)
    }

    /// Only identity morphisms.
    pub fn is_discrete(&self) -> bool {
        self.morphisms.len() == self.objects.len()
    }

    pub fn inverse_of(&self, f: Mor) -> Option<Mor> {
        let (x, y) = (self.src(f), self.tgt(f));
        self.hom(y, x)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.identity(x) && self.compose(f, g) == self.identity(y))
    }

    pub fn is_iso(&self, f: Mor) -> bool {
        self.inverse_of(f).is_some()
    }

    /// Found by scanning for a mutually inverse pair.
    pub fn isomorphic(&self, x: Obj, y: Obj) -> bool {
        self.hom(x, y).iter().any(|&f| self.is_iso(f))
    }

    pub fn is_terminal(&self, t: Obj) -> bool {
        (0..self.num_objects()).all(|x| self.hom(x, t).len() == 1)
    }

    pub fn raw(&self) -> RawCategory {
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| (m.name.clone(), self.objects[m.src].clone(), self.objects[m.tgt].clone()))
                .collect(),
            identities: self
                .identities
                .iter()
                .enumerate()
                .map(|(x, &i)| (self.objects[x].clone(), self.morphisms[i].name.clone()))
                .collect(),
            compose: self
                .composable_pairs()
                .into_iter()
                .filter(|&(g, f)| !self.is_identity(g) && !self.is_identity(f))
                .map(|(g, f)| {
                    (
                        self.mor_name(g).to_string(),
                        self.mor_name(f).to_string(),
                        self.mor_name(self.compose(g, f)).to_string(),
                    )
                })
                .collect(),
        }
    }

    /// The empty category.
    pub fn empty() -> FinCategory {
        FinCategory::from_parts(vec![], vec![], vec![], |_, _| None).unwrap()
    }

    /// One object, only its identity.
    pub fn terminal() -> FinCategory {
        Self::discrete(&["*"])
    }

    pub fn discrete(names: &[&str]) -> FinCategory {
        let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let morphisms =
            objects.iter().enumerate().map(|(i, o)| Morphism { name: format!("id_{o}"), src: i, tgt: i }).collect();
        let ids = (0..objects.len()).collect();
        FinCategory::from_parts(objects, morphisms, ids, |g, f| (g == f).then_some(f)).unwrap()
    }

    /// A one-object category from a monoid table on elements `0..k`, with 0 the unit.
    pub fn monoid(names: &[&str], mul: impl Fn(usize, usize) -> usize) -> Result<FinCategory> {
        let morphisms = names.iter().map(|n| Morphism { name: n.to_string(), src: 0, tgt: 0 }).collect();
        FinCategory::from_parts(vec!["*".into()], morphisms, vec![0], |g, f| Some(mul(g, f)))
    }

    /// Two objects `0`, `1` and two arrows `s, t: 0 -> 1`.
    pub fn parallel_pair() -> FinCategory {
        let m = |name: &str, src, tgt| Morphism { name: name.into(), src, tgt };
        let morphisms = vec![m("id_0", 0, 0), m("id_1", 1, 1), m("s", 0, 1), m("t", 0, 1)];
        FinCategory::from_parts(vec!["0".into(), "1".into()], morphisms, vec![0, 1], |g, f| match (g, f) {
            (0 | 1, f) => Some(f),
            (g, 0) => Some(g),
            _ => None,
        })
        .unwrap()
    }
}

/// Validates raw data: identifiers distinct, endpoints resolve, identities
/// are units, the table is total on composable pairs, associativity holds.
///
/// Composites with an identity factor may be omitted; they are filled by
/// the unit law. Entries that are given are checked like any other.
pub fn validate_category(raw: &RawCategory) -> Result<FinCategory> {
    let mut report = Report::default();
    let mut obj_ix: HashMap<&str, Obj> = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if obj_ix.insert(o.as_str(), i).is_some() {
            report.push(Violation::DuplicateIdentifier(o.clone()));
        }
    }
    let mut mor_ix: HashMap<&str, Mor> = HashMap::new();
    let mut morphisms = Vec::new();
    for (i, (name, s, t)) in raw.morphisms.iter().enumerate() {
        if mor_ix.insert(name.as_str(), i).is_some() || obj_ix.contains_key(name.as_str()) {
            report.push(Violation::DuplicateIdentifier(name.clone()));
        }
        let src = obj_ix.get(s.as_str()).copied();
        let tgt = obj_ix.get(t.as_str()).copied();
        for (e, ix) in [(s, src), (t, tgt)] {
            if ix.is_none() {
                report.push(Violation::DanglingEndpoint { morphism: name.clone(), endpoint: e.clone() });
            }
        }
        morphisms.push(Morphism { name: name.clone(), src: src.unwrap_or(0), tgt: tgt.unwrap_or(0) });
    }
    let mut identities = vec![None; raw.objects.len()];
    for (o, i) in &raw.identities {
        match (obj_ix.get(o.as_str()), mor_ix.get(i.as_str())) {
            (Some(&x), Some(&f)) => {
                if morphisms[f].src != x || morphisms[f].tgt != x {
                    report.push(Violation::IdentityViolation(o.clone()));
                }
                identities[x] = Some(f);
            }
            (None, _) => report.push(Violation::UnknownIdentifier(o.clone())),
            (_, None) => report.push(Violation::UnknownIdentifier(i.clone())),
        }
    }
    for (x, id) in identities.iter().enumerate() {
        if id.is_none() {
            report.push(Violation::MissingIdentity(raw.objects[x].clone()));
        }
    }
    if !report.is_empty() {
        return Err(Error::Invalid { kind: "category", report });
    }
    let identities: Vec<Mor> = identities.into_iter().map(Option::unwrap).collect();
    let is_id = |f: Mor| identities[morphisms[f].src] == f;
    let mut given: HashMap<(Mor, Mor), Mor> = HashMap::new();
    for (g, f, h) in &raw.compose {
        let look = |n: &String, report: &mut Report| {
            let r = mor_ix.get(n.as_str()).copied();
            if r.is_none() {
                report.push(Violation::UnknownIdentifier(n.clone()));
            }
            r
        };
        let (gi, fi, hi) = (look(g, &mut report), look(f, &mut report), look(h, &mut report));
        let (Some(gi), Some(fi), Some(hi)) = (gi, fi, hi) else { continue };
        if morphisms[fi].tgt != morphisms[gi].src {
            report.push(Violation::SpuriousComposite { g: g.clone(), f: f.clone() });
            continue;
        }
        if morphisms[hi].src != morphisms[fi].src || morphisms[hi].tgt != morphisms[gi].tgt {
            report.push(Violation::CompositeTyping { g: g.clone(), f: f.clone(), h: h.clone() });
            continue;
        }
        if given.insert((gi, fi), hi).is_some_and(|prev| prev != hi) {
            report.push(Violation::Other(format!("conflicting composites for {g}.{f}")));
        }
    }
    if !report.is_empty() {
        return Err(Error::Invalid { kind: "category", report });
    }
    FinCategory::from_parts(raw.objects.clone(), morphisms.clone(), identities.clone(), |g, f| {
        given.get(&(g, f)).copied().or_else(|| {
            if is_id(g) {
                Some(f)
            } else if is_id(f) {
                Some(g)
            } else {
                None
            }
        })
    })
}
