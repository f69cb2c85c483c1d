use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Report, Result, Violation};

use super::category::{FinCategory, Morphism};

/// A finite preorder: reflexive and transitive, not necessarily antisymmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinPreorder {
    elements: Vec<String>,
    le: Vec<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawPreorder {
    pub elements: Vec<String>,
    /// `(x, y)` meaning `x <= y`
    pub le: Vec<(String, String)>,
}

/// Reflexivity is implicit, transitivity is not: a missing `x<=z` is an error.
pub fn validate_preorder(raw: &RawPreorder) -> Result<FinPreorder> {
    let mut report = Report::default();
    let mut ix: HashMap<&str, usize> = HashMap::new();
    for (i, e) in raw.elements.iter().enumerate() {
        if ix.insert(e.as_str(), i).is_some() {
            report.push(Violation::DuplicateIdentifier(e.clone()));
        }
    }
    let mut pairs = Vec::new();
    for (x, y) in &raw.le {
        match (ix.get(x.as_str()), ix.get(y.as_str())) {
            (Some(&a), Some(&b)) => pairs.push((a, b)),
            (None, _) => report.push(Violation::UnknownIdentifier(x.clone())),
            (_, None) => report.push(Violation::UnknownIdentifier(y.clone())),
        }
    }
    if !report.is_empty() {
        return Err(Error::Invalid { kind: "preorder", report });
    }
    FinPreorder::new(raw.elements.clone(), &pairs)
}

impl FinPreorder {
    /// Adds reflexive pairs, then rejects any missing transitive pair.
    pub fn new(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<FinPreorder> {
        let n = elements.len();
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(a, b) in pairs {
            le[a * n + b] = true;
        }
        Self::from_matrix(elements, le)
    }

    pub fn from_matrix(elements: Vec<String>, le: Vec<bool>) -> Result<FinPreorder> {
        let n = elements.len();
        assert_eq!(le.len(), n * n);
        let mut report = Report::default();
        for i in 0..n {
            if !le[i * n + i] {
                report.push(Violation::Other(format!("not reflexive at {}", elements[i])));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !le[x * n + y] || x == y {
                    continue;
                }
                for z in 0..n {
                    if le[y * n + z] && !le[x * n + z] {
                        report.push(Violation::NotTransitive {
                            x: elements[x].clone(),
                            y: elements[y].clone(),
                            z: elements[z].clone(),
                        });
                    }
                }
            }
        }
        report.into_result("preorder", FinPreorder { elements, le })
    }

    /// Reflexive-transitive closure of `pairs`.
    pub fn closure(elements: Vec<String>, pairs: &[(usize, usize)]) -> FinPreorder {
        let n = elements.len();
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(a, b) in pairs {
            le[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        FinPreorder { elements, le }
    }

    fn numbered(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    /// `0 <= 1 <= ... <= n-1`
    pub fn chain(n: usize) -> FinPreorder {
        let pairs: Vec<_> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        FinPreorder::new(Self::numbered(n), &pairs).unwrap()
    }

    pub fn antichain(n: usize) -> FinPreorder {
        FinPreorder::new(Self::numbered(n), &[]).unwrap()
    }

    /// Everything below everything.
    pub fn codiscrete(n: usize) -> FinPreorder {
        let pairs: Vec<_> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        FinPreorder::new(Self::numbered(n), &pairs).unwrap()
    }

    pub fn point() -> FinPreorder {
        FinPreorder::new(vec!["*".into()], &[]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.le[x * self.elements.len() + y]
    }

    pub fn matrix(&self) -> &[bool] {
        &self.le
    }

    pub fn is_poset(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| x == y || !(self.le(x, y) && self.le(y, x))))
    }

    /// Non-reflexive pairs `x <= y`, in index order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| x != y && self.le(x, y)).collect()
    }

    pub fn opposite(&self) -> FinPreorder {
        let n = self.len();
        let mut le = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                le[y * n + x] = self.le(x, y);
            }
        }
        FinPreorder { elements: self.elements.clone(), le }
    }

    pub fn with_names(&self, names: Vec<String>) -> FinPreorder {
        assert_eq!(names.len(), self.len());
        FinPreorder { elements: names, le: self.le.clone() }
    }

    pub fn is_monotone(&self, cod: &FinPreorder, map: &[usize]) -> bool {
        map.len() == self.len()
            && map.iter().all(|&y| y < cod.len())
            && self.strict_pairs().iter().all(|&(x, y)| cod.le(map[x], map[y]))
    }

    /// Meet of a set of elements, if a greatest lower bound exists.
    /// In a preorder the result is one representative, the least index.
    pub fn meet(&self, xs: &[usize]) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&l| xs.iter().all(|&x| self.le(l, x))).collect();
        lower.iter().copied().find(|&g| lower.iter().all(|&l| self.le(l, g)))
    }

    pub fn join(&self, xs: &[usize]) -> Option<usize> {
        self.opposite().meet(xs)
    }

    /// Canonical adjacency bits: the least bit-string over all relabelings.
    pub fn canonical_form(&self) -> Vec<bool> {
        let n = self.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<bool>> = None;
        loop {
            let bits: Vec<bool> =
                (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| self.le(perm[i], perm[j])).collect();
            if best.as_ref().is_none_or(|b| bits < *b) {
                best = Some(bits);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best.unwrap_or_default()
    }

    pub fn is_isomorphic(&self, other: &FinPreorder) -> bool {
        self.len() == other.len() && self.canonical_form() == other.canonical_form()
    }

    /// The thin category with one morphism `x<=y` for each related pair.
    pub fn to_category(&self) -> FinCategory {
        let n = self.len();
        let mut morphisms = Vec::new();
        let mut index = vec![usize::MAX; n * n];
        let mut ids = vec![0; n];
        for x in 0..n {
            ids[x] = morphisms.len();
            index[x * n + x] = morphisms.len();
            morphisms.push(Morphism { name: format!("id_{}", self.elements[x]), src: x, tgt: x });
        }
        for (x, y) in self.strict_pairs() {
            index[x * n + y] = morphisms.len();
            morphisms.push(Morphism { name: format!("{}<={}", self.elements[x], self.elements[y]), src: x, tgt: y });
        }
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
        FinCategory::from_parts_trusted(self.elements.clone(), morphisms, ids, |g, f| {
            Some(index[ends[f].0 * n + ends[g].1])
        })
        .expect("preorder category")
    }

    pub fn to_category_arc(&self) -> Arc<FinCategory> {
        Arc::new(self.to_category())
    }
}

/// Lexicographic successor; false once the last permutation is reached.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every monotone map `dom -> cod`, as image vectors, in lexicographic order.
pub fn monotone_maps(dom: &FinPreorder, cod: &FinPreorder) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(dom.len());
    fn go(dom: &FinPreorder, cod: &FinPreorder, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = cur.len();
        if k == dom.len() {
            out.push(cur.clone());
            return;
        }
        for y in 0..cod.len() {
            let ok = (0..k).all(|i| (!dom.le(i, k) || cod.le(cur[i], y)) && (!dom.le(k, i) || cod.le(y, cur[i])));
            if ok {
                cur.push(y);
                go(dom, cod, cur, out);
                cur.pop();
            }
        }
    }
    go(dom, cod, &mut cur, &mut out);
    out
}

/// All preorders on `n` labeled elements, in order of their bit-strings.
pub fn labeled_preorders(n: usize) -> Vec<FinPreorder> {
    let off: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << off.len()) {
        let pairs: Vec<(usize, usize)> =
            off.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, p)| *p).collect();
        if let Ok(p) = FinPreorder::new(FinPreorder::numbered(n), &pairs) {
            out.push(p);
        }
    }
    out
}

/// One representative per isomorphism class, in first-seen order.
pub fn preorders_up_to_iso(n: usize) -> Vec<FinPreorder> {
    let mut seen = std::collections::HashSet::new();
    labeled_preorders(n).into_iter().filter(|p| seen.insert(p.canonical_form())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflexivity_is_implicit() {
        let raw = RawPreorder { elements: vec!["0".into(), "1".into()], le: vec![("0".into(), "1".into())] };
        let p = validate_preorder(&raw).unwrap();
        assert!(p.le(1, 1) && p.le(0, 1) && !p.le(1, 0));
    }

    #[test]
    fn transitivity_is_not_implicit() {
        let raw = RawPreorder {
            elements: vec!["a".into(), "b".into(), "c".into()],
            le: vec![("a".into(), "b".into()), ("b".into(), "c".into())],
        };
        let err = validate_preorder(&raw).unwrap_err();
        assert!(err.to_string().contains("not transitive: a<=b and b<=c"), "{err}");
    }

    /// Oracle: brute-force count over all relations, no shared code with the
    /// enumerator beyond the transitivity test written out here.
    fn count_by_brute_force(n: usize) -> (usize, usize) {
        let cells = n * n;
        let mut labeled = Vec::new();
        for mask in 0u32..(1 << cells) {
            let r = |i: usize, j: usize| mask >> (i * n + j) & 1 == 1;
            let refl = (0..n).all(|i| r(i, i));
            let trans = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(r(i, j) && r(j, k)) || r(i, k))));
            if refl && trans {
                labeled.push(mask);
            }
        }
        let mut classes: Vec<u32> = Vec::new();
        for &m in &labeled {
            let mut perm: Vec<usize> = (0..n).collect();
            let mut canon = u32::MAX;
            loop {
                let mut img = 0u32;
                for i in 0..n {
                    for j in 0..n {
                        if m >> (i * n + j) & 1 == 1 {
                            img |= 1 << (perm[i] * n + perm[j]);
                        }
                    }
                }
                canon = canon.min(img);
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            if !classes.contains(&canon) {
                classes.push(canon);
            }
        }
        (labeled.len(), classes.len())
    }

    #[test]
    fn enumeration_matches_brute_force_recount() {
        for n in 0..=4 {
            let (labeled, classes) = count_by_brute_force(n);
            assert_eq!(labeled_preorders(n).len(), labeled, "labeled n={n}");
            assert_eq!(preorders_up_to_iso(n).len(), classes, "classes n={n}");
        }
        // Known sequences: labeled 1,1,4,29,355; up to iso 1,1,3,9,33.
        let iso: Vec<usize> = (0..=4).map(|n| preorders_up_to_iso(n).len()).collect();
        assert_eq!(iso, vec![1, 1, 3, 9, 33]);
    }

    #[test]
    fn thin_category_of_chain() {
        let c = FinPreorder::chain(3).to_category();
        assert_eq!(c.num_morphisms(), 6);
        assert!(c.is_thin());
        assert!(c.law_report().is_empty());
    }

    #[test]
    fn meets_and_joins_in_v() {
        let v = FinPreorder::new(vec!["0".into(), "1".into(), "2".into()], &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(v.meet(&[1, 2]), Some(0));
        assert_eq!(v.join(&[1, 2]), None);
    }

    #[test]
    fn monotone_map_count_chain_two() {
        let c = FinPreorder::chain(2);
        assert_eq!(monotone_maps(&c, &c).len(), 3);
    }
}
