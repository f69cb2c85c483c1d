use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{monotone_maps, preorders_up_to_iso, FinCategory, FinFunctor, FinPreorder, Mor, Obj};

/// A quotient `e: x -> q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeqResult {
    pub q: FinPreorder,
    pub e: Vec<usize>,
}

fn check_map(dom: &FinPreorder, cod: &FinPreorder, f: &[usize], what: &str) -> Result<()> {
    if !dom.is_monotone(cod, f) {
        return Err(Error::EndpointMismatch(format!("{what} is not a monotone map of the given preorders")));
    }
    Ok(())
}

/// Smallest class index per element, by union-find over the pairs.
fn classes(n: usize, glue: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for (a, b) in glue {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

/// Quotient of `x` by the equivalence generated by `g(t) ~ h(t)`, ordered by
/// the closure of the image order. Classes are listed by least member index
/// and named after their lexicographically least member.
pub fn preorder_coequalizer(w: &FinPreorder, x: &FinPreorder, g: &[usize], h: &[usize]) -> Result<CoeqResult> {
    check_map(w, x, g, "g")?;
    check_map(w, x, h, "h")?;
    let root = classes(x.len(), g.iter().copied().zip(h.iter().copied()));
    let mut reps: Vec<usize> = root.clone();
    reps.sort_unstable();
    reps.dedup();
    let e: Vec<usize> = root.iter().map(|r| reps.binary_search(r).unwrap()).collect();
    let names = reps
        .iter()
        .map(|&r| (0..x.len()).filter(|&i| root[i] == r).map(|i| x.name(i)).min().unwrap().to_string())
        .collect();
    let pairs: Vec<(usize, usize)> = x.strict_pairs().into_iter().map(|(a, b)| (e[a], e[b])).collect();
    Ok(CoeqResult { q: FinPreorder::closure(names, &pairs), e })
}

/// Couniversality of `res` against every monotone map into each target:
/// a map coequalizing `g` and `h` factors through `e` exactly once, and no
/// other map factors at all.
pub fn verify_coequalizer(
    x: &FinPreorder,
    g: &[usize],
    h: &[usize],
    res: &CoeqResult,
    targets: &[FinPreorder],
) -> bool {
    for z in targets {
        let through: Vec<Vec<usize>> = monotone_maps(&res.q, z);
        for k in monotone_maps(x, z) {
            let coequalizes = g.iter().zip(h).all(|(&a, &b)| k[a] == k[b]);
            let n = through.iter().filter(|k2| res.e.iter().enumerate().all(|(i, &c)| k2[c] == k[i])).count();
            if n != usize::from(coequalizes) {
                return false;
            }
        }
    }
    true
}

/// Targets for couniversality scans: preorders up to 3 elements and `extra`.
pub fn default_targets(extra: &[&FinPreorder]) -> Vec<FinPreorder> {
    let mut t: Vec<FinPreorder> = (0..=3).flat_map(preorders_up_to_iso).collect();
    t.extend(extra.iter().map(|p| (*p).clone()));
    t
}

/// The preorder reflection of a category with its unit.
#[derive(Debug, Clone)]
pub struct Reflection {
    pub preorder: FinPreorder,
    pub thin: Arc<FinCategory>,
    pub unit: FinFunctor,
}

/// `x <= y` iff `hom(x, y)` is non-empty.
pub fn preorder_reflection(c: &Arc<FinCategory>) -> Reflection {
    let n = c.num_objects();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| !c.hom(x, y).is_empty()).collect();
    let preorder = FinPreorder::new(c.objects().to_vec(), &pairs).expect("composition makes hom-existence transitive");
    let thin = preorder.to_category_arc();
    let mors: Vec<Mor> = (0..c.num_morphisms()).map(|f| thin.hom(c.src(f), c.tgt(f))[0]).collect();
    let unit = FinFunctor::new_trusted(c.clone(), thin.clone(), (0..n).collect(), mors);
    Reflection { preorder, thin, unit }
}

impl Reflection {
    /// The monotone map `r` with `r . unit = f`, for `f` into a thin category.
    pub fn factor(&self, f: &FinFunctor) -> Result<Vec<Obj>> {
        if !f.cod().is_thin() {
            return Err(Error::Construction("target is not thin".into()));
        }
        let map = f.obj_map().to_vec();
        let d = f.cod();
        let ok = self.preorder.strict_pairs().iter().all(|&(x, y)| !d.hom(map[x], map[y]).is_empty());
        if ok {
            Ok(map)
        } else {
            Err(Error::NoFactorization("functor does not factor through the reflection".into()))
        }
    }

    /// Every functor into each thin target factors uniquely through the unit.
    pub fn verify_universal(&self, targets: &[FinPreorder]) -> Result<bool> {
        let c = self.unit.dom();
        for z in targets {
            let zc = z.to_category_arc();
            for f in crate::fincat::enumerate::functors(c, &zc)? {
                let hits = monotone_maps(&self.preorder, z)
                    .into_iter()
                    .filter(|r| (0..c.num_objects()).all(|x| r[x] == f.obj(x)))
                    .count();
                if hits != 1 || self.factor(&f).is_err() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Disjoint union with injections. Element `k` of part `j` is named `j.k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoproductResult {
    pub sum: FinPreorder,
    pub injections: Vec<Vec<usize>>,
    pub offsets: Vec<usize>,
}

pub fn coproduct_preorder(parts: &[FinPreorder]) -> CoproductResult {
    let mut names = Vec::new();
    let mut pairs = Vec::new();
    let mut offsets = Vec::new();
    let mut injections = Vec::new();
    for (j, p) in parts.iter().enumerate() {
        let off = names.len();
        offsets.push(off);
        names.extend(p.elements().iter().map(|e| format!("{j}.{e}")));
        pairs.extend(p.strict_pairs().into_iter().map(|(a, b)| (off + a, off + b)));
        injections.push((0..p.len()).map(|k| off + k).collect());
    }
    let sum = FinPreorder::new(names, &pairs).expect("disjoint union of preorders");
    CoproductResult { sum, injections, offsets }
}

impl CoproductResult {
    /// The part containing element `s`.
    pub fn part_of(&self, s: usize) -> usize {
        self.offsets.iter().rposition(|&o| o <= s).expect("element of the sum")
    }

    /// `[f_0, ..., f_n]: sum -> z`
    pub fn copair(&self, maps: &[Vec<usize>]) -> Vec<usize> {
        maps.iter().flatten().copied().collect()
    }

    /// Each cocone into `z` factors exactly once through the sum.
    pub fn verify_couniversal(&self, parts: &[FinPreorder], z: &FinPreorder) -> bool {
        let per_part: Vec<Vec<Vec<usize>>> = parts.iter().map(|p| monotone_maps(p, z)).collect();
        let total: usize = per_part.iter().map(|v| v.len()).product();
        let sum_maps = monotone_maps(&self.sum, z);
        if sum_maps.len() != total {
            return false;
        }
        sum_maps.iter().all(|m| {
            self.injections.iter().zip(&per_part).all(|(inj, maps)| {
                let restricted: Vec<usize> = inj.iter().map(|&s| m[s]).collect();
                maps.contains(&restricted)
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensivityReport {
    /// Elements of `w` over each part, ascending.
    pub fibers: Vec<Vec<usize>>,
    /// No order relation crosses two fibers.
    pub fibers_separated: bool,
    /// `sum_j w_j -> w` is an isomorphism over the coproduct.
    pub comparison_iso: bool,
    /// Slice homs `(w, a) -> (w2, a2)` over the coproduct, and the product of
    /// the per-part slice hom counts.
    pub hom_counts: Option<(usize, usize)>,
}

impl ExtensivityReport {
    pub fn holds(&self) -> bool {
        self.fibers_separated && self.comparison_iso && self.hom_counts.is_none_or(|(a, b)| a == b)
    }
}

fn restrict(w: &FinPreorder, keep: &[usize]) -> FinPreorder {
    let names = keep.iter().map(|&i| w.name(i).to_string()).collect();
    let pairs: Vec<(usize, usize)> = (0..keep.len())
        .flat_map(|i| (0..keep.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| w.le(keep[i], keep[j]))
        .collect();
    FinPreorder::new(names, &pairs).expect("restriction of a preorder")
}

fn slice_hom_count(w: &FinPreorder, a: &[usize], w2: &FinPreorder, a2: &[usize]) -> usize {
    monotone_maps(w, w2).into_iter().filter(|f| (0..w.len()).all(|i| a2[f[i]] == a[i])).count()
}

/// Decomposes `a: w -> sum parts` into fibers and checks the comparison,
/// optionally against a second object `(w2, a2)` for the hom bijection.
pub fn extensivity_check(
    parts: &[FinPreorder],
    w: &FinPreorder,
    a: &[usize],
    second: Option<(&FinPreorder, &[usize])>,
) -> Result<ExtensivityReport> {
    let cp = coproduct_preorder(parts);
    check_map(w, &cp.sum, a, "a")?;
    let part = |s: usize| cp.part_of(s);
    let split = |w: &FinPreorder, a: &[usize]| -> Vec<Vec<usize>> {
        let mut f = vec![Vec::new(); parts.len()];
        for i in 0..w.len() {
            f[part(a[i])].push(i);
        }
        f
    };
    let fibers = split(w, a);
    let fibers_separated = (0..w.len()).all(|i| (0..w.len()).all(|j| !w.le(i, j) || part(a[i]) == part(a[j])));
    // The coproduct of the fibers, compared with w through the inclusion.
    let pieces: Vec<FinPreorder> = fibers.iter().map(|f| restrict(w, f)).collect();
    let sum = coproduct_preorder(&pieces);
    let incl: Vec<usize> = fibers.iter().flatten().copied().collect();
    let mut inv = vec![0; w.len()];
    for (k, &i) in incl.iter().enumerate() {
        inv[i] = k;
    }
    let comparison_iso = sum.sum.is_monotone(w, &incl) && w.is_monotone(&sum.sum, &inv);
    let hom_counts = second.map(|(w2, a2)| {
        let whole = slice_hom_count(w, a, w2, a2);
        let fibers2 = split(w2, a2);
        let parts_count: usize = (0..parts.len())
            .map(|j| {
                let (p, p2) = (restrict(w, &fibers[j]), restrict(w2, &fibers2[j]));
                let aj: Vec<usize> = fibers[j].iter().map(|&i| a[i]).collect();
                let aj2: Vec<usize> = fibers2[j].iter().map(|&i| a2[i]).collect();
                slice_hom_count(&p, &aj, &p2, &aj2)
            })
            .product();
        (whole, parts_count)
    });
    Ok(ExtensivityReport { fibers, fibers_separated, comparison_iso, hom_counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> FinPreorder {
        FinPreorder::new(vec!["0".into(), "1".into(), "2".into()], &[(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn coequalizer_of_equal_maps_is_iso() {
        let x = FinPreorder::chain(3);
        let w = FinPreorder::point();
        let r = preorder_coequalizer(&w, &x, &[1], &[1]).unwrap();
        assert!(r.q.is_isomorphic(&x));
        assert!(verify_coequalizer(&x, &[1], &[1], &r, &default_targets(&[&x])));
    }

    #[test]
    fn coequalizer_collapses_chain() {
        let x = FinPreorder::chain(2);
        let r = preorder_coequalizer(&FinPreorder::point(), &x, &[0], &[1]).unwrap();
        assert_eq!(r.q.len(), 1);
        assert_eq!(r.q.name(0), "0");
        assert!(verify_coequalizer(&x, &[0], &[1], &r, &default_targets(&[])));
    }

    #[test]
    fn coequalizer_glues_the_tops_of_v() {
        let x = v();
        let r = preorder_coequalizer(&FinPreorder::point(), &x, &[1], &[2]).unwrap();
        assert_eq!(r.q.len(), 2);
        assert!(r.q.le(0, 1) && !r.q.le(1, 0));
        assert_eq!(r.e, vec![0, 1, 1]);
        assert!(verify_coequalizer(&x, &[1], &[2], &r, &default_targets(&[&x])));
        // The identity is not a coequalizer of this pair.
        let bad = CoeqResult { q: x.clone(), e: vec![0, 1, 2] };
        assert!(!verify_coequalizer(&x, &[1], &[2], &bad, &default_targets(&[])));
    }

    #[test]
    fn non_monotone_input_rejected() {
        let x = FinPreorder::chain(2);
        let w = FinPreorder::chain(2);
        assert!(preorder_coequalizer(&w, &x, &[1, 0], &[0, 1]).is_err());
    }

    #[test]
    fn reflections() {
        let two = FinPreorder::chain(2).to_category_arc();
        let r = preorder_reflection(&two);
        assert!(r.preorder.is_isomorphic(&FinPreorder::chain(2)));
        let z2 = Arc::new(FinCategory::monoid(&["e", "s"], |a, b| a ^ b).unwrap());
        assert_eq!(preorder_reflection(&z2).preorder.len(), 1);
        let targets = default_targets(&[]);
        assert!(r.verify_universal(&targets).unwrap());
        assert!(preorder_reflection(&z2).verify_universal(&targets).unwrap());
    }

    #[test]
    fn coproducts() {
        assert!(coproduct_preorder(&[]).sum.is_empty());
        let two_points = coproduct_preorder(&[FinPreorder::point(), FinPreorder::point()]);
        assert!(two_points.sum.is_isomorphic(&FinPreorder::antichain(2)));
        let parts = [FinPreorder::chain(2), FinPreorder::chain(2)];
        let cc = coproduct_preorder(&parts);
        assert_eq!(cc.sum.len(), 4);
        assert!(!cc.sum.le(1, 2) && cc.sum.le(2, 3));
        for z in default_targets(&[]) {
            assert!(cc.verify_couniversal(&parts, &z));
        }
    }

    #[test]
    fn extensivity_of_a_split_chain() {
        let parts = [FinPreorder::chain(2), FinPreorder::point()];
        // w = 2-antichain, one element over each part.
        let w = FinPreorder::antichain(2);
        let rep = extensivity_check(&parts, &w, &[1, 2], Some((&w, &[1, 2]))).unwrap();
        assert_eq!(rep.fibers, vec![vec![0], vec![1]]);
        assert!(rep.holds());
        // A chain cannot straddle two parts monotonically.
        let c2 = FinPreorder::chain(2);
        assert!(extensivity_check(&parts, &c2, &[1, 2], None).is_err());
        let rep = extensivity_check(&parts, &c2, &[0, 1], Some((&c2, &[0, 1]))).unwrap();
        assert_eq!(rep.hom_counts, Some((1, 1)));
    }
}
