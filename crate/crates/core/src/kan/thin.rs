use serde::Serialize;

use crate::constructions::{preorder_coequalizer, verify_coequalizer, CoeqResult};
use crate::error::{Error, Result};
use crate::fincat::{monotone_maps, preorders_up_to_iso, FinPreorder};

/// A pair `(g, phi_g), (h, phi_h): (w, a) -> (x, b)` in the lax slice over
/// a preorder `z`. In a thin ambient each 2-cell is the inequality
/// `b . g <= a`, so the morphisms are determined by `g` and `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeqInstance {
    pub z: FinPreorder,
    pub w: FinPreorder,
    pub a: Vec<usize>,
    pub x: FinPreorder,
    pub b: Vec<usize>,
    pub g: Vec<usize>,
    pub h: Vec<usize>,
}

fn below(z: &FinPreorder, lo: impl Iterator<Item = usize>, hi: impl Iterator<Item = usize>) -> bool {
    lo.zip(hi).all(|(l, h)| z.le(l, h))
}

impl CoeqInstance {
    pub fn new(
        z: FinPreorder,
        w: FinPreorder,
        a: Vec<usize>,
        x: FinPreorder,
        b: Vec<usize>,
        g: Vec<usize>,
        h: Vec<usize>,
    ) -> Result<CoeqInstance> {
        let inst = CoeqInstance { z, w, a, x, b, g, h };
        let ok = inst.w.is_monotone(&inst.z, &inst.a)
            && inst.x.is_monotone(&inst.z, &inst.b)
            && inst.w.is_monotone(&inst.x, &inst.g)
            && inst.w.is_monotone(&inst.x, &inst.h)
            && inst.is_lax(&inst.g)
            && inst.is_lax(&inst.h);
        if !ok {
            return Err(Error::EndpointMismatch("maps are not lax slice morphisms (w, a) -> (x, b)".into()));
        }
        Ok(inst)
    }

    /// `b . g <= a`
    fn is_lax(&self, g: &[usize]) -> bool {
        below(&self.z, g.iter().map(|&o| self.b[o]), self.a.iter().copied())
    }

    /// `f . g = f . h`; the 2-cells agree automatically.
    fn coequalizes(&self, f: &[usize]) -> bool {
        self.g.iter().zip(&self.h).all(|(&p, &q)| f[p] == f[q])
    }
}

/// `(ran_f b)(e)` is the meet of `b(o)` over `e <= f(o)`.
pub fn thin_ran(z: &FinPreorder, x: &FinPreorder, y: &FinPreorder, f: &[usize], b: &[usize]) -> Option<Vec<usize>> {
    (0..y.len())
        .map(|e| {
            let vals: Vec<usize> = (0..x.len()).filter(|&o| y.le(e, f[o])).map(|o| b[o]).collect();
            z.meet(&vals)
        })
        .collect()
}

/// `c . f <= b`, and every monotone `c'` with `c' . f <= b` lies below `c`.
pub fn is_thin_ran(z: &FinPreorder, x: &FinPreorder, y: &FinPreorder, f: &[usize], b: &[usize], c: &[usize]) -> bool {
    let _ = x;
    let lax = |c: &[usize]| below(z, f.iter().map(|&o| c[o]), b.iter().copied());
    y.is_monotone(z, c)
        && lax(c)
        && monotone_maps(y, z).iter().filter(|c2| lax(c2)).all(|c2| below(z, c2.iter().copied(), c.iter().copied()))
}

/// `(f, phi): (x, b) -> (q, c)` with `f` the preorder coequalizer and
/// `c = ran_f b`, when that exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxCoequalizer {
    pub coeq: CoeqResult,
    pub c: Option<Vec<usize>>,
}

pub fn lax_slice_coequalizer(inst: &CoeqInstance) -> Result<LaxCoequalizer> {
    let coeq = preorder_coequalizer(&inst.w, &inst.x, &inst.g, &inst.h)?;
    let c = thin_ran(&inst.z, &inst.x, &coeq.q, &coeq.e, &inst.b);
    Ok(LaxCoequalizer { coeq, c })
}

/// Cocones `(y', f', c')` of the pair: `f'` coequalizes and `c' f' <= b`.
pub struct TestCocones {
    cocones: Vec<(usize, Vec<usize>, Vec<usize>)>,
    targets: Vec<FinPreorder>,
}

impl TestCocones {
    pub fn new(inst: &CoeqInstance, targets: Vec<FinPreorder>) -> TestCocones {
        let mut cocones = Vec::new();
        for (t, y2) in targets.iter().enumerate() {
            let cs = monotone_maps(y2, &inst.z);
            for f2 in monotone_maps(&inst.x, y2) {
                if !inst.coequalizes(&f2) {
                    continue;
                }
                for c2 in &cs {
                    if below(&inst.z, f2.iter().map(|&o| c2[o]), inst.b.iter().copied()) {
                        cocones.push((t, f2.clone(), c2.clone()));
                    }
                }
            }
        }
        TestCocones { cocones, targets }
    }

    pub fn len(&self) -> usize {
        self.cocones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cocones.is_empty()
    }
}

/// Every test cocone factors through `(f, c)` by exactly one `(s, beta)`:
/// `s . f = f'` and `c' . s <= c`.
pub fn is_lax_coequalizer(inst: &CoeqInstance, y: &FinPreorder, f: &[usize], c: &[usize], tests: &TestCocones) -> bool {
    let maps: Vec<Vec<Vec<usize>>> = tests.targets.iter().map(|t| monotone_maps(y, t)).collect();
    factors_uniquely(inst, y, f, c, tests, &maps)
}

/// [`is_lax_coequalizer`] with the monotone maps from `y` to each target
/// precomputed.
fn factors_uniquely(
    inst: &CoeqInstance,
    y: &FinPreorder,
    f: &[usize],
    c: &[usize],
    tests: &TestCocones,
    maps: &[Vec<Vec<usize>>],
) -> bool {
    if !inst.x.is_monotone(y, f)
        || !y.is_monotone(&inst.z, c)
        || !inst.coequalizes(f)
        || !below(&inst.z, f.iter().map(|&o| c[o]), inst.b.iter().copied())
    {
        return false;
    }
    tests.cocones.iter().all(|(t, f2, c2)| {
        let n = maps[*t]
            .iter()
            .filter(|s| f.iter().zip(f2).all(|(&e, &e2)| s[e] == e2))
            .filter(|s| below(&inst.z, s.iter().map(|&e| c2[e]), c.iter().copied()))
            .count();
        n == 1
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CoeqCheck {
    /// `ran_f b` exists.
    pub found: bool,
    /// The underlying map is a coequalizer of preorders.
    pub preserved: bool,
    /// `(f, phi)` is a coequalizer in the lax slice against every test cocone.
    pub certified: bool,
    pub test_cocones: usize,
    /// Surjective candidates `(y'', f'', c'')` compared on both sides of the iff.
    pub iff_candidates: usize,
    pub iff_agree: bool,
    /// Candidates accepted by the lax slice side and by the Kan side.
    pub lax_side: usize,
    pub kan_side: usize,
}

impl CoeqCheck {
    pub fn holds(&self) -> bool {
        self.iff_agree && (!self.found || (self.preserved && self.certified))
    }
}

/// Runs both directions of the characterization on one instance.
/// Candidates range over preorders of the coequalizer's size, surjective
/// `f''` that coequalize, and `c''` with `c'' f'' <= b`.
pub fn coequalizer_preservation_check(inst: &CoeqInstance, targets: &[FinPreorder]) -> Result<CoeqCheck> {
    check_lax_coequalizer(inst, &lax_slice_coequalizer(inst)?, targets)
}

/// The same checks against a given candidate, computed or not.
pub fn check_lax_coequalizer(inst: &CoeqInstance, lc: &LaxCoequalizer, targets: &[FinPreorder]) -> Result<CoeqCheck> {
    let mut tset = targets.to_vec();
    tset.push(lc.coeq.q.clone());
    let tests = TestCocones::new(inst, tset.clone());
    let preserved = verify_coequalizer(&inst.x, &inst.g, &inst.h, &lc.coeq, &tset);
    let certified = match &lc.c {
        Some(c) => is_lax_coequalizer(inst, &lc.coeq.q, &lc.coeq.e, c, &tests),
        None => false,
    };
    let (mut n, mut agree, mut lax_side, mut kan_side) = (0, true, 0, 0);
    for y2 in preorders_up_to_iso(lc.coeq.q.len()) {
        let cs = monotone_maps(&y2, &inst.z);
        let maps: Vec<Vec<Vec<usize>>> = tests.targets.iter().map(|t| monotone_maps(&y2, t)).collect();
        for f2 in monotone_maps(&inst.x, &y2) {
            let mut hit = vec![false; y2.len()];
            f2.iter().for_each(|&e| hit[e] = true);
            if !hit.iter().all(|&b| b) || !inst.coequalizes(&f2) {
                continue;
            }
            let is_coeq =
                verify_coequalizer(&inst.x, &inst.g, &inst.h, &CoeqResult { q: y2.clone(), e: f2.clone() }, &tset);
            for c2 in &cs {
                if !below(&inst.z, f2.iter().map(|&o| c2[o]), inst.b.iter().copied()) {
                    continue;
                }
                n += 1;
                let lhs = factors_uniquely(inst, &y2, &f2, c2, &tests, &maps);
                let rhs = is_coeq && is_thin_ran(&inst.z, &inst.x, &y2, &f2, &inst.b, c2);
                lax_side += usize::from(lhs);
                kan_side += usize::from(rhs);
                agree &= lhs == rhs;
            }
        }
    }
    Ok(CoeqCheck {
        found: lc.c.is_some(),
        preserved,
        certified,
        test_cocones: tests.len(),
        iff_candidates: n,
        iff_agree: agree,
        lax_side,
        kan_side,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::default_targets;

    fn small_targets() -> Vec<FinPreorder> {
        (0..=2).flat_map(preorders_up_to_iso).collect()
    }

    #[test]
    fn identical_pair_is_identity_like() {
        let z = FinPreorder::chain(2);
        let inst = CoeqInstance::new(z.clone(), FinPreorder::point(), vec![1], z.clone(), vec![0, 1], vec![1], vec![1])
            .unwrap();
        let lc = lax_slice_coequalizer(&inst).unwrap();
        assert_eq!(lc.coeq.e, vec![0, 1]);
        assert_eq!(lc.c, Some(vec![0, 1]));
        let chk = coequalizer_preservation_check(&inst, &small_targets()).unwrap();
        assert!(chk.holds(), "{chk:?}");
    }

    #[test]
    fn collapsing_the_chain() {
        // 1 -> (2, id) picking both elements; a must sit above both b-values.
        let z = FinPreorder::chain(2);
        let inst = CoeqInstance::new(z.clone(), FinPreorder::point(), vec![1], z.clone(), vec![0, 1], vec![0], vec![1])
            .unwrap();
        let lc = lax_slice_coequalizer(&inst).unwrap();
        assert_eq!(lc.coeq.q.len(), 1);
        // the meet of b over the whole of x
        assert_eq!(lc.c, Some(vec![0]));
        let chk = coequalizer_preservation_check(&inst, &default_targets(&[])).unwrap();
        assert!(chk.holds(), "{chk:?}");
        assert_eq!(chk.lax_side, 1);
        assert_eq!(chk.kan_side, 1);
    }

    #[test]
    fn missing_meet_leaves_no_coequalizer() {
        // z = {l, r} discrete: collapsing x = {l, r} needs the meet of l and r.
        let z = FinPreorder::antichain(2);
        let w = FinPreorder::point();
        let x = FinPreorder::antichain(2);
        assert!(CoeqInstance::new(z.clone(), w.clone(), vec![0], x.clone(), vec![0, 1], vec![0], vec![1]).is_err());
        let z = FinPreorder::new(vec!["l".into(), "r".into(), "t".into()], &[(0, 2), (1, 2)]).unwrap();
        let inst = CoeqInstance::new(z, w, vec![2], x, vec![0, 1], vec![0], vec![1]).unwrap();
        let lc = lax_slice_coequalizer(&inst).unwrap();
        assert_eq!(lc.c, None);
        let chk = coequalizer_preservation_check(&inst, &small_targets()).unwrap();
        assert!(chk.holds(), "{chk:?}");
        assert_eq!(chk.lax_side, 0);
    }
}
