//! Property suites over the enumerated corpora.

use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use crate::base_change::{
    counit_natural, factorization_iso, factorization_natural, kz_witness, lifted_fully_faithful_check, unit_natural,
    verify_comma_adjunction, AmbientAdjunction, BaseChangeContext, CollapseToPoint, PreorderReflection,
};
use crate::constructions::{
    comma_category, comma_factor, comma_factor_2cell, extensivity_check, pasting_compatible, CoeqResult,
};
use crate::error::{Error, Result};
use crate::fincat::enumerate::{functors, nat_transformations};
use crate::fincat::{monotone_maps, whisker_left, whisker_right, FinCategory, FinFunctor, FinPreorder, Mor};
use crate::kan::{check_lax_coequalizer, conical_adjunction_check, lax_slice_coequalizer, shape_corpus, CoeqInstance};
use crate::lax_slice::{
    cell_from_coalgebra, cell_to_coalgebra, coalg_morphism_coassoc_failures, coalgebra_coassociative,
    morphism_from_coalgebra, morphism_to_coalgebra, object_from_coalgebra, object_to_coalgebra, slice_hom_category,
    slice_morphisms, validate_coalg_morphism, validate_coalgebra, validate_lax_2cell, Ambient, ProductCache,
    SliceObject,
};
use crate::thin2::{
    idempotent_conditions, is_lali, is_lari, is_rali, is_rari, monad_classification, ord_one_two, two_adjunctions,
    PoCategory,
};

use super::corpus::{category_corpus, curated_categories, pocategory_corpus, poset_corpus, preorder_corpus};
use super::fixtures::{kz_fixture, load_fixture_monads};
use super::report::{Record, SuiteReport, ENV_ZERO_TIMING};

pub const SUITES: &[&str] = &[
    "comma-universal",
    "comma-adjunction",
    "kz-coherence",
    "coalg-iso",
    "factorization",
    "coequalizer",
    "cancellation",
    "idempotent-equiv",
    "kz-equiv",
    "ct-final",
    "admissibility",
    "extensivity",
];

/// Deliberate faults for checking that the suites catch them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// KZ coherence with each Γ component taken in the opposite direction.
    FlipGamma,
    /// Coequalizer checks run on the identity instead of the quotient.
    SkipQuotient,
    /// Admissibility checked against the collapse-to-point ambient.
    CollapseAmbient,
}

impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mutation> {
        match s {
            "flip-gamma" => Ok(Mutation::FlipGamma),
            "skip-quotient" => Ok(Mutation::SkipQuotient),
            "collapse-ambient" => Ok(Mutation::CollapseAmbient),
            _ => Err(Error::Construction(format!(
                "unknown mutation `{s}` (flip-gamma, skip-quotient, collapse-ambient)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    /// Largest preorder size for the suites that enumerate preorders.
    pub max_elems: Option<usize>,
    pub mutation: Option<Mutation>,
    pub zero_timing: bool,
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let m = opts.mutation;
    let records = match name {
        "comma-universal" => comma_universal()?,
        "comma-adjunction" => comma_adjunction()?,
        "kz-coherence" => kz_coherence(opts.max_elems.unwrap_or(3), m)?,
        "coalg-iso" => coalg_iso()?,
        "factorization" => factorization()?,
        "coequalizer" => coequalizer(opts.max_elems.unwrap_or(4), m)?,
        "cancellation" => cancellation()?,
        "idempotent-equiv" => idempotent_equiv()?,
        "kz-equiv" => kz_equiv()?,
        "ct-final" => ct_final(opts.max_elems.unwrap_or(4))?,
        "admissibility" => admissibility(m)?,
        "extensivity" => extensivity(opts.max_elems.unwrap_or(2))?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    let zero = opts.zero_timing || std::env::var(ENV_ZERO_TIMING).is_ok_and(|v| v == "1");
    let ms = if zero { 0 } else { start.elapsed().as_millis() as u64 };
    Ok(SuiteReport::new(name, records, ms))
}

/// Runs `f`; `Some(w)` or an error fails the record with that witness.
fn guarded(property: &str, instance: String, f: impl FnOnce() -> Result<Option<String>>) -> Record {
    match f() {
        Ok(None) => Record::pass(property, instance),
        Ok(Some(w)) => Record::fail(property, instance, w),
        Err(e) => Record::fail(property, instance, format!("error: {e}")),
    }
}

fn point() -> Arc<FinCategory> {
    Arc::new(FinCategory::terminal())
}

fn two() -> Arc<FinCategory> {
    FinPreorder::chain(2).to_category_arc()
}

fn slice_objects(base: &Arc<FinCategory>, domains: &[Arc<FinCategory>]) -> Result<Vec<SliceObject>> {
    let mut out = Vec::new();
    for w in domains {
        out.extend(functors(w, base)?.into_iter().map(SliceObject::new));
    }
    Ok(out)
}

/// `Some(msg)` unless `ok`.
fn unless(ok: bool, msg: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(msg)
}

// ---------------------------------------------------------------- comma

fn comma_universal() -> Result<Vec<Record>> {
    let cats = curated_categories();
    let tests = [point(), two()];
    let mut out = Vec::new();
    for (ny, y) in &cats {
        for (nx, x) in &cats {
            let fx = functors(x, y)?;
            for (nw, w) in &cats {
                let fw = functors(w, y)?;
                for (i, a) in fx.iter().enumerate() {
                    for (j, b) in fw.iter().enumerate() {
                        let id = format!("{ny}:{nx}#{i}|{nw}#{j}");
                        out.push(guarded("comma-universal", id, || comma_instance(a, b, &tests)));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn comma_instance(a: &FinFunctor, b: &FinFunctor, tests: &[Arc<FinCategory>]) -> Result<Option<String>> {
    let c = comma_category(a, b)?;
    for t in tests {
        let mut cones = Vec::new();
        for h0 in functors(t, a.dom())? {
            for h1 in functors(t, b.dom())? {
                for phi in nat_transformations(&a.after(&h0)?, &b.after(&h1)?)? {
                    let h = match comma_factor(&c, &h0, &h1, &phi) {
                        Ok(h) => h,
                        Err(e) => return Ok(Some(format!("cone ({}, {}): {e}", h0.describe(), h1.describe()))),
                    };
                    let back = c.proj0.after(&h)? == h0
                        && c.proj1.after(&h)? == h1
                        && whisker_right(&c.lambda, &h)?.components() == phi.components();
                    if !back {
                        return Ok(Some(format!(
                            "factorization of ({}, {}) misses the cone",
                            h0.describe(),
                            h1.describe()
                        )));
                    }
                    if t.num_objects() == 1 {
                        cones.push((h0.clone(), h1.clone(), h));
                    }
                }
            }
        }
        // The 2-cell clause, over the point.
        for (h0, h1, h) in &cones {
            for (k0, k1, k) in &cones {
                for xi0 in nat_transformations(h0, k0)? {
                    for xi1 in nat_transformations(h1, k1)? {
                        let ok = pasting_compatible(&c, h, k, &xi0, &xi1);
                        match (ok, comma_factor_2cell(&c, h, k, &xi0, &xi1)) {
                            (true, Ok(xi)) => {
                                if whisker_left(&c.proj0, &xi)? != xi0 || whisker_left(&c.proj1, &xi)? != xi1 {
                                    return Ok(Some("2-cell factorization has the wrong projections".into()));
                                }
                            }
                            (false, Err(_)) => {}
                            (true, Err(e)) => return Ok(Some(format!("compatible 2-cell pair: {e}"))),
                            (false, Ok(_)) => return Ok(Some("incompatible 2-cell pair factored".into())),
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

// ------------------------------------------------------- change of base

fn base_pairs() -> Result<Vec<(String, FinFunctor)>> {
    let cats = curated_categories();
    let mut out = Vec::new();
    for (ny, y) in &cats {
        for (nz, z) in &cats {
            for (k, c) in functors(y, z)?.into_iter().enumerate() {
                out.push((format!("{ny}->{nz}#{k}"), c));
            }
        }
    }
    Ok(out)
}

fn comma_adjunction() -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let domains = [point(), two()];
    for (cid, c) in base_pairs()? {
        let mut ctx = BaseChangeContext::new(c.clone());
        let ws = slice_objects(ctx.y(), &domains)?;
        let zs = slice_objects(ctx.z(), &domains)?;
        for (i, wo) in ws.iter().enumerate() {
            for (j, zo) in zs.iter().enumerate() {
                let id = format!("{cid}/a#{i}/b#{j}");
                out.push(guarded("triangles", id, || {
                    let w = verify_comma_adjunction(&mut ctx, wo, zo)?;
                    Ok(unless(w.holds(), || {
                        format!(
                            "rho equations {:?}, left triangle {}, right triangle {}",
                            w.rho_equations, w.triangle_left, w.triangle_right
                        )
                    }))
                }));
            }
        }
        // Naturality on the objects over the point.
        let n_pt = |objs: &[SliceObject]| objs.iter().filter(|o| o.w().num_objects() == 1).count();
        let (wp, zp) = (n_pt(&ws), n_pt(&zs));
        out.push(guarded("unit-natural", cid.clone(), || {
            for s in &ws[..wp] {
                for t in &ws[..wp] {
                    for m in slice_morphisms(s, t, Ambient::Strict)? {
                        if !unit_natural(&mut ctx, &m)? {
                            return Ok(Some(format!("at {} -> {}", s.a.describe(), t.a.describe())));
                        }
                    }
                }
            }
            Ok(None)
        }));
        out.push(guarded("counit-natural", cid.clone(), || {
            for s in &zs[..zp] {
                for t in &zs[..zp] {
                    for m in slice_morphisms(s, t, Ambient::Lax)? {
                        if !counit_natural(&mut ctx, &m)? {
                            return Ok(Some(format!("at {} -> {}", s.a.describe(), t.a.describe())));
                        }
                    }
                }
            }
            Ok(None)
        }));
    }
    Ok(out)
}

fn kz_coherence(max_elems: usize, m: Option<Mutation>) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let domains = [point(), two(), Arc::new(FinCategory::parallel_pair())];
    for (ny, y) in category_corpus(max_elems)? {
        for (i, o) in slice_objects(&y, &domains)?.iter().enumerate() {
            out.push(guarded("kz-coherence", format!("{ny}/b#{i}"), || {
                let w = kz_witness(o)?;
                if m == Some(Mutation::FlipGamma) {
                    return Ok(flipped_gamma(&w));
                }
                Ok(unless(w.holds(), || {
                    format!(
                        "unit identity {}, projects to lambda {}, delta {}, rho {}",
                        w.unit_identity, w.gamma_projects_to_lambda, w.gamma_delta, w.gamma_rho
                    )
                }))
            }));
        }
    }
    Ok(out)
}

/// Re-runs the Γ checks componentwise with every component chosen from
/// `q -> rho_bar delta_bar q` instead.
fn flipped_gamma(w: &crate::base_change::KzWitness) -> Option<String> {
    let c = &w.comma;
    let rd = w.rho_bar.after(&w.delta_bar).ok()?;
    let mut comps: Vec<Mor> = Vec::new();
    for q in 0..c.cat.num_objects() {
        match c.cat.hom(q, rd.obj(q)).first() {
            Some(&k) => comps.push(k),
            None => return Some(format!("no flipped Γ component at {}", c.cat.obj_name(q))),
        }
    }
    for (q, &k) in comps.iter().enumerate() {
        let ok = c.proj1.mor(k) == c.lambda.at(q)
            && w.delta_bar.cod().is_identity(w.delta_bar.mor(k))
            && (0..w.rho_bar.dom().num_objects()).all(|o| c.cat.is_identity(comps[w.rho_bar.obj(o)]));
        if !ok {
            return Some(format!("flipped Γ fails at {}", c.cat.obj_name(q)));
        }
    }
    None
}

fn coalg_iso() -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let domains = [point(), two()];
    for (ny, y) in curated_categories() {
        let mut cache = ProductCache::new();
        let objs = slice_objects(&y, &domains)?;
        for (i, o) in objs.iter().enumerate() {
            out.push(guarded("object-round-trip", format!("{ny}/o#{i}"), || {
                let c = object_to_coalgebra(&mut cache, o)?;
                let back = object_from_coalgebra(&mut cache, &y, &c)?;
                let again = object_to_coalgebra(&mut cache, &back)?;
                Ok(unless(back == *o && again == c, || "object does not round-trip".into()))
            }));
            out.push(guarded("object-coassociative", format!("{ny}/o#{i}"), || {
                // every coaction with the counit law, not only the images
                let prod = cache.get(&y, o.w());
                let mut n = 0;
                for a in functors(o.w(), &prod.cat)? {
                    let Ok(c) = validate_coalgebra(&mut cache, &y, a) else { continue };
                    n += 1;
                    if !coalgebra_coassociative(&mut cache, &y, &c)? {
                        return Ok(Some(format!("counital coaction {} is not coassociative", c.a.describe())));
                    }
                }
                Ok(unless(n > 0, || "no counital coaction".into()))
            }));
        }
        for (i, s) in objs.iter().enumerate() {
            for (j, t) in objs.iter().enumerate() {
                let id = format!("{ny}/o#{i}->o#{j}");
                out.push(guarded("morphism-round-trip", id.clone(), || {
                    for m in slice_morphisms(s, t, Ambient::Lax)? {
                        let cm = morphism_to_coalgebra(&mut cache, &m)?;
                        let back = morphism_from_coalgebra(&mut cache, &y, &cm)?;
                        if back != m || cm.is_strict() != m.is_strict() {
                            return Ok(Some(format!("morphism over {} does not round-trip", m.f.describe())));
                        }
                        let again = morphism_to_coalgebra(&mut cache, &back)?;
                        if again != cm {
                            return Ok(Some("coalgebra morphism does not round-trip".into()));
                        }
                    }
                    Ok(None)
                }));
                out.push(guarded("morphism-coassociative", id.clone(), || {
                    let (cs, ct) = (object_to_coalgebra(&mut cache, s)?, object_to_coalgebra(&mut cache, t)?);
                    let pw = cache.get(&y, s.w());
                    for f in functors(s.w(), t.w())? {
                        let px = cache.get(&y, t.w());
                        let lifted = pw.map_into(&px, &FinFunctor::identity(&y), &f)?.after(&cs.a)?;
                        for phi in nat_transformations(&ct.a.after(&f)?, &lifted)? {
                            let Ok(m) = validate_coalg_morphism(&mut cache, &y, &cs, &ct, f.clone(), phi) else {
                                continue;
                            };
                            let bad = coalg_morphism_coassoc_failures(&mut cache, &y, &m)?;
                            if !bad.is_empty() {
                                return Ok(Some(format!(
                                    "counital morphism over {} fails coassociativity",
                                    f.describe()
                                )));
                            }
                        }
                    }
                    Ok(None)
                }));
                out.push(guarded("cell-round-trip", id, || {
                    let hom = slice_hom_category(s, t, Ambient::Lax)?;
                    for (k, gamma) in hom.cells.iter().enumerate() {
                        let (a, b) = (hom.cat.src(k), hom.cat.tgt(k));
                        let cell = validate_lax_2cell(gamma.clone(), &hom.morphisms[a], &hom.morphisms[b])?;
                        let cc = cell_to_coalgebra(&mut cache, &cell)?;
                        let back = cell_from_coalgebra(&mut cache, &y, &cc)?;
                        if back != cell {
                            return Ok(Some(format!("2-cell {} does not round-trip", hom.cat.mor_name(k))));
                        }
                    }
                    Ok(None)
                }));
            }
        }
    }
    Ok(out)
}

fn factorization() -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let domains = [point(), two()];
    for (cid, c) in base_pairs()? {
        let mut ctx = BaseChangeContext::new(c);
        let zs = slice_objects(ctx.z(), &domains)?;
        for (i, o) in zs.iter().enumerate() {
            out.push(guarded("comparison-iso", format!("{cid}/b#{i}"), || {
                let f = factorization_iso(&mut ctx, o)?;
                Ok(unless(f.iso, || format!("comparison {} is not invertible", f.comparison.describe())))
            }));
        }
        out.push(guarded("comparison-natural", cid.clone(), || {
            for s in &zs {
                for t in &zs {
                    for m in slice_morphisms(s, t, Ambient::Lax)? {
                        if !factorization_natural(&mut ctx, &m)? {
                            return Ok(Some(format!("at {} -> {}", s.a.describe(), t.a.describe())));
                        }
                    }
                }
            }
            Ok(None)
        }));
    }
    Ok(out)
}

// --------------------------------------------------------- coequalizers

/// Instances drawn from the sampled part of the coequalizer corpus.
pub const COEQ_SAMPLE_CAP: usize = 150;

/// Pairs of parallel maps `w -> x` as lists of identified pairs. `w` is
/// the point or the two-element antichain; pairs are unordered.
fn parallel_pairs(x: &FinPreorder, width: usize) -> Vec<Vec<(usize, usize)>> {
    let singles: Vec<(usize, usize)> = (0..x.len()).flat_map(|g| (g..x.len()).map(move |h| (g, h))).collect();
    match width {
        1 => singles.iter().map(|&p| vec![p]).collect(),
        _ => (0..singles.len())
            .flat_map(|i| (i + 1..singles.len()).map(move |j| (i, j)))
            .map(|(i, j)| vec![singles[i], singles[j]])
            .collect(),
    }
}

/// `(z, x, b, g, h)` with `a` the first admissible map, calling `f` on
/// each; `x` has between `xmin` and `xmax` elements.
fn for_each_coeq_instance(
    max: usize,
    xmin: usize,
    xmax: usize,
    width: usize,
    f: &mut dyn FnMut(String, &dyn Fn() -> Result<CoeqInstance>),
) -> Result<()> {
    let zs = preorder_corpus(max)?;
    let xs: Vec<_> = preorder_corpus(xmax.min(max))?.into_iter().filter(|(_, x)| x.len() >= xmin).collect();
    let w = FinPreorder::antichain(width);
    for (nz, z) in &zs {
        for (nx, x) in &xs {
            let pairs = parallel_pairs(x, width);
            for (ib, b) in monotone_maps(x, z).into_iter().enumerate() {
                for ps in &pairs {
                    let a: Option<Vec<usize>> =
                        ps.iter().map(|&(g, h)| (0..z.len()).find(|&t| z.le(b[g], t) && z.le(b[h], t))).collect();
                    let Some(a) = a else { continue };
                    let tag: Vec<String> = ps.iter().map(|(g, h)| format!("{g},{h}")).collect();
                    let id = format!("{nz}/{nx}/b#{ib}/{}", tag.join(";"));
                    let (g, h): (Vec<usize>, Vec<usize>) = ps.iter().copied().unzip();
                    f(id, &|| {
                        CoeqInstance::new(z.clone(), w.clone(), a.clone(), x.clone(), b.clone(), g.clone(), h.clone())
                    });
                }
            }
        }
    }
    Ok(())
}

/// Every instance with `z` of at most `max` elements, `x` of at most 3
/// and `w` the point, followed by an evenly strided sample of at most
/// [`COEQ_SAMPLE_CAP`] instances with `x` of 4 elements or `w` the
/// two-element antichain.
pub fn coequalizer_instances(max: usize) -> Result<Vec<(String, CoeqInstance)>> {
    let mut out = Vec::new();
    for_each_coeq_instance(max, 1, 3, 1, &mut |id, mk| out.push((id, mk())))?;
    let rest = [(4, 4, 1), (1, 4, 2)];
    let mut n: usize = 0;
    for &(lo, hi, width) in &rest {
        for_each_coeq_instance(max, lo, hi, width, &mut |_, _| n += 1)?;
    }
    let stride = n.div_ceil(COEQ_SAMPLE_CAP).max(1);
    let mut i: usize = 0;
    for &(lo, hi, width) in &rest {
        for_each_coeq_instance(max, lo, hi, width, &mut |id, mk| {
            if i % stride == 0 {
                out.push((format!("{id}/w{width}"), mk()));
            }
            i += 1;
        })?;
    }
    out.into_iter().map(|(id, r)| Ok((id, r?))).collect()
}

fn coequalizer(max: usize, m: Option<Mutation>) -> Result<Vec<Record>> {
    let targets: Vec<FinPreorder> = preorder_corpus(2)?.into_iter().map(|(_, p)| p).collect();
    let mut out = Vec::new();
    for (id, inst) in coequalizer_instances(max)? {
        let chk = (|| {
            let mut lc = lax_slice_coequalizer(&inst)?;
            if m == Some(Mutation::SkipQuotient) {
                lc.coeq = CoeqResult { q: inst.x.clone(), e: (0..inst.x.len()).collect() };
                lc.c = Some(inst.b.clone());
            }
            check_lax_coequalizer(&inst, &lc, &targets)
        })();
        match chk {
            Ok(c) => {
                out.push(Record::check("preserved", id.clone(), !c.found || c.preserved, || {
                    "underlying map is not a preorder coequalizer".into()
                }));
                out.push(Record::check("certified", id.clone(), !c.found || c.certified, || {
                    "a coequalizing cocone does not factor uniquely".into()
                }));
                out.push(Record::check("iff", id, c.iff_agree, || {
                    format!(
                        "{} candidates: lax-slice side accepts {}, Kan side accepts {}",
                        c.iff_candidates, c.lax_side, c.kan_side
                    )
                }));
            }
            Err(e) => out.push(Record::fail("coequalizer", id, format!("error: {e}"))),
        }
    }
    Ok(out)
}

// ------------------------------------------------------ 2-categorical

fn cancellation() -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for (nk, k) in pocategory_corpus() {
        let c = k.cat();
        for f2 in 0..c.num_morphisms() {
            for f in 0..c.num_morphisms() {
                if c.tgt(f2) != c.src(f) {
                    continue;
                }
                let ff = c.compose(f, f2);
                let id = format!("{nk}/{}.{}", c.mor_name(f), c.mor_name(f2));
                let k = &*k;
                let left = |p: &dyn Fn(&PoCategory, Mor) -> bool| !p(k, f) || (p(k, ff) == p(k, f2));
                let right = |p: &dyn Fn(&PoCategory, Mor) -> bool| !p(k, f2) || (p(k, f) == p(k, ff));
                let w = || "cancellation fails".to_string();
                out.push(Record::check("lari-left-cancel", id.clone(), left(&is_lari), w));
                out.push(Record::check("rari-left-cancel", id.clone(), left(&is_rari), w));
                out.push(Record::check("lali-right-cancel", id.clone(), right(&is_lali), w));
                out.push(Record::check("rali-right-cancel", id, right(&is_rali), w));
            }
        }
    }
    out.push(lali_counterexample());
    Ok(out)
}

/// `s0` and `s0.d0` are lalis while `d0` is not.
pub fn lali_counterexample() -> Record {
    let k = ord_one_two();
    let c = k.cat();
    let (Ok(s0), Ok(d0)) = (k.mor("s0"), k.mor("d0")) else {
        return Record::fail("lali-counterexample", "ord{1,2}", "face maps missing");
    };
    let got = (is_lali(&k, s0), is_lali(&k, c.compose(s0, d0)), is_lali(&k, d0));
    Record::check("lali-counterexample", "ord{1,2}", got == (true, true, false), || {
        format!("is_lali(s0, s0.d0, d0) = {got:?}")
    })
}

fn adjunction_corpus() -> Result<Vec<(String, crate::thin2::Adjunction2)>> {
    let ks = pocategory_corpus();
    let mut out = Vec::new();
    for (nb, b) in &ks {
        for (na, a) in &ks {
            for (i, adj) in two_adjunctions(b, a)?.into_iter().enumerate() {
                out.push((format!("{nb}|{na}#{i}"), adj));
            }
        }
    }
    Ok(out)
}

fn idempotent_equiv() -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for (id, adj) in adjunction_corpus()? {
        out.push(guarded("conditions-agree", id, || {
            let m = adj.induced_monad()?;
            let c = idempotent_conditions(&m);
            Ok(unless(c.agree(), || format!("{c:?}")))
        }));
    }
    Ok(out)
}

fn kz_equiv() -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for (id, adj) in adjunction_corpus()? {
        let m = match adj.induced_monad() {
            Ok(m) => m,
            Err(e) => {
                out.push(Record::fail("lax-idempotent-iff-lali", id, format!("error: {e}")));
                continue;
            }
        };
        let cls = monad_classification(&m);
        let lali = adj.g_eps_eta_g_lali();
        out.push(Record::check("lax-idempotent-iff-lali", id.clone(), cls.lax_idempotent == lali, || {
            format!("lax_idempotent {}, G eps -| eta G lali {lali}", cls.lax_idempotent)
        }));
        if adj.b().is_locally_discrete() {
            out.push(Record::check("discrete-collapse", id, cls.lax_idempotent == cls.idempotent, || {
                format!("lax_idempotent {}, idempotent {}", cls.lax_idempotent, cls.idempotent)
            }));
        }
    }
    out.push(fixture_record());
    Ok(out)
}

/// The frozen result of the exhaustive search must contain a lax
/// idempotent monad that is not idempotent.
pub fn fixture_record() -> Record {
    let fx = kz_fixture();
    let monads = match load_fixture_monads(&fx) {
        Ok(ms) => ms,
        Err(e) => return Record::fail("kz-fixture", "frozen", format!("fixture does not load: {e}")),
    };
    let good = monads.iter().filter(|m| {
        let c = monad_classification(m);
        c.lax_idempotent && !c.idempotent
    });
    Record::check("kz-fixture", "frozen", good.count() > 0, || {
        format!(
            "exhaustive search over {} categories and {} monads (<= {} objects, homs <= {}) found {} candidates",
            fx.categories,
            fx.monads,
            fx.max_objects,
            fx.max_hom,
            fx.fixtures.len()
        )
    })
}

fn ct_final(max: usize) -> Result<Vec<Record>> {
    let shapes = shape_corpus(3, true);
    let mut out = Vec::new();
    for (nz, z) in poset_corpus(max)? {
        let zc = z.to_category_arc();
        match conical_adjunction_check(&zc, &shapes) {
            Ok(r) => {
                out.push(Record::check("left-adjoint-iff-cocomplete", nz.clone(), r.holds(), || {
                    format!(
                        "left adjoint {}, cocomplete {}, hom counts match {}, missing colimit {:?}, missing arrow {:?}",
                        r.left_adjoint, r.cocomplete, r.hom_counts_match, r.missing_colimit, r.missing_arrow
                    )
                }));
                out.push(Record::check("left-adjoint-iff-complete", nz, r.matches_complete(), || {
                    format!(
                        "left adjoint {}, complete {}, missing limit {:?}",
                        r.left_adjoint, r.complete, r.missing_limit
                    )
                }));
            }
            Err(e) => out.push(Record::fail("left-adjoint-iff-cocomplete", nz, format!("error: {e}"))),
        }
    }
    Ok(out)
}

fn admissibility(m: Option<Mutation>) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let ambient: &dyn AmbientAdjunction =
        if m == Some(Mutation::CollapseAmbient) { &CollapseToPoint } else { &PreorderReflection };
    let mut control = Vec::new();
    for (ny, y) in curated_categories() {
        out.push(guarded("hom-bijection", ny.clone(), || {
            let fy = ambient.unit(&y).cod().clone();
            let samples = crate::base_change::default_samples(&fy, 2, 16)?;
            let r = lifted_fully_faithful_check(ambient, &y, &samples)?;
            Ok(r.records
                .iter()
                .find(|r| !r.bijective)
                .map(|r| format!("{} -> {}: {} homs before, {} after", r.source, r.target, r.before, r.after)))
        }));
        let fy = CollapseToPoint.unit(&y).cod().clone();
        let samples = crate::base_change::default_samples(&fy, 2, 16)?;
        if !lifted_fully_faithful_check(&CollapseToPoint, &y, &samples)?.holds() {
            control.push(ny);
        }
    }
    out.push(Record::check("negative-control", "collapse-to-point", !control.is_empty(), || {
        "collapse-to-point passed on every base".into()
    }));
    Ok(out)
}

fn extensivity(max: usize) -> Result<Vec<Record>> {
    let ps: Vec<(String, FinPreorder)> = preorder_corpus(max.min(2))?;
    let ws: Vec<(String, FinPreorder)> = preorder_corpus(max.min(3))?;
    let mut out = Vec::new();
    for (n1, p1) in &ps {
        for (n2, p2) in &ps {
            let parts = [p1.clone(), p2.clone()];
            let sum = crate::constructions::coproduct_preorder(&parts).sum;
            let objs: Vec<(String, &FinPreorder, Vec<usize>)> = ws
                .iter()
                .filter(|(_, w)| w.len() <= 2)
                .flat_map(|(nw, w)| {
                    monotone_maps(w, &sum).into_iter().enumerate().map(move |(i, a)| (format!("{nw}#{i}"), w, a))
                })
                .collect();
            for (ow, w, a) in &objs {
                let id = format!("{n1}+{n2}/{ow}");
                out.push(guarded("extensive", id, || {
                    for (ow2, w2, a2) in &objs {
                        let r = extensivity_check(&parts, w, a, Some((w2, a2)))?;
                        if !r.holds() {
                            return Ok(Some(format!("against {ow2}: {r:?}")));
                        }
                    }
                    Ok(None)
                }));
            }
        }
    }
    Ok(out)
}
