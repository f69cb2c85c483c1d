use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Report, Result, Violation};
use crate::fincat::enumerate::for_each_nat;
use crate::fincat::{FinFunctor, Mor, Obj};
use crate::search::Budget;

use super::adjunction::adjunction_check;
use super::pocat::{pofunctors, PoCategory, PoFunctor};

/// A 2-monad `(T, eta, mu)` on a po-category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monad2Data {
    pub t: PoFunctor,
    pub eta: Vec<Mor>,
    pub mu: Vec<Mor>,
}

pub fn validate_2monad(t: PoFunctor, eta: Vec<Mor>, mu: Vec<Mor>) -> Result<Monad2Data> {
    let k = t.dom.clone();
    if !Arc::ptr_eq(&t.dom, &t.cod) && *t.dom != *t.cod {
        return Err(Error::EndpointMismatch("monad functor must be an endofunctor".into()));
    }
    let c = k.cat();
    let n = c.num_objects();
    if eta.len() != n || mu.len() != n {
        return Err(Error::invalid("monad", Violation::Other("one unit and multiplication per object".into())));
    }
    let mut report = Report::default();
    for x in 0..n {
        let tx = t.obj(x);
        let ttx = t.obj(tx);
        let ok_eta = eta[x] < c.num_morphisms() && c.src(eta[x]) == x && c.tgt(eta[x]) == tx;
        let ok_mu = mu[x] < c.num_morphisms() && c.src(mu[x]) == ttx && c.tgt(mu[x]) == tx;
        if !ok_eta || !ok_mu {
            report.push(Violation::ComponentEndpoint(c.obj_name(x).into()));
        }
    }
    if !report.is_empty() {
        return Err(Error::Invalid { kind: "monad", report });
    }
    for f in 0..c.num_morphisms() {
        let (x, y) = (c.src(f), c.tgt(f));
        let nat_eta = c.compose(t.mor(f), eta[x]) == c.compose(eta[y], f);
        let nat_mu = c.compose(t.mor(f), mu[x]) == c.compose(mu[y], t.mor(t.mor(f)));
        if !nat_eta || !nat_mu {
            report.push(Violation::NaturalityViolation(c.mor_name(f).into()));
        }
    }
    for x in 0..n {
        let tx = t.obj(x);
        let id = c.identity(tx);
        if c.compose(mu[x], eta[tx]) != id || c.compose(mu[x], t.mor(eta[x])) != id {
            report.push(Violation::UnitLawViolation(c.obj_name(x).into()));
        }
        if c.compose(mu[x], mu[tx]) != c.compose(mu[x], t.mor(mu[x])) {
            report.push(Violation::AssocLawViolation(c.obj_name(x).into()));
        }
    }
    report.into_result("monad", Monad2Data { t, eta, mu })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonadClassification {
    pub idempotent: bool,
    pub lax_idempotent: bool,
    /// `T(eta_x) = eta_{Tx}` for all x; must agree with `idempotent`.
    pub t_eta_is_eta_t: bool,
}

impl Monad2Data {
    pub fn k(&self) -> &Arc<PoCategory> {
        &self.t.dom
    }

    pub fn identity(k: &Arc<PoCategory>) -> Monad2Data {
        let ids: Vec<Mor> = k.cat().identities().to_vec();
        Monad2Data { t: PoFunctor::identity(k), eta: ids.clone(), mu: ids }
    }

    fn tobj(&self, x: Obj) -> Obj {
        self.t.obj(x)
    }
}

/// `mu_x` invertible everywhere; lax idempotent when `id <= eta_{Tx} . mu_x`.
pub fn monad_classification(m: &Monad2Data) -> MonadClassification {
    let k = m.k();
    let c = k.cat();
    let n = c.num_objects();
    let idempotent = (0..n).all(|x| c.is_iso(m.mu[x]));
    let lax_idempotent = (0..n).all(|x| {
        let ttx = m.tobj(m.tobj(x));
        k.le(c.identity(ttx), c.compose(m.eta[m.tobj(x)], m.mu[x]))
    });
    let t_eta_is_eta_t = (0..n).all(|x| m.t.mor(m.eta[x]) == m.eta[m.tobj(x)]);
    MonadClassification { idempotent, lax_idempotent, t_eta_is_eta_t }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraStructures {
    /// All `a: Tx -> x` with `a . eta_x = id`.
    pub retractions: Vec<Mor>,
    /// Retractions that also satisfy `a . mu_x = a . T(a)`.
    pub strict: Vec<Mor>,
    /// Retractions with `id <= eta_x . a` (a rari adjunction `a -| eta_x`).
    pub rari_adjoint: Vec<Mor>,
    /// Any adjunction `a -| eta_x`: `id <= eta_x . a` and `a . eta_x <= id`.
    pub adjoint: Vec<Mor>,
    pub classified: bool,
    /// The set the classification predicts equals `strict`.
    pub consistent: bool,
}

pub fn algebra_structures(m: &Monad2Data, x: Obj) -> AlgebraStructures {
    let k = m.k();
    let c = k.cat();
    let tx = m.tobj(x);
    let cls = monad_classification(m);
    let idx = c.identity(x);
    let idtx = c.identity(tx);
    let cands = c.hom(tx, x);
    let retractions: Vec<Mor> = cands.iter().copied().filter(|&a| c.compose(a, m.eta[x]) == idx).collect();
    let strict: Vec<Mor> =
        retractions.iter().copied().filter(|&a| c.compose(a, m.mu[x]) == c.compose(a, m.t.mor(a))).collect();
    let rari_adjoint: Vec<Mor> = retractions.iter().copied().filter(|&a| k.le(idtx, c.compose(m.eta[x], a))).collect();
    let adjoint: Vec<Mor> = cands
        .iter()
        .copied()
        .filter(|&a| k.le(idtx, c.compose(m.eta[x], a)) && k.le(c.compose(a, m.eta[x]), idx))
        .collect();
    let (classified, consistent) = if cls.idempotent {
        let inverse_ok = retractions.iter().all(|&a| c.compose(m.eta[x], a) == idtx);
        (true, inverse_ok && retractions == strict)
    } else if cls.lax_idempotent {
        (true, rari_adjoint == strict)
    } else {
        (false, true)
    };
    AlgebraStructures { retractions, strict, rari_adjoint, adjoint, classified, consistent }
}

fn is_mono(k: &PoCategory, e: Mor) -> bool {
    let c = k.cat();
    let s = c.src(e);
    (0..c.num_objects()).all(|w| {
        let hom = c.hom(w, s);
        hom.iter().all(|&f| hom.iter().all(|&g| f == g || c.compose(e, f) != c.compose(e, g)))
    })
}

fn is_epi(k: &PoCategory, e: Mor) -> bool {
    let c = k.cat();
    let t = c.tgt(e);
    (0..c.num_objects()).all(|w| {
        let hom = c.hom(t, w);
        hom.iter().all(|&f| hom.iter().all(|&g| f == g || c.compose(f, e) != c.compose(g, e)))
    })
}

/// The seven conditions characterizing idempotent monads, evaluated
/// independently. They must all agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdempotentConditions {
    pub mu_invertible: bool,
    pub t_eta_epi: bool,
    pub mu_mono: bool,
    pub t_eta_is_eta_t: bool,
    pub algebras_are_retractions: bool,
    pub algebras_are_inverses: bool,
    pub forgetful_fully_faithful: bool,
}

impl IdempotentConditions {
    pub fn agree(&self) -> bool {
        let v = [
            self.mu_invertible,
            self.t_eta_epi,
            self.mu_mono,
            self.t_eta_is_eta_t,
            self.algebras_are_retractions,
            self.algebras_are_inverses,
            self.forgetful_fully_faithful,
        ];
        v.iter().all(|&b| b == v[0])
    }
}

pub fn idempotent_conditions(m: &Monad2Data) -> IdempotentConditions {
    let k = m.k();
    let c = k.cat();
    let n = c.num_objects();
    let algs: Vec<AlgebraStructures> = (0..n).map(|x| algebra_structures(m, x)).collect();
    let mu_invertible = (0..n).all(|x| c.is_iso(m.mu[x]));
    let t_eta_epi = (0..n).all(|x| is_epi(k, m.t.mor(m.eta[x])));
    let mu_mono = (0..n).all(|x| is_mono(k, m.mu[x]));
    let t_eta_is_eta_t = (0..n).all(|x| m.t.mor(m.eta[x]) == m.eta[m.tobj(x)]);
    let algebras_are_retractions = algs.iter().all(|a| a.strict == a.retractions);
    let algebras_are_inverses = (0..n).all(|x| {
        let inverses: Vec<Mor> = c.inverse_of(m.eta[x]).into_iter().collect();
        algs[x].strict == inverses
    });
    let mut forgetful_fully_faithful = true;
    for x in 0..n {
        for y in 0..n {
            for &a in &algs[x].strict {
                for &b in &algs[y].strict {
                    for &f in c.hom(x, y) {
                        if c.compose(b, m.t.mor(f)) != c.compose(f, a) {
                            forgetful_fully_faithful = false;
                        }
                    }
                }
            }
        }
    }
    IdempotentConditions {
        mu_invertible,
        t_eta_epi,
        mu_mono,
        t_eta_is_eta_t,
        algebras_are_retractions,
        algebras_are_inverses,
        forgetful_fully_faithful,
    }
}

/// Every 2-monad on `k`.
pub fn monads_on(k: &Arc<PoCategory>) -> Result<Vec<Monad2Data>> {
    let mut out = Vec::new();
    let c = k.cat();
    for t in pofunctors(k, k)? {
        let id = FinFunctor::identity(c);
        let tt = t.map.after(&t.map)?;
        let mut etas = Vec::new();
        let mut budget = Budget::from_env();
        for_each_nat(&id, &t.map, &|_, _| true, &mut budget, |e| {
            etas.push(e.to_vec());
            ControlFlow::Continue(())
        })?;
        if etas.is_empty() {
            continue;
        }
        let mut mus = Vec::new();
        for_each_nat(&tt, &t.map, &|_, _| true, &mut budget, |e| {
            mus.push(e.to_vec());
            ControlFlow::Continue(())
        })?;
        for eta in &etas {
            for mu in &mus {
                if let Ok(m) = validate_2monad(t.clone(), eta.clone(), mu.clone()) {
                    out.push(m);
                }
            }
        }
    }
    Ok(out)
}

/// A strict 2-adjunction `f -| g` with `f: b -> a`, `g: a -> b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjunction2 {
    pub f: PoFunctor,
    pub g: PoFunctor,
    /// `eta_x: x -> GF x` in `b`
    pub eta: Vec<Mor>,
    /// `eps_y: FG y -> y` in `a`
    pub eps: Vec<Mor>,
}

impl Adjunction2 {
    pub fn b(&self) -> &Arc<PoCategory> {
        &self.f.dom
    }

    pub fn a(&self) -> &Arc<PoCategory> {
        &self.g.dom
    }

    /// `(GF, eta, G eps F)`
    pub fn induced_monad(&self) -> Result<Monad2Data> {
        let t = self.g.after(&self.f)?;
        let n = self.b().cat().num_objects();
        let mu = (0..n).map(|x| self.g.mor(self.eps[self.f.obj(x)])).collect();
        validate_2monad(t, self.eta.clone(), mu)
    }

    /// `G eps -| eta G` is a lali adjunction at every object of `a`.
    pub fn g_eps_eta_g_lali(&self) -> bool {
        let b = self.b();
        (0..self.a().cat().num_objects()).all(|y| {
            let ge = self.g.mor(self.eps[y]);
            let eg = self.eta[self.g.obj(y)];
            adjunction_check(b, ge, eg).map(|a| a.lali).unwrap_or(false)
        })
    }

    /// `F eta -| eps F` is a rali adjunction at every object of `b`.
    pub fn f_eta_eps_f_rali(&self) -> bool {
        let a = self.a();
        (0..self.b().cat().num_objects()).all(|x| {
            let fe = self.f.mor(self.eta[x]);
            let ef = self.eps[self.f.obj(x)];
            adjunction_check(a, fe, ef).map(|r| r.rali).unwrap_or(false)
        })
    }

    /// The induced comonad `(FG, eps, F eta G)` is lax idempotent:
    /// `id_{FGFG y} >= ...` dualized, i.e. `eps_{FG y} . delta_y <= ... `
    /// reduces in thin homs to `F eta_{G y} . eps_{FG y} <= id`.
    pub fn comonad_lax_idempotent(&self) -> bool {
        let a = self.a();
        let c = a.cat();
        (0..c.num_objects()).all(|y| {
            let fg = self.f.obj(self.g.obj(y));
            let delta = self.f.mor(self.eta[self.g.obj(y)]);
            let e = self.eps[fg];
            a.le(c.compose(delta, e), c.identity(self.f.obj(self.g.obj(fg))))
        })
    }
}

/// Every strict 2-adjunction between `b` and `a` (left adjoint `b -> a`).
pub fn two_adjunctions(b: &Arc<PoCategory>, a: &Arc<PoCategory>) -> Result<Vec<Adjunction2>> {
    let mut out = Vec::new();
    let fs = pofunctors(b, a)?;
    let gs = pofunctors(a, b)?;
    let mut budget = Budget::from_env();
    let (cb, ca) = (b.cat(), a.cat());
    for f in &fs {
        for g in &gs {
            let gf = g.map.after(&f.map)?;
            let fg = f.map.after(&g.map)?;
            let mut etas = Vec::new();
            for_each_nat(&FinFunctor::identity(cb), &gf, &|_, _| true, &mut budget, |e| {
                etas.push(e.to_vec());
                ControlFlow::Continue(())
            })?;
            if etas.is_empty() {
                continue;
            }
            let mut epss = Vec::new();
            for_each_nat(&fg, &FinFunctor::identity(ca), &|_, _| true, &mut budget, |e| {
                epss.push(e.to_vec());
                ControlFlow::Continue(())
            })?;
            for eta in &etas {
                for eps in &epss {
                    let tri1 = (0..cb.num_objects())
                        .all(|x| ca.compose(eps[f.obj(x)], f.mor(eta[x])) == ca.identity(f.obj(x)));
                    let tri2 = (0..ca.num_objects())
                        .all(|y| cb.compose(g.mor(eps[y]), eta[g.obj(y)]) == cb.identity(g.obj(y)));
                    if tri1 && tri2 {
                        out.push(Adjunction2 { f: f.clone(), g: g.clone(), eta: eta.clone(), eps: eps.clone() });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinPreorder;
    use crate::thin2::pocat::ord_one_two;

    #[test]
    fn identity_monad_is_idempotent_and_lax() {
        let k = Arc::new(ord_one_two());
        let m = Monad2Data::identity(&k);
        assert!(validate_2monad(m.t.clone(), m.eta.clone(), m.mu.clone()).is_ok());
        let cls = monad_classification(&m);
        assert!(cls.idempotent && cls.lax_idempotent && cls.t_eta_is_eta_t);
        for x in 0..2 {
            assert_eq!(algebra_structures(&m, x).strict, vec![k.cat().identity(x)]);
        }
    }

    #[test]
    fn constant_at_top_monad_on_a_chain() {
        let p = FinPreorder::chain(3);
        let k = Arc::new(PoCategory::locally_discrete(p.to_category_arc()));
        let c = k.cat().clone();
        let t = PoFunctor::new(k.clone(), k.clone(), FinFunctor::constant(&c, &c, 2)).unwrap();
        let eta = (0..3).map(|x| c.hom(x, 2)[0]).collect();
        let mu = vec![c.identity(2); 3];
        let m = validate_2monad(t, eta, mu).unwrap();
        // Algebra structure T(x) = 2 -> x exists only at the top.
        for x in 0..3 {
            let algs = algebra_structures(&m, x);
            assert_eq!(algs.strict.is_empty(), x != 2);
        }
        assert!(monad_classification(&m).idempotent);
    }

    #[test]
    fn perturbed_multiplication_breaks_unit_law() {
        let p = FinPreorder::chain(2);
        let k = Arc::new(PoCategory::locally_discrete(p.to_category_arc()));
        let m = Monad2Data::identity(&k);
        let mut mu = m.mu.clone();
        mu[0] = k.cat().hom(0, 1)[0];
        let err = validate_2monad(m.t.clone(), m.eta.clone(), mu).unwrap_err();
        assert!(err.to_string().contains("component-endpoint-error"), "{err}");
    }

    #[test]
    fn monads_on_locally_discrete_agree() {
        let k = Arc::new(PoCategory::locally_discrete(FinPreorder::chain(2).to_category_arc()));
        for m in monads_on(&k).unwrap() {
            let cls = monad_classification(&m);
            assert_eq!(cls.idempotent, cls.lax_idempotent);
            assert!(idempotent_conditions(&m).agree());
        }
    }
}
