use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::Mor;

use super::pocat::PoCategory;

/// `f -| g` inside a po-category, with its flags.
///
/// In thin homs the triangle identities are automatic, so `holds` is just
/// `id <= g.f` and `f.g <= id`. The counit is an identity exactly when
/// `f.g = id` (f lali, g rari); the unit when `g.f = id` (f lari, g rali).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Adjunction1Cell {
    pub f: Mor,
    pub g: Mor,
    pub holds: bool,
    pub lali: bool,
    pub rali: bool,
    pub lari: bool,
    pub rari: bool,
}

pub fn adjunction_check(k: &PoCategory, f: Mor, g: Mor) -> Result<Adjunction1Cell> {
    let c = k.cat();
    let (x, y) = (c.src(f), c.tgt(f));
    if c.src(g) != y || c.tgt(g) != x {
        return Err(Error::EndpointMismatch(format!(
            "{}: {} -> {} and {} are not opposite",
            c.mor_name(f),
            c.obj_name(x),
            c.obj_name(y),
            c.mor_name(g)
        )));
    }
    let gf = c.compose(g, f);
    let fg = c.compose(f, g);
    let (idx, idy) = (c.identity(x), c.identity(y));
    let holds = k.le(idx, gf) && k.le(fg, idy);
    let counit_id = holds && fg == idy;
    let unit_id = holds && gf == idx;
    Ok(Adjunction1Cell { f, g, holds, lali: counit_id, rari: counit_id, lari: unit_id, rali: unit_id })
}

/// Right adjoints of `f`, in index order.
pub fn right_adjoints(k: &PoCategory, f: Mor) -> Vec<Adjunction1Cell> {
    let c = k.cat();
    c.hom(c.tgt(f), c.src(f))
        .iter()
        .map(|&g| adjunction_check(k, f, g).expect("endpoints fit"))
        .filter(|a| a.holds)
        .collect()
}

/// Left adjoints of `g`, in index order.
pub fn left_adjoints(k: &PoCategory, g: Mor) -> Vec<Adjunction1Cell> {
    let c = k.cat();
    c.hom(c.tgt(g), c.src(g))
        .iter()
        .map(|&f| adjunction_check(k, f, g).expect("endpoints fit"))
        .filter(|a| a.holds)
        .collect()
}

/// Some `f -| g` with `f.g = id`.
pub fn is_lali(k: &PoCategory, f: Mor) -> bool {
    right_adjoints(k, f).iter().any(|a| a.lali)
}

/// Some `f -| g` with `g.f = id`.
pub fn is_lari(k: &PoCategory, f: Mor) -> bool {
    right_adjoints(k, f).iter().any(|a| a.lari)
}

/// Some `l -| g` with `l.g = id`.
pub fn is_rari(k: &PoCategory, g: Mor) -> bool {
    left_adjoints(k, g).iter().any(|a| a.rari)
}

/// Some `l -| g` with `g.l = id`.
pub fn is_rali(k: &PoCategory, g: Mor) -> bool {
    left_adjoints(k, g).iter().any(|a| a.rali)
}

/// `(f2 . f1) -| (g1 . g2)` for `f1 -| g1: x -> y` and `f2 -| g2: y -> z`.
pub fn compose_adjunctions(k: &PoCategory, a1: &Adjunction1Cell, a2: &Adjunction1Cell) -> Result<Adjunction1Cell> {
    let c = k.cat();
    if c.tgt(a1.f) != c.src(a2.f) {
        return Err(Error::EndpointMismatch("adjunctions are not composable".into()));
    }
    adjunction_check(k, c.compose(a2.f, a1.f), c.compose(a1.g, a2.g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thin2::pocat::ord_one_two;

    #[test]
    fn identity_adjunction_has_every_flag() {
        let k = ord_one_two();
        let id = k.cat().identity(1);
        let a = adjunction_check(&k, id, id).unwrap();
        assert!(a.holds && a.lali && a.rali && a.lari && a.rari);
    }

    #[test]
    fn face_and_degeneracy_flags() {
        let k = ord_one_two();
        let m = |s| k.mor(s).unwrap();
        let d0s0 = adjunction_check(&k, m("d0"), m("s0")).unwrap();
        assert!(d0s0.holds && d0s0.lari && !d0s0.lali);
        let s0d1 = adjunction_check(&k, m("s0"), m("d1")).unwrap();
        assert!(s0d1.holds && s0d1.rari && !s0d1.lari);
        assert!(!adjunction_check(&k, m("d1"), m("s0")).unwrap().holds);
        assert!(is_lali(&k, m("s0")));
        assert!(!is_lali(&k, m("d0")));
        assert!(is_lari(&k, m("d0")));
        assert!(is_rari(&k, m("d1")));
    }

    #[test]
    fn strictly_below_is_not_an_adjunction() {
        // c0 <= id but c0 -| c0 fails: id <= c0.c0 = c0 is false.
        let k = ord_one_two();
        let c0 = k.mor("c0").unwrap();
        assert!(!adjunction_check(&k, c0, c0).unwrap().holds);
        assert!(adjunction_check(&k, c0, k.mor("d0").unwrap()).is_err());
    }

    #[test]
    fn composite_of_laris_is_a_lari() {
        let k = ord_one_two();
        let m = |s| k.mor(s).unwrap();
        let a = adjunction_check(&k, m("d0"), m("s0")).unwrap();
        let id = adjunction_check(&k, m("id_2"), m("id_2")).unwrap();
        let comp = compose_adjunctions(&k, &a, &id).unwrap();
        assert!(comp.lari);
    }
}
