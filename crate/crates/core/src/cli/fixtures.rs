//! The frozen output of the exhaustive KZ search.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::thin2::{KzSearchReport, Monad2Data};

use super::env::load_spec;
use super::format::{serialize_spec_file, Block, CategoryBlock, FunctorBlock, MonadBlock, PoCategoryBlock, SpecFile};

pub const KZ_FIXTURE_JSON: &str = include_str!("../../fixtures/kz_search.json");

/// Search totals plus one spec text per lax idempotent, non-idempotent
/// monad found. Each text defines its monads in `monad` blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KzFixture {
    pub max_objects: usize,
    pub max_hom: usize,
    pub categories: u64,
    pub monads: u64,
    pub stage1_candidates: u64,
    pub fixtures: Vec<String>,
}

impl KzFixture {
    pub fn from_report(rep: &KzSearchReport, fixtures: Vec<String>) -> KzFixture {
        let b = rep.bounds.unwrap_or_default();
        KzFixture {
            max_objects: b.max_objects,
            max_hom: b.max_hom,
            categories: rep.categories,
            monads: rep.monads,
            stage1_candidates: rep.stage1_candidates,
            fixtures,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixture serializes") + "\n"
    }
}

pub fn parse_kz_fixture(text: &str) -> Result<KzFixture> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
}

/// The fixture compiled into the binary.
pub fn kz_fixture() -> KzFixture {
    parse_kz_fixture(KZ_FIXTURE_JSON).expect("bundled fixture parses")
}

pub fn load_fixture_monads(fx: &KzFixture) -> Result<Vec<Monad2Data>> {
    let mut out = Vec::new();
    for text in &fx.fixtures {
        out.extend(load_spec(text)?.monads.into_values());
    }
    Ok(out)
}

/// A spec text defining `m` as monad `m` on po-category `k` over
/// category `c`, with its functor named `t`.
pub fn monad_spec(m: &Monad2Data) -> String {
    let k = &m.t.dom;
    let c = k.cat();
    let raw = c.raw();
    let name = |f: usize| c.mor_name(f).to_string();
    let cat = CategoryBlock {
        name: "c".into(),
        objects: raw.objects,
        morphisms: raw.morphisms,
        identities: raw.identities,
        compose: raw.compose,
        thin: false,
    };
    let po = PoCategoryBlock {
        name: "k".into(),
        base: "c".into(),
        le: k.order_pairs().into_iter().filter(|(f, g)| f != g).map(|(f, g)| (name(f), name(g))).collect(),
    };
    let t = &m.t.map;
    let fun = FunctorBlock {
        name: "t".into(),
        dom: "k".into(),
        cod: "k".into(),
        objects: (0..c.num_objects()).map(|x| (c.obj_name(x).into(), c.obj_name(t.obj(x)).into())).collect(),
        morphisms: (0..c.num_morphisms()).map(|f| (name(f), name(t.mor(f)))).collect(),
    };
    let fam = |v: &[usize]| v.iter().enumerate().map(|(x, &f)| (c.obj_name(x).to_string(), name(f))).collect();
    let monad = MonadBlock { name: "m".into(), on: "k".into(), functor: "t".into(), eta: fam(&m.eta), mu: fam(&m.mu) };
    let blocks = vec![Block::Category(cat), Block::PoCategory(po), Block::Functor(fun), Block::Monad(monad)];
    let lines = vec![0; blocks.len()];
    serialize_spec_file(&SpecFile { blocks, lines })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::thin2::{monad_classification, monads_on, ord_one_two};

    #[test]
    fn bundled_fixture_loads() {
        let fx = kz_fixture();
        assert_eq!((fx.max_objects, fx.max_hom), (2, 3));
        assert!(load_fixture_monads(&fx).is_ok());
    }

    #[test]
    fn monads_survive_the_text_form() {
        let k = Arc::new(ord_one_two());
        let ms = monads_on(&k).unwrap();
        assert!(!ms.is_empty());
        for m in ms.iter().take(8) {
            let text = monad_spec(m);
            let env = load_spec(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
            let back = &env.monads["m"];
            assert_eq!((&back.eta, &back.mu), (&m.eta, &m.mu));
            assert_eq!(monad_classification(back), monad_classification(m));
        }
    }
}
