//! Resolution of a parsed [`SpecFile`] into validated values.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{
    validate_category, validate_functor, validate_preorder, FinCategory, FinFunctor, FinPreorder, NatTrans,
    RawCategory, RawFunctor, RawPreorder,
};
use crate::thin2::{validate_2monad, validate_pocategory, Monad2Data, PoCategory, PoFunctor, RawPoCategory};

use super::format::{Block, CategoryBlock, CommandBlock, SpecFile};

/// Every validated block, by name. Blocks may refer to blocks defined
/// later in the file.
#[derive(Debug, Default)]
pub struct Env {
    pub categories: BTreeMap<String, Arc<FinCategory>>,
    pub preorders: BTreeMap<String, (FinPreorder, Arc<FinCategory>)>,
    pub pocategories: BTreeMap<String, Arc<PoCategory>>,
    pub functors: BTreeMap<String, FinFunctor>,
    pub nats: BTreeMap<String, NatTrans>,
    pub monads: BTreeMap<String, Monad2Data>,
    pub commands: Vec<CommandBlock>,
}

/// Operations a `command` block may name, with their argument counts.
pub const COMMAND_OPS: &[(&str, usize)] =
    &[("comma", 2), ("pullback", 2), ("ran", 2), ("lan", 2), ("coeq", 2), ("adjoint-check", 2), ("kz-witness", 1)];

fn at(line: usize, kind: &str, name: &str, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        e => Error::Parse { line, msg: format!("{kind} {name}: {e}") },
    }
}

fn raw_category(c: &CategoryBlock) -> Result<RawCategory> {
    let mut raw = RawCategory { objects: c.objects.clone(), ..Default::default() };
    raw.morphisms = c.morphisms.clone();
    for o in &c.objects {
        let id = c.identities.iter().find(|(x, _)| x == o).map_or_else(|| format!("id_{o}"), |(_, i)| i.clone());
        if !raw.morphisms.iter().any(|(n, _, _)| *n == id) {
            raw.morphisms.push((id.clone(), o.clone(), o.clone()));
        }
        raw.identities.push((o.clone(), id));
    }
    for (x, _) in &c.identities {
        if !c.objects.contains(x) {
            return Err(Error::UnknownObject(x.clone()));
        }
    }
    raw.compose = c.compose.clone();
    if c.thin {
        for (g, b, c2) in &raw.morphisms {
            for (f, a, b2) in &raw.morphisms {
                if b != b2 {
                    continue;
                }
                let hom: Vec<&String> =
                    raw.morphisms.iter().filter(|(_, s, t)| s == a && t == c2).map(|(n, _, _)| n).collect();
                match hom[..] {
                    [h] => raw.compose.push((g.clone(), f.clone(), h.clone())),
                    [] => {}
                    _ => {
                        return Err(Error::Construction(format!(
                            "`compose: thin` needs at most one morphism {a} -> {c2}"
                        )))
                    }
                }
            }
        }
    }
    Ok(raw)
}

impl Env {
    /// The category a name stands for: a category, a preorder, or the
    /// underlying category of a po-category.
    pub fn category(&self, name: &str) -> Result<Arc<FinCategory>> {
        if let Some(c) = self.categories.get(name) {
            return Ok(c.clone());
        }
        if let Some((_, c)) = self.preorders.get(name) {
            return Ok(c.clone());
        }
        if let Some(k) = self.pocategories.get(name) {
            return Ok(k.cat().clone());
        }
        Err(Error::Construction(format!("unresolved category `{name}`")))
    }

    pub fn functor(&self, name: &str) -> Result<&FinFunctor> {
        self.functors.get(name).ok_or_else(|| Error::Construction(format!("unresolved functor `{name}`")))
    }

    pub fn preorder(&self, name: &str) -> Result<&FinPreorder> {
        self.preorders
            .get(name)
            .map(|(p, _)| p)
            .ok_or_else(|| Error::Construction(format!("unresolved preorder `{name}`")))
    }

    /// Number of validated blocks.
    pub fn len(&self) -> usize {
        self.categories.len()
            + self.preorders.len()
            + self.pocategories.len()
            + self.functors.len()
            + self.nats.len()
            + self.monads.len()
            + self.commands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Validates every block through its module's validator. Errors name the
/// block and the line it starts on.
pub fn validate_spec(spec: &SpecFile) -> Result<Env> {
    let mut env = Env::default();
    let mut seen: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    for (b, &line) in spec.blocks.iter().zip(&spec.lines) {
        if let Some(prev) = seen.insert((b.kind(), b.name()), line) {
            return Err(Error::Parse {
                line,
                msg: format!("{} `{}` already defined on line {prev}", b.kind(), b.name()),
            });
        }
    }
    let blocks = || spec.blocks.iter().zip(spec.lines.iter().copied());
    // Categories and preorders first, then everything that refers to them.
    for (b, line) in blocks() {
        match b {
            Block::Category(c) => {
                let cat = raw_category(c)
                    .and_then(|raw| validate_category(&raw))
                    .map_err(|e| at(line, "category", &c.name, e))?;
                env.categories.insert(c.name.clone(), Arc::new(cat));
            }
            Block::Preorder(p) => {
                let raw = RawPreorder { elements: p.elements.clone(), le: p.le.clone() };
                let po = validate_preorder(&raw).map_err(|e| at(line, "preorder", &p.name, e))?;
                let cat = po.to_category_arc();
                env.preorders.insert(p.name.clone(), (po, cat));
            }
            _ => {}
        }
    }
    for (b, line) in blocks() {
        if let Block::PoCategory(k) = b {
            let err = |e| at(line, "pocategory", &k.name, e);
            let base = env.category(&k.base).map_err(err)?;
            let raw = RawPoCategory { category: base.raw(), order: k.le.clone() };
            let po = validate_pocategory(&raw).map_err(err)?;
            env.pocategories.insert(k.name.clone(), Arc::new(po));
        }
    }
    for (b, line) in blocks() {
        if let Block::Functor(f) = b {
            let err = |e| at(line, "functor", &f.name, e);
            let dom = env.category(&f.dom).map_err(err)?;
            let cod = env.category(&f.cod).map_err(err)?;
            let raw = RawFunctor { objects: f.objects.clone(), morphisms: f.morphisms.clone() };
            let fun = validate_functor(dom, cod, &raw).map_err(err)?;
            env.functors.insert(f.name.clone(), fun);
        }
    }
    for (b, line) in blocks() {
        match b {
            Block::Nat(n) => {
                let err = |e| at(line, "nat", &n.name, e);
                let src = env.functor(&n.src).map_err(err)?.clone();
                let tgt = env.functor(&n.tgt).map_err(err)?.clone();
                let (dom, cod) = (src.dom().clone(), src.cod().clone());
                let mut comps = vec![None; dom.num_objects()];
                for (o, m) in &n.components {
                    let x = dom.object_index(o).ok_or_else(|| err(Error::UnknownObject(o.clone())))?;
                    let f = cod.morphism_index(m).ok_or_else(|| err(Error::UnknownMorphism(m.clone())))?;
                    comps[x] = Some(f);
                }
                let comps = comps
                    .into_iter()
                    .enumerate()
                    .map(|(x, c)| {
                        c.ok_or_else(|| err(Error::UnknownObject(format!("no component at {}", dom.obj_name(x)))))
                    })
                    .collect::<Result<Vec<_>>>()?;
                env.nats.insert(n.name.clone(), NatTrans::new(src, tgt, comps).map_err(err)?);
            }
            Block::Monad(m) => {
                let err = |e| at(line, "monad", &m.name, e);
                let k = env
                    .pocategories
                    .get(&m.on)
                    .cloned()
                    .ok_or_else(|| err(Error::Construction(format!("unresolved po-category `{}`", m.on))))?;
                let t = env.functor(&m.functor).map_err(err)?.clone();
                let t = PoFunctor::new(k.clone(), k.clone(), t).map_err(err)?;
                let c = k.cat();
                let family = |entries: &[(String, String)], what: &str| -> Result<Vec<usize>> {
                    let mut out = vec![None; c.num_objects()];
                    for (o, f) in entries {
                        let x = c.object_index(o).ok_or_else(|| Error::UnknownObject(o.clone()))?;
                        out[x] = Some(c.morphism_index(f).ok_or_else(|| Error::UnknownMorphism(f.clone()))?);
                    }
                    out.into_iter()
                        .enumerate()
                        .map(|(x, f)| f.ok_or_else(|| Error::Construction(format!("no {what} at {}", c.obj_name(x)))))
                        .collect()
                };
                let eta = family(&m.eta, "eta").map_err(err)?;
                let mu = family(&m.mu, "mu").map_err(err)?;
                env.monads.insert(m.name.clone(), validate_2monad(t, eta, mu).map_err(err)?);
            }
            Block::Command(c) => {
                let err = |msg: String| Error::Parse { line, msg: format!("command {}: {msg}", c.name) };
                let Some(&(_, n)) = COMMAND_OPS.iter().find(|(op, _)| *op == c.op) else {
                    return Err(err(format!("unknown operation `{}`", c.op)));
                };
                if c.args.len() != n {
                    return Err(err(format!("`{}` takes {n} arguments, got {}", c.op, c.args.len())));
                }
                for a in &c.args {
                    let known = env.functors.contains_key(a)
                        || env.pocategories.values().any(|k| k.cat().morphism_index(a).is_some());
                    if !known {
                        return Err(err(format!("unresolved argument `{a}`")));
                    }
                }
                env.commands.push(c.clone());
            }
            _ => {}
        }
    }
    Ok(env)
}

/// Parses and validates in one step.
pub fn load_spec(text: &str) -> Result<Env> {
    validate_spec(&super::format::parse_spec_file(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO: &str = "category two {\n  objects: 0 1\n  morphisms: u: 0 -> 1\n  compose: thin\n}\n";

    #[test]
    fn two_validates() {
        let env = load_spec(TWO).unwrap();
        let c = &env.categories["two"];
        assert_eq!(c.num_objects(), 2);
        assert_eq!(c.num_morphisms(), 3);
        assert_eq!(c.mor_name(c.identity(0)), "id_0");
    }

    #[test]
    fn reflexivity_is_implicit_transitivity_is_not() {
        assert!(load_spec("preorder p { elements: 0 1 ; le: 0<=1 }").is_ok());
        let e = load_spec("preorder p {\n elements: 0 1 2\n le: 0<=1, 1<=2 }").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e}");
    }

    #[test]
    fn missing_composite_is_named() {
        let text = "\ncategory c {\n objects: a b c\n morphisms: f: a -> b, g: b -> c, h: a -> c\n}\n";
        let e = load_spec(text).unwrap_err();
        let msg = e.to_string();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{msg}");
        assert!(msg.contains('g') && msg.contains('f'), "{msg}");
    }

    #[test]
    fn references_resolve_in_any_order() {
        let text = format!("functor d0 : one -> two {{ objects: * -> 0 }}\n{TWO}category one {{ objects: * }}\n");
        let env = load_spec(&text).unwrap();
        assert_eq!(env.functors["d0"].obj(0), 0);
        let e = load_spec("functor f : nowhere -> nowhere { }").unwrap_err();
        assert!(e.to_string().contains("nowhere"));
    }

    #[test]
    fn duplicate_names_per_kind() {
        let text = format!("{TWO}{TWO}");
        let e = load_spec(&text).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 6, .. }), "{e}");
        // the same name under two kinds is fine
        assert!(load_spec(&format!("{TWO}preorder two {{ elements: a }}")).is_ok());
    }
}
