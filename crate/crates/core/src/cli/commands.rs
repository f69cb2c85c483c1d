//! The operations behind the binary's subcommands and `command` blocks.
//! Each returns a JSON value.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::base_change::kz_witness;
use crate::constructions::{comma_category, default_targets, preorder_coequalizer, pullback_category};
use crate::error::{Error, Result};
use crate::fincat::{same, FinCategory, FinFunctor, FinPreorder, NatTrans};
use crate::kan::{check_lax_coequalizer, lax_slice_coequalizer, left_kan, right_kan, CoeqInstance};
use crate::lax_slice::SliceObject;
use crate::thin2::{adjunction_check, comma_search, pullback_search, PoCategory};

use super::env::Env;
use super::format::CommandBlock;

pub fn category_json(c: &FinCategory) -> Value {
    let mors: Vec<Value> = c
        .morphisms()
        .iter()
        .map(|m| json!({ "name": m.name, "src": c.obj_name(m.src), "tgt": c.obj_name(m.tgt) }))
        .collect();
    json!({ "objects": c.objects(), "morphisms": mors })
}

/// Object and morphism assignments by name.
pub fn functor_json(f: &FinFunctor) -> Value {
    let (d, c) = (f.dom(), f.cod());
    let objects: serde_json::Map<String, Value> =
        (0..d.num_objects()).map(|x| (d.obj_name(x).to_string(), json!(c.obj_name(f.obj(x))))).collect();
    let morphisms: serde_json::Map<String, Value> =
        (0..d.num_morphisms()).map(|m| (d.mor_name(m).to_string(), json!(c.mor_name(f.mor(m))))).collect();
    json!({ "objects": objects, "morphisms": morphisms })
}

pub fn nat_json(t: &NatTrans) -> Value {
    let (d, c) = (t.src().dom(), t.src().cod());
    let comps: serde_json::Map<String, Value> =
        (0..d.num_objects()).map(|x| (d.obj_name(x).to_string(), json!(c.mor_name(t.at(x))))).collect();
    Value::Object(comps)
}

/// The po-category whose underlying category has every named morphism.
fn pocategory_for<'a>(env: &'a Env, names: &[&str], within: Option<&str>) -> Result<Option<&'a Arc<PoCategory>>> {
    if let Some(k) = within {
        let k = env.pocategories.get(k).ok_or_else(|| Error::Construction(format!("unresolved po-category `{k}`")))?;
        return Ok(Some(k));
    }
    if names.iter().all(|n| env.functors.contains_key(*n)) {
        return Ok(None);
    }
    Ok(env.pocategories.values().find(|k| names.iter().all(|n| k.cat().morphism_index(n).is_some())))
}

fn mor(k: &PoCategory, name: &str) -> Result<usize> {
    k.cat().morphism_index(name).ok_or_else(|| Error::UnknownMorphism(name.to_string()))
}

fn comma_in(k: &PoCategory, a: &str, b: &str, strict: bool) -> Result<Value> {
    let (ma, mb) = (mor(k, a)?, mor(k, b)?);
    let found = if strict { pullback_search(k, ma, mb)? } else { comma_search(k, ma, mb)? };
    let c = k.cat();
    Ok(match found {
        Some(q) => json!({
            "found": true,
            "object": c.obj_name(q.q),
            "p0": c.mor_name(q.p0),
            "p1": c.mor_name(q.p1),
        }),
        None => json!({ "found": false }),
    })
}

/// `a | b` of two functors, or a certified comma object of two
/// morphisms of a po-category.
pub fn comma(env: &Env, a: &str, b: &str, within: Option<&str>) -> Result<Value> {
    if let Some(k) = pocategory_for(env, &[a, b], within)? {
        return comma_in(k, a, b, false);
    }
    let r = comma_category(env.functor(a)?, env.functor(b)?)?;
    Ok(json!({
        "category": category_json(&r.cat),
        "proj0": functor_json(&r.proj0),
        "proj1": functor_json(&r.proj1),
        "lambda": nat_json(&r.lambda),
    }))
}

pub fn pullback(env: &Env, a: &str, b: &str, within: Option<&str>) -> Result<Value> {
    if let Some(k) = pocategory_for(env, &[a, b], within)? {
        return comma_in(k, a, b, true);
    }
    let r = pullback_category(env.functor(a)?, env.functor(b)?)?;
    Ok(json!({
        "category": category_json(&r.cat),
        "proj0": functor_json(&r.proj0),
        "proj1": functor_json(&r.proj1),
    }))
}

/// Pointwise right (or left) Kan extension of `j` along `h`.
pub fn kan(env: &Env, h: &str, j: &str, right: bool) -> Result<Value> {
    let (h, j) = (env.functor(h)?, env.functor(j)?);
    let r = if right { right_kan(h, j)? } else { left_kan(h, j)? };
    let mut v = serde_json::to_value(&r).expect("kan result serializes");
    v["extension"] = r.extension.as_ref().map_or(Value::Null, functor_json);
    v["cell"] = r.cell.as_ref().map_or(Value::Null, nat_json);
    Ok(v)
}

fn preorder_of(env: &Env, c: &Arc<FinCategory>) -> Result<FinPreorder> {
    env.preorders
        .values()
        .find(|(_, pc)| same(pc, c))
        .map(|(p, _)| p.clone())
        .ok_or_else(|| Error::Construction("coequalizers need functors between declared preorders".into()))
}

/// The coequalizer of `g, h: w -> x` in preorders; with `over = (a, b)`,
/// also the lax slice coequalizer over `z` and its checks.
pub fn coeq(env: &Env, g: &str, h: &str, over: Option<(&str, &str)>) -> Result<Value> {
    let (g, h) = (env.functor(g)?, env.functor(h)?);
    let (w, x) = (preorder_of(env, g.dom())?, preorder_of(env, g.cod())?);
    let (gm, hm) = (g.obj_map().to_vec(), h.obj_map().to_vec());
    let Some((a, b)) = over else {
        let r = preorder_coequalizer(&w, &x, &gm, &hm)?;
        return Ok(json!({ "quotient": category_json(&r.q.to_category()), "e": names(&x, &r.q, &r.e) }));
    };
    let (a, b) = (env.functor(a)?, env.functor(b)?);
    let z = preorder_of(env, a.cod())?;
    let inst = CoeqInstance::new(z.clone(), w, a.obj_map().to_vec(), x.clone(), b.obj_map().to_vec(), gm, hm)?;
    let lc = lax_slice_coequalizer(&inst)?;
    let check = check_lax_coequalizer(&inst, &lc, &default_targets(&[]))?;
    Ok(json!({
        "quotient": category_json(&lc.coeq.q.to_category()),
        "e": names(&x, &lc.coeq.q, &lc.coeq.e),
        "c": lc.c.as_ref().map(|c| names(&lc.coeq.q, &z, c)),
        "check": check,
        "holds": check.holds(),
    }))
}

fn names(dom: &FinPreorder, cod: &FinPreorder, f: &[usize]) -> Value {
    let m: serde_json::Map<String, Value> =
        f.iter().enumerate().map(|(i, &j)| (dom.name(i).to_string(), json!(cod.name(j)))).collect();
    Value::Object(m)
}

/// Is `f -| g` in the po-category `k`, and which of the four kinds.
pub fn adjoint_check(env: &Env, f: &str, g: &str, within: Option<&str>) -> Result<Value> {
    let k = pocategory_for(env, &[f, g], within)?
        .ok_or_else(|| Error::Construction(format!("no po-category has both `{f}` and `{g}`")))?;
    let r = adjunction_check(k, mor(k, f)?, mor(k, g)?)?;
    Ok(json!({
        "f": f, "g": g,
        "holds": r.holds, "lali": r.lali, "rali": r.rali, "lari": r.lari, "rari": r.rari,
    }))
}

/// The rari data of `b` over its codomain and its coherence checks.
pub fn kz(env: &Env, b: &str) -> Result<Value> {
    let w = kz_witness(&SliceObject::new(env.functor(b)?.clone()))?;
    Ok(json!({
        "holds": w.holds(),
        "comma_objects": w.comma.cat.num_objects(),
        "rho_bar": functor_json(&w.rho_bar),
        "delta_bar": functor_json(&w.delta_bar),
        "gamma": nat_json(&w.gamma),
        "unit_identity": w.unit_identity,
        "gamma_projects_to_lambda": w.gamma_projects_to_lambda,
        "gamma_delta": w.gamma_delta,
        "gamma_rho": w.gamma_rho,
    }))
}

/// Runs one `command` block.
pub fn run_command(env: &Env, c: &CommandBlock) -> Result<Value> {
    let arg = |i: usize| c.args[i].as_str();
    let out = match c.op.as_str() {
        "comma" => comma(env, arg(0), arg(1), None)?,
        "pullback" => pullback(env, arg(0), arg(1), None)?,
        "ran" => kan(env, arg(0), arg(1), true)?,
        "lan" => kan(env, arg(0), arg(1), false)?,
        "coeq" => coeq(env, arg(0), arg(1), None)?,
        "adjoint-check" => adjoint_check(env, arg(0), arg(1), None)?,
        "kz-witness" => kz(env, arg(0))?,
        op => return Err(Error::Construction(format!("unknown operation `{op}`"))),
    };
    Ok(json!({ "command": c.name, "op": c.op, "result": out }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::env::load_spec;

    const SPEC: &str = "\
category one { objects: * }
category two {
  objects: 0 1
  morphisms: u: 0 -> 1
  compose: thin
}
functor d0 : one -> two { objects: * -> 0 }
functor d1 : one -> two { objects: * -> 1 }
functor id2 : two -> two { objects: 0 -> 0, 1 -> 1 ; morphisms: u -> u }
command c { op: comma ; args: d0 d1 }
command k { op: kz-witness ; args: id2 }
";

    #[test]
    fn comma_of_endpoints_is_a_point() {
        let env = load_spec(SPEC).unwrap();
        let v = comma(&env, "d0", "d1", None).unwrap();
        assert_eq!(v["category"]["objects"].as_array().unwrap().len(), 1);
        let v = comma(&env, "d1", "d0", None).unwrap();
        assert_eq!(v["category"]["objects"].as_array().unwrap().len(), 0);
        let v = pullback(&env, "d0", "d1", None).unwrap();
        assert_eq!(v["category"]["objects"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn command_blocks_run() {
        let env = load_spec(SPEC).unwrap();
        let out: Vec<Value> = env.commands.iter().map(|c| run_command(&env, c).unwrap()).collect();
        assert_eq!(out[1]["result"]["holds"], json!(true));
    }

    #[test]
    fn adjunctions_in_ord() {
        let text = "\
category c {
  objects: 1 2
  morphisms: d0: 1 -> 2, s0: 2 -> 1, e: 2 -> 2
  compose: d0.s0 = e, s0.d0 = id_1, e.e = e, s0.e = s0, e.d0 = d0
}
pocategory k : c { le: e<=id_2 }
";
        let env = load_spec(text).unwrap();
        let v = adjoint_check(&env, "d0", "s0", None).unwrap();
        assert_eq!(v["holds"], json!(true));
        assert_eq!(v["lari"], json!(true));
        assert_eq!(adjoint_check(&env, "s0", "d0", None).unwrap()["holds"], json!(false));
    }
}
