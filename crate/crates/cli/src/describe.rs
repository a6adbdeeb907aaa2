//! JSON descriptions of codes, concatenations and DFS constructions.

use anyhow::{bail, Result};
use qdconcat_core::concat::{ConcatCode, ConcatSpec, GeneratorSource, Order};
use qdconcat_core::dfs::{as_stabilizer_code, characters, df_basis, AbelianErrorGroup};
use qdconcat_core::family::Family;
use qdconcat_core::pauli::parse;
use qdconcat_core::stabilizer::builtin;
use qdconcat_core::statevec::StateVector;
use qdconcat_core::{Error, PauliString, StabilizerCode};
use serde_json::{json, Value};

const BASE: [&str; 3] = ["repetition-3", "knill-laflamme-5", "dfs-2"];

fn strings(ops: &[PauliString]) -> Vec<String> {
    ops.iter().map(|p| p.to_string()).collect()
}

fn code_json(code: &StabilizerCode) -> Value {
    json!({
        "name": code.name(),
        "n": code.n(),
        "k": code.k(),
        "generators": strings(code.generators()),
        "passive": code.passive_mask(),
        "logical_x": strings(code.logical_x()),
        "logical_z": strings(code.logical_z()),
    })
}

pub fn list() -> Result<Value> {
    let base: Result<Vec<Value>> = BASE
        .iter()
        .map(|name| {
            let c = builtin(name)?;
            Ok(json!({ "name": name, "n": c.n(), "k": c.k(), "passive": c.is_passive() }))
        })
        .collect();
    let concatenated: Result<Vec<Value>> = Family::ALL
        .iter()
        .map(|f| {
            let spec = f.spec()?;
            Ok(json!({
                "name": f.as_str(),
                "label": f.label(),
                "n": spec.n(),
                "k": spec.k(),
                "order": spec.order().as_str(),
                "outer": spec.outer().name(),
                "inner": spec.inner().name(),
            }))
        })
        .collect();
    Ok(json!({ "base": base?, "concatenated": concatenated? }))
}

pub fn describe(name: &str) -> Result<Value> {
    if BASE.contains(&name) {
        return Ok(code_json(&builtin(name)?));
    }
    match name.parse::<Family>() {
        Ok(f) => concat_json(&ConcatCode::build(f.spec()?)?, Some(f)),
        Err(_) => Err(Error::UnknownCode {
            name: name.into(),
            valid: "repetition-3, knill-laflamme-5, dfs-2, qd6, dq6, qd10, dq10",
        }
        .into()),
    }
}

pub fn concat(outer: &str, inner: &str, order: Order) -> Result<Value> {
    let spec = ConcatSpec::new(builtin(outer)?, builtin(inner)?, order)?;
    let family = Family::ALL.into_iter().find(|f| {
        f.spec().map(|s| s.name() == spec.name()).unwrap_or(false)
    });
    concat_json(&ConcatCode::build(spec)?, family)
}

fn concat_json(code: &ConcatCode, family: Option<Family>) -> Result<Value> {
    let spec = code.spec();
    let classes: Vec<Value> = code
        .generator_classes()
        .iter()
        .map(|c| {
            let source = match c.source {
                GeneratorSource::Block { block, generator } => {
                    json!({ "kind": "block", "block": block, "generator": generator })
                }
                GeneratorSource::Lifted { generator } => json!({ "kind": "lifted", "generator": generator }),
            };
            json!({
                "canonical": c.canonical().to_string(),
                "passive": c.passive,
                "source": source,
                "representatives": strings(&c.representatives),
            })
        })
        .collect();
    let eq = code.equivalence_class();
    let table: Vec<Value> = code
        .decoder_table()
        .entries()
        .map(|(s, c)| json!({ "syndrome": s.to_string(), "correction": c.to_string() }))
        .collect();
    let (phi, phi_prime) = code.hamming_efficiency();
    Ok(json!({
        "name": spec.name(),
        "family": family.map(|f| f.as_str()),
        "n": spec.n(),
        "k": spec.k(),
        "order": spec.order().as_str(),
        "outer": spec.outer().name(),
        "inner": spec.inner().name(),
        "blocks": spec.blocks().iter().map(|b| [b.start, b.end]).collect::<Vec<_>>(),
        "code": code_json(code.code()),
        "generator_classes": classes,
        "equivalence_class": {
            "sets": eq.set_count(),
            "elements": eq.element_count(),
            "listing": eq.sets.iter().map(|s| strings(s)).collect::<Vec<_>>(),
        },
        "passive_set": strings(code.passive_set()),
        "decoder_table": table,
        "phi": phi.value(),
        "phi_prime": phi_prime.value(),
        "phi_exact": phi.to_string(),
        "phi_prime_exact": phi_prime.to_string(),
    }))
}

fn state_json(state: &StateVector) -> Value {
    let n = state.n();
    let terms: Vec<Value> = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 1e-12)
        .map(|(i, a)| json!({ "ket": format!("{i:0n$b}"), "re": a.re, "im": a.im }))
        .collect();
    json!(terms)
}

pub fn dfs(labels: &[String], only: Option<usize>) -> Result<Value> {
    let ops: Vec<PauliString> = labels.iter().map(|l| parse(l.trim())).collect::<Result<_, _>>()?;
    let n = ops[0].n();
    let group = AbelianErrorGroup::generated_by(n, &ops)?;
    let chis = characters(&group);
    if let Some(i) = only {
        if i >= chis.len() {
            bail!(crate::Usage(format!("character {i} out of range; the group has {}", chis.len())));
        }
    }
    let mut out = Vec::new();
    for (i, chi) in chis.iter().enumerate() {
        if only.is_some_and(|j| j != i) {
            continue;
        }
        let basis = df_basis(&group, chi)?;
        let code = as_stabilizer_code(&group, chi).ok().map(|c| code_json(&c));
        out.push(json!({
            "index": i,
            "values": chi.values(),
            "generator_signs": chi.generator_signs(),
            "dimension": basis.len(),
            "basis": basis.iter().map(state_json).collect::<Vec<_>>(),
            "code": code,
        }));
    }
    Ok(json!({
        "n": n,
        "elements": strings(group.elements()),
        "generators": strings(group.generators()),
        "characters": out,
    }))
}
