//! Fidelity curves, pseudothresholds and the summary table.

use anyhow::{anyhow, Result};
use qdconcat_core::analytic::{entanglement_fidelity, pseudothreshold, Threshold};
use qdconcat_core::concat::{ConcatCode, Efficiency};
use qdconcat_core::family::{Family, VariantPolicy};
use serde_json::{json, Value};

use crate::format::sig6;

/// Grid points `pmin, pmin + step, …` up to `pmax` inclusive.
pub fn grid(pmin: f64, pmax: f64, step: f64) -> Vec<f64> {
    let count = ((pmax - pmin) / step + 1e-9).floor() as usize;
    (0..=count).map(|i| pmin + i as f64 * step).collect()
}

pub fn fidelity_csv(
    code: Family,
    mus: &[f64],
    pmin: f64,
    pmax: f64,
    step: f64,
    policy: VariantPolicy,
) -> Result<String> {
    let mut out = String::from("p,mu,pf,fe\n");
    for &mu in mus {
        for p in grid(pmin, pmax, step) {
            let pf = code.failure_probability(mu, p, policy)?;
            let fe = entanglement_fidelity(pf)?;
            out.push_str(&format!("{},{},{},{}\n", sig6(p), sig6(mu), sig6(pf), sig6(fe)));
        }
    }
    Ok(out)
}

fn threshold_value(t: Threshold) -> Value {
    match t {
        Threshold::Crossing(p) => json!(p),
        Threshold::NoCrossing => json!("no-crossing"),
    }
}

pub fn threshold(code: Family, mu: f64, depth: usize, policy: VariantPolicy) -> Result<Value> {
    let at = |d: usize| move |p: f64| code.depth_failure_probability(mu, p, d, policy).unwrap_or(f64::NAN);
    let crossings: Vec<Value> = (1..=depth)
        .map(|d| json!({ "depth": d, "p_thres": threshold_value(pseudothreshold(at(d))) }))
        .collect();
    let last = pseudothreshold(at(depth));
    let curve: Result<Vec<Value>> = grid(0.0, 0.5, 0.005)
        .into_iter()
        .map(|p| Ok(json!({ "p": p, "pf": code.depth_failure_probability(mu, p, depth, policy)? })))
        .collect();
    Ok(json!({
        "code": code.as_str(),
        "mu": mu,
        "variant": policy.dq10.as_str(),
        "qd10_inner": policy.qd10_inner.as_str(),
        "depth": depth,
        "p_thres": threshold_value(last),
        "crossings": crossings,
        "curve": curve?,
    }))
}

pub fn table1() -> Result<Value> {
    let policy = VariantPolicy::TABLE;
    let mut rows = Vec::new();
    for f in Family::ALL {
        let code = ConcatCode::build(f.spec()?)?;
        let (phi, phi_prime) = code.hamming_efficiency();
        let t = pseudothreshold(|p| f.failure_probability(0.0, p, policy).unwrap_or(f64::NAN));
        rows.push((f, phi, phi_prime, t));
    }
    type Row = (Family, Efficiency, Efficiency, Threshold);
    let col = |g: &dyn Fn(&Row) -> Value| rows.iter().map(g).collect::<Vec<_>>();
    let value = json!({
        "codes": col(&|r| json!(r.0.as_str())),
        "labels": col(&|r| json!(r.0.label())),
        "qecc": col(&|r| json!(r.0.qecc())),
        "e_type": col(&|r| json!(r.0.e_type())),
        "phi": col(&|r| json!(r.1.value())),
        "phi_prime": col(&|r| json!(r.2.value())),
        "phi_exact": col(&|r| json!(r.1.to_string())),
        "phi_prime_exact": col(&|r| json!(r.2.to_string())),
        "p_thres": col(&|r| threshold_value(r.3)),
        "variants": { "dq10": policy.dq10.as_str(), "qd10_inner": policy.qd10_inner.as_str() },
    });
    if rows.iter().any(|r| r.3 == Threshold::NoCrossing) {
        return Err(anyhow!("a code has no pseudothreshold under the table policy"));
    }
    Ok(value)
}
