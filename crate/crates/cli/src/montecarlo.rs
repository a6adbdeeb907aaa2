use anyhow::Result;
use qdconcat_core::analytic::{Alphabet, NoiseModel};
use qdconcat_core::concat::ConcatCode;
use qdconcat_core::family::{Family, VariantPolicy};
use qdconcat_core::mc::{compare, run_shard, shard_count, shard_shots, Estimate, Sampler};
use rayon::prelude::*;
use serde_json::{json, Value};

/// Shards run on the rayon pool; the result depends only on `(seed, shots)`.
pub fn estimate(code: &ConcatCode, model: &NoiseModel, shots: u64, seed: u64) -> Estimate {
    let sampler = Sampler::new(model, code.spec());
    let failures = (0..shard_count(shots))
        .into_par_iter()
        .map(|s| run_shard(code, &sampler, seed, s, shard_shots(shots, s)))
        .sum();
    Estimate { failures, shots }
}

pub fn run(
    family: Family,
    p: f64,
    mu: f64,
    shots: u64,
    seed: u64,
    alphabet: Alphabet,
    policy: VariantPolicy,
) -> Result<Value> {
    let code = ConcatCode::build(family.spec()?)?;
    let model = NoiseModel::new(p, mu, alphabet)?;
    let est = estimate(&code, &model, shots, seed);
    let analytic = family.failure_probability(mu, p, policy)?;
    let cmp = compare(&est, analytic);
    Ok(json!({
        "code": family.as_str(),
        "p": p,
        "mu": mu,
        "alphabet": alphabet.as_str(),
        "shots": shots,
        "seed": seed,
        "failures": est.failures,
        "pf_hat": cmp.pf_hat,
        "stderr": cmp.stderr,
        "analytic": analytic,
        "z": if cmp.z.is_finite() { json!(cmp.z) } else { json!("inf") },
        "flagged": cmp.flagged,
    }))
}
