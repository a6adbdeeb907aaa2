//! Self-check suites behind `qdconcat verify`.

use anyhow::Result;
use qdconcat_core::analytic::{
    cross_block_correlation, cross_block_correlation_closed_form, pseudothreshold, standalone_pf, Alphabet,
    CodeFailureFormula, NoiseModel, Threshold,
};
use qdconcat_core::concat::ConcatCode;
use qdconcat_core::dfs::{characters, df_basis, projector, AbelianErrorGroup};
use qdconcat_core::encoding::five_qubit_codewords;
use qdconcat_core::family::{Dq10Variant, Family, VariantPolicy};
use qdconcat_core::mc::compare;
use qdconcat_core::pauli::{parse, parse_all, Letter};
use qdconcat_core::stabilizer::{builtin, errors_of_weight};
use qdconcat_core::statevec::{dfs_invariance, expectation, kl_check, DenseOperator, StateVector};
use qdconcat_core::{ErrorKind, PauliString, Phase};
use serde_json::{json, Value};

use crate::{montecarlo, Outcome, Suite};

struct Check {
    suite: &'static str,
    name: String,
    code: Option<Family>,
    passed: bool,
    detail: String,
}

impl Check {
    fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "name": self.name,
            "code": self.code.map(|c| c.as_str()),
            "passed": self.passed,
            "detail": self.detail,
        })
    }
}

struct Checks {
    suite: &'static str,
    list: Vec<Check>,
}

impl Checks {
    fn push(&mut self, name: &str, code: Option<Family>, result: Result<String, String>) {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.list.push(Check {
            suite: self.suite,
            name: name.into(),
            code,
            passed,
            detail,
        });
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn built(f: Family) -> Result<ConcatCode, String> {
    ConcatCode::build(f.spec().map_err(err)?).map_err(err)
}

fn pauli_suite(c: &mut Checks) {
    c.push("round-trip", None, (|| {
        let mut count = 0;
        for n in 1..=3u32 {
            for code in 0..4usize.pow(n) {
                let letters: Vec<Letter> = (0..n).map(|q| Letter::ALL[code / 4usize.pow(q) % 4]).collect();
                for e in 0..4 {
                    let p = PauliString::from_letters(&letters).map_err(err)?.with_phase(Phase::from_exponent(e));
                    if parse(&p.to_string()).map_err(err)? != p {
                        return Err(format!("{p} does not round-trip"));
                    }
                    count += 1;
                }
            }
        }
        Ok(format!("{count} strings"))
    })());
    c.push("pair-logical-sign", None, (|| {
        let prod = parse("ZZ").map_err(err)?.multiply(&parse("XX").map_err(err)?).map_err(err)?;
        if prod == parse("-YY").map_err(err)? {
            Ok("ZZ·XX = -YY".into())
        } else {
            Err(format!("ZZ·XX = {prod}"))
        }
    })());
    c.push("swap-sign", None, (|| {
        let all: Vec<_> = (0..=2).flat_map(|w| errors_of_weight(2, w)).collect();
        for a in &all {
            for b in &all {
                let (ab, ba) = (a.multiply(b).map_err(err)?, b.multiply(a).map_err(err)?);
                if (ab == ba) != a.commutes(b).map_err(err)? {
                    return Err(format!("{a}, {b}"));
                }
            }
        }
        Ok(format!("{} pairs", all.len() * all.len()))
    })());
}

fn stabilizer_suite(c: &mut Checks, codes: &[Family]) {
    for name in ["repetition-3", "knill-laflamme-5", "dfs-2"] {
        c.push(&format!("validate {name}"), None, (|| {
            let report = builtin(name).map_err(err)?.validate();
            match report.violations.first() {
                None => Ok("valid".into()),
                Some(v) => Err(v.to_string()),
            }
        })());
    }
    for &f in codes {
        c.push("validate", Some(f), (|| {
            let code = built(f)?;
            match code.code().validate().violations.first() {
                None => Ok(format!("{} generators", code.code().generators().len())),
                Some(v) => Err(v.to_string()),
            }
        })());
    }
    c.push("repetition-syndromes", None, (|| {
        let code = builtin("repetition-3").map_err(err)?;
        let mut bits: Vec<u64> = parse_all(["III", "XII", "IXI", "IIX"])
            .map_err(err)?
            .iter()
            .map(|e| code.syndrome(e).map(|s| s.bits()))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        bits.sort();
        bits.dedup();
        if bits.len() == 4 {
            Ok("injective".into())
        } else {
            Err("syndromes collide".into())
        }
    })());
}

fn concat_suite(c: &mut Checks, codes: &[Family]) {
    for &f in codes {
        let code = match built(f) {
            Ok(code) => code,
            Err(e) => {
                c.push("build", Some(f), Err(e));
                continue;
            }
        };
        let expected = match f {
            Family::Qd6 => (4, 8),
            Family::Dq6 => (16, 2),
            Family::Qd10 => (16, 32),
            Family::Dq10 => (256, 2),
        };
        let eq = code.equivalence_class();
        c.push("counts", Some(f), {
            let got = (eq.set_count(), eq.element_count() / eq.set_count().max(1));
            if got == expected && eq.sets.iter().all(|s| s.len() == expected.1) {
                Ok(format!("{}x{}", got.0, got.1))
            } else {
                Err(format!("{got:?}, want {expected:?}"))
            }
        });
        c.push("generator-degeneracy", Some(f), (|| {
            for class in code.generator_classes() {
                for e in eq.iter() {
                    let first = class.representatives[0].commutes(e).map_err(err)?;
                    for r in &class.representatives {
                        if r.commutes(e).map_err(err)? != first {
                            return Err(format!("{r} and {} disagree on {e}", class.representatives[0]));
                        }
                    }
                }
            }
            Ok(format!("{} classes", code.generator_classes().len()))
        })());
        c.push("passive-set", Some(f), (|| {
            let passive = code.passive_set();
            let hits = eq.sets.iter().filter(|s| s.as_slice() == passive).count();
            if hits != 1 {
                return Err(format!("passive set matches {hits} sets"));
            }
            for a in passive {
                for b in passive {
                    if !code.code().are_degenerate(a, b).map_err(err)? {
                        return Err(format!("{a}, {b} not degenerate"));
                    }
                }
            }
            Ok(format!("{} elements", passive.len()))
        })());
        c.push("decoder", Some(f), (|| {
            for e in eq.iter() {
                let s = code.code().syndrome(e).map_err(err)?;
                let corr = code.decoder_table().lookup(s).ok_or_else(|| format!("no entry for {e}"))?;
                let kind = code.code().classify(&corr.multiply(e).map_err(err)?).map_err(err)?.kind;
                if kind != ErrorKind::Stabilizer {
                    return Err(format!("{e} leaves {kind:?}"));
                }
            }
            Ok(format!("{} entries", code.decoder_table().len()))
        })());
    }
}

/// Codeword obtained by projecting a basis state onto the code space and the
/// `±1` eigenspace of logical Z.
fn projected_codeword(code: &ConcatCode, bit: usize, seed: usize) -> Result<StateVector, String> {
    let stab = code.code();
    let n = stab.n();
    let mut v = StateVector::basis(n, seed).map_err(err)?.amplitudes().to_vec();
    let mut project = |op: &PauliString, sign: f64| -> Result<(), String> {
        let state = StateVector::from_amplitudes(n, v.clone()).map_err(err)?;
        let image = state.apply_pauli(op).map_err(err)?;
        v = state
            .amplitudes()
            .iter()
            .zip(image.amplitudes())
            .map(|(a, b)| (a + b * sign) * 0.5)
            .collect();
        Ok(())
    };
    for g in stab.generators() {
        project(g, 1.0)?;
    }
    project(&stab.logical_z()[0], if bit == 0 { 1.0 } else { -1.0 })?;
    StateVector::from_amplitudes(n, v).map_err(err)
}

fn codewords_suite(c: &mut Checks, codes: &[Family]) {
    for &f in codes {
        c.push("encoder-vs-projection", Some(f), (|| {
            let code = built(f)?;
            let words = f.codewords().map_err(err)?;
            for (bit, w) in words.iter().enumerate() {
                let seed = w
                    .amplitudes()
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
                    .map(|(i, _)| i)
                    .unwrap_or(0);
                let want = projected_codeword(&code, bit, seed)?;
                let (dev, idx) = w.max_deviation_up_to_phase(&want).map_err(err)?;
                if dev > 1e-10 {
                    return Err(format!("|{bit}>: amplitude {idx} off by {dev:e}"));
                }
            }
            Ok("both codewords match".into())
        })());
        c.push("generator-expectations", Some(f), (|| {
            let code = built(f)?;
            let words = f.codewords().map_err(err)?;
            let mut count = 0;
            for class in code.generator_classes() {
                for rep in &class.representatives {
                    for (bit, w) in words.iter().enumerate() {
                        let e = expectation(w, rep).map_err(err)?;
                        if (e.re - 1.0).hypot(e.im) > 1e-10 {
                            return Err(format!("<{rep}> = {e} on |{bit}>"));
                        }
                        count += 1;
                    }
                }
            }
            Ok(format!("{count} expectations"))
        })());
    }
}

fn kl_suite(c: &mut Checks, codes: &[Family]) {
    c.push("five-qubit", None, (|| {
        let words = five_qubit_codewords().map_err(err)?;
        let errors: Vec<_> = (0..=1).flat_map(|w| errors_of_weight(5, w)).collect();
        if kl_check(&words, &errors).map_err(err)?.holds {
            Ok(format!("{} errors", errors.len()))
        } else {
            Err("conditions fail".into())
        }
    })());
    c.push("repetition", None, (|| {
        let words = [
            StateVector::from_terms(3, &[("000", 1.0)]).map_err(err)?,
            StateVector::from_terms(3, &[("111", 1.0)]).map_err(err)?,
        ];
        let mut errors = parse_all(["III", "XII", "IXI", "IIX"]).map_err(err)?;
        if !kl_check(&words, &errors).map_err(err)?.holds {
            return Err("bit flips fail".into());
        }
        errors.push(parse("ZII").map_err(err)?);
        let report = kl_check(&words, &errors).map_err(err)?;
        match report.witness {
            Some(w) if !report.holds => Ok(format!("ZII rejected at (m={}, n={})", w.m, w.n)),
            _ => Err("ZII accepted".into()),
        }
    })());
    for &f in codes.iter().filter(|f| matches!(f, Family::Qd6 | Family::Dq6)) {
        c.push("equivalence-class", Some(f), (|| {
            let code = built(f)?;
            let errors: Vec<_> = code.equivalence_class().iter().copied().collect();
            if kl_check(&f.codewords().map_err(err)?, &errors).map_err(err)?.holds {
                Ok(format!("{} errors", errors.len()))
            } else {
                Err("conditions fail".into())
            }
        })());
    }
}

fn dfs_suite(c: &mut Checks) {
    c.push("pair-group", None, (|| {
        let group = AbelianErrorGroup::new(2, parse_all(["II", "XX"]).map_err(err)?).map_err(err)?;
        let mut sum = DenseOperator::zeros(2).map_err(err)?;
        for chi in characters(&group) {
            let p = projector(&group, &chi).map_err(err)?;
            if p.matmul(&p).map_err(err)?.max_abs_diff(&p) > 1e-12 {
                return Err("projector not idempotent".into());
            }
            sum = sum.add(&p).map_err(err)?;
            for v in df_basis(&group, &chi).map_err(err)? {
                if !dfs_invariance(&v, &group, &chi).map_err(err)? {
                    return Err("basis state not invariant".into());
                }
            }
        }
        if sum.max_abs_diff(&DenseOperator::identity(2).map_err(err)?) > 1e-12 {
            return Err("projectors do not sum to identity".into());
        }
        let mixed = StateVector::from_terms(2, &[("00", 1.0), ("11", 1.0), ("01", 1.0), ("10", -1.0)])
            .map_err(err)?;
        for chi in characters(&group) {
            if dfs_invariance(&mixed, &group, &chi).map_err(err)? {
                return Err("cross-character superposition invariant".into());
            }
        }
        Ok("projectors, bases and mixtures".into())
    })());
}

fn analytic_suite(c: &mut Checks, codes: &[Family]) {
    let policy = VariantPolicy::default();
    for (f, want) in [(Family::Qd6, 0.085536), (Family::Dq6, 0.054432)] {
        if !codes.contains(&f) {
            continue;
        }
        c.push("reference-value", Some(f), (|| {
            let got = f.failure_probability(0.0, 0.1, policy).map_err(err)?;
            if (got - want).abs() < 1e-9 {
                Ok(format!("pf(0.1) = {got}"))
            } else {
                Err(format!("pf(0.1) = {got}, want {want}"))
            }
        })());
    }
    for &f in codes {
        let (want, tol) = match f {
            Family::Qd6 => (0.1293, 5e-4),
            Family::Dq6 => (0.2252, 5e-4),
            Family::Qd10 => (0.0298, 1e-3),
            Family::Dq10 => (0.0579, 1e-3),
        };
        c.push("pseudothreshold", Some(f), {
            let t = pseudothreshold(|p| f.failure_probability(0.0, p, VariantPolicy::TABLE).unwrap_or(f64::NAN));
            match t.value() {
                Some(v) if (v - want).abs() <= tol => Ok(format!("{v:.7}")),
                _ => Err(format!("{t}, want {want} ± {tol}")),
            }
        });
    }
    if codes.contains(&Family::Dq10) {
        c.push("printed-form", Some(Family::Dq10), {
            let printed = VariantPolicy {
                dq10: Dq10Variant::Printed,
                ..VariantPolicy::TABLE
            };
            let t = pseudothreshold(|p| Family::Dq10.failure_probability(0.0, p, printed).unwrap_or(f64::NAN));
            if t == Threshold::NoCrossing {
                Ok("no crossing".into())
            } else {
                Err(format!("crossed at {t}"))
            }
        });
    }
    c.push("cross-block", None, (|| {
        let mut worst: f64 = 0.0;
        for i in 0..=20 {
            for j in 0..=20 {
                let (p, mu) = (i as f64 / 20.0, j as f64 / 20.0);
                let d = cross_block_correlation_closed_form(p, mu).map_err(err)?
                    - cross_block_correlation(p, mu).map_err(err)?;
                worst = worst.max(d.abs());
            }
        }
        if worst <= 1e-12 {
            Ok(format!("max deviation {worst:e}"))
        } else {
            Err(format!("max deviation {worst:e}"))
        }
    })());
    c.push("repetition-limits", None, (|| {
        for i in 0..=100 {
            let p = i as f64 / 100.0;
            let a = standalone_pf(CodeFailureFormula::Rep3, 0.0, p).map_err(err)?;
            let b = standalone_pf(CodeFailureFormula::Rep3, 1.0, p).map_err(err)?;
            if a != 3.0 * p * p - 2.0 * p * p * p || b != p {
                return Err(format!("p = {p}: {a}, {b}"));
            }
        }
        Ok("mu = 0 and mu = 1".into())
    })());
}

fn mc_suite(c: &mut Checks, codes: &[Family]) {
    let policy = VariantPolicy::default();
    for &f in codes.iter().filter(|f| matches!(f, Family::Qd6 | Family::Dq6)) {
        for (i, (p, mu)) in [(0.05, 0.0), (0.1, 0.5), (0.2, 0.75)].into_iter().enumerate() {
            c.push(&format!("agreement p={p} mu={mu}"), Some(f), (|| {
                let code = built(f)?;
                let model = NoiseModel::new(p, mu, Alphabet::BitFlip).map_err(err)?;
                let est = montecarlo::estimate(&code, &model, 100_000, 1000 + i as u64);
                let cmp = compare(&est, f.failure_probability(mu, p, policy).map_err(err)?);
                let line = format!("pf_hat {:.6} vs {:.6}, z = {:.2}", cmp.pf_hat, cmp.analytic, cmp.z);
                if cmp.flagged {
                    Err(line)
                } else {
                    Ok(line)
                }
            })());
        }
    }
}

pub fn run(suite: Suite, code: Option<Family>) -> Result<Outcome> {
    let codes: Vec<Family> = match code {
        Some(f) => vec![f],
        None => Family::ALL.to_vec(),
    };
    let wanted = |s: Suite| suite == Suite::All || suite == s;
    let mut all = Vec::new();
    let mut section = |name: &'static str, s: Suite, body: &dyn Fn(&mut Checks)| {
        if wanted(s) {
            let mut c = Checks { suite: name, list: Vec::new() };
            body(&mut c);
            all.extend(c.list);
        }
    };
    section("pauli", Suite::Pauli, &pauli_suite);
    section("stabilizer", Suite::Stabilizer, &|c| stabilizer_suite(c, &codes));
    section("concat", Suite::Concat, &|c| concat_suite(c, &codes));
    section("codewords", Suite::Codewords, &|c| codewords_suite(c, &codes));
    section("kl", Suite::Kl, &|c| kl_suite(c, &codes));
    section("dfs", Suite::Dfs, &dfs_suite);
    section("analytic", Suite::Analytic, &|c| analytic_suite(c, &codes));
    section("mc", Suite::Mc, &|c| mc_suite(c, &codes));
    let failures: Vec<Value> = all.iter().filter(|c| !c.passed).map(Check::to_json).collect();
    let passed = failures.is_empty();
    let report = json!({
        "suite": format!("{suite:?}").to_lowercase(),
        "code": code.map(|f| f.as_str()),
        "passed": passed,
        "total": all.len(),
        "failed": failures.len(),
        "checks": all.iter().map(Check::to_json).collect::<Vec<_>>(),
        "failures": failures,
    });
    let mut out = Outcome::json(&report)?;
    out.ok = passed;
    Ok(out)
}
