//! Monte Carlo estimate of the logical failure rate of a concatenated code.
//!
//! Shots are split into shards of [`SHARD_SHOTS`]; shard `s` draws from a
//! ChaCha8 stream seeded with `seed` on stream `s`, so an estimate depends only
//! on `(seed, shots)` and not on how shards are scheduled.

use alloc::vec::Vec;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::analytic::NoiseModel;
use crate::concat::{ConcatCode, ConcatSpec};
use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliString, Phase};
use crate::stabilizer::ErrorKind;

pub const SHARD_SHOTS: u64 = 65_536;

/// z-score above which [`compare`] reports disagreement.
pub const Z_LIMIT: f64 = 4.0;
/// Minimum shots for [`compare`] to flag anything.
pub const MIN_FLAG_SHOTS: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleConfig {
    pub model: NoiseModel,
    pub shots: u64,
    pub seed: u64,
}

/// Cumulative tables for the within-block chain.
#[derive(Clone, Debug)]
pub struct Sampler {
    letters: usize,
    marginal: [f64; 4],
    // conditional[j][i]: cumulative over i of p(i|j)
    conditional: [[f64; 4]; 4],
    blocks: Vec<(usize, usize)>,
    n: usize,
}

const LETTERS: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

impl Sampler {
    pub fn new(model: &NoiseModel, spec: &ConcatSpec) -> Self {
        let letters = model.alphabet().letters();
        let mut marginal = [1.0; 4];
        let mut conditional = [[1.0; 4]; 4];
        let mut acc = 0.0;
        for i in 0..letters {
            acc += model.marginal_unchecked(i);
            marginal[i] = acc;
        }
        for (j, row) in conditional.iter_mut().enumerate().take(letters) {
            let mut acc = 0.0;
            for (i, slot) in row.iter_mut().enumerate().take(letters) {
                acc += model.conditional_unchecked(i, j);
                *slot = acc;
            }
        }
        // Guard the last bucket against rounding.
        marginal[letters - 1] = 1.0;
        for row in conditional.iter_mut() {
            row[letters - 1] = 1.0;
        }
        Sampler {
            letters,
            marginal,
            conditional,
            blocks: spec.blocks().iter().map(|b| (b.start, b.end)).collect(),
            n: spec.n(),
        }
    }

    #[inline]
    fn draw(cdf: &[f64; 4], letters: usize, u: f64) -> usize {
        (0..letters - 1).find(|&i| u < cdf[i]).unwrap_or(letters - 1)
    }

    /// One error: blocks independent, letters chained within each block.
    pub fn sample<R: RngCore>(&self, rng: &mut R) -> PauliString {
        let (mut x, mut z) = (0u64, 0u64);
        for &(start, end) in &self.blocks {
            let mut prev = Self::draw(&self.marginal, self.letters, uniform(rng));
            set_letter(&mut x, &mut z, start, prev);
            for q in start + 1..end {
                prev = Self::draw(&self.conditional[prev], self.letters, uniform(rng));
                set_letter(&mut x, &mut z, q, prev);
            }
        }
        PauliString::from_bits(self.n, x, z, Phase::PLUS_ONE).expect("sampler width fits")
    }
}

#[inline]
fn set_letter(x: &mut u64, z: &mut u64, q: usize, letter: usize) {
    let (bx, bz) = LETTERS[letter].bits();
    *x |= (bx as u64) << q;
    *z |= (bz as u64) << q;
}

/// Uniform in `[0, 1)` from the top 53 bits.
#[inline]
fn uniform<R: RngCore>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Draws one error for `spec` under `model`.
pub fn sample_error<R: RngCore>(model: &NoiseModel, spec: &ConcatSpec, rng: &mut R) -> PauliString {
    Sampler::new(model, spec).sample(rng)
}

/// The RNG of shard `shard` under `seed`.
pub fn shard_rng(seed: u64, shard: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    rng
}

pub fn shard_count(shots: u64) -> u64 {
    shots.div_ceil(SHARD_SHOTS)
}

/// Shots assigned to `shard` out of `shots`.
pub fn shard_shots(shots: u64, shard: u64) -> u64 {
    SHARD_SHOTS.min(shots.saturating_sub(shard * SHARD_SHOTS))
}

/// Failed shots in one shard. A shot fails when its syndrome has no table
/// entry or the corrected residual is a logical operator.
pub fn run_shard(code: &ConcatCode, sampler: &Sampler, seed: u64, shard: u64, shots: u64) -> u64 {
    let mut rng = shard_rng(seed, shard);
    let stab = code.code();
    let table = code.decoder_table();
    let mut failures = 0;
    for _ in 0..shots {
        let e = sampler.sample(&mut rng);
        let s = stab.syndrome_unchecked(&e);
        let failed = match table.lookup(s) {
            None => true,
            Some(c) => stab.classify_unchecked(&c.mul_same_len(&e)).kind != ErrorKind::Stabilizer,
        };
        failures += failed as u64;
    }
    failures
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub failures: u64,
    pub shots: u64,
}

impl Estimate {
    pub fn pf_hat(&self) -> f64 {
        self.failures as f64 / self.shots as f64
    }

    /// Binomial standard error `sqrt(p̂(1-p̂)/shots)`.
    pub fn stderr(&self) -> f64 {
        let p = self.pf_hat();
        libm::sqrt(p * (1.0 - p) / self.shots as f64)
    }

    pub fn merge(self, other: Estimate) -> Estimate {
        Estimate {
            failures: self.failures + other.failures,
            shots: self.shots + other.shots,
        }
    }
}

fn check_config(code: &ConcatCode, config: &SampleConfig) -> Result<()> {
    if config.shots == 0 {
        return Err(Error::Domain("shots must be at least 1".into()));
    }
    if code.decoder_table().is_empty() {
        return Err(Error::Precondition("decoder table is empty".into()));
    }
    Ok(())
}

/// Sequential estimate over all shards.
pub fn estimate_pf(code: &ConcatCode, config: &SampleConfig) -> Result<Estimate> {
    check_config(code, config)?;
    let sampler = Sampler::new(&config.model, code.spec());
    let failures = (0..shard_count(config.shots))
        .map(|s| run_shard(code, &sampler, config.seed, s, shard_shots(config.shots, s)))
        .sum();
    Ok(Estimate {
        failures,
        shots: config.shots,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Comparison {
    pub pf_hat: f64,
    pub stderr: f64,
    pub analytic: f64,
    /// `|p̂ - analytic| / stderr`; infinite when the two differ with zero stderr.
    pub z: f64,
    pub flagged: bool,
}

/// z-score of `analytic` against `estimate`; flags `z > 4` when at least
/// `1e5` shots were taken.
pub fn compare(estimate: &Estimate, analytic: f64) -> Comparison {
    let (pf_hat, stderr) = (estimate.pf_hat(), estimate.stderr());
    let diff = (pf_hat - analytic).abs();
    let z = if stderr > 0.0 {
        diff / stderr
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Comparison {
        pf_hat,
        stderr,
        analytic,
        z,
        flagged: z > Z_LIMIT && estimate.shots >= MIN_FLAG_SHOTS,
    }
}
