//! Closed-form failure probabilities under the hybrid independent-correlated
//! noise model, the layer recursion and pseudothreshold search.
//!
//! Inside a block, letters follow a first-order Markov chain: the first qubit
//! draws from the marginal `(p_0, p_1, …)` and each later qubit draws from
//! `p(i|j) = (1-μ)·p_i + μ·δ_ij` given its left neighbour. Blocks are
//! independent. The chain is written for a binary alphabet in its usual form;
//! here the same functional form is used for the four-letter alphabet
//! `{I, X, Y, Z}` with `p_X = p_Y = p_Z = p/3`.

use alloc::format;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `{I, X}` with `p_X = p`.
    BitFlip,
    /// `{I, X, Y, Z}` with `p/3` each.
    Depolarizing3,
}

impl Alphabet {
    /// Number of letters including the no-error letter 0.
    pub fn letters(self) -> usize {
        match self {
            Alphabet::BitFlip => 2,
            Alphabet::Depolarizing3 => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Alphabet::BitFlip => "bitflip",
            Alphabet::Depolarizing3 => "depolarizing3",
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {v} is outside [0, 1]")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    p: f64,
    mu: f64,
    alphabet: Alphabet,
}

impl NoiseModel {
    pub fn new(p: f64, mu: f64, alphabet: Alphabet) -> Result<Self> {
        check_unit("p", p)?;
        check_unit("mu", mu)?;
        Ok(NoiseModel { p, mu, alphabet })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn check_letter(&self, i: usize) -> Result<()> {
        if i < self.alphabet.letters() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "letter index {i} outside the {} alphabet",
                self.alphabet
            )))
        }
    }

    /// `p_i`; letter 0 is "no error".
    pub fn marginal(&self, i: usize) -> Result<f64> {
        self.check_letter(i)?;
        Ok(self.marginal_unchecked(i))
    }

    #[inline]
    pub(crate) fn marginal_unchecked(&self, i: usize) -> f64 {
        match (i, self.alphabet) {
            (0, _) => 1.0 - self.p,
            (_, Alphabet::BitFlip) => self.p,
            (_, Alphabet::Depolarizing3) => self.p / 3.0,
        }
    }

    /// `p(i|j) = (1-μ)·p_i + μ·δ_ij`.
    pub fn conditional(&self, i: usize, j: usize) -> Result<f64> {
        self.check_letter(i)?;
        self.check_letter(j)?;
        Ok(self.conditional_unchecked(i, j))
    }

    #[inline]
    pub(crate) fn conditional_unchecked(&self, i: usize, j: usize) -> f64 {
        (1.0 - self.mu) * self.marginal_unchecked(i) + if i == j { self.mu } else { 0.0 }
    }

    /// Probability of a whole block's letter sequence under the chain.
    pub fn sequence_probability(&self, letters: &[usize]) -> Result<f64> {
        let Some((&first, rest)) = letters.split_first() else {
            return Ok(1.0);
        };
        let mut prob = self.marginal(first)?;
        let mut prev = first;
        for &l in rest {
            prob *= self.conditional(l, prev)?;
            prev = l;
        }
        Ok(prob)
    }
}

/// `p(i|j)` for `model`.
pub fn conditional_prob(model: &NoiseModel, i: usize, j: usize) -> Result<f64> {
    model.conditional(i, j)
}

/// Stand-alone failure probability of one base code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeFailureFormula {
    /// Three-qubit bit-flip code under bit flips.
    Rep3,
    /// Two-qubit DFS under bit flips.
    Dfs2BitFlip,
    /// Two-qubit DFS under the three-letter alphabet.
    Dfs2Depolarizing3,
    /// Five-qubit code under the three-letter alphabet.
    Kl5,
}

impl CodeFailureFormula {
    pub const ALL: [CodeFailureFormula; 4] = [
        CodeFailureFormula::Rep3,
        CodeFailureFormula::Dfs2BitFlip,
        CodeFailureFormula::Dfs2Depolarizing3,
        CodeFailureFormula::Kl5,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CodeFailureFormula::Rep3 => "rep3",
            CodeFailureFormula::Dfs2BitFlip => "dfs2-bitflip",
            CodeFailureFormula::Dfs2Depolarizing3 => "dfs2-depolarizing3",
            CodeFailureFormula::Kl5 => "kl5",
        }
    }

    pub fn evaluate(self, mu: f64, p: f64) -> Result<f64> {
        check_unit("p", p)?;
        check_unit("mu", mu)?;
        Ok(self.eval_unchecked(mu, p))
    }

    #[inline]
    fn eval_unchecked(self, mu: f64, p: f64) -> f64 {
        let q = 1.0 - p;
        let nu = 1.0 - mu;
        // p(0|0): the chain stays error-free.
        let a = q * nu + mu;
        let pf = match self {
            // Sum of the four correctable chain paths (III, XII, IXI, IIX),
            // simplified. At μ = 0 this is 3p² − 2p³ and at μ = 1 it is p.
            CodeFailureFormula::Rep3 => (3.0 * p * p - 2.0 * p * p * p) * nu * nu + p * mu * (2.0 - mu),
            CodeFailureFormula::Dfs2BitFlip => 2.0 * q * p * nu,
            CodeFailureFormula::Dfs2Depolarizing3 => {
                1.0 - q * a - (p / 3.0) * ((p / 3.0) * nu + mu)
            }
            CodeFailureFormula::Kl5 => {
                1.0 - 3.0 * q * q * p * nu * nu * a * a
                    - 2.0 * q * p * nu * a * a * a
                    - q * a * a * a * a
            }
        };
        pf.clamp(0.0, 1.0)
    }
}

impl fmt::Display for CodeFailureFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl core::str::FromStr for CodeFailureFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CodeFailureFormula::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "unknown formula {s:?}; expected rep3, dfs2-bitflip, dfs2-depolarizing3 or kl5"
                ))
            })
    }
}

pub fn standalone_pf(code: CodeFailureFormula, mu: f64, p: f64) -> Result<f64> {
    code.evaluate(mu, p)
}

/// Layer recursion, outermost layer first: the innermost layer sees `(μ, p)`,
/// every outer layer sees `(0, failure of the layer below)`.
pub fn concat_pf(layers: &[CodeFailureFormula], mu: f64, p: f64) -> Result<f64> {
    let Some((inner, outer)) = layers.split_last() else {
        return Err(Error::Domain("at least one layer is required".into()));
    };
    let mut pf = inner.evaluate(mu, p)?;
    for layer in outer.iter().rev() {
        pf = layer.eval_unchecked(0.0, pf);
    }
    Ok(pf)
}

/// `F_e = 1 - p_F`.
pub fn entanglement_fidelity(pf: f64) -> Result<f64> {
    check_unit("failure probability", pf)?;
    Ok(1.0 - pf)
}

/// `P(block 1 ∈ {II,XX} | block 2 ∈ {II,XX})` for two adjacent two-qubit
/// blocks when the bit-flip chain runs across both (qubits `1a,1b,2a,2b`),
/// by enumeration of all 16 patterns.
pub fn cross_block_correlation(p: f64, mu: f64) -> Result<f64> {
    let model = NoiseModel::new(p, mu, Alphabet::BitFlip)?;
    let (mut joint, mut second) = (0.0, 0.0);
    for pattern in 0..16usize {
        let letters = [pattern >> 3 & 1, pattern >> 2 & 1, pattern >> 1 & 1, pattern & 1];
        let prob = model.sequence_probability(&letters)?;
        let b2 = letters[2] == letters[3];
        if b2 {
            second += prob;
            if letters[0] == letters[1] {
                joint += prob;
            }
        }
    }
    Ok(joint / second)
}

/// The same quantity in closed form.
pub fn cross_block_correlation_closed_form(p: f64, mu: f64) -> Result<f64> {
    check_unit("p", p)?;
    check_unit("mu", mu)?;
    let m1 = mu - 1.0;
    let num = 1.0
        - (1.0 - p)
            * p
            * (1.0 - mu)
            * (4.0 - 4.0 * p * m1 * m1 + 4.0 * p * p * m1 * m1 + m1 * mu);
    let den = ((1.0 - mu) * (1.0 - p) + mu) * (1.0 - p) + ((1.0 - mu) * p + mu) * p;
    Ok(num / den)
}

/// Outcome of a pseudothreshold search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Threshold {
    Crossing(f64),
    NoCrossing,
}

impl Threshold {
    pub fn value(self) -> Option<f64> {
        match self {
            Threshold::Crossing(p) => Some(p),
            Threshold::NoCrossing => None,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Crossing(p) => write!(f, "{p}"),
            Threshold::NoCrossing => f.write_str("no-crossing"),
        }
    }
}

pub const THRESHOLD_GRID: f64 = 1e-3;
pub const THRESHOLD_TOLERANCE: f64 = 1e-9;

/// Largest root of `pf(p) = p` in `(0, 0.5)`: the last sign change of
/// `pf(p) - p` on a `1e-3` grid, refined by bisection to `1e-9`.
pub fn pseudothreshold<F: Fn(f64) -> f64>(pf: F) -> Threshold {
    let g = |p: f64| pf(p) - p;
    let steps = libm::round(0.5 / THRESHOLD_GRID) as usize;
    let grid = |i: usize| i as f64 * THRESHOLD_GRID;
    let mut bracket = None;
    let mut prev = g(grid(1));
    if prev == 0.0 {
        bracket = Some((grid(1), grid(1)));
    }
    for i in 2..steps {
        let cur = g(grid(i));
        if cur == 0.0 {
            bracket = Some((grid(i), grid(i)));
        } else if prev != 0.0 && (prev < 0.0) != (cur < 0.0) {
            bracket = Some((grid(i - 1), grid(i)));
        }
        prev = cur;
    }
    let Some((mut lo, mut hi)) = bracket else {
        return Threshold::NoCrossing;
    };
    let lo_negative = g(lo) < 0.0;
    while hi - lo > THRESHOLD_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        let v = g(mid);
        if v == 0.0 {
            return Threshold::Crossing(mid);
        }
        if (v < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Threshold::Crossing(0.5 * (lo + hi))
}

/// `depth`-fold self-composition of `pf`.
pub fn depth_recursion<F: Fn(f64) -> f64>(pf: F, depth: usize) -> Result<impl Fn(f64) -> f64> {
    if depth == 0 {
        return Err(Error::Domain("depth must be at least 1".into()));
    }
    Ok(move |p: f64| (0..depth).fold(p, |x, _| pf(x)))
}
