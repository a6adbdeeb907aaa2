//! The four concrete codes `qd6`, `dq6`, `qd10` and `dq10`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::analytic::{concat_pf, Alphabet, CodeFailureFormula};
use crate::concat::{ConcatSpec, Order};
use crate::encoding::{dq10_encoder, dq6_encoder, qd10_encoder, qd6_encoder, Encoder};
use crate::error::{Error, Result};
use crate::stabilizer::builtin;
use crate::statevec::StateVector;

/// How the outer two-qubit DFS layer of `dq10` is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Dq10Variant {
    /// Full three-letter DFS formula at `μ = 0`: `1 - (1-r)² - r²/9`.
    #[default]
    Literal,
    /// Simplified `(2/3)·r·(1-r)`.
    Printed,
}

/// Which DFS failure the inner layer of `qd10` uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Qd10Inner {
    /// Three-letter DFS formula, consistent with the noise model.
    #[default]
    Depolarizing3,
    /// Bit-flip DFS formula `2p(1-p)(1-μ)`.
    BitFlip,
}

impl Dq10Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Dq10Variant::Literal => "literal",
            Dq10Variant::Printed => "printed",
        }
    }
}

impl Qd10Inner {
    pub fn as_str(self) -> &'static str {
        match self {
            Qd10Inner::Depolarizing3 => "depolarizing3",
            Qd10Inner::BitFlip => "bitflip",
        }
    }
}

impl core::str::FromStr for Dq10Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(Dq10Variant::Literal),
            "printed" => Ok(Dq10Variant::Printed),
            _ => Err(Error::Domain(format!("variant must be literal or printed, got {s:?}"))),
        }
    }
}

impl core::str::FromStr for Qd10Inner {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "depolarizing3" => Ok(Qd10Inner::Depolarizing3),
            "bitflip" => Ok(Qd10Inner::BitFlip),
            _ => Err(Error::Domain(format!(
                "qd10 inner variant must be depolarizing3 or bitflip, got {s:?}"
            ))),
        }
    }
}

/// Formula choices for the ten-qubit codes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct VariantPolicy {
    pub dq10: Dq10Variant,
    pub qd10_inner: Qd10Inner,
}

impl VariantPolicy {
    /// The choices that reproduce the reference pseudothreshold table.
    pub const TABLE: VariantPolicy = VariantPolicy {
        dq10: Dq10Variant::Literal,
        qd10_inner: Qd10Inner::BitFlip,
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Qd6,
    Dq6,
    Qd10,
    Dq10,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Qd6, Family::Dq6, Family::Qd10, Family::Dq10];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Qd6 => "qd6",
            Family::Dq6 => "dq6",
            Family::Qd10 => "qd10",
            Family::Dq10 => "dq10",
        }
    }

    /// `[[n,1]]_QD` style label.
    pub fn label(self) -> &'static str {
        match self {
            Family::Qd6 => "[[6,1]]_QD",
            Family::Dq6 => "[[6,1]]_DQ",
            Family::Qd10 => "[[10,1]]_QD",
            Family::Dq10 => "[[10,1]]_DQ",
        }
    }

    pub fn order(self) -> Order {
        match self {
            Family::Qd6 | Family::Qd10 => Order::Qd,
            Family::Dq6 | Family::Dq10 => Order::Dq,
        }
    }

    /// Name of the active base code.
    pub fn qecc(self) -> &'static str {
        match self {
            Family::Qd6 | Family::Dq6 => "repetition-3",
            Family::Qd10 | Family::Dq10 => "knill-laflamme-5",
        }
    }

    pub fn spec(self) -> Result<ConcatSpec> {
        let (q, d) = (builtin(self.qecc())?, builtin("dfs-2")?);
        match self.order() {
            Order::Qd => ConcatSpec::new(q, d, Order::Qd),
            Order::Dq => ConcatSpec::new(d, q, Order::Dq),
        }
    }

    /// Error alphabet the analytic formulas of this code assume.
    pub fn alphabet(self) -> Alphabet {
        match self {
            Family::Qd6 | Family::Dq6 => Alphabet::BitFlip,
            Family::Qd10 | Family::Dq10 => Alphabet::Depolarizing3,
        }
    }

    /// Error types handled: single-qubit letters and the collective pair error.
    pub fn e_type(self) -> &'static [&'static str] {
        match self {
            Family::Qd6 | Family::Dq6 => &["X", "XX"],
            Family::Qd10 | Family::Dq10 => &["X", "Y", "Z", "XX"],
        }
    }

    /// Layers of the failure recursion, outermost first.
    pub fn layers(self, policy: VariantPolicy) -> Vec<CodeFailureFormula> {
        use CodeFailureFormula::*;
        match self {
            Family::Qd6 => alloc::vec![Rep3, Dfs2BitFlip],
            Family::Dq6 => alloc::vec![Dfs2BitFlip, Rep3],
            Family::Qd10 => match policy.qd10_inner {
                Qd10Inner::Depolarizing3 => alloc::vec![Kl5, Dfs2Depolarizing3],
                Qd10Inner::BitFlip => alloc::vec![Kl5, Dfs2BitFlip],
            },
            Family::Dq10 => alloc::vec![Dfs2Depolarizing3, Kl5],
        }
    }

    /// Failure probability of the two-layer code at `(μ, p)`.
    pub fn failure_probability(self, mu: f64, p: f64, policy: VariantPolicy) -> Result<f64> {
        if self == Family::Dq10 && policy.dq10 == Dq10Variant::Printed {
            let r = CodeFailureFormula::Kl5.evaluate(mu, p)?;
            return Ok(2.0 / 3.0 * r * (1.0 - r));
        }
        concat_pf(&self.layers(policy), mu, p)
    }

    /// Failure probability after `depth` levels: the two-layer code at
    /// `(μ, p)`, then `depth - 1` further self-concatenations at `μ = 0`.
    pub fn depth_failure_probability(
        self,
        mu: f64,
        p: f64,
        depth: usize,
        policy: VariantPolicy,
    ) -> Result<f64> {
        if depth == 0 {
            return Err(Error::Domain("depth must be at least 1".into()));
        }
        let mut pf = self.failure_probability(mu, p, policy)?;
        for _ in 1..depth {
            pf = self.failure_probability(0.0, pf, policy)?;
        }
        Ok(pf)
    }

    pub fn encoder(self) -> Result<Encoder> {
        match self {
            Family::Qd6 => qd6_encoder(),
            Family::Dq6 => dq6_encoder(),
            Family::Qd10 => qd10_encoder(),
            Family::Dq10 => dq10_encoder(),
        }
    }

    /// Encoded `|0⟩` and `|1⟩`.
    pub fn codewords(self) -> Result<[StateVector; 2]> {
        let enc = self.encoder()?;
        Ok([enc.logical(0)?, enc.logical(1)?])
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::UnknownCode {
                name: s.into(),
                valid: "qd6, dq6, qd10, dq10",
            })
    }
}
