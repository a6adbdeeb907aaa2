use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qdconcat_core::analytic::Alphabet;
use qdconcat_core::concat::Order;
use qdconcat_core::family::{Dq10Variant, Family, Qd10Inner, VariantPolicy};

mod describe;
mod format;
mod montecarlo;
mod sweep;
mod verify;

/// Concatenated error-correcting / decoherence-free codes: construction,
/// failure-rate arithmetic, thresholds and Monte Carlo checks.
#[derive(Parser, Debug)]
#[command(name = "qdconcat", version, propagate_version = true)]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Base and concatenated code registry.
    Codes {
        #[command(subcommand)]
        action: CodesAction,
    },
    /// Assemble a two-layer concatenation from two base codes.
    Concat {
        #[command(subcommand)]
        action: ConcatAction,
    },
    /// Failure probability and entanglement fidelity over a p grid (CSV).
    Fidelity(FidelityArgs),
    /// Pseudothreshold of a concatenated code, optionally self-concatenated.
    Threshold(ThresholdArgs),
    /// Monte Carlo estimate of the logical failure rate.
    Mc {
        #[command(subcommand)]
        action: McAction,
    },
    /// Run the built-in check suites; exit status 1 on any failure.
    Verify(VerifyArgs),
    /// Efficiencies and pseudothresholds of the four codes (JSON).
    Table1,
    /// Decoherence-free subspaces of a Pauli error group.
    Dfs {
        #[command(subcommand)]
        action: DfsAction,
    },
}

#[derive(Subcommand, Debug)]
enum CodesAction {
    List,
    /// Describe a base code (repetition-3, knill-laflamme-5, dfs-2) or a
    /// concatenated code (qd6, dq6, qd10, dq10).
    Describe { name: String },
}

#[derive(Subcommand, Debug)]
enum ConcatAction {
    Build {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
        #[arg(long, value_parser = parse_order)]
        order: Order,
    },
}

#[derive(Subcommand, Debug)]
enum McAction {
    Run(McArgs),
}

#[derive(Subcommand, Debug)]
enum DfsAction {
    /// Characters, projector ranges and stabilizer form of a group.
    Build {
        /// Comma-separated group elements or generators, e.g. II,XX.
        #[arg(long, value_delimiter = ',', required = true)]
        group: Vec<String>,
        /// Only this character (index in generator-sign order).
        #[arg(long)]
        character: Option<usize>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct PolicyArgs {
    /// Outer DFS layer of dq10: full three-letter formula or the simplified form.
    #[arg(long, value_enum, default_value_t = VariantArg::Literal)]
    variant: VariantArg,
    /// Inner DFS failure used by qd10.
    #[arg(long = "qd10-inner", value_enum, default_value_t = InnerArg::Depolarizing3)]
    qd10_inner: InnerArg,
}

impl PolicyArgs {
    fn policy(self) -> VariantPolicy {
        VariantPolicy {
            dq10: match self.variant {
                VariantArg::Literal => Dq10Variant::Literal,
                VariantArg::Printed => Dq10Variant::Printed,
            },
            qd10_inner: match self.qd10_inner {
                InnerArg::Depolarizing3 => Qd10Inner::Depolarizing3,
                InnerArg::Bitflip => Qd10Inner::BitFlip,
            },
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum VariantArg {
    Literal,
    Printed,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum InnerArg {
    Depolarizing3,
    Bitflip,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum AlphabetArg {
    Bitflip,
    Depolarizing3,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SweepWord {
    Sweep,
}

#[derive(Args, Debug)]
struct FidelityArgs {
    /// Accepted for `fidelity sweep ...`; the sweep is the only mode.
    #[arg(value_enum, hide = true)]
    mode: Option<SweepWord>,
    #[arg(long, value_parser = parse_family)]
    code: Family,
    /// Correlation strengths, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "0", value_parser = parse_unit)]
    mu: Vec<f64>,
    #[arg(long, default_value_t = 0.0, value_parser = parse_unit)]
    pmin: f64,
    #[arg(long, default_value_t = 0.5, value_parser = parse_unit)]
    pmax: f64,
    #[arg(long, default_value_t = 0.01, value_parser = parse_step)]
    step: f64,
    #[command(flatten)]
    policy: PolicyArgs,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    #[arg(long, value_parser = parse_family)]
    code: Family,
    #[arg(long, default_value_t = 0.0, value_parser = parse_unit)]
    mu: f64,
    /// Levels of self-concatenation; crossings are reported for 1..=depth.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=16))]
    depth: u32,
    #[command(flatten)]
    policy: PolicyArgs,
}

#[derive(Args, Debug)]
struct McArgs {
    #[arg(long, value_parser = parse_family)]
    code: Family,
    #[arg(long, value_parser = parse_unit)]
    p: f64,
    #[arg(long, default_value_t = 0.0, value_parser = parse_unit)]
    mu: f64,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Error alphabet; defaults to the one the code's formulas assume.
    #[arg(long, value_enum)]
    alphabet: Option<AlphabetArg>,
    #[command(flatten)]
    policy: PolicyArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Suite {
    All,
    Pauli,
    Stabilizer,
    Concat,
    Codewords,
    Kl,
    Dfs,
    Analytic,
    Mc,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite_name: Option<Suite>,
    #[arg(long, value_enum)]
    suite: Option<Suite>,
    /// Restrict code-specific checks to one concatenated code.
    #[arg(long, value_parser = parse_family)]
    code: Option<Family>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_order(s: &str) -> Result<Order, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_unit(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0, 1]"))
    }
}

fn parse_step(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if v > 0.0 && v <= 1.0 {
        Ok(v)
    } else {
        Err(format!("step must be in (0, 1], got {v}"))
    }
}

/// Command result: text to emit and whether every check passed.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn json(value: &serde_json::Value) -> Result<Outcome> {
        Ok(Outcome {
            text: serde_json::to_string_pretty(value)? + "\n",
            ok: true,
        })
    }
}

fn alphabet(arg: Option<AlphabetArg>, code: Family) -> Alphabet {
    match arg {
        Some(AlphabetArg::Bitflip) => Alphabet::BitFlip,
        Some(AlphabetArg::Depolarizing3) => Alphabet::Depolarizing3,
        None => code.alphabet(),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Codes { action: CodesAction::List } => Outcome::json(&describe::list()?),
        Command::Codes {
            action: CodesAction::Describe { name },
        } => Outcome::json(&describe::describe(name)?),
        Command::Concat {
            action: ConcatAction::Build { outer, inner, order },
        } => Outcome::json(&describe::concat(outer, inner, *order)?),
        Command::Fidelity(a) => {
            if a.pmin > a.pmax {
                anyhow::bail!(Usage(format!("pmin {} exceeds pmax {}", a.pmin, a.pmax)));
            }
            Ok(Outcome {
                text: sweep::fidelity_csv(a.code, &a.mu, a.pmin, a.pmax, a.step, a.policy.policy())?,
                ok: true,
            })
        }
        Command::Threshold(a) => Outcome::json(&sweep::threshold(
            a.code,
            a.mu,
            a.depth as usize,
            a.policy.policy(),
        )?),
        Command::Mc {
            action: McAction::Run(a),
        } => Outcome::json(&montecarlo::run(
            a.code,
            a.p,
            a.mu,
            a.shots,
            a.seed,
            alphabet(a.alphabet, a.code),
            a.policy.policy(),
        )?),
        Command::Verify(a) => {
            let suite = match (a.suite_name, a.suite) {
                (Some(x), Some(y)) if x != y => {
                    anyhow::bail!(Usage("suite given twice with different values".into()))
                }
                (x, y) => x.or(y).unwrap_or(Suite::All),
            };
            verify::run(suite, a.code)
        }
        Command::Table1 => Outcome::json(&sweep::table1()?),
        Command::Dfs {
            action: DfsAction::Build { group, character },
        } => Outcome::json(&describe::dfs(group, *character)?),
    }
}

/// A flag combination clap cannot reject on its own.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Core errors that can only come from what the user typed.
fn bad_input(e: &qdconcat_core::Error) -> bool {
    use qdconcat_core::Error::*;
    matches!(
        e,
        Parse { .. } | EmptyLabel | Dimension { .. } | Capacity { .. } | UnknownCode { .. } | QubitIndex { .. } | Structure(_) | Domain(_)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<Usage>().is_some() || e.downcast_ref().is_some_and(bad_input);
            return ExitCode::from(if usage { 2 } else { 1 });
        }
    };
    if let Err(e) = emit(cli.out.as_ref(), &outcome.text) {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
