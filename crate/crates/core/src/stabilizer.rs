//! Stabilizer codes: validation, syndromes, classification and degeneracy.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliString, Phase};
use crate::symplectic::{self, RowSpace};

/// Generator counts are bounded by the width of a syndrome word.
pub const MAX_GENERATORS: usize = 64;

/// Syndrome bits; bit `i` is the outcome of generator `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syndrome {
    bits: u64,
    len: u8,
}

impl Syndrome {
    pub fn new(bits: u64, len: usize) -> Syndrome {
        debug_assert!(len <= MAX_GENERATORS);
        Syndrome {
            bits,
            len: len as u8,
        }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn to_vec(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.bit(i) as u8).collect()
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Syndrome({self})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    /// In the stabilizer group (up to phase); acts trivially on the code space.
    Stabilizer,
    /// Nonzero syndrome with an entry in a decoder table.
    CorrectableInTable,
    /// Nonzero syndrome.
    Detectable,
    /// Zero syndrome but outside the stabilizer group: an undetectable logical error.
    Logical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ErrorClassification {
    pub kind: ErrorKind,
    pub syndrome: Syndrome,
}

/// One failed invariant found by [`StabilizerCode::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WrongLength { what: &'static str, index: usize, n: usize },
    Anticommuting { first: usize, second: usize },
    /// `generator` is the product of the earlier generators in `combination`.
    Dependent { generator: usize, combination: Vec<usize> },
    RankMismatch { rank: usize, expected: usize },
    /// A product of the listed generators equals `-I` (or `±iI`).
    MinusIdentity { generators: Vec<usize> },
    LogicalCount { logical_x: usize, logical_z: usize, k: usize },
    LogicalAnticommutesWithGenerator { logical: String, generator: usize },
    LogicalPairCommutes { index: usize },
    LogicalCrossAnticommutes { first: String, second: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongLength { what, index, n } => {
                write!(f, "{what} {index} does not act on {n} qubits")
            }
            Violation::Anticommuting { first, second } => {
                write!(f, "generators {first} and {second} anticommute")
            }
            Violation::Dependent {
                generator,
                combination,
            } => write!(
                f,
                "generator {generator} is the product of generators {combination:?}"
            ),
            Violation::RankMismatch { rank, expected } => {
                write!(f, "generator rank {rank}, expected n-k = {expected}")
            }
            Violation::MinusIdentity { generators } => {
                write!(f, "generators {generators:?} multiply to a nontrivial multiple of I")
            }
            Violation::LogicalCount {
                logical_x,
                logical_z,
                k,
            } => write!(f, "{logical_x} logical X and {logical_z} logical Z for k = {k}"),
            Violation::LogicalAnticommutesWithGenerator { logical, generator } => {
                write!(f, "logical {logical} anticommutes with generator {generator}")
            }
            Violation::LogicalPairCommutes { index } => {
                write!(f, "logical X{index} commutes with logical Z{index}")
            }
            Violation::LogicalCrossAnticommutes { first, second } => {
                write!(f, "logicals {first} and {second} anticommute")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// An `[[n, k]]` stabilizer code with a passive/active split of its generators.
#[derive(Clone, Debug)]
pub struct StabilizerCode {
    name: String,
    n: usize,
    k: usize,
    generators: Vec<PauliString>,
    logical_x: Vec<PauliString>,
    logical_z: Vec<PauliString>,
    passive: Vec<bool>,
    span: RowSpace,
}

impl PartialEq for StabilizerCode {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.n == other.n
            && self.k == other.k
            && self.generators == other.generators
            && self.logical_x == other.logical_x
            && self.logical_z == other.logical_z
            && self.passive == other.passive
    }
}

impl StabilizerCode {
    /// Assembles a code. Only shapes are checked here; the algebraic
    /// invariants are reported by [`validate`](Self::validate).
    pub fn new(
        name: impl Into<String>,
        n: usize,
        k: usize,
        generators: Vec<PauliString>,
        logical_x: Vec<PauliString>,
        logical_z: Vec<PauliString>,
        passive: Vec<bool>,
    ) -> Result<Self> {
        if n == 0 || n > crate::pauli::MAX_QUBITS {
            return Err(Error::Capacity {
                what: "qubit count",
                requested: n,
                max: crate::pauli::MAX_QUBITS,
            });
        }
        if k > n {
            return Err(Error::Structure(format!("k = {k} exceeds n = {n}")));
        }
        if generators.len() > MAX_GENERATORS {
            return Err(Error::Capacity {
                what: "generator count",
                requested: generators.len(),
                max: MAX_GENERATORS,
            });
        }
        if passive.len() != generators.len() {
            return Err(Error::Structure(format!(
                "{} passive flags for {} generators",
                passive.len(),
                generators.len()
            )));
        }
        for p in generators.iter().chain(&logical_x).chain(&logical_z) {
            if p.n() != n {
                return Err(Error::Dimension {
                    left: n,
                    right: p.n(),
                });
            }
        }
        let mut span = RowSpace::default();
        for (i, g) in generators.iter().enumerate() {
            let _ = span.insert(g.symplectic(), i);
        }
        Ok(StabilizerCode {
            name: name.into(),
            n,
            k,
            generators,
            logical_x,
            logical_z,
            passive,
            span,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn logical_x(&self) -> &[PauliString] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliString] {
        &self.logical_z
    }

    pub fn passive_mask(&self) -> &[bool] {
        &self.passive
    }

    /// `true` when there is at least one generator and every generator is passive.
    pub fn is_passive(&self) -> bool {
        !self.generators.is_empty() && self.passive.iter().all(|&p| p)
    }

    pub fn passive_generators(&self) -> impl Iterator<Item = &PauliString> {
        self.generators
            .iter()
            .zip(&self.passive)
            .filter_map(|(g, &p)| p.then_some(g))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.n;
        let gens = &self.generators;
        let lengths = gens
            .iter()
            .map(|g| ("generator", g))
            .enumerate()
            .chain(self.logical_x.iter().map(|g| ("logical X", g)).enumerate())
            .chain(self.logical_z.iter().map(|g| ("logical Z", g)).enumerate());
        for (index, (what, p)) in lengths {
            if p.n() != n {
                violations.push(Violation::WrongLength { what, index, n });
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }

        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if !gens[i].commutes_same_len(&gens[j]) {
                    violations.push(Violation::Anticommuting {
                        first: i,
                        second: j,
                    });
                }
            }
        }

        let mut span = RowSpace::default();
        for (i, g) in gens.iter().enumerate() {
            if !g.phase().is_real() {
                // (i^{±1} P)^2 = -I.
                violations.push(Violation::MinusIdentity { generators: vec![i] });
            }
            if let Err(combo) = span.insert(g.symplectic(), i) {
                let combination: Vec<usize> = (0..i).filter(|j| combo >> j & 1 == 1).collect();
                violations.push(Violation::Dependent {
                    generator: i,
                    combination: combination.clone(),
                });
                let product = combination
                    .iter()
                    .fold(*g, |acc, &j| acc.mul_same_len(&gens[j]));
                if product.phase() != Phase::PLUS_ONE {
                    let mut all = combination;
                    all.push(i);
                    violations.push(Violation::MinusIdentity { generators: all });
                }
            }
        }
        if span.rank() != n - self.k.min(n) {
            violations.push(Violation::RankMismatch {
                rank: span.rank(),
                expected: n - self.k,
            });
        }

        if self.logical_x.len() != self.k || self.logical_z.len() != self.k {
            violations.push(Violation::LogicalCount {
                logical_x: self.logical_x.len(),
                logical_z: self.logical_z.len(),
                k: self.k,
            });
        }
        let named: Vec<(String, &PauliString)> = self
            .logical_x
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("X{i}"), p))
            .chain(
                self.logical_z
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (format!("Z{i}"), p)),
            )
            .collect();
        for (label, l) in &named {
            for (gi, g) in gens.iter().enumerate() {
                if !l.commutes_same_len(g) {
                    violations.push(Violation::LogicalAnticommutesWithGenerator {
                        logical: label.clone(),
                        generator: gi,
                    });
                }
            }
        }
        for (i, (lx, lz)) in self.logical_x.iter().zip(&self.logical_z).enumerate() {
            if lx.commutes_same_len(lz) {
                violations.push(Violation::LogicalPairCommutes { index: i });
            }
        }
        for a in 0..named.len() {
            for b in a + 1..named.len() {
                let (la, pa) = &named[a];
                let (lb, pb) = &named[b];
                let partners = la[1..] == lb[1..] && la[..1] != lb[..1];
                if !partners && !pa.commutes_same_len(pb) {
                    violations.push(Violation::LogicalCrossAnticommutes {
                        first: la.clone(),
                        second: lb.clone(),
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    fn check_len(&self, p: &PauliString) -> Result<()> {
        if p.n() != self.n {
            Err(Error::Dimension {
                left: self.n,
                right: p.n(),
            })
        } else {
            Ok(())
        }
    }

    pub fn syndrome(&self, error: &PauliString) -> Result<Syndrome> {
        self.check_len(error)?;
        Ok(self.syndrome_unchecked(error))
    }

    #[inline]
    pub(crate) fn syndrome_unchecked(&self, error: &PauliString) -> Syndrome {
        let mut bits = 0u64;
        for (i, g) in self.generators.iter().enumerate() {
            bits |= (!g.commutes_same_len(error) as u64) << i;
        }
        Syndrome::new(bits, self.generators.len())
    }

    /// Membership in the stabilizer group is decided modulo phase.
    pub fn classify(&self, error: &PauliString) -> Result<ErrorClassification> {
        self.check_len(error)?;
        Ok(self.classify_unchecked(error))
    }

    #[inline]
    pub(crate) fn classify_unchecked(&self, error: &PauliString) -> ErrorClassification {
        let syndrome = self.syndrome_unchecked(error);
        let kind = if !syndrome.is_zero() {
            ErrorKind::Detectable
        } else if self.span.contains(error.symplectic()) {
            ErrorKind::Stabilizer
        } else {
            ErrorKind::Logical
        };
        ErrorClassification { kind, syndrome }
    }

    /// Whether `a·b` lies in the stabilizer group (up to phase).
    pub fn are_degenerate(&self, a: &PauliString, b: &PauliString) -> Result<bool> {
        self.check_len(a)?;
        let product = a.multiply(b)?;
        Ok(self.classify_unchecked(&product).kind == ErrorKind::Stabilizer)
    }

    /// Exact phase relation with the group: `Some(φ)` when `error = i^φ · s`
    /// for a group element `s`, `None` when `error` is not in the group up to phase.
    pub fn stabilizer_phase(&self, error: &PauliString) -> Result<Option<Phase>> {
        self.check_len(error)?;
        let (residual, combo) = self.span.reduce(error.symplectic());
        if residual != 0 {
            return Ok(None);
        }
        let element = self.group_element(combo);
        Ok(Some(error.phase().add(element.phase().neg())))
    }

    /// Product of the generators selected by `mask`, in increasing index order.
    pub fn group_element(&self, mask: u64) -> PauliString {
        self.generators
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(PauliString::identity(self.n).unwrap(), |acc, (_, g)| {
                acc.mul_same_len(g)
            })
    }

    /// All `2^r` products of generators, indexed by generator subset mask.
    pub fn group_elements(&self) -> Result<Vec<PauliString>> {
        group_elements(self.n, &self.generators)
    }

    /// Canonical realization of a logical label on logical qubit `index`:
    /// `X̄`, `Z̄`, `Ȳ = i·X̄·Z̄` and identity.
    pub fn logical_operator(&self, index: usize, letter: Letter) -> Result<PauliString> {
        if index >= self.k || index >= self.logical_x.len() || index >= self.logical_z.len() {
            return Err(Error::QubitIndex {
                index,
                n: self.k,
            });
        }
        let x = self.logical_x[index];
        let z = self.logical_z[index];
        Ok(match letter {
            Letter::I => PauliString::identity(self.n)?,
            Letter::X => x,
            Letter::Z => z,
            Letter::Y => {
                let xz = x.mul_same_len(&z);
                xz.with_phase(xz.phase().add(Phase::PLUS_I))
            }
        })
    }
}

/// All products of `generators` (which must number at most 20), by subset mask.
pub fn group_elements(n: usize, generators: &[PauliString]) -> Result<Vec<PauliString>> {
    if generators.len() > 20 {
        return Err(Error::Capacity {
            what: "generator count for group enumeration",
            requested: generators.len(),
            max: 20,
        });
    }
    let mut elements = vec![PauliString::identity(n)?];
    for g in generators {
        if g.n() != n {
            return Err(Error::Dimension {
                left: n,
                right: g.n(),
            });
        }
        let doubled: Vec<PauliString> = elements.iter().map(|e| e.mul_same_len(g)).collect();
        elements.extend(doubled);
    }
    Ok(elements)
}

/// Completes `generators` with logical operator pairs by symplectic
/// Gram–Schmidt on their commutant. Returns `(logical_x, logical_z)`.
pub fn complete_logicals(
    n: usize,
    generators: &[PauliString],
) -> Result<(Vec<PauliString>, Vec<PauliString>)> {
    let rows: Vec<u128> = generators.iter().map(|g| g.symplectic()).collect();
    let basis = symplectic::commutant_basis(n, &rows);
    let pairs = symplectic::symplectic_pairs(basis);
    Ok(pairs
        .into_iter()
        .map(|(x, z)| {
            (
                PauliString::from_symplectic(n, x, Phase::PLUS_ONE),
                PauliString::from_symplectic(n, z, Phase::PLUS_ONE),
            )
        })
        .unzip())
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &str = "repetition-3, knill-laflamme-5, dfs-2";

/// The base codes: bit-flip repetition, five-qubit code and two-qubit DFS.
pub fn builtin(name: &str) -> Result<StabilizerCode> {
    let parse = |labels: &[&str]| crate::pauli::parse_all(labels.iter().copied());
    match name {
        "repetition-3" => StabilizerCode::new(
            name,
            3,
            1,
            parse(&["ZZI", "ZIZ"])?,
            parse(&["XXX"])?,
            parse(&["ZII"])?,
            vec![false; 2],
        ),
        "knill-laflamme-5" => StabilizerCode::new(
            name,
            5,
            1,
            parse(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"])?,
            parse(&["XXXXX"])?,
            parse(&["ZZZZZ"])?,
            vec![false; 4],
        ),
        "dfs-2" => StabilizerCode::new(
            name,
            2,
            1,
            parse(&["XX"])?,
            parse(&["XI"])?,
            parse(&["ZZ"])?,
            vec![true],
        ),
        _ => Err(Error::UnknownCode {
            name: name.to_string(),
            valid: BUILTIN_NAMES,
        }),
    }
}

/// Pauli errors of exactly `weight` on `n` qubits: supports in lexicographic
/// order, then letters in `X < Y < Z` order per support.
pub fn errors_of_weight(n: usize, weight: usize) -> impl Iterator<Item = PauliString> {
    let supports = Combinations::new(n, weight);
    supports.flat_map(move |support| {
        let count = 3usize.pow(support.len() as u32);
        (0..count).map(move |mut code| {
            let mut letters = vec![Letter::I; n];
            for &q in support.iter().rev() {
                letters[q] = [Letter::X, Letter::Y, Letter::Z][code % 3];
                code /= 3;
            }
            PauliString::from_letters(&letters).unwrap()
        })
    })
}

struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
