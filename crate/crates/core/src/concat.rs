//! Two-layer QD/DQ concatenation: generators, equivalence classes, efficiencies
//! and the lookup decoder.
//!
//! Qubits are numbered block by block: block `b` of an `n_i`-qubit inner code
//! occupies qubits `b·n_i .. (b+1)·n_i`, so the labels `(1a,1b),(2a,2b),…`
//! read left to right in every operator string.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliString, Phase};
use crate::stabilizer::{
    errors_of_weight, group_elements, ErrorClassification, ErrorKind, StabilizerCode, Syndrome,
};

/// Largest syndrome width the dense decoder table accepts.
pub const MAX_TABLE_BITS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    /// Active outer code, decoherence-free inner code.
    Qd,
    /// Decoherence-free outer code, active inner code.
    Dq,
}

impl Order {
    pub fn as_str(self) -> &'static str {
        match self {
            Order::Qd => "qd",
            Order::Dq => "dq",
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Order> {
        match s.to_ascii_lowercase().as_str() {
            "qd" => Ok(Order::Qd),
            "dq" => Ok(Order::Dq),
            _ => Err(Error::Domain(format!("order must be qd or dq, got {s:?}"))),
        }
    }
}

/// `[[n_cc, k_cc]]` of a concatenation: `[[n_o·n_i/k_i, k_o]]` when `k_i | n_o`,
/// otherwise `[[n_o·n_i, k_o·k_i]]`.
pub fn concat_size(n_o: usize, k_o: usize, n_i: usize, k_i: usize) -> Result<(usize, usize)> {
    if n_o == 0 || k_o == 0 || n_i == 0 || k_i == 0 {
        return Err(Error::Domain("code parameters must be positive".into()));
    }
    if k_o > n_o || k_i > n_i {
        return Err(Error::Domain(format!(
            "k exceeds n in [[{n_o},{k_o}]] or [[{n_i},{k_i}]]"
        )));
    }
    if n_o % k_i == 0 {
        Ok((n_o * n_i / k_i, k_o))
    } else {
        Ok((n_o * n_i, k_o * k_i))
    }
}

/// A validated pair of codes and the block layout of their concatenation.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcatSpec {
    outer: StabilizerCode,
    inner: StabilizerCode,
    order: Order,
    blocks: Vec<Range<usize>>,
    n_cc: usize,
    k_cc: usize,
}

impl ConcatSpec {
    pub fn new(outer: StabilizerCode, inner: StabilizerCode, order: Order) -> Result<Self> {
        for code in [&outer, &inner] {
            let report = code.validate();
            if let Some(v) = report.violations.first() {
                return Err(Error::Structure(format!("{}: {v}", code.name())));
            }
        }
        if inner.k() != 1 {
            return Err(Error::Unsupported(format!(
                "inner code {} has k = {}; only k = 1 inner codes are assembled",
                inner.name(),
                inner.k()
            )));
        }
        match order {
            Order::Qd if !inner.is_passive() => {
                return Err(Error::Structure(format!(
                    "QD order needs a decoherence-free inner code; {} has active generators",
                    inner.name()
                )))
            }
            Order::Dq if !outer.is_passive() => {
                return Err(Error::Structure(format!(
                    "DQ order needs a decoherence-free outer code; {} has active generators",
                    outer.name()
                )))
            }
            _ => {}
        }
        let (n_cc, k_cc) = concat_size(outer.n(), outer.k(), inner.n(), inner.k())?;
        if n_cc > crate::pauli::MAX_QUBITS {
            return Err(Error::Capacity {
                what: "concatenated qubit count",
                requested: n_cc,
                max: crate::pauli::MAX_QUBITS,
            });
        }
        let ni = inner.n();
        let blocks = (0..outer.n()).map(|b| b * ni..(b + 1) * ni).collect();
        Ok(ConcatSpec {
            outer,
            inner,
            order,
            blocks,
            n_cc,
            k_cc,
        })
    }

    pub fn outer(&self) -> &StabilizerCode {
        &self.outer
    }

    pub fn inner(&self) -> &StabilizerCode {
        &self.inner
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.n_cc
    }

    pub fn k(&self) -> usize {
        self.k_cc
    }

    /// `qd[outer,inner]` or `dq[outer,inner]`.
    pub fn name(&self) -> String {
        format!("{}[{},{}]", self.order, self.outer.name(), self.inner.name())
    }

    /// Places an inner-code operator on block `b`.
    fn on_block(&self, op: &PauliString, b: usize) -> PauliString {
        op.embed(self.n_cc, self.blocks[b].start)
            .expect("block layout fits the concatenated code")
    }

    /// Encodes an outer-code operator: `phase(op) ⊗_b L_b(letter_b)`, using
    /// one realization per letter from `choose`.
    fn encode_outer(&self, op: &PauliString, choice: &[PauliString]) -> PauliString {
        let mut out = PauliString::identity(self.n_cc).unwrap().with_phase(op.phase());
        for (b, c) in choice.iter().enumerate() {
            out = out.mul_same_len(&self.on_block(c, b));
        }
        out
    }
}

/// Every realization of a logical label on a `k = 1` code: the canonical
/// operator times each stabilizer group element, in generator-mask order.
pub fn lift_logical(inner: &StabilizerCode, op: Letter) -> Result<Vec<PauliString>> {
    if inner.k() != 1 {
        return Err(Error::Unsupported(format!(
            "logical lifting needs k = 1, {} has k = {}",
            inner.name(),
            inner.k()
        )));
    }
    let canonical = inner.logical_operator(0, op)?;
    Ok(inner
        .group_elements()?
        .iter()
        .map(|s| canonical.mul_same_len(s))
        .collect())
}

/// Canonical logical times the group of the passive generators only.
fn passive_lift(inner: &StabilizerCode, op: Letter) -> Result<Vec<PauliString>> {
    let canonical = inner.logical_operator(0, op)?;
    if op == Letter::I {
        return Ok(vec![canonical]);
    }
    let passive: Vec<PauliString> = inner.passive_generators().copied().collect();
    Ok(group_elements(inner.n(), &passive)?
        .iter()
        .map(|s| canonical.mul_same_len(s))
        .collect())
}

/// Cartesian product with the first factor varying slowest.
fn cross<T: Clone>(factors: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for f in factors {
        out = out
            .iter()
            .flat_map(|prefix| {
                f.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSource {
    /// Copy of inner generator `generator` on block `block`.
    Block { block: usize, generator: usize },
    /// Encoded outer generator `generator`.
    Lifted { generator: usize },
}

/// Degenerate realizations of one stabilizer generator.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorClass {
    pub representatives: Vec<PauliString>,
    pub passive: bool,
    pub source: GeneratorSource,
}

impl GeneratorClass {
    /// The first representative: the product of canonical inner logicals.
    pub fn canonical(&self) -> &PauliString {
        &self.representatives[0]
    }
}

/// Blockwise copies of the inner generators followed by the encoded outer
/// generators. In an encoded generator each non-identity letter ranges over
/// its canonical logical times the inner passive group.
pub fn build_generators(spec: &ConcatSpec) -> Result<Vec<GeneratorClass>> {
    let inner = &spec.inner;
    let mut classes = Vec::new();
    for b in 0..spec.blocks.len() {
        for (gi, g) in inner.generators().iter().enumerate() {
            classes.push(GeneratorClass {
                representatives: vec![spec.on_block(g, b)],
                passive: inner.passive_mask()[gi],
                source: GeneratorSource::Block {
                    block: b,
                    generator: gi,
                },
            });
        }
    }
    let lifts: Vec<Vec<PauliString>> = Letter::ALL
        .iter()
        .map(|&l| passive_lift(inner, l))
        .collect::<Result<_>>()?;
    for (oi, o) in spec.outer.generators().iter().enumerate() {
        let factors: Vec<Vec<PauliString>> = o
            .letters()
            .map(|l| lifts[l as usize].clone())
            .collect();
        let representatives = cross(&factors)
            .iter()
            .map(|choice| spec.encode_outer(o, choice))
            .collect();
        classes.push(GeneratorClass {
            representatives,
            passive: spec.outer.passive_mask()[oi],
            source: GeneratorSource::Lifted { generator: oi },
        });
    }
    Ok(classes)
}

/// Disjoint sets of mutually degenerate correctable errors.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceClass {
    pub sets: Vec<Vec<PauliString>>,
}

impl EquivalenceClass {
    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    pub fn element_count(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &PauliString> {
        self.sets.iter().flatten()
    }
}

/// The errors a single code corrects on its own: the whole stabilizer group
/// for a decoherence-free code, otherwise one minimum-weight error per
/// syndrome (weight first, then support, then `X < Y < Z`).
pub fn correctable_errors(code: &StabilizerCode) -> Result<Vec<PauliString>> {
    if code.is_passive() {
        return code.group_elements();
    }
    let r = code.generators().len();
    if r > MAX_TABLE_BITS {
        return Err(Error::Capacity {
            what: "syndrome width",
            requested: r,
            max: MAX_TABLE_BITS,
        });
    }
    let mut seen = vec![false; 1 << r];
    let mut remaining = 1usize << r;
    let mut out = Vec::new();
    'outer: for w in 0..=code.n() {
        for e in errors_of_weight(code.n(), w) {
            let s = code.syndrome_unchecked(&e).bits() as usize;
            if !seen[s] {
                seen[s] = true;
                out.push(e);
                remaining -= 1;
                if remaining == 0 {
                    break 'outer;
                }
            }
        }
    }
    Ok(out)
}

/// QD: one set per outer-correctable error, each letter expanded by
/// [`lift_logical`]. DQ: one set per combination of inner-correctable errors,
/// multiplied by the encoded outer stabilizer group.
pub fn equivalence_classes(spec: &ConcatSpec) -> Result<EquivalenceClass> {
    let sets = match spec.order {
        Order::Qd => {
            let lifts: Vec<Vec<PauliString>> = Letter::ALL
                .iter()
                .map(|&l| lift_logical(&spec.inner, l))
                .collect::<Result<_>>()?;
            correctable_errors(&spec.outer)?
                .iter()
                .map(|e| {
                    let factors: Vec<Vec<PauliString>> =
                        e.letters().map(|l| lifts[l as usize].clone()).collect();
                    cross(&factors)
                        .iter()
                        .map(|choice| spec.encode_outer(e, choice))
                        .collect()
                })
                .collect()
        }
        Order::Dq => {
            let leaders = correctable_errors(&spec.inner)?;
            let encoded: Vec<PauliString> = spec
                .outer
                .group_elements()?
                .iter()
                .map(|g| {
                    let choice: Vec<PauliString> = g
                        .letters()
                        .map(|l| spec.inner.logical_operator(0, l))
                        .collect::<Result<_>>()?;
                    Ok(spec.encode_outer(g, &choice))
                })
                .collect::<Result<_>>()?;
            let factors = vec![leaders; spec.blocks.len()];
            cross(&factors)
                .iter()
                .map(|combo| {
                    let mut c = PauliString::identity(spec.n_cc)?;
                    for (b, e) in combo.iter().enumerate() {
                        c = c.mul_same_len(&spec.on_block(e, b));
                    }
                    Ok(encoded.iter().map(|g| g.mul_same_len(&c)).collect())
                })
                .collect::<Result<_>>()?
        }
    };
    Ok(EquivalenceClass { sets })
}

/// A Hamming efficiency: exact when the count is a power of two.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Efficiency {
    Rational { num: u64, den: u64 },
    Real(f64),
}

impl Efficiency {
    fn from_count(count: usize, redundancy: usize) -> Efficiency {
        if count.is_power_of_two() {
            let num = count.trailing_zeros() as u64;
            let den = redundancy as u64;
            let g = gcd(num, den);
            Efficiency::Rational {
                num: num / g,
                den: den / g,
            }
        } else {
            Efficiency::Real(libm::log2(count as f64) / redundancy as f64)
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            Efficiency::Rational { num, den } => num as f64 / den as f64,
            Efficiency::Real(v) => v,
        }
    }
}

impl fmt::Display for Efficiency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Efficiency::Rational { num, den: 1 } => write!(f, "{num}"),
            Efficiency::Rational { num, den } => write!(f, "{num}/{den}"),
            Efficiency::Real(v) => write!(f, "{v}"),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// `(φ, φ′) = (log2(#elements), log2(#sets)) / (n − k)`.
pub fn hamming_efficiency(
    class: &EquivalenceClass,
    n: usize,
    k: usize,
) -> Result<(Efficiency, Efficiency)> {
    if class.element_count() == 0 {
        return Err(Error::Domain("empty equivalence class".into()));
    }
    if n <= k {
        return Err(Error::Domain(format!("n = {n} must exceed k = {k}")));
    }
    Ok((
        Efficiency::from_count(class.element_count(), n - k),
        Efficiency::from_count(class.set_count(), n - k),
    ))
}

/// Syndrome-indexed corrections, one per equivalence set.
#[derive(Clone, Debug, PartialEq)]
pub struct DecoderTable {
    bits: usize,
    entries: Vec<Option<PauliString>>,
}

impl DecoderTable {
    /// Keys each set by its common syndrome on `code`; the value is the
    /// set's first element, or the identity for the zero syndrome.
    pub fn build(code: &StabilizerCode, class: &EquivalenceClass) -> Result<Self> {
        let bits = code.generators().len();
        if bits > MAX_TABLE_BITS {
            return Err(Error::Capacity {
                what: "syndrome width",
                requested: bits,
                max: MAX_TABLE_BITS,
            });
        }
        let mut entries = vec![None; 1 << bits];
        for (si, set) in class.sets.iter().enumerate() {
            let first = set
                .first()
                .ok_or_else(|| Error::Consistency(format!("equivalence set {si} is empty")))?;
            let s = code.syndrome(first)?;
            if let Some(e) = set.iter().find(|e| code.syndrome_unchecked(e) != s) {
                return Err(Error::Consistency(format!(
                    "set {si}: {e} and {first} have different syndromes"
                )));
            }
            let slot = &mut entries[s.bits() as usize];
            if slot.is_some() {
                return Err(Error::Consistency(format!(
                    "syndrome {s} claimed by two equivalence sets"
                )));
            }
            *slot = Some(if s.is_zero() {
                PauliString::identity(code.n())?
            } else {
                *first
            });
        }
        Ok(DecoderTable { bits, entries })
    }

    pub fn syndrome_bits(&self) -> usize {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lookup(&self, syndrome: Syndrome) -> Option<&PauliString> {
        self.entries.get(syndrome.bits() as usize)?.as_ref()
    }

    /// `(syndrome, correction)` pairs in syndrome order.
    pub fn entries(&self) -> impl Iterator<Item = (Syndrome, &PauliString)> {
        let bits = self.bits;
        self.entries
            .iter()
            .enumerate()
            .filter_map(move |(s, e)| e.as_ref().map(|e| (Syndrome::new(s as u64, bits), e)))
    }
}

/// A built concatenation with every derived structure cached.
#[derive(Clone, Debug)]
pub struct ConcatCode {
    spec: ConcatSpec,
    classes: Vec<GeneratorClass>,
    code: StabilizerCode,
    equivalence: EquivalenceClass,
    table: DecoderTable,
    passive_set: usize,
}

impl ConcatCode {
    pub fn build(spec: ConcatSpec) -> Result<Self> {
        let classes = build_generators(&spec)?;
        let generators: Vec<PauliString> = classes.iter().map(|c| *c.canonical()).collect();
        let passive: Vec<bool> = classes.iter().map(|c| c.passive).collect();
        let encode_logical = |ops: &[PauliString]| -> Result<Vec<PauliString>> {
            ops.iter()
                .map(|o| {
                    let choice: Vec<PauliString> = o
                        .letters()
                        .map(|l| spec.inner.logical_operator(0, l))
                        .collect::<Result<_>>()?;
                    Ok(spec.encode_outer(o, &choice))
                })
                .collect()
        };
        let logical_x = encode_logical(spec.outer.logical_x())?;
        let logical_z = encode_logical(spec.outer.logical_z())?;
        let code = StabilizerCode::new(
            spec.name(),
            spec.n_cc,
            spec.k_cc,
            generators,
            logical_x,
            logical_z,
            passive,
        )?;
        if let Some(v) = code.validate().violations.first() {
            return Err(Error::Consistency(format!("{}: {v}", code.name())));
        }
        let equivalence = equivalence_classes(&spec)?;
        let table = DecoderTable::build(&code, &equivalence)?;
        let passive_set = equivalence
            .sets
            .iter()
            .position(|s| code.syndrome_unchecked(&s[0]).is_zero())
            .ok_or_else(|| Error::Consistency("no equivalence set has zero syndrome".into()))?;
        Ok(ConcatCode {
            spec,
            classes,
            code,
            equivalence,
            table,
            passive_set,
        })
    }

    pub fn spec(&self) -> &ConcatSpec {
        &self.spec
    }

    pub fn generator_classes(&self) -> &[GeneratorClass] {
        &self.classes
    }

    /// The code with one canonical representative per generator class.
    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn equivalence_class(&self) -> &EquivalenceClass {
        &self.equivalence
    }

    pub fn decoder_table(&self) -> &DecoderTable {
        &self.table
    }

    /// The set of errors corrected without any syndrome.
    pub fn passive_set(&self) -> &[PauliString] {
        &self.equivalence.sets[self.passive_set]
    }

    pub fn hamming_efficiency(&self) -> (Efficiency, Efficiency) {
        hamming_efficiency(&self.equivalence, self.spec.n_cc, self.spec.k_cc)
            .expect("a built code has a nonempty class and n > k")
    }

    /// Like [`StabilizerCode::classify`], reporting table hits as
    /// [`ErrorKind::CorrectableInTable`].
    pub fn classify(&self, error: &PauliString) -> Result<ErrorClassification> {
        let mut c = self.code.classify(error)?;
        if c.kind == ErrorKind::Detectable && self.table.lookup(c.syndrome).is_some() {
            c.kind = ErrorKind::CorrectableInTable;
        }
        Ok(c)
    }

    /// Exact phase of a passive-set element relative to the stabilizer group.
    pub fn stabilizer_phase(&self, error: &PauliString) -> Result<Option<Phase>> {
        self.code.stabilizer_phase(error)
    }
}
