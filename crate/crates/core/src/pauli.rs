//! Pauli strings over at most [`MAX_QUBITS`] qubits.
//!
//! A string is stored as two packed bit words (`x`, `z`; bit `q` is qubit `q`)
//! plus a phase exponent `e` so that the operator is `i^e · σ_0 ⊗ … ⊗ σ_{n-1}`
//! with `σ ∈ {I, X, Y, Z}`. The letter `Y` is the Hermitian Pauli `Y = i·XZ`, so
//! the canonical text form never needs a hidden sign: `"-YY"` parses to phase
//! `-1` and prints back as `"-YY"`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported qubit count; one machine word per bit vector.
pub const MAX_QUBITS: usize = 64;

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Power of `i` in `{0, 1, 2, 3}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(u8);

impl Phase {
    pub const PLUS_ONE: Phase = Phase(0);
    pub const PLUS_I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub const fn from_exponent(e: u32) -> Phase {
        Phase((e % 4) as u8)
    }

    pub const fn exponent(self) -> u8 {
        self.0
    }

    pub const fn add(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }

    pub const fn neg(self) -> Phase {
        Phase((4 - self.0) % 4)
    }

    /// `true` for `±1`.
    pub const fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    fn prefix(self) -> &'static str {
        match self.0 {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

    pub const fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub const fn from_bits(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub const fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A length-`n` Pauli operator with exact phase.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: u8,
    x: u64,
    z: u64,
    phase: Phase,
}

impl PauliString {
    pub fn identity(n: usize) -> Result<Self> {
        Self::from_bits(n, 0, 0, Phase::PLUS_ONE)
    }

    /// Builds a string from packed bits; bits at positions `>= n` must be clear.
    pub fn from_bits(n: usize, x: u64, z: u64, phase: Phase) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::Capacity {
                what: "qubit count",
                requested: n,
                max: MAX_QUBITS,
            });
        }
        let mask = low_mask(n);
        if x & !mask != 0 || z & !mask != 0 {
            return Err(Error::Structure(alloc::format!(
                "bit vector has entries beyond qubit count {n}"
            )));
        }
        Ok(PauliString {
            n: n as u8,
            x,
            z,
            phase,
        })
    }

    /// `letter` on qubit `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, letter: Letter) -> Result<Self> {
        if qubit >= n {
            return Err(Error::QubitIndex { index: qubit, n });
        }
        let (x, z) = letter.bits();
        Self::from_bits(n, (x as u64) << qubit, (z as u64) << qubit, Phase::PLUS_ONE)
    }

    pub fn from_letters(letters: &[Letter]) -> Result<Self> {
        let n = letters.len();
        if n > MAX_QUBITS {
            return Err(Error::Capacity {
                what: "qubit count",
                requested: n,
                max: MAX_QUBITS,
            });
        }
        let (mut x, mut z) = (0u64, 0u64);
        for (q, l) in letters.iter().enumerate() {
            let (bx, bz) = l.bits();
            x |= (bx as u64) << q;
            z |= (bz as u64) << q;
        }
        Self::from_bits(n, x, z, Phase::PLUS_ONE)
    }

    pub(crate) fn from_symplectic(n: usize, v: u128, phase: Phase) -> Self {
        PauliString {
            n: n as u8,
            x: v as u64,
            z: (v >> 64) as u64,
            phase,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn x_bits(&self) -> u64 {
        self.x
    }

    #[inline]
    pub fn z_bits(&self) -> u64 {
        self.z
    }

    #[inline]
    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// `x` in the low word and `z` in the high word.
    #[inline]
    pub fn symplectic(&self) -> u128 {
        self.x as u128 | ((self.z as u128) << 64)
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn without_phase(self) -> Self {
        self.with_phase(Phase::PLUS_ONE)
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        Letter::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.n()).map(move |q| self.letter(q))
    }

    /// Qubits carrying a non-identity letter.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&q| (self.x | self.z) >> q & 1 == 1)
    }

    /// Identity up to phase.
    #[inline]
    pub fn is_trivial(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    #[inline]
    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    fn check_dims(&self, other: &PauliString) -> Result<()> {
        if self.n != other.n {
            Err(Error::Dimension {
                left: self.n(),
                right: other.n(),
            })
        } else {
            Ok(())
        }
    }

    /// Exact operator product `self · other`.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        self.check_dims(other)?;
        Ok(self.mul_same_len(other))
    }

    // Y = iXZ, so each Y contributes one power of i in the XZ-ordered form;
    // moving Z^{z_a} past X^{x_b} costs (-1)^{|z_a & x_b|}.
    #[inline]
    pub(crate) fn mul_same_len(&self, other: &PauliString) -> PauliString {
        let xz_a = self.phase.0 as u32 + (self.x & self.z).count_ones();
        let xz_b = other.phase.0 as u32 + (other.x & other.z).count_ones();
        let swap = 2 * (self.z & other.x).count_ones();
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let ys = (x & z).count_ones();
        let e = (xz_a + xz_b + swap + 4 * 64 - ys) % 4;
        PauliString {
            n: self.n,
            x,
            z,
            phase: Phase(e as u8),
        }
    }

    /// `true` iff the symplectic inner product vanishes. Phases are irrelevant.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_dims(other)?;
        Ok(self.commutes_same_len(other))
    }

    #[inline]
    pub(crate) fn commutes_same_len(&self, other: &PauliString) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() % 2 == 0
    }

    /// `self ⊗ other`; `other` occupies the qubits after `self`.
    pub fn tensor(&self, other: &PauliString) -> Result<PauliString> {
        let n = self.n() + other.n();
        if n > MAX_QUBITS {
            return Err(Error::Capacity {
                what: "qubit count",
                requested: n,
                max: MAX_QUBITS,
            });
        }
        Ok(PauliString {
            n: n as u8,
            x: self.x | other.x.checked_shl(self.n as u32).unwrap_or(0),
            z: self.z | other.z.checked_shl(self.n as u32).unwrap_or(0),
            phase: self.phase.add(other.phase),
        })
    }

    /// Places `self` on `offset..offset + self.n()` of an `n`-qubit register.
    pub fn embed(&self, n: usize, offset: usize) -> Result<PauliString> {
        if offset + self.n() > n {
            return Err(Error::QubitIndex {
                index: offset + self.n(),
                n,
            });
        }
        PauliString::from_bits(n, self.x << offset, self.z << offset, self.phase)
    }

    // Two bits per qubit, qubit 0 most significant, letters ordered I < X < Y < Z.
    fn letter_key(&self) -> u128 {
        let mut key = 0u128;
        for q in 0..self.n() {
            let code = match self.letter(q) {
                Letter::I => 0u128,
                Letter::X => 1,
                Letter::Y => 2,
                Letter::Z => 3,
            };
            key |= code << (2 * (63 - q));
        }
        key
    }
}

/// Ordered by qubit count, then letters left to right (`I < X < Y < Z`), then phase.
impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.letter_key().cmp(&other.letter_key()))
            .then_with(|| self.phase.cmp(&other.phase))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.phase.prefix())?;
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (phase, skip) = if text.starts_with("-i") {
            (Phase::MINUS_I, 2)
        } else if text.starts_with('-') {
            (Phase::MINUS_ONE, 1)
        } else if text.starts_with('+') {
            (Phase::PLUS_ONE, 1)
        } else if text.starts_with('i') {
            (Phase::PLUS_I, 1)
        } else {
            (Phase::PLUS_ONE, 0)
        };
        let mut letters = Vec::with_capacity(text.len());
        for (position, c) in text.chars().enumerate().skip(skip) {
            match Letter::from_char(c) {
                Some(l) => letters.push(l),
                None => return Err(Error::Parse { position, found: c }),
            }
        }
        if letters.is_empty() {
            return Err(Error::EmptyLabel);
        }
        Ok(PauliString::from_letters(&letters)?.with_phase(phase))
    }
}

/// Parses a label. Shorthand for `text.parse::<PauliString>()`.
pub fn parse(text: &str) -> Result<PauliString> {
    text.parse()
}

/// Parses a list of labels, stopping at the first error.
pub fn parse_all<'a, I: IntoIterator<Item = &'a str>>(labels: I) -> Result<Vec<PauliString>> {
    labels.into_iter().map(parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::string::ToString;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn parse_sets_bits_and_phase() {
        let e = p("XIIXII");
        assert_eq!(e.n(), 6);
        assert_eq!(e.x_bits(), 0b001001);
        assert_eq!(e.z_bits(), 0);
        assert_eq!(e.phase(), Phase::PLUS_ONE);

        let id = p("IIIIII");
        assert!(id.is_trivial());
        assert_eq!(id.phase(), Phase::PLUS_ONE);

        let yy = p("-YY");
        assert_eq!((yy.x_bits(), yy.z_bits()), (0b11, 0b11));
        assert_eq!(yy.phase(), Phase::MINUS_ONE);
    }

    #[test]
    fn parse_accepts_every_prefix() {
        assert_eq!(p("+X").phase(), Phase::PLUS_ONE);
        assert_eq!(p("iX").phase(), Phase::PLUS_I);
        assert_eq!(p("-iX").phase(), Phase::MINUS_I);
        assert_eq!(p("+X").to_string(), "X");
    }

    #[test]
    fn parse_reports_position() {
        assert_eq!(
            "XXqI".parse::<PauliString>(),
            Err(Error::Parse {
                position: 2,
                found: 'q'
            })
        );
        assert_eq!(
            "-iXa".parse::<PauliString>(),
            Err(Error::Parse {
                position: 3,
                found: 'a'
            })
        );
        assert_eq!("".parse::<PauliString>(), Err(Error::EmptyLabel));
        assert_eq!("-".parse::<PauliString>(), Err(Error::EmptyLabel));
        assert!("xx".parse::<PauliString>().is_err());
        let long: String = core::iter::repeat('X').take(65).collect();
        assert!(matches!(
            long.parse::<PauliString>(),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn multiplication_table() {
        assert_eq!(p("ZZ").multiply(&p("XX")).unwrap().to_string(), "-YY");
        assert_eq!(p("X").multiply(&p("Z")).unwrap().to_string(), "-iY");
        assert_eq!(p("Z").multiply(&p("X")).unwrap().to_string(), "iY");
        assert_eq!(p("X").multiply(&p("Y")).unwrap().to_string(), "iZ");
        assert_eq!(p("Y").multiply(&p("Z")).unwrap().to_string(), "iX");
        assert_eq!(p("Y").multiply(&p("Y")).unwrap().to_string(), "I");
        assert_eq!(p("-iY").multiply(&p("iY")).unwrap().to_string(), "I");
        let q = p("-XYZI");
        assert_eq!(q.multiply(&p("IIII")).unwrap(), q);
    }

    #[test]
    fn multiply_rejects_length_mismatch() {
        assert_eq!(
            p("XX").multiply(&p("X")),
            Err(Error::Dimension { left: 2, right: 1 })
        );
        assert!(p("XX").commutes(&p("XXX")).is_err());
    }

    #[test]
    fn commutation_examples() {
        assert!(p("XZZXI").commutes(&p("IXZZX")).unwrap());
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XXXXXX").commutes(&p("ZZIIII")).unwrap());
    }

    #[test]
    fn weight_and_tensor() {
        assert_eq!(p("IIIIII").weight(), 0);
        assert_eq!(p("XXXXXX").weight(), 6);
        assert_eq!(p("-YY").weight(), 2);
        assert_eq!(p("XX").tensor(&p("II")).unwrap().to_string(), "XXII");
        assert_eq!(p("I").tensor(&p("X")).unwrap().to_string(), "IX");
        assert_eq!(p("-Y").tensor(&p("Y")).unwrap().to_string(), "-YY");
        assert_eq!(p("-Y").tensor(&p("-iY")).unwrap().to_string(), "iYY");
    }

    #[test]
    fn ordering_is_letters_then_phase() {
        let mut v = vec![p("ZZ"), p("-YY"), p("YY"), p("IX"), p("XI"), p("II")];
        v.sort();
        let s: Vec<_> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["II", "IX", "XI", "YY", "-YY", "ZZ"]);
    }

    #[test]
    fn exhaustive_round_trip_up_to_three_qubits() {
        let prefixes = ["", "i", "-", "-i"];
        for n in 1..=3usize {
            for code in 0..4usize.pow(n as u32) {
                let letters: String = (0..n)
                    .map(|q| ['I', 'X', 'Y', 'Z'][(code >> (2 * q)) & 3])
                    .collect();
                for pre in prefixes {
                    let s = std::format!("{pre}{letters}");
                    assert_eq!(p(&s).to_string(), s);
                }
            }
        }
    }

    fn arb_pauli(n: usize) -> impl Strategy<Value = PauliString> {
        let mask = low_mask(n);
        (any::<u64>(), any::<u64>(), 0u32..4).prop_map(move |(x, z, e)| {
            PauliString::from_bits(n, x & mask, z & mask, Phase::from_exponent(e)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn products_agree_up_to_phase(
            (a, b) in (1usize..=64).prop_flat_map(|n| (arb_pauli(n), arb_pauli(n)))
        ) {
            let ab = a.multiply(&b).unwrap();
            let ba = b.multiply(&a).unwrap();
            prop_assert_eq!(ab.symplectic(), ba.symplectic());
            prop_assert_eq!(ab == ba, a.commutes(&b).unwrap());
            prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
        }

        #[test]
        fn squares_are_phases((a, b, c) in (arb_pauli(7), arb_pauli(7), arb_pauli(7))) {
            prop_assert!(a.multiply(&a).unwrap().is_trivial());
            let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(
                a.commutes(&b).unwrap(),
                a.with_phase(Phase::MINUS_I).commutes(&b.with_phase(Phase::PLUS_I)).unwrap()
            );
        }
    }
}
