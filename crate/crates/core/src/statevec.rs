//! Dense state vectors and operators on at most [`MAX_DENSE_QUBITS`] qubits.
//!
//! Basis index convention: qubit 0 is the leftmost symbol of a ket and the most
//! significant bit of the index, so `|000111⟩` is index 7 on six qubits.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::dfs::{AbelianErrorGroup, Character};
use crate::error::{Error, Result};
use crate::pauli::PauliString;

pub const MAX_DENSE_QUBITS: usize = 12;

/// Norm drift allowed on a [`StateVector`].
pub const NORM_TOLERANCE: f64 = 1e-10;
/// Matrix-element tolerance used by [`kl_check`].
pub const KL_TOLERANCE: f64 = 1e-9;

fn check_capacity(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DENSE_QUBITS {
        Err(Error::Capacity {
            what: "dense qubit count",
            requested: n,
            max: MAX_DENSE_QUBITS,
        })
    } else {
        Ok(())
    }
}

#[inline]
fn qubit_bit(n: usize, qubit: usize) -> usize {
    1 << (n - 1 - qubit)
}

fn reverse_low(bits: u64, n: usize) -> usize {
    (bits.reverse_bits() >> (64 - n)) as usize
}

/// Index-space form of a Pauli: `P|j⟩ = i^e · (-1)^{|z & j|} · |j ⊕ x⟩`.
#[derive(Clone, Copy)]
pub(crate) struct IndexPauli {
    x: usize,
    z: usize,
    e: u32,
}

impl IndexPauli {
    pub(crate) fn new(p: &PauliString) -> Self {
        let n = p.n();
        IndexPauli {
            x: reverse_low(p.x_bits(), n),
            z: reverse_low(p.z_bits(), n),
            e: p.phase().exponent() as u32 + (p.x_bits() & p.z_bits()).count_ones(),
        }
    }

    #[inline]
    pub(crate) fn act(&self, j: usize) -> (usize, Complex64) {
        let e = (self.e + 2 * (self.z & j).count_ones()) % 4;
        let f = match e {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        (j ^ self.x, f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_capacity(n)?;
        if index >= 1 << n {
            return Err(Error::Domain(format!("basis index {index} on {n} qubits")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    /// Normalizes `amps`; fails on a zero vector.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_capacity(n)?;
        if amps.len() != 1 << n {
            return Err(Error::Dimension {
                left: 1 << n,
                right: amps.len(),
            });
        }
        let norm = libm::sqrt(amps.iter().map(|a| a.norm_sqr()).sum::<f64>());
        if norm < NORM_TOLERANCE {
            return Err(Error::Domain("zero vector cannot be normalized".into()));
        }
        Ok(StateVector {
            n,
            amps: amps.into_iter().map(|a| a / norm).collect(),
        })
    }

    /// Builds a normalized state from `(bitstring, coefficient)` terms, e.g. `("000111", 1.0)`.
    pub fn from_terms(n: usize, terms: &[(&str, f64)]) -> Result<Self> {
        check_capacity(n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        for (bits, c) in terms {
            if bits.len() != n {
                return Err(Error::Dimension {
                    left: n,
                    right: bits.len(),
                });
            }
            let mut index = 0usize;
            for (pos, ch) in bits.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => index |= qubit_bit(n, pos),
                    _ => return Err(Error::Parse { position: pos, found: ch }),
                }
            }
            amps[index] += Complex64::new(*c, 0.0);
        }
        Self::from_amplitudes(n, amps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>())
    }

    fn check_same(&self, other: &StateVector) -> Result<()> {
        if self.n != other.n {
            Err(Error::Dimension {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|`; equals 1 iff the states agree up to global phase.
    pub fn overlap(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    pub fn apply_pauli(&self, p: &PauliString) -> Result<StateVector> {
        if p.n() != self.n {
            return Err(Error::Dimension {
                left: self.n,
                right: p.n(),
            });
        }
        let ip = IndexPauli::new(p);
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (j, a) in self.amps.iter().enumerate() {
            let (k, f) = ip.act(j);
            out[k] = f * a;
        }
        Ok(StateVector {
            n: self.n,
            amps: out,
        })
    }

    /// `self ⊗ other` with `self` on the leading qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        check_capacity(self.n + other.n)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(StateVector {
            n: self.n + other.n,
            amps,
        })
    }

    /// Largest amplitude deviation from `other` after removing the best global phase,
    /// together with its index. Both states must be normalized.
    pub fn max_deviation_up_to_phase(&self, other: &StateVector) -> Result<(f64, usize)> {
        let ov = self.inner(other)?;
        let rot = if ov.norm() > 0.0 {
            ov / ov.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a * rot - b).norm())
            .enumerate()
            .fold((0.0, 0), |best, (i, d)| if d > best.0 { (d, i) } else { best }))
    }

    pub(crate) fn from_raw(n: usize, amps: Vec<Complex64>) -> StateVector {
        StateVector { n, amps }
    }
}

/// Row-major `2^n × 2^n` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zeros(n: usize) -> Result<Self> {
        check_capacity(n)?;
        Ok(DenseOperator {
            n,
            data: vec![Complex64::new(0.0, 0.0); 1 << (2 * n)],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..1 << n {
            m.data[i * (1 << n) + i] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim() + col]
    }

    /// `self += coeff · P`.
    pub fn add_pauli(&mut self, p: &PauliString, coeff: Complex64) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::Dimension {
                left: self.n,
                right: p.n(),
            });
        }
        let ip = IndexPauli::new(p);
        let dim = self.dim();
        for col in 0..dim {
            let (row, f) = ip.act(col);
            self.data[row * dim + col] += coeff * f;
        }
        Ok(())
    }

    pub fn matmul(&self, other: &DenseOperator) -> Result<DenseOperator> {
        if self.n != other.n {
            return Err(Error::Dimension {
                left: self.n,
                right: other.n,
            });
        }
        let dim = self.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let a = self.data[i * dim + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..dim {
                    out[i * dim + j] += a * other.data[k * dim + j];
                }
            }
        }
        Ok(DenseOperator { n: self.n, data: out })
    }

    /// Applies the operator to a raw amplitude vector (no normalization).
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let dim = self.dim();
        (0..dim)
            .map(|i| {
                self.data[i * dim..(i + 1) * dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        let dim = self.dim();
        (0..dim).map(|row| self.data[row * dim + col]).collect()
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn adjoint(&self) -> DenseOperator {
        let dim = self.dim();
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                data[j * dim + i] = self.data[i * dim + j].conj();
            }
        }
        DenseOperator { n: self.n, data }
    }

    pub fn add(&self, other: &DenseOperator) -> Result<DenseOperator> {
        if self.n != other.n {
            return Err(Error::Dimension {
                left: self.n,
                right: other.n,
            });
        }
        Ok(DenseOperator {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub(crate) fn scale(&mut self, s: f64) {
        for a in &mut self.data {
            *a *= s;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    Cnot { control: usize, target: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize, gates: Vec<Gate>) -> Result<Self> {
        check_capacity(n)?;
        for g in &gates {
            let (a, b) = match *g {
                Gate::H(t) => (t, t),
                Gate::Cnot { control, target } => {
                    if control == target {
                        return Err(Error::Structure(format!(
                            "CNOT with control = target = {control}"
                        )));
                    }
                    (control, target)
                }
            };
            for index in [a, b] {
                if index >= n {
                    return Err(Error::QubitIndex { index, n });
                }
            }
        }
        Ok(Circuit { n, gates })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// The gates in reverse order (every gate here is self-inverse).
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n: self.n,
            gates: self.gates.iter().rev().copied().collect(),
        }
    }
}

/// Runs `circuit` on `state`.
pub fn apply(state: &StateVector, circuit: &Circuit) -> Result<StateVector> {
    if state.n != circuit.n {
        return Err(Error::Dimension {
            left: state.n,
            right: circuit.n,
        });
    }
    let n = state.n;
    let mut amps = state.amps.clone();
    let s = core::f64::consts::FRAC_1_SQRT_2;
    for gate in &circuit.gates {
        match *gate {
            Gate::H(t) => {
                let bit = qubit_bit(n, t);
                for j in (0..amps.len()).filter(|j| j & bit == 0) {
                    let (a, b) = (amps[j], amps[j | bit]);
                    amps[j] = (a + b) * s;
                    amps[j | bit] = (a - b) * s;
                }
            }
            Gate::Cnot { control, target } => {
                let (c, t) = (qubit_bit(n, control), qubit_bit(n, target));
                for j in (0..amps.len()).filter(|j| j & c != 0 && j & t == 0) {
                    amps.swap(j, j | t);
                }
            }
        }
    }
    Ok(StateVector { n, amps })
}

/// `⟨ψ|P|ψ⟩`.
pub fn expectation(state: &StateVector, op: &PauliString) -> Result<Complex64> {
    state.inner(&state.apply_pauli(op)?)
}

/// Indices `(m, n, i, j)` of a failed Knill–Laflamme condition and the offending value.
#[derive(Clone, Debug, PartialEq)]
pub struct KlWitness {
    pub m: usize,
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub value: Complex64,
    /// For a diagonal failure, the value for the other codeword.
    pub other: Option<Complex64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KlReport {
    pub holds: bool,
    pub witness: Option<KlWitness>,
}

/// Checks `⟨ψ_i|E_m† E_n|ψ_j⟩ = 0` for `i ≠ j` and equal diagonals for all pairs.
pub fn kl_check(codewords: &[StateVector; 2], errors: &[PauliString]) -> Result<KlReport> {
    let [a, b] = codewords;
    a.check_same(b)?;
    for w in codewords {
        if (w.norm() - 1.0).abs() > KL_TOLERANCE {
            return Err(Error::Precondition("codewords must be normalized".into()));
        }
    }
    if a.inner(b)?.norm() > KL_TOLERANCE {
        return Err(Error::Precondition("codewords must be orthogonal".into()));
    }
    let images: Vec<[StateVector; 2]> = errors
        .iter()
        .map(|e| Ok([a.apply_pauli(e)?, b.apply_pauli(e)?]))
        .collect::<Result<_>>()?;
    for (m, em) in images.iter().enumerate() {
        for (n, en) in images.iter().enumerate() {
            for (i, j) in [(0, 1), (1, 0)] {
                let value = em[i].inner(&en[j])?;
                if value.norm() >= KL_TOLERANCE {
                    return Ok(KlReport {
                        holds: false,
                        witness: Some(KlWitness {
                            m,
                            n,
                            i,
                            j,
                            value,
                            other: None,
                        }),
                    });
                }
            }
            let d0 = em[0].inner(&en[0])?;
            let d1 = em[1].inner(&en[1])?;
            if (d0 - d1).norm() >= KL_TOLERANCE {
                return Ok(KlReport {
                    holds: false,
                    witness: Some(KlWitness {
                        m,
                        n,
                        i: 0,
                        j: 0,
                        value: d0,
                        other: Some(d1),
                    }),
                });
            }
        }
    }
    Ok(KlReport {
        holds: true,
        witness: None,
    })
}

/// `true` iff `g|ψ⟩ = χ(g)|ψ⟩` for every group element.
pub fn dfs_invariance(
    state: &StateVector,
    group: &AbelianErrorGroup,
    chi: &Character,
) -> Result<bool> {
    if group.n() != state.n {
        return Err(Error::Dimension {
            left: state.n,
            right: group.n(),
        });
    }
    for (g, sign) in group.elements().iter().zip(chi.values()) {
        let image = state.apply_pauli(g)?;
        let deviation = image
            .amps
            .iter()
            .zip(&state.amps)
            .map(|(x, y)| (x - y * (*sign as f64)).norm())
            .fold(0.0, f64::max);
        if deviation > NORM_TOLERANCE {
            return Ok(false);
        }
    }
    Ok(true)
}
