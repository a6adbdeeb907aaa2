//! Encoders and codewords for the base and concatenated codes.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::stabilizer::builtin;
use crate::statevec::{apply, Circuit, DenseOperator, Gate, StateVector, MAX_DENSE_QUBITS};

/// Logical codewords of the five-qubit code: `|0⟩` is `∏(I + S_i)/2 · |00000⟩`
/// normalized, and `|1⟩ = X^⊗5 |0⟩`.
pub fn five_qubit_codewords() -> Result<[StateVector; 2]> {
    let code = builtin("knill-laflamme-5")?;
    let mut amps = StateVector::zero(5)?.amplitudes().to_vec();
    for s in code.generators() {
        let mut proj = DenseOperator::identity(5)?;
        proj.add_pauli(s, Complex64::new(1.0, 0.0))?;
        amps = proj.apply(&amps);
    }
    let zero = StateVector::from_amplitudes(5, amps)?;
    let one = zero.apply_pauli(&code.logical_x()[0])?;
    Ok([zero, one])
}

/// One encoder step.
#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    Gate(Gate),
    /// Maps `|b⟩|0…0⟩` on `qubits` (data qubit first) to `codewords[b]`.
    BlockIsometry {
        qubits: Vec<usize>,
        codewords: [StateVector; 2],
    },
}

/// Gates and block isometries applied to `|ψ⟩ ⊗ |0…0⟩` with the data on qubit 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Encoder {
    n: usize,
    steps: Vec<Step>,
}

impl Encoder {
    pub fn new(n: usize, steps: Vec<Step>) -> Result<Self> {
        if n == 0 || n > MAX_DENSE_QUBITS {
            return Err(Error::Capacity {
                what: "dense qubit count",
                requested: n,
                max: MAX_DENSE_QUBITS,
            });
        }
        for step in &steps {
            match step {
                Step::Gate(g) => {
                    Circuit::new(n, vec![*g])?;
                }
                Step::BlockIsometry { qubits, codewords } => {
                    if let Some(&q) = qubits.iter().find(|&&q| q >= n) {
                        return Err(Error::QubitIndex { index: q, n });
                    }
                    for w in codewords {
                        if w.n() != qubits.len() {
                            return Err(Error::Dimension {
                                left: qubits.len(),
                                right: w.n(),
                            });
                        }
                    }
                    let mut sorted = qubits.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    if sorted.len() != qubits.len() {
                        return Err(Error::Structure("isometry qubits repeat".into()));
                    }
                }
            }
        }
        Ok(Encoder { n, steps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn encode(&self, input: &StateVector) -> Result<StateVector> {
        if input.n() != self.n {
            return Err(Error::Dimension {
                left: self.n,
                right: input.n(),
            });
        }
        let mut state = input.clone();
        for step in &self.steps {
            state = match step {
                Step::Gate(g) => apply(&state, &Circuit::new(self.n, vec![*g])?)?,
                Step::BlockIsometry { qubits, codewords } => isometry(&state, qubits, codewords)?,
            };
        }
        Ok(state)
    }

    /// Encoded `|bit⟩`.
    pub fn logical(&self, bit: u8) -> Result<StateVector> {
        let index = match bit {
            0 => 0,
            1 => 1 << (self.n - 1),
            _ => return Err(Error::Domain(format!("logical bit must be 0 or 1, got {bit}"))),
        };
        self.encode(&StateVector::basis(self.n, index)?)
    }
}

fn isometry(state: &StateVector, qubits: &[usize], codewords: &[StateVector; 2]) -> Result<StateVector> {
    let n = state.n();
    let m = qubits.len();
    let bits: Vec<usize> = qubits.iter().map(|&q| 1 << (n - 1 - q)).collect();
    let block_mask: usize = bits.iter().sum();
    let scatter = |pattern: usize| -> usize {
        // Block pattern bit (m - 1 - i) belongs to qubits[i].
        (0..m)
            .filter(|i| pattern >> (m - 1 - i) & 1 == 1)
            .map(|i| bits[i])
            .sum()
    };
    let data = bits[0];
    let mut out = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (j, &a) in state.amplitudes().iter().enumerate() {
        if a.norm() == 0.0 {
            continue;
        }
        if j & block_mask & !data != 0 {
            return Err(Error::Precondition(format!(
                "ancillas of block {qubits:?} are not in |0⟩"
            )));
        }
        let rest = j & !block_mask;
        let w = &codewords[(j & data != 0) as usize];
        for (pattern, c) in w.amplitudes().iter().enumerate() {
            out[rest | scatter(pattern)] += a * c;
        }
    }
    Ok(StateVector::from_raw(n, out))
}

/// Encoding circuit of the six-qubit QD code.
pub fn qd6_circuit() -> Circuit {
    let cnot = |control, target| Gate::Cnot { control, target };
    Circuit::new(
        6,
        vec![
            cnot(0, 2),
            cnot(0, 4),
            Gate::H(1),
            Gate::H(3),
            Gate::H(5),
            cnot(1, 0),
            cnot(3, 2),
            cnot(5, 4),
        ],
    )
    .expect("fixed circuit is valid")
}

/// Encoding circuit of the six-qubit DQ code.
pub fn dq6_circuit() -> Circuit {
    let cnot = |control, target| Gate::Cnot { control, target };
    Circuit::new(
        6,
        vec![
            Gate::H(3),
            cnot(3, 0),
            cnot(0, 1),
            cnot(0, 2),
            cnot(3, 4),
            cnot(3, 5),
        ],
    )
    .expect("fixed circuit is valid")
}

fn gates(circuit: &Circuit) -> Vec<Step> {
    circuit.gates().iter().map(|&g| Step::Gate(g)).collect()
}

pub fn qd6_encoder() -> Result<Encoder> {
    Encoder::new(6, gates(&qd6_circuit()))
}

pub fn dq6_encoder() -> Result<Encoder> {
    Encoder::new(6, gates(&dq6_circuit()))
}

/// Five-qubit encoding on qubits 0, 2, 4, 6, 8, then each pair `(2b, 2b+1)`
/// maps `|j⟩|0⟩` to `|j⟩_D` with `H(2b+1)` and `CNOT(2b+1 → 2b)`.
pub fn qd10_encoder() -> Result<Encoder> {
    let mut steps = vec![Step::BlockIsometry {
        qubits: vec![0, 2, 4, 6, 8],
        codewords: five_qubit_codewords()?,
    }];
    for b in 0..5 {
        steps.push(Step::Gate(Gate::H(2 * b + 1)));
        steps.push(Step::Gate(Gate::Cnot {
            control: 2 * b + 1,
            target: 2 * b,
        }));
    }
    Encoder::new(10, steps)
}

/// `H(5)`, `CNOT(5 → 0)` builds `|00⟩ + |11⟩` or `|01⟩ + |10⟩` on qubits 0 and 5,
/// then each half is encoded into the five-qubit code.
pub fn dq10_encoder() -> Result<Encoder> {
    let words = five_qubit_codewords()?;
    Encoder::new(
        10,
        vec![
            Step::Gate(Gate::H(5)),
            Step::Gate(Gate::Cnot {
                control: 5,
                target: 0,
            }),
            Step::BlockIsometry {
                qubits: vec![0, 1, 2, 3, 4],
                codewords: words.clone(),
            },
            Step::BlockIsometry {
                qubits: vec![5, 6, 7, 8, 9],
                codewords: words,
            },
        ],
    )
}

/// Expectation values of `ops` on `state`, real parts.
pub fn stabilizer_expectations(state: &StateVector, ops: &[PauliString]) -> Result<Vec<f64>> {
    ops.iter()
        .map(|s| Ok(crate::statevec::expectation(state, s)?.re))
        .collect()
}
