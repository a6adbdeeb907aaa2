//! Concatenations of stabilizer quantum error-correcting codes with
//! decoherence-free subspaces, in both orders.
//!
//! A *QD* code uses the active code (QECC) as the outer layer and the
//! decoherence-free subspace (DFS) as the inner layer; a *DQ* code swaps them.
//! The crate covers:
//!
//! - [`pauli`]: Pauli strings in packed binary symplectic form with exact phases.
//! - [`stabilizer`]: stabilizer codes, syndromes, error classification and the
//!   built-in base codes (`repetition-3`, `knill-laflamme-5`, `dfs-2`).
//! - [`dfs`]: character projectors of elementary Abelian Pauli groups and the
//!   decoherence-free subspaces they cut out.
//! - [`concat`]: generator classes, degenerate error equivalence classes,
//!   Hamming efficiencies and the lookup decoder of a two-layer concatenation.
//! - [`analytic`]: the hybrid independent-correlated noise model, closed-form
//!   failure probabilities, the layer recursion and pseudothresholds.
//! - [`mc`]: a Monte Carlo estimator that samples the same noise model and
//!   decodes with the lookup table.
//! - [`statevec`] and [`encoding`]: a dense state-vector engine used to check
//!   codewords, encoders and the Knill–Laflamme conditions.
//! - [`family`]: the four concrete codes `qd6`, `dq6`, `qd10`, `dq10`.
//!
//! The crate is `no_std` and needs only `alloc`.
//!
//! ```
//! use qdconcat_core::{concat::ConcatCode, family::Family};
//!
//! let code = ConcatCode::build(Family::Qd6.spec().unwrap()).unwrap();
//! assert_eq!(code.equivalence_class().set_count(), 4);
//! assert_eq!(code.equivalence_class().element_count(), 32);
//! ```
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analytic;
pub mod concat;
pub mod dfs;
pub mod encoding;
mod error;
pub mod family;
pub mod mc;
pub mod pauli;
pub mod stabilizer;
pub mod statevec;
mod symplectic;

pub use error::{Error, Result};
pub use pauli::{Letter, PauliString, Phase};
pub use stabilizer::{ErrorClassification, ErrorKind, StabilizerCode, Syndrome};
