//! Decoherence-free subspaces of elementary Abelian Pauli error groups.

use alloc::format;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{PauliString, Phase};
use crate::stabilizer::{complete_logicals, group_elements, StabilizerCode};
use crate::statevec::{DenseOperator, StateVector};
use crate::symplectic::RowSpace;

/// Gram–Schmidt rejection threshold for [`df_basis`].
pub const BASIS_TOLERANCE: f64 = 1e-10;

/// A commuting, closed set of phase-free Pauli operators containing the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct AbelianErrorGroup {
    n: usize,
    elements: Vec<PauliString>,
    generators: Vec<PauliString>,
    // Generator subset producing each element.
    masks: Vec<u64>,
}

impl AbelianErrorGroup {
    /// Validates an explicit element list. Phases are dropped.
    pub fn new(n: usize, elements: Vec<PauliString>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Structure("error group has no elements".into()));
        }
        let elements: Vec<PauliString> = elements.iter().map(|e| e.without_phase()).collect();
        for e in &elements {
            if e.n() != n {
                return Err(Error::Dimension {
                    left: n,
                    right: e.n(),
                });
            }
        }
        if !elements.iter().any(|e| e.is_trivial()) {
            return Err(Error::Structure("error group lacks the identity".into()));
        }
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate().skip(i + 1) {
                if a == b {
                    return Err(Error::Structure(format!("elements {i} and {j} coincide")));
                }
                if !a.commutes_same_len(b) {
                    return Err(Error::Structure(format!("{a} and {b} anticommute")));
                }
                if !elements.contains(&a.mul_same_len(b).without_phase()) {
                    return Err(Error::Structure(format!(
                        "{a}·{b} is not in the group; the set is not closed"
                    )));
                }
            }
        }
        if !elements.len().is_power_of_two() {
            return Err(Error::Structure(format!(
                "group order {} is not a power of two",
                elements.len()
            )));
        }
        let mut span = RowSpace::default();
        let mut generators = Vec::new();
        for e in &elements {
            if span.insert(e.symplectic(), generators.len()).is_ok() {
                generators.push(*e);
            }
        }
        let masks = elements.iter().map(|e| span.reduce(e.symplectic()).1).collect();
        Ok(AbelianErrorGroup {
            n,
            elements,
            generators,
            masks,
        })
    }

    /// The group generated by `generators`, elements in subset-mask order.
    pub fn generated_by(n: usize, generators: &[PauliString]) -> Result<Self> {
        let mut span = RowSpace::default();
        let mut independent = Vec::new();
        for g in generators {
            if g.n() != n {
                return Err(Error::Dimension {
                    left: n,
                    right: g.n(),
                });
            }
            if span.insert(g.symplectic(), independent.len()).is_ok() {
                independent.push(g.without_phase());
            }
        }
        let elements: Vec<PauliString> = group_elements(n, &independent)?
            .into_iter()
            .map(|e| e.without_phase())
            .collect();
        Self::new(n, elements)
    }

    /// The group `{I^n}`.
    pub fn trivial(n: usize) -> Result<Self> {
        Self::new(n, alloc::vec![PauliString::identity(n)?])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[PauliString] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// An independent generating subset, picked greedily from the elements.
    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }
}

/// A ±1 character; `values()[i]` belongs to `group.elements()[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    values: Vec<i8>,
    generator_signs: Vec<i8>,
}

impl Character {
    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// Signs on [`AbelianErrorGroup::generators`].
    pub fn generator_signs(&self) -> &[i8] {
        &self.generator_signs
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 1)
    }

    /// Character of `group` with the given values, checked for multiplicativity.
    pub fn new(group: &AbelianErrorGroup, values: Vec<i8>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::Structure(format!(
                "{} character values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        let signs: Vec<i8> = (0..group.generators.len())
            .map(|g| {
                let idx = group.masks.iter().position(|&m| m == 1 << g).unwrap();
                values[idx]
            })
            .collect();
        let chi = from_signs(group, signs);
        if chi.values != values {
            return Err(Error::Structure("character values are not multiplicative".into()));
        }
        Ok(chi)
    }
}

fn from_signs(group: &AbelianErrorGroup, generator_signs: Vec<i8>) -> Character {
    let flips: u64 = generator_signs
        .iter()
        .enumerate()
        .filter(|(_, &s)| s < 0)
        .fold(0, |acc, (i, _)| acc | 1 << i);
    let values = group
        .masks
        .iter()
        .map(|m| if (m & flips).count_ones() % 2 == 0 { 1 } else { -1 })
        .collect();
    Character {
        values,
        generator_signs,
    }
}

/// All `|G|` characters, ordered by the binary pattern of generator signs
/// (generator 0 as the lowest bit); the trivial character comes first.
pub fn characters(group: &AbelianErrorGroup) -> Vec<Character> {
    let r = group.generators.len();
    (0..1u64 << r)
        .map(|pattern| {
            let signs = (0..r)
                .map(|i| if pattern >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            from_signs(group, signs)
        })
        .collect()
}

fn check_character(group: &AbelianErrorGroup, chi: &Character) -> Result<()> {
    if chi.values.len() != group.order() {
        return Err(Error::Structure(format!(
            "character of length {} for a group of order {}",
            chi.values.len(),
            group.order()
        )));
    }
    Ok(())
}

/// `(1/|G|) Σ_g χ(g)·g`.
pub fn projector(group: &AbelianErrorGroup, chi: &Character) -> Result<DenseOperator> {
    check_character(group, chi)?;
    let mut op = DenseOperator::zeros(group.n)?;
    for (g, &s) in group.elements.iter().zip(&chi.values) {
        op.add_pauli(g, Complex64::new(s as f64, 0.0))?;
    }
    op.scale(1.0 / group.order() as f64);
    Ok(op)
}

/// Orthonormal basis of the projector's range: projected computational basis
/// states in ascending index order, Gram–Schmidt orthonormalized.
pub fn df_basis(group: &AbelianErrorGroup, chi: &Character) -> Result<Vec<StateVector>> {
    let proj = projector(group, chi)?;
    let dim = proj.dim();
    let rank = dim / group.order();
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for col in 0..dim {
        if basis.len() == rank {
            break;
        }
        let mut v = proj.column(col);
        for b in &basis {
            let overlap: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= overlap * bi;
            }
        }
        let norm = libm::sqrt(v.iter().map(|a| a.norm_sqr()).sum::<f64>());
        if norm < BASIS_TOLERANCE {
            continue;
        }
        basis.push(v.into_iter().map(|a| a / norm).collect());
    }
    basis
        .into_iter()
        .map(|amps| StateVector::from_amplitudes(group.n, amps))
        .collect()
}

/// The DFS of `chi` as a code whose passive generators are `χ(g)·g`.
pub fn as_stabilizer_code(group: &AbelianErrorGroup, chi: &Character) -> Result<StabilizerCode> {
    check_character(group, chi)?;
    let n = group.n;
    let r = group.generators.len();
    if r >= n {
        return Err(Error::Structure(format!(
            "range of dimension 2^{} cannot host a logical qubit",
            n as isize - r as isize
        )));
    }
    let generators: Vec<PauliString> = group
        .generators
        .iter()
        .zip(&chi.generator_signs)
        .map(|(g, &s)| if s < 0 { g.with_phase(g.phase().add(Phase::MINUS_ONE)) } else { *g })
        .collect();
    let (logical_x, logical_z) = complete_logicals(n, &generators)?;
    StabilizerCode::new(
        format!("dfs-{n}"),
        n,
        n - r,
        generators,
        logical_x,
        logical_z,
        alloc::vec![true; r],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{parse, parse_all};
    use crate::stabilizer::builtin;
    use crate::statevec::{dfs_invariance, expectation};

    fn pair_group() -> AbelianErrorGroup {
        AbelianErrorGroup::new(2, parse_all(["II", "XX"]).unwrap()).unwrap()
    }

    #[test]
    fn pair_characters() {
        let g = pair_group();
        let chis = characters(&g);
        assert_eq!(chis.len(), 2);
        assert_eq!(chis[0].values(), &[1, 1]);
        assert_eq!(chis[1].values(), &[1, -1]);
    }

    #[test]
    fn klein_four_characters_match_brute_force() {
        let g = AbelianErrorGroup::new(4, parse_all(["IIII", "XXII", "IIXX", "XXXX"]).unwrap())
            .unwrap();
        let mut found: Vec<Vec<i8>> = characters(&g).iter().map(|c| c.values().to_vec()).collect();
        // Brute force: all sign vectors that are multiplicative on the group table.
        let mut brute = Vec::new();
        for pattern in 0..16u32 {
            let v: Vec<i8> = (0..4).map(|i| if pattern >> i & 1 == 1 { -1 } else { 1 }).collect();
            let els = g.elements();
            let ok = (0..4).all(|a| {
                (0..4).all(|b| {
                    let prod = els[a].multiply(&els[b]).unwrap().without_phase();
                    let c = els.iter().position(|e| *e == prod).unwrap();
                    v[c] == v[a] * v[b]
                })
            });
            if ok {
                brute.push(v);
            }
        }
        found.sort();
        brute.sort();
        assert_eq!(found, brute);
        assert_eq!(found.len(), 4);
    }

    #[test]
    fn group_validation() {
        assert!(AbelianErrorGroup::new(1, parse_all(["I", "X", "Z"]).unwrap()).is_err());
        assert!(AbelianErrorGroup::new(2, parse_all(["XX"]).unwrap()).is_err());
        assert!(AbelianErrorGroup::new(2, parse_all(["II", "XX", "ZZ"]).unwrap()).is_err());
        let g = AbelianErrorGroup::new(2, parse_all(["II", "-XX"]).unwrap()).unwrap();
        assert_eq!(g.elements()[1], parse("XX").unwrap());
        let h = AbelianErrorGroup::generated_by(2, &parse_all(["XX", "XX"]).unwrap()).unwrap();
        assert_eq!(h.order(), 2);
    }

    #[test]
    fn character_new_checks_multiplicativity() {
        let g = AbelianErrorGroup::new(4, parse_all(["IIII", "XXII", "IIXX", "XXXX"]).unwrap())
            .unwrap();
        assert!(Character::new(&g, vec![1, -1, -1, 1]).is_ok());
        assert!(Character::new(&g, vec![1, -1, -1, -1]).is_err());
    }

    #[test]
    fn pair_projectors() {
        let g = pair_group();
        let chis = characters(&g);
        let plus = projector(&g, &chis[0]).unwrap();
        let mut expect = DenseOperator::zeros(2).unwrap();
        expect.add_pauli(&parse("II").unwrap(), Complex64::new(0.5, 0.0)).unwrap();
        expect.add_pauli(&parse("XX").unwrap(), Complex64::new(0.5, 0.0)).unwrap();
        assert!(plus.max_abs_diff(&expect) < 1e-15);
        let minus = projector(&g, &chis[1]).unwrap();
        let sum = plus.add(&minus).unwrap();
        assert!(sum.max_abs_diff(&DenseOperator::identity(2).unwrap()) < 1e-12);
        assert!(plus.matmul(&plus).unwrap().max_abs_diff(&plus) < 1e-12);
        assert!(plus.adjoint().max_abs_diff(&plus) < 1e-12);
        let bell = StateVector::from_terms(2, &[("00", 1.0), ("11", 1.0)]).unwrap();
        let image = minus.apply(bell.amplitudes());
        assert!(image.iter().all(|a| a.norm() < 1e-12));
    }

    #[test]
    fn trivial_group() {
        let g = AbelianErrorGroup::trivial(2).unwrap();
        let chis = characters(&g);
        assert_eq!(chis.len(), 1);
        assert!(chis[0].is_trivial());
        let p = projector(&g, &chis[0]).unwrap();
        assert!(p.max_abs_diff(&DenseOperator::identity(2).unwrap()) < 1e-15);
        let basis = df_basis(&g, &chis[0]).unwrap();
        assert_eq!(basis.len(), 4);
        for (i, b) in basis.iter().enumerate() {
            assert_eq!(b, &StateVector::basis(2, i).unwrap());
        }
        let code = as_stabilizer_code(&g, &chis[0]).unwrap();
        assert_eq!((code.n(), code.k(), code.generators().len()), (2, 2, 0));
        let s = StateVector::from_terms(2, &[("01", 0.3), ("10", 0.7)]).unwrap();
        assert!(dfs_invariance(&s, &g, &chis[0]).unwrap());
    }

    #[test]
    fn pair_bases() {
        let g = pair_group();
        let chis = characters(&g);
        let plus = df_basis(&g, &chis[0]).unwrap();
        let minus = df_basis(&g, &chis[1]).unwrap();
        let expect_plus = [
            StateVector::from_terms(2, &[("00", 1.0), ("11", 1.0)]).unwrap(),
            StateVector::from_terms(2, &[("01", 1.0), ("10", 1.0)]).unwrap(),
        ];
        let expect_minus = [
            StateVector::from_terms(2, &[("00", 1.0), ("11", -1.0)]).unwrap(),
            StateVector::from_terms(2, &[("01", 1.0), ("10", -1.0)]).unwrap(),
        ];
        for (got, want) in plus.iter().zip(&expect_plus).chain(minus.iter().zip(&expect_minus)) {
            assert!(got.overlap(want).unwrap() > 1.0 - 1e-10);
        }
        for (chi, basis) in chis.iter().zip([&plus, &minus]) {
            let code = as_stabilizer_code(&g, chi).unwrap();
            for b in basis.iter() {
                assert!(dfs_invariance(b, &g, chi).unwrap());
                for s in code.generators() {
                    assert!((expectation(b, s).unwrap().re - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn superpositions() {
        let g = pair_group();
        let chis = characters(&g);
        let within = StateVector::from_terms(2, &[("00", 0.6), ("11", 0.6), ("01", 0.8), ("10", 0.8)])
            .unwrap();
        assert!(dfs_invariance(&within, &g, &chis[0]).unwrap());
        // (|00⟩+|11⟩) + (|00⟩−|11⟩) ∝ |00⟩ mixes the two irreps.
        let mixed = StateVector::from_terms(2, &[("00", 1.0), ("11", 1.0), ("00", 1.0), ("11", -1.0)])
            .unwrap();
        assert!(!dfs_invariance(&mixed, &g, &chis[0]).unwrap());
        assert!(!dfs_invariance(&mixed, &g, &chis[1]).unwrap());
    }

    #[test]
    fn exported_codes() {
        let g = pair_group();
        let chis = characters(&g);
        assert_eq!(as_stabilizer_code(&g, &chis[0]).unwrap(), builtin("dfs-2").unwrap());
        let minus = as_stabilizer_code(&g, &chis[1]).unwrap();
        assert_eq!(minus.generators(), &[parse("-XX").unwrap()]);
        assert_eq!(minus.k(), 1);
        assert!(minus.validate().is_valid());
        let full = AbelianErrorGroup::new(1, parse_all(["I", "X"]).unwrap()).unwrap();
        assert!(as_stabilizer_code(&full, &characters(&full)[0]).is_err());
    }
}
