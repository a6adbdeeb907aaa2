//! GF(2) linear algebra on packed symplectic vectors (`x` low word, `z` high word).

use alloc::vec::Vec;

/// Symplectic form: 1 iff the two Paulis anticommute.
#[inline]
pub(crate) fn product(a: u128, b: u128) -> u32 {
    let (ax, az) = (a as u64, (a >> 64) as u64);
    let (bx, bz) = (b as u64, (b >> 64) as u64);
    ((ax & bz) ^ (az & bx)).count_ones() & 1
}

/// Row-reduced basis of a span, remembering which input rows built each basis row.
#[derive(Clone, Debug, Default)]
pub(crate) struct RowSpace {
    // (vector, pivot bit, mask of input rows whose sum equals the vector)
    rows: Vec<(u128, u32, u64)>,
}

impl RowSpace {
    /// Inserts `v` labelled as input row `index`. Returns `false` when `v` was
    /// already in the span; the combination that reproduces it is then returned.
    pub(crate) fn insert(&mut self, v: u128, index: usize) -> Result<(), u64> {
        let (residual, combo) = self.reduce(v);
        if residual == 0 {
            return Err(combo);
        }
        let pivot = 127 - residual.leading_zeros();
        let combo = combo | (1u64 << index);
        // Keep the basis fully reduced so `reduce` is a single pass.
        for row in &mut self.rows {
            if row.0 >> pivot & 1 == 1 {
                row.0 ^= residual;
                row.2 ^= combo;
            }
        }
        self.rows.push((residual, pivot, combo));
        Ok(())
    }

    /// Returns the residual of `v` modulo the span and the input rows used.
    #[inline]
    pub(crate) fn reduce(&self, mut v: u128) -> (u128, u64) {
        let mut combo = 0u64;
        for &(row, pivot, rows) in &self.rows {
            if v >> pivot & 1 == 1 {
                v ^= row;
                combo ^= rows;
            }
        }
        (v, combo)
    }

    #[inline]
    pub(crate) fn contains(&self, v: u128) -> bool {
        self.reduce(v).0 == 0
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Basis of `{v : product(v, g) = 0 for every g in gens}` over `n` qubits.
///
/// Free coordinates are enumerated x-bits first, then z-bits, each in qubit
/// order, so the identity constraint set yields `X_0 … X_{n-1}, Z_0 … Z_{n-1}`.
pub(crate) fn commutant_basis(n: usize, gens: &[u128]) -> Vec<u128> {
    // Constraint row for generator g over coordinates (x_q, z_q): the symplectic
    // product with v reads g.z·v.x + g.x·v.z, i.e. the row is swap(g).
    let coords: Vec<u32> = (0..n as u32).chain((0..n as u32).map(|q| 64 + q)).collect();
    let mut rows: Vec<u128> = gens
        .iter()
        .map(|&g| ((g >> 64) as u64 as u128) | ((g as u64 as u128) << 64))
        .collect();
    let mut pivots: Vec<u32> = Vec::new();
    let mut r = 0;
    for &c in &coords {
        if let Some(k) = (r..rows.len()).find(|&k| rows[k] >> c & 1 == 1) {
            rows.swap(r, k);
            for j in 0..rows.len() {
                if j != r && rows[j] >> c & 1 == 1 {
                    rows[j] ^= rows[r];
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    let mut basis = Vec::new();
    for &free in coords.iter().filter(|c| !pivots.contains(c)) {
        let mut v = 1u128 << free;
        for (row, &pivot) in rows.iter().zip(&pivots) {
            if row >> free & 1 == 1 {
                v |= 1u128 << pivot;
            }
        }
        basis.push(v);
    }
    basis
}

/// Splits a commutant basis into `(stabilizer-like, logical pairs)` by
/// symplectic Gram–Schmidt.
pub(crate) fn symplectic_pairs(mut vectors: Vec<u128>) -> Vec<(u128, u128)> {
    let mut pairs = Vec::new();
    while let Some(u) = (!vectors.is_empty()).then(|| vectors.remove(0)) {
        let Some(k) = vectors.iter().position(|&w| product(u, w) == 1) else {
            continue;
        };
        let w = vectors.remove(k);
        for v in &mut vectors {
            let (pu, pw) = (product(*v, u), product(*v, w));
            if pw == 1 {
                *v ^= u;
            }
            if pu == 1 {
                *v ^= w;
            }
        }
        pairs.push((u, w));
    }
    pairs
}
