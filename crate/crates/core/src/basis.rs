//! Bit-indexed product basis of an `L`-qubit register.
//!
//! Qubit `k` (counted from 0) occupies bit position `L - 1 - k` of the basis
//! index, so the index reads the occupations left to right in qubit order.
//! An occupation of 0 is the single-qubit ground state, which is the
//! `I^z = +1/2` eigenstate in the computational basis and the lower
//! quasi-energy state in the quasiparticle basis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The only index convention in use; carried on matrices so that exported
/// data is self-describing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexConvention {
    /// Index `sum_k i_k 2^(L-1-k)`; occupation 0 is the ground state.
    BigEndianGroundZero,
}

/// Maps an occupation sequence to its basis index.
pub fn basis_index(occupations: &[u8], qubits: usize) -> Result<usize> {
    if occupations.len() != qubits {
        return Err(Error::Contract(format!(
            "expected {qubits} occupations, got {}",
            occupations.len()
        )));
    }
    if qubits >= usize::BITS as usize {
        return Err(Error::Capacity {
            what: "qubit register",
            requested: qubits,
            cap: usize::BITS as usize - 1,
        });
    }
    occupations.iter().try_fold(0usize, |acc, &bit| match bit {
        0 | 1 => Ok((acc << 1) | bit as usize),
        other => Err(Error::Contract(format!("occupation {other} is not a bit"))),
    })
}

/// Inverse of [`basis_index`].
pub fn occupations(index: usize, qubits: usize) -> Result<Vec<u8>> {
    if qubits < usize::BITS as usize && index >> qubits != 0 {
        return Err(Error::Contract(format!(
            "index {index} out of range for {qubits} qubits"
        )));
    }
    Ok((0..qubits).map(|k| bit(index, k, qubits)).collect())
}

/// Occupation of qubit `k` in basis state `index`.
#[inline]
pub fn bit(index: usize, k: usize, qubits: usize) -> u8 {
    ((index >> (qubits - 1 - k)) & 1) as u8
}

/// Mask that flips qubit `k`.
#[inline]
pub fn flip_mask(k: usize, qubits: usize) -> usize {
    1 << (qubits - 1 - k)
}

/// `I^z` eigenvalue of qubit `k`: `+1/2` for occupation 0, `-1/2` for 1.
#[inline]
pub fn spin_z(index: usize, k: usize, qubits: usize) -> f64 {
    0.5 - f64::from(bit(index, k, qubits))
}

/// Number of excited qubits.
#[inline]
pub fn excitations(index: usize) -> u32 {
    index.count_ones()
}

/// Binomial coefficient, exact for the register sizes used here.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
