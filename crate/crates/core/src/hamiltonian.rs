//! Rotating-frame Hamiltonian in the computational basis,
//!
//! `H = -sum_k [ delta_k I^z_k + Omega (cos phi I^x_k - sin phi I^y_k) ]
//!      - 2 sum_{k<n} J_{k,n} I^z_k I^z_n`,
//!
//! with `delta_k = omega_k - nu`. For `phi = pi/2` the drive term is
//! `+Omega I^y_k`.

use num_complex::Complex64;

use crate::basis::{flip_mask, spin_z};
use crate::error::{Error, Result};
use crate::model::{CouplingTable, SystemSpec};
use crate::operator::{BasisTag, HermitianMatrix};

/// `e^{i phi}` with components that vanish at multiples of `pi/2` set to
/// exact zeros, so the `phi = pi/2` drive has purely imaginary entries.
pub(crate) fn unit_phase(phi: f64) -> Complex64 {
    let (sin, cos) = phi.sin_cos();
    let snap = |x: f64| if x.abs() < 1e-15 { 0.0 } else { x };
    Complex64::new(snap(cos), snap(sin))
}

/// Ising diagonal `-sum_k delta_k m_k - 2 sum J_{k,n} m_k m_n` of one basis state.
pub fn ising_energy(index: usize, qubits: usize, detunings: &[f64], couplings: &CouplingTable) -> f64 {
    let field: f64 = detunings
        .iter()
        .enumerate()
        .map(|(k, d)| -d * spin_z(index, k, qubits))
        .sum();
    let bonds: f64 = couplings
        .iter()
        .map(|((k, n), j)| -2.0 * j * spin_z(index, k, qubits) * spin_z(index, n, qubits))
        .sum();
    field + bonds
}

/// Assembles the computational-basis Hamiltonian at interaction strength
/// `interaction` (the coupling model's own strength is replaced).
pub fn build_z_hamiltonian(spec: &SystemSpec, interaction: f64) -> Result<HermitianMatrix> {
    spec.validate_any_drive()?;
    if !(interaction >= 0.0) || !interaction.is_finite() {
        return Err(Error::Contract(format!(
            "interaction strength must be finite and non-negative, got {interaction}"
        )));
    }
    let qubits = spec.qubits;
    let dim = spec.dim();
    let detunings = spec.detunings();
    let couplings = crate::model::coupling_table(&spec.coupling.with_strength(interaction), qubits);

    // <0|T|1> = -(Omega/2) e^{i phi}; <1|T|0> is its conjugate.
    let lower_to_upper = -0.5 * spec.rabi * unit_phase(spec.phi);
    let mut triplets = Vec::with_capacity(dim * (qubits + 1));
    for s in 0..dim {
        triplets.push((
            s,
            s,
            Complex64::new(ising_energy(s, qubits, &detunings, &couplings), 0.0),
        ));
        for k in 0..qubits {
            let t = s ^ flip_mask(k, qubits);
            let value = if crate::basis::bit(s, k, qubits) == 0 {
                lower_to_upper
            } else {
                lower_to_upper.conj()
            };
            triplets.push((s, t, value));
        }
    }
    Ok(HermitianMatrix::from_triplets(dim, BasisTag::Z, triplets))
}
