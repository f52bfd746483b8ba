//! Quasiparticle representation `H = H0 + J V0`.
//!
//! Each qubit's non-interacting Hamiltonian `-delta_k I^z_k + Omega I^perp_k`
//! is diagonalized by a single-qubit rotation; in the product of those
//! eigenbases
//!
//! ```text
//! H0     = -sum_k E_k Z_k,                E_k = sqrt(delta_k^2 + Omega^2)
//! V_diag = -2 sum w_kn b_k b_n Z_k Z_n
//! V_band = -2 sum w_kn a_k a_n Y_k Y_n
//! V_off  =  2 sum w_kn (a_k b_n Y_k Z_n + a_n b_k Z_k Y_n)
//! ```
//!
//! where `Z`, `Y` are spin-1/2 operators of the quasiparticles, `w_kn` are
//! the unit-strength couplings, `a_k = Omega / E_k` and
//! `b_k = (nu - omega_k) / E_k`. Occupation 0 is the lower quasi-energy
//! `-E_k / 2`. The same pairwise algebra is applied to every coupled pair,
//! so all-to-all couplings are handled exactly as well.

use faer::Mat;
use num_complex::Complex64;
use serde::Serialize;

use crate::basis::{bit, flip_mask, spin_z};
use crate::error::Result;
use crate::model::SystemSpec;
use crate::operator::{BasisTag, HermitianMatrix};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Matrix element of a spin-1/2 `Y` from a state with occupation `from` to
/// its flipped partner: `<0|Y|1> = -i/2`, `<1|Y|0> = +i/2`.
#[inline]
fn y_element(row_bit: u8) -> Complex64 {
    if row_bit == 0 {
        Complex64::new(0.0, -0.5)
    } else {
        Complex64::new(0.0, 0.5)
    }
}

/// Per-qubit mixing coefficients `(a_k, b_k)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RotationCoefficients {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl RotationCoefficients {
    pub fn new(spec: &SystemSpec) -> Self {
        let (a, b) = (0..spec.qubits)
            .map(|k| {
                let delta = spec.detuning(k);
                let norm = delta.hypot(spec.rabi);
                (spec.rabi / norm, -delta / norm)
            })
            .unzip();
        RotationCoefficients { a, b }
    }
}

/// Single-quasiparticle energies `eps_k = +-E_k / 2` (positive branch stored).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuasiEnergyTable {
    /// `sqrt(delta_k^2 + Omega^2) / 2`.
    pub exact: Vec<f64>,
    /// `(Omega + delta_k^2 / (2 Omega)) / 2`, valid for `|delta_k| << Omega`.
    pub approximate: Vec<f64>,
}

impl QuasiEnergyTable {
    pub fn new(spec: &SystemSpec) -> Self {
        let omega = spec.rabi;
        let (exact, approximate) = spec
            .detunings()
            .into_iter()
            .map(|d| (0.5 * d.hypot(omega), 0.5 * (omega + d * d / (2.0 * omega))))
            .unzip();
        QuasiEnergyTable { exact, approximate }
    }

    /// Single-qubit level splittings `E_k`.
    pub fn splittings(&self) -> Vec<f64> {
        self.exact.iter().map(|e| 2.0 * e).collect()
    }

    pub fn max_relative_gap(&self) -> f64 {
        self.exact
            .iter()
            .zip(&self.approximate)
            .map(|(e, a)| ((e - a) / e).abs())
            .fold(0.0, f64::max)
    }
}

/// Many-body quasi-energy of basis state `index`: `-sum_k E_k m_k`.
pub fn quasi_energy(index: usize, splittings: &[f64]) -> f64 {
    let qubits = splittings.len();
    splittings
        .iter()
        .enumerate()
        .map(|(k, e)| -e * spin_z(index, k, qubits))
        .sum()
}

/// Diagonal `H0` in the quasiparticle basis.
pub fn build_h0(spec: &SystemSpec) -> Result<HermitianMatrix> {
    spec.validate()?;
    let splittings = QuasiEnergyTable::new(spec).splittings();
    let diagonal: Vec<f64> = (0..spec.dim()).map(|s| quasi_energy(s, &splittings)).collect();
    Ok(HermitianMatrix::from_diagonal(BasisTag::Quasiparticle, &diagonal))
}

/// The three pieces of the unit-strength interaction `V0`.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionParts {
    pub diag: HermitianMatrix,
    pub band: HermitianMatrix,
    pub off: HermitianMatrix,
}

impl InteractionParts {
    pub fn total(&self) -> HermitianMatrix {
        self.diag.add_scaled(&self.band, 1.0).add_scaled(&self.off, 1.0)
    }
}

pub fn build_v0(spec: &SystemSpec) -> Result<InteractionParts> {
    spec.validate()?;
    let qubits = spec.qubits;
    let dim = spec.dim();
    let RotationCoefficients { a, b } = RotationCoefficients::new(spec);
    let weights = spec.unit_coupling_table();

    let mut diag = Vec::new();
    let mut band = Vec::new();
    let mut off = Vec::new();
    for s in 0..dim {
        let mut zz = 0.0;
        for ((k, n), w) in weights.iter() {
            let (mk, mn) = (spin_z(s, k, qubits), spin_z(s, n, qubits));
            let (yk, yn) = (y_element(bit(s, k, qubits)), y_element(bit(s, n, qubits)));
            let (fk, fn_) = (flip_mask(k, qubits), flip_mask(n, qubits));

            zz += -2.0 * w * b[k] * b[n] * mk * mn;
            band.push((s, s ^ fk ^ fn_, -2.0 * w * a[k] * a[n] * yk * yn));
            off.push((s, s ^ fk, 2.0 * w * a[k] * b[n] * yk * mn));
            off.push((s, s ^ fn_, 2.0 * w * a[n] * b[k] * mk * yn));
        }
        diag.push((s, s, Complex64::new(zz, 0.0)));
    }
    let tag = BasisTag::Quasiparticle;
    Ok(InteractionParts {
        diag: HermitianMatrix::from_triplets(dim, tag, diag),
        band: HermitianMatrix::from_triplets(dim, tag, band),
        off: HermitianMatrix::from_triplets(dim, tag, off),
    })
}

/// `H0 + J V0`.
pub fn build_quasiparticle_hamiltonian(spec: &SystemSpec, interaction: f64) -> Result<HermitianMatrix> {
    let h0 = build_h0(spec)?;
    if interaction == 0.0 {
        return Ok(h0);
    }
    Ok(h0.add_scaled(&build_v0(spec)?.total(), interaction))
}

/// Assembles the Hamiltonian in the requested basis.
pub fn build_hamiltonian(spec: &SystemSpec, interaction: f64, basis: BasisTag) -> Result<HermitianMatrix> {
    match basis {
        BasisTag::Z => crate::hamiltonian::build_z_hamiltonian(spec, interaction),
        BasisTag::Quasiparticle => build_quasiparticle_hamiltonian(spec, interaction),
    }
}

/// Product of single-qubit rotations taking the computational basis to the
/// quasiparticle basis: columns of `U` are quasiparticle basis states
/// written in the computational basis, so `U^dagger H_z U = H0 + J V0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationUnitary {
    /// `factors[k][r][c]` is the single-qubit matrix of qubit `k`.
    pub factors: Vec<[[Complex64; 2]; 2]>,
}

impl RotationUnitary {
    /// `u_k = Rz(pi/2 - phi) Rx(theta_k)` with `theta_k = atan2(Omega, delta_k)`,
    /// `Rx(t) = exp(-i t I^x)` and `Rz(t) = exp(-i t I^z)`.
    pub fn new(spec: &SystemSpec) -> Self {
        let alpha = std::f64::consts::FRAC_PI_2 - spec.phi;
        let rz = [
            Complex64::from_polar(1.0, -alpha / 2.0),
            Complex64::from_polar(1.0, alpha / 2.0),
        ];
        let factors = (0..spec.qubits)
            .map(|k| {
                let theta = spec.rabi.atan2(spec.detuning(k));
                let (sin, cos) = (theta / 2.0).sin_cos();
                let rx = [
                    [Complex64::new(cos, 0.0), Complex64::new(0.0, -sin)],
                    [Complex64::new(0.0, -sin), Complex64::new(cos, 0.0)],
                ];
                [
                    [rz[0] * rx[0][0], rz[0] * rx[0][1]],
                    [rz[1] * rx[1][0], rz[1] * rx[1][1]],
                ]
            })
            .collect();
        RotationUnitary { factors }
    }

    pub fn qubits(&self) -> usize {
        self.factors.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.qubits()
    }

    pub fn element(&self, row: usize, col: usize) -> Complex64 {
        let l = self.qubits();
        self.factors
            .iter()
            .enumerate()
            .map(|(k, u)| u[bit(row, k, l) as usize][bit(col, k, l) as usize])
            .product()
    }

    pub fn to_dense(&self) -> Mat<Complex64> {
        Mat::from_fn(self.dim(), self.dim(), |r, c| self.element(r, c))
    }

    /// `U v` in `O(N L)`, one qubit factor at a time.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.apply_factors(v, false)
    }

    /// `U^dagger v`.
    pub fn apply_adjoint(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.apply_factors(v, true)
    }

    fn apply_factors(&self, v: &[Complex64], adjoint: bool) -> Vec<Complex64> {
        let l = self.qubits();
        assert_eq!(v.len(), self.dim());
        let mut out = v.to_vec();
        for (k, u) in self.factors.iter().enumerate() {
            let u = if adjoint {
                [[u[0][0].conj(), u[1][0].conj()], [u[0][1].conj(), u[1][1].conj()]]
            } else {
                *u
            };
            let mask = flip_mask(k, l);
            for s in (0..out.len()).filter(|s| s & mask == 0) {
                let (x0, x1) = (out[s], out[s | mask]);
                out[s] = u[0][0] * x0 + u[0][1] * x1;
                out[s | mask] = u[1][0] * x0 + u[1][1] * x1;
            }
        }
        out
    }

    /// Dense `U^dagger H U`; intended for small registers.
    pub fn conjugate(&self, h: &HermitianMatrix) -> Mat<Complex64> {
        let dim = self.dim();
        let mut out = Mat::<Complex64>::zeros(dim, dim);
        for c in 0..dim {
            let mut e = vec![ZERO; dim];
            e[c] = Complex64::new(1.0, 0.0);
            let column = self.apply_adjoint(&h.apply(&self.apply(&e)));
            for (r, x) in column.into_iter().enumerate() {
                out[(r, c)] = x;
            }
        }
        out
    }
}

pub fn rotation_unitary(spec: &SystemSpec) -> RotationUnitary {
    RotationUnitary::new(spec)
}
