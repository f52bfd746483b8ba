//! Exact diagonalization of a driven qubit chain with Ising couplings.
//!
//! The crate assembles the rotating-frame Hamiltonian of an `L`-qubit chain
//! in either the computational basis or the basis of non-interacting
//! single-qubit eigenstates ("quasiparticles"), diagonalizes it densely, and
//! measures how eigenstates delocalize as the coupling grows: band structure,
//! participation numbers, and unfolded level-spacing statistics, together
//! with closed-form estimates of where the crossover happens.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod basis;
pub mod eigen;
pub mod error;
pub mod hamiltonian;
pub mod model;
pub mod operator;
pub mod quasiparticle;
pub mod sweep;
pub mod theory;

pub use analysis::{
    detect_bands, mean_central_npc, participation_number, unfold_and_spacings, BandConfig, BandPartition,
    SpacingStatistics, UnfoldConfig,
};
pub use basis::{basis_index, occupations, IndexConvention};
pub use eigen::{diagonalize, diagonalize_with, eigenvalues, EigenOptions, SpectralDecomposition};
pub use error::{Error, ErrorCategory, Result};
pub use hamiltonian::build_z_hamiltonian;
pub use model::{coupling_table, CouplingModel, CouplingTable, FieldProfile, SystemSpec};
pub use operator::{BasisTag, HermitianMatrix};
pub use quasiparticle::{build_hamiltonian, build_quasiparticle_hamiltonian, rotation_unitary, RotationUnitary};
pub use sweep::{
    eigenstate_profile, run_sweep, EigenstateProfile, JGrid, StateSelector, SweepOutput, SweepPlan, SweepResult,
};
pub use theory::{brute_force_band_extent, predict, theory_report, TheoryReport};
