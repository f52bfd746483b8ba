use num_complex::Complex64;

use super::bands::BandPartition;
use crate::eigen::SpectralDecomposition;
use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-9;

/// Number of principal components `1 / sum_n |psi_n|^4`.
pub fn participation_number(amplitudes: &[Complex64]) -> Result<f64> {
    let probabilities: Vec<f64> = amplitudes.iter().map(|a| a.norm_sqr()).collect();
    participation_from_probabilities(&probabilities)
}

/// Same as [`participation_number`] from `w_n = |psi_n|^2`.
pub fn participation_from_probabilities(probabilities: &[f64]) -> Result<f64> {
    let norm: f64 = probabilities.iter().sum();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm_sq: norm });
    }
    Ok(1.0 / probabilities.iter().map(|w| w * w).sum::<f64>())
}

/// Participation numbers of every eigenvector in the central window.
pub fn central_participation_numbers(decomposition: &SpectralDecomposition, bands: &BandPartition) -> Result<Vec<f64>> {
    bands
        .central_window
        .clone()
        .map(|i| participation_from_probabilities(&decomposition.probabilities(i)))
        .collect()
}

/// Plain mean of the participation number over the central window.
pub fn mean_central_npc(decomposition: &SpectralDecomposition, bands: &BandPartition) -> Result<f64> {
    if bands.central_window.is_empty() {
        return Err(Error::Empty("central band"));
    }
    let values = central_participation_numbers(decomposition, bands)?;
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}
