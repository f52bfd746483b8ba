//! Observables computed from spectral decompositions.

pub mod bands;
pub mod participation;
pub mod spacing;

pub use bands::{detect_bands, detect_bands_with, BandConfig, BandPartition};
pub use participation::{
    central_participation_numbers, mean_central_npc, participation_from_probabilities, participation_number,
};
pub use spacing::{
    ks_distance, ks_two_sample, poisson_cdf, unfold_and_spacings, unfold_and_spacings_with, wigner_cdf, Histogram,
    SpacingStatistics, UnfoldConfig,
};
