use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::basis::binomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BandConfig {
    /// Gaps wider than `gap_fraction * Omega` separate bands.
    pub gap_fraction: f64,
    /// A partition is well separated when every inter-band gap exceeds this
    /// multiple of the largest intra-band spacing.
    pub separation_factor: f64,
}

impl Default for BandConfig {
    fn default() -> Self {
        BandConfig {
            gap_fraction: 0.5,
            separation_factor: 2.0,
        }
    }
}

/// Grouping of an ascending spectrum into contiguous bands.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandPartition {
    pub bands: Vec<Range<usize>>,
    /// `gaps[i]` separates `bands[i]` from `bands[i + 1]`.
    pub gaps: Vec<f64>,
    /// Band whose energy interval contains the spectrum median.
    pub central: usize,
    /// `L + 1` when the level count is a power of two, else unknown.
    pub expected_bands: Option<usize>,
    /// Fewer bands than expected: neighbouring bands have merged.
    pub overlap: bool,
    pub well_separated: bool,
    /// Levels used for central-band observables. Equal to the central band
    /// unless bands overlap; then it is the `C(L, L/2)` levels centred on the
    /// median, clipped to the band containing it.
    pub central_window: Range<usize>,
}

impl BandPartition {
    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.bands.iter().map(|b| b.len()).collect()
    }

    pub fn central_band(&self) -> Range<usize> {
        self.bands[self.central].clone()
    }
}

pub fn detect_bands(eigenvalues: &[f64], omega: f64) -> Result<BandPartition> {
    detect_bands_with(eigenvalues, omega, &BandConfig::default())
}

pub fn detect_bands_with(eigenvalues: &[f64], omega: f64, config: &BandConfig) -> Result<BandPartition> {
    if eigenvalues.is_empty() {
        return Err(Error::Empty("eigenvalue list"));
    }
    if eigenvalues.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::Contract("eigenvalues must be sorted ascending".into()));
    }
    let threshold = config.gap_fraction * omega;

    let mut bands = Vec::new();
    let mut gaps = Vec::new();
    let mut start = 0;
    for (i, w) in eigenvalues.windows(2).enumerate() {
        let gap = w[1] - w[0];
        if gap > threshold {
            bands.push(start..i + 1);
            gaps.push(gap);
            start = i + 1;
        }
    }
    bands.push(start..eigenvalues.len());

    let n = eigenvalues.len();
    let median = if n % 2 == 1 {
        eigenvalues[n / 2]
    } else {
        0.5 * (eigenvalues[n / 2 - 1] + eigenvalues[n / 2])
    };
    // nearest band interval to the median; ties go to the lower band
    let distance = |b: &Range<usize>| {
        let (lo, hi) = (eigenvalues[b.start], eigenvalues[b.end - 1]);
        if median < lo {
            lo - median
        } else if median > hi {
            median - hi
        } else {
            0.0
        }
    };
    let central = (0..bands.len())
        .min_by(|&i, &j| distance(&bands[i]).total_cmp(&distance(&bands[j])))
        .unwrap();

    let qubits = n.is_power_of_two().then(|| n.trailing_zeros() as usize);
    let expected_bands = qubits.map(|l| l + 1);
    let overlap = expected_bands.is_some_and(|e| bands.len() < e);

    let max_intra = bands
        .iter()
        .flat_map(|b| eigenvalues[b.clone()].windows(2).map(|w| w[1] - w[0]))
        .fold(0.0, f64::max);
    let well_separated = gaps.iter().all(|&g| g > config.separation_factor * max_intra);

    let central_band = bands[central].clone();
    let central_window = match qubits {
        Some(l) if overlap => {
            let width = (binomial(l as u64, (l / 2) as u64) as usize).min(central_band.len());
            let lo = (n / 2).saturating_sub(width / 2);
            let lo = lo.clamp(central_band.start, central_band.end - width);
            lo..lo + width
        }
        _ => central_band,
    };

    Ok(BandPartition {
        bands,
        gaps,
        central,
        expected_bands,
        overlap,
        well_separated,
        central_window,
    })
}
