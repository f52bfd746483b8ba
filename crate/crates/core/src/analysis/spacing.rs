//! Unfolded nearest-neighbour spacing statistics.
//!
//! The cumulative level count inside a band is fitted by a low-degree
//! polynomial in the (rescaled) energy; unfolded spacings are differences
//! of the fitted staircase at consecutive levels, normalized to unit mean.
//! If the fit is not monotone on the levels the degree is lowered until it
//! is. Near-degenerate levels are kept as (near-)zero spacings.

use faer::linalg::solvers::SolveLstsq;
use faer::Mat;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const MIN_LEVELS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct UnfoldConfig {
    pub degree: usize,
    pub bins: usize,
    pub range: (f64, f64),
}

impl Default for UnfoldConfig {
    fn default() -> Self {
        UnfoldConfig {
            degree: 3,
            bins: 40,
            range: (0.0, 4.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    /// Probability density per bin (integrates to the in-range fraction).
    pub density: Vec<f64>,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn new(samples: &[f64], bins: usize, (lo, hi): (f64, f64)) -> Self {
        let width = (hi - lo) / bins as f64;
        let edges = (0..=bins).map(|i| lo + i as f64 * width).collect();
        let mut counts = vec![0usize; bins];
        for &s in samples {
            if s >= lo && s <= hi {
                let bin = (((s - lo) / width) as usize).min(bins - 1);
                counts[bin] += 1;
            }
        }
        let total = samples.len().max(1) as f64;
        let density = counts.iter().map(|&c| c as f64 / (total * width)).collect();
        Histogram { edges, density, counts }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpacingStatistics {
    pub spacings: Vec<f64>,
    pub histogram: Histogram,
    pub ks_poisson: f64,
    pub ks_wigner: f64,
    /// Polynomial degree actually used for the staircase fit.
    pub fit_degree: usize,
}

/// Cumulative distribution of the Poisson spacing law `e^{-s}`.
pub fn poisson_cdf(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else {
        -(-s).exp_m1()
    }
}

/// Cumulative distribution of the Wigner surmise `(pi s / 2) e^{-pi s^2 / 4}`.
pub fn wigner_cdf(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else {
        -(-PI * s * s / 4.0).exp_m1()
    }
}

/// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
pub fn ks_distance(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            ((i as f64 + 1.0) / n - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

/// Two-sample Kolmogorov-Smirnov statistic.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut worst = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        worst = worst.max((i as f64 / na - j as f64 / nb).abs());
    }
    worst
}

fn fit_staircase(x: &[f64], degree: usize) -> Vec<f64> {
    let n = x.len();
    let design = Mat::from_fn(n, degree + 1, |r, c| x[r].powi(c as i32));
    let target = Mat::from_fn(n, 1, |r, _| r as f64);
    let coefficients = design.qr().solve_lstsq(&target);
    x.iter()
        .map(|&xi| (0..=degree).rev().fold(0.0, |acc, c| acc * xi + coefficients[(c, 0)]))
        .collect()
}

pub fn unfold_and_spacings(levels: &[f64]) -> Result<SpacingStatistics> {
    unfold_and_spacings_with(levels, &UnfoldConfig::default())
}

pub fn unfold_and_spacings_with(levels: &[f64], config: &UnfoldConfig) -> Result<SpacingStatistics> {
    if levels.len() < MIN_LEVELS {
        return Err(Error::TooFewLevels {
            required: MIN_LEVELS,
            found: levels.len(),
        });
    }
    if levels.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::Contract("levels must be sorted ascending".into()));
    }
    let (lo, hi) = (levels[0], levels[levels.len() - 1]);
    if !(hi > lo) {
        return Err(Error::Degenerate("all levels coincide".into()));
    }
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let x: Vec<f64> = levels.iter().map(|e| (e - center) / half).collect();

    let mut fit_degree = config.degree.max(1);
    let mut spacings = loop {
        let staircase = fit_staircase(&x, fit_degree);
        let spacings: Vec<f64> = staircase.windows(2).map(|w| w[1] - w[0]).collect();
        if spacings.iter().all(|&s| s >= 0.0) || fit_degree == 1 {
            break spacings;
        }
        fit_degree -= 1;
    };
    let mean = spacings.iter().sum::<f64>() / spacings.len() as f64;
    if !(mean > 0.0) {
        return Err(Error::Degenerate("unfolded staircase is flat".into()));
    }
    for s in &mut spacings {
        *s = (*s / mean).max(0.0);
    }

    Ok(SpacingStatistics {
        histogram: Histogram::new(&spacings, config.bins, config.range),
        ks_poisson: ks_distance(&spacings, poisson_cdf),
        ks_wigner: ks_distance(&spacings, wigner_cdf),
        spacings,
        fit_degree,
    })
}
