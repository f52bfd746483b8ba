//! Closed-form chaos-border estimates and their brute-force counterparts.
//!
//! For a constant field gradient `a` and nearest-neighbour coupling the
//! quasi-energies `eps_k ~ +-(Omega + a^2 k^2 / 2 Omega) / 2` give
//!
//! | quantity            | estimate                  |
//! |---------------------|---------------------------|
//! | central band size   | `C(L, L/2)`               |
//! | central band width  | `a^2 L^2 (L - 1) / 8 Omega` |
//! | coupled window      | `2 a^2 L / Omega`         |
//! | partners per state  | `L / 2`                   |
//! | coupled spacing     | `2 a^2 / Omega`           |
//! | chaos border `J_cr` | `4 a^2 / Omega`           |
//! | band-overlap size   | `(Omega / a)^{2/3}`       |
//!
//! The brute-force side enumerates half-filled quasiparticle configurations
//! with the exact `E_k = sqrt(delta_k^2 + Omega^2)`.

use serde::Serialize;

use crate::basis::{binomial, flip_mask};
use crate::error::{Error, Result};
use crate::model::{CouplingModel, SystemSpec};
use crate::quasiparticle::{quasi_energy, QuasiEnergyTable};

/// Largest register the enumeration accepts.
pub const MAX_ENUMERATION_QUBITS: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictorStatus {
    Derived,
    /// The closed forms assume a constant gradient; values are omitted.
    NotDerived,
}

/// Estimates quoted for all-to-all random coupling, reported as written:
/// `(Delta E)_f = L^2 / 2 Omega`, `M_f = a^2 L^2 / 4`, `delta E = 2 a^2 / Omega`.
/// Their ratio equals `delta E` only for `a = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AllToAllEstimates {
    #[serde(rename = "delta_E_f")]
    pub coupled_window: f64,
    #[serde(rename = "M_f")]
    pub partners: f64,
    #[serde(rename = "delta_E")]
    pub coupled_spacing: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandExtent {
    #[serde(rename = "N_cb")]
    pub central_states: u64,
    #[serde(rename = "delta_E_cb")]
    pub central_width: f64,
    #[serde(rename = "delta_E_f")]
    pub coupled_window: f64,
    #[serde(rename = "M_f")]
    pub partners: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Deviations {
    #[serde(rename = "N_cb")]
    pub central_states: f64,
    #[serde(rename = "delta_E_cb")]
    pub central_width: f64,
    #[serde(rename = "delta_E_f")]
    pub coupled_window: f64,
    #[serde(rename = "M_f")]
    pub partners: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoryReport {
    pub status: PredictorStatus,
    #[serde(rename = "L")]
    pub qubits: usize,
    #[serde(rename = "Omega")]
    pub rabi: f64,
    pub a: f64,
    #[serde(rename = "N_cb")]
    pub central_states: Option<u64>,
    #[serde(rename = "delta_E_cb")]
    pub central_width: Option<f64>,
    #[serde(rename = "delta_E_f")]
    pub coupled_window: Option<f64>,
    #[serde(rename = "M_f")]
    pub partners: Option<f64>,
    #[serde(rename = "delta_E")]
    pub coupled_spacing: Option<f64>,
    #[serde(rename = "J_cr")]
    pub chaos_border: Option<f64>,
    #[serde(rename = "L_max")]
    pub overlap_size: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_to_all: Option<AllToAllEstimates>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force: Option<BandExtent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_deviation: Option<Deviations>,
}

/// `4 a^2 / Omega`.
pub fn chaos_border(a: f64, rabi: f64) -> f64 {
    4.0 * a * a / rabi
}

pub fn predict(spec: &SystemSpec) -> Result<TheoryReport> {
    spec.validate()?;
    let l = spec.qubits;
    let omega = spec.rabi;
    let mut report = TheoryReport {
        status: PredictorStatus::NotDerived,
        qubits: l,
        rabi: omega,
        a: spec.field_profile.gradient(),
        central_states: None,
        central_width: None,
        coupled_window: None,
        partners: None,
        coupled_spacing: None,
        chaos_border: None,
        overlap_size: None,
        all_to_all: None,
        brute_force: None,
        relative_deviation: None,
    };
    let Some(a) = spec.field_profile.linear_gradient() else {
        return Ok(report);
    };
    let lf = l as f64;
    let a2 = a * a;
    report.status = PredictorStatus::Derived;
    report.coupled_spacing = Some(2.0 * a2 / omega);
    report.chaos_border = Some(chaos_border(a, omega));
    report.overlap_size = Some((omega / a).powf(2.0 / 3.0));
    if l.is_multiple_of(2) {
        report.central_states = Some(binomial(l as u64, (l / 2) as u64));
        report.central_width = Some(a2 * lf * lf * (lf - 1.0) / (8.0 * omega));
        report.coupled_window = Some(2.0 * a2 * lf / omega);
        report.partners = Some(lf / 2.0);
    }
    if let CouplingModel::RandomAll { .. } = spec.coupling {
        report.all_to_all = Some(AllToAllEstimates {
            coupled_window: lf * lf / (2.0 * omega),
            partners: a2 * lf * lf / 4.0,
            coupled_spacing: 2.0 * a2 / omega,
        });
    }
    Ok(report)
}

/// Exact central-band quantities by enumeration of half-filled configurations.
///
/// * `central_width`: max minus min of the half-filled quasi-energies.
/// * `coupled_window`: max minus min of `E(t) - E(s)` over all pairs coupled
///   by an adjacent exchange inside the half-filled sector.
/// * `partners`: mean number of such partners per state.
pub fn brute_force_band_extent(spec: &SystemSpec) -> Result<BandExtent> {
    spec.validate()?;
    let l = spec.qubits;
    if l > MAX_ENUMERATION_QUBITS {
        return Err(Error::Capacity {
            what: "half-filling enumeration",
            requested: l,
            cap: MAX_ENUMERATION_QUBITS,
        });
    }
    if !l.is_multiple_of(2) || l < 2 {
        return Err(Error::Contract(format!("central band needs an even L >= 2, got {l}")));
    }
    if spec.field_profile.linear_gradient().is_none() {
        return Err(Error::Contract(
            "band extent enumeration assumes a linear profile".into(),
        ));
    }
    let splittings = QuasiEnergyTable::new(spec).splittings();

    let mut count = 0u64;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut dlo, mut dhi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut partner_total = 0u64;
    for s in (0..1usize << l).filter(|s| s.count_ones() as usize == l / 2) {
        count += 1;
        let e = quasi_energy(s, &splittings);
        lo = lo.min(e);
        hi = hi.max(e);
        for k in 0..l - 1 {
            let pair = flip_mask(k, l) | flip_mask(k + 1, l);
            let bits = s & pair;
            if bits != 0 && bits != pair {
                partner_total += 1;
                let diff = quasi_energy(s ^ pair, &splittings) - e;
                dlo = dlo.min(diff);
                dhi = dhi.max(diff);
            }
        }
    }
    Ok(BandExtent {
        central_states: count,
        central_width: hi - lo,
        coupled_window: if partner_total > 0 { dhi - dlo } else { 0.0 },
        partners: partner_total as f64 / count as f64,
    })
}

/// Predictions plus, where enumeration applies, brute-force counterparts
/// and relative deviations `|estimate - exact| / exact`.
pub fn theory_report(spec: &SystemSpec) -> Result<TheoryReport> {
    let mut report = predict(spec)?;
    let enumerable = report.status == PredictorStatus::Derived
        && spec.qubits.is_multiple_of(2)
        && spec.qubits <= MAX_ENUMERATION_QUBITS;
    if enumerable {
        let exact = brute_force_band_extent(spec)?;
        let rel = |estimate: f64, exact: f64| (estimate - exact).abs() / exact.abs();
        report.relative_deviation = Some(Deviations {
            central_states: rel(report.central_states.unwrap() as f64, exact.central_states as f64),
            central_width: rel(report.central_width.unwrap(), exact.central_width),
            coupled_window: rel(report.coupled_window.unwrap(), exact.coupled_window),
            partners: rel(report.partners.unwrap(), exact.partners),
        });
        report.brute_force = Some(exact);
    }
    Ok(report)
}
