//! Physical parameters of the driven qubit chain.
//!
//! All frequencies are dimensionless with `hbar = 1`. Only detunings
//! `omega_k - nu` enter the rotating-frame Hamiltonian, so `omega0` is a
//! reference offset and defaults to zero.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Assembly refuses registers larger than this unless overridden.
pub const DEFAULT_MAX_QUBITS: usize = 16;

/// Larmor frequency of qubit `k` as a function of position.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldProfile {
    /// `omega_k = omega0 + a k` (constant field gradient).
    Linear { a: f64 },
    /// `omega_k = omega0 + a k^p`.
    PowerLaw { a: f64, p: f64 },
}

impl FieldProfile {
    pub fn offset(&self, k: usize) -> f64 {
        match *self {
            FieldProfile::Linear { a } => a * k as f64,
            FieldProfile::PowerLaw { a, p } => a * (k as f64).powf(p),
        }
    }

    pub fn gradient(&self) -> f64 {
        match *self {
            FieldProfile::Linear { a } | FieldProfile::PowerLaw { a, .. } => a,
        }
    }

    /// Slope `a` when the profile is a constant gradient (`p = 1` counts).
    pub fn linear_gradient(&self) -> Option<f64> {
        match *self {
            FieldProfile::Linear { a } => Some(a),
            FieldProfile::PowerLaw { a, p: 1.0 } => Some(a),
            FieldProfile::PowerLaw { .. } => None,
        }
    }
}

impl Default for FieldProfile {
    fn default() -> Self {
        FieldProfile::Linear { a: 1.0 }
    }
}

/// Ising couplings `J_{k,n}` between qubits.
///
/// Random tables draw `u` uniformly on `[-1, 1]` from ChaCha8 seeded with
/// `seed` on stream `stream`, pairs visited in lexicographic `(k, n)` order,
/// and scale by `J`. Changing `J` therefore rescales the same draw.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CouplingModel {
    /// `J_{k,k+1} = J`.
    #[serde(rename = "dynamical_nn")]
    DynamicalNN {
        #[serde(rename = "J")]
        j: f64,
    },
    /// Independent `J_{k,k+1}` uniform on `[-J, J]`.
    #[serde(rename = "random_nn")]
    RandomNN {
        #[serde(rename = "J")]
        j: f64,
        seed: u64,
        #[serde(default)]
        stream: u64,
    },
    /// Independent `J_{k,n}` uniform on `[-J, J]` for every pair `n > k`.
    #[serde(rename = "random_all")]
    RandomAll {
        #[serde(rename = "J")]
        j: f64,
        seed: u64,
        #[serde(default)]
        stream: u64,
    },
}

impl CouplingModel {
    pub fn strength(&self) -> f64 {
        match *self {
            CouplingModel::DynamicalNN { j }
            | CouplingModel::RandomNN { j, .. }
            | CouplingModel::RandomAll { j, .. } => j,
        }
    }

    pub fn with_strength(self, strength: f64) -> Self {
        match self {
            CouplingModel::DynamicalNN { .. } => CouplingModel::DynamicalNN { j: strength },
            CouplingModel::RandomNN { seed, stream, .. } => CouplingModel::RandomNN {
                j: strength,
                seed,
                stream,
            },
            CouplingModel::RandomAll { seed, stream, .. } => CouplingModel::RandomAll {
                j: strength,
                seed,
                stream,
            },
        }
    }

    /// Same model on another random stream; a no-op for the dynamical model.
    pub fn with_stream(self, stream: u64) -> Self {
        match self {
            CouplingModel::RandomNN { j, seed, .. } => CouplingModel::RandomNN { j, seed, stream },
            CouplingModel::RandomAll { j, seed, .. } => CouplingModel::RandomAll { j, seed, stream },
            other => other,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            CouplingModel::RandomNN { j, stream, .. } => CouplingModel::RandomNN { j, seed, stream },
            CouplingModel::RandomAll { j, stream, .. } => CouplingModel::RandomAll { j, seed, stream },
            other => other,
        }
    }

    pub fn is_random(&self) -> bool {
        !matches!(self, CouplingModel::DynamicalNN { .. })
    }

    pub fn is_nearest_neighbor(&self) -> bool {
        !matches!(self, CouplingModel::RandomAll { .. })
    }
}

impl Default for CouplingModel {
    fn default() -> Self {
        CouplingModel::DynamicalNN { j: 0.0 }
    }
}

/// Nonzero couplings keyed by `(k, n)` with `k < n`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CouplingTable(BTreeMap<(usize, usize), f64>);

impl CouplingTable {
    pub fn get(&self, k: usize, n: usize) -> f64 {
        let key = if k < n { (k, n) } else { (n, k) };
        self.0.get(&key).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.0.iter().map(|(&key, &value)| (key, value))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> BTreeMap<(usize, usize), f64> {
        self.0
    }
}

/// Coupling table of `model` on a chain of `qubits` sites.
pub fn coupling_table(model: &CouplingModel, qubits: usize) -> CouplingTable {
    let strength = model.strength();
    let mut table = BTreeMap::new();
    let mut insert = |k: usize, n: usize, value: f64| {
        if value != 0.0 {
            table.insert((k, n), value);
        }
    };
    match *model {
        CouplingModel::DynamicalNN { j } => {
            for k in 0..qubits.saturating_sub(1) {
                insert(k, k + 1, j);
            }
        }
        CouplingModel::RandomNN { seed, stream, .. } => {
            let mut rng = seeded_rng(seed, stream);
            for k in 0..qubits.saturating_sub(1) {
                let u: f64 = rng.random_range(-1.0..=1.0);
                insert(k, k + 1, strength * u);
            }
        }
        CouplingModel::RandomAll { seed, stream, .. } => {
            let mut rng = seeded_rng(seed, stream);
            for k in 0..qubits {
                for n in k + 1..qubits {
                    let u: f64 = rng.random_range(-1.0..=1.0);
                    insert(k, n, strength * u);
                }
            }
        }
    }
    CouplingTable(table)
}

fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Parameters of the per-pulse rotating-frame Hamiltonian.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemSpec {
    #[serde(rename = "L")]
    pub qubits: usize,
    #[serde(default)]
    pub omega0: f64,
    #[serde(default)]
    pub field_profile: FieldProfile,
    /// Drive frequency; `None` means resonant with qubit 0 (`nu = omega0`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(rename = "Omega")]
    pub rabi: f64,
    #[serde(default = "default_phase")]
    pub phi: f64,
    #[serde(default)]
    pub coupling: CouplingModel,
    #[serde(default = "default_max_qubits")]
    pub max_qubits: usize,
}

fn default_phase() -> f64 {
    FRAC_PI_2
}

fn default_max_qubits() -> usize {
    DEFAULT_MAX_QUBITS
}

impl Default for SystemSpec {
    fn default() -> Self {
        SystemSpec {
            qubits: 12,
            omega0: 0.0,
            field_profile: FieldProfile::default(),
            nu: None,
            rabi: 100.0,
            phi: FRAC_PI_2,
            coupling: CouplingModel::default(),
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

/// Result of checking `Omega >> delta omega_k >> J`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeReport {
    pub min_level_step: f64,
    pub max_level_step: f64,
    /// `Omega >= 10 max_k |omega_{k+1} - omega_k|`.
    pub drive_dominates: bool,
    /// `min_k |omega_{k+1} - omega_k| >= 10 J`.
    pub gradient_dominates: bool,
    pub non_selective: bool,
}

impl SystemSpec {
    /// Default parameters with the given register size and coupling.
    pub fn chain(qubits: usize, rabi: f64, gradient: f64, coupling: CouplingModel) -> Self {
        SystemSpec {
            qubits,
            rabi,
            field_profile: FieldProfile::Linear { a: gradient },
            coupling,
            ..SystemSpec::default()
        }
    }

    pub fn dim(&self) -> usize {
        1usize << self.qubits
    }

    pub fn drive_frequency(&self) -> f64 {
        self.nu.unwrap_or(self.omega0)
    }

    pub fn larmor(&self, k: usize) -> f64 {
        self.omega0 + self.field_profile.offset(k)
    }

    /// `omega_k - nu`.
    pub fn detuning(&self, k: usize) -> f64 {
        self.larmor(k) - self.drive_frequency()
    }

    pub fn detunings(&self) -> Vec<f64> {
        (0..self.qubits).map(|k| self.detuning(k)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rabi > 0.0) {
            return Err(Error::Config(format!("Omega must be positive, got {}", self.rabi)));
        }
        self.validate_any_drive()
    }

    /// As [`SystemSpec::validate`] but accepts any finite `Omega`, including
    /// zero and negative values, which only the computational-basis assembly
    /// can represent.
    pub fn validate_any_drive(&self) -> Result<()> {
        if self.qubits < 1 {
            return Err(Error::Config("L must be at least 1".into()));
        }
        if !self.rabi.is_finite() {
            return Err(Error::Config(format!("Omega must be finite, got {}", self.rabi)));
        }
        let finite = [self.omega0, self.phi, self.drive_frequency(), self.coupling.strength()]
            .iter()
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::Config("frequencies and phase must be finite".into()));
        }
        match self.field_profile {
            FieldProfile::Linear { a } if !a.is_finite() => {
                return Err(Error::Config("field gradient must be finite".into()))
            }
            FieldProfile::PowerLaw { a, p } if !a.is_finite() || !(p > 0.0) => {
                return Err(Error::Config("power-law profile needs finite a and p > 0".into()))
            }
            _ => {}
        }
        self.check_capacity()
    }

    pub fn check_capacity(&self) -> Result<()> {
        if self.qubits > self.max_qubits {
            return Err(Error::Capacity {
                what: "qubit register",
                requested: self.qubits,
                cap: self.max_qubits,
            });
        }
        Ok(())
    }

    pub fn coupling_table(&self) -> CouplingTable {
        coupling_table(&self.coupling, self.qubits)
    }

    /// Couplings with the overall strength set to one.
    pub fn unit_coupling_table(&self) -> CouplingTable {
        coupling_table(&self.coupling.with_strength(1.0), self.qubits)
    }

    pub fn regime(&self, interaction: f64) -> RegimeReport {
        let steps: Vec<f64> = (0..self.qubits.saturating_sub(1))
            .map(|k| (self.larmor(k + 1) - self.larmor(k)).abs())
            .collect();
        let min_level_step = steps.iter().copied().fold(f64::INFINITY, f64::min);
        let max_level_step = steps.iter().copied().fold(0.0, f64::max);
        let drive_dominates = self.rabi >= 10.0 * max_level_step;
        let gradient_dominates = steps.is_empty() || min_level_step >= 10.0 * interaction.abs();
        RegimeReport {
            min_level_step,
            max_level_step,
            drive_dominates,
            gradient_dominates,
            non_selective: drive_dominates && gradient_dominates,
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let spec: SystemSpec = toml::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }
}
