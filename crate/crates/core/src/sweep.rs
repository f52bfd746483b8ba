//! Parameter sweeps over the coupling strength and their CSV artifacts.
//!
//! Every `(J, member)` task is independent and runs on the rayon pool;
//! results are gathered in task order and reduced sequentially so output
//! files are bit-identical regardless of thread count.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    detect_bands_with, mean_central_npc, participation_from_probabilities, spacing::MIN_LEVELS,
    unfold_and_spacings_with, BandConfig, BandPartition, UnfoldConfig,
};
use crate::basis::binomial;
use crate::eigen::{diagonalize_with, eigenvalues_with, EigenOptions};
use crate::error::{Error, Result};
use crate::model::SystemSpec;
use crate::operator::BasisTag;
use crate::quasiparticle::build_hamiltonian;
use crate::theory::{chaos_border, theory_report, TheoryReport};

/// Column order of the sweep CSV.
pub const SWEEP_COLUMNS: [&str; 10] = [
    "J",
    "J_over_J_cr",
    "mean_npc",
    "npc_over_reference",
    "ks_poisson",
    "ks_wigner",
    "band_count",
    "central_band_size",
    "overlap_flag",
    "ensemble_stderr",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JGrid {
    Explicit {
        values: Vec<f64>,
    },
    /// `points` log-spaced values from `start` to `stop` inclusive, optionally
    /// preceded by `J = 0`.
    Log {
        start: f64,
        stop: f64,
        points: usize,
        #[serde(default)]
        include_zero: bool,
    },
}

impl JGrid {
    pub fn values(&self) -> Result<Vec<f64>> {
        let values = match self {
            JGrid::Explicit { values } => values.clone(),
            JGrid::Log {
                start,
                stop,
                points,
                include_zero,
            } => {
                if !(*start > 0.0 && stop >= start && *points >= 1) {
                    return Err(Error::Config(format!(
                        "log grid needs 0 < start <= stop and points >= 1, got {start}..{stop} x {points}"
                    )));
                }
                let (lo, hi) = (start.log10(), stop.log10());
                let step = if *points > 1 {
                    (hi - lo) / (*points - 1) as f64
                } else {
                    0.0
                };
                let mut grid: Vec<f64> = (0..*points).map(|i| 10f64.powf(lo + step * i as f64)).collect();
                grid[0] = *start;
                if *points > 1 {
                    grid[*points - 1] = *stop;
                }
                if *include_zero {
                    grid.insert(0, 0.0);
                }
                grid
            }
        };
        if values.is_empty() {
            return Err(Error::Config("empty J grid".into()));
        }
        let positive = if values[0] == 0.0 { &values[1..] } else { &values[..] };
        if positive.iter().any(|j| !(j.is_finite() && *j > 0.0)) {
            return Err(Error::Config("J grid must be positive apart from a leading 0".into()));
        }
        if positive.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("J grid must be strictly increasing".into()));
        }
        Ok(values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepOutput {
    Npc,
    Spacings,
    Bands,
    EigenstateProfiles,
    Theory,
}

fn default_outputs() -> Vec<SweepOutput> {
    vec![SweepOutput::Npc, SweepOutput::Spacings, SweepOutput::Bands]
}

fn default_ensemble() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSettings {
    pub j_grid: JGrid,
    #[serde(default)]
    pub basis: BasisTag,
    /// Members per point; forced to 1 for the dynamical model.
    #[serde(default = "default_ensemble")]
    pub ensemble_size: usize,
    /// Overrides the seed of a random coupling model. Member `m` draws from
    /// stream `m` of that seed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed_base: Option<u64>,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<SweepOutput>,
    #[serde(default)]
    pub bands: BandConfig,
    #[serde(default)]
    pub unfolding: UnfoldConfig,
    #[serde(default)]
    pub profile_state: StateSelector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPlan {
    pub system: SystemSpec,
    pub sweep: SweepSettings,
}

impl SweepPlan {
    pub fn new(system: SystemSpec, j_grid: JGrid, basis: BasisTag) -> Self {
        SweepPlan {
            system,
            sweep: SweepSettings {
                j_grid,
                basis,
                ensemble_size: 1,
                seed_base: None,
                outputs: default_outputs(),
                bands: BandConfig::default(),
                unfolding: UnfoldConfig::default(),
                profile_state: StateSelector::default(),
            },
        }
    }

    pub fn with_ensemble(mut self, size: usize, seed_base: Option<u64>) -> Self {
        self.sweep.ensemble_size = size;
        self.sweep.seed_base = seed_base;
        self
    }

    pub fn with_outputs(mut self, outputs: &[SweepOutput]) -> Self {
        self.sweep.outputs = outputs.to_vec();
        self
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let plan: SweepPlan = toml::from_str(text)?;
        plan.validate()?;
        Ok(plan)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn wants(&self, output: SweepOutput) -> bool {
        self.sweep.outputs.contains(&output)
    }

    pub fn ensemble_size(&self) -> usize {
        if self.system.coupling.is_random() {
            self.sweep.ensemble_size
        } else {
            1
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.system.validate()?;
        self.system.check_capacity()?;
        self.sweep.j_grid.values()?;
        if self.sweep.ensemble_size == 0 {
            return Err(Error::Config("ensemble_size must be at least 1".into()));
        }
        Ok(())
    }

    /// System of ensemble member `member` at coupling strength `j`.
    pub fn member_spec(&self, j: f64, member: usize) -> SystemSpec {
        let mut coupling = self.system.coupling.with_strength(j).with_stream(member as u64);
        if let Some(seed) = self.sweep.seed_base {
            coupling = coupling.with_seed(seed);
        }
        SystemSpec {
            coupling,
            ..self.system.clone()
        }
    }

    /// `N` in the z basis, `C(L, L/2)` in the quasiparticle basis.
    pub fn npc_reference(&self) -> f64 {
        let l = self.system.qubits as u64;
        match self.sweep.basis {
            BasisTag::Z => self.system.dim() as f64,
            BasisTag::Quasiparticle => binomial(l, l / 2) as f64,
        }
    }
}

/// Which central-window eigenstate a profile reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateSelector {
    #[default]
    Middle,
    /// Position counted from the bottom of the central window.
    Offset(usize),
}

impl StateSelector {
    fn pick(self, bands: &BandPartition) -> Result<usize> {
        let window = &bands.central_window;
        if window.is_empty() {
            return Err(Error::Empty("central band"));
        }
        match self {
            StateSelector::Middle => Ok(window.start + window.len() / 2),
            StateSelector::Offset(k) if k < window.len() => Ok(window.start + k),
            StateSelector::Offset(k) => Err(Error::Contract(format!(
                "state offset {k} outside a central window of {} levels",
                window.len()
            ))),
        }
    }
}

impl FromStr for StateSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "middle" => Ok(StateSelector::Middle),
            _ => s
                .parse()
                .map(StateSelector::Offset)
                .map_err(|_| Error::Config(format!("state selector must be `middle` or an offset, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(rename = "J_over_J_cr")]
    pub j_over_j_cr: f64,
    pub mean_npc: f64,
    pub npc_over_reference: f64,
    pub ks_poisson: f64,
    pub ks_wigner: f64,
    pub band_count: usize,
    pub central_band_size: usize,
    pub overlap_flag: bool,
    pub ensemble_stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandSummary {
    pub size: usize,
    pub lowest: f64,
    pub highest: f64,
}

/// Optional per-point artifacts. Bands and profiles come from member 0;
/// spacings are pooled over members in member order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointDetail {
    #[serde(rename = "J")]
    pub j: f64,
    pub bands: Vec<BandSummary>,
    pub spacings: Vec<f64>,
    pub profile: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub basis: BasisTag,
    pub reference: f64,
    pub ensemble_size: usize,
    pub rows: Vec<SweepRow>,
    pub details: Vec<PointDetail>,
    pub theory: Option<TheoryReport>,
}

struct MemberOutcome {
    npc: Option<f64>,
    ks: Option<(f64, f64)>,
    spacings: Vec<f64>,
    bands: BandPartition,
    band_edges: Vec<(f64, f64)>,
    profile: Option<Vec<f64>>,
}

fn run_member(plan: &SweepPlan, j: f64, member: usize) -> Result<MemberOutcome> {
    let spec = plan.member_spec(j, member);
    let h = build_hamiltonian(&spec, j, plan.sweep.basis)?;
    let options = EigenOptions::default();
    let vectors = plan.wants(SweepOutput::Npc) || plan.wants(SweepOutput::EigenstateProfiles);

    let (levels, decomposition) = if vectors {
        let d = diagonalize_with(&h, &options)?;
        (d.eigenvalues().to_vec(), Some(d))
    } else {
        (eigenvalues_with(&h, &options)?, None)
    };
    let bands = detect_bands_with(&levels, spec.rabi, &plan.sweep.bands)?;
    let band_edges = bands
        .bands
        .iter()
        .map(|b| (levels[b.start], levels[b.end - 1]))
        .collect();

    let mut outcome = MemberOutcome {
        npc: None,
        ks: None,
        spacings: Vec::new(),
        band_edges,
        profile: None,
        bands,
    };
    if let Some(d) = &decomposition {
        if plan.wants(SweepOutput::Npc) {
            outcome.npc = Some(mean_central_npc(d, &outcome.bands)?);
        }
        if plan.wants(SweepOutput::EigenstateProfiles) && member == 0 {
            let state = plan.sweep.profile_state.pick(&outcome.bands)?;
            outcome.profile = Some(d.probabilities(state));
        }
    }
    let window = &levels[outcome.bands.central_window.clone()];
    if plan.wants(SweepOutput::Spacings) && window.len() >= MIN_LEVELS {
        let stats = unfold_and_spacings_with(window, &plan.sweep.unfolding)?;
        outcome.ks = Some((stats.ks_poisson, stats.ks_wigner));
        outcome.spacings = stats.spacings;
    }
    Ok(outcome)
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn standard_error(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(values);
    let var = values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1) as f64;
    (var / n as f64).sqrt()
}

/// Runs every `(J, member)` task and aggregates members by mean and
/// standard error. Columns whose output was not requested, or whose central
/// window holds fewer than [`MIN_LEVELS`] levels, are `NaN`.
pub fn run_sweep(plan: &SweepPlan) -> Result<SweepResult> {
    plan.validate()?;
    let grid = plan.sweep.j_grid.values()?;
    let members = plan.ensemble_size();
    let tasks: Vec<(f64, usize)> = grid.iter().flat_map(|&j| (0..members).map(move |m| (j, m))).collect();

    let outcomes: Vec<MemberOutcome> = tasks
        .par_iter()
        .map(|&(j, member)| {
            run_member(plan, j, member).map_err(|e| Error::AtPoint {
                j,
                member,
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;

    let reference = plan.npc_reference();
    let border = plan
        .system
        .field_profile
        .linear_gradient()
        .map(|a| chaos_border(a, plan.system.rabi));

    let mut rows = Vec::with_capacity(grid.len());
    let mut details = Vec::with_capacity(grid.len());
    for (&j, point) in grid.iter().zip(outcomes.chunks(members)) {
        let npcs: Vec<f64> = point.iter().filter_map(|o| o.npc).collect();
        let ks: Vec<(f64, f64)> = point.iter().filter_map(|o| o.ks).collect();
        let (mean_npc, stderr) = if npcs.is_empty() {
            (f64::NAN, f64::NAN)
        } else {
            (mean(&npcs), standard_error(&npcs))
        };
        let (ks_poisson, ks_wigner) = if ks.len() == point.len() {
            let p: Vec<f64> = ks.iter().map(|k| k.0).collect();
            let w: Vec<f64> = ks.iter().map(|k| k.1).collect();
            (mean(&p), mean(&w))
        } else {
            (f64::NAN, f64::NAN)
        };
        let first = &point[0];
        rows.push(SweepRow {
            j,
            j_over_j_cr: border.map_or(f64::NAN, |b| j / b),
            mean_npc,
            npc_over_reference: mean_npc / reference,
            ks_poisson,
            ks_wigner,
            band_count: first.bands.len(),
            central_band_size: first.bands.central_band().len(),
            overlap_flag: point.iter().any(|o| o.bands.overlap),
            ensemble_stderr: stderr,
        });
        details.push(PointDetail {
            j,
            bands: first
                .bands
                .sizes()
                .into_iter()
                .zip(&first.band_edges)
                .map(|(size, &(lowest, highest))| BandSummary { size, lowest, highest })
                .collect(),
            spacings: point.iter().flat_map(|o| o.spacings.iter().copied()).collect(),
            profile: first.profile.clone(),
        });
    }

    let theory = if plan.wants(SweepOutput::Theory) {
        Some(theory_report(&plan.system)?)
    } else {
        None
    };
    Ok(SweepResult {
        basis: plan.sweep.basis,
        reference,
        ensemble_size: members,
        rows,
        details,
        theory,
    })
}

/// 17 significant digits; `NaN` for missing values.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

impl SweepResult {
    pub fn to_csv(&self) -> String {
        let mut out = SWEEP_COLUMNS.join(",");
        out.push('\n');
        for r in &self.rows {
            let floats = [
                r.j,
                r.j_over_j_cr,
                r.mean_npc,
                r.npc_over_reference,
                r.ks_poisson,
                r.ks_wigner,
            ];
            let cells: Vec<String> = floats.iter().map(|&x| format_float(x)).collect();
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                cells.join(","),
                r.band_count,
                r.central_band_size,
                u8::from(r.overlap_flag),
                format_float(r.ensemble_stderr)
            );
        }
        out
    }

    /// Long format `J,spacing`.
    pub fn spacings_csv(&self) -> String {
        let mut out = String::from("J,spacing\n");
        for d in &self.details {
            for &s in &d.spacings {
                let _ = writeln!(out, "{},{}", format_float(d.j), format_float(s));
            }
        }
        out
    }

    /// Long format `J,band,size,lowest,highest`.
    pub fn bands_csv(&self) -> String {
        let mut out = String::from("J,band,size,lowest,highest\n");
        for d in &self.details {
            for (i, b) in d.bands.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    format_float(d.j),
                    i,
                    b.size,
                    format_float(b.lowest),
                    format_float(b.highest)
                );
            }
        }
        out
    }

    /// Long format `J,n,w`.
    pub fn profiles_csv(&self) -> String {
        let mut out = String::from("J,n,w\n");
        for d in &self.details {
            for (n, w) in d.profile.iter().flatten().enumerate() {
                let _ = writeln!(out, "{},{},{}", format_float(d.j), n, format_float(*w));
            }
        }
        out
    }

    pub fn write_csv(&self, mut sink: impl Write) -> Result<()> {
        sink.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }

    /// Writes `<stem>.csv` plus one companion file per requested artifact.
    /// Returns the paths written.
    pub fn write_files(&self, plan: &SweepPlan, stem: &Path) -> Result<Vec<std::path::PathBuf>> {
        let mut written = Vec::new();
        let mut emit = |suffix: &str, text: String| -> Result<()> {
            let mut name = stem.as_os_str().to_owned();
            name.push(suffix);
            let path = std::path::PathBuf::from(name);
            std::fs::write(&path, text)?;
            written.push(path);
            Ok(())
        };
        emit(".csv", self.to_csv())?;
        if plan.wants(SweepOutput::Spacings) {
            emit(".spacings.csv", self.spacings_csv())?;
        }
        if plan.wants(SweepOutput::Bands) {
            emit(".bands.csv", self.bands_csv())?;
        }
        if plan.wants(SweepOutput::EigenstateProfiles) {
            emit(".profiles.csv", self.profiles_csv())?;
        }
        if let Some(theory) = &self.theory {
            emit(".theory.json", serde_json::to_string_pretty(theory)?)?;
        }
        Ok(written)
    }

    /// Smallest `J` at which `mean_npc` falls below half of its value at the
    /// first grid point, log-interpolated between neighbouring grid points.
    pub fn half_max_crossing(&self) -> Option<f64> {
        let first = self.rows.first()?.mean_npc;
        let half = 0.5 * first;
        self.rows.windows(2).find_map(|w| {
            let (a, b) = (&w[0], &w[1]);
            if a.mean_npc >= half && b.mean_npc < half {
                if a.j <= 0.0 {
                    return Some(b.j);
                }
                let t = (a.mean_npc - half) / (a.mean_npc - b.mean_npc);
                Some(10f64.powf(a.j.log10() + t * (b.j.log10() - a.j.log10())))
            } else {
                None
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenstateProfile {
    #[serde(rename = "J")]
    pub j: f64,
    pub basis: BasisTag,
    /// Position in the ascending spectrum.
    pub state: usize,
    pub energy: f64,
    pub participation: f64,
    /// `|psi_n|^2` over the basis index `n`.
    pub weights: Vec<f64>,
}

impl EigenstateProfile {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,w\n");
        for (n, w) in self.weights.iter().enumerate() {
            let _ = writeln!(out, "{},{}", n, format_float(*w));
        }
        out
    }
}

pub fn eigenstate_profile(
    spec: &SystemSpec,
    j: f64,
    basis: BasisTag,
    selector: StateSelector,
) -> Result<EigenstateProfile> {
    let h = build_hamiltonian(spec, j, basis)?;
    let d = diagonalize_with(&h, &EigenOptions::default())?;
    let bands = detect_bands_with(d.eigenvalues(), spec.rabi, &BandConfig::default())?;
    let state = selector.pick(&bands)?;
    let weights = d.probabilities(state);
    Ok(EigenstateProfile {
        j,
        basis,
        state,
        energy: d.eigenvalues()[state],
        participation: participation_from_probabilities(&weights)?,
        weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CouplingModel;

    fn chain(l: usize) -> SystemSpec {
        SystemSpec::chain(l, 100.0, 1.0, CouplingModel::DynamicalNN { j: 0.0 })
    }

    #[test]
    fn log_grid_endpoints_are_exact() {
        let g = JGrid::Log {
            start: 1e-4,
            stop: 100.0,
            points: 7,
            include_zero: true,
        };
        let v = g.values().unwrap();
        assert_eq!(v.len(), 8);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[1], 1e-4);
        assert_eq!(v[7], 100.0);
        assert!((v[4] - 0.1).abs() < 1e-12);
    }

    #[test]
    fn grid_validation() {
        let bad = |values: Vec<f64>| JGrid::Explicit { values }.values().is_err();
        assert!(bad(vec![]));
        assert!(bad(vec![0.1, 0.01]));
        assert!(bad(vec![0.1, 0.0]));
        assert!(bad(vec![-1.0]));
        assert!(!bad(vec![0.0, 0.01, 0.1]));
    }

    #[test]
    fn quasiparticle_sweep_at_zero_coupling_has_unit_npc() {
        let plan = SweepPlan::new(chain(6), JGrid::Explicit { values: vec![0.0] }, BasisTag::Quasiparticle);
        let result = run_sweep(&plan).unwrap();
        assert_eq!(result.rows[0].mean_npc, 1.0);
        assert_eq!(result.rows[0].band_count, 7);
        assert_eq!(result.rows[0].central_band_size, 20);
        assert!(!result.rows[0].overlap_flag);
        assert_eq!(result.reference, 20.0);
    }

    #[test]
    fn dynamical_model_forces_one_member() {
        let plan =
            SweepPlan::new(chain(4), JGrid::Explicit { values: vec![0.1] }, BasisTag::Z).with_ensemble(5, Some(3));
        assert_eq!(plan.ensemble_size(), 1);
        assert_eq!(run_sweep(&plan).unwrap().rows[0].ensemble_stderr, 0.0);
    }

    #[test]
    fn members_use_distinct_streams() {
        let mut spec = chain(6);
        spec.coupling = CouplingModel::RandomNN {
            j: 1.0,
            seed: 9,
            stream: 0,
        };
        let plan = SweepPlan::new(spec, JGrid::Explicit { values: vec![1.0] }, BasisTag::Z).with_ensemble(3, Some(42));
        let a = plan.member_spec(1.0, 0).coupling_table();
        let b = plan.member_spec(1.0, 1).coupling_table();
        assert_ne!(a, b);
        assert_eq!(
            plan.member_spec(1.0, 2).coupling,
            CouplingModel::RandomNN {
                j: 1.0,
                seed: 42,
                stream: 2
            }
        );
    }

    #[test]
    fn csv_header_and_precision() {
        let plan = SweepPlan::new(chain(4), JGrid::Explicit { values: vec![0.0, 0.5] }, BasisTag::Z);
        let csv = run_sweep(&plan).unwrap().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), SWEEP_COLUMNS.join(","));
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first.len(), 10);
        assert_eq!(first[0], "0.0000000000000000e0");
        // 16 central-window levels are too few for spacing statistics
        assert_eq!(first[4], "NaN");
    }

    #[test]
    fn toml_plan_round_trip() {
        let text = r#"
            [system]
            L = 8
            Omega = 100.0
            [system.coupling]
            kind = "random_nn"
            J = 0.0
            seed = 7

            [sweep]
            basis = "quasiparticle"
            ensemble_size = 4
            outputs = ["npc", "theory"]
            [sweep.j_grid]
            kind = "log"
            start = 0.004
            stop = 4.0
            points = 4
        "#;
        let plan = SweepPlan::from_toml_str(text).unwrap();
        assert_eq!(plan.ensemble_size(), 4);
        assert!(plan.wants(SweepOutput::Theory) && !plan.wants(SweepOutput::Spacings));
        let again = SweepPlan::from_toml_str(&plan.to_toml_string().unwrap()).unwrap();
        assert_eq!(plan, again);
    }

    #[test]
    fn zero_ensemble_is_rejected() {
        let mut plan = SweepPlan::new(chain(4), JGrid::Explicit { values: vec![0.1] }, BasisTag::Z);
        plan.sweep.ensemble_size = 0;
        assert!(matches!(run_sweep(&plan), Err(Error::Config(_))));
    }

    #[test]
    fn half_max_crossing_interpolates_in_log_j() {
        let row = |j: f64, npc: f64| SweepRow {
            j,
            j_over_j_cr: f64::NAN,
            mean_npc: npc,
            npc_over_reference: f64::NAN,
            ks_poisson: f64::NAN,
            ks_wigner: f64::NAN,
            band_count: 1,
            central_band_size: 1,
            overlap_flag: false,
            ensemble_stderr: 0.0,
        };
        let result = SweepResult {
            basis: BasisTag::Z,
            reference: 1.0,
            ensemble_size: 1,
            rows: vec![row(0.01, 100.0), row(0.1, 60.0), row(1.0, 40.0)],
            details: vec![],
            theory: None,
        };
        assert!((result.half_max_crossing().unwrap() - 10f64.powf(-0.5)).abs() < 1e-12);
    }

    #[test]
    fn profile_is_normalized_and_selects_middle() {
        let p = eigenstate_profile(&chain(6), 0.0, BasisTag::Z, StateSelector::Middle).unwrap();
        assert!((p.weights.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        // central band of 20 levels starts at index 22
        assert_eq!(p.state, 32);
        assert!(eigenstate_profile(&chain(6), 0.0, BasisTag::Z, StateSelector::Offset(20)).is_err());
    }
}
