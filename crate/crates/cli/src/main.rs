use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qchaos::analysis::detect_bands;
use qchaos::sweep::format_float;
use qchaos::{
    build_hamiltonian, eigenstate_profile, eigenvalues, run_sweep, theory_report, BasisTag, CouplingModel, Error,
    ErrorCategory, FieldProfile, StateSelector, SweepPlan, SystemSpec,
};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "qchaos",
    version,
    about = "Exact diagonalization of a driven Ising qubit chain"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble the Hamiltonian and print a JSON summary of the matrix.
    Build {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        point: PointArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the sorted spectrum as CSV (`index,eigenvalue,band`).
    Diag {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        point: PointArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a sweep plan (TOML) and write `<stem>.csv` plus requested companions.
    Sweep {
        plan: PathBuf,
        /// Output path stem; defaults to the plan path without extension.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Worker threads for sweep points; 0 lets rayon decide.
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Print closed-form estimates and brute-force counterparts as JSON.
    Theory {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write `|psi_n|^2` of one central-band eigenstate as CSV (`n,w`).
    Profile {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        point: PointArgs,
        /// `middle` or an offset from the bottom of the central window.
        #[arg(long, default_value = "middle")]
        state: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CouplingKind {
    Dynamical,
    RandomNn,
    RandomAll,
}

/// System parameters: an optional TOML file, overridden by flags.
#[derive(Args)]
struct SystemArgs {
    /// TOML file holding a system description.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(short = 'L', long = "qubits")]
    qubits: Option<usize>,
    /// Rabi frequency.
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    /// Field gradient `a`.
    #[arg(short = 'a', long, allow_negative_numbers = true)]
    gradient: Option<f64>,
    /// Exponent `p` of a power-law field profile.
    #[arg(long)]
    power: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega0: Option<f64>,
    /// Drive frequency; defaults to `omega0`.
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,
    /// Drive phase; defaults to pi/2.
    #[arg(long, allow_negative_numbers = true)]
    phi: Option<f64>,
    #[arg(long, value_enum)]
    coupling: Option<CouplingKind>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    stream: Option<u64>,
    #[arg(long)]
    max_qubits: Option<usize>,
}

impl SystemArgs {
    fn resolve(&self) -> qchaos::Result<SystemSpec> {
        let mut spec = match &self.config {
            Some(path) => SystemSpec::load(path)?,
            None => SystemSpec::default(),
        };
        if let Some(l) = self.qubits {
            spec.qubits = l;
        }
        if let Some(omega) = self.omega {
            spec.rabi = omega;
        }
        let a = self.gradient.unwrap_or(spec.field_profile.gradient());
        spec.field_profile = match (self.power, spec.field_profile) {
            (Some(p), _) | (None, FieldProfile::PowerLaw { p, .. }) => FieldProfile::PowerLaw { a, p },
            (None, FieldProfile::Linear { .. }) => FieldProfile::Linear { a },
        };
        if let Some(x) = self.omega0 {
            spec.omega0 = x;
        }
        if self.nu.is_some() {
            spec.nu = self.nu;
        }
        if let Some(phi) = self.phi {
            spec.phi = phi;
        }
        if let Some(kind) = self.coupling {
            let (j, seed, stream) = match spec.coupling {
                CouplingModel::DynamicalNN { j } => (j, 0, 0),
                CouplingModel::RandomNN { j, seed, stream } | CouplingModel::RandomAll { j, seed, stream } => {
                    (j, seed, stream)
                }
            };
            spec.coupling = match kind {
                CouplingKind::Dynamical => CouplingModel::DynamicalNN { j },
                CouplingKind::RandomNn => CouplingModel::RandomNN { j, seed, stream },
                CouplingKind::RandomAll => CouplingModel::RandomAll { j, seed, stream },
            };
        }
        if let Some(seed) = self.seed {
            spec.coupling = spec.coupling.with_seed(seed);
        }
        if let Some(stream) = self.stream {
            spec.coupling = spec.coupling.with_stream(stream);
        }
        if let Some(cap) = self.max_qubits {
            spec.max_qubits = cap;
        }
        Ok(spec)
    }
}

#[derive(Args)]
struct PointArgs {
    /// Coupling strength.
    #[arg(
        short = 'J',
        long = "coupling-strength",
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    j: f64,
    #[arg(long, default_value = "z", value_parser = parse_basis)]
    basis: BasisTag,
}

fn parse_basis(s: &str) -> Result<BasisTag, String> {
    s.parse()
}

fn emit(output: Option<&PathBuf>, text: &str) -> qchaos::Result<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct MatrixSummary {
    basis: BasisTag,
    convention: &'static str,
    #[serde(rename = "L")]
    qubits: usize,
    dim: usize,
    #[serde(rename = "J")]
    j: f64,
    nnz: usize,
    off_diagonal_nnz: usize,
    trace: f64,
    max_abs: f64,
    hermiticity_defect: f64,
    regime: qchaos::model::RegimeReport,
}

fn run(cli: Cli) -> qchaos::Result<()> {
    match cli.command {
        Command::Build { system, point, output } => {
            let spec = system.resolve()?;
            let h = build_hamiltonian(&spec, point.j, point.basis)?;
            let summary = MatrixSummary {
                basis: h.basis(),
                convention: "big-endian, bit 0 = ground (I^z = +1/2)",
                qubits: spec.qubits,
                dim: h.dim(),
                j: point.j,
                nnz: h.nnz(),
                off_diagonal_nnz: h.off_diagonal_nnz(),
                trace: h.trace(),
                max_abs: h.max_abs(),
                hermiticity_defect: h.hermiticity_defect(),
                regime: spec.regime(point.j),
            };
            emit(output.as_ref(), &(serde_json::to_string_pretty(&summary)? + "\n"))
        }
        Command::Diag { system, point, output } => {
            let spec = system.resolve()?;
            let levels = eigenvalues(&build_hamiltonian(&spec, point.j, point.basis)?)?;
            let bands = detect_bands(&levels, spec.rabi)?;
            let mut text = String::from("index,eigenvalue,band\n");
            for (b, range) in bands.bands.iter().enumerate() {
                for i in range.clone() {
                    text.push_str(&format!("{i},{},{b}\n", format_float(levels[i])));
                }
            }
            emit(output.as_ref(), &text)
        }
        Command::Sweep { plan, output, threads } => {
            let parsed = SweepPlan::load(&plan)?;
            let stem = output.unwrap_or_else(|| plan.with_extension(""));
            let pool = rayon_pool(threads)?;
            let result = pool.install(|| run_sweep(&parsed))?;
            for path in result.write_files(&parsed, &stem)? {
                println!("{}", path.display());
            }
            Ok(())
        }
        Command::Theory { system, output } => {
            let report = theory_report(&system.resolve()?)?;
            emit(output.as_ref(), &(serde_json::to_string_pretty(&report)? + "\n"))
        }
        Command::Profile {
            system,
            point,
            state,
            output,
        } => {
            let spec = system.resolve()?;
            let selector: StateSelector = state.parse()?;
            let profile = eigenstate_profile(&spec, point.j, point.basis, selector)?;
            emit(output.as_ref(), &profile.to_csv())?;
            if output.is_some() {
                eprintln!(
                    "state {} at energy {:.6}, participation number {:.3}",
                    profile.state, profile.energy, profile.participation
                );
            }
            Ok(())
        }
    }
}

fn rayon_pool(threads: usize) -> qchaos::Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))
}

fn exit_code(category: ErrorCategory) -> u8 {
    match category {
        ErrorCategory::Config => 2,
        ErrorCategory::Contract => 3,
        ErrorCategory::Capacity => 4,
        ErrorCategory::Numerical => 5,
        ErrorCategory::Io => 6,
    }
}

fn report(category: ErrorCategory, message: &str) -> ExitCode {
    let report = serde_json::json!({ "error": { "category": category.as_str(), "message": message } });
    eprintln!("{report}");
    ExitCode::from(exit_code(category))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report(ErrorCategory::Config, e.render().to_string().trim()),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(e.category(), &e.to_string()),
    }
}
