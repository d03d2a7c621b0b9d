//! `hyperlap` — walks, Laplace operators, spectra, harmonic problems, and
//! coupled map dynamics on hypergraphs, from text files to JSON/CSV.
//!
//! Exit codes: 0 success, 1 input/validation error, 2 computation error.
//! Errors print as one JSON object on stderr. Output is deterministic:
//! identical (config, seed) gives identical bytes, independent of
//! `--threads`.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperlap::chm::{
    chm_step, commutativity_check, ensemble_run, invariance_report, CouplingOperator,
    EnsembleSpec, EvalMode, ScalarMap,
};
use hyperlap::harmonic::solve_dirichlet;
use hyperlap::ratio::rint;
use hyperlap::spectral::{certify_chemical, certify_rw, eigen_decompose};
use hyperlap::stochastic::{
    absorbing_walk, empirical_kernel, evolve_distribution, simulate_walks, EvolveMode,
    WalkSimulator, DEFAULT_ABSORPTION_CAP,
};
use hyperlap::{
    chemical, factorize, AnyHypergraph, ChemicalKind, ChemicalLaplacian, Error, OrientedHypergraph,
    Rat, WalkFactorization, WalkVariant,
};

use report::*;

#[derive(Parser)]
#[command(
    name = "hyperlap",
    version,
    about = "Random walks, Laplace operators, and coupled map dynamics on hypergraphs"
)]
struct Cli {
    /// Advisory worker-thread count (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factorize an operator and print degrees, affinity, and the operator.
    Laplacian(LaplacianArgs),
    /// The weighted graph whose random walk equals the hypergraph walk.
    EffectiveGraph(EffectiveGraphArgs),
    /// Eigenvalues under the operator's weighted inner product.
    Spectrum(SpectrumArgs),
    /// Certify the spectral interval and its extremal structure.
    Certify(CertifyArgs),
    /// Sample random walk trajectories, kernel estimates, or absorption.
    Walk(WalkArgs),
    /// Evolve a distribution (forward) or an observable (backward).
    Evolve(EvolveArgs),
    /// Solve a Dirichlet boundary problem for the operator.
    Dirichlet(DirichletArgs),
    /// Coupled map dynamics x <- (I - eps*O) f(x).
    Chm(ChmArgs),
}

/// Operator selection shared by most subcommands.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliVariant {
    /// Walk over co-memberships, each shared hyperedge counting once.
    Simple,
    /// Edge-then-vertex walk: pick a hyperedge, then another member.
    TwoStep,
    /// Walk biased toward large hyperedges.
    EdgeSizeBiased,
    /// Input-to-output walk on an oriented hypergraph.
    Oriented,
    /// Signed operator L of an oriented hypergraph (t-normalized).
    Chemical,
    /// Signed operator Delta, degree-normalized.
    ChemicalDelta,
}

/// The subset with a row-stochastic kernel (usable for walks/evolution).
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliWalkVariant {
    Simple,
    TwoStep,
    EdgeSizeBiased,
    Oriented,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Tent,
    Logistic,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Leaving [0, 1] is an error.
    Strict,
    /// Keep evaluating outside [0, 1] to observe escapes.
    Extended,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvolveModeArg {
    Forward,
    Backward,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct InputArgs {
    /// Hypergraph text file.
    #[arg(long)]
    input: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LaplacianArgs {
    #[command(flatten)]
    io: InputArgs,
    #[arg(long, value_enum)]
    variant: CliVariant,
    /// Emit exact rationals instead of floats.
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct EffectiveGraphArgs {
    #[command(flatten)]
    io: InputArgs,
    #[arg(long, value_enum)]
    variant: CliWalkVariant,
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    io: InputArgs,
    #[arg(long, value_enum)]
    variant: CliVariant,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    io: InputArgs,
    #[arg(long, value_enum)]
    variant: CliVariant,
}

#[derive(Args)]
struct WalkArgs {
    #[command(flatten)]
    io: InputArgs,
    #[arg(long, value_enum)]
    variant: CliWalkVariant,
    /// Start vertex (name).
    #[arg(long)]
    start: String,
    /// Steps per walker (or total steps with --empirical).
    #[arg(long)]
    steps: usize,
    /// Independent walkers, one RNG stream each.
    #[arg(long, default_value_t = 1)]
    walkers: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Estimate the transition kernel from one long walk.
    #[arg(long, conflicts_with_all = ["absorb", "walkers"])]
    empirical: bool,
    /// Comma-separated absorbing vertices; walkers run until absorbed.
    #[arg(long)]
    absorb: Option<String>,
    /// Step cap per walker in --absorb mode.
    #[arg(long, default_value_t = DEFAULT_ABSORPTION_CAP)]
    cap: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Args)]
struct EvolveArgs {
    #[command(flatten)]
    io: InputArgs,
    #[arg(long, value_enum)]
    variant: CliWalkVariant,
    #[arg(long)]
    steps: usize,
    #[arg(long, value_enum, default_value = "forward")]
    mode: EvolveModeArg,
    /// Sparse start, e.g. "v1=0.5,v2=0.5". Defaults to the uniform
    /// distribution (forward) or the constant function 1 (backward).
    #[arg(long)]
    initial: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Args)]
struct DirichletArgs {
    #[command(flatten)]
    io: InputArgs,
    #[arg(long, value_enum)]
    variant: CliVariant,
    /// Boundary data, e.g. "v3=0,v4=1".
    #[arg(long)]
    boundary: String,
}

#[derive(Args)]
struct ChmArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Which operator couples the maps.
    #[arg(long, value_enum)]
    laplacian: CliVariant,
    #[arg(long, value_enum, default_value = "tent")]
    map: MapArg,
    /// Map parameter in (0, 4].
    #[arg(long)]
    mu: f64,
    /// Coupling strength.
    #[arg(long)]
    eps: f64,
    /// Run an ensemble of this many random initial states.
    #[arg(long)]
    ensemble: Option<usize>,
    /// Exact unit-box invariance analysis with an escape witness.
    #[arg(long)]
    invariance: bool,
    /// Check the step/mix commutativity identity on this many samples.
    #[arg(long)]
    commutativity: Option<usize>,
    /// Iterate one orbit from this state, e.g. "0.1,0.2,0.3,0.4".
    #[arg(long)]
    state: Option<String>,
    /// Steps for --ensemble and --state runs.
    #[arg(long)]
    steps: Option<usize>,
    /// Histogram bins per (time, vertex) pair.
    #[arg(long, default_value_t = 32)]
    bins: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "extended")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

enum CliError {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if !e.is_validation() => 2,
            _ => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Io(..) => "io",
            CliError::Usage(_) => "usage",
            CliError::Lib(e) => lib_error_kind(e),
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Io(path, e) => format!("{}: {e}", path.display()),
            CliError::Usage(m) => m.clone(),
            CliError::Lib(e) => e.to_string(),
        }
    }
}

fn lib_error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::EmptyHypergraph => "empty-hypergraph",
        Error::SingletonEdge { .. } => "singleton-edge",
        Error::DuplicateMember { .. } => "duplicate-member",
        Error::InputAndOutput { .. } => "input-and-output",
        Error::DuplicateVertex { .. } => "duplicate-vertex",
        Error::DuplicateEdge { .. } => "duplicate-edge",
        Error::UnknownVertex { .. } => "unknown-vertex",
        Error::IsolatedVertex { .. } => "isolated-vertex",
        Error::Disconnected => "disconnected",
        Error::InvalidParameter { .. } => "invalid-parameter",
        Error::DimensionMismatch { .. } => "dimension-mismatch",
        Error::OrientedInputRequired => "oriented-input-required",
        Error::NoAntiOrientedPartner { .. } => "no-anti-oriented-partner",
        Error::ZeroTransitionWeight { .. } => "zero-transition-weight",
        Error::ZeroOutDegree { .. } => "zero-out-degree",
        Error::ZeroInDegree { .. } => "zero-in-degree",
        Error::NotStochastic { .. } => "not-stochastic",
        Error::NonSymmetricAffinity => "non-symmetric-affinity",
        Error::ZeroFunction => "zero-function",
        Error::Eigensolver(_) => "eigensolver",
        Error::OutsideMaxPrincipleClass { .. } => "outside-max-principle-class",
        Error::EmptyBoundary => "empty-boundary",
        Error::DisconnectedInterior => "disconnected-interior",
        Error::SingularSystem => "singular-system",
        Error::DomainViolation { .. } => "domain-violation",
        Error::NonFinite => "non-finite",
        Error::AbsorptionTimeout { .. } => "absorption-timeout",
        _ => "library",
    }
}

fn emit_error(kind: &str, message: &str) {
    let body = serde_json::json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{body}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            emit_error("usage", &e.to_string());
            return ExitCode::from(1);
        }
    };
    if let Some(threads) = cli.threads {
        // advisory: affects scheduling only, never results
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            emit_error(e.kind(), &e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Laplacian(a) => cmd_laplacian(a),
        Command::EffectiveGraph(a) => cmd_effective_graph(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Walk(a) => cmd_walk(a),
        Command::Evolve(a) => cmd_evolve(a),
        Command::Dirichlet(a) => cmd_dirichlet(a),
        Command::Chm(a) => cmd_chm(a),
    }
}

// ---------------------------------------------------------------- loading

fn load(path: &Path) -> Result<AnyHypergraph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))?;
    Ok(hyperlap::parse(&text)?)
}

fn oriented_of(any: AnyHypergraph) -> Result<OrientedHypergraph, CliError> {
    match any {
        AnyHypergraph::Oriented(h) => Ok(h),
        AnyHypergraph::Undirected(_) => Err(Error::OrientedInputRequired.into()),
    }
}

/// A factorized walk or a signed operator, plus shared accessors.
enum Operator {
    Walk(WalkFactorization),
    Signed(OrientedHypergraph, ChemicalLaplacian),
}

impl CliVariant {
    fn name(self) -> &'static str {
        match self {
            CliVariant::Simple => "simple",
            CliVariant::TwoStep => "two-step",
            CliVariant::EdgeSizeBiased => "edge-size-biased",
            CliVariant::Oriented => "oriented",
            CliVariant::Chemical => "chemical",
            CliVariant::ChemicalDelta => "chemical-delta",
        }
    }

    fn build(self, any: AnyHypergraph) -> Result<Operator, CliError> {
        match self {
            CliVariant::Simple => Ok(Operator::Walk(factorize(&any, WalkVariant::Simple)?)),
            CliVariant::TwoStep => Ok(Operator::Walk(factorize(&any, WalkVariant::TwoStep)?)),
            CliVariant::EdgeSizeBiased => Ok(Operator::Walk(factorize(
                &any,
                WalkVariant::EdgeSizeBiased,
            )?)),
            CliVariant::Oriented => {
                Ok(Operator::Walk(factorize(&any, WalkVariant::OrientedWalk)?))
            }
            CliVariant::Chemical => {
                let h = oriented_of(any)?;
                let c = chemical(&h, ChemicalKind::Normalized)?;
                Ok(Operator::Signed(h, c))
            }
            CliVariant::ChemicalDelta => {
                let h = oriented_of(any)?;
                let c = chemical(&h, ChemicalKind::DegreeNormalized)?;
                Ok(Operator::Signed(h, c))
            }
        }
    }
}

impl CliWalkVariant {
    fn name(self) -> &'static str {
        match self {
            CliWalkVariant::Simple => "simple",
            CliWalkVariant::TwoStep => "two-step",
            CliWalkVariant::EdgeSizeBiased => "edge-size-biased",
            CliWalkVariant::Oriented => "oriented",
        }
    }

    fn core(self) -> WalkVariant {
        match self {
            CliWalkVariant::Simple => WalkVariant::Simple,
            CliWalkVariant::TwoStep => WalkVariant::TwoStep,
            CliWalkVariant::EdgeSizeBiased => WalkVariant::EdgeSizeBiased,
            CliWalkVariant::Oriented => WalkVariant::OrientedWalk,
        }
    }
}

impl Operator {
    fn vertex_names(&self) -> &[String] {
        match self {
            Operator::Walk(f) => f.vertex_names(),
            Operator::Signed(_, c) => c.vertex_names(),
        }
    }

    /// Exact degree/weight vector (D, or t/d for signed kinds).
    fn weights_rat(&self) -> Vec<Rat> {
        match self {
            Operator::Walk(f) => f.degrees().to_vec(),
            Operator::Signed(h, c) => (0..h.vertex_count())
                .map(|v| match c.kind() {
                    ChemicalKind::Normalized => rint(h.degree_t(v) as i64),
                    ChemicalKind::DegreeNormalized => rint(h.degree_d(v) as i64),
                })
                .collect(),
        }
    }

    fn weights_f64(&self) -> Vec<f64> {
        match self {
            Operator::Walk(f) => f.degrees_f64(),
            Operator::Signed(_, c) => c.weights_f64(),
        }
    }

    fn affinity_rat(&self) -> nalgebra::DMatrix<Rat> {
        match self {
            Operator::Walk(f) => f.affinity().clone(),
            Operator::Signed(_, c) => c.adjacency().clone(),
        }
    }

    fn matrix_rat(&self) -> nalgebra::DMatrix<Rat> {
        match self {
            Operator::Walk(f) => f.assemble().matrix().clone(),
            Operator::Signed(_, c) => c.matrix().clone(),
        }
    }

    fn matrix_f64(&self) -> nalgebra::DMatrix<f64> {
        match self {
            Operator::Walk(f) => f.assemble().to_f64(),
            Operator::Signed(_, c) => c.to_f64(),
        }
    }

    fn symmetric(&self) -> bool {
        match self {
            Operator::Walk(f) => f.is_symmetric(),
            // the signed adjacency counts shared hyperedges; always symmetric
            Operator::Signed(..) => true,
        }
    }
}

fn write_out(io: &InputArgs, rendered: String) -> Result<(), CliError> {
    match &io.output {
        Some(path) => fs::write(path, rendered).map_err(|e| CliError::Io(path.clone(), e)),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn input_name(io: &InputArgs) -> String {
    io.input.display().to_string()
}

fn require_json(format: FormatArg, what: &str) -> Result<(), CliError> {
    if format == FormatArg::Csv {
        return Err(CliError::Usage(format!(
            "csv output covers trajectory and histogram data; {what} is JSON-only"
        )));
    }
    Ok(())
}

// ------------------------------------------------------------ subcommands

fn cmd_laplacian(a: LaplacianArgs) -> Result<(), CliError> {
    let op = a.variant.build(load(&a.io.input)?)?;
    let report = OperatorReport {
        input: input_name(&a.io),
        variant: a.variant.name().to_string(),
        vertices: op.vertex_names().to_vec(),
        exact: a.exact,
        degrees: if a.exact {
            exact_weights(&op.weights_rat())
        } else {
            float_weights(&op.weights_f64())
        },
        affinity: if a.exact {
            exact_matrix(&op.affinity_rat())
        } else {
            float_matrix(&hyperlap::ratio::matrix_to_f64(&op.affinity_rat()))
        },
        laplacian: if a.exact {
            exact_matrix(&op.matrix_rat())
        } else {
            float_matrix(&op.matrix_f64())
        },
        symmetric: op.symmetric(),
    };
    write_out(&a.io, json(&report))
}

fn cmd_effective_graph(a: EffectiveGraphArgs) -> Result<(), CliError> {
    let f = factorize(&load(&a.io.input)?, a.variant.core())?;
    let g = f.effective_graph();
    let degrees: Vec<Rat> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    let report = EffectiveGraphReport {
        input: input_name(&a.io),
        variant: a.variant.name().to_string(),
        vertices: g.vertex_names().to_vec(),
        exact: a.exact,
        degrees: if a.exact {
            exact_weights(&degrees)
        } else {
            float_weights(&degrees.iter().map(|&r| hyperlap::ratio::to_f64(r)).collect::<Vec<_>>())
        },
        weights: if a.exact {
            exact_matrix(g.weights())
        } else {
            float_matrix(&hyperlap::ratio::matrix_to_f64(g.weights()))
        },
        symmetric: g.is_symmetric(),
    };
    write_out(&a.io, json(&report))
}

fn cmd_spectrum(a: SpectrumArgs) -> Result<(), CliError> {
    let op = a.variant.build(load(&a.io.input)?)?;
    let weights = op.weights_f64();
    let spectrum = eigen_decompose(&op.matrix_f64(), Some(&weights))?;
    let (real, eigenvalues) = SpectrumReport::eigenvalues_of(&spectrum);
    let report = SpectrumReport {
        input: input_name(&a.io),
        variant: a.variant.name().to_string(),
        vertices: op.vertex_names().to_vec(),
        weights,
        real,
        eigenvalues,
    };
    write_out(&a.io, json(&report))
}

fn cmd_certify(a: CertifyArgs) -> Result<(), CliError> {
    let op = a.variant.build(load(&a.io.input)?)?;
    let certificate = match &op {
        Operator::Walk(f) => certify_rw(&f.assemble())?,
        Operator::Signed(_, c) => certify_chemical(c)?,
    };
    let report = CertifyReport {
        input: input_name(&a.io),
        variant: a.variant.name().to_string(),
        vertices: op.vertex_names().to_vec(),
        certificate,
    };
    write_out(&a.io, json(&report))
}

fn vertex_index(names: &[String], name: &str) -> Result<usize, CliError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| {
            CliError::Lib(Error::UnknownVertex {
                vertex: name.to_string(),
            })
        })
}

fn cmd_walk(a: WalkArgs) -> Result<(), CliError> {
    let f = factorize(&load(&a.io.input)?, a.variant.core())?;
    let names = f.vertex_names().to_vec();
    let start = vertex_index(&names, &a.start)?;
    let sim = WalkSimulator::new(&f.kernel_f64())?;

    if let Some(absorb) = &a.absorb {
        require_json(a.format, "absorption statistics")?;
        let boundary_names: Vec<String> = absorb.split(',').map(|s| s.trim().to_string()).collect();
        let boundary: Vec<usize> = boundary_names
            .iter()
            .map(|n| vertex_index(&names, n))
            .collect::<Result<_, _>>()?;
        let report = absorbing_walk(&sim, start, &boundary, a.walkers, a.seed, a.cap)?;
        let out = AbsorptionCliReport {
            input: input_name(&a.io),
            variant: a.variant.name().to_string(),
            start: a.start,
            boundary: boundary_names,
            seed: a.seed,
            cap: a.cap,
            report,
        };
        return write_out(&a.io, json(&out));
    }

    if a.empirical {
        require_json(a.format, "the kernel estimate")?;
        let kernel = empirical_kernel(&sim, start, a.steps, a.seed)?;
        let out = EmpiricalReport {
            input: input_name(&a.io),
            variant: a.variant.name().to_string(),
            start: a.start,
            seed: a.seed,
            kernel,
        };
        return write_out(&a.io, json(&out));
    }

    let walks = simulate_walks(&sim, start, a.steps, a.walkers, a.seed)?;
    let rendered = match a.format {
        FormatArg::Csv => trajectories_csv(&names, &walks),
        FormatArg::Json => json(&WalkReport {
            input: input_name(&a.io),
            variant: a.variant.name().to_string(),
            start: a.start,
            steps: a.steps,
            walkers: a.walkers,
            seed: a.seed,
            trajectories: walks
                .iter()
                .map(|w| w.positions.iter().map(|&v| names[v].clone()).collect())
                .collect(),
        }),
    };
    write_out(&a.io, rendered)
}

/// Parse "v1=0.5,v2=0.5" against the vertex list; unnamed vertices get 0.
fn parse_assignments(names: &[String], text: &str) -> Result<Vec<f64>, CliError> {
    let mut values = vec![0.0; names.len()];
    for part in text.split(',') {
        let part = part.trim();
        let (name, value) = part.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("expected name=value, found {part:?}"))
        })?;
        let v = vertex_index(names, name.trim())?;
        values[v] = value
            .trim()
            .parse::<f64>()
            .map_err(|e| CliError::Usage(format!("bad value in {part:?}: {e}")))?;
    }
    Ok(values)
}

fn cmd_evolve(a: EvolveArgs) -> Result<(), CliError> {
    let f = factorize(&load(&a.io.input)?, a.variant.core())?;
    let names = f.vertex_names().to_vec();
    let n = names.len();
    let mode = match a.mode {
        EvolveModeArg::Forward => EvolveMode::Forward,
        EvolveModeArg::Backward => EvolveMode::Backward,
    };
    let initial = match &a.initial {
        Some(text) => parse_assignments(&names, text)?,
        None => match mode {
            EvolveMode::Forward => vec![1.0 / n as f64; n],
            EvolveMode::Backward => vec![1.0; n],
        },
    };
    let series = evolve_distribution(&f.kernel_f64(), &initial, a.steps, mode)?;
    let rendered = match a.format {
        FormatArg::Csv => series_csv(&names, &series.states),
        FormatArg::Json => json(&EvolveReport {
            input: input_name(&a.io),
            variant: a.variant.name().to_string(),
            mode: match a.mode {
                EvolveModeArg::Forward => "forward".into(),
                EvolveModeArg::Backward => "backward".into(),
            },
            steps: a.steps,
            vertices: names,
            states: series.states,
        }),
    };
    write_out(&a.io, rendered)
}

fn cmd_dirichlet(a: DirichletArgs) -> Result<(), CliError> {
    let op = a.variant.build(load(&a.io.input)?)?;
    let names = op.vertex_names().to_vec();
    let mut boundary = Vec::new();
    for part in a.boundary.split(',') {
        let part = part.trim();
        let (name, value) = part.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("expected name=value, found {part:?}"))
        })?;
        let v = vertex_index(&names, name.trim())?;
        let value = value
            .trim()
            .parse::<f64>()
            .map_err(|e| CliError::Usage(format!("bad value in {part:?}: {e}")))?;
        boundary.push((v, value));
    }
    let solution = solve_dirichlet(&op.matrix_f64(), &boundary)?;
    let report = DirichletReport {
        input: input_name(&a.io),
        variant: a.variant.name().to_string(),
        boundary: boundary
            .iter()
            .map(|&(v, x)| (names[v].clone(), x))
            .collect(),
        vertices: names,
        solution,
    };
    write_out(&a.io, json(&report))
}

fn cmd_chm(a: ChmArgs) -> Result<(), CliError> {
    let op = a.laplacian.build(load(&a.io.input)?)?;
    let coupling = match &op {
        Operator::Walk(f) => CouplingOperator::from_rw(&f.assemble(), a.eps)?,
        Operator::Signed(_, c) => CouplingOperator::from_chemical(c, a.eps)?,
    };
    let map = match a.map {
        MapArg::Tent => ScalarMap::tent(a.mu)?,
        MapArg::Logistic => ScalarMap::logistic(a.mu)?,
    };
    let map_name = match a.map {
        MapArg::Tent => "tent",
        MapArg::Logistic => "logistic",
    };
    let mode = match a.mode {
        ModeArg::Strict => EvalMode::Strict,
        ModeArg::Extended => EvalMode::Extended,
    };
    let mode_name = match a.mode {
        ModeArg::Strict => "strict",
        ModeArg::Extended => "extended",
    };
    let names = coupling.vertex_names().to_vec();

    let actions = usize::from(a.ensemble.is_some())
        + usize::from(a.invariance)
        + usize::from(a.commutativity.is_some())
        + usize::from(a.state.is_some());
    if actions != 1 {
        return Err(CliError::Usage(
            "pass exactly one of --ensemble, --invariance, --commutativity, --state".into(),
        ));
    }

    if let Some(states) = a.ensemble {
        let steps = a.steps.ok_or_else(|| {
            CliError::Usage("--ensemble needs --steps".into())
        })?;
        let spec = EnsembleSpec {
            states,
            steps,
            bins: a.bins,
            seed: a.seed,
            mode,
        };
        let series = ensemble_run(&coupling, &map, &spec)?;
        let rendered = match a.format {
            FormatArg::Csv => ensemble_csv(&names, &series),
            FormatArg::Json => json(&EnsembleReport {
                input: input_name(&a.io),
                laplacian: a.laplacian.name().to_string(),
                map: map_name.to_string(),
                mu: a.mu,
                eps: a.eps,
                mode: mode_name.to_string(),
                seed: a.seed,
                vertices: names,
                series,
            }),
        };
        return write_out(&a.io, rendered);
    }

    if a.invariance {
        require_json(a.format, "the invariance report")?;
        let report = invariance_report(&coupling, &map);
        let out = InvarianceCliReport {
            input: input_name(&a.io),
            laplacian: a.laplacian.name().to_string(),
            map: map_name.to_string(),
            mu: a.mu,
            eps: a.eps,
            vertices: names,
            report,
        };
        return write_out(&a.io, json(&out));
    }

    if let Some(samples) = a.commutativity {
        require_json(a.format, "the commutativity report")?;
        let report = commutativity_check(&coupling, &map, samples, a.seed)?;
        let out = CommutativityCliReport {
            input: input_name(&a.io),
            laplacian: a.laplacian.name().to_string(),
            map: map_name.to_string(),
            mu: a.mu,
            eps: a.eps,
            seed: a.seed,
            report,
        };
        return write_out(&a.io, json(&out));
    }

    let text = a.state.expect("checked above");
    let steps = a.steps.ok_or_else(|| CliError::Usage("--state needs --steps".into()))?;
    let mut state: Vec<f64> = Vec::new();
    for part in text.split(',') {
        state.push(part.trim().parse::<f64>().map_err(|e| {
            CliError::Usage(format!("bad state entry {part:?}: {e}"))
        })?);
    }
    let mut states = vec![state.clone()];
    let mut x = state;
    for _ in 0..steps {
        x = chm_step(&coupling, &map, &x, mode)?;
        states.push(x.clone());
    }
    let rendered = match a.format {
        FormatArg::Csv => series_csv(&names, &states),
        FormatArg::Json => json(&OrbitReport {
            input: input_name(&a.io),
            laplacian: a.laplacian.name().to_string(),
            map: map_name.to_string(),
            mu: a.mu,
            eps: a.eps,
            mode: mode_name.to_string(),
            steps,
            vertices: names,
            states,
        }),
    };
    write_out(&a.io, rendered)
}
