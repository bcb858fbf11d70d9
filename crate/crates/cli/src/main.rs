//! `lbe` — simulate recursive nonlinear models under strict binary64
//! evaluation, compute Lower Bound Error uncertainty bands, and write
//! plot-ready validation reports.
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 model-file
//! parse error, 4 numeric divergence during a run, 5 I/O failure.

mod output;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use lbe_core::{
    duffing_study, parse_model_file, realize_input, run_procedure, simulate, sine_map_study,
    CaseStudy, Fidelity, InputKind, ModelEntry, ProcedureOutput, SimError, StudyError,
    SystemSource,
};

use output::{
    build_summary, orbit_csv, report_csv, to_json_bytes, DuffingInfo, Manifest, Summary,
    SystemInfo,
};

const EXIT_USAGE: i32 = 2;
const EXIT_PARSE: i32 = 3;
const EXIT_NUMERIC: i32 = 4;
const EXIT_IO: i32 = 5;

#[derive(Parser)]
#[command(
    name = "lbe",
    version,
    about = "Simulate recursive nonlinear models and compute Lower Bound Error validation reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Free-run one model from a file and write its orbit as CSV
    Simulate(SimulateArgs),
    /// Compare a system/model/extension triple loaded from model files
    Validate(ValidateArgs),
    /// Re-run a built-in case study and write its full report
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Model file (.nmx) to read
    #[arg(long)]
    model: PathBuf,
    /// Name of the model block to run
    #[arg(long)]
    name: String,
    /// Final sample index N; the run covers samples 0..=N
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Directory the outputs are written into
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct ValidateArgs {
    /// Model file to read; repeat the flag to load several files
    #[arg(long, required = true)]
    model: Vec<PathBuf>,
    /// Name of the reference-system block
    #[arg(long)]
    system: String,
    /// Name of the identified-model block
    #[arg(long)]
    name: String,
    /// Name of the rearranged-extension block
    #[arg(long)]
    extension: String,
    /// Final sample index N
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Directory the outputs are written into
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Coefficient-set mode recorded in the summary
    #[arg(long, value_enum, default_value_t = FidelityArg::Equivalent)]
    fidelity: FidelityArg,
    /// Which output files to write
    #[arg(long, value_enum, default_value_t = FormatArg::Both)]
    format: FormatArg,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Study to re-run: sine-map or duffing
    study: String,
    /// Final sample index N
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Directory the outputs are written into
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Coefficient set: the algebraically consistent pair, or the
    /// originally published one
    #[arg(long, value_enum, default_value_t = FidelityArg::Equivalent)]
    fidelity: FidelityArg,
    /// RK4 sub-steps per sampling interval (duffing study only)
    #[arg(long, default_value_t = 100)]
    substeps: u32,
    /// Which output files to write
    #[arg(long, value_enum, default_value_t = FormatArg::Both)]
    format: FormatArg,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FidelityArg {
    Equivalent,
    PaperVerbatim,
}

impl From<FidelityArg> for Fidelity {
    fn from(f: FidelityArg) -> Fidelity {
        match f {
            FidelityArg::Equivalent => Fidelity::Equivalent,
            FidelityArg::PaperVerbatim => Fidelity::PaperVerbatim,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Both,
}

impl FormatArg {
    fn name(self) -> &'static str {
        match self {
            FormatArg::Csv => "csv",
            FormatArg::Json => "json",
            FormatArg::Both => "both",
        }
    }

    fn writes_csv(self) -> bool {
        matches!(self, FormatArg::Csv | FormatArg::Both)
    }

    fn writes_json(self) -> bool {
        matches!(self, FormatArg::Json | FormatArg::Both)
    }
}

enum CliError {
    Usage(String),
    Parse(String),
    Numeric(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Numeric(_) => EXIT_NUMERIC,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Numeric(m) | CliError::Io(m) => m,
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e.message());
        std::process::exit(e.code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Reproduce(args) => cmd_reproduce(args),
    }
}

// ---------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let file = load_model_file(&args.model)?;
    let entry = file.get(&args.name).ok_or_else(|| {
        CliError::Usage(format!(
            "no model named `{}` in {}; available: {}",
            args.name,
            args.model.display(),
            file.names().join(", ")
        ))
    })?;

    let input = realize_input(entry.input(), args.n);
    let orbit = simulate(entry.model(), &input, args.n).map_err(sim_error)?;

    ensure_dir(&args.out)?;
    write_text(&args.out, "orbit.csv", &orbit_csv(&orbit))?;
    let manifest = Manifest::new(
        "simulate",
        serde_json::json!({
            "model": args.model.display().to_string(),
            "name": args.name,
            "n": args.n,
            "out": args.out.display().to_string(),
        }),
        vec!["orbit.csv".to_string()],
    );
    write_text(&args.out, "manifest.json", &to_json_bytes(&manifest))
}

fn cmd_validate(args: ValidateArgs) -> Result<(), CliError> {
    // Merge every loaded file into one namespace; a name collision
    // across files has no safe resolution, so it is rejected.
    let mut entries: BTreeMap<String, (PathBuf, ModelEntry)> = BTreeMap::new();
    for path in &args.model {
        let file = load_model_file(path)?;
        for entry in file.entries() {
            let name = entry.model().name().to_string();
            if let Some((prev, _)) = entries.get(&name) {
                return Err(CliError::Usage(format!(
                    "model `{name}` is defined in both {} and {}",
                    prev.display(),
                    path.display()
                )));
            }
            entries.insert(name, (path.clone(), entry.clone()));
        }
    }

    let system = resolve(&entries, &args.system)?;
    let model = resolve(&entries, &args.name)?;
    let extension = resolve(&entries, &args.extension)?;
    let input = shared_input([system, model, extension])?;

    let study = CaseStudy::new(
        "validate",
        SystemSource::Map(system.model().clone()),
        model.model().clone(),
        extension.model().clone(),
        input,
        args.n,
        args.fidelity.into(),
    );
    let result = run_procedure(&study).map_err(study_error)?;
    let summary = build_summary(
        &study,
        &result,
        SystemInfo { name: args.system.clone(), source: "map" },
        None,
    );

    let outputs = write_study_outputs(&args.out, args.format, &result, &summary)?;
    let manifest = Manifest::new(
        "validate",
        serde_json::json!({
            "models": args.model.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "system": args.system,
            "name": args.name,
            "extension": args.extension,
            "n": args.n,
            "fidelity": study.fidelity().name(),
            "format": args.format.name(),
            "out": args.out.display().to_string(),
        }),
        outputs,
    );
    write_text(&args.out, "manifest.json", &to_json_bytes(&manifest))
}

fn cmd_reproduce(args: ReproduceArgs) -> Result<(), CliError> {
    let fidelity: Fidelity = args.fidelity.into();
    let study = match args.study.as_str() {
        "sine-map" => sine_map_study(fidelity, args.n),
        "duffing" => duffing_study(fidelity, args.n, args.substeps),
        other => {
            return Err(CliError::Usage(format!(
                "unknown study `{other}`; valid studies are: sine-map, duffing"
            )))
        }
    };
    let result = run_procedure(&study).map_err(study_error)?;

    let (system_info, duffing) = match study.system() {
        SystemSource::Map(m) => (SystemInfo { name: m.name().to_string(), source: "map" }, None),
        SystemSource::DuffingOde(p) => (
            SystemInfo { name: "duffing-ode".to_string(), source: "duffing-rk4" },
            Some(DuffingInfo::from(*p)),
        ),
    };
    let summary = build_summary(&study, &result, system_info, duffing);

    let outputs = write_study_outputs(&args.out, args.format, &result, &summary)?;
    let manifest = Manifest::new(
        "reproduce",
        serde_json::json!({
            "study": args.study,
            "n": args.n,
            "fidelity": study.fidelity().name(),
            "substeps": args.substeps,
            "format": args.format.name(),
            "out": args.out.display().to_string(),
        }),
        outputs,
    );
    write_text(&args.out, "manifest.json", &to_json_bytes(&manifest))
}

// ---------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------

fn load_model_file(path: &Path) -> Result<lbe_core::ModelFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_model_file(&text).map_err(|diags| {
        let d = &diags[0];
        CliError::Parse(format!("{}:{}:{}: {}", path.display(), d.line, d.column, d.message))
    })
}

fn resolve<'a>(
    entries: &'a BTreeMap<String, (PathBuf, ModelEntry)>,
    name: &str,
) -> Result<&'a ModelEntry, CliError> {
    entries.get(name).map(|(_, e)| e).ok_or_else(|| {
        let names: Vec<&str> = entries.keys().map(String::as_str).collect();
        CliError::Usage(format!(
            "no model named `{name}` among the loaded files; available: {}",
            names.join(", ")
        ))
    })
}

/// Picks the drive signal for a triple: every entry that declares one
/// must declare exactly the same one (bitwise); entries without a drive
/// simply ignore it.
fn shared_input(entries: [&ModelEntry; 3]) -> Result<InputKind, CliError> {
    let mut chosen: Option<(&str, &InputKind)> = None;
    for entry in entries {
        let kind = entry.input();
        if matches!(kind, InputKind::None) {
            continue;
        }
        match &chosen {
            None => chosen = Some((entry.model().name(), kind)),
            Some((first, k)) => {
                if !input_bits_equal(k, kind) {
                    return Err(CliError::Usage(format!(
                        "drive signal mismatch: `{first}` declares {} but `{}` declares {}",
                        k.describe(),
                        entry.model().name(),
                        kind.describe()
                    )));
                }
            }
        }
    }
    Ok(chosen.map(|(_, k)| k.clone()).unwrap_or(InputKind::None))
}

fn input_bits_equal(a: &InputKind, b: &InputKind) -> bool {
    match (a, b) {
        (InputKind::None, InputKind::None) => true,
        (
            InputKind::Cosine { amplitude: a1, sample_period: t1 },
            InputKind::Cosine { amplitude: a2, sample_period: t2 },
        ) => a1.to_bits() == a2.to_bits() && t1.to_bits() == t2.to_bits(),
        (InputKind::Explicit(xs), InputKind::Explicit(ys)) => {
            xs.len() == ys.len()
                && xs.iter().zip(ys.iter()).all(|(x, y)| x.to_bits() == y.to_bits())
        }
        _ => false,
    }
}

fn sim_error(e: SimError) -> CliError {
    match e {
        SimError::Diverged { .. } | SimError::DivisionByZero { .. } => {
            CliError::Numeric(e.to_string())
        }
        other => CliError::Usage(other.to_string()),
    }
}

fn study_error(e: StudyError) -> CliError {
    match e {
        StudyError::Sim(s) => sim_error(s),
        StudyError::MismatchedPair { .. } => CliError::Usage(e.to_string()),
        StudyError::Metrics(_) => CliError::Numeric(e.to_string()),
    }
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))
}

fn write_text(dir: &Path, name: &str, text: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    fs::write(&path, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Writes the two per-sample report CSVs and/or the JSON digest,
/// honoring `--format`, and returns the list of files written.
fn write_study_outputs(
    dir: &Path,
    format: FormatArg,
    result: &ProcedureOutput,
    summary: &Summary,
) -> Result<Vec<String>, CliError> {
    ensure_dir(dir)?;
    let mut written = Vec::new();
    if format.writes_csv() {
        write_text(dir, "system_vs_model.csv", &report_csv(result.system_vs_model()))?;
        written.push("system_vs_model.csv".to_string());
        write_text(dir, "model_vs_extension.csv", &report_csv(result.model_vs_extension()))?;
        written.push("model_vs_extension.csv".to_string());
    }
    if format.writes_json() {
        write_text(dir, "summary.json", &to_json_bytes(summary))?;
        written.push("summary.json".to_string());
    }
    Ok(written)
}
