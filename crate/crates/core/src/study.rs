//! Bundled case studies: a reference system, an identified model G, and
//! a mathematically equivalent rearrangement H of the same polynomial,
//! plus the three-step comparison procedure that produces validation
//! reports.
//!
//! The procedure: (1) simulate the system and both model forms under
//! identical inputs and initial conditions; (2) take the lower bound
//! error δ from the pair (G, H) — two interval extensions of the same
//! model whose free-run orbits drift apart through rounding alone;
//! (3) evaluate y = system vs ŷ = G, and y = G vs ŷ = H, both under the
//! same δ.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::expr::Expr;
use crate::metrics::{lbe, validation_report, MetricsError, ValidationReport};
use crate::model::ModelDefinition;
use crate::sim::{
    integrate_duffing, realize_input, simulate, DuffingParams, InputKind, SimError,
};

/// Which rendition of the shipped model coefficients a study uses.
///
/// The originally published equation pair contains two typographical
/// inconsistencies that break the stated mathematical equivalence of G
/// and H: the newest-input coefficient is printed as 0.000341 in G but
/// 0.0003416 in H, and H's final term is printed with exponent 2 where
/// G has exponent 3. `Equivalent` (the default) repairs both so G and H
/// are exactly the same polynomial; `PaperVerbatim` reproduces the
/// printed coefficients unchanged, for auditability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fidelity {
    Equivalent,
    PaperVerbatim,
}

impl Fidelity {
    /// Stable external name ("equivalent" / "paper-verbatim").
    pub fn name(&self) -> &'static str {
        match self {
            Fidelity::Equivalent => "equivalent",
            Fidelity::PaperVerbatim => "paper-verbatim",
        }
    }
}

impl fmt::Display for Fidelity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a study's reference ("system") orbit comes from: either a map
/// iterated like any model, or the fixed-step-integrated Duffing
/// oscillator.
#[derive(Debug, Clone)]
pub enum SystemSource {
    Map(ModelDefinition),
    DuffingOde(DuffingParams),
}

/// A complete study configuration.
#[derive(Debug, Clone)]
pub struct CaseStudy {
    name: String,
    system: SystemSource,
    model: ModelDefinition,
    extension: ModelDefinition,
    input: InputKind,
    n: usize,
    fidelity: Fidelity,
}

impl CaseStudy {
    /// Assembles a study. Pair-compatibility (identical lags and initial
    /// conditions for model and extension) is checked by
    /// [`run_procedure`].
    pub fn new(
        name: &str,
        system: SystemSource,
        model: ModelDefinition,
        extension: ModelDefinition,
        input: InputKind,
        n: usize,
        fidelity: Fidelity,
    ) -> CaseStudy {
        CaseStudy { name: name.into(), system, model, extension, input, n, fidelity }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn system(&self) -> &SystemSource {
        &self.system
    }

    /// The identified model G.
    pub fn model(&self) -> &ModelDefinition {
        &self.model
    }

    /// The rearranged extension H.
    pub fn extension(&self) -> &ModelDefinition {
        &self.extension
    }

    pub fn input(&self) -> &InputKind {
        &self.input
    }

    /// Final sample index N.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn fidelity(&self) -> Fidelity {
        self.fidelity
    }

    /// First validated sample: one past the deepest declared output lag
    /// among the compared recursions, so every window excludes the
    /// shared seeded samples.
    pub fn k_start(&self) -> usize {
        let mut deepest = self.model.output_lag().max(self.extension.output_lag());
        if let SystemSource::Map(sys) = &self.system {
            deepest = deepest.max(sys.output_lag());
        }
        deepest + 1
    }
}

/// Both validation reports produced by the procedure, sharing one δ.
#[derive(Debug, Clone)]
pub struct ProcedureOutput {
    study: String,
    fidelity: Fidelity,
    n: usize,
    k_start: usize,
    system_vs_model: ValidationReport,
    model_vs_extension: ValidationReport,
}

impl ProcedureOutput {
    /// Study name.
    pub fn study(&self) -> &str {
        &self.study
    }

    pub fn fidelity(&self) -> Fidelity {
        self.fidelity
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k_start(&self) -> usize {
        self.k_start
    }

    /// Steps 1–2: y = system, ŷ = model, δ from (model, extension).
    pub fn system_vs_model(&self) -> &ValidationReport {
        &self.system_vs_model
    }

    /// Step 3: y = model, ŷ = extension, same δ.
    pub fn model_vs_extension(&self) -> &ValidationReport {
        &self.model_vs_extension
    }
}

/// Study-level failure.
#[derive(Debug, Clone, PartialEq)]
pub enum StudyError {
    Sim(SimError),
    Metrics(MetricsError),
    /// Model and extension must share lags and initial conditions; the
    /// lower bound error is only meaningful for orbits seeded and driven
    /// identically.
    MismatchedPair { reason: String },
}

impl fmt::Display for StudyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StudyError::Sim(e) => write!(f, "simulation failed: {e}"),
            StudyError::Metrics(e) => write!(f, "metric evaluation failed: {e}"),
            StudyError::MismatchedPair { reason } => {
                write!(f, "model/extension pair mismatch: {reason}")
            }
        }
    }
}

impl core::error::Error for StudyError {}

impl From<SimError> for StudyError {
    fn from(e: SimError) -> StudyError {
        StudyError::Sim(e)
    }
}

impl From<MetricsError> for StudyError {
    fn from(e: MetricsError) -> StudyError {
        StudyError::Metrics(e)
    }
}

/// Runs the three-step procedure for one study.
///
/// The input signal is realized once and shared by every simulation;
/// model and extension must declare identical lags and bitwise-identical
/// initial conditions. Bitwise deterministic.
pub fn run_procedure(study: &CaseStudy) -> Result<ProcedureOutput, StudyError> {
    let model = study.model();
    let extension = study.extension();
    if model.output_lag() != extension.output_lag()
        || model.input_lag() != extension.input_lag()
        || model.requires_input() != extension.requires_input()
    {
        return Err(StudyError::MismatchedPair {
            reason: String::from("model and extension must declare identical lags"),
        });
    }
    let same_inits = model.initial_conditions().len() == extension.initial_conditions().len()
        && model
            .initial_conditions()
            .iter()
            .zip(extension.initial_conditions())
            .all(|(a, b)| a.to_bits() == b.to_bits());
    if !same_inits {
        return Err(StudyError::MismatchedPair {
            reason: String::from(
                "model and extension must share bitwise-identical initial conditions",
            ),
        });
    }

    let n = study.n();
    let signal = realize_input(study.input(), n);
    let system_orbit = match study.system() {
        SystemSource::Map(sys) => simulate(sys, &signal, n)?,
        SystemSource::DuffingOde(params) => integrate_duffing(params, n)?,
    };
    let g = simulate(model, &signal, n)?;
    let h = simulate(extension, &signal, n)?;
    let delta = lbe(&g, &h)?;
    let k_start = study.k_start();
    let pair = (model.name(), extension.name());
    let system_vs_model = validation_report(&system_orbit, &g, &delta, pair, k_start)?;
    let model_vs_extension = validation_report(&g, &h, &delta, pair, k_start)?;
    Ok(ProcedureOutput {
        study: study.name().into(),
        fidelity: study.fidelity(),
        n,
        k_start,
        system_vs_model,
        model_vs_extension,
    })
}

// --- builtin model definitions -----------------------------------------

fn c(v: f64) -> Expr {
    Expr::constant(v)
}

fn x(p: usize) -> Expr {
    Expr::output(p)
}

fn u(q: usize) -> Expr {
    Expr::input(q)
}

/// coefficient × expression
fn cx(v: f64, e: Expr) -> Expr {
    Expr::mul(c(v), e)
}

fn sine_system_update() -> Expr {
    Expr::mul(Expr::mul(c(1.2), c(core::f64::consts::PI)), Expr::sin(x(0)))
}

fn sine_model_update() -> Expr {
    Expr::sub(cx(2.6868, x(0)), cx(0.2462, Expr::pow(x(0), 3)))
}

fn sine_extension_update() -> Expr {
    Expr::sub(
        cx(2.6868, x(0)),
        Expr::mul(cx(0.2462, x(0)), Expr::pow(x(0), 2)),
    )
}

fn duffing_model_update(newest_input_coeff: f64) -> Expr {
    let t = cx(2.1579, x(0));
    let t = Expr::sub(t, cx(1.3203, x(1)));
    let t = Expr::add(t, cx(0.16239, x(2)));
    let t = Expr::add(t, cx(newest_input_coeff, u(0)));
    let t = Expr::add(t, cx(0.0019463, u(1)));
    let t = Expr::sub(t, cx(0.0048196, Expr::pow(x(0), 3)));
    let t = Expr::add(t, Expr::mul(cx(0.003523, Expr::pow(x(0), 2)), x(1)));
    let t = Expr::sub(t, Expr::mul(Expr::mul(cx(0.0012162, x(0)), x(1)), x(2)));
    Expr::add(t, cx(0.0002248, Expr::pow(x(2), 3)))
}

fn duffing_extension_update(last_term_exponent: u32) -> Expr {
    let t = cx(0.0003416, u(0));
    let t = Expr::add(t, cx(0.0019463, u(1)));
    let t = Expr::add(t, cx(2.1579, x(0)));
    let t = Expr::sub(t, cx(1.3203, x(1)));
    let t = Expr::add(t, cx(0.16239, x(2)));
    let t = Expr::sub(t, cx(0.0048196, Expr::pow(x(0), 3)));
    let t = Expr::add(t, Expr::mul(cx(0.003523, Expr::pow(x(0), 2)), x(1)));
    let t = Expr::sub(t, Expr::mul(Expr::mul(cx(0.0012162, x(0)), x(1)), x(2)));
    Expr::add(t, cx(0.0002248, Expr::pow(x(2), last_term_exponent)))
}

/// The sine-map study: system X_{n+1} = 1.2π·sin(X_n); model
/// G = 2.6868·x − 0.2462·x³; extension H with the cubic term regrouped
/// as (0.2462·x)·x². All three seeded with 0.5 at lags 0..=3. The sine
/// pair has no published typos, so fidelity does not alter it.
pub fn sine_map_study(fidelity: Fidelity, n: usize) -> CaseStudy {
    let seeds = vec![0.5; 4];
    let system =
        ModelDefinition::new("system", 3, None, seeds.clone(), sine_system_update()).unwrap();
    let model = ModelDefinition::new("G", 3, None, seeds.clone(), sine_model_update()).unwrap();
    let extension = ModelDefinition::new("H", 3, None, seeds, sine_extension_update()).unwrap();
    CaseStudy::new(
        "sine-map",
        SystemSource::Map(system),
        model,
        extension,
        InputKind::None,
        n,
        fidelity,
    )
}

/// The Duffing study: reference y″ + y′ + 0.25·y³ = 10·cos(t) integrated
/// by RK4 and sampled at Ts = π/60; identified model and its rearranged
/// extension driven by U_n = 10·cos(n·Ts), all initial conditions 0.
pub fn duffing_study(fidelity: Fidelity, n: usize, substeps: u32) -> CaseStudy {
    let params = DuffingParams {
        damping: 1.0,
        cubic_stiffness: 0.25,
        forcing_amplitude: 10.0,
        sample_period: core::f64::consts::PI / 60.0,
        substeps,
    };
    let (g_u0, h_exp) = match fidelity {
        Fidelity::Equivalent => (0.0003416, 3),
        Fidelity::PaperVerbatim => (0.000341, 2),
    };
    let seeds = vec![0.0; 5];
    let model =
        ModelDefinition::new("G", 4, Some(1), seeds.clone(), duffing_model_update(g_u0)).unwrap();
    let extension =
        ModelDefinition::new("H", 4, Some(1), seeds, duffing_extension_update(h_exp)).unwrap();
    CaseStudy::new(
        "duffing",
        SystemSource::DuffingOde(params),
        model,
        extension,
        InputKind::Cosine { amplitude: 10.0, sample_period: params.sample_period },
        n,
        fidelity,
    )
}

/// Both studies with default configuration: N = 100, equivalent
/// fidelity, Duffing integration at 100 substeps.
pub fn builtin_studies() -> Vec<CaseStudy> {
    vec![
        sine_map_study(Fidelity::Equivalent, 100),
        duffing_study(Fidelity::Equivalent, 100, 100),
    ]
}
