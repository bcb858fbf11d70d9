//! Strict binary64 simulation of recursive nonlinear models and the
//! Lower Bound Error (LBE) validation indices.
//!
//! A recursive polynomial model (NARMAX-style model core) maps lagged
//! outputs and inputs to the next output sample. Two *interval extensions*
//! of the same model — rewritings that are mathematically identical but
//! perform their floating-point operations in a different order — produce
//! different pseudo-orbits once rounding errors accumulate. Half the gap
//! between the two pseudo-orbits is a per-iteration lower bound on the
//! computational error (the LBE, `δ_n = |a_n − b_n| / 2`), and feeding that
//! bound back into classical validation indices yields the
//! uncertainty-aware LRMSE/LMAPE indices this crate implements.
//!
//! Everything here is deterministic by construction: expression evaluation
//! performs exactly one IEEE-754 round-to-nearest-even operation per binary
//! node, `^` is left-folded repeated multiplication, and summation orders
//! are pinned. See [`expr::evaluate`] for the exact contract.
//!
//! The crate is `no_std`-compatible (with `alloc`). The default `std`
//! feature uses the platform `sin`/`cos`/`sqrt`; disabling it requires the
//! `libm` feature for a pure-Rust fallback.
//!
//! Modules:
//! - [`expr`]: expression trees, strict evaluator, structural equality
//! - [`model`]: validated model definitions (lags, seeds, update rule)
//! - [`dsl`]: the `.nmx` text format — parser and canonical formatter
//! - [`sim`]: orbit generation, forcing inputs, Duffing RK4 integrator
//! - [`metrics`]: LBE, RMSE/MAPE, LRMSE/LMAPE, running series, reports
//! - [`study`]: the built-in sine-map and Duffing case studies

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!(
    "lbe-core requires either the `std` feature (platform math) or the `libm` feature"
);

pub mod dsl;
pub mod expr;
mod math;
pub mod metrics;
pub mod model;
pub mod sim;
pub mod study;

pub use dsl::{
    format_file, format_model, parse_expr, parse_model_file, ModelEntry, ModelFile,
    ParseDiagnostic, Severity,
};
pub use expr::{
    evaluate, max_lags, structurally_equal, BinOp, EvalError, EvaluationContext, Expr, Func,
};
pub use metrics::{
    difference_metric, lbe, lmape, lrmse, mape, rmse, running_index, validation_report,
    IndexKind, IndexSeries, LbeSeries, Mape, MetricsError, ValidationReport,
};
pub use model::{ModelDefinition, ModelError};
pub use sim::{
    integrate_duffing, realize_input, simulate, DuffingParams, InputKind, InputSignal, Orbit,
    SimError,
};
pub use study::{
    builtin_studies, duffing_study, run_procedure, sine_map_study, CaseStudy, Fidelity,
    ProcedureOutput, StudyError, SystemSource,
};
