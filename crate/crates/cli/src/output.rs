//! Serialization of run results: plot-ready CSV and machine-readable
//! JSON. All binary64 values are printed with shortest round-trip
//! formatting, so parsing an output file back recovers the exact bits.

use std::fmt::Write as _;

use lbe_core::{CaseStudy, DuffingParams, Orbit, ProcedureOutput, ValidationReport};
use serde::Serialize;

/// Appends one shortest-round-trip float, or nothing for an undefined
/// entry (empty CSV cell).
fn push_opt(line: &mut String, buf: &mut ryu::Buffer, v: Option<f64>) {
    if let Some(v) = v {
        line.push_str(buf.format(v));
    }
}

/// `n,value` rows for a free-run orbit, one row per sample `0..=N`.
pub fn orbit_csv(orbit: &Orbit) -> String {
    let mut s = String::from("n,value\n");
    let mut buf = ryu::Buffer::new();
    for (n, v) in orbit.samples().iter().enumerate() {
        let _ = writeln!(s, "{n},{}", buf.format(*v));
    }
    s
}

/// Full per-sample report: the two orbits, the uncertainty band, the
/// four running indices, and the two difference-metric series. Running
/// entries that are undefined (before the first validated sample, or on
/// a degenerate window) are empty cells.
pub fn report_csv(report: &ValidationReport) -> String {
    let mut s = String::from("n,y,yhat,delta,rmse,lrmse,mape,lmape,d_rmse_pct,d_mape_pct\n");
    let mut buf = ryu::Buffer::new();
    for n in 0..report.len() {
        let mut line = String::new();
        let _ = write!(line, "{n},");
        line.push_str(buf.format(report.reference()[n]));
        line.push(',');
        line.push_str(buf.format(report.prediction()[n]));
        line.push(',');
        line.push_str(buf.format(report.delta()[n]));
        for series in [report.rmse(), report.lrmse(), report.mape(), report.lmape()] {
            line.push(',');
            push_opt(&mut line, &mut buf, series.value_at(n));
        }
        line.push(',');
        push_opt(&mut line, &mut buf, report.d_rmse_pct().get(n).copied().flatten());
        line.push(',');
        push_opt(&mut line, &mut buf, report.d_mape_pct().get(n).copied().flatten());
        line.push('\n');
        s.push_str(&line);
    }
    s
}

#[derive(Serialize)]
pub struct SystemInfo {
    pub name: String,
    /// `"map"` for a recursive-model reference, `"duffing-rk4"` for the
    /// integrated oscillator.
    pub source: &'static str,
}

#[derive(Serialize)]
pub struct DuffingInfo {
    pub damping: f64,
    pub cubic_stiffness: f64,
    pub forcing_amplitude: f64,
    pub sample_period: f64,
    pub substeps: u32,
}

impl From<DuffingParams> for DuffingInfo {
    fn from(p: DuffingParams) -> DuffingInfo {
        DuffingInfo {
            damping: p.damping,
            cubic_stiffness: p.cubic_stiffness,
            forcing_amplitude: p.forcing_amplitude,
            sample_period: p.sample_period,
            substeps: p.substeps,
        }
    }
}

/// Final indices plus the difference metrics sampled at n = 65 and at
/// the last sample, for one comparison step.
#[derive(Serialize)]
pub struct StepSummary {
    reference: String,
    prediction: String,
    rmse_final: Option<f64>,
    lrmse_final: Option<f64>,
    mape_final: Option<f64>,
    lmape_final: Option<f64>,
    mape_skipped: usize,
    lmape_skipped: usize,
    d_rmse_pct_at_65: Option<f64>,
    d_rmse_pct_at_n: Option<f64>,
    d_mape_pct_at_65: Option<f64>,
    d_mape_pct_at_n: Option<f64>,
}

impl StepSummary {
    fn from_report(report: &ValidationReport, n: usize) -> StepSummary {
        let at = |xs: &[Option<f64>], k: usize| xs.get(k).copied().flatten();
        StepSummary {
            reference: report.reference_name().to_string(),
            prediction: report.prediction_name().to_string(),
            rmse_final: report.rmse().final_value(),
            lrmse_final: report.lrmse().final_value(),
            mape_final: report.mape().final_value(),
            lmape_final: report.lmape().final_value(),
            mape_skipped: report.mape().skipped_at(n),
            lmape_skipped: report.lmape().skipped_at(n),
            d_rmse_pct_at_65: at(report.d_rmse_pct(), 65),
            d_rmse_pct_at_n: at(report.d_rmse_pct(), n),
            d_mape_pct_at_65: at(report.d_mape_pct(), 65),
            d_mape_pct_at_n: at(report.d_mape_pct(), n),
        }
    }
}

#[derive(Serialize)]
pub struct Steps {
    system_vs_model: StepSummary,
    model_vs_extension: StepSummary,
}

/// The machine-readable digest written as `summary.json`. Field order
/// is fixed by declaration order, so identical runs serialize to
/// identical bytes.
#[derive(Serialize)]
pub struct Summary {
    schema: &'static str,
    fidelity: &'static str,
    n: usize,
    k_start: usize,
    input: String,
    system: SystemInfo,
    model: String,
    extension: String,
    duffing: Option<DuffingInfo>,
    steps: Steps,
}

pub fn build_summary(
    study: &CaseStudy,
    output: &ProcedureOutput,
    system: SystemInfo,
    duffing: Option<DuffingInfo>,
) -> Summary {
    Summary {
        schema: "lbe-summary/1",
        fidelity: study.fidelity().name(),
        n: study.n(),
        k_start: output.k_start(),
        input: study.input().describe(),
        system,
        model: study.model().name().to_string(),
        extension: study.extension().name().to_string(),
        duffing,
        steps: Steps {
            system_vs_model: StepSummary::from_report(output.system_vs_model(), study.n()),
            model_vs_extension: StepSummary::from_report(output.model_vs_extension(), study.n()),
        },
    }
}

/// Every run writes one of these next to its outputs: the exact
/// invocation, the effective parameters, and the files produced. The
/// timestamp is the only field that varies between identical runs, and
/// pretty-printing keeps it isolated on its own line.
#[derive(Serialize)]
pub struct Manifest {
    pub command: &'static str,
    pub argv: Vec<String>,
    pub parameters: serde_json::Value,
    pub outputs: Vec<String>,
    pub timestamp_unix_ms: u128,
}

impl Manifest {
    pub fn new(command: &'static str, parameters: serde_json::Value, outputs: Vec<String>) -> Manifest {
        let timestamp_unix_ms = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_millis())
            .unwrap_or(0);
        Manifest {
            command,
            argv: std::env::args().skip(1).collect(),
            parameters,
            outputs,
            timestamp_unix_ms,
        }
    }
}

/// Pretty JSON with a trailing newline; field order follows the struct
/// declarations above.
pub fn to_json_bytes<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON serialization cannot fail");
    s.push('\n');
    s
}
