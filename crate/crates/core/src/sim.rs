//! Orbit generation: free-run iteration of models, forcing-input
//! realization, and the fixed-step RK4 integrator that produces the
//! Duffing reference ("system") signal.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::expr::{evaluate, EvalError, EvaluationContext};
use crate::math;
use crate::model::ModelDefinition;

/// A forcing-input description. `Cosine` realizes U_n = A·cos(n·Ts)
/// per sample (direct evaluation, no recurrence); `Explicit` carries a
/// caller-provided sequence; `None` is the empty signal for autonomous
/// models.
#[derive(Debug, Clone, PartialEq)]
pub enum InputKind {
    /// No input; valid only for models with `requires_input == false`.
    None,
    /// U_n = amplitude · cos(n · sample_period).
    Cosine {
        /// Forcing amplitude A.
        amplitude: f64,
        /// Sample period Ts, in radians of forcing phase.
        sample_period: f64,
    },
    /// A literal sample sequence U_0, U_1, …
    Explicit(Vec<f64>),
}

impl InputKind {
    /// Short provenance string ("none", "cosine(10, 0.05…)", "explicit(101)").
    pub fn describe(&self) -> String {
        match self {
            InputKind::None => String::from("none"),
            InputKind::Cosine { amplitude, sample_period } => {
                format!("cosine({amplitude}, {sample_period})")
            }
            InputKind::Explicit(samples) => format!("explicit({})", samples.len()),
        }
    }
}

/// A realized input signal: the kind it came from plus concrete samples.
#[derive(Debug, Clone)]
pub struct InputSignal {
    kind: InputKind,
    samples: Vec<f64>,
}

impl InputSignal {
    /// The kind this signal was realized from.
    pub fn kind(&self) -> &InputKind {
        &self.kind
    }

    /// Realized samples U_0 ..= U_N (empty for `InputKind::None`).
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Provenance string of the underlying kind.
    pub fn describe(&self) -> String {
        self.kind.describe()
    }
}

/// Realizes an input over the sample grid 0..=n.
///
/// `Cosine` computes each U_n = A·cos(n·Ts) independently (one
/// multiplication for the phase, one cos, one multiplication — no
/// recurrence, so there is no drift). `None` yields an empty signal;
/// `Explicit` passes its sequence through unchanged (coverage is checked
/// by [`simulate`], which knows whether the signal is consumed).
pub fn realize_input(kind: &InputKind, n: usize) -> InputSignal {
    let samples = match kind {
        InputKind::None => Vec::new(),
        InputKind::Cosine { amplitude, sample_period } => (0..=n)
            .map(|i| *amplitude * math::cos(i as f64 * *sample_period))
            .collect(),
        InputKind::Explicit(seq) => seq.clone(),
    };
    InputSignal { kind: kind.clone(), samples }
}

/// A simulated sample sequence of length N+1 indexed n = 0..=N, with the
/// provenance needed to label reports. All samples are finite: divergence
/// aborts the run with an error instead of storing non-finite values.
#[derive(Debug, Clone)]
pub struct Orbit {
    model_name: String,
    input_name: String,
    samples: Vec<f64>,
}

impl Orbit {
    pub(crate) fn new(model_name: String, input_name: String, samples: Vec<f64>) -> Orbit {
        Orbit { model_name, input_name, samples }
    }

    /// The samples, indexed by n.
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Name of the model (or integrator) that produced the orbit.
    pub fn model_name(&self) -> &str {
        &self.model_name
    }

    /// Provenance string of the input signal used.
    pub fn input_name(&self) -> &str {
        &self.input_name
    }

    /// The final sample index N.
    pub fn n(&self) -> usize {
        self.samples.len() - 1
    }

    /// Number of samples (N+1).
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// True when the orbit holds no samples (never produced by this crate).
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Parameters of the Duffing oscillator y″ + k·y′ + μ·y³ = A·cos(t) and of
/// its fixed-step integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DuffingParams {
    /// Damping coefficient k.
    pub damping: f64,
    /// Cubic stiffness μ.
    pub cubic_stiffness: f64,
    /// Forcing amplitude A.
    pub forcing_amplitude: f64,
    /// Sampling period Ts (> 0); the orbit holds y(n·Ts).
    pub sample_period: f64,
    /// RK4 steps per sample (≥ 1); the integration step is h = Ts/substeps.
    pub substeps: u32,
}

/// Simulation failure.
#[derive(Debug, Clone, PartialEq)]
pub enum SimError {
    /// N must be at least the model's output lag (the seeds must fit).
    RunTooShort { n: usize, output_lag: usize },
    /// The model requires an input signal but none was realized.
    MissingInput { model: String },
    /// The input signal does not cover the sample grid 0..=N.
    InputTooShort { needed: usize, found: usize },
    /// The input lag must not exceed the output lag, otherwise the first
    /// computed sample would need input samples from before the run.
    InputLagExceedsOutputLag { input_lag: usize, output_lag: usize },
    /// A `/` node saw an exact-zero divisor while producing `step`.
    DivisionByZero { step: usize, location: String },
    /// The sample at `step` came out ±∞ or NaN.
    Diverged { step: usize },
    /// Duffing parameters violate Ts > 0 (finite) or substeps ≥ 1.
    InvalidDuffingParams { reason: String },
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::RunTooShort { n, output_lag } => write!(
                f,
                "run length N = {n} is shorter than the declared output lag {output_lag}"
            ),
            SimError::MissingInput { model } => {
                write!(f, "model `{model}` requires an input signal but none was provided")
            }
            SimError::InputTooShort { needed, found } => {
                write!(f, "input signal has {found} samples but the run needs {needed}")
            }
            SimError::InputLagExceedsOutputLag { input_lag, output_lag } => write!(
                f,
                "input lag {input_lag} exceeds output lag {output_lag}; the first computed \
                 sample would need pre-run input history"
            ),
            SimError::DivisionByZero { step, location } => {
                write!(f, "division by zero at step {step} in `{location}`")
            }
            SimError::Diverged { step } => {
                write!(f, "orbit diverged: non-finite sample at step {step}")
            }
            SimError::InvalidDuffingParams { reason } => {
                write!(f, "invalid Duffing parameters: {reason}")
            }
        }
    }
}

impl core::error::Error for SimError {}

impl From<EvalError> for SimError {
    fn from(e: EvalError) -> SimError {
        match e {
            EvalError::DivisionByZero { step, location } => {
                SimError::DivisionByZero { step, location }
            }
            EvalError::NonFinite { step } => SimError::Diverged { step },
        }
    }
}

/// Free-runs `model` to sample N.
///
/// Samples 0..=k_y are the initial conditions; for n ≥ k_y, sample n+1 is
/// the update evaluated with `x[p]` bound to sample n−p and `u[q]` bound to
/// U_{n−q} (lag 0 = newest). Bitwise deterministic for identical arguments.
pub fn simulate(
    model: &ModelDefinition,
    input: &InputSignal,
    n: usize,
) -> Result<Orbit, SimError> {
    let ky = model.output_lag();
    let ku = model.input_lag();
    if n < ky {
        return Err(SimError::RunTooShort { n, output_lag: ky });
    }
    if model.requires_input() {
        if ku > ky {
            return Err(SimError::InputLagExceedsOutputLag { input_lag: ku, output_lag: ky });
        }
        if input.samples.is_empty() {
            return Err(SimError::MissingInput { model: model.name().into() });
        }
        if input.samples.len() < n + 1 {
            return Err(SimError::InputTooShort { needed: n + 1, found: input.samples.len() });
        }
    }

    let mut samples = Vec::with_capacity(n + 1);
    samples.extend_from_slice(model.initial_conditions());
    let mut outputs = vec![0.0; ky + 1];
    let mut inputs = vec![0.0; if model.requires_input() { ku + 1 } else { 0 }];

    for now in ky..n {
        for (p, slot) in outputs.iter_mut().enumerate() {
            *slot = samples[now - p];
        }
        if model.requires_input() {
            for (q, slot) in inputs.iter_mut().enumerate() {
                *slot = input.samples[now - q];
            }
        }
        let ctx = EvaluationContext { outputs: &outputs, inputs: &inputs, step: now + 1 };
        let next = evaluate(model.update(), &ctx)?;
        samples.push(next);
    }

    Ok(Orbit::new(model.name().into(), input.describe(), samples))
}

/// Integrates the Duffing oscillator with classical fixed-step RK4 on the
/// first-order system y′ = v, v′ = A·cos(t) − k·v − μ·y³ from rest
/// (y(0) = v(0) = 0), returning y sampled at t = n·Ts for n = 0..=N.
///
/// The step is h = Ts/substeps and the substep time is computed as
/// t = (n·substeps + j)·h — an absolute product, so there is no
/// accumulated-addition drift.
pub fn integrate_duffing(params: &DuffingParams, n: usize) -> Result<Orbit, SimError> {
    if !params.sample_period.is_finite() || params.sample_period <= 0.0 {
        return Err(SimError::InvalidDuffingParams {
            reason: String::from("sample period Ts must be finite and > 0"),
        });
    }
    if params.substeps < 1 {
        return Err(SimError::InvalidDuffingParams {
            reason: String::from("substeps must be >= 1"),
        });
    }
    if !(params.damping.is_finite()
        && params.cubic_stiffness.is_finite()
        && params.forcing_amplitude.is_finite())
    {
        return Err(SimError::InvalidDuffingParams {
            reason: String::from("k, mu, and A must be finite"),
        });
    }

    let a = params.forcing_amplitude;
    let k = params.damping;
    let mu = params.cubic_stiffness;
    let h = params.sample_period / params.substeps as f64;
    let substeps = params.substeps as u64;
    let deriv =
        |t: f64, y: f64, v: f64| -> (f64, f64) { (v, a * math::cos(t) - k * v - mu * ((y * y) * y)) };

    let mut y = 0.0f64;
    let mut v = 0.0f64;
    let mut samples = Vec::with_capacity(n + 1);
    samples.push(y);
    for now in 0..n {
        for j in 0..substeps {
            let t = (now as u64 * substeps + j) as f64 * h;
            let (k1y, k1v) = deriv(t, y, v);
            let (k2y, k2v) = deriv(t + h / 2.0, y + (h / 2.0) * k1y, v + (h / 2.0) * k1v);
            let (k3y, k3v) = deriv(t + h / 2.0, y + (h / 2.0) * k2y, v + (h / 2.0) * k2v);
            let (k4y, k4v) = deriv(t + h, y + h * k3y, v + h * k3v);
            y += (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
            v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        }
        if !y.is_finite() || !v.is_finite() {
            return Err(SimError::Diverged { step: now + 1 });
        }
        samples.push(y);
    }

    Ok(Orbit::new(
        String::from("duffing-ode"),
        format!("{a}*cos(t)"),
        samples,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expr;
    use alloc::string::ToString;

    fn none_signal() -> InputSignal {
        realize_input(&InputKind::None, 0)
    }

    fn sine_system() -> ModelDefinition {
        ModelDefinition::new(
            "system",
            3,
            None,
            vec![0.5; 4],
            Expr::mul(
                Expr::mul(Expr::constant(1.2), Expr::constant(core::f64::consts::PI)),
                Expr::sin(Expr::output(0)),
            ),
        )
        .unwrap()
    }

    fn sine_g() -> ModelDefinition {
        ModelDefinition::new(
            "G",
            3,
            None,
            vec![0.5; 4],
            Expr::sub(
                Expr::mul(Expr::constant(2.6868), Expr::output(0)),
                Expr::mul(Expr::constant(0.2462), Expr::pow(Expr::output(0), 3)),
            ),
        )
        .unwrap()
    }

    fn assert_close(actual: f64, expected: f64, rel: f64) {
        let scale = expected.abs().max(1e-300);
        assert!(
            (actual - expected).abs() <= rel * scale,
            "expected {expected:e}, got {actual:e}"
        );
    }

    #[test]
    fn identity_map_holds_its_seed() {
        let m = ModelDefinition::new("id", 0, None, vec![0.25], Expr::output(0)).unwrap();
        let orbit = simulate(&m, &none_signal(), 10).unwrap();
        assert_eq!(orbit.len(), 11);
        assert!(orbit.samples().iter().all(|&s| s == 0.25));
    }

    #[test]
    fn sine_system_first_step_matches_direct_evaluation() {
        // 1.2π·sin(0.5); cross-platform tolerance because sin comes from libm.
        let orbit = simulate(&sine_system(), &none_signal(), 4).unwrap();
        assert_eq!(&orbit.samples()[..4], &[0.5; 4]);
        assert_close(orbit.samples()[4], 1.8073917000267528, 1e-12);
    }

    #[test]
    fn sine_model_orbit_prefix_is_bit_frozen() {
        // Pure polynomial arithmetic: platform-independent, frozen exactly.
        let orbit = simulate(&sine_g(), &none_signal(), 9).unwrap();
        let expected: [f64; 6] = [
            1.312625,
            2.9699469566297925,
            1.530033488050118,
            3.229051816564166,
            0.3866073956782632,
            1.0245102358540747,
        ];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(
                orbit.samples()[4 + i].to_bits(),
                want.to_bits(),
                "sample {} mismatch",
                4 + i
            );
        }
    }

    #[test]
    fn sine_system_orbit_is_bounded_by_amplitude() {
        let orbit = simulate(&sine_system(), &none_signal(), 2000).unwrap();
        let amplitude = 1.2 * core::f64::consts::PI;
        let bound = f64::from_bits(amplitude.to_bits() + 1); // +1 ulp
        assert!(orbit.samples().iter().all(|s| s.abs() <= bound));
    }

    #[test]
    fn simulation_is_bitwise_deterministic() {
        let a = simulate(&sine_system(), &none_signal(), 200).unwrap();
        let b = simulate(&sine_system(), &none_signal(), 200).unwrap();
        for (x, y) in a.samples().iter().zip(b.samples()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn divergent_model_reports_the_overflow_step() {
        // x_{n+1} = x_n² + 2 from 2.0 overflows at sample 10.
        let m = ModelDefinition::new(
            "blowup",
            0,
            None,
            vec![2.0],
            Expr::add(Expr::mul(Expr::output(0), Expr::output(0)), Expr::constant(2.0)),
        )
        .unwrap();
        let err = simulate(&m, &none_signal(), 100).unwrap_err();
        assert_eq!(err, SimError::Diverged { step: 10 });
    }

    #[test]
    fn run_shorter_than_seeds_is_rejected() {
        let err = simulate(&sine_g(), &none_signal(), 2).unwrap_err();
        assert_eq!(err, SimError::RunTooShort { n: 2, output_lag: 3 });
    }

    #[test]
    fn input_requirements_are_enforced() {
        let m = ModelDefinition::new(
            "driven",
            1,
            Some(1),
            vec![0.0, 0.0],
            Expr::add(Expr::output(0), Expr::input(1)),
        )
        .unwrap();
        let err = simulate(&m, &none_signal(), 10).unwrap_err();
        assert_eq!(err, SimError::MissingInput { model: "driven".to_string() });

        let short = realize_input(&InputKind::Explicit(vec![1.0; 5]), 10);
        let err = simulate(&m, &short, 10).unwrap_err();
        assert_eq!(err, SimError::InputTooShort { needed: 11, found: 5 });

        let deep = ModelDefinition::new(
            "deep",
            0,
            Some(1),
            vec![0.0],
            Expr::input(1),
        )
        .unwrap();
        let sig = realize_input(&InputKind::Explicit(vec![1.0; 11]), 10);
        let err = simulate(&deep, &sig, 10).unwrap_err();
        assert_eq!(err, SimError::InputLagExceedsOutputLag { input_lag: 1, output_lag: 0 });
    }

    #[test]
    fn cosine_input_matches_direct_evaluation() {
        let kind = InputKind::Cosine {
            amplitude: 10.0,
            sample_period: core::f64::consts::PI / 60.0,
        };
        let sig = realize_input(&kind, 30);
        assert_eq!(sig.samples().len(), 31);
        assert_eq!(sig.samples()[0], 10.0); // cos(0) = 1 exactly
        assert_close(sig.samples()[1], 9.986295347545738, 1e-12);
        // n = 30 is a quarter period: near zero but NOT exactly zero —
        // binary64 has no exact π/2.
        let u30 = sig.samples()[30];
        assert_ne!(u30, 0.0);
        assert!(u30.abs() < 1e-15);
        assert_close(u30, 6.123233995736766e-16, 1e-9);
    }

    #[test]
    fn duffing_zero_iterations_yields_rest_state() {
        let params = duffing_params(100);
        let orbit = integrate_duffing(&params, 0).unwrap();
        assert_eq!(orbit.samples(), &[0.0]);
    }

    #[test]
    fn unforced_duffing_stays_at_rest() {
        let params = DuffingParams { forcing_amplitude: 0.0, ..duffing_params(100) };
        let orbit = integrate_duffing(&params, 20).unwrap();
        assert!(orbit.samples().iter().all(|&s| s == 0.0));
    }

    #[test]
    fn duffing_first_samples_match_frozen_reference() {
        let orbit = integrate_duffing(&duffing_params(100), 4).unwrap();
        assert_close(orbit.samples()[1], 0.013468538182332493, 1e-12);
        assert_close(orbit.samples()[2], 0.05291717856273592, 1e-12);
        assert_close(orbit.samples()[3], 0.1169104385614575, 1e-12);
        assert_close(orbit.samples()[4], 0.20401223047538503, 1e-12);
    }

    #[test]
    fn duffing_substep_refinement_converges() {
        // The default 100 substeps against a 10× finer run: the integrator
        // is far below the model error floor.
        let coarse = integrate_duffing(&duffing_params(100), 65).unwrap();
        let fine = integrate_duffing(&duffing_params(1000), 65).unwrap();
        for (c, f) in coarse.samples().iter().zip(fine.samples()).skip(1) {
            let rel = (c - f).abs() / f.abs().max(1e-30);
            assert!(rel < 1e-8, "relative deviation {rel:e} too large");
        }
    }

    #[test]
    fn invalid_duffing_params_are_rejected() {
        let bad_ts = DuffingParams { sample_period: 0.0, ..duffing_params(100) };
        assert!(matches!(
            integrate_duffing(&bad_ts, 1),
            Err(SimError::InvalidDuffingParams { .. })
        ));
        let bad_sub = duffing_params(0);
        assert!(matches!(
            integrate_duffing(&bad_sub, 1),
            Err(SimError::InvalidDuffingParams { .. })
        ));
    }

    fn duffing_params(substeps: u32) -> DuffingParams {
        DuffingParams {
            damping: 1.0,
            cubic_stiffness: 0.25,
            forcing_amplitude: 10.0,
            sample_period: core::f64::consts::PI / 60.0,
            substeps,
        }
    }
}
