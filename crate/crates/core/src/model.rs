//! Validated model definitions: a named update expression plus the lag
//! depths and initial conditions needed to iterate it.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::expr::{max_lags, structurally_equal, uses_input, Expr};

/// A recursive model ready for simulation.
///
/// Invariants (enforced at construction, so a `ModelDefinition` is always
/// simulable):
/// - `initial_conditions.len() == output_lag + 1` — one seed per declared
///   output lag, newest last in *time* order (index p holds X_p).
/// - every `x[p]` in the update satisfies `p <= output_lag`;
/// - every `u[q]` satisfies `requires_input` and `q <= input_lag`;
/// - all initial conditions are finite;
/// - the name is a valid identifier (`[A-Za-z_][A-Za-z0-9_]*`) and not a
///   keyword of the text format.
#[derive(Debug, Clone)]
pub struct ModelDefinition {
    name: String,
    output_lag: usize,
    input_lag: usize,
    requires_input: bool,
    initial_conditions: Vec<f64>,
    update: Expr,
}

/// Why a model definition was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    /// The name is empty, not identifier-shaped, or a reserved word.
    InvalidName { name: String },
    /// `initial_conditions.len()` must be `output_lag + 1`.
    InitCountMismatch { expected: usize, found: usize },
    /// An initial condition is ±∞ or NaN.
    NonFiniteInitialCondition { index: usize },
    /// The update references `x[p]` with `p` beyond the declared lag.
    OutputLagExceedsDeclared { used: usize, declared: usize },
    /// The update references `u[q]` with `q` beyond the declared lag.
    InputLagExceedsDeclared { used: usize, declared: usize },
    /// The update references `u[...]` but the model declares no input.
    InputNotDeclared,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::InvalidName { name } => {
                write!(f, "invalid model name `{name}`")
            }
            ModelError::InitCountMismatch { expected, found } => write!(
                f,
                "init-count mismatch: declared lags require {expected} initial values, found {found}"
            ),
            ModelError::NonFiniteInitialCondition { index } => {
                write!(f, "initial condition {index} is not finite")
            }
            ModelError::OutputLagExceedsDeclared { used, declared } => write!(
                f,
                "update references x[{used}] but the declared output lag is {declared}"
            ),
            ModelError::InputLagExceedsDeclared { used, declared } => write!(
                f,
                "update references u[{used}] but the declared input lag is {declared}"
            ),
            ModelError::InputNotDeclared => {
                write!(f, "update references u[...] but the model declares no input lag")
            }
        }
    }
}

impl core::error::Error for ModelError {}

/// Words with fixed meaning in the text format; rejected as model names.
pub(crate) const RESERVED_WORDS: &[&str] = &[
    "model", "lags", "init", "input", "update", "none", "cosine", "x", "u", "pi", "sin", "cos",
];

/// Whether `s` is identifier-shaped: `[A-Za-z_][A-Za-z0-9_]*`.
pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ModelDefinition {
    /// Builds a model, checking every invariant listed on the type.
    ///
    /// `input_lag` is `Some(k_u)` for a model that consumes an input signal
    /// (its `requires_input` flag becomes true even if the update happens
    /// not to reference `u`), `None` for an autonomous model.
    pub fn new(
        name: &str,
        output_lag: usize,
        input_lag: Option<usize>,
        initial_conditions: Vec<f64>,
        update: Expr,
    ) -> Result<ModelDefinition, ModelError> {
        if !is_identifier(name) || RESERVED_WORDS.contains(&name) {
            return Err(ModelError::InvalidName { name: name.into() });
        }
        let expected = output_lag + 1;
        if initial_conditions.len() != expected {
            return Err(ModelError::InitCountMismatch {
                expected,
                found: initial_conditions.len(),
            });
        }
        if let Some(index) = initial_conditions.iter().position(|v| !v.is_finite()) {
            return Err(ModelError::NonFiniteInitialCondition { index });
        }
        let (max_out, max_in) = max_lags(&update);
        if max_out > output_lag {
            return Err(ModelError::OutputLagExceedsDeclared {
                used: max_out,
                declared: output_lag,
            });
        }
        match input_lag {
            Some(declared) => {
                if max_in > declared {
                    return Err(ModelError::InputLagExceedsDeclared {
                        used: max_in,
                        declared,
                    });
                }
            }
            None => {
                if uses_input(&update) {
                    return Err(ModelError::InputNotDeclared);
                }
            }
        }
        Ok(ModelDefinition {
            name: name.into(),
            output_lag,
            input_lag: input_lag.unwrap_or(0),
            requires_input: input_lag.is_some(),
            initial_conditions,
            update,
        })
    }

    /// Model name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Declared maximum output lag k_y.
    pub fn output_lag(&self) -> usize {
        self.output_lag
    }

    /// Declared maximum input lag k_u (0 when no input is declared).
    pub fn input_lag(&self) -> usize {
        self.input_lag
    }

    /// Whether simulation needs an input signal.
    pub fn requires_input(&self) -> bool {
        self.requires_input
    }

    /// Seeds X_0 ..= X_{k_y} in time order.
    pub fn initial_conditions(&self) -> &[f64] {
        &self.initial_conditions
    }

    /// The update expression.
    pub fn update(&self) -> &Expr {
        &self.update
    }

    /// Full definitional identity: same name, lags, bitwise-equal seeds,
    /// and structurally equal update trees.
    pub fn definitionally_equal(&self, other: &ModelDefinition) -> bool {
        self.name == other.name
            && self.output_lag == other.output_lag
            && self.input_lag == other.input_lag
            && self.requires_input == other.requires_input
            && self.initial_conditions.len() == other.initial_conditions.len()
            && self
                .initial_conditions
                .iter()
                .zip(&other.initial_conditions)
                .all(|(a, b)| a.to_bits() == b.to_bits())
            && structurally_equal(&self.update, &other.update)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn accepts_a_well_formed_model() {
        let m = ModelDefinition::new(
            "G",
            3,
            None,
            vec![0.5; 4],
            Expr::mul(Expr::constant(2.0), Expr::output(3)),
        )
        .unwrap();
        assert_eq!(m.name(), "G");
        assert_eq!(m.output_lag(), 3);
        assert!(!m.requires_input());
        assert_eq!(m.initial_conditions(), &[0.5, 0.5, 0.5, 0.5]);
    }

    #[test]
    fn rejects_init_count_mismatch() {
        let err =
            ModelDefinition::new("G", 3, None, vec![0.5; 3], Expr::output(0)).unwrap_err();
        assert_eq!(err, ModelError::InitCountMismatch { expected: 4, found: 3 });
    }

    #[test]
    fn rejects_lag_beyond_declaration() {
        let err =
            ModelDefinition::new("G", 1, None, vec![0.0, 0.0], Expr::output(2)).unwrap_err();
        assert_eq!(err, ModelError::OutputLagExceedsDeclared { used: 2, declared: 1 });
        let err = ModelDefinition::new(
            "G",
            1,
            Some(0),
            vec![0.0, 0.0],
            Expr::input(1),
        )
        .unwrap_err();
        assert_eq!(err, ModelError::InputLagExceedsDeclared { used: 1, declared: 0 });
    }

    #[test]
    fn rejects_undeclared_input_use() {
        let err =
            ModelDefinition::new("G", 0, None, vec![0.0], Expr::input(0)).unwrap_err();
        assert_eq!(err, ModelError::InputNotDeclared);
    }

    #[test]
    fn rejects_bad_names_and_nonfinite_seeds() {
        assert!(matches!(
            ModelDefinition::new("", 0, None, vec![0.0], Expr::output(0)),
            Err(ModelError::InvalidName { .. })
        ));
        assert!(matches!(
            ModelDefinition::new("pi", 0, None, vec![0.0], Expr::output(0)),
            Err(ModelError::InvalidName { .. })
        ));
        assert!(matches!(
            ModelDefinition::new("2fast", 0, None, vec![0.0], Expr::output(0)),
            Err(ModelError::InvalidName { .. })
        ));
        assert_eq!(
            ModelDefinition::new("G", 0, None, vec![f64::NAN], Expr::output(0)).unwrap_err(),
            ModelError::NonFiniteInitialCondition { index: 0 }
        );
    }

    #[test]
    fn input_declared_but_unused_is_allowed() {
        let m = ModelDefinition::new("G", 1, Some(1), vec![0.0, 0.0], Expr::output(0)).unwrap();
        assert!(m.requires_input());
        assert_eq!(m.input_lag(), 1);
    }
}
