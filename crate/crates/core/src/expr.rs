//! Expression trees and the strict binary64 evaluator.
//!
//! Trees are never simplified, folded, reassociated, or distributed: the
//! shape of the tree *is* the computation, and two mathematically equal
//! trees with different shapes (interval extensions of the same model) are
//! deliberately kept distinct. [`evaluate`] performs exactly one IEEE-754
//! round-to-nearest-even operation per binary node, with `^` defined as
//! left-folded repeated multiplication — never a library `pow`.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::fmt;

use crate::math;

/// Unary function allowed in update expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
}

impl Func {
    /// Source-text name of the function.
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
        }
    }
}

/// Binary arithmetic operator. `^` is not listed here: exponentiation is a
/// dedicated node ([`Expr::Pow`]) because its exponent is a static positive
/// integer rather than a subexpression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

/// An immutable expression tree.
///
/// `Output(p)` reads the lagged output X_{n−p} and `Input(q)` the lagged
/// input U_{n−q}, where `n` is the step whose successor is being computed
/// (so lag 0 is the newest available sample). `Pow`'s exponent is an
/// integer ≥ 1 — an invariant enforced by the parser and the model
/// validator, and asserted by the evaluator.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// Literal binary64 constant.
    Const(f64),
    /// Lagged output reference `x[p]` = X_{n−p}.
    Output(usize),
    /// Lagged input reference `u[q]` = U_{n−q}.
    Input(usize),
    /// Unary function call `sin(e)` / `cos(e)`.
    Call(Func, Box<Expr>),
    /// Unary negation `-(e)`: an exact sign flip, never a rounding step.
    Neg(Box<Expr>),
    /// One binary operation = one IEEE-754 rounding.
    Binary(BinOp, Box<Expr>, Box<Expr>),
    /// `base^k`, evaluated as left-folded repeated multiplication.
    Pow(Box<Expr>, u32),
}

// The builder methods are tree constructors (they take and return owned
// nodes), not arithmetic on Expr values, so the operator traits whose
// names they share would be the wrong interface.
#[allow(clippy::should_implement_trait)]
impl Expr {
    /// Literal constant node.
    pub fn constant(v: f64) -> Expr {
        Expr::Const(v)
    }

    /// Lagged output `x[p]`.
    pub fn output(lag: usize) -> Expr {
        Expr::Output(lag)
    }

    /// Lagged input `u[q]`.
    pub fn input(lag: usize) -> Expr {
        Expr::Input(lag)
    }

    /// `sin(e)`.
    pub fn sin(e: Expr) -> Expr {
        Expr::Call(Func::Sin, Box::new(e))
    }

    /// `cos(e)`.
    pub fn cos(e: Expr) -> Expr {
        Expr::Call(Func::Cos, Box::new(e))
    }

    /// Exact unary negation.
    pub fn neg(e: Expr) -> Expr {
        Expr::Neg(Box::new(e))
    }

    /// `l + r`.
    pub fn add(l: Expr, r: Expr) -> Expr {
        Expr::Binary(BinOp::Add, Box::new(l), Box::new(r))
    }

    /// `l - r`.
    pub fn sub(l: Expr, r: Expr) -> Expr {
        Expr::Binary(BinOp::Sub, Box::new(l), Box::new(r))
    }

    /// `l * r`.
    pub fn mul(l: Expr, r: Expr) -> Expr {
        Expr::Binary(BinOp::Mul, Box::new(l), Box::new(r))
    }

    /// `l / r`.
    pub fn div(l: Expr, r: Expr) -> Expr {
        Expr::Binary(BinOp::Div, Box::new(l), Box::new(r))
    }

    /// `base^exponent`. The exponent must be ≥ 1.
    pub fn pow(base: Expr, exponent: u32) -> Expr {
        assert!(exponent >= 1, "power exponent must be a positive integer");
        Expr::Pow(Box::new(base), exponent)
    }
}

/// Sample histories an expression is evaluated against.
///
/// Both slices are newest-first: `outputs[p]` is X_{n−p} and `inputs[q]` is
/// U_{n−q}. The caller must supply windows covering every lag the
/// expression references (guaranteed for validated models, where the
/// simulator sizes the windows from the declared lags). `step` is the index
/// of the sample being produced, carried into error values.
#[derive(Debug, Clone, Copy)]
pub struct EvaluationContext<'a> {
    /// Lagged outputs, newest first: `outputs[p]` = X_{n−p}.
    pub outputs: &'a [f64],
    /// Lagged inputs, newest first: `inputs[q]` = U_{n−q}.
    pub inputs: &'a [f64],
    /// Index of the sample being produced (for diagnostics).
    pub step: usize,
}

/// Evaluation failure. Division by exact zero identifies the offending
/// node; a non-finite result is a divergence of the whole update step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// The right operand of a `/` node was exactly ±0.0.
    DivisionByZero {
        /// Sample index being produced when the division failed.
        step: usize,
        /// Source form of the failing division node.
        location: String,
    },
    /// The update produced ±∞ or NaN at this step.
    NonFinite {
        /// Sample index being produced when the value went non-finite.
        step: usize,
    },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::DivisionByZero { step, location } => {
                write!(f, "division by zero at step {step} in `{location}`")
            }
            EvalError::NonFinite { step } => {
                write!(f, "non-finite result (divergence) at step {step}")
            }
        }
    }
}

impl core::error::Error for EvalError {}

/// Evaluates `expr` against `ctx` under the strict semantics: post-order
/// traversal, one binary64 round-to-nearest-even operation per binary node,
/// `a^k` as left-folded repeated multiplication `((a×a)×a)…`, no fused
/// multiply-add, no reassociation, no extended intermediate precision.
///
/// Division by exact zero and a non-finite final value are errors; a
/// non-finite value is never returned. Bitwise deterministic for identical
/// inputs within one build (`sin`/`cos` come from the build's libm).
pub fn evaluate(expr: &Expr, ctx: &EvaluationContext<'_>) -> Result<f64, EvalError> {
    let v = eval_node(expr, ctx)?;
    if !v.is_finite() {
        return Err(EvalError::NonFinite { step: ctx.step });
    }
    Ok(v)
}

fn eval_node(expr: &Expr, ctx: &EvaluationContext<'_>) -> Result<f64, EvalError> {
    match expr {
        Expr::Const(v) => Ok(*v),
        Expr::Output(p) => Ok(ctx.outputs[*p]),
        Expr::Input(q) => Ok(ctx.inputs[*q]),
        Expr::Call(func, arg) => {
            let a = eval_node(arg, ctx)?;
            Ok(match func {
                Func::Sin => math::sin(a),
                Func::Cos => math::cos(a),
            })
        }
        Expr::Neg(inner) => Ok(-eval_node(inner, ctx)?),
        Expr::Binary(op, l, r) => {
            let a = eval_node(l, ctx)?;
            let b = eval_node(r, ctx)?;
            match op {
                BinOp::Add => Ok(a + b),
                BinOp::Sub => Ok(a - b),
                BinOp::Mul => Ok(a * b),
                BinOp::Div => {
                    if b == 0.0 {
                        Err(EvalError::DivisionByZero {
                            step: ctx.step,
                            location: expr.to_string(),
                        })
                    } else {
                        Ok(a / b)
                    }
                }
            }
        }
        Expr::Pow(base, k) => {
            debug_assert!(*k >= 1, "power exponent must be a positive integer");
            let b = eval_node(base, ctx)?;
            let mut acc = b;
            for _ in 1..*k {
                acc *= b;
            }
            Ok(acc)
        }
    }
}

/// Maximum output and input lags referenced by the tree, `(0, 0)` when a
/// kind is never referenced. Use [`uses_input`] to distinguish "input at
/// lag 0" from "no input at all".
pub fn max_lags(expr: &Expr) -> (usize, usize) {
    match expr {
        Expr::Const(_) => (0, 0),
        Expr::Output(p) => (*p, 0),
        Expr::Input(q) => (0, *q),
        Expr::Call(_, a) | Expr::Neg(a) => max_lags(a),
        Expr::Binary(_, l, r) => {
            let (lo, li) = max_lags(l);
            let (ro, ri) = max_lags(r);
            (lo.max(ro), li.max(ri))
        }
        Expr::Pow(b, _) => max_lags(b),
    }
}

/// Whether the tree contains any lagged-input (`u[q]`) node.
pub fn uses_input(expr: &Expr) -> bool {
    match expr {
        Expr::Const(_) | Expr::Output(_) => false,
        Expr::Input(_) => true,
        Expr::Call(_, a) | Expr::Neg(a) => uses_input(a),
        Expr::Binary(_, l, r) => uses_input(l) || uses_input(r),
        Expr::Pow(b, _) => uses_input(b),
    }
}

/// Node-for-node tree identity, including parenthesization shape.
/// Constants compare by bit pattern, so `0.0` and `-0.0` differ and NaN
/// payloads (never produced by the parser) compare by representation.
pub fn structurally_equal(a: &Expr, b: &Expr) -> bool {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => x.to_bits() == y.to_bits(),
        (Expr::Output(p), Expr::Output(q)) => p == q,
        (Expr::Input(p), Expr::Input(q)) => p == q,
        (Expr::Call(f, x), Expr::Call(g, y)) => f == g && structurally_equal(x, y),
        (Expr::Neg(x), Expr::Neg(y)) => structurally_equal(x, y),
        (Expr::Binary(o, l, r), Expr::Binary(p, m, s)) => {
            o == p && structurally_equal(l, m) && structurally_equal(r, s)
        }
        (Expr::Pow(x, j), Expr::Pow(y, k)) => j == k && structurally_equal(x, y),
        _ => false,
    }
}

// Formatter precedence levels; higher binds tighter.
const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

fn precedence(expr: &Expr) -> u8 {
    match expr {
        Expr::Const(_) | Expr::Output(_) | Expr::Input(_) | Expr::Call(..) => PREC_ATOM,
        Expr::Pow(..) => PREC_POW,
        Expr::Neg(_) => PREC_NEG,
        Expr::Binary(BinOp::Mul | BinOp::Div, ..) => PREC_MUL,
        Expr::Binary(BinOp::Add | BinOp::Sub, ..) => PREC_ADD,
    }
}

fn is_negative_const(expr: &Expr) -> bool {
    matches!(expr, Expr::Const(v) if v.is_sign_negative())
}

/// The canonical text form. Reparsing it recovers a structurally equal
/// tree. Multiplicative grouping is always written explicitly (a left
/// `*`/`/` operand that is itself a `*`/`/` node keeps its parentheses,
/// e.g. `(0.2462*x[0])*x[0]^2`), because operation order is the point of
/// the whole exercise; additive chains stay flat since left association
/// reparses to the identical tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(v) => write!(f, "{v}"),
            Expr::Output(p) => write!(f, "x[{p}]"),
            Expr::Input(q) => write!(f, "u[{q}]"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Pow(base, k) => {
                // A non-atom base, or a negative literal (whose leading `-`
                // would otherwise bind after `^`), needs parentheses.
                if precedence(base) < PREC_ATOM || is_negative_const(base) {
                    write!(f, "({base})^{k}")
                } else {
                    write!(f, "{base}^{k}")
                }
            }
            Expr::Binary(op, l, r) => {
                let prec = precedence(self);
                let wrap_left = precedence(l) < prec
                    || (prec == PREC_MUL && precedence(l) == PREC_MUL);
                let wrap_right = precedence(r) <= prec;
                if wrap_left {
                    write!(f, "({l})")?;
                } else {
                    write!(f, "{l}")?;
                }
                match op {
                    BinOp::Add | BinOp::Sub => write!(f, " {} ", op.symbol())?,
                    BinOp::Mul | BinOp::Div => write!(f, "{}", op.symbol())?,
                }
                if wrap_right {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
        }
    }
}
