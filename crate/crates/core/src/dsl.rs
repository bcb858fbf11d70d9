//! The `.nmx` text format: a small declaration language for recursive
//! models. One file holds one or more named model blocks so that a
//! reference system, a model, and a rearranged extension can travel
//! together:
//!
//! ```text
//! # free-run sine map
//! model G {
//!   lags x: 3
//!   init 0.5, 0.5, 0.5, 0.5
//!   update 2.6868*x[0] - 0.2462*x[0]^3
//! }
//! ```
//!
//! Blocks appear in fixed order: `lags`, `init`, optional `input`, then
//! `update`. `x[p]` reads the output p samples back and `u[q]` the input
//! q samples back (lag 0 = newest). Expressions use `+ - * / ^` with
//! conventional precedence (`^` above unary minus above `*`/`/` above
//! `+`/`-`), left association, `sin(...)`/`cos(...)`, and parentheses
//! whose grouping is preserved in the tree — `(a*b)*c` and `a*(b*c)`
//! parse to different trees on purpose, because the evaluator rounds
//! once per operation and the two orders round differently. `pi` is a
//! keyword for the closest binary64 to π. `#` starts a comment that runs
//! to end of line.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::expr::{evaluate, EvaluationContext, Expr};
use crate::model::{is_identifier, ModelDefinition, RESERVED_WORDS};
use crate::sim::InputKind;

/// Binary64 value of the `pi` keyword (and of the literal
/// `3.141592653589793`, the shortest decimal that rounds to it).
const PI_LITERAL: f64 = core::f64::consts::PI;

/// Diagnostic severity. The parser is fail-fast and only ever emits
/// `Error`; `Warning` exists for forward compatibility of the type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Error => f.write_str("error"),
            Severity::Warning => f.write_str("warning"),
        }
    }
}

/// A positioned parse diagnostic. `line` and `column` are 1-based and
/// count characters, not bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub severity: Severity,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}: {}", self.severity, self.line, self.column, self.message)
    }
}

impl core::error::Error for ParseDiagnostic {}

fn err(line: usize, column: usize, message: String) -> ParseDiagnostic {
    ParseDiagnostic { severity: Severity::Error, line, column, message }
}

/// One parsed model block: the model itself plus the input declaration
/// that drives it (`InputKind::None` when the block has no `input` line).
#[derive(Debug, Clone)]
pub struct ModelEntry {
    model: ModelDefinition,
    input: InputKind,
}

impl ModelEntry {
    pub fn model(&self) -> &ModelDefinition {
        &self.model
    }

    pub fn input(&self) -> &InputKind {
        &self.input
    }
}

/// A parsed `.nmx` file: the source text and its model blocks in file
/// order. Names are unique within a file.
#[derive(Debug, Clone)]
pub struct ModelFile {
    source: String,
    entries: Vec<ModelEntry>,
}

impl ModelFile {
    /// The original source text.
    pub fn source(&self) -> &str {
        &self.source
    }

    /// Model blocks in file order.
    pub fn entries(&self) -> &[ModelEntry] {
        &self.entries
    }

    /// Looks a block up by model name.
    pub fn get(&self, name: &str) -> Option<&ModelEntry> {
        self.entries.iter().find(|e| e.model.name() == name)
    }

    /// Model names in file order.
    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.model.name()).collect()
    }
}

// ---------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Ident(String),
    /// A numeric literal; `text` keeps the lexeme so integer contexts
    /// (exponents, lag indices) can re-parse it exactly.
    Number { value: f64, text: String },
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Colon,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eof,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Ident(name) => format!("`{name}`"),
            TokenKind::Number { text, .. } => format!("`{text}`"),
            TokenKind::LBrace => "`{`".to_string(),
            TokenKind::RBrace => "`}`".to_string(),
            TokenKind::LBracket => "`[`".to_string(),
            TokenKind::RBracket => "`]`".to_string(),
            TokenKind::LParen => "`(`".to_string(),
            TokenKind::RParen => "`)`".to_string(),
            TokenKind::Colon => "`:`".to_string(),
            TokenKind::Comma => "`,`".to_string(),
            TokenKind::Plus => "`+`".to_string(),
            TokenKind::Minus => "`-`".to_string(),
            TokenKind::Star => "`*`".to_string(),
            TokenKind::Slash => "`/`".to_string(),
            TokenKind::Caret => "`^`".to_string(),
            TokenKind::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    line: usize,
    col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<Token>, ParseDiagnostic> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1usize;
    let mut col = 1usize;

    macro_rules! bump {
        () => {{
            let c = chars.next();
            match c {
                Some('\n') => {
                    line += 1;
                    col = 1;
                }
                Some(_) => col += 1,
                None => {}
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump!();
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump!();
                }
            }
            c if is_ident_start(c) => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if !is_ident_continue(c) {
                        break;
                    }
                    name.push(c);
                    bump!();
                }
                tokens.push(Token { kind: TokenKind::Ident(name), line: tline, col: tcol });
            }
            c if c.is_ascii_digit() => {
                let mut lit = String::new();
                while let Some(&c) = chars.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    lit.push(c);
                    bump!();
                }
                if chars.peek() == Some(&'.') {
                    lit.push('.');
                    bump!();
                    let mut any = false;
                    while let Some(&c) = chars.peek() {
                        if !c.is_ascii_digit() {
                            break;
                        }
                        lit.push(c);
                        bump!();
                        any = true;
                    }
                    if !any {
                        return Err(err(
                            tline,
                            tcol,
                            format!("malformed numeric literal `{lit}`: expected digits after the decimal point"),
                        ));
                    }
                }
                if matches!(chars.peek(), Some('e') | Some('E')) {
                    lit.push(*chars.peek().unwrap());
                    bump!();
                    if matches!(chars.peek(), Some('+') | Some('-')) {
                        lit.push(*chars.peek().unwrap());
                        bump!();
                    }
                    let mut any = false;
                    while let Some(&c) = chars.peek() {
                        if !c.is_ascii_digit() {
                            break;
                        }
                        lit.push(c);
                        bump!();
                        any = true;
                    }
                    if !any {
                        return Err(err(
                            tline,
                            tcol,
                            format!("malformed numeric literal `{lit}`: expected digits in the exponent"),
                        ));
                    }
                }
                let value: f64 = lit.parse().map_err(|_| {
                    err(tline, tcol, format!("malformed numeric literal `{lit}`"))
                })?;
                if !value.is_finite() {
                    return Err(err(
                        tline,
                        tcol,
                        format!("numeric literal `{lit}` overflows binary64"),
                    ));
                }
                tokens.push(Token {
                    kind: TokenKind::Number { value, text: lit },
                    line: tline,
                    col: tcol,
                });
            }
            _ => {
                let kind = match c {
                    '{' => TokenKind::LBrace,
                    '}' => TokenKind::RBrace,
                    '[' => TokenKind::LBracket,
                    ']' => TokenKind::RBracket,
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    ':' => TokenKind::Colon,
                    ',' => TokenKind::Comma,
                    '+' => TokenKind::Plus,
                    '-' => TokenKind::Minus,
                    '*' => TokenKind::Star,
                    '/' => TokenKind::Slash,
                    '^' => TokenKind::Caret,
                    other => {
                        return Err(err(tline, tcol, format!("unexpected character `{other}`")))
                    }
                };
                bump!();
                tokens.push(Token { kind, line: tline, col: tcol });
            }
        }
    }
    tokens.push(Token { kind: TokenKind::Eof, line, col });
    Ok(tokens)
}

// ---------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    /// Largest admissible output lag in the current `update` expression.
    x_max: usize,
    /// Largest admissible input lag; `None` when the model declares no
    /// input lags at all.
    u_max: Option<usize>,
}

impl Parser {
    fn new(tokens: Vec<Token>) -> Parser {
        Parser { tokens, pos: 0, x_max: usize::MAX, u_max: Some(usize::MAX) }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(name) if name == kw)
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<Token, ParseDiagnostic> {
        if self.at_keyword(kw) {
            Ok(self.advance())
        } else {
            let t = self.peek();
            Err(err(t.line, t.col, format!("expected `{kw}`, found {}", t.kind.describe())))
        }
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<Token, ParseDiagnostic> {
        if self.peek().kind == kind {
            Ok(self.advance())
        } else {
            let t = self.peek();
            Err(err(t.line, t.col, format!("expected {what}, found {}", t.kind.describe())))
        }
    }

    /// Consumes a number token and re-parses its lexeme as an unsigned
    /// integer (used for lag counts, lag indices, and exponents).
    fn expect_integer(&mut self, what: &str) -> Result<(u64, Token), ParseDiagnostic> {
        match self.peek().kind.clone() {
            TokenKind::Number { text, .. } => {
                let tok = self.advance();
                match text.parse::<u64>() {
                    Ok(v) => Ok((v, tok)),
                    Err(_) if text.bytes().all(|b| b.is_ascii_digit()) => Err(err(
                        tok.line,
                        tok.col,
                        format!("{what} `{text}` exceeds the supported integer range"),
                    )),
                    Err(_) => Err(err(
                        tok.line,
                        tok.col,
                        format!("{what} must be an integer literal, found `{text}`"),
                    )),
                }
            }
            other => {
                let t = self.peek();
                Err(err(
                    t.line,
                    t.col,
                    format!("expected an integer {what}, found {}", other.describe()),
                ))
            }
        }
    }

    /// `('-')? NUMBER` — used by `init` lists.
    fn parse_signed_number(&mut self) -> Result<f64, ParseDiagnostic> {
        let negative = if self.peek().kind == TokenKind::Minus {
            self.advance();
            true
        } else {
            false
        };
        match self.peek().kind.clone() {
            TokenKind::Number { value, .. } => {
                self.advance();
                Ok(if negative { -value } else { value })
            }
            other => {
                let t = self.peek();
                Err(err(t.line, t.col, format!("expected a number, found {}", other.describe())))
            }
        }
    }

    // --- expression grammar -------------------------------------------

    fn parse_sum(&mut self) -> Result<Expr, ParseDiagnostic> {
        let mut lhs = self.parse_term()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.advance();
                    let rhs = self.parse_term()?;
                    lhs = Expr::add(lhs, rhs);
                }
                TokenKind::Minus => {
                    self.advance();
                    let rhs = self.parse_term()?;
                    lhs = Expr::sub(lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr, ParseDiagnostic> {
        let mut lhs = self.parse_unary()?;
        loop {
            match self.peek().kind {
                TokenKind::Star => {
                    self.advance();
                    let rhs = self.parse_unary()?;
                    lhs = Expr::mul(lhs, rhs);
                }
                TokenKind::Slash => {
                    self.advance();
                    let rhs = self.parse_unary()?;
                    lhs = Expr::div(lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Expr, ParseDiagnostic> {
        if self.peek().kind == TokenKind::Minus {
            self.advance();
            let child = self.parse_unary()?;
            // A minus applied directly to a constant folds into the
            // literal, so `-0.2462` is one constant, not a negation node.
            // `-2^2` is unaffected: `^` binds tighter, so the child here
            // is already Pow(2, 2).
            return Ok(match child {
                Expr::Const(c) => Expr::constant(-c),
                other => Expr::neg(other),
            });
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Expr, ParseDiagnostic> {
        let mut base = self.parse_atom()?;
        while self.peek().kind == TokenKind::Caret {
            self.advance();
            let exponent = self.parse_exponent()?;
            base = Expr::pow(base, exponent);
        }
        Ok(base)
    }

    fn parse_exponent(&mut self) -> Result<u32, ParseDiagnostic> {
        match self.peek().kind.clone() {
            TokenKind::Number { text, .. } => {
                let tok = self.advance();
                let int_like = text.bytes().all(|b| b.is_ascii_digit());
                if !int_like {
                    return Err(err(
                        tok.line,
                        tok.col,
                        format!("exponent must be an integer literal, found `{text}`"),
                    ));
                }
                let value: u32 = text.parse().map_err(|_| {
                    err(tok.line, tok.col, format!("exponent `{text}` exceeds the supported range"))
                })?;
                if value == 0 {
                    return Err(err(
                        tok.line,
                        tok.col,
                        "exponent must be positive (>= 1)".to_string(),
                    ));
                }
                Ok(value)
            }
            other => {
                let t = self.peek();
                Err(err(
                    t.line,
                    t.col,
                    format!("expected a positive integer exponent after `^`, found {}", other.describe()),
                ))
            }
        }
    }

    fn parse_lag(&mut self, series: &str) -> Result<usize, ParseDiagnostic> {
        self.expect(TokenKind::LBracket, &format!("`[` after `{series}`"))?;
        let (raw, tok) = self.expect_integer("lag index")?;
        let lag = usize::try_from(raw).map_err(|_| {
            err(tok.line, tok.col, format!("lag index `{raw}` exceeds the supported integer range"))
        })?;
        self.expect(TokenKind::RBracket, "`]` after the lag index")?;
        match series {
            "x" => {
                if lag > self.x_max {
                    return Err(err(
                        tok.line,
                        tok.col,
                        format!("lag x[{lag}] exceeds the declared `lags x: {}`", self.x_max),
                    ));
                }
            }
            _ => match self.u_max {
                None => {
                    return Err(err(
                        tok.line,
                        tok.col,
                        format!("model declares no input lags but uses u[{lag}]"),
                    ))
                }
                Some(max) if lag > max => {
                    return Err(err(
                        tok.line,
                        tok.col,
                        format!("lag u[{lag}] exceeds the declared `u: {max}`"),
                    ))
                }
                Some(_) => {}
            },
        }
        Ok(lag)
    }

    fn parse_atom(&mut self) -> Result<Expr, ParseDiagnostic> {
        match self.peek().kind.clone() {
            TokenKind::Number { value, .. } => {
                self.advance();
                Ok(Expr::constant(value))
            }
            TokenKind::LParen => {
                self.advance();
                let inner = self.parse_sum()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            TokenKind::Ident(name) => match name.as_str() {
                "pi" => {
                    self.advance();
                    Ok(Expr::constant(PI_LITERAL))
                }
                "x" => {
                    self.advance();
                    let lag = self.parse_lag("x")?;
                    Ok(Expr::output(lag))
                }
                "u" => {
                    self.advance();
                    let lag = self.parse_lag("u")?;
                    Ok(Expr::input(lag))
                }
                "sin" | "cos" => {
                    self.advance();
                    self.expect(TokenKind::LParen, &format!("`(` after `{name}`"))?;
                    let arg = self.parse_sum()?;
                    self.expect(TokenKind::RParen, "`)`")?;
                    Ok(if name == "sin" { Expr::sin(arg) } else { Expr::cos(arg) })
                }
                _ => {
                    let t = self.peek();
                    Err(err(t.line, t.col, format!("unknown identifier `{name}`")))
                }
            },
            other => {
                let t = self.peek();
                Err(err(t.line, t.col, format!("expected an expression, found {}", other.describe())))
            }
        }
    }

    // --- constant expressions (input parameters) ----------------------

    fn parse_const_value(&mut self, what: &str) -> Result<f64, ParseDiagnostic> {
        let start = self.peek().clone();
        let expr = self.parse_sum()?;
        if has_series_refs(&expr) {
            return Err(err(
                start.line,
                start.col,
                format!("{what} must be a constant expression (no x[..] or u[..])"),
            ));
        }
        let ctx = EvaluationContext { outputs: &[], inputs: &[], step: 0 };
        evaluate(&expr, &ctx).map_err(|_| {
            err(start.line, start.col, format!("{what} does not evaluate to a finite constant"))
        })
    }

    // --- model blocks --------------------------------------------------

    fn parse_block(&mut self, taken: &[String]) -> Result<ModelEntry, ParseDiagnostic> {
        self.expect_keyword("model")?;
        let name_tok = self.peek().clone();
        let name = match name_tok.kind {
            TokenKind::Ident(ref n) => {
                self.advance();
                n.clone()
            }
            ref other => {
                return Err(err(
                    name_tok.line,
                    name_tok.col,
                    format!("expected a model name, found {}", other.describe()),
                ))
            }
        };
        if RESERVED_WORDS.contains(&name.as_str()) {
            return Err(err(
                name_tok.line,
                name_tok.col,
                format!("`{name}` is a reserved word and cannot name a model"),
            ));
        }
        if !is_identifier(&name) {
            return Err(err(name_tok.line, name_tok.col, format!("invalid model name `{name}`")));
        }
        if taken.iter().any(|t| t == &name) {
            return Err(err(name_tok.line, name_tok.col, format!("duplicate model name `{name}`")));
        }
        self.expect(TokenKind::LBrace, "`{`")?;

        // lags x: K [, u: K]
        self.expect_keyword("lags")?;
        self.expect_keyword("x")?;
        self.expect(TokenKind::Colon, "`:` after `x`")?;
        let (x_raw, x_tok) = self.expect_integer("lag count")?;
        let x_lag = usize::try_from(x_raw).map_err(|_| {
            err(x_tok.line, x_tok.col, format!("lag count `{x_raw}` exceeds the supported range"))
        })?;
        let mut u_lag: Option<usize> = None;
        if self.peek().kind == TokenKind::Comma {
            self.advance();
            self.expect_keyword("u")?;
            self.expect(TokenKind::Colon, "`:` after `u`")?;
            let (u_raw, u_tok) = self.expect_integer("lag count")?;
            u_lag = Some(usize::try_from(u_raw).map_err(|_| {
                err(u_tok.line, u_tok.col, format!("lag count `{u_raw}` exceeds the supported range"))
            })?);
        }

        // init v0, v1, ...
        let init_tok = self.expect_keyword("init")?;
        let mut inits = vec![self.parse_signed_number()?];
        while self.peek().kind == TokenKind::Comma {
            self.advance();
            inits.push(self.parse_signed_number()?);
        }
        if inits.len() != x_lag + 1 {
            return Err(err(
                init_tok.line,
                init_tok.col,
                format!(
                    "init lists {} value(s) but `lags x: {x_lag}` requires {}",
                    inits.len(),
                    x_lag + 1
                ),
            ));
        }

        // optional input declaration
        let mut input = InputKind::None;
        if self.at_keyword("input") {
            let input_tok = self.advance();
            if self.at_keyword("none") {
                self.advance();
            } else if self.at_keyword("cosine") {
                if u_lag.is_none() {
                    return Err(err(
                        input_tok.line,
                        input_tok.col,
                        "model declares no input lags but specifies a drive signal".to_string(),
                    ));
                }
                self.advance();
                self.expect(TokenKind::LParen, "`(` after `cosine`")?;
                let amplitude = self.parse_const_value("cosine amplitude")?;
                self.expect(TokenKind::Comma, "`,` between cosine parameters")?;
                let period_tok = self.peek().clone();
                let sample_period = self.parse_const_value("cosine sample period")?;
                self.expect(TokenKind::RParen, "`)`")?;
                // parse_const_value guarantees a finite value
                if sample_period <= 0.0 {
                    return Err(err(
                        period_tok.line,
                        period_tok.col,
                        "cosine sample period must be > 0".to_string(),
                    ));
                }
                input = InputKind::Cosine { amplitude, sample_period };
            } else {
                let t = self.peek();
                return Err(err(
                    t.line,
                    t.col,
                    format!("expected `none` or `cosine(...)`, found {}", t.kind.describe()),
                ));
            }
        }

        // update EXPR
        self.expect_keyword("update")?;
        self.x_max = x_lag;
        self.u_max = u_lag;
        let update = self.parse_sum()?;
        self.x_max = usize::MAX;
        self.u_max = Some(usize::MAX);
        self.expect(TokenKind::RBrace, "`}`")?;

        let model = ModelDefinition::new(&name, x_lag, u_lag, inits, update)
            .map_err(|e| err(name_tok.line, name_tok.col, e.to_string()))?;
        Ok(ModelEntry { model, input })
    }

    fn parse_file(&mut self, source: &str) -> Result<ModelFile, ParseDiagnostic> {
        let mut entries: Vec<ModelEntry> = Vec::new();
        let mut names: Vec<String> = Vec::new();
        loop {
            if self.peek().kind == TokenKind::Eof {
                if entries.is_empty() {
                    let t = self.peek();
                    return Err(err(
                        t.line,
                        t.col,
                        "expected at least one `model` block".to_string(),
                    ));
                }
                break;
            }
            let entry = self.parse_block(&names)?;
            names.push(entry.model.name().to_string());
            entries.push(entry);
        }
        Ok(ModelFile { source: source.to_string(), entries })
    }
}

fn has_series_refs(e: &Expr) -> bool {
    match e {
        Expr::Const(_) => false,
        Expr::Output(_) | Expr::Input(_) => true,
        Expr::Call(_, arg) => has_series_refs(arg),
        Expr::Neg(child) => has_series_refs(child),
        Expr::Pow(base, _) => has_series_refs(base),
        Expr::Binary(_, l, r) => has_series_refs(l) || has_series_refs(r),
    }
}

/// Parses a complete `.nmx` file. Fail-fast: the first problem is
/// reported as a single positioned error diagnostic.
pub fn parse_model_file(text: &str) -> Result<ModelFile, Vec<ParseDiagnostic>> {
    let tokens = lex(text).map_err(|d| vec![d])?;
    Parser::new(tokens).parse_file(text).map_err(|d| vec![d])
}

/// Parses a standalone update expression (no lag-bound checking; any
/// `x[p]`/`u[q]` reference is admitted). The whole string must be one
/// expression.
pub fn parse_expr(text: &str) -> Result<Expr, ParseDiagnostic> {
    let tokens = lex(text)?;
    let mut parser = Parser::new(tokens);
    let expr = parser.parse_sum()?;
    let t = parser.peek();
    if t.kind != TokenKind::Eof {
        return Err(err(
            t.line,
            t.col,
            format!("unexpected trailing input: {}", t.kind.describe()),
        ));
    }
    Ok(expr)
}

// ---------------------------------------------------------------------
// Formatter
// ---------------------------------------------------------------------

fn write_entry(out: &mut String, model: &ModelDefinition, input: &InputKind) {
    let _ = writeln!(out, "model {} {{", model.name());
    if model.requires_input() {
        let _ = writeln!(out, "  lags x: {}, u: {}", model.output_lag(), model.input_lag());
    } else {
        let _ = writeln!(out, "  lags x: {}", model.output_lag());
    }
    let _ = out.write_str("  init ");
    for (i, v) in model.initial_conditions().iter().enumerate() {
        if i > 0 {
            let _ = out.write_str(", ");
        }
        let _ = write!(out, "{v}");
    }
    let _ = out.write_str("\n");
    match input {
        InputKind::None => {}
        InputKind::Cosine { amplitude, sample_period } => {
            let _ = writeln!(out, "  input cosine({amplitude}, {sample_period})");
        }
        // Explicit sequences have no file syntax; they only exist on the
        // in-memory path, so a file-bound entry never carries one.
        InputKind::Explicit(_) => {}
    }
    let _ = writeln!(out, "  update {}", model.update());
    let _ = out.write_str("}\n");
}

/// Canonical text for one model (no `input` line — the drive signal is
/// part of the file entry, not the model). The output reparses to a
/// definition whose update is structurally equal to the input's.
pub fn format_model(model: &ModelDefinition) -> String {
    let mut out = String::new();
    write_entry(&mut out, model, &InputKind::None);
    out
}

/// Canonical text for a whole parsed file, blocks separated by a blank
/// line. Reparsing yields entry-wise equal models and inputs.
pub fn format_file(file: &ModelFile) -> String {
    let mut out = String::new();
    for (i, entry) in file.entries.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        write_entry(&mut out, &entry.model, &entry.input);
    }
    out
}
