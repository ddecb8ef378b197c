//! Closed-form expression trees in one variable, with a small recursive
//! descent parser.
//!
//! Supported node kinds: constants, the variable, `+ - * /`, `^`, `ln`,
//! `exp`, `sqrt`, and binary `min`/`max`. The named constants `e` and `pi`
//! parse as constants; any other identifier must be supplied as a parameter.
//! Parse errors report a byte offset into the source string. Tree depth and
//! node count are capped so documents cannot blow the stack.

use crate::error::{Error, Result};
use std::collections::BTreeMap;

pub const MAX_DEPTH: usize = 64;
pub const MAX_NODES: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Ln(Box<Expr>),
    Exp(Box<Expr>),
    Sqrt(Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Evaluates at `t`. May return non-finite values (e.g. a pole inside a
    /// piece); callers treat those per their own contract.
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var => t,
            Expr::Add(a, b) => a.eval(t) + b.eval(t),
            Expr::Sub(a, b) => a.eval(t) - b.eval(t),
            Expr::Mul(a, b) => a.eval(t) * b.eval(t),
            Expr::Div(a, b) => a.eval(t) / b.eval(t),
            Expr::Pow(a, b) => a.eval(t).powf(b.eval(t)),
            Expr::Ln(a) => a.eval(t).ln(),
            Expr::Exp(a) => a.eval(t).exp(),
            Expr::Sqrt(a) => a.eval(t).sqrt(),
            Expr::Min(a, b) => a.eval(t).min(b.eval(t)),
            Expr::Max(a, b) => a.eval(t).max(b.eval(t)),
        }
    }

    /// Constant-folds the whole tree if it does not reference the variable.
    pub fn const_value(&self) -> Option<f64> {
        match self {
            Expr::Const(c) => Some(*c),
            Expr::Var => None,
            Expr::Add(a, b) => Some(a.const_value()? + b.const_value()?),
            Expr::Sub(a, b) => Some(a.const_value()? - b.const_value()?),
            Expr::Mul(a, b) => Some(a.const_value()? * b.const_value()?),
            Expr::Div(a, b) => Some(a.const_value()? / b.const_value()?),
            Expr::Pow(a, b) => Some(a.const_value()?.powf(b.const_value()?)),
            Expr::Ln(a) => Some(a.const_value()?.ln()),
            Expr::Exp(a) => Some(a.const_value()?.exp()),
            Expr::Sqrt(a) => Some(a.const_value()?.sqrt()),
            Expr::Min(a, b) => Some(a.const_value()?.min(b.const_value()?)),
            Expr::Max(a, b) => Some(a.const_value()?.max(b.const_value()?)),
        }
    }

    pub fn node_count(&self) -> usize {
        1 + match self {
            Expr::Const(_) | Expr::Var => 0,
            Expr::Ln(a) | Expr::Exp(a) | Expr::Sqrt(a) => a.node_count(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b)
            | Expr::Min(a, b)
            | Expr::Max(a, b) => a.node_count() + b.node_count(),
        }
    }

    pub fn depth(&self) -> usize {
        1 + match self {
            Expr::Const(_) | Expr::Var => 0,
            Expr::Ln(a) | Expr::Exp(a) | Expr::Sqrt(a) => a.depth(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b)
            | Expr::Min(a, b)
            | Expr::Max(a, b) => a.depth().max(b.depth()),
        }
    }

    // Constructors used by the symbolic-combination layer.
    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }
    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }
    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }
    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }
    pub fn exp_node(a: Expr) -> Expr {
        Expr::Exp(Box::new(a))
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var => f.write_str("t"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, b) => write!(f, "({a}^{b})"),
            Expr::Ln(a) => write!(f, "ln({a})"),
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Sqrt(a) => write!(f, "sqrt({a})"),
            Expr::Min(a, b) => write!(f, "min({a}, {b})"),
            Expr::Max(a, b) => write!(f, "max({a}, {b})"),
        }
    }
}

/// Parses a formula in the variable `t`, substituting `params` for any other
/// identifiers (besides `e` and `pi`).
pub fn parse(src: &str, params: &BTreeMap<String, f64>) -> Result<Expr> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        src_len: src.len(),
        params,
    };
    let expr = p.expression(0)?;
    if let Some(tok) = p.peek() {
        return Err(Error::parse(tok.at, format!("unexpected `{}`", tok.text)));
    }
    if expr.node_count() > MAX_NODES {
        return Err(Error::parse(0, format!("expression exceeds {MAX_NODES} nodes")));
    }
    Ok(expr)
}

#[derive(Debug, Clone)]
struct Token {
    text: String,
    kind: TokKind,
    at: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum TokKind {
    Number,
    Ident,
    Op,
    LParen,
    RParen,
    Comma,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let at = i;
        if c.is_ascii_digit() || c == '.' {
            let mut j = i;
            let mut seen_exp = false;
            while j < bytes.len() {
                let d = bytes[j] as char;
                if d.is_ascii_digit() || d == '.' {
                    j += 1;
                } else if (d == 'e' || d == 'E')
                    && !seen_exp
                    && j + 1 < bytes.len()
                    && {
                        let n = bytes[j + 1] as char;
                        n.is_ascii_digit() || n == '+' || n == '-'
                    }
                {
                    seen_exp = true;
                    j += if bytes[j + 1] == b'+' || bytes[j + 1] == b'-' { 2 } else { 1 };
                } else {
                    break;
                }
            }
            out.push(Token {
                text: src[i..j].to_string(),
                kind: TokKind::Number,
                at,
            });
            i = j;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < bytes.len() && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            out.push(Token {
                text: src[i..j].to_string(),
                kind: TokKind::Ident,
                at,
            });
            i = j;
        } else {
            let kind = match c {
                '+' | '-' | '*' | '/' | '^' => TokKind::Op,
                '(' => TokKind::LParen,
                ')' => TokKind::RParen,
                ',' => TokKind::Comma,
                _ => {
                    return Err(Error::parse(at, format!("unexpected character `{c}`")));
                }
            };
            out.push(Token {
                text: c.to_string(),
                kind,
                at,
            });
            i += 1;
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    src_len: usize,
    params: &'a BTreeMap<String, f64>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat_op(&mut self, op: &str) -> bool {
        if let Some(t) = self.peek() {
            if t.kind == TokKind::Op && t.text == op {
                self.pos += 1;
                return true;
            }
        }
        false
    }

    fn expression(&mut self, depth: usize) -> Result<Expr> {
        self.check_depth(depth)?;
        let mut lhs = self.term(depth + 1)?;
        loop {
            if self.eat_op("+") {
                let rhs = self.term(depth + 1)?;
                lhs = Expr::add(lhs, rhs);
            } else if self.eat_op("-") {
                let rhs = self.term(depth + 1)?;
                lhs = Expr::sub(lhs, rhs);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self, depth: usize) -> Result<Expr> {
        self.check_depth(depth)?;
        let mut lhs = self.factor(depth + 1)?;
        loop {
            if self.eat_op("*") {
                let rhs = self.factor(depth + 1)?;
                lhs = Expr::mul(lhs, rhs);
            } else if self.eat_op("/") {
                let rhs = self.factor(depth + 1)?;
                lhs = Expr::div(lhs, rhs);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self, depth: usize) -> Result<Expr> {
        self.check_depth(depth)?;
        if self.eat_op("-") {
            let inner = self.factor(depth + 1)?;
            return Ok(Expr::sub(Expr::Const(0.0), inner));
        }
        self.power(depth + 1)
    }

    fn power(&mut self, depth: usize) -> Result<Expr> {
        self.check_depth(depth)?;
        let base = self.atom(depth + 1)?;
        if self.eat_op("^") {
            // Right-associative; `-t^2` parses as `-(t^2)`.
            let exponent = self.factor(depth + 1)?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self, depth: usize) -> Result<Expr> {
        self.check_depth(depth)?;
        let tok = self
            .next()
            .ok_or_else(|| Error::parse(self.src_len, "unexpected end of expression"))?;
        match tok.kind {
            TokKind::Number => tok
                .text
                .parse::<f64>()
                .map(Expr::Const)
                .map_err(|_| Error::parse(tok.at, format!("bad number `{}`", tok.text))),
            TokKind::LParen => {
                let inner = self.expression(depth + 1)?;
                self.expect_rparen(&tok)?;
                Ok(inner)
            }
            TokKind::Ident => self.ident(tok, depth),
            _ => Err(Error::parse(tok.at, format!("unexpected `{}`", tok.text))),
        }
    }

    fn ident(&mut self, tok: Token, depth: usize) -> Result<Expr> {
        let is_call = matches!(self.peek(), Some(t) if t.kind == TokKind::LParen);
        match (tok.text.as_str(), is_call) {
            ("ln", true) => self.unary_call(Expr::Ln, depth),
            ("exp", true) => self.unary_call(Expr::Exp, depth),
            ("sqrt", true) => self.unary_call(Expr::Sqrt, depth),
            ("min", true) => self.binary_call(Expr::Min, depth),
            ("max", true) => self.binary_call(Expr::Max, depth),
            ("t", _) | ("x", _) | ("n", _) => Ok(Expr::Var),
            ("e", _) => Ok(Expr::Const(std::f64::consts::E)),
            ("pi", _) => Ok(Expr::Const(std::f64::consts::PI)),
            (name, _) => self
                .params
                .get(name)
                .map(|v| Expr::Const(*v))
                .ok_or_else(|| Error::parse(tok.at, format!("unknown identifier `{name}`"))),
        }
    }

    fn unary_call(&mut self, build: fn(Box<Expr>) -> Expr, depth: usize) -> Result<Expr> {
        let open = self.next().unwrap(); // the '(' peeked by the caller
        let inner = self.expression(depth + 1)?;
        self.expect_rparen(&open)?;
        Ok(build(Box::new(inner)))
    }

    fn binary_call(&mut self, build: fn(Box<Expr>, Box<Expr>) -> Expr, depth: usize) -> Result<Expr> {
        let open = self.next().unwrap();
        let first = self.expression(depth + 1)?;
        match self.next() {
            Some(t) if t.kind == TokKind::Comma => {}
            Some(t) => return Err(Error::parse(t.at, "expected `,`")),
            None => return Err(Error::parse(self.src_len, "expected `,`")),
        }
        let second = self.expression(depth + 1)?;
        self.expect_rparen(&open)?;
        Ok(build(Box::new(first), Box::new(second)))
    }

    fn expect_rparen(&mut self, open: &Token) -> Result<()> {
        match self.next() {
            Some(t) if t.kind == TokKind::RParen => Ok(()),
            Some(t) => Err(Error::parse(t.at, format!("expected `)`, found `{}`", t.text))),
            None => Err(Error::parse(open.at, "unbalanced `(`")),
        }
    }

    fn check_depth(&self, depth: usize) -> Result<()> {
        if depth > MAX_DEPTH {
            let at = self.peek().map(|t| t.at).unwrap_or(0);
            Err(Error::parse(at, format!("expression nesting exceeds {MAX_DEPTH}")))
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(src: &str) -> Expr {
        parse(src, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn constants_and_variable() {
        assert_eq!(p("2").eval(0.3), 2.0);
        assert_eq!(p("t").eval(0.3), 0.3);
        assert!((p("e").eval(0.0) - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn reciprocal_power() {
        // 1/t^0.5 at t = 0.25 is 2.
        let e = p("1/t^0.5");
        assert!((e.eval(0.25) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn nested_logs() {
        // 1 + ln(1 - ln t) at t = 1/e is 1 + ln 2.
        let e = p("1 + ln(1 - ln(t))");
        let v = e.eval((-1.0f64).exp());
        assert!((v - (1.0 + std::f64::consts::LN_2)).abs() < 1e-12);
    }

    #[test]
    fn log_square() {
        // ln(1/t)^2 at t = e^{-2} is 4.
        let e = p("ln(1/t)^2");
        assert!((e.eval((-2.0f64).exp()) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn params_substitute() {
        let mut params = BTreeMap::new();
        params.insert("alpha".to_string(), 0.5);
        let e = parse("1/t^alpha", &params).unwrap();
        assert!((e.eval(0.25) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn unknown_identifier_reports_position() {
        let err = parse("2 + beta", &BTreeMap::new()).unwrap_err();
        match err {
            Error::Parse { position, .. } => assert_eq!(position, 4),
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn unary_minus_binds_below_power() {
        assert_eq!(p("-t^2").eval(3.0), -9.0);
        assert_eq!(p("(-t)^2").eval(3.0), 9.0);
    }

    #[test]
    fn min_max_and_commas() {
        assert_eq!(p("min(t, 2)").eval(5.0), 2.0);
        assert_eq!(p("max(1, min(t, 2))").eval(0.1), 1.0);
    }

    #[test]
    fn syntax_error_positions() {
        assert!(matches!(
            parse("2 +", &BTreeMap::new()),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse("2 ) 3", &BTreeMap::new()),
            Err(Error::Parse { position: 2, .. })
        ));
    }

    #[test]
    fn power_is_right_associative() {
        assert_eq!(p("2^3^2").eval(0.0), 512.0);
    }

    #[test]
    fn const_fold_detects_constants() {
        assert_eq!(p("2 * (3 - 1)").const_value(), Some(4.0));
        assert_eq!(p("2 * t").const_value(), None);
    }
}
