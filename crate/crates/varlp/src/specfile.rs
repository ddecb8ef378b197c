//! On-disk format for functions and for tool configuration.
//!
//! A function document is TOML:
//!
//! ```toml
//! name = "p"
//! domain = [0.0, 1.0]        # upper end may be the string "inf"
//!
//! [params]
//! alpha = 0.5
//!
//! [[piece]]
//! on = [0.0, 1.0]
//! expr = "1/t^alpha"
//! monotone = "dec"           # inc | dec | const | unknown (default)
//! ```
//!
//! Pieces must tile the domain. Formulas may use `t`, numbers, `e`, `pi`,
//! the params, `+ - * / ^`, `ln`, `exp`, `sqrt`, `min`, `max`.
//!
//! A configuration document (pointed at by the `VARLP_CONFIG` environment
//! variable) is TOML with any of the keys `grid`, `depth`, `tol`,
//! `witness_n`, `seed`.

use crate::error::{Error, Result};
use crate::expr;
use crate::function::{validate_exponent, Monotone, Piece, PiecewiseFunction};
use crate::interval::IntervalDomain;
use crate::Config;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Bound {
    Num(f64),
    Word(String),
}

impl Bound {
    fn value(&self) -> Result<f64> {
        match self {
            Bound::Num(x) => Ok(*x),
            Bound::Word(w) => match w.trim().to_ascii_lowercase().as_str() {
                "inf" | "infinity" | "+inf" => Ok(f64::INFINITY),
                other => other
                    .parse::<f64>()
                    .map_err(|_| Error::Domain(format!("bad bound `{other}`"))),
            },
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPiece {
    on: [Bound; 2],
    expr: String,
    #[serde(default)]
    monotone: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    #[serde(default)]
    name: Option<String>,
    domain: [Bound; 2],
    #[serde(default)]
    params: BTreeMap<String, f64>,
    #[serde(rename = "piece")]
    pieces: Vec<RawPiece>,
}

fn toml_error(err: toml::de::Error) -> Error {
    let position = err.span().map(|s| s.start).unwrap_or(0);
    Error::Parse {
        position,
        message: err.message().to_string(),
    }
}

/// Parses a function document from a string. `fallback_name` is used when
/// the document has no `name` key.
pub fn parse_function_str(src: &str, fallback_name: &str) -> Result<PiecewiseFunction> {
    let raw: RawDoc = toml::from_str(src).map_err(toml_error)?;
    let domain = IntervalDomain::new(raw.domain[0].value()?, raw.domain[1].value()?)?;
    if raw.pieces.is_empty() {
        return Err(Error::Domain("document has no [[piece]] entries".into()));
    }
    let mut pieces = Vec::with_capacity(raw.pieces.len());
    for rp in &raw.pieces {
        let lo = rp.on[0].value()?;
        let hi = rp.on[1].value()?;
        let tree = expr::parse(&rp.expr, &raw.params)?;
        let monotone = match &rp.monotone {
            Some(tag) => tag.parse::<Monotone>()?,
            None => Monotone::Unknown,
        };
        pieces.push(Piece::new(lo, hi, tree, monotone)?);
    }
    let name = raw.name.as_deref().unwrap_or(fallback_name);
    PiecewiseFunction::new(name, domain, pieces)
}

/// Loads a function document from a file; the file stem is the fallback name.
pub fn load_function(path: &Path) -> Result<PiecewiseFunction> {
    let src = std::fs::read_to_string(path)?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "f".to_string());
    parse_function_str(&src, &stem)
}

/// Loads a function document and checks it is a valid exponent (>= 1).
pub fn load_exponent(path: &Path) -> Result<PiecewiseFunction> {
    let f = load_function(path)?;
    validate_exponent(&f)?;
    Ok(f)
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    grid: Option<usize>,
    depth: Option<u32>,
    tol: Option<f64>,
    witness_n: Option<usize>,
    seed: Option<u64>,
}

/// Applies overrides from a TOML config file onto `cfg`.
pub fn apply_config_file(cfg: &mut Config, path: &Path) -> Result<()> {
    let src = std::fs::read_to_string(path)?;
    let raw: RawConfig = toml::from_str(&src).map_err(toml_error)?;
    if let Some(v) = raw.grid {
        cfg.grid = v;
    }
    if let Some(v) = raw.depth {
        cfg.depth = v;
    }
    if let Some(v) = raw.tol {
        cfg.tol = v;
    }
    if let Some(v) = raw.witness_n {
        cfg.witness_n = v;
    }
    if let Some(v) = raw.seed {
        cfg.seed = v;
    }
    Ok(())
}

/// Reads the `VARLP_CONFIG` environment variable and, when set, applies the
/// file it names. Returns whether a file was applied.
pub fn apply_env_config(cfg: &mut Config) -> Result<bool> {
    match std::env::var_os("VARLP_CONFIG") {
        Some(path) if !path.is_empty() => {
            apply_config_file(cfg, Path::new(&path))?;
            Ok(true)
        }
        _ => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_two_piece_document() {
        let doc = r#"
            name = "p"
            domain = [0.0, 1.0]

            [params]
            alpha = 0.5

            [[piece]]
            on = [0.0, 0.5]
            expr = "1/t^alpha"
            monotone = "dec"

            [[piece]]
            on = [0.5, 1.0]
            expr = "2"
            monotone = "const"
        "#;
        let f = parse_function_str(doc, "fallback").unwrap();
        assert_eq!(f.name(), "p");
        assert_eq!(f.pieces().len(), 2);
        assert!((f.eval(0.25) - 2.0).abs() < 1e-12);
        assert_eq!(f.eval(0.75), 2.0);
    }

    #[test]
    fn infinite_domain_spelled_as_word() {
        let doc = r#"
            domain = [0.0, "inf"]
            [[piece]]
            on = [0.0, "inf"]
            expr = "2 + 1/(1 + t)"
            monotone = "dec"
        "#;
        let f = parse_function_str(doc, "p").unwrap();
        assert!(f.domain().hi().is_infinite());
        assert_eq!(f.name(), "p");
    }

    #[test]
    fn rejects_gap_between_pieces() {
        let doc = r#"
            domain = [0.0, 1.0]
            [[piece]]
            on = [0.0, 0.4]
            expr = "2"
            [[piece]]
            on = [0.6, 1.0]
            expr = "3"
        "#;
        assert!(parse_function_str(doc, "p").is_err());
    }

    #[test]
    fn rejects_unknown_keys_and_bad_formulas() {
        let doc = r#"
            domain = [0.0, 1.0]
            typo = 1
            [[piece]]
            on = [0.0, 1.0]
            expr = "2"
        "#;
        assert!(parse_function_str(doc, "p").is_err());

        let doc = r#"
            domain = [0.0, 1.0]
            [[piece]]
            on = [0.0, 1.0]
            expr = "2 +"
        "#;
        match parse_function_str(doc, "p") {
            Err(Error::Parse { .. }) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn config_overrides_apply() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.toml");
        std::fs::write(&path, "grid = 500\ntol = 1e-8\n").unwrap();
        let mut cfg = Config::default();
        apply_config_file(&mut cfg, &path).unwrap();
        assert_eq!(cfg.grid, 500);
        assert_eq!(cfg.tol, 1e-8);
        // Untouched keys keep their defaults.
        assert_eq!(cfg.witness_n, Config::default().witness_n);
    }
}
