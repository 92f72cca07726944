//! Recurrence configuration documents.
//!
//! A document is TOML with an integer radix `r` and optional tables
//! `[c1]`..`[c4]`. Each table maps a decimal exponent (bare key, possibly
//! negative) to an integer coefficient, written either as a TOML integer or
//! as a decimal string for values beyond 64 bits:
//!
//! ```toml
//! r = 3
//! [c1]
//! 0 = 1
//! [c2]
//! 1 = 1
//! -1 = "1"
//! ```
//!
//! A missing table is the zero polynomial. Every exponent must lie strictly
//! between `-r` and `r`.

use std::collections::BTreeMap;
use std::ops::Range;

use num_bigint::BigInt;
use serde::Deserialize;
use shapiro_core::{Error as CoreError, LaurentPoly, Recurrence};
use toml::Spanned;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid coefficient c{index} at exponent {exponent}: exponents must satisfy -{radix} < e < {radix}")]
    Degree { index: usize, exponent: i64, radix: u32 },
    #[error("invalid radix {0}: must be at least 2")]
    Radix(u32),
    #[error("unknown preset {0:?} (available: classic)")]
    UnknownPreset(String),
}

/// A validated recurrence description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceConfig {
    pub r: u32,
    /// `c1..c4`, each mapping exponent to coefficient.
    pub coeffs: [BTreeMap<i64, BigInt>; 4],
}

impl RecurrenceConfig {
    pub fn classic() -> Self {
        let mut coeffs: [BTreeMap<i64, BigInt>; 4] = Default::default();
        coeffs[0].insert(0, BigInt::from(1));
        coeffs[1].insert(1, BigInt::from(1));
        Self { r: 2, coeffs }
    }

    pub fn preset(name: &str) -> Result<Self, ConfigError> {
        match name {
            "classic" => Ok(Self::classic()),
            _ => Err(ConfigError::UnknownPreset(name.to_string())),
        }
    }

    pub fn recurrence(&self) -> Result<Recurrence, ConfigError> {
        let polys = self.coeffs.clone().map(LaurentPoly::from_terms);
        Recurrence::new(self.r, polys).map_err(|e| match e {
            CoreError::DegreeBound { index, exponent, radix } => ConfigError::Degree { index, exponent, radix },
            CoreError::Radix(r) => ConfigError::Radix(r),
            other => unreachable!("recurrence validation only reports bounds, got {other}"),
        })
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoeff {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    r: Spanned<i64>,
    c1: Option<BTreeMap<Spanned<String>, Spanned<RawCoeff>>>,
    c2: Option<BTreeMap<Spanned<String>, Spanned<RawCoeff>>>,
    c3: Option<BTreeMap<Spanned<String>, Spanned<RawCoeff>>>,
    c4: Option<BTreeMap<Spanned<String>, Spanned<RawCoeff>>>,
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn parse_error(text: &str, span: Option<Range<usize>>, message: impl Into<String>) -> ConfigError {
    let (line, column) = position(text, span.map_or(0, |s| s.start));
    ConfigError::Parse { line, column, message: message.into() }
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RecurrenceConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| parse_error(text, e.span(), e.message().to_string()))?;
    let r = u32::try_from(*raw.r.get_ref())
        .map_err(|_| parse_error(text, Some(raw.r.span()), "radix must be a nonnegative integer"))?;
    let mut coeffs: [BTreeMap<i64, BigInt>; 4] = Default::default();
    for (slot, table) in coeffs.iter_mut().zip([raw.c1, raw.c2, raw.c3, raw.c4]) {
        for (key, value) in table.unwrap_or_default() {
            let exponent: i64 = key.get_ref().parse().map_err(|_| {
                parse_error(text, Some(key.span()), format!("exponent {:?} is not an integer", key.get_ref()))
            })?;
            let coeff = match value.get_ref() {
                RawCoeff::Int(v) => BigInt::from(*v),
                RawCoeff::Text(s) => s.parse().map_err(|_| {
                    parse_error(text, Some(value.span()), format!("coefficient {s:?} is not an integer"))
                })?,
            };
            slot.insert(exponent, coeff);
        }
    }
    let config = RecurrenceConfig { r, coeffs };
    config.recurrence()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_preset() {
        let c = RecurrenceConfig::preset("classic").unwrap();
        assert_eq!(c.r, 2);
        assert!(c.recurrence().unwrap().is_classic());
        assert!(RecurrenceConfig::preset("other").is_err());
    }

    #[test]
    fn classic_document_equals_preset() {
        let c = parse_config("r = 2\n[c1]\n0 = 1\n[c2]\n1 = 1\n").unwrap();
        assert_eq!(c, RecurrenceConfig::classic());
    }

    #[test]
    fn ternary_document() {
        let c = parse_config("r = 3\n[c1]\n0 = 1\n[c2]\n1 = 1\n-1 = \"1\"\n").unwrap();
        assert_eq!(c.r, 3);
        assert_eq!(c.coeffs[1].len(), 2);
        assert_eq!(c.coeffs[1][&-1], BigInt::from(1));
        assert!(c.coeffs[2].is_empty());
    }

    #[test]
    fn big_coefficient_as_string() {
        let c = parse_config("r = 2\n[c1]\n0 = \"123456789012345678901234567890\"\n").unwrap();
        assert_eq!(c.coeffs[0][&0].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn degree_violation_names_coefficient() {
        let err = parse_config("r = 2\n[c1]\n2 = 1\n").unwrap_err();
        assert_eq!(err, ConfigError::Degree { index: 1, exponent: 2, radix: 2 });
        assert!(err.to_string().contains("c1") && err.to_string().contains("exponent 2"));
        let err = parse_config("r = 3\n[c4]\n-3 = 5\n").unwrap_err();
        assert_eq!(err, ConfigError::Degree { index: 4, exponent: -3, radix: 3 });
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_config("r = 2\n[c1]\n0 = = 1\n") {
            Err(ConfigError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_config("r = 2\n[c2]\nx = 1\n") {
            Err(ConfigError::Parse { line, column, message }) => {
                assert_eq!((line, column), (3, 1));
                assert!(message.contains("\"x\""));
            }
            other => panic!("{other:?}"),
        }
        match parse_config("r = 2\n[c5]\n0 = 1\n") {
            Err(ConfigError::Parse { message, .. }) => assert!(message.contains("c5")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_config("[c1]\n0 = 1\n"), Err(ConfigError::Parse { .. })));
        assert!(matches!(parse_config("r = 1\n"), Err(ConfigError::Radix(1))));
    }
}
