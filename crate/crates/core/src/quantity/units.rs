//! Unit-expression grammar.
//!
//! ```text
//! unit-expr := term (WS term)*
//! term      := symbol ("^" signed-int)?
//! ```
//!
//! Symbols are `m kg g s A K mol cd sr N J W V C T Hz lm`. The prefixes
//! `m c k M G` apply to `m`, `g`, `s` and `Hz` only. Products are written with
//! whitespace; there is no `/` or `·`. The literal `1` denotes the
//! dimensionless unit, which is also how a dimensionless value formats.

use super::dimension::{BaseDim, Dimension};
use crate::error::{Error, Result};

/// A parsed unit: a scale to SI base units and a dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unit {
    pub scale: f64,
    pub dim: Dimension,
}

impl Unit {
    pub const ONE: Unit = Unit {
        scale: 1.0,
        dim: Dimension::DIMENSIONLESS,
    };

    pub fn parse(text: &str) -> Result<Unit> {
        parse_unit(text)
    }
}

const PREFIXES: [(char, f64); 5] = [('m', 1e-3), ('c', 1e-2), ('k', 1e3), ('M', 1e6), ('G', 1e9)];
const PREFIXABLE: [&str; 4] = ["m", "g", "s", "Hz"];

fn symbol(sym: &str) -> Option<Unit> {
    let (scale, dim) = match sym {
        "m" => (1.0, Dimension::LENGTH),
        "kg" => (1.0, Dimension::MASS),
        "g" => (1e-3, Dimension::MASS),
        "s" => (1.0, Dimension::TIME),
        "A" => (1.0, Dimension::CURRENT),
        "K" => (1.0, Dimension::of(BaseDim::Kelvin)),
        "mol" => (1.0, Dimension::of(BaseDim::Mole)),
        "cd" => (1.0, Dimension::LUMINOUS_INTENSITY),
        "sr" => (1.0, Dimension::SOLID_ANGLE),
        "N" => (1.0, Dimension::FORCE),
        "J" => (1.0, Dimension::ENERGY),
        "W" => (1.0, Dimension::POWER),
        "V" => (1.0, Dimension::VOLTAGE),
        "C" => (1.0, Dimension::CHARGE),
        "T" => (1.0, Dimension::MAGNETIC_FIELD),
        "Hz" => (1.0, Dimension::FREQUENCY),
        "lm" => (1.0, Dimension::LUMINOUS_FLUX),
        _ => return None,
    };
    Some(Unit { scale, dim })
}

fn lookup(sym: &str) -> Option<Unit> {
    if let Some(u) = symbol(sym) {
        return Some(u);
    }
    let mut chars = sym.chars();
    let first = chars.next()?;
    let rest = chars.as_str();
    let (_, factor) = PREFIXES.iter().find(|(p, _)| *p == first)?;
    if !PREFIXABLE.contains(&rest) {
        return None;
    }
    let base = symbol(rest)?;
    Some(Unit {
        scale: base.scale * factor,
        dim: base.dim,
    })
}

pub fn parse_unit(text: &str) -> Result<Unit> {
    if text == "1" {
        return Ok(Unit::ONE);
    }
    if text.is_empty() {
        return Err(Error::Parse {
            offset: 0,
            message: "empty unit expression".into(),
        });
    }
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut scale = 1.0;
    let mut dim = Dimension::DIMENSIONLESS;
    loop {
        let (unit, next) = parse_term(text, pos)?;
        scale *= unit.scale;
        dim = dim.mul(unit.dim)?;
        pos = next;
        if pos == bytes.len() {
            break;
        }
        // separator: one or more spaces or tabs, then another term
        let ws_start = pos;
        while pos < bytes.len() && matches!(bytes[pos], b' ' | b'\t') {
            pos += 1;
        }
        if pos == ws_start {
            return Err(Error::Parse {
                offset: pos,
                message: format!("unexpected character `{}`", char_at(text, pos)),
            });
        }
        if pos == bytes.len() {
            return Err(Error::Parse {
                offset: pos,
                message: "trailing whitespace".into(),
            });
        }
    }
    Ok(Unit { scale, dim })
}

fn char_at(text: &str, pos: usize) -> char {
    text[pos..].chars().next().unwrap_or(' ')
}

fn parse_term(text: &str, start: usize) -> Result<(Unit, usize)> {
    let bytes = text.as_bytes();
    let mut pos = start;
    while pos < bytes.len() && bytes[pos].is_ascii_alphabetic() {
        pos += 1;
    }
    if pos == start {
        return Err(Error::Parse {
            offset: start,
            message: if start < bytes.len() {
                format!("expected unit symbol, found `{}`", char_at(text, start))
            } else {
                "expected unit symbol".into()
            },
        });
    }
    let sym = &text[start..pos];
    let unit = lookup(sym).ok_or_else(|| Error::UnknownUnit {
        symbol: sym.to_string(),
        offset: start,
    })?;
    if pos < bytes.len() && bytes[pos] == b'^' {
        pos += 1;
        let exp_start = pos;
        if pos < bytes.len() && matches!(bytes[pos], b'-' | b'+') {
            pos += 1;
        }
        let digits_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == digits_start {
            return Err(Error::Parse {
                offset: pos,
                message: "expected integer exponent after `^`".into(),
            });
        }
        let k: i32 = text[exp_start..pos].parse().map_err(|_| Error::Parse {
            offset: exp_start,
            message: "exponent out of range".into(),
        })?;
        let dim = unit.dim.powi(k)?;
        return Ok((
            Unit {
                scale: unit.scale.powi(k),
                dim,
            },
            pos,
        ));
    }
    Ok((unit, pos))
}

/// Parses a unit expression and returns only its dimension.
pub fn parse_dimension(text: &str) -> Result<Dimension> {
    parse_unit(text).map(|u| u.dim)
}

/// Canonical base-unit spelling, e.g. `kg m^3 s^-3`.
pub fn format_dimension(d: Dimension) -> String {
    let parts: Vec<String> = BaseDim::ALL
        .iter()
        .filter_map(|&b| match d.exponent(b) {
            0 => None,
            1 => Some(b.symbol().to_string()),
            e => Some(format!("{}^{}", b.symbol(), e)),
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}
