//! Text literals for families, theta values, and vectors.
//!
//! These forms are shared by the command line, test fixtures, and
//! counterexample reports:
//!
//! * families: `finite-rank:3`, `schreier`, `union(finite-rank:2,schreier)`,
//!   `explicit:[[1],[2,3]]` (sets strictly increasing);
//! * theta: `1/2`, `0.55`, `root:n=2,q=2`;
//! * vectors: `1:1,2:0.5,5:-2` with decimal or `p/q` coefficients.
//!
//! Formatting a parsed value re-parses to the same value.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::family::{FamilyExpr, FiniteSet};
use crate::theta::ThetaSpec;
use crate::vector::SparseVector;
use crate::Rational;

pub fn parse_family(input: &str) -> Result<FamilyExpr, Error> {
    let s = input.trim();
    if s == "schreier" {
        return Ok(FamilyExpr::Schreier);
    }
    if let Some(rest) = s.strip_prefix("finite-rank:") {
        let n: u32 = rest
            .trim()
            .parse()
            .map_err(|_| Error::ParseError(format!("bad finite-rank parameter {rest:?}")))?;
        return FamilyExpr::finite_rank(n)
            .map_err(|e| Error::ParseError(format!("finite-rank: {e}")));
    }
    if let Some(rest) = s.strip_prefix("union(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::ParseError(String::from("union misses closing parenthesis")))?;
        let (left, right) = split_top_level_comma(inner)
            .ok_or_else(|| Error::ParseError(String::from("union needs two arguments")))?;
        return Ok(FamilyExpr::union(parse_family(left)?, parse_family(right)?));
    }
    if let Some(rest) = s.strip_prefix("explicit:") {
        let members = parse_set_list(rest.trim())?;
        return FamilyExpr::explicit(members)
            .map_err(|e| Error::ParseError(format!("explicit: {e}")));
    }
    Err(Error::ParseError(format!("unrecognized family literal {s:?}")))
}

pub fn format_family(family: &FamilyExpr) -> String {
    family.to_string()
}

/// Splits at the single comma that sits outside all brackets.
fn split_top_level_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Parses `[[1],[2,3],[]]` into finite sets.
fn parse_set_list(s: &str) -> Result<Vec<FiniteSet>, Error> {
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::ParseError(format!("expected [ ... ] around set list, got {s:?}")))?;
    let mut members = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        if !rest.starts_with('[') {
            return Err(Error::ParseError(format!("expected [ in set list near {rest:?}")));
        }
        let close = rest
            .find(']')
            .ok_or_else(|| Error::ParseError(String::from("unterminated set in list")))?;
        let body = &rest[1..close];
        let mut elems = Vec::new();
        for part in body.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let e: u32 = part
                .parse()
                .map_err(|_| Error::ParseError(format!("bad set element {part:?}")))?;
            elems.push(e);
        }
        members.push(FiniteSet::new(elems).map_err(|e| Error::ParseError(e.to_string()))?);
        rest = rest[close + 1..].trim();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim();
        } else if !rest.is_empty() {
            return Err(Error::ParseError(format!("expected , between sets near {rest:?}")));
        }
    }
    Ok(members)
}

pub fn parse_theta(input: &str) -> Result<ThetaSpec, Error> {
    let s = input.trim();
    if let Some(rest) = s.strip_prefix("root:") {
        let (n_part, q_part) = rest
            .split_once(',')
            .ok_or_else(|| Error::ParseError(String::from("root form needs n=..,q=..")))?;
        let n: u32 = n_part
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::ParseError(format!("bad root-form n in {s:?}")))?;
        let q: f64 = q_part
            .trim()
            .strip_prefix("q=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::ParseError(format!("bad root-form q in {s:?}")))?;
        return ThetaSpec::root_form(n, q).map_err(|e| Error::ParseError(e.to_string()));
    }
    let r = parse_rational(s)?;
    let (num, den) = (r.numer(), r.denom());
    let num: u32 = u32::try_from(num.clone())
        .map_err(|_| Error::ParseError(format!("theta {s:?} out of range")))?;
    let den: u32 = u32::try_from(den.clone())
        .map_err(|_| Error::ParseError(format!("theta {s:?} out of range")))?;
    ThetaSpec::rational(num, den).map_err(|e| Error::ParseError(e.to_string()))
}

pub fn format_theta(theta: &ThetaSpec) -> String {
    theta.to_string()
}

/// Parses a coefficient: an integer, a decimal, or `p/q`.
pub fn parse_rational(input: &str) -> Result<Rational, Error> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::ParseError(String::from("empty number")));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::ParseError(format!("bad numerator in {s:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::ParseError(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::ParseError(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::ParseError(format!("bad number {s:?}")));
    }
    let int_part = if int_part.is_empty() { "0" } else { int_part };
    let int_val: BigInt = int_part
        .parse()
        .map_err(|_| Error::ParseError(format!("bad number {s:?}")))?;
    let mut value = Rational::from_integer(int_val);
    if !frac_part.is_empty() {
        let frac_val: BigInt = frac_part
            .parse()
            .map_err(|_| Error::ParseError(format!("bad number {s:?}")))?;
        if frac_val.is_negative() {
            return Err(Error::ParseError(format!("bad number {s:?}")));
        }
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        value += Rational::new(frac_val, scale);
    }
    if sign < 0 {
        value = -value;
    }
    Ok(value)
}

/// Canonical text for a rational: an integer when possible, a terminating
/// decimal when the denominator divides a power of 10, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    let num = r.numer();
    let den = r.denom();
    if den.is_one() {
        return num.to_string();
    }
    // den = 2^a · 5^b exactly when the decimal expansion terminates.
    let mut d = den.clone();
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let mut a = 0u32;
    let mut b = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        a += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        b += 1;
    }
    if !d.is_one() {
        return format!("{num}/{den}");
    }
    let k = a.max(b);
    let pow10 = BigInt::from(10u32).pow(k);
    let scaled = (num * &pow10 / den).abs();
    let digits = scaled.to_string();
    let digits = if digits.len() <= k as usize {
        format!("{}{}", "0".repeat(k as usize + 1 - digits.len()), digits)
    } else {
        digits
    };
    let split = digits.len() - k as usize;
    let (int_part, frac_part) = digits.split_at(split);
    let frac_part = frac_part.trim_end_matches('0');
    let sign = if num.is_negative() { "-" } else { "" };
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Parses `1:1,2:0.5,5:-2`. The empty string and `0` denote the zero
/// vector. Duplicate positions are rejected.
pub fn parse_vector(input: &str) -> Result<SparseVector<Rational>, Error> {
    let s = input.trim();
    if s.is_empty() || s == "0" {
        return Ok(SparseVector::zero());
    }
    let mut entries: Vec<(u32, Rational)> = Vec::new();
    for part in s.split(',') {
        let (pos, coeff) = part
            .split_once(':')
            .ok_or_else(|| Error::ParseError(format!("expected pos:coeff, got {part:?}")))?;
        let pos: u32 = pos
            .trim()
            .parse()
            .map_err(|_| Error::ParseError(format!("bad position {pos:?}")))?;
        if pos == 0 {
            return Err(Error::ParseError(String::from("positions must be >= 1")));
        }
        if entries.iter().any(|(p, _)| *p == pos) {
            return Err(Error::ParseError(format!("duplicate position {pos}")));
        }
        entries.push((pos, parse_rational(coeff)?));
    }
    SparseVector::from_entries(entries).map_err(|e| Error::ParseError(e.to_string()))
}

pub fn format_vector(v: &SparseVector<Rational>) -> String {
    if v.is_zero() {
        return String::from("0");
    }
    let mut out = String::new();
    for (i, (p, c)) in v.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("{p}:{}", format_rational(c)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn family_round_trips() {
        for lit in [
            "finite-rank:3",
            "schreier",
            "union(finite-rank:2,schreier)",
            "explicit:[[1],[2,3]]",
            "union(union(finite-rank:1,schreier),explicit:[[],[4,7]])",
        ] {
            let parsed = parse_family(lit).unwrap();
            assert_eq!(format_family(&parsed), lit);
            assert_eq!(parse_family(&format_family(&parsed)).unwrap(), parsed);
        }
    }

    #[test]
    fn family_rejects_garbage() {
        assert!(parse_family("schreiers").is_err());
        assert!(parse_family("finite-rank:0").is_err());
        assert!(parse_family("union(schreier)").is_err());
        assert!(parse_family("explicit:[[2,1]]").is_err());
        assert!(parse_family("explicit:[[1],[1]]").is_err());
    }

    #[test]
    fn theta_round_trips() {
        for lit in ["1/2", "root:n=2,q=2", "root:n=3,q=2.5"] {
            let parsed = parse_theta(lit).unwrap();
            assert_eq!(format_theta(&parsed), lit);
        }
        // Decimals normalize to reduced fractions.
        assert_eq!(format_theta(&parse_theta("0.55").unwrap()), "11/20");
        assert!(parse_theta("1").is_err());
        assert!(parse_theta("root:n=1,q=2").is_err());
    }

    #[test]
    fn vector_round_trips() {
        for lit in ["1:1,2:0.5,5:-2", "0", "3:1/3", "2:-0.25,9:128"] {
            let parsed = parse_vector(lit).unwrap();
            assert_eq!(format_vector(&parsed), lit);
        }
        assert!(parse_vector("1:1,1:2").is_err());
        assert!(parse_vector("0:1").is_err());
        assert!(parse_vector("1:").is_err());
    }

    #[test]
    fn rational_formatting() {
        let cases: Vec<(&str, &str)> = vec![
            ("1/2", "0.5"),
            ("-1/2", "-0.5"),
            ("1/3", "1/3"),
            ("7", "7"),
            ("1/8", "0.125"),
            ("3/20", "0.15"),
            ("1/64", "0.015625"),
        ];
        for (input, expect) in cases {
            assert_eq!(format_rational(&parse_rational(input).unwrap()), expect);
        }
    }
}
