//! Flag parsing, run configuration, and cap overrides.

use std::collections::BTreeMap;
use std::fmt;

use tsirelson_core::literal::{format_family, format_theta, format_vector, parse_family, parse_theta, parse_vector};
use tsirelson_core::{Caps, Error, FamilyExpr, Rational, SparseVector, ThetaSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::ParseError(format!(
                "unknown format {other:?} (expected json, csv, or text)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "text",
        }
    }
}

/// `--flag value` arguments plus boolean switches, consumed by name so
/// that leftovers can be reported.
pub struct FlagMap {
    values: BTreeMap<String, String>,
    switches: Vec<String>,
}

impl FlagMap {
    pub fn parse(args: &[String], switch_names: &[&str]) -> Result<Self, Error> {
        let mut values = BTreeMap::new();
        let mut switches = Vec::new();
        let mut i = 0;
        while i < args.len() {
            let arg = &args[i];
            let name = arg
                .strip_prefix("--")
                .ok_or_else(|| Error::ParseError(format!("expected --flag, got {arg:?}")))?;
            if switch_names.contains(&name) {
                switches.push(name.to_string());
                i += 1;
                continue;
            }
            let value = args
                .get(i + 1)
                .ok_or_else(|| Error::ParseError(format!("--{name} needs a value")))?;
            if values.insert(name.to_string(), value.clone()).is_some() {
                return Err(Error::ParseError(format!("--{name} given twice")));
            }
            i += 2;
        }
        Ok(FlagMap { values, switches })
    }

    pub fn take(&mut self, name: &str) -> Option<String> {
        self.values.remove(name)
    }

    pub fn take_switch(&mut self, name: &str) -> bool {
        if let Some(pos) = self.switches.iter().position(|s| s == name) {
            self.switches.remove(pos);
            true
        } else {
            false
        }
    }

    pub fn take_parsed<T: std::str::FromStr>(
        &mut self,
        name: &str,
        default: T,
    ) -> Result<T, Error> {
        match self.take(name) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| Error::ParseError(format!("bad value {v:?} for --{name}"))),
        }
    }

    /// Errors on any flag that was not consumed.
    pub fn finish(self) -> Result<(), Error> {
        if let Some(name) = self.values.keys().next() {
            return Err(Error::ParseError(format!("unknown flag --{name}")));
        }
        if let Some(name) = self.switches.first() {
            return Err(Error::ParseError(format!("unknown flag --{name}")));
        }
        Ok(())
    }
}

/// Configuration of a `norm` run. Formatting and re-parsing round-trips.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub family: FamilyExpr,
    pub theta: ThetaSpec,
    pub vector: SparseVector<Rational>,
    pub format: OutputFormat,
    pub seed: u64,
    pub check: bool,
}

impl RunConfig {
    pub fn from_args(args: &[String]) -> Result<Self, Error> {
        let mut flags = FlagMap::parse(args, &["check"])?;
        let family = match flags.take("family") {
            Some(v) => parse_family(&v)?,
            None => FamilyExpr::Schreier,
        };
        let theta = match flags.take("theta") {
            Some(v) => parse_theta(&v)?,
            None => ThetaSpec::rational(1, 2).expect("1/2 is a valid theta"),
        };
        let vector = match flags.take("vector") {
            Some(v) => parse_vector_any(&v)?,
            None => return Err(Error::ParseError(String::from("--vector is required"))),
        };
        let format = match flags.take("format") {
            Some(v) => OutputFormat::parse(&v)?,
            None => OutputFormat::Json,
        };
        let seed = flags.take_parsed("seed", 0u64)?;
        let check = flags.take_switch("check");
        flags.finish()?;
        Ok(RunConfig { family, theta, vector, format, seed, check })
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "--family {} --theta {} --vector {} --format {} --seed {}",
            format_family(&self.family),
            format_theta(&self.theta),
            format_vector(&self.vector),
            self.format.name(),
            self.seed
        )?;
        if self.check {
            write!(f, " --check")?;
        }
        Ok(())
    }
}

/// Accepts both vector wire forms: `1:1,2:0.5` and JSON `{"1":1,"2":0.5}`
/// (values may be numbers or coefficient strings like `"1/3"`).
pub fn parse_vector_any(s: &str) -> Result<SparseVector<Rational>, Error> {
    let trimmed = s.trim();
    if !trimmed.starts_with('{') {
        return parse_vector(trimmed);
    }
    let doc: serde_json::Value = serde_json::from_str(trimmed)
        .map_err(|e| Error::ParseError(format!("bad JSON vector: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::ParseError(String::from("JSON vector must be an object")))?;
    let mut entries = Vec::with_capacity(obj.len());
    for (key, value) in obj {
        let pos: u32 = key
            .parse()
            .map_err(|_| Error::ParseError(format!("bad position {key:?} in JSON vector")))?;
        let coeff = match value {
            serde_json::Value::String(s) => tsirelson_core::literal::parse_rational(s)?,
            other => tsirelson_core::literal::parse_rational(&other.to_string())?,
        };
        entries.push((pos, coeff));
    }
    SparseVector::from_entries(entries).map_err(|e| Error::ParseError(e.to_string()))
}

/// Default caps, overridable through `TSIRELSON_CAP_*` environment
/// variables.
pub fn caps_from_env() -> Result<Caps, Error> {
    let mut caps = Caps::default();
    override_usize(&mut caps.dp_support_finite_rank, "TSIRELSON_CAP_DP_FINITE_RANK")?;
    override_usize(&mut caps.dp_support_schreier, "TSIRELSON_CAP_DP_SCHREIER")?;
    override_usize(&mut caps.dp_support_generic, "TSIRELSON_CAP_DP_GENERIC")?;
    override_usize(&mut caps.oracle_support, "TSIRELSON_CAP_ORACLE")?;
    override_usize(&mut caps.truncate_members, "TSIRELSON_CAP_TRUNCATE")?;
    override_usize(&mut caps.dual_ball_members, "TSIRELSON_CAP_DUAL_BALL")?;
    if let Ok(v) = std::env::var("TSIRELSON_CAP_WINDOW") {
        caps.position_window = v
            .parse()
            .map_err(|_| Error::ParseError(format!("bad TSIRELSON_CAP_WINDOW value {v:?}")))?;
    }
    Ok(caps)
}

fn override_usize(slot: &mut usize, var: &str) -> Result<(), Error> {
    if let Ok(v) = std::env::var(var) {
        *slot = v
            .parse()
            .map_err(|_| Error::ParseError(format!("bad {var} value {v:?}")))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(|p| p.to_string()).collect()
    }

    #[test]
    fn run_config_round_trips() {
        let cases = [
            "--family schreier --theta 1/2 --vector 2:1,3:1,4:1,5:1",
            "--family finite-rank:2 --theta root:n=2,q=2 --vector 1:1,2:0.5 --format csv --seed 7 --check",
            "--vector 7:1",
        ];
        for case in cases {
            let parsed = RunConfig::from_args(&args(case)).unwrap();
            let reparsed = RunConfig::from_args(&args(&parsed.to_string())).unwrap();
            assert_eq!(parsed, reparsed);
        }
    }

    #[test]
    fn unknown_flags_rejected() {
        assert!(RunConfig::from_args(&args("--vector 1:1 --bogus 3")).is_err());
        assert!(RunConfig::from_args(&args("--theta 1/2")).is_err());
        assert!(RunConfig::from_args(&args("--vector 1:1 --vector 2:1")).is_err());
    }
}
