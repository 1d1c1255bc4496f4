//! The `norm`, `verify`, and `sweep` subcommands.

use serde_json::json;

use tsirelson_core::equivalence::{
    equivalence_constants, p_exponent, verify_oracle_equivalence, verify_step1, verify_step2,
    verify_step3, verify_step4, verify_unconditionality, BlockSampleSpec, InequalityReport,
    RationalTupleSpec,
};
use tsirelson_core::literal::{format_family, format_rational, format_theta, format_vector, parse_family, parse_rational, parse_theta};
use tsirelson_core::norm::{norm_with_theta, NormOutcome};
use tsirelson_core::sample::SampleSpec;
use tsirelson_core::{Error, FamilyExpr, Rational, Scalar, ThetaSpec};

use crate::config::{caps_from_env, FlagMap, OutputFormat, RunConfig};
use crate::output::{
    csv_field, functional_from_json, functional_to_json, report_to_csv, report_to_json,
    report_to_text, stats_to_json, SCHEMA_VERSION,
};

pub fn cmd_norm(args: &[String]) -> Result<i32, Error> {
    let config = RunConfig::from_args(args)?;
    let mut caps = caps_from_env()?;
    caps.self_check = config.check;
    let outcome = norm_with_theta(&config.family, &config.theta, &config.vector, &caps)?;

    let value = outcome.value_f64();
    let value_exact = match &outcome {
        NormOutcome::Exact(r) => Some(format_rational(&r.value)),
        NormOutcome::Float(_) => None,
    };
    let certificate = outcome.certificate();
    let stats = outcome.stats();

    if config.check {
        // Round-trip the certificate through its wire format, then
        // re-validate and re-evaluate it against the input.
        let wire = functional_to_json(certificate);
        let restored = functional_from_json(&wire)?;
        if &restored != certificate {
            eprintln!("check failed: certificate does not survive serialization");
            return Ok(1);
        }
        tsirelson_core::validate_functional(&config.family, &restored)?;
        let eval = match &outcome {
            NormOutcome::Exact(_) => restored
                .eval(&config.theta.as_rational().expect("exact outcome"), &config.vector)
                .to_f64(),
            NormOutcome::Float(_) => {
                restored.eval(&config.theta.value_f64(), &config.vector.to_f64())
            }
        };
        if (eval - value).abs() > 1e-12 * value.abs().max(1.0) {
            eprintln!("check failed: certificate evaluates to {eval}, value is {value}");
            return Ok(1);
        }
    }

    match config.format {
        OutputFormat::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": "norm",
                "family": format_family(&config.family),
                "theta": format_theta(&config.theta),
                "vector": format_vector(&config.vector),
                "value": value,
                "value_exact": value_exact,
                "certificate": functional_to_json(certificate),
                "stats": stats_to_json(&stats),
                "checked": config.check,
            });
            println!("{doc}");
        }
        OutputFormat::Text => {
            println!("value = {value}");
            if let Some(exact) = &value_exact {
                println!("value_exact = {exact}");
            }
            println!("certificate = {certificate}");
            println!(
                "stats: support={} intervals={} walk_states={}",
                stats.support, stats.intervals, stats.walk_states
            );
        }
        OutputFormat::Csv => {
            println!("family,theta,vector,value,value_exact");
            println!(
                "{},{},{},{},{}",
                csv_field(&format_family(&config.family)),
                csv_field(&format_theta(&config.theta)),
                csv_field(&format_vector(&config.vector)),
                value,
                value_exact.unwrap_or_default(),
            );
        }
    }
    Ok(0)
}

pub fn cmd_verify(args: &[String]) -> Result<i32, Error> {
    let Some((claim, rest)) = args.split_first() else {
        return Err(Error::ParseError(String::from(
            "verify needs a claim: step1|step2|step3|step4|oracle|unconditional",
        )));
    };
    let mut flags = FlagMap::parse(rest, &[])?;
    let format = match flags.take("format") {
        Some(v) => OutputFormat::parse(&v)?,
        None => OutputFormat::Json,
    };
    let caps = caps_from_env()?;
    let report = run_claim(claim, &mut flags, &caps)?;
    flags.finish()?;

    match format {
        OutputFormat::Json => println!("{}", report_to_json(&report)),
        OutputFormat::Csv => print!("{}", report_to_csv(&report)),
        OutputFormat::Text => print!("{}", report_to_text(&report)),
    }
    Ok(if report.pass { 0 } else { 1 })
}

fn take_theta(flags: &mut FlagMap, default: &str) -> Result<ThetaSpec, Error> {
    match flags.take("theta") {
        Some(v) => parse_theta(&v),
        None => parse_theta(default),
    }
}

fn take_family(flags: &mut FlagMap) -> Result<FamilyExpr, Error> {
    match flags.take("family") {
        Some(v) => parse_family(&v),
        None => Ok(FamilyExpr::Schreier),
    }
}

fn run_claim(
    claim: &str,
    flags: &mut FlagMap,
    caps: &tsirelson_core::Caps,
) -> Result<InequalityReport, Error> {
    match claim {
        "step1" => {
            let n: u32 = flags.take_parsed("n", 2)?;
            let theta = take_theta(flags, "root:n=2,q=2")?;
            let spec = SampleSpec {
                count: flags.take_parsed("samples", 1000)?,
                max_support: flags.take_parsed("max-supp", 12)?,
                window: flags.take_parsed("window", 40)?,
                seed: flags.take_parsed("seed", 42)?,
            };
            verify_step1(n, &theta, &spec, caps)
        }
        "step2" => {
            let n: u32 = flags.take_parsed("n", 2)?;
            let theta = take_theta(flags, "root:n=2,q=2")?;
            let m_max: u32 = flags.take_parsed("m-max", 32)?;
            verify_step2(n, &theta, m_max, caps)
        }
        "step3" => {
            let n: u32 = flags.take_parsed("n", 2)?;
            let theta = take_theta(flags, "root:n=2,q=2")?;
            let spec = BlockSampleSpec {
                count: flags.take_parsed("samples", 200)?,
                max_blocks: flags.take_parsed("blocks", 6)?,
                max_total_support: flags.take_parsed("total-supp", 14)?,
                subsets_per_case: flags.take_parsed("subsets", 50)?,
                seed: flags.take_parsed("seed", 42)?,
            };
            verify_step3(n, &theta, &spec, caps)
        }
        "step4" => {
            let n: u32 = flags.take_parsed("n", 2)?;
            let theta = take_theta(flags, "root:n=2,q=2")?;
            let spec = RationalTupleSpec {
                count: flags.take_parsed("samples", 100)?,
                max_terms: flags.take_parsed("terms", 6)?,
                max_denominator: flags.take_parsed("max-den", 8)?,
                seed: flags.take_parsed("seed", 42)?,
            };
            verify_step4(n, &theta, &spec, caps)
        }
        "oracle" => {
            let family = take_family(flags)?;
            let theta = take_theta(flags, "1/2")?;
            let spec = SampleSpec {
                count: flags.take_parsed("samples", 500)?,
                max_support: flags.take_parsed("max-supp", 7)?,
                window: flags.take_parsed("window", 30)?,
                seed: flags.take_parsed("seed", 42)?,
            };
            verify_oracle_equivalence(&family, &theta, &spec, caps)
        }
        "unconditional" => {
            let family = take_family(flags)?;
            let theta = take_theta(flags, "1/2")?;
            let spec = SampleSpec {
                count: flags.take_parsed("samples", 1000)?,
                max_support: flags.take_parsed("max-supp", 10)?,
                window: flags.take_parsed("window", 30)?,
                seed: flags.take_parsed("seed", 42)?,
            };
            verify_unconditionality(&family, &theta, &spec, caps)
        }
        other => Err(Error::ParseError(format!(
            "unknown claim {other:?} (expected step1|step2|step3|step4|oracle|unconditional)"
        ))),
    }
}

pub fn cmd_sweep(args: &[String]) -> Result<i32, Error> {
    let Some((kind, rest)) = args.split_first() else {
        return Err(Error::ParseError(String::from("sweep needs a kind: growth|constants")));
    };
    match kind.as_str() {
        "growth" => sweep_growth(rest),
        "constants" => sweep_constants(rest),
        other => Err(Error::ParseError(format!(
            "unknown sweep kind {other:?} (expected growth or constants)"
        ))),
    }
}

fn sweep_growth(args: &[String]) -> Result<i32, Error> {
    let mut flags = FlagMap::parse(args, &[])?;
    let family = take_family(&mut flags)?;
    let theta = take_theta(&mut flags, "1/2")?;
    let m_max: u32 = flags.take_parsed("m-max", 16)?;
    let format = match flags.take("format") {
        Some(v) => OutputFormat::parse(&v)?,
        None => OutputFormat::Csv,
    };
    flags.finish()?;
    let caps = caps_from_env()?;
    let table = tsirelson_core::equivalence::growth_probe(&family, &theta, m_max, &caps)?;

    match format {
        OutputFormat::Csv => {
            println!("family,theta,m,norm");
            for (m, norm) in &table {
                println!(
                    "{},{},{m},{norm}",
                    csv_field(&format_family(&family)),
                    csv_field(&format_theta(&theta)),
                );
            }
        }
        OutputFormat::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": "sweep",
                "kind": "growth",
                "family": format_family(&family),
                "theta": format_theta(&theta),
                "table": table,
            });
            println!("{doc}");
        }
        OutputFormat::Text => {
            for (m, norm) in &table {
                println!("m={m} norm={norm}");
            }
        }
    }
    Ok(0)
}

fn sweep_constants(args: &[String]) -> Result<i32, Error> {
    let mut flags = FlagMap::parse(args, &[])?;
    let n: u32 = flags.take_parsed("n", 2)?;
    let grid = match flags.take("theta-grid") {
        Some(v) => parse_theta_grid(&v)?,
        None => return Err(Error::ParseError(String::from("--theta-grid start:end:step is required"))),
    };
    let samples: usize = flags.take_parsed("samples", 200)?;
    let max_support: usize = flags.take_parsed("max-supp", 10)?;
    let window: u32 = flags.take_parsed("window", 40)?;
    let seed: u64 = flags.take_parsed("seed", 42)?;
    let format = match flags.take("format") {
        Some(v) => OutputFormat::parse(&v)?,
        None => OutputFormat::Csv,
    };
    flags.finish()?;
    let caps = caps_from_env()?;

    let mut rows = Vec::new();
    for theta in &grid {
        let exponents = p_exponent(n, theta)?;
        let spec = SampleSpec { count: samples, max_support, window, seed };
        let (c_low, c_high) = equivalence_constants(n, theta, &spec, &caps)?;
        let lower_bound = 1.0 / (2.0 * n as f64);
        let pass = c_low >= lower_bound - 1e-9 && c_high <= 1.0 + 1e-9;
        rows.push((format_theta(theta), exponents.p, c_low, c_high, lower_bound, pass));
    }

    match format {
        OutputFormat::Csv => {
            println!("n,theta,p,samples,seed,c_low,c_high,lower_bound,pass");
            for (theta, p, c_low, c_high, lower_bound, pass) in &rows {
                println!(
                    "{n},{},{p},{samples},{seed},{c_low},{c_high},{lower_bound},{pass}",
                    csv_field(theta),
                );
            }
        }
        OutputFormat::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": "sweep",
                "kind": "constants",
                "n": n,
                "samples": samples,
                "seed": seed,
                "rows": rows
                    .iter()
                    .map(|(theta, p, c_low, c_high, lower_bound, pass)| json!({
                        "theta": theta,
                        "p": p,
                        "c_low": c_low,
                        "c_high": c_high,
                        "lower_bound": lower_bound,
                        "pass": pass,
                    }))
                    .collect::<Vec<_>>(),
            });
            println!("{doc}");
        }
        OutputFormat::Text => {
            for (theta, p, c_low, c_high, lower_bound, pass) in &rows {
                println!(
                    "theta={theta} p={p:.6} c_low={c_low:.6} c_high={c_high:.6} \
                     bound={lower_bound} pass={pass}"
                );
            }
        }
    }
    Ok(0)
}

/// Parses `start:end:step` where each part is an exact decimal or
/// fraction; the grid walks in exact rational steps, so no float drift can
/// change the row count.
fn parse_theta_grid(s: &str) -> Result<Vec<ThetaSpec>, Error> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::ParseError(format!(
            "theta grid must be start:end:step, got {s:?}"
        )));
    }
    let start = parse_rational(parts[0])?;
    let end = parse_rational(parts[1])?;
    let step = parse_rational(parts[2])?;
    if step <= Rational::from_integer(0.into()) {
        return Err(Error::ParseError(String::from("theta grid step must be positive")));
    }
    let mut grid = Vec::new();
    let mut cur = start;
    while cur <= end {
        let num = u32::try_from(cur.numer().clone())
            .map_err(|_| Error::ParseError(format!("grid theta {cur} out of range")))?;
        let den = u32::try_from(cur.denom().clone())
            .map_err(|_| Error::ParseError(format!("grid theta {cur} out of range")))?;
        grid.push(
            ThetaSpec::rational(num, den)
                .map_err(|e| Error::ParseError(format!("grid theta {cur}: {e}")))?,
        );
        cur += &step;
    }
    Ok(grid)
}
