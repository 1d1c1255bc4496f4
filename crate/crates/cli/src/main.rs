//! Command line front end for the Tsirelson-type norm engine.
//!
//! Subcommands: `norm` (exact norm with certificate), `verify` (inequality
//! suites with seeded sampling), `sweep` (growth and equivalence-constant
//! tables). Data goes to stdout; diagnostics go to stderr. Exit codes:
//! 0 success/pass, 1 counterexample or failed check, 2 usage or parse
//! error, 3 size cap exceeded.

mod commands;
mod config;
mod output;

use tsirelson_core::Error;

const USAGE: &str = "\
usage:
  tsirelson norm --vector POS:COEFF[,...] [--family F] [--theta T] [--format json|csv|text] [--check]
  tsirelson verify CLAIM [flags]    CLAIM: step1|step2|step3|step4|oracle|unconditional
  tsirelson sweep growth --family F --theta T [--m-max M] [--format ...]
  tsirelson sweep constants --n N --theta-grid START:END:STEP [--samples S] [--seed SEED]

families:  finite-rank:3 | schreier | union(finite-rank:2,schreier) | explicit:[[1],[2,3]]
theta:     1/2 | 0.55 | root:n=2,q=2
vectors:   2:1,3:0.5,5:-2

caps are overridable via TSIRELSON_CAP_{DP_FINITE_RANK,DP_SCHREIER,DP_GENERIC,ORACLE,TRUNCATE,DUAL_BALL,WINDOW}";

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    std::process::exit(run(&args));
}

fn run(args: &[String]) -> i32 {
    let Some((command, rest)) = args.split_first() else {
        eprintln!("{USAGE}");
        return 2;
    };
    let result = match command.as_str() {
        "norm" => commands::cmd_norm(rest),
        "verify" => commands::cmd_verify(rest),
        "sweep" => commands::cmd_sweep(rest),
        "--help" | "-h" | "help" => {
            println!("{USAGE}");
            return 0;
        }
        other => {
            eprintln!("unknown command {other:?}\n{USAGE}");
            return 2;
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SupportCapExceeded { .. }
        | Error::OracleCapExceeded { .. }
        | Error::EnumerationCapExceeded { .. }
        | Error::PositionWindowExceeded { .. } => 3,
        _ => 2,
    }
}
