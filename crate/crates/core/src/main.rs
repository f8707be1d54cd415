use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ordrev::decide::{decide, decide_nat, Clause};
use ordrev::dsl;
use ordrev::family::{Count, FamilyPresentation};
use ordrev::golden;
use ordrev::natrev::{NatMultiset, NatProgression};
use ordrev::report::Report;
use ordrev::witness::oracle::{oracle_search_family, OracleBounds};
use ordrev::witness::verify::{verify_witness, WitnessInput, DEFAULT_DEPTH};

#[derive(Parser)]
#[command(name = "ordrev", version, about = "Reversibility of disjoint unions of well orders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a family and verify the witness of a negative verdict.
    Decide {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        witness_depth: usize,
        /// Exit with status 3 when the family is not reversible.
        #[arg(long)]
        exit_verdict: bool,
    },
    /// Search exhaustively for a witness within the given bounds.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        max_target: u64,
        #[arg(long)]
        max_coeff: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check the built-in reference families.
    Selftest,
}

const EXIT_INVARIANT: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NOT_REVERSIBLE: u8 = 3;

fn load(path: &PathBuf) -> Result<FamilyPresentation, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(EXIT_INPUT)
    })?;
    dsl::parse(&text).map_err(|e| {
        eprintln!("error: {}:{}", path.display(), e.render(&text));
        ExitCode::from(EXIT_INPUT)
    })
}

fn run_decide(file: PathBuf, json: bool, depth: usize, exit_verdict: bool) -> ExitCode {
    let family = match load(&file) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let report = match Report::build(&family, depth) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return ExitCode::from(EXIT_INPUT);
        }
    };
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if !report.violations.is_empty() {
        ExitCode::from(EXIT_INVARIANT)
    } else if exit_verdict && !report.reversible {
        ExitCode::from(EXIT_NOT_REVERSIBLE)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_oracle(file: PathBuf, bounds: OracleBounds, json: bool) -> ExitCode {
    let family = match load(&file) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let found = oracle_search_family(&family, bounds);
    if json {
        let value = serde_json::json!({ "bounds": bounds, "witness": found });
        println!("{}", serde_json::to_string_pretty(&value).expect("values serialize"));
    } else {
        match &found {
            Some(plan) => println!(
                "witness found: {}",
                serde_json::to_string(plan).expect("plans serialize")
            ),
            None => println!(
                "no witness within max target {} and max coefficient {}",
                bounds.max_target, bounds.max_coeff
            ),
        }
    }
    if found.is_some() && decide(&family).is_ok_and(|v| v.reversible) {
        eprintln!("error: a witness was found for a family decided reversible");
        return ExitCode::from(EXIT_INVARIANT);
    }
    ExitCode::SUCCESS
}

fn run_selftest() -> ExitCode {
    let mut failures = 0;
    let mut check = |name: &str, ok: bool| {
        println!("{} {name}", if ok { "ok  " } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    let families = [
        ("mixed tails", golden::MIXED_TAILS_TEXT, true, Clause::BoundedTail),
        ("points and w", golden::POINTS_AND_OMEGA_TEXT, false, Clause::RepeatedBelowLimit),
        ("two tails", golden::TWO_TAILS_TEXT, false, Clause::TailNotReversible),
        ("w + n", golden::OMEGA_PLUS_N_TEXT, true, Clause::FiniteToOne),
    ];
    for (name, text, reversible, clause) in families {
        let ok = dsl::parse(text)
            .ok()
            .and_then(|f| Report::build(&f, DEFAULT_DEPTH).ok())
            .is_some_and(|r| r.reversible == reversible && r.clause == clause && r.violations.is_empty());
        check(name, ok);
    }

    let inf = |vs: &[u64]| vs.iter().map(|v| (*v, Count::Inf)).collect::<Vec<_>>();
    let sequences = [
        ("K = {2, 5}, finite", NatMultiset::new(inf(&[2, 5]), vec![]), true),
        (
            "K = {2, 5}, progression",
            NatMultiset::new(inf(&[2, 5]), vec![NatProgression::new(1, 1, 1)]),
            false,
        ),
        (
            "K = {4, 10}, odd progression",
            NatMultiset::new(inf(&[4, 10]), vec![NatProgression::new(1, 2, 1)]),
            true,
        ),
        (
            "K = {4, 10}, even progression",
            NatMultiset::new(inf(&[4, 10]), vec![NatProgression::new(2, 2, 1)]),
            false,
        ),
    ];
    for (name, m, reversible) in sequences {
        let ok = m.is_ok_and(|m| {
            let v = decide_nat(&m);
            v.reversible == reversible
                && v.witness.as_ref().is_none_or(|plan| {
                    verify_witness(WitnessInput::Nat(&m), plan, DEFAULT_DEPTH).is_ok()
                })
                && v.witness.is_some() != reversible
        });
        check(name, ok);
    }

    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INVARIANT)
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Decide {
            file,
            json,
            witness_depth,
            exit_verdict,
        } => run_decide(file, json, witness_depth, exit_verdict),
        Command::Oracle {
            file,
            max_target,
            max_coeff,
            json,
        } => run_oracle(file, OracleBounds::new(max_target, max_coeff), json),
        Command::Selftest => run_selftest(),
    }
}
