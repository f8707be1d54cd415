//! Decision reports for the command line and the C interface.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::decide::{characterizations_agree, decide, Clause, Details, Verdict};
use crate::error::Error;
use crate::family::FamilyPresentation;
use crate::witness::plan::WitnessPlan;
use crate::witness::verify::{verify_witness, WitnessInput};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub check: String,
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub reversible: bool,
    pub clause: Clause,
    pub gamma_star: Option<String>,
    #[serde(rename = "K")]
    pub k: Vec<u64>,
    pub witness: Option<WitnessPlan>,
    pub trace: Vec<TraceStep>,
    pub timing_ms: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

fn step(trace: &mut Vec<TraceStep>, check: impl Into<String>, outcome: impl Into<String>) {
    trace.push(TraceStep {
        check: check.into(),
        outcome: outcome.into(),
    });
}

fn trace_verdict(v: &Verdict, prefix: &str, trace: &mut Vec<TraceStep>) {
    let side = v.orientation.map_or(String::new(), |o| format!("{o} "));
    match &v.details {
        Details::MixedSplit { well, reversed } => {
            step(trace, format!("{prefix}orientation split"), "both orientations carry infinite chains");
            trace_verdict(well, &format!("{prefix}well part: "), trace);
            trace_verdict(reversed, &format!("{prefix}reversed part: "), trace);
        }
        Details::FiniteToOne => {
            step(trace, format!("{prefix}{side}finite-to-one"), "yes");
        }
        Details::RepeatedBelowLimit { host, repeated } => {
            step(trace, format!("{prefix}{side}finite-to-one"), "no");
            step(
                trace,
                format!("{prefix}repeated type at most the largest limit part"),
                format!("{repeated} repeats and fits inside the limit part of {host}"),
            );
        }
        Details::BoundedTail { gamma_star, nat, .. } => {
            step(trace, format!("{prefix}{side}finite-to-one"), "no");
            step(
                trace,
                format!("{prefix}repeated type at most the largest limit part"),
                format!("none up to {gamma_star}"),
            );
            step(
                trace,
                format!("{prefix}tail sequence over {gamma_star}"),
                format!("reversible, K = {:?}", nat.k),
            );
        }
        Details::TailNotReversible { gamma, nat, .. } => {
            step(trace, format!("{prefix}{side}finite-to-one"), "no");
            step(
                trace,
                format!("{prefix}repeated type at most the largest limit part"),
                format!("none up to {gamma}"),
            );
            let why = match &nat.failure {
                Some(crate::natrev::NatFailure::Dependent { certificate }) => {
                    format!("{} is a sum of other repeated tails", certificate.target)
                }
                Some(crate::natrev::NatFailure::GcdDividesInfinitely { g, progression }) => format!(
                    "gcd {g} divides infinitely many of {} + {}k",
                    progression.a, progression.d
                ),
                None => "not reversible".into(),
            };
            step(
                trace,
                format!("{prefix}tail sequence over {gamma}"),
                format!("not reversible, K = {:?}: {why}", nat.k),
            );
        }
        Details::NatSequence { nat, .. } => {
            step(
                trace,
                format!("{prefix}natural-number sequence"),
                format!("{}, K = {:?}", if nat.reversible { "reversible" } else { "not reversible" }, nat.k),
            );
        }
    }
}

impl Report {
    /// Decides `family`, cross-checks the verdict against the negative
    /// characterization, and verifies any witness at `depth`.
    pub fn build(family: &FamilyPresentation, depth: usize) -> Result<Report, Error> {
        let start = Instant::now();
        let normalized = family.normalize()?;
        let verdict = decide(&normalized)?;
        let mut trace = Vec::new();
        let mut violations = Vec::new();
        trace_verdict(&verdict, "", &mut trace);

        if characterizations_agree(&normalized)? {
            step(&mut trace, "negative characterization", "agrees");
        } else {
            step(&mut trace, "negative characterization", "disagrees");
            violations.push("positive and negative characterizations disagree".to_string());
        }

        if !verdict.reversible {
            match &verdict.witness {
                None => violations.push("no witness was built".into()),
                Some(plan) => match verify_witness(WitnessInput::Family(&normalized), plan, depth) {
                    Ok(s) => step(
                        &mut trace,
                        format!("witness {}", plan.kind()),
                        format!(
                            "verified on {} indices, {} resolved, up to {} preimages",
                            s.instantiated, s.resolved, s.max_preimages
                        ),
                    ),
                    Err(r) => {
                        step(&mut trace, format!("witness {}", plan.kind()), format!("rejected: {r}"));
                        violations.push(format!("witness rejected: {r}"));
                    }
                },
            }
        }

        Ok(Report {
            reversible: verdict.reversible,
            clause: verdict.clause,
            gamma_star: verdict.gamma_star.as_ref().map(ToString::to_string),
            k: verdict.k(),
            witness: verdict.witness.clone(),
            trace,
            timing_ms: start.elapsed().as_secs_f64() * 1e3,
            violations,
        })
    }

    /// JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        serde_json::to_string_pretty(&value).expect("values serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = if self.reversible { "reversible" } else { "not reversible" };
        let _ = writeln!(s, "{verdict} (clause {})", self.clause);
        if let Some(g) = &self.gamma_star {
            let _ = writeln!(s, "largest limit part: {g}");
        }
        if !self.k.is_empty() {
            let _ = writeln!(s, "repeated tails K: {:?}", self.k);
        }
        for t in &self.trace {
            let _ = writeln!(s, "  {}: {}", t.check, t.outcome);
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "witness: {}", serde_json::to_string(w).expect("plans serialize"));
        }
        for v in &self.violations {
            let _ = writeln!(s, "INVARIANT VIOLATION: {v}");
        }
        s
    }
}
