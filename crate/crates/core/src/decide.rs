//! Reversibility of disjoint unions of well orders or reversed well orders.
//!
//! [`decide_well`] runs the positive characterization: a single-orientation
//! family is reversible iff it is finite-to-one, or every chain type at most
//! `gamma*` (the largest limit part) occurs finitely often and the finite
//! tails over `gamma*` form a reversible sequence of natural numbers.
//! [`detect_nonrev_clause`] runs the negative characterization independently
//! and the two must agree. [`decide`] reduces a mixed family to its well and
//! reversed parts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::FamilyError;
use crate::family::{ChainEntry, Count, FamilyPresentation, Orientation, Shape};
use crate::natrev::{decide_nat_reversible, NatMultiset, NatVerdict};
use crate::ordinal::Ordinal;
use crate::witness::plan::{build_witness, WitnessPlan};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Clause {
    #[serde(rename = "I")]
    FiniteToOne,
    #[serde(rename = "II")]
    BoundedTail,
    #[serde(rename = "A")]
    RepeatedBelowLimit,
    #[serde(rename = "B")]
    TailNotReversible,
    MixedSplit,
    #[serde(rename = "NatSeq")]
    NatSequence,
}

impl Clause {
    pub fn label(self) -> &'static str {
        match self {
            Clause::FiniteToOne => "I",
            Clause::BoundedTail => "II",
            Clause::RepeatedBelowLimit => "A",
            Clause::TailNotReversible => "B",
            Clause::MixedSplit => "MixedSplit",
            Clause::NatSequence => "NatSeq",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Details {
    FiniteToOne,
    BoundedTail {
        gamma_star: Ordinal,
        tails: NatMultiset,
        nat: NatVerdict,
    },
    /// `repeated` occurs infinitely often and fits inside the limit part of `host`.
    RepeatedBelowLimit { host: Ordinal, repeated: Ordinal },
    TailNotReversible {
        gamma: Ordinal,
        tails: NatMultiset,
        nat: NatVerdict,
    },
    MixedSplit {
        well: Box<Verdict>,
        reversed: Box<Verdict>,
    },
    NatSequence { tails: NatMultiset, nat: NatVerdict },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub reversible: bool,
    pub clause: Clause,
    pub orientation: Option<Orientation>,
    pub gamma_star: Option<Ordinal>,
    pub details: Details,
    pub witness: Option<WitnessPlan>,
}

impl Verdict {
    fn new(
        reversible: bool,
        clause: Clause,
        orientation: Option<Orientation>,
        gamma_star: Option<Ordinal>,
        details: Details,
    ) -> Verdict {
        let mut v = Verdict {
            reversible,
            clause,
            orientation,
            gamma_star,
            details,
            witness: None,
        };
        if !reversible {
            v.witness = build_witness(&v).ok();
        }
        v
    }

    /// Values occurring infinitely often in the deciding tail sequence.
    pub fn k(&self) -> Vec<u64> {
        match &self.details {
            Details::BoundedTail { nat, .. }
            | Details::TailNotReversible { nat, .. }
            | Details::NatSequence { nat, .. } => nat.k.clone(),
            Details::MixedSplit { well, reversed } => {
                if !well.reversible || reversed.reversible {
                    well.k()
                } else {
                    reversed.k()
                }
            }
            Details::FiniteToOne | Details::RepeatedBelowLimit { .. } => Vec::new(),
        }
    }
}

/// Payload of the negative characterization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause")]
pub enum NonRevClause {
    A { host: Ordinal, repeated: Ordinal },
    B {
        gamma: Ordinal,
        tails: NatMultiset,
        nat: NatVerdict,
    },
}

fn check_orientation(p: &FamilyPresentation, o: Orientation) -> Result<(), FamilyError> {
    if p.has_infinite(o.opposite()) {
        Err(FamilyError::OrientationMixed)
    } else {
        Ok(())
    }
}

fn infinite_singles(p: &FamilyPresentation) -> impl Iterator<Item = &Ordinal> {
    p.entries.iter().filter_map(|e| match &e.shape {
        Shape::Single {
            value,
            count: Count::Inf,
        } => Some(value),
        _ => None,
    })
}

fn host_with_limit_part_at_least<'a>(p: &'a FamilyPresentation, alpha: &Ordinal) -> Option<&'a ChainEntry> {
    p.entries
        .iter()
        .filter(|e| e.limit_part() >= *alpha)
        .max_by(|x, y| x.limit_part().cmp(&y.limit_part()).then(y.cmp(x)))
}

fn gamma_star(p: &FamilyPresentation) -> Ordinal {
    p.limit_parts().into_iter().next_back().unwrap_or_default()
}

/// Positive characterization for a family with one infinite orientation.
pub fn decide_well(p: &FamilyPresentation, o: Orientation) -> Result<Verdict, FamilyError> {
    check_orientation(p, o)?;
    if p.is_empty() {
        return Err(FamilyError::EmptyFamily);
    }
    let star = gamma_star(p);
    if p.finite_to_one() {
        return Ok(Verdict::new(true, Clause::FiniteToOne, Some(o), Some(star), Details::FiniteToOne));
    }
    if let Some(alpha) = infinite_singles(p).filter(|a| **a <= star).min() {
        let host = host_with_limit_part_at_least(p, alpha)
            .expect("the entry realizing gamma* qualifies")
            .representative();
        return Ok(Verdict::new(
            false,
            Clause::RepeatedBelowLimit,
            Some(o),
            Some(star),
            Details::RepeatedBelowLimit {
                host,
                repeated: alpha.clone(),
            },
        ));
    }
    let tails = p.tail_multiset(&star, o);
    let nat = decide_nat_reversible(&tails);
    let (clause, details) = if nat.reversible {
        (
            Clause::BoundedTail,
            Details::BoundedTail {
                gamma_star: star.clone(),
                tails,
                nat,
            },
        )
    } else {
        (
            Clause::TailNotReversible,
            Details::TailNotReversible {
                gamma: star.clone(),
                tails,
                nat,
            },
        )
    };
    Ok(Verdict::new(clause == Clause::BoundedTail, clause, Some(o), Some(star), details))
}

/// Negative characterization: a repeated chain type below some limit part
/// (clause A), or a limit part whose infinitely many finite tails form a
/// non-reversible sequence (clause B).
pub fn detect_nonrev_clause(p: &FamilyPresentation, o: Orientation) -> Result<Option<NonRevClause>, FamilyError> {
    check_orientation(p, o)?;
    for alpha in infinite_singles(p) {
        if let Some(host) = host_with_limit_part_at_least(p, alpha) {
            return Ok(Some(NonRevClause::A {
                host: host.representative(),
                repeated: alpha.clone(),
            }));
        }
    }
    for gamma in p.limit_parts() {
        let tails = p.tail_multiset(&gamma, o);
        if !tails.is_infinite() {
            continue;
        }
        let nat = decide_nat_reversible(&tails);
        if !nat.reversible {
            return Ok(Some(NonRevClause::B { gamma, tails, nat }));
        }
    }
    Ok(None)
}

/// Reversibility of `U gamma + n_i` for a fixed limit part `gamma`, given the
/// tails `n_i >= 1` and the number of indices with `n_i = 0`.
pub fn decide_fixed_gamma(gamma: &Ordinal, tails: &NatMultiset, count_at_zero_tail: Option<Count>) -> Verdict {
    let o = Some(Orientation::Well);
    if count_at_zero_tail == Some(Count::Inf) && !gamma.is_zero() {
        return Verdict::new(
            false,
            Clause::RepeatedBelowLimit,
            o,
            Some(gamma.clone()),
            Details::RepeatedBelowLimit {
                host: gamma.clone(),
                repeated: gamma.clone(),
            },
        );
    }
    let nat = decide_nat_reversible(tails);
    let tails = tails.clone();
    if !nat.reversible {
        return Verdict::new(
            false,
            Clause::TailNotReversible,
            o,
            Some(gamma.clone()),
            Details::TailNotReversible {
                gamma: gamma.clone(),
                tails,
                nat,
            },
        );
    }
    if nat.finite_to_one() && count_at_zero_tail.is_none_or(Count::is_finite) {
        return Verdict::new(true, Clause::FiniteToOne, o, Some(gamma.clone()), Details::FiniteToOne);
    }
    Verdict::new(
        true,
        Clause::BoundedTail,
        o,
        Some(gamma.clone()),
        Details::BoundedTail {
            gamma_star: gamma.clone(),
            tails,
            nat,
        },
    )
}

/// Decides an arbitrary family, splitting it when both orientations carry
/// infinite chains.
pub fn decide(p: &FamilyPresentation) -> Result<Verdict, FamilyError> {
    let p = p.normalize()?;
    let split = p.split();
    if split.has_infinite_well && split.has_infinite_reversed {
        let well = decide_well(&split.well, Orientation::Well)?;
        let reversed = decide_well(&split.reversed, Orientation::Reversed)?;
        let reversible = well.reversible && reversed.reversible;
        return Ok(Verdict::new(
            reversible,
            Clause::MixedSplit,
            None,
            None,
            Details::MixedSplit {
                well: Box::new(well),
                reversed: Box::new(reversed),
            },
        ));
    }
    let o = if split.has_infinite_reversed {
        Orientation::Reversed
    } else {
        Orientation::Well
    };
    decide_well(&p, o)
}

/// Decides a sequence of positive integers.
pub fn decide_nat(m: &NatMultiset) -> Verdict {
    let nat = decide_nat_reversible(m);
    Verdict::new(
        nat.reversible,
        Clause::NatSequence,
        Some(Orientation::Well),
        Some(Ordinal::zero()),
        Details::NatSequence {
            tails: m.clone(),
            nat,
        },
    )
}

/// The single-orientation parts of a normalized family, as decided by
/// [`decide`].
pub fn orientation_parts(p: &FamilyPresentation) -> Vec<(FamilyPresentation, Orientation)> {
    let split = p.split();
    match (split.has_infinite_well, split.has_infinite_reversed) {
        (true, true) => vec![
            (split.well, Orientation::Well),
            (split.reversed, Orientation::Reversed),
        ],
        (false, true) => vec![(p.clone(), Orientation::Reversed)],
        _ => vec![(p.clone(), Orientation::Well)],
    }
}

/// Whether the positive and negative characterizations agree on every
/// single-orientation part of `p`.
pub fn characterizations_agree(p: &FamilyPresentation) -> Result<bool, FamilyError> {
    let p = p.normalize()?;
    for (part, o) in orientation_parts(&p) {
        let positive = decide_well(&part, o)?.reversible;
        let negative = detect_nonrev_clause(&part, o)?.is_none();
        if positive != negative {
            return Ok(false);
        }
    }
    Ok(true)
}
