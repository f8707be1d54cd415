//! Exhaustive bounded search for witness plans.
//!
//! Candidates are enumerated directly, with certificates found by listing
//! coefficient vectors rather than by the semigroup routines, and each is
//! submitted to the verifier. A hit proves non-reversibility; a miss proves
//! nothing beyond the bounds.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::decide::orientation_parts;
use crate::family::{Count, FamilyPresentation, Orientation, Shape};
use crate::natrev::{gcd_all, NatMultiset, SemigroupCertificate};
use crate::ordinal::Ordinal;
use crate::witness::plan::{merge_shift, ordinal_shift, sparse_chain, WitnessPlan};
use crate::witness::verify::{is_valid_witness, WitnessInput, DEFAULT_DEPTH};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBounds {
    pub max_target: u64,
    pub max_coeff: u64,
}

impl OracleBounds {
    pub fn new(max_target: u64, max_coeff: u64) -> Self {
        OracleBounds {
            max_target,
            max_coeff,
        }
    }
}

/// Every way of writing `target` as a nonempty combination of `gens` with
/// coefficients at most `max_coeff`, in lexicographic order of coefficients.
pub fn enumerate_certificates(target: u64, gens: &[u64], max_coeff: u64) -> Vec<SemigroupCertificate> {
    fn go(
        target: u64,
        gens: &[u64],
        max_coeff: u64,
        chosen: &mut Vec<(u64, u64)>,
        out: &mut Vec<SemigroupCertificate>,
    ) {
        let Some((&g, rest)) = gens.split_first() else {
            if target == 0 && !chosen.is_empty() {
                out.push(SemigroupCertificate {
                    target: chosen.iter().map(|(g, c)| g * c).sum(),
                    coefficients: chosen.iter().copied().collect(),
                });
            }
            return;
        };
        go(target, rest, max_coeff, chosen, out);
        for c in 1..=max_coeff {
            let Some(used) = g.checked_mul(c).filter(|u| *u <= target) else {
                break;
            };
            chosen.push((g, c));
            go(target - used, rest, max_coeff, chosen, out);
            chosen.pop();
        }
    }
    let mut gens: Vec<u64> = gens.iter().copied().filter(|g| *g > 0).collect();
    gens.sort_unstable();
    gens.dedup();
    let mut out = Vec::new();
    go(target, &gens, max_coeff, &mut Vec::new(), &mut out);
    out
}

fn first_certificate(target: u64, gens: &[u64], max_coeff: u64) -> Option<SemigroupCertificate> {
    enumerate_certificates(target, gens, max_coeff).into_iter().next()
}

fn tail_candidates(
    o: Orientation,
    gamma: &Ordinal,
    tails: &NatMultiset,
    bounds: OracleBounds,
) -> impl Iterator<Item = WitnessPlan> {
    let repeated: Vec<u64> = tails
        .singles
        .iter()
        .filter(|(_, c)| *c == Count::Inf)
        .map(|(v, _)| *v)
        .collect();

    let mut merges = Vec::new();
    for &target in repeated.iter().filter(|t| **t <= bounds.max_target) {
        let others: Vec<u64> = repeated.iter().copied().filter(|v| *v != target).collect();
        for cert in enumerate_certificates(target, &others, bounds.max_coeff) {
            merges.push(merge_shift(o, gamma.clone(), cert));
        }
    }

    let mut sparse = Vec::new();
    if let Some(g) = gcd_all(&repeated) {
        for p in &tails.progressions {
            for k0 in 0..=bounds.max_coeff {
                let first = p.a + p.d * k0;
                let Some(init) = first_certificate(first, &repeated, bounds.max_coeff) else {
                    continue;
                };
                for stride in 1..=bounds.max_coeff {
                    if let Some(step) = first_certificate(p.d * stride, &repeated, bounds.max_coeff) {
                        sparse.push(sparse_chain(
                            o,
                            gamma.clone(),
                            g,
                            (p.a, p.d),
                            k0,
                            stride,
                            init.clone(),
                            step,
                        ));
                    }
                }
            }
        }
    }
    merges.into_iter().chain(sparse)
}

/// Searches for a plan over a sequence of positive integers.
pub fn bounded_oracle_search(m: &NatMultiset, bounds: OracleBounds) -> Option<WitnessPlan> {
    let mut m = m.clone();
    m.merge_singles();
    tail_candidates(Orientation::Well, &Ordinal::zero(), &m, bounds)
        .find(|plan| is_valid_witness(WitnessInput::Nat(&m), plan, DEFAULT_DEPTH))
}

/// Searches for a plan over a family: tail plans at every limit part and
/// orientation, and ordinal shifts of repeated chains into larger hosts.
pub fn oracle_search_family(p: &FamilyPresentation, bounds: OracleBounds) -> Option<WitnessPlan> {
    let p = p.normalize().ok()?;
    let input = WitnessInput::Family(&p);
    for (part, o) in orientation_parts(&p) {
        let mut hosts: BTreeMap<Ordinal, ()> = BTreeMap::new();
        let mut repeated = Vec::new();
        for e in &part.entries {
            match &e.shape {
                Shape::Single { value, count } => {
                    hosts.insert(value.clone(), ());
                    if *count == Count::Inf {
                        repeated.push(value.clone());
                    }
                }
                Shape::Progression(pr) => {
                    hosts.insert(pr.member(0), ());
                }
            }
        }
        for alpha in &repeated {
            for host in hosts.keys() {
                let plan = ordinal_shift(o, host.clone(), alpha.clone());
                if is_valid_witness(input, &plan, DEFAULT_DEPTH) {
                    return Some(plan);
                }
            }
        }
        for gamma in part.limit_parts() {
            let tails = part.tail_multiset(&gamma, o);
            let found = tail_candidates(o, &gamma, &tails, bounds)
                .find(|plan| is_valid_witness(input, plan, DEFAULT_DEPTH));
            if found.is_some() {
                return found;
            }
        }
    }
    None
}
