use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::decide::{Details, Verdict};
use crate::error::WitnessError;
use crate::family::Orientation;
use crate::natrev::{semigroup_member, NatFailure, NatMultiset, NatVerdict, SemigroupCertificate};
use crate::ordinal::Ordinal;

/// A finitary description of a non-injective surjection `f` of the index set
/// under which every chain can be partitioned into copies of the chains
/// mapped onto it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessPlan {
    MergeShift(MergeShift),
    SparseChain(SparseChain),
    OrdinalShift(OrdinalShift),
}

/// Chains `limit_part + target` form an infinite class `t_0, t_1, ...` and
/// `target` is a sum of other repeated tails. The first chain of each part
/// class merges into `t_0`, each part class shifts back by its coefficient,
/// and the target class shifts forward (`t_k -> t_{k+1}`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeShift {
    pub orientation: Orientation,
    pub limit_part: Ordinal,
    pub target: u64,
    pub parts: SemigroupCertificate,
    #[serde(with = "crate::natrev::u64_map")]
    pub donor_shifts: BTreeMap<u64, u64>,
}

/// Targets are one chain for each progression member
/// `a + d*(k0 + m*stride)`, `m = 0, 1, ...`. Target 0 is assembled from
/// repeated chains per `init_cert`; target `m + 1` from target `m` plus
/// repeated chains per `step_cert`. Donor classes used by `step_cert` are
/// freed by the doubling map `x_{2k} -> x_k`, which leaves every odd position
/// available; classes used only by `init_cert` shift back instead.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseChain {
    pub orientation: Orientation,
    pub limit_part: Ordinal,
    pub g: u64,
    pub source_a: u64,
    pub source_d: u64,
    pub k0: u64,
    pub stride: u64,
    pub init_cert: SemigroupCertificate,
    pub step_cert: SemigroupCertificate,
    pub donor_doubling: BTreeSet<u64>,
}

impl SparseChain {
    pub fn target_tail(&self, m: u64) -> u64 {
        self.source_a + self.source_d * (self.k0 + m * self.stride)
    }
}

/// Which split of the host's limit part absorbs the repeated chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitDirective {
    pub gamma: Ordinal,
    pub alpha: Ordinal,
}

/// `host` absorbs one copy of `repeated` (which fits inside the host's limit
/// part) and the infinite class of `repeated` shifts back:
/// `f(i0) = f(i1) = i0`, `f(i_{k+1}) = i_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdinalShift {
    pub orientation: Orientation,
    pub host: Ordinal,
    pub repeated: Ordinal,
    pub split: SplitDirective,
}

impl WitnessPlan {
    pub fn kind(&self) -> &'static str {
        match self {
            WitnessPlan::MergeShift(_) => "merge_shift",
            WitnessPlan::SparseChain(_) => "sparse_chain",
            WitnessPlan::OrdinalShift(_) => "ordinal_shift",
        }
    }

    pub fn orientation(&self) -> Orientation {
        match self {
            WitnessPlan::MergeShift(p) => p.orientation,
            WitnessPlan::SparseChain(p) => p.orientation,
            WitnessPlan::OrdinalShift(p) => p.orientation,
        }
    }
}

pub fn merge_shift(
    orientation: Orientation,
    limit_part: Ordinal,
    parts: SemigroupCertificate,
) -> WitnessPlan {
    WitnessPlan::MergeShift(MergeShift {
        orientation,
        limit_part,
        target: parts.target,
        donor_shifts: parts.coefficients.clone(),
        parts,
    })
}

pub fn ordinal_shift(orientation: Orientation, host: Ordinal, repeated: Ordinal) -> WitnessPlan {
    WitnessPlan::OrdinalShift(OrdinalShift {
        orientation,
        split: SplitDirective {
            gamma: host.limit_part(),
            alpha: repeated.clone(),
        },
        host,
        repeated,
    })
}

/// Assembles a sparse-chain plan from explicit certificates.
#[allow(clippy::too_many_arguments)]
pub fn sparse_chain(
    orientation: Orientation,
    limit_part: Ordinal,
    g: u64,
    source: (u64, u64),
    k0: u64,
    stride: u64,
    init_cert: SemigroupCertificate,
    step_cert: SemigroupCertificate,
) -> WitnessPlan {
    let donor_doubling = step_cert
        .coefficients
        .iter()
        .filter(|(_, c)| **c > 0)
        .map(|(v, _)| *v)
        .collect();
    WitnessPlan::SparseChain(SparseChain {
        orientation,
        limit_part,
        g,
        source_a: source.0,
        source_d: source.1,
        k0,
        stride,
        init_cert,
        step_cert,
        donor_doubling,
    })
}

/// Search cap for the first progression member lying in the semigroup.
const MAX_SPARSE_SEARCH: u64 = 1 << 16;

/// Least `k0` with `a + d*k0` in `<K>` and least `stride >= 1` with
/// `d*stride` in `<K>`.
fn minimal_sparse_chain(
    orientation: Orientation,
    limit_part: Ordinal,
    k: &[u64],
    g: u64,
    a: u64,
    d: u64,
) -> Result<WitnessPlan, WitnessError> {
    let (k0, init_cert) = (0..MAX_SPARSE_SEARCH)
        .find_map(|k0| semigroup_member(a + d * k0, k).map(|c| (k0, c)))
        .ok_or(WitnessError::MissingPayload("no progression member in the semigroup"))?;
    let (stride, step_cert) = (1..MAX_SPARSE_SEARCH)
        .find_map(|s| semigroup_member(d * s, k).map(|c| (s, c)))
        .ok_or(WitnessError::MissingPayload("no progression gap in the semigroup"))?;
    Ok(sparse_chain(
        orientation,
        limit_part,
        g,
        (a, d),
        k0,
        stride,
        init_cert,
        step_cert,
    ))
}

/// Witness for a non-reversible sequence of finite tails over `limit_part`.
pub fn build_tail_witness(
    orientation: Orientation,
    limit_part: &Ordinal,
    nat: &NatVerdict,
) -> Result<WitnessPlan, WitnessError> {
    match &nat.failure {
        None => Err(WitnessError::NotNonReversible),
        Some(NatFailure::Dependent { certificate }) => Ok(merge_shift(
            orientation,
            limit_part.clone(),
            certificate.clone(),
        )),
        Some(NatFailure::GcdDividesInfinitely { g, progression }) => minimal_sparse_chain(
            orientation,
            limit_part.clone(),
            &nat.k,
            *g,
            progression.a,
            progression.d,
        ),
    }
}

/// Witness for a non-reversible natural-number sequence.
pub fn build_nat_witness(m: &NatMultiset, nat: &NatVerdict) -> Result<WitnessPlan, WitnessError> {
    debug_assert_eq!(m.infinite_values(), nat.k);
    build_tail_witness(Orientation::Well, &Ordinal::zero(), nat)
}

/// Builds the witness matching a non-reversible verdict's clause payload.
pub fn build_witness(v: &Verdict) -> Result<WitnessPlan, WitnessError> {
    if v.reversible {
        return Err(WitnessError::NotNonReversible);
    }
    let orientation = v.orientation.unwrap_or(Orientation::Well);
    match &v.details {
        Details::RepeatedBelowLimit { host, repeated } => {
            Ok(ordinal_shift(orientation, host.clone(), repeated.clone()))
        }
        Details::TailNotReversible { gamma, nat, .. } => {
            build_tail_witness(orientation, gamma, nat)
        }
        Details::NatSequence { nat, .. } => {
            build_tail_witness(Orientation::Well, &Ordinal::zero(), nat)
        }
        Details::MixedSplit { well, reversed } => {
            if !well.reversible {
                build_witness(well)
            } else {
                build_witness(reversed)
            }
        }
        Details::FiniteToOne | Details::BoundedTail { .. } => {
            Err(WitnessError::MissingPayload("reversible clause on a non-reversible verdict"))
        }
    }
}
