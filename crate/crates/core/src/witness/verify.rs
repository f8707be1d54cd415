//! Independent checking of witness plans.
//!
//! A plan is checked twice. The schema check re-derives every arithmetic
//! claim (certificate sums, infinite multiplicities, ordinal comparisons)
//! from the input family. The element check interprets the plan as a map on
//! concrete indices: the first `depth` positions of every class involved are
//! instantiated, images are computed, and every index whose preimage set is
//! fully known must admit a partition into copies of its preimages. Some
//! index must have at least two preimages.
//!
//! All index maps produced here are non-decreasing in the source position for
//! each (source class, target class) pair. Images of positions at or beyond
//! `depth` are therefore bounded below by the images of the first few such
//! positions, which gives the horizon below which preimage sets are complete.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::error::ColoringError;
use crate::family::{ChainEntry, Count, FamilyPresentation, Orientation, Shape};
use crate::natrev::{gcd_all, NatMultiset, SemigroupCertificate};
use crate::ordinal::Ordinal;
use crate::witness::coloring::{partition_limit, split_prefix, Coloring, Colors};
use crate::witness::plan::{MergeShift, OrdinalShift, SparseChain, WitnessPlan};

pub const DEFAULT_DEPTH: usize = 256;

#[derive(Clone, Copy, Debug)]
pub enum WitnessInput<'a> {
    Family(&'a FamilyPresentation),
    Nat(&'a NatMultiset),
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Rejection {
    #[error("certificate for {target} does not sum correctly")]
    CertificateArithmetic { target: u64 },
    #[error("certificate for {target} uses {generator}, which is not available")]
    ForeignGenerator { target: u64, generator: u64 },
    #[error("chain type {value} does not occur infinitely often")]
    NotRepeated { value: String },
    #[error("chain type {value} does not occur")]
    Absent { value: String },
    #[error("target {target} is listed among its own parts")]
    TargetAmongParts { target: u64 },
    #[error("donor shifts disagree with the certificate")]
    DonorShiftMismatch,
    #[error("claimed gcd {claimed} differs from {actual}")]
    WrongGcd { claimed: u64, actual: u64 },
    #[error("{g} does not divide {value}")]
    NotDivisible { g: u64, value: u64 },
    #[error("doubling set disagrees with the step certificate")]
    DoublingMismatch,
    #[error("no progression provides the members {a} + {d}k")]
    MissingProgression { a: u64, d: u64 },
    #[error("plan parameters are degenerate: {0}")]
    Degenerate(String),
    #[error("limit part {value} is not a limit ordinal or zero")]
    BadLimitPart { value: String },
    #[error("split directive does not match the plan")]
    SplitMismatch,
    #[error("{repeated} does not fit inside the limit part of {host}")]
    AlphaTooBig { host: String, repeated: String },
    #[error("plan refers to chains outside its orientation")]
    OrientationMismatch,
    #[error("coloring failed: {0}")]
    Coloring(String),
    #[error("index {class}[{position}] has no valid image")]
    DanglingImage { class: String, position: u64 },
    #[error("index {class}[{position}] has no preimage")]
    NoPreimage { class: String, position: u64 },
    #[error("index {class}[{position}] cannot be partitioned into copies of its preimages")]
    CopyConstraint { class: String, position: u64 },
    #[error("no instantiated index has two preimages")]
    Injective,
}

impl From<ColoringError> for Rejection {
    fn from(e: ColoringError) -> Self {
        Rejection::Coloring(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub instantiated: usize,
    pub resolved: usize,
    pub max_preimages: usize,
}

/// Checks `plan` against `input` with `depth` instantiated positions per class.
pub fn verify_witness(
    input: WitnessInput<'_>,
    plan: &WitnessPlan,
    depth: usize,
) -> Result<VerifySummary, Rejection> {
    let converted;
    let family = match input {
        WitnessInput::Family(f) => f,
        WitnessInput::Nat(m) => {
            if !plan_limit_part(plan).is_zero() {
                return Err(Rejection::BadLimitPart {
                    value: plan_limit_part(plan).to_string(),
                });
            }
            converted = nat_as_family(m);
            &converted
        }
    };
    let depth = depth.max(4);
    let instance = match plan {
        WitnessPlan::MergeShift(p) => merge_shift_instance(family, p)?,
        WitnessPlan::SparseChain(p) => sparse_chain_instance(family, p)?,
        WitnessPlan::OrdinalShift(p) => ordinal_shift_instance(family, p)?,
    };
    check_instance(&instance, depth)
}

pub fn is_valid_witness(input: WitnessInput<'_>, plan: &WitnessPlan, depth: usize) -> bool {
    verify_witness(input, plan, depth).is_ok()
}

fn plan_limit_part(plan: &WitnessPlan) -> Ordinal {
    match plan {
        WitnessPlan::MergeShift(p) => p.limit_part.clone(),
        WitnessPlan::SparseChain(p) => p.limit_part.clone(),
        WitnessPlan::OrdinalShift(p) => p.host.limit_part(),
    }
}

/// A natural-number sequence as a family of finite chains.
pub fn nat_as_family(m: &NatMultiset) -> FamilyPresentation {
    let mut entries: Vec<ChainEntry> = m
        .singles
        .iter()
        .map(|(v, c)| ChainEntry::single(Orientation::Well, Ordinal::nat(*v), *c))
        .collect();
    entries.extend(m.progressions.iter().map(|p| {
        ChainEntry::progression(Orientation::Well, Ordinal::zero(), p.a, p.d, p.count_per_member)
    }));
    FamilyPresentation::new(entries)
}

fn count_of(family: &FamilyPresentation, value: &Ordinal, o: Orientation) -> Option<Count> {
    family.multiplicity(value, o)
}

fn require_repeated(family: &FamilyPresentation, value: &Ordinal, o: Orientation) -> Result<(), Rejection> {
    match count_of(family, value, o) {
        Some(Count::Inf) => Ok(()),
        _ => Err(Rejection::NotRepeated {
            value: value.to_string(),
        }),
    }
}

fn check_certificate(cert: &SemigroupCertificate, available: &[u64]) -> Result<(), Rejection> {
    if cert.sum() != Some(cert.target) || cert.addends() == 0 {
        return Err(Rejection::CertificateArithmetic {
            target: cert.target,
        });
    }
    for (g, c) in &cert.coefficients {
        if *c == 0 || !available.contains(g) {
            return Err(Rejection::ForeignGenerator {
                target: cert.target,
                generator: *g,
            });
        }
    }
    Ok(())
}

/// Finite tails `n >= 1` repeated infinitely often over `gamma`.
fn repeated_tails(family: &FamilyPresentation, gamma: &Ordinal, o: Orientation) -> Vec<u64> {
    family.tail_multiset(gamma, o).infinite_values()
}

// ---------------------------------------------------------------------------
// instantiated index maps

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Idx {
    class: usize,
    pos: u64,
}

type ValueFn = Box<dyn Fn(u64) -> Ordinal>;
type ImageFn = Box<dyn Fn(u64) -> Idx>;

struct Class {
    label: String,
    /// `None` for an infinite class.
    size: Option<u64>,
    value: ValueFn,
    image: ImageFn,
}

struct Instance {
    classes: Vec<Class>,
}

impl Instance {
    fn label(&self, idx: Idx) -> String {
        self.classes[idx.class].label.clone()
    }

    fn in_range(&self, idx: Idx) -> bool {
        match self.classes.get(idx.class) {
            Some(c) => c.size.is_none_or(|s| idx.pos < s),
            None => false,
        }
    }
}

fn check_instance(inst: &Instance, depth: usize) -> Result<VerifySummary, Rejection> {
    let depth = depth as u64;
    let mut preimages: HashMap<Idx, Vec<Idx>> = HashMap::new();
    let mut instantiated = 0usize;
    for (ci, class) in inst.classes.iter().enumerate() {
        let limit = class.size.map_or(depth, |s| s.min(depth));
        for pos in 0..limit {
            let idx = Idx { class: ci, pos };
            let img = (class.image)(pos);
            if !inst.in_range(img) {
                return Err(Rejection::DanglingImage {
                    class: class.label.clone(),
                    position: pos,
                });
            }
            preimages.entry(img).or_default().push(idx);
            instantiated += 1;
        }
    }

    // Lowest image position reachable from positions not instantiated.
    let mut horizon: Vec<u64> = vec![u64::MAX; inst.classes.len()];
    for class in &inst.classes {
        let end = class.size.map_or(2 * depth, |s| s.min(2 * depth));
        for pos in depth..end {
            let img = (class.image)(pos);
            if let Some(h) = horizon.get_mut(img.class) {
                *h = (*h).min(img.pos);
            }
        }
    }

    let mut copies = CopyChecker::default();
    let mut resolved = 0usize;
    let mut max_preimages = 0usize;
    for (ci, class) in inst.classes.iter().enumerate() {
        let limit = class.size.map_or(depth, |s| s.min(depth)).min(horizon[ci]);
        for pos in 0..limit {
            let idx = Idx { class: ci, pos };
            let pre = preimages.get(&idx).map(Vec::as_slice).unwrap_or(&[]);
            if pre.is_empty() {
                return Err(Rejection::NoPreimage {
                    class: inst.label(idx),
                    position: pos,
                });
            }
            let target = (class.value)(pos);
            let parts: Vec<Ordinal> = pre
                .iter()
                .map(|p| (inst.classes[p.class].value)(p.pos))
                .collect();
            if !copies.admits(&target, &parts) {
                return Err(Rejection::CopyConstraint {
                    class: inst.label(idx),
                    position: pos,
                });
            }
            resolved += 1;
            max_preimages = max_preimages.max(pre.len());
        }
    }
    if max_preimages < 2 {
        return Err(Rejection::Injective);
    }
    Ok(VerifySummary {
        instantiated,
        resolved,
        max_preimages,
    })
}

/// Decides whether a chain of type `target` can be partitioned into copies of
/// chains of types `parts`, for the partition shapes the plans use: a single
/// isomorphic copy; chains sharing the target's limit part whose finite tails
/// add up; or a copy of the target plus a chain that fits into its limit part.
#[derive(Default)]
struct CopyChecker {
    colorings: BTreeMap<(Ordinal, u64), bool>,
    prefixes: BTreeMap<(Ordinal, Ordinal), bool>,
}

impl CopyChecker {
    fn admits(&mut self, target: &Ordinal, parts: &[Ordinal]) -> bool {
        if parts.len() == 1 {
            return parts[0] == *target;
        }
        let dec = target.decompose();
        let same_limit = parts.iter().all(|p| p.limit_part() == dec.gamma);
        if same_limit {
            let tails: Option<u64> = parts
                .iter()
                .try_fold(0u64, |acc, p| acc.checked_add(p.finite_tail()));
            if tails == Some(dec.n) {
                return dec.gamma.is_zero() || self.split_into(&dec.gamma, parts.len() as u64);
            }
        }
        if let [x, y] = parts {
            let other = if x == target {
                Some(y)
            } else if y == target {
                Some(x)
            } else {
                None
            };
            if let Some(alpha) = other {
                return !alpha.is_zero() && *alpha <= dec.gamma && self.carve(&dec.gamma, alpha);
            }
        }
        false
    }

    fn split_into(&mut self, gamma: &Ordinal, pieces: u64) -> bool {
        *self
            .colorings
            .entry((gamma.clone(), pieces))
            .or_insert_with(|| {
                partition_limit(gamma, Colors::Finite(pieces))
                    .is_ok_and(|c| spot_check(&c))
            })
    }

    fn carve(&mut self, gamma: &Ordinal, alpha: &Ordinal) -> bool {
        *self
            .prefixes
            .entry((gamma.clone(), alpha.clone()))
            .or_insert_with(|| split_prefix(gamma, alpha).is_ok_and(|c| spot_check(&c)))
    }
}

/// Sample elements below `gamma`: the start of each block up to `gamma`'s
/// leading term, plus a few finite offsets.
fn samples_below(gamma: &Ordinal) -> Vec<Ordinal> {
    let mut bases = vec![Ordinal::zero()];
    let mut prefix = Ordinal::zero();
    for (e, c) in gamma.terms() {
        if e.is_zero() {
            break;
        }
        for k in 0..(*c).min(3) {
            bases.push(prefix.add(&Ordinal::monomial(e.clone(), k)));
        }
        prefix = prefix.add(&Ordinal::monomial(e.clone(), *c));
    }
    bases
        .into_iter()
        .filter(|b| b < gamma)
        .flat_map(|b| (0..8).map(move |m| b.plus_nat(m)))
        .filter(|x| x < gamma)
        .collect()
}

/// Rank and unrank agree on sampled elements and their images.
fn spot_check(c: &Coloring) -> bool {
    samples_below(c.gamma()).iter().all(|x| {
        let Ok((color, r)) = c.rank(x) else {
            return false;
        };
        c.unrank(color, &r).as_ref() == Ok(x)
    })
}

// ---------------------------------------------------------------------------
// schema checks and instances

fn merge_shift_instance(family: &FamilyPresentation, p: &MergeShift) -> Result<Instance, Rejection> {
    let o = p.orientation;
    let gamma = p.limit_part.clone();
    if !gamma.is_limit_or_zero() {
        return Err(Rejection::BadLimitPart {
            value: gamma.to_string(),
        });
    }
    if p.parts.target != p.target || p.target == 0 {
        return Err(Rejection::CertificateArithmetic { target: p.target });
    }
    if p.parts.coefficients.contains_key(&p.target) {
        return Err(Rejection::TargetAmongParts { target: p.target });
    }
    if p.donor_shifts != p.parts.coefficients {
        return Err(Rejection::DonorShiftMismatch);
    }
    let repeated = repeated_tails(family, &gamma, o);
    let others: Vec<u64> = repeated.iter().copied().filter(|v| *v != p.target).collect();
    check_certificate(&p.parts, &others)?;
    require_repeated(family, &gamma.plus_nat(p.target), o)?;
    for v in p.parts.coefficients.keys() {
        require_repeated(family, &gamma.plus_nat(*v), o)?;
    }

    let mut classes = Vec::new();
    let target_value = gamma.plus_nat(p.target);
    classes.push(Class {
        label: format!("target {target_value}"),
        size: None,
        value: Box::new(move |_| target_value.clone()),
        image: Box::new(|pos| Idx { class: 0, pos: pos + 1 }),
    });
    for (v, c) in &p.parts.coefficients {
        let class = classes.len();
        let c = *c;
        let value = gamma.plus_nat(*v);
        classes.push(Class {
            label: format!("part {value}"),
            size: None,
            value: Box::new(move |_| value.clone()),
            image: Box::new(move |pos| {
                if pos < c {
                    Idx { class: 0, pos: 0 }
                } else {
                    Idx { class, pos: pos - c }
                }
            }),
        });
    }
    Ok(Instance { classes })
}

/// Whether some progression entry of `family` contains every member `a + d*k`
/// over `gamma`.
fn provides_progression(family: &FamilyPresentation, gamma: &Ordinal, o: Orientation, a: u64, d: u64) -> bool {
    family.entries.iter().filter(|e| e.fits(o)).any(|e| match &e.shape {
        Shape::Progression(p) => {
            p.gamma == *gamma && d.is_multiple_of(p.d) && a >= p.a && (a - p.a).is_multiple_of(p.d)
        }
        Shape::Single { .. } => false,
    })
}

fn sparse_chain_instance(family: &FamilyPresentation, p: &SparseChain) -> Result<Instance, Rejection> {
    let o = p.orientation;
    let gamma = p.limit_part.clone();
    if !gamma.is_limit_or_zero() {
        return Err(Rejection::BadLimitPart {
            value: gamma.to_string(),
        });
    }
    if p.source_a == 0 || p.source_d == 0 || p.stride == 0 {
        return Err(Rejection::Degenerate("zero progression start, step, or stride".into()));
    }
    if !provides_progression(family, &gamma, o, p.source_a, p.source_d) {
        return Err(Rejection::MissingProgression {
            a: p.source_a,
            d: p.source_d,
        });
    }
    let k = repeated_tails(family, &gamma, o);
    let actual = gcd_all(&k).unwrap_or(0);
    if p.g != actual {
        return Err(Rejection::WrongGcd {
            claimed: p.g,
            actual,
        });
    }
    let first = p.target_tail(0);
    let gap = p.source_d * p.stride;
    if p.init_cert.target != first {
        return Err(Rejection::CertificateArithmetic { target: first });
    }
    if p.step_cert.target != gap {
        return Err(Rejection::CertificateArithmetic { target: gap });
    }
    check_certificate(&p.init_cert, &k)?;
    check_certificate(&p.step_cert, &k)?;
    for value in [first, gap] {
        if value % p.g != 0 {
            return Err(Rejection::NotDivisible { g: p.g, value });
        }
    }
    let doubled: BTreeSet<u64> = p.step_cert.coefficients.keys().copied().collect();
    if doubled != p.donor_doubling {
        return Err(Rejection::DoublingMismatch);
    }
    for v in p.init_cert.coefficients.keys().chain(p.step_cert.coefficients.keys()) {
        require_repeated(family, &gamma.plus_nat(*v), o)?;
    }

    let mut classes = Vec::new();
    let plan = p.clone();
    let base = gamma.clone();
    classes.push(Class {
        label: "progression targets".into(),
        size: None,
        value: Box::new(move |m| base.plus_nat(plan.target_tail(m))),
        image: Box::new(|m| Idx { class: 0, pos: m + 1 }),
    });
    let donors: BTreeSet<u64> = p
        .init_cert
        .coefficients
        .keys()
        .chain(p.step_cert.coefficients.keys())
        .copied()
        .collect();
    for v in donors {
        let class = classes.len();
        let ci = p.init_cert.coefficients.get(&v).copied().unwrap_or(0);
        let cs = p.step_cert.coefficients.get(&v).copied().unwrap_or(0);
        let value = gamma.plus_nat(v);
        let image: ImageFn = if cs > 0 {
            Box::new(move |pos| {
                if pos % 2 == 0 {
                    return Idx { class, pos: pos / 2 };
                }
                let free = pos / 2;
                if free < ci {
                    Idx { class: 0, pos: 0 }
                } else {
                    Idx {
                        class: 0,
                        pos: 1 + (free - ci) / cs,
                    }
                }
            })
        } else {
            Box::new(move |pos| {
                if pos < ci {
                    Idx { class: 0, pos: 0 }
                } else {
                    Idx { class, pos: pos - ci }
                }
            })
        };
        classes.push(Class {
            label: format!("donor {value}"),
            size: None,
            value: Box::new(move |_| value.clone()),
            image,
        });
    }
    Ok(Instance { classes })
}

fn ordinal_shift_instance(family: &FamilyPresentation, p: &OrdinalShift) -> Result<Instance, Rejection> {
    let o = p.orientation;
    if p.repeated.is_zero() || p.host.is_zero() {
        return Err(Rejection::Degenerate("zero chain type".into()));
    }
    let host_gamma = p.host.limit_part();
    if p.split.gamma != host_gamma || p.split.alpha != p.repeated {
        return Err(Rejection::SplitMismatch);
    }
    if p.repeated > host_gamma {
        return Err(Rejection::AlphaTooBig {
            host: p.host.to_string(),
            repeated: p.repeated.to_string(),
        });
    }
    for value in [&p.host, &p.repeated] {
        let finite = value.is_finite();
        let fits = finite || family.entries.iter().any(|e| e.orientation == o && !e.is_finite_chain());
        if !fits {
            return Err(Rejection::OrientationMismatch);
        }
    }
    if count_of(family, &p.host, o).is_none() {
        return Err(Rejection::Absent {
            value: p.host.to_string(),
        });
    }
    require_repeated(family, &p.repeated, o)?;
    split_prefix(&host_gamma, &p.repeated)?;

    let host = p.host.clone();
    let repeated = p.repeated.clone();
    let classes = vec![
        Class {
            label: format!("host {host}"),
            size: Some(1),
            value: Box::new(move |_| host.clone()),
            image: Box::new(|_| Idx { class: 0, pos: 0 }),
        },
        Class {
            label: format!("repeated {repeated}"),
            size: None,
            value: Box::new(move |_| repeated.clone()),
            image: Box::new(|pos| {
                if pos == 0 {
                    Idx { class: 0, pos: 0 }
                } else {
                    Idx { class: 1, pos: pos - 1 }
                }
            }),
        },
    ];
    Ok(Instance { classes })
}
