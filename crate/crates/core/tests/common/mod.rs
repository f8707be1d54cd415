#![allow(dead_code)]

use ordrev::family::{ChainEntry, Count, FamilyPresentation, Orientation, Shape};
use ordrev::natrev::{CardinalMultiset, CardinalValue, NatProgression};
use ordrev::ordinal::Ordinal;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const CORPUS_SEED: u64 = 0x0dd5_eed5;
pub const CORPUS_SIZE: usize = 10_000;

/// A limit-or-zero ordinal with exponents at most 2.
pub fn random_limit(rng: &mut impl Rng) -> Ordinal {
    let mut terms = Vec::new();
    for e in [2u64, 1] {
        let c = rng.gen_range(0..=2u64);
        if c > 0 && rng.gen_bool(0.6) {
            terms.push((Ordinal::nat(e), c));
        }
    }
    Ordinal::from_terms(terms).expect("decreasing exponents")
}

pub fn random_count(rng: &mut impl Rng) -> Count {
    if rng.gen_bool(0.45) {
        Count::Inf
    } else {
        Count::Fin(rng.gen_range(1..=3))
    }
}

fn random_single(rng: &mut impl Rng, o: Orientation) -> ChainEntry {
    let gamma = random_limit(rng);
    let lo = if gamma.is_zero() { 1 } else { 0 };
    let n = rng.gen_range(lo..=12);
    ChainEntry::single(o, gamma.plus_nat(n), random_count(rng))
}

fn random_progression(rng: &mut impl Rng, o: Orientation) -> ChainEntry {
    let gamma = random_limit(rng);
    let lo = if gamma.is_zero() { 1 } else { 0 };
    ChainEntry::progression(
        o,
        gamma,
        rng.gen_range(lo..=12),
        rng.gen_range(1..=6),
        rng.gen_range(1..=2),
    )
}

/// A normalized family with at most 6 singles and 2 progressions. Infinite
/// chains all share `o` unless `mixed`, in which case each picks one.
pub fn random_family(rng: &mut impl Rng, o: Orientation, mixed: bool) -> FamilyPresentation {
    loop {
        let pick = |rng: &mut dyn rand::RngCore| {
            if mixed && rng.gen_bool(0.5) {
                o.opposite()
            } else {
                o
            }
        };
        let mut entries = Vec::new();
        for _ in 0..rng.gen_range(0..=6) {
            let oi = pick(rng);
            entries.push(random_single(rng, oi));
        }
        for _ in 0..rng.gen_range(0..=2) {
            let oi = pick(rng);
            entries.push(random_progression(rng, oi));
        }
        if let Ok(f) = FamilyPresentation::new(entries).normalize() {
            return f;
        }
    }
}

/// The single-orientation corpus: 10^4 families, a fifth of them reversed.
pub fn corpus() -> Vec<(FamilyPresentation, Orientation)> {
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE)
        .map(|i| {
            let o = if i % 5 == 4 {
                Orientation::Reversed
            } else {
                Orientation::Well
            };
            (random_family(&mut rng, o, false), o)
        })
        .collect()
}

/// Families mixing both orientations.
pub fn mixed_corpus(n: usize) -> Vec<FamilyPresentation> {
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED ^ 0xa5a5);
    (0..n)
        .map(|_| random_family(&mut rng, Orientation::Well, true))
        .collect()
}

/// A random nonempty sub-presentation: counts reduced, entries dropped, and
/// progressions thinned to a sub-progression plus a finite set of members.
pub fn random_subfamily(rng: &mut impl Rng, p: &FamilyPresentation) -> FamilyPresentation {
    loop {
        let mut entries = Vec::new();
        for e in &p.entries {
            if rng.gen_bool(0.3) {
                continue;
            }
            match &e.shape {
                Shape::Single { value, count } => {
                    let count = match count {
                        Count::Inf if rng.gen_bool(0.5) => Count::Inf,
                        Count::Inf => Count::Fin(rng.gen_range(1..=5)),
                        Count::Fin(c) => Count::Fin(rng.gen_range(1..=*c)),
                    };
                    entries.push(ChainEntry::single(e.orientation, value.clone(), count));
                }
                Shape::Progression(pr) => {
                    for k in 0..rng.gen_range(0..=3u64) {
                        if rng.gen_bool(0.5) {
                            let c = rng.gen_range(1..=pr.count_per_member);
                            entries.push(ChainEntry::single(e.orientation, pr.member(k), Count::Fin(c)));
                        }
                    }
                    if rng.gen_bool(0.7) {
                        let skip = rng.gen_range(3..=5);
                        let thin = rng.gen_range(1..=3);
                        entries.push(ChainEntry::progression(
                            e.orientation,
                            pr.gamma.clone(),
                            pr.a + pr.d * skip,
                            pr.d * thin,
                            rng.gen_range(1..=pr.count_per_member),
                        ));
                    }
                }
            }
        }
        if let Ok(f) = FamilyPresentation::new(entries).normalize() {
            return f;
        }
    }
}

/// The cardinalities of the chains of `p`.
pub fn cardinal_sequence(p: &FamilyPresentation) -> CardinalMultiset {
    let mut out = CardinalMultiset::default();
    for e in &p.entries {
        match &e.shape {
            Shape::Single { value, count } => {
                let v = match value.as_nat() {
                    Some(n) => CardinalValue::Fin(n),
                    None => CardinalValue::Aleph(0),
                };
                out.singles.push((v, *count));
            }
            Shape::Progression(pr) if pr.gamma.is_zero() => {
                out.progressions
                    .push(NatProgression::new(pr.a, pr.d, pr.count_per_member));
            }
            Shape::Progression(_) => out.singles.push((CardinalValue::Aleph(0), Count::Inf)),
        }
    }
    out
}

/// The family of nonzero limit parts, and whether infinitely many chains are
/// finite.
pub fn limit_family(p: &FamilyPresentation) -> (Option<FamilyPresentation>, bool) {
    let mut entries = Vec::new();
    let mut finite_inf = false;
    for e in &p.entries {
        let gamma = e.limit_part();
        let infinite_class = match &e.shape {
            Shape::Single { count, .. } => *count == Count::Inf,
            Shape::Progression(_) => true,
        };
        if gamma.is_zero() {
            finite_inf |= infinite_class;
        } else {
            let count = if infinite_class {
                Count::Inf
            } else {
                match &e.shape {
                    Shape::Single { count, .. } => *count,
                    Shape::Progression(_) => unreachable!(),
                }
            };
            entries.push(ChainEntry::single(e.orientation, gamma, count));
        }
    }
    let f = FamilyPresentation::new(entries).normalize().ok();
    (f, finite_inf)
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
