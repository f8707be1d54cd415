//! Reversibility of sequences of positive integers and of cardinals.
//!
//! A sequence is reversible when no non-injective surjection of its index set
//! makes every value the sum of the values mapped onto it. For a finitely
//! presented multiset this reduces to a check on `K`, the set of values that
//! occur infinitely often: `K` must be independent (no member is a sum of the
//! others) and, unless `K` is empty, `gcd(K)` may divide only finitely many
//! of the distinct values present.

use std::collections::{BTreeMap, BinaryHeap};
use std::cmp::Reverse;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::NatError;
use crate::family::Count;

/// `{a + d*k : k in w}`, each member `count_per_member` times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NatProgression {
    pub a: u64,
    pub d: u64,
    pub count_per_member: u64,
}

impl NatProgression {
    pub fn new(a: u64, d: u64, count_per_member: u64) -> Self {
        NatProgression {
            a,
            d,
            count_per_member,
        }
    }

    pub fn member(&self, k: u64) -> u64 {
        self.a + self.d * k
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.a && (n - self.a).is_multiple_of(self.d)
    }

    /// Whether infinitely many members are multiples of `g`.
    pub fn hits_multiples_of(&self, g: u64) -> bool {
        self.a.is_multiple_of(self.d.gcd(&g))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NatMultiset {
    pub singles: Vec<(u64, Count)>,
    pub progressions: Vec<NatProgression>,
}

impl NatMultiset {
    pub fn new(
        singles: Vec<(u64, Count)>,
        progressions: Vec<NatProgression>,
    ) -> Result<Self, NatError> {
        let mut m = NatMultiset {
            singles,
            progressions,
        };
        m.validate()?;
        m.merge_singles();
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), NatError> {
        for (v, c) in &self.singles {
            if *v == 0 {
                return Err(NatError::ZeroValue);
            }
            if !c.is_valid() {
                return Err(NatError::InvalidCount);
            }
        }
        for p in &self.progressions {
            if p.a == 0 {
                return Err(NatError::ZeroValue);
            }
            if p.d == 0 {
                return Err(NatError::InvalidStep);
            }
            if p.count_per_member == 0 {
                return Err(NatError::InvalidCount);
            }
        }
        Ok(())
    }

    /// Sorts singles by value and merges repeated values.
    pub fn merge_singles(&mut self) {
        let mut merged: BTreeMap<u64, Count> = BTreeMap::new();
        for (v, c) in self.singles.drain(..) {
            let slot = merged.entry(v).or_insert(Count::Fin(0));
            *slot = slot.sum(c);
        }
        self.singles = merged.into_iter().collect();
    }

    pub fn is_empty(&self) -> bool {
        self.singles.is_empty() && self.progressions.is_empty()
    }

    /// Values occurring infinitely often. Progressions never contribute.
    pub fn infinite_values(&self) -> Vec<u64> {
        let mut k: Vec<u64> = self
            .singles
            .iter()
            .filter(|(_, c)| c.is_infinite())
            .map(|(v, _)| *v)
            .collect();
        k.sort_unstable();
        k.dedup();
        k
    }

    /// Number of indices carrying value `n`.
    pub fn count_of(&self, n: u64) -> Option<Count> {
        let mut total = None;
        for (v, c) in &self.singles {
            if *v == n {
                total = Count::accumulate(total, *c);
            }
        }
        for p in &self.progressions {
            if p.contains(n) {
                total = Count::accumulate(total, Count::Fin(p.count_per_member));
            }
        }
        total
    }

    /// Whether the index set is infinite.
    pub fn is_infinite(&self) -> bool {
        !self.progressions.is_empty() || self.singles.iter().any(|(_, c)| c.is_infinite())
    }
}

/// `target = sum(coefficient * generator)` with at least one addend.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemigroupCertificate {
    pub target: u64,
    #[serde(with = "u64_map")]
    pub coefficients: BTreeMap<u64, u64>,
}

/// Serde for `u64`-keyed maps that also accepts keys written as strings,
/// as they arrive inside internally tagged enums.
pub(crate) mod u64_map {
    use std::collections::BTreeMap;
    use std::fmt;

    use serde::de::{self, MapAccess, Visitor};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(map: &BTreeMap<u64, u64>, s: S) -> Result<S::Ok, S::Error> {
        map.serialize(s)
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Key {
        Num(u64),
        Text(String),
    }

    struct MapVisitor;

    impl<'de> Visitor<'de> for MapVisitor {
        type Value = BTreeMap<u64, u64>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a map with unsigned integer keys")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
            let mut out = BTreeMap::new();
            while let Some((key, value)) = access.next_entry::<Key, u64>()? {
                let key = match key {
                    Key::Num(n) => n,
                    Key::Text(t) => t
                        .parse()
                        .map_err(|_| de::Error::invalid_value(de::Unexpected::Str(&t), &self))?,
                };
                out.insert(key, value);
            }
            Ok(out)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u64, u64>, D::Error> {
        d.deserialize_map(MapVisitor)
    }
}

impl SemigroupCertificate {
    pub fn sum(&self) -> Option<u64> {
        self.coefficients
            .iter()
            .try_fold(0u64, |acc, (g, c)| acc.checked_add(g.checked_mul(*c)?))
    }

    pub fn addends(&self) -> u64 {
        self.coefficients.values().sum()
    }

    /// Checks the arithmetic and that only generators from `gens` are used.
    pub fn is_valid_over(&self, gens: &[u64]) -> bool {
        self.addends() >= 1
            && self.sum() == Some(self.target)
            && self
                .coefficients
                .iter()
                .all(|(g, c)| *c >= 1 && gens.contains(g))
    }
}

const DP_LIMIT: u64 = 1 << 20;

/// Certificate that `n` lies in the additive semigroup generated by `gens`
/// (empty sum excluded), or `None`.
pub fn semigroup_member(n: u64, gens: &[u64]) -> Option<SemigroupCertificate> {
    let mut gens: Vec<u64> = gens.iter().copied().filter(|g| *g >= 1 && *g <= n).collect();
    gens.sort_unstable();
    gens.dedup();
    if n == 0 || gens.is_empty() {
        return None;
    }
    if n <= DP_LIMIT {
        member_by_table(n, &gens)
    } else if gens[0] <= DP_LIMIT {
        member_by_residues(n, &gens)
    } else {
        member_by_search(n, &gens)
    }
}

/// Reachability table over `0..=n`, remembering the last generator used.
fn member_by_table(n: u64, gens: &[u64]) -> Option<SemigroupCertificate> {
    let len = n as usize + 1;
    let mut last: Vec<u64> = vec![0; len];
    let mut reach = vec![false; len];
    reach[0] = true;
    for v in 1..len {
        for &g in gens {
            let g = g as usize;
            if g > v {
                break;
            }
            if reach[v - g] {
                reach[v] = true;
                last[v] = g as u64;
                break;
            }
        }
    }
    if !reach[n as usize] {
        return None;
    }
    let mut coefficients = BTreeMap::new();
    let mut v = n as usize;
    while v > 0 {
        let g = last[v];
        *coefficients.entry(g).or_insert(0) += 1;
        v -= g as usize;
    }
    Some(SemigroupCertificate {
        target: n,
        coefficients,
    })
}

/// Shortest representable value in each residue class modulo the smallest
/// generator; `n` is representable iff it is at least that value.
fn member_by_residues(n: u64, gens: &[u64]) -> Option<SemigroupCertificate> {
    let m = gens[0];
    let classes = m as usize;
    let mut dist: Vec<Option<u64>> = vec![None; classes];
    let mut via: Vec<u64> = vec![0; classes];
    dist[0] = Some(0);
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if dist[r] != Some(d) {
            continue;
        }
        for &g in &gens[1..] {
            let nd = d + g;
            let nr = ((r as u64 + g) % m) as usize;
            if dist[nr].is_none_or(|old| nd < old) {
                dist[nr] = Some(nd);
                via[nr] = g;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    let r = (n % m) as usize;
    let base = dist[r].filter(|&b| b <= n)?;
    let mut coefficients = BTreeMap::new();
    let mut cur = r;
    let mut remaining = base;
    while remaining > 0 {
        let g = via[cur];
        *coefficients.entry(g).or_insert(0) += 1;
        remaining -= g;
        cur = ((cur as u64 + m - g % m) % m) as usize;
    }
    if n > base {
        *coefficients.entry(m).or_insert(0) += (n - base) / m;
    }
    Some(SemigroupCertificate {
        target: n,
        coefficients,
    })
}

/// Depth-first search over coefficients, largest generator first.
fn member_by_search(n: u64, gens: &[u64]) -> Option<SemigroupCertificate> {
    fn go(rest: u64, gens: &[u64], acc: &mut BTreeMap<u64, u64>) -> bool {
        if rest == 0 {
            return true;
        }
        let Some((&g, smaller)) = gens.split_last() else {
            return false;
        };
        for c in (0..=rest / g).rev() {
            if c > 0 {
                acc.insert(g, c);
            }
            if go(rest - c * g, smaller, acc) {
                return true;
            }
            acc.remove(&g);
        }
        false
    }
    let mut coefficients = BTreeMap::new();
    go(n, gens, &mut coefficients).then_some(SemigroupCertificate {
        target: n,
        coefficients,
    })
}

/// The first member of `k` (ascending) that is a sum of the others.
pub fn find_dependence(k: &[u64]) -> Option<SemigroupCertificate> {
    let mut sorted = k.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.iter().find_map(|&n| {
        let others: Vec<u64> = sorted.iter().copied().filter(|&g| g != n).collect();
        semigroup_member(n, &others)
    })
}

pub fn is_independent(k: &[u64]) -> bool {
    find_dependence(k).is_none()
}

/// Greatest common divisor of a nonempty set.
pub fn gcd_all(values: &[u64]) -> Option<u64> {
    values.iter().copied().reduce(|a, b| a.gcd(&b))
}

/// The first progression of `m` with infinitely many members divisible by `g`.
pub fn infinite_multiples_source(g: u64, m: &NatMultiset) -> Option<NatProgression> {
    m.progressions.iter().copied().find(|p| p.hits_multiples_of(g))
}

/// Whether infinitely many distinct values of `m` are divisible by `g`.
pub fn divides_infinitely_many(g: u64, m: &NatMultiset) -> bool {
    infinite_multiples_source(g, m).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NatFailure {
    /// A member of `K` is a sum of other members.
    Dependent { certificate: SemigroupCertificate },
    /// `gcd(K)` divides infinitely many members of a progression.
    GcdDividesInfinitely { g: u64, progression: NatProgression },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatVerdict {
    pub reversible: bool,
    #[serde(rename = "K")]
    pub k: Vec<u64>,
    pub failure: Option<NatFailure>,
}

impl NatVerdict {
    /// Whether the sequence is finite-to-one (`K` empty).
    pub fn finite_to_one(&self) -> bool {
        self.k.is_empty()
    }
}

pub fn decide_nat_reversible(m: &NatMultiset) -> NatVerdict {
    let k = m.infinite_values();
    if k.is_empty() {
        return NatVerdict {
            reversible: true,
            k,
            failure: None,
        };
    }
    if let Some(certificate) = find_dependence(&k) {
        return NatVerdict {
            reversible: false,
            k,
            failure: Some(NatFailure::Dependent { certificate }),
        };
    }
    let g = gcd_all(&k).expect("K is nonempty");
    if let Some(progression) = infinite_multiples_source(g, m) {
        return NatVerdict {
            reversible: false,
            k,
            failure: Some(NatFailure::GcdDividesInfinitely { g, progression }),
        };
    }
    NatVerdict {
        reversible: true,
        k,
        failure: None,
    }
}

/// A nonzero cardinal: finite, or the infinite cardinal with the given aleph index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CardinalValue {
    Fin(u64),
    Aleph(u32),
}

/// A finitely presented sequence of nonzero cardinals. Progressions contribute
/// finite values only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CardinalMultiset {
    pub singles: Vec<(CardinalValue, Count)>,
    pub progressions: Vec<NatProgression>,
}

impl CardinalMultiset {
    pub fn from_singles(singles: Vec<(CardinalValue, Count)>) -> Self {
        CardinalMultiset {
            singles,
            progressions: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CardinalVerdict {
    pub reversible: bool,
    pub finite_to_one: bool,
    /// Present when every value is finite.
    pub nat: Option<NatVerdict>,
}

/// A cardinal sequence is reversible iff it is finite-to-one or it is a
/// reversible sequence of natural numbers.
pub fn decide_cardinal_reversible(seq: &CardinalMultiset) -> Result<CardinalVerdict, NatError> {
    let mut merged: BTreeMap<CardinalValue, Count> = BTreeMap::new();
    for (v, c) in &seq.singles {
        if *v == CardinalValue::Fin(0) {
            return Err(NatError::ZeroValue);
        }
        if !c.is_valid() {
            return Err(NatError::InvalidCount);
        }
        let slot = merged.entry(*v).or_insert(Count::Fin(0));
        *slot = slot.sum(*c);
    }
    let finite_to_one = merged.values().all(|c| c.is_finite());
    let all_finite = merged.keys().all(|v| matches!(v, CardinalValue::Fin(_)));
    let nat = if all_finite {
        let singles = merged
            .iter()
            .map(|(v, c)| match v {
                CardinalValue::Fin(n) => (*n, *c),
                CardinalValue::Aleph(_) => unreachable!(),
            })
            .collect();
        let m = NatMultiset::new(singles, seq.progressions.clone())?;
        Some(decide_nat_reversible(&m))
    } else {
        None
    };
    let reversible = finite_to_one || nat.as_ref().is_some_and(|v| v.reversible);
    Ok(CardinalVerdict {
        reversible,
        finite_to_one,
        nat,
    })
}
