//! Finite presentations of indexed families of well orders and reversed well
//! orders.
//!
//! A family is a multiset of chain types. Each [`ChainEntry`] is either a
//! single type with a (possibly infinite) multiplicity, or a progression
//! `{gamma + (a + d*k) : k in w}` whose members each occur a fixed finite
//! number of times. Finite chains are their own reverses, so normalization
//! files every finite entry under [`Orientation::Well`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::FamilyError;
use crate::natrev::{NatMultiset, NatProgression};
use crate::ordinal::Ordinal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "W")]
    Well,
    #[serde(rename = "Wstar")]
    Reversed,
}

impl Orientation {
    pub fn keyword(self) -> &'static str {
        match self {
            Orientation::Well => "wo",
            Orientation::Reversed => "rwo",
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Orientation::Well => Orientation::Reversed,
            Orientation::Reversed => Orientation::Well,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Well => write!(f, "W"),
            Orientation::Reversed => write!(f, "Wstar"),
        }
    }
}

/// Size of an index class. Every infinite cardinal collapses to `Inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Count {
    Fin(u64),
    Inf,
}

impl Count {
    pub fn fin(k: u64) -> Option<Count> {
        (k >= 1).then_some(Count::Fin(k))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Count::Inf)
    }

    pub fn is_finite(self) -> bool {
        !self.is_infinite()
    }

    pub fn is_valid(self) -> bool {
        !matches!(self, Count::Fin(0))
    }

    pub fn sum(self, other: Count) -> Count {
        match (self, other) {
            (Count::Fin(a), Count::Fin(b)) => {
                Count::Fin(a.checked_add(b).expect("count overflow"))
            }
            _ => Count::Inf,
        }
    }

    /// Adds to an optional count, treating `None` as zero.
    pub fn accumulate(acc: Option<Count>, add: Count) -> Option<Count> {
        Some(match acc {
            Some(c) => c.sum(add),
            None => add,
        })
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Fin(k) => write!(f, "{k}"),
            Count::Inf => write!(f, "inf"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Count::Fin(k) => serializer.serialize_u64(*k),
            Count::Inf => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(k) => {
                Count::fin(k).ok_or_else(|| serde::de::Error::custom("count must be >= 1"))
            }
            Raw::Text(t) if t == "inf" => Ok(Count::Inf),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad count {t:?}"))),
        }
    }
}

/// `{gamma + (a + d*k) : k in w}`, each member `count_per_member` times.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Progression {
    pub gamma: Ordinal,
    pub a: u64,
    pub d: u64,
    pub count_per_member: u64,
}

impl Progression {
    pub fn new(gamma: Ordinal, a: u64, d: u64, count_per_member: u64) -> Self {
        Progression {
            gamma,
            a,
            d,
            count_per_member,
        }
    }

    pub fn member_tail(&self, k: u64) -> u64 {
        self.a + self.d * k
    }

    pub fn member(&self, k: u64) -> Ordinal {
        self.gamma.plus_nat(self.member_tail(k))
    }

    /// Whether the finite tail `n` (over this progression's limit part) is a member.
    pub fn contains_tail(&self, n: u64) -> bool {
        n >= self.a && (n - self.a).is_multiple_of(self.d)
    }

    pub fn contains(&self, value: &Ordinal) -> bool {
        let dec = value.decompose();
        dec.gamma == self.gamma && self.contains_tail(dec.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    Single { value: Ordinal, count: Count },
    Progression(Progression),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChainEntry {
    pub orientation: Orientation,
    pub shape: Shape,
}

impl ChainEntry {
    pub fn single(orientation: Orientation, value: Ordinal, count: Count) -> Self {
        ChainEntry {
            orientation,
            shape: Shape::Single { value, count },
        }
    }

    pub fn progression(
        orientation: Orientation,
        gamma: Ordinal,
        a: u64,
        d: u64,
        count_per_member: u64,
    ) -> Self {
        ChainEntry {
            orientation,
            shape: Shape::Progression(Progression::new(gamma, a, d, count_per_member)),
        }
    }

    /// Whether every chain of this entry is finite.
    pub fn is_finite_chain(&self) -> bool {
        match &self.shape {
            Shape::Single { value, .. } => value.is_finite(),
            Shape::Progression(p) => p.gamma.is_zero(),
        }
    }

    /// Limit part shared by all chains of this entry.
    pub fn limit_part(&self) -> Ordinal {
        match &self.shape {
            Shape::Single { value, .. } => value.limit_part(),
            Shape::Progression(p) => p.gamma.clone(),
        }
    }

    /// Whether this entry can occur in a family of the given orientation.
    pub fn fits(&self, orientation: Orientation) -> bool {
        self.is_finite_chain() || self.orientation == orientation
    }

    /// Representative chain type (the first member for progressions).
    pub fn representative(&self) -> Ordinal {
        match &self.shape {
            Shape::Single { value, .. } => value.clone(),
            Shape::Progression(p) => p.member(0),
        }
    }

    pub fn validate(&self, entry: usize) -> Result<(), FamilyError> {
        match &self.shape {
            Shape::Single { value, count } => {
                if value.is_zero() {
                    return Err(FamilyError::ZeroOrdinal { entry });
                }
                if !count.is_valid() {
                    return Err(FamilyError::InvalidCount { entry });
                }
            }
            Shape::Progression(p) => {
                if !p.gamma.is_limit_or_zero() {
                    return Err(FamilyError::NotLimitPart {
                        entry,
                        gamma: p.gamma.clone(),
                    });
                }
                if p.gamma.is_zero() && p.a == 0 {
                    return Err(FamilyError::ZeroOrdinal { entry });
                }
                if p.d == 0 {
                    return Err(FamilyError::InvalidStep { entry });
                }
                if p.count_per_member == 0 {
                    return Err(FamilyError::InvalidCount { entry });
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyPresentation {
    pub entries: Vec<ChainEntry>,
}

/// The partition of a family into its well-order part and reversed part.
/// Finite chains belong to both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationSplit {
    pub well: FamilyPresentation,
    pub reversed: FamilyPresentation,
    pub has_infinite_well: bool,
    pub has_infinite_reversed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyStats {
    pub limit_parts: BTreeSet<Ordinal>,
    pub gamma_star: Ordinal,
    pub finite_to_one: bool,
    pub split: OrientationSplit,
}

impl FamilyPresentation {
    pub fn new(entries: Vec<ChainEntry>) -> Self {
        FamilyPresentation { entries }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        self.entries
            .iter()
            .enumerate()
            .try_for_each(|(i, e)| e.validate(i))
    }

    /// Merges duplicate entries and sorts into canonical order.
    pub fn normalize(&self) -> Result<FamilyPresentation, FamilyError> {
        if self.entries.is_empty() {
            return Err(FamilyError::EmptyFamily);
        }
        self.validate()?;

        let mut singles: BTreeMap<(Orientation, Ordinal), Count> = BTreeMap::new();
        let mut progressions: BTreeMap<(Orientation, Ordinal, u64, u64), u64> = BTreeMap::new();
        for entry in &self.entries {
            let orientation = if entry.is_finite_chain() {
                Orientation::Well
            } else {
                entry.orientation
            };
            match &entry.shape {
                Shape::Single { value, count } => {
                    let slot = singles.entry((orientation, value.clone())).or_insert(Count::Fin(0));
                    *slot = slot.sum(*count);
                }
                Shape::Progression(p) => {
                    *progressions
                        .entry((orientation, p.gamma.clone(), p.a, p.d))
                        .or_insert(0) += p.count_per_member;
                }
            }
        }

        let mut entries: Vec<ChainEntry> = singles
            .into_iter()
            .map(|((o, value), count)| ChainEntry::single(o, value, count))
            .chain(
                progressions
                    .into_iter()
                    .map(|((o, gamma, a, d), c)| ChainEntry::progression(o, gamma, a, d, c)),
            )
            .collect();
        entries.sort();
        Ok(FamilyPresentation { entries })
    }

    /// Number of indices whose chain is isomorphic to `alpha` (reversed when
    /// `orientation` is reversed). `None` when there are none.
    pub fn multiplicity(&self, alpha: &Ordinal, orientation: Orientation) -> Option<Count> {
        let mut total = None;
        for entry in self.entries.iter().filter(|e| e.fits(orientation)) {
            match &entry.shape {
                Shape::Single { value, count } if value == alpha => {
                    total = Count::accumulate(total, *count);
                }
                Shape::Progression(p) if p.contains(alpha) => {
                    total = Count::accumulate(total, Count::Fin(p.count_per_member));
                }
                _ => {}
            }
        }
        total
    }

    /// Finite tails `n >= 1` of the chains with limit part exactly `gamma`.
    pub fn tail_multiset(&self, gamma: &Ordinal, orientation: Orientation) -> NatMultiset {
        let mut out = NatMultiset::default();
        for entry in self.entries.iter().filter(|e| e.fits(orientation)) {
            match &entry.shape {
                Shape::Single { value, count } => {
                    let dec = value.decompose();
                    if dec.gamma == *gamma && dec.n >= 1 {
                        out.singles.push((dec.n, *count));
                    }
                }
                Shape::Progression(p) if p.gamma == *gamma => {
                    let a = if p.a == 0 { p.d } else { p.a };
                    out.progressions
                        .push(NatProgression::new(a, p.d, p.count_per_member));
                }
                Shape::Progression(_) => {}
            }
        }
        out.merge_singles();
        out
    }

    /// Number of indices whose chain is exactly `gamma` (no finite tail).
    pub fn limit_class_count(&self, gamma: &Ordinal, orientation: Orientation) -> Option<Count> {
        if gamma.is_zero() {
            return None;
        }
        self.multiplicity(gamma, orientation)
    }

    pub fn limit_parts(&self) -> BTreeSet<Ordinal> {
        self.entries.iter().map(ChainEntry::limit_part).collect()
    }

    pub fn finite_to_one(&self) -> bool {
        self.entries
            .iter()
            .all(|e| !matches!(e.shape, Shape::Single { count: Count::Inf, .. }))
    }

    pub fn has_infinite(&self, orientation: Orientation) -> bool {
        self.entries
            .iter()
            .any(|e| !e.is_finite_chain() && e.orientation == orientation)
    }

    pub fn split(&self) -> OrientationSplit {
        let part = |o: Orientation| FamilyPresentation {
            entries: self.entries.iter().filter(|e| e.fits(o)).cloned().collect(),
        };
        OrientationSplit {
            well: part(Orientation::Well),
            reversed: part(Orientation::Reversed),
            has_infinite_well: self.has_infinite(Orientation::Well),
            has_infinite_reversed: self.has_infinite(Orientation::Reversed),
        }
    }

    pub fn stats(&self) -> Result<FamilyStats, FamilyError> {
        let limit_parts = self.limit_parts();
        let gamma_star = limit_parts
            .iter()
            .next_back()
            .cloned()
            .ok_or(FamilyError::EmptyFamily)?;
        Ok(FamilyStats {
            gamma_star,
            finite_to_one: self.finite_to_one(),
            split: self.split(),
            limit_parts,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::mixed_tails;

    fn w() -> Ordinal {
        Ordinal::omega()
    }

    fn wo(value: Ordinal, count: Count) -> ChainEntry {
        ChainEntry::single(Orientation::Well, value, count)
    }

    fn rwo(value: Ordinal, count: Count) -> ChainEntry {
        ChainEntry::single(Orientation::Reversed, value, count)
    }

    #[test]
    fn normalize_adds_counts() {
        let p = FamilyPresentation::new(vec![wo(w(), Count::Fin(3)), wo(w(), Count::Fin(11))]);
        assert_eq!(p.normalize().unwrap().entries, vec![wo(w(), Count::Fin(14))]);
    }

    #[test]
    fn normalize_inf_absorbs() {
        let p = FamilyPresentation::new(vec![
            wo(w().plus_nat(4), Count::Inf),
            wo(w().plus_nat(4), Count::Fin(2)),
        ]);
        assert_eq!(
            p.normalize().unwrap().entries,
            vec![wo(w().plus_nat(4), Count::Inf)]
        );
    }

    #[test]
    fn normalize_rejects_zero_and_empty() {
        let p = FamilyPresentation::new(vec![wo(Ordinal::zero(), Count::Fin(1))]);
        assert_eq!(p.normalize(), Err(FamilyError::ZeroOrdinal { entry: 0 }));
        let p = FamilyPresentation::new(vec![ChainEntry::progression(
            Orientation::Well,
            Ordinal::zero(),
            0,
            2,
            1,
        )]);
        assert_eq!(p.normalize(), Err(FamilyError::ZeroOrdinal { entry: 0 }));
        assert_eq!(
            FamilyPresentation::default().normalize(),
            Err(FamilyError::EmptyFamily)
        );
    }

    #[test]
    fn normalize_rejects_bad_progressions() {
        let succ = FamilyPresentation::new(vec![ChainEntry::progression(
            Orientation::Well,
            w().plus_nat(1),
            0,
            1,
            1,
        )]);
        assert!(matches!(
            succ.normalize(),
            Err(FamilyError::NotLimitPart { entry: 0, .. })
        ));
        let flat = FamilyPresentation::new(vec![ChainEntry::progression(
            Orientation::Well,
            w(),
            0,
            0,
            1,
        )]);
        assert_eq!(flat.normalize(), Err(FamilyError::InvalidStep { entry: 0 }));
    }

    #[test]
    fn normalize_files_finite_chains_as_well_orders() {
        let p = FamilyPresentation::new(vec![
            rwo(Ordinal::nat(3), Count::Fin(1)),
            wo(Ordinal::nat(3), Count::Fin(1)),
        ]);
        assert_eq!(
            p.normalize().unwrap().entries,
            vec![wo(Ordinal::nat(3), Count::Fin(2))]
        );
    }

    #[test]
    fn multiplicity_on_mixed_tails() {
        let p = mixed_tails();
        assert_eq!(p.multiplicity(&w().plus_nat(4), Orientation::Well), Some(Count::Inf));
        assert_eq!(p.multiplicity(&w().plus_nat(3), Orientation::Well), Some(Count::Fin(1)));
        assert_eq!(p.multiplicity(&w().plus_nat(2), Orientation::Well), None);
        assert_eq!(p.multiplicity(&w(), Orientation::Well), Some(Count::Fin(14)));
        assert_eq!(p.multiplicity(&Ordinal::nat(9), Orientation::Well), Some(Count::Fin(1)));
        assert_eq!(p.multiplicity(&w().plus_nat(4), Orientation::Reversed), None);
        // finite chains are orientation-free
        assert_eq!(
            p.multiplicity(&Ordinal::nat(9), Orientation::Reversed),
            Some(Count::Fin(1))
        );
    }

    #[test]
    fn tail_multisets_on_mixed_tails() {
        let p = mixed_tails();
        let t = p.tail_multiset(&w(), Orientation::Well);
        assert_eq!(t.singles, vec![(4, Count::Inf), (6, Count::Inf)]);
        assert_eq!(t.progressions, vec![NatProgression::new(1, 2, 1)]);

        let t0 = p.tail_multiset(&Ordinal::zero(), Orientation::Well);
        assert!(t0.singles.is_empty());
        assert_eq!(t0.progressions, vec![NatProgression::new(1, 1, 1)]);

        let only_limit = FamilyPresentation::new(vec![wo(w(), Count::Fin(14))]);
        assert!(only_limit.tail_multiset(&w(), Orientation::Well).is_empty());
    }

    #[test]
    fn tail_multiset_clips_zero_tail() {
        let p = FamilyPresentation::new(vec![ChainEntry::progression(
            Orientation::Well,
            w(),
            0,
            3,
            2,
        )]);
        let t = p.tail_multiset(&w(), Orientation::Well);
        assert_eq!(t.progressions, vec![NatProgression::new(3, 3, 2)]);
    }

    #[test]
    fn split_examples() {
        let p = FamilyPresentation::new(vec![
            wo(w(), Count::Fin(1)),
            rwo(w(), Count::Fin(1)),
            wo(Ordinal::nat(3), Count::Fin(1)),
        ])
        .normalize()
        .unwrap();
        let s = p.split();
        assert_eq!(
            s.well.entries,
            vec![wo(Ordinal::nat(3), Count::Fin(1)), wo(w(), Count::Fin(1))]
        );
        assert_eq!(
            s.reversed.entries,
            vec![wo(Ordinal::nat(3), Count::Fin(1)), rwo(w(), Count::Fin(1))]
        );
        assert!(s.has_infinite_well && s.has_infinite_reversed);

        let s = FamilyPresentation::new(vec![wo(w(), Count::Fin(1))]).split();
        assert_eq!(s.well.entries.len(), 1);
        assert!(s.reversed.is_empty());
        assert!(!s.has_infinite_reversed);

        let p = FamilyPresentation::new(vec![
            wo(Ordinal::nat(5), Count::Fin(2)),
            wo(Ordinal::nat(7), Count::Fin(1)),
        ]);
        let s = p.split();
        assert_eq!(s.well, p);
        assert_eq!(s.reversed, p);
        assert!(!s.has_infinite_well && !s.has_infinite_reversed);
    }

    #[test]
    fn stats_on_mixed_tails() {
        let st = mixed_tails().stats().unwrap();
        assert_eq!(st.gamma_star, w());
        assert_eq!(
            st.limit_parts.into_iter().collect::<Vec<_>>(),
            vec![Ordinal::zero(), w()]
        );
        assert!(!st.finite_to_one);
    }
}
