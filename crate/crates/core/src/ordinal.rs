//! Ordinals below epsilon-zero in Cantor normal form.
//!
//! An [`Ordinal`] is a list of `(exponent, coefficient)` terms with strictly
//! decreasing exponents and positive coefficients; the empty list is `0`.
//! The derived ordering on that list is exactly the ordinal order: the first
//! differing term decides (larger exponent wins, then larger coefficient), and
//! a proper prefix is smaller.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::OrdinalError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

/// The split `value = gamma + n` with `gamma` a limit ordinal or zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub gamma: Ordinal,
    pub n: u64,
}

impl Decomposition {
    pub fn recompose(&self) -> Ordinal {
        self.gamma.add(&Ordinal::nat(self.n))
    }
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(Self::zero(), n)],
            }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::nat(1))
    }

    /// `w^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Self {
        Ordinal {
            terms: vec![(exponent, 1)],
        }
    }

    /// `w^exponent * coefficient`; zero coefficient gives `0`.
    pub fn monomial(exponent: Ordinal, coefficient: u64) -> Self {
        if coefficient == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(exponent, coefficient)],
            }
        }
    }

    /// Builds a CNF from an explicit term list, rejecting lists whose exponents
    /// do not strictly decrease or that carry a zero coefficient.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self, OrdinalError> {
        for (i, (_, c)) in terms.iter().enumerate() {
            if *c == 0 {
                return Err(OrdinalError::MalformedCnf(format!(
                    "term {i} has coefficient 0"
                )));
            }
        }
        for (i, pair) in terms.windows(2).enumerate() {
            if pair[0].0 <= pair[1].0 {
                return Err(OrdinalError::MalformedCnf(format!(
                    "exponent of term {} ({}) does not exceed exponent of term {} ({})",
                    i,
                    pair[0].0,
                    i + 1,
                    pair[1].0
                )));
            }
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    /// The value of a finite ordinal.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_limit(&self) -> bool {
        match self.terms.last() {
            Some((e, _)) => !e.is_zero(),
            None => false,
        }
    }

    /// Limit or zero.
    pub fn is_limit_or_zero(&self) -> bool {
        self.is_zero() || self.is_limit()
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some((e, _)) if e.is_zero())
    }

    /// Ordinal sum `self + rhs`.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some((lead, lead_coeff)) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> = self
            .terms
            .iter()
            .take_while(|(e, _)| e >= lead)
            .cloned()
            .collect();
        let mut rest = rhs.terms.iter();
        match terms.last_mut() {
            Some((e, c)) if e == lead => {
                *c = c
                    .checked_add(*lead_coeff)
                    .expect("ordinal coefficient overflow");
                rest.next();
            }
            _ => {}
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }

    pub fn decompose(&self) -> Decomposition {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => Decomposition {
                gamma: Ordinal {
                    terms: self.terms[..self.terms.len() - 1].to_vec(),
                },
                n: *c,
            },
            _ => Decomposition {
                gamma: self.clone(),
                n: 0,
            },
        }
    }

    /// Limit part of the decomposition.
    pub fn limit_part(&self) -> Ordinal {
        self.decompose().gamma
    }

    /// Finite tail of the decomposition.
    pub fn finite_tail(&self) -> u64 {
        self.decompose().n
    }

    /// `self + n`.
    pub fn plus_nat(&self, n: u64) -> Ordinal {
        self.add(&Ordinal::nat(n))
    }

    fn fmt_exponent(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.as_nat().is_some() || *self == Ordinal::omega() {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }
}

/// Ordinal comparison.
pub fn compare(a: &Ordinal, b: &Ordinal) -> std::cmp::Ordering {
    a.cmp(b)
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            write!(f, "w")?;
            if *e != Ordinal::nat(1) {
                write!(f, "^")?;
                e.fmt_exponent(f)?;
            }
            if *c != 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl FromStr for Ordinal {
    type Err = crate::dsl::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::dsl::parse_ordinal(s)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}
