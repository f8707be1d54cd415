//! Computable partitions of a limit ordinal into order-isomorphic pieces.
//!
//! Every element `x < gamma` is written `x = beta + m` with `beta` its limit
//! part and `m` finite, so `gamma` is a sum of `w`-blocks indexed by the limit
//! parts below it. All colorings here act blockwise: they split each block by
//! a rule on `m` and rank an element by its position among same-colored
//! elements of its block. Blockwise bijections onto the blocks of the target
//! type are order isomorphisms.

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::error::ColoringError;
use crate::ordinal::Ordinal;

/// Number of pieces: a positive integer or `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Colors {
    Finite(u64),
    Omega,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Scheme {
    Residue(u64),
    Pairing,
    Prefix {
        alpha: Ordinal,
        alpha_limit: Ordinal,
        alpha_tail: u64,
    },
}

/// A partition of `{x : x < gamma}` with an explicit isomorphism from each
/// color class onto its order type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    gamma: Ordinal,
    scheme: Scheme,
}

/// Color of the piece isomorphic to `alpha` in a [`split_prefix`] coloring.
pub const PREFIX_A: u64 = 0;
/// Color of the piece isomorphic to `gamma` in a [`split_prefix`] coloring.
pub const PREFIX_B: u64 = 1;

fn pair(k: u64, j: u64) -> u64 {
    let s = k + j;
    s * (s + 1) / 2 + j
}

fn unpair(z: u64) -> (u64, u64) {
    let disc = (8 * z as u128 + 1).sqrt();
    let s = ((disc - 1) / 2) as u64;
    let j = z - s * (s + 1) / 2;
    (s - j, j)
}

fn require_limit(gamma: &Ordinal) -> Result<(), ColoringError> {
    if gamma.is_limit() {
        Ok(())
    } else {
        Err(ColoringError::NotLimit(gamma.clone()))
    }
}

/// Splits a limit ordinal into `colors` pieces, each isomorphic to `gamma`.
pub fn partition_limit(gamma: &Ordinal, colors: Colors) -> Result<Coloring, ColoringError> {
    require_limit(gamma)?;
    let scheme = match colors {
        Colors::Finite(0) => return Err(ColoringError::NoColors),
        Colors::Finite(k) => Scheme::Residue(k),
        Colors::Omega => Scheme::Pairing,
    };
    Ok(Coloring {
        gamma: gamma.clone(),
        scheme,
    })
}

/// Splits a limit ordinal into a piece `A` isomorphic to `alpha` and a piece
/// `B` isomorphic to `gamma`. `A` is the image of `alpha` under the rank
/// inverse of the even half of a two-coloring.
pub fn split_prefix(gamma: &Ordinal, alpha: &Ordinal) -> Result<Coloring, ColoringError> {
    require_limit(gamma)?;
    if alpha > gamma {
        return Err(ColoringError::AlphaTooBig {
            alpha: alpha.clone(),
            gamma: gamma.clone(),
        });
    }
    let dec = alpha.decompose();
    Ok(Coloring {
        gamma: gamma.clone(),
        scheme: Scheme::Prefix {
            alpha: alpha.clone(),
            alpha_limit: dec.gamma,
            alpha_tail: dec.n,
        },
    })
}

impl Coloring {
    pub fn gamma(&self) -> &Ordinal {
        &self.gamma
    }

    /// Number of colors; `None` for `w` many.
    pub fn colors(&self) -> Option<u64> {
        match &self.scheme {
            Scheme::Residue(k) => Some(*k),
            Scheme::Pairing => None,
            Scheme::Prefix { .. } => Some(2),
        }
    }

    /// Order type of a color class.
    pub fn class_type(&self, color: u64) -> Result<Ordinal, ColoringError> {
        self.check_color(color)?;
        Ok(match &self.scheme {
            Scheme::Prefix { alpha, .. } if color == PREFIX_A => alpha.clone(),
            _ => self.gamma.clone(),
        })
    }

    fn check_color(&self, color: u64) -> Result<(), ColoringError> {
        match self.colors() {
            Some(k) if color >= k => Err(ColoringError::BadColor { color }),
            _ => Ok(()),
        }
    }

    fn check_element(&self, x: &Ordinal) -> Result<(Ordinal, u64), ColoringError> {
        if x >= &self.gamma {
            return Err(ColoringError::OutOfRange {
                x: x.clone(),
                gamma: self.gamma.clone(),
            });
        }
        let dec = x.decompose();
        Ok((dec.gamma, dec.n))
    }

    pub fn color(&self, x: &Ordinal) -> Result<u64, ColoringError> {
        Ok(self.rank(x)?.0)
    }

    /// Color of `x` and its image under that class's isomorphism.
    pub fn rank(&self, x: &Ordinal) -> Result<(u64, Ordinal), ColoringError> {
        let (beta, m) = self.check_element(x)?;
        Ok(match &self.scheme {
            Scheme::Residue(k) => (m % k, beta.plus_nat(m / k)),
            Scheme::Pairing => {
                let (color, j) = unpair(m);
                (color, beta.plus_nat(j))
            }
            Scheme::Prefix {
                alpha_limit,
                alpha_tail,
                ..
            } => {
                let r = *alpha_tail;
                if beta < *alpha_limit {
                    if m % 2 == 0 {
                        (PREFIX_A, beta.plus_nat(m / 2))
                    } else {
                        (PREFIX_B, beta.plus_nat(m / 2))
                    }
                } else if beta == *alpha_limit {
                    if m % 2 == 0 && m / 2 < r {
                        (PREFIX_A, beta.plus_nat(m / 2))
                    } else if m < 2 * r {
                        (PREFIX_B, beta.plus_nat(m / 2))
                    } else {
                        (PREFIX_B, beta.plus_nat(m - r))
                    }
                } else {
                    (PREFIX_B, beta.plus_nat(m))
                }
            }
        })
    }

    /// The element of color `color` whose rank is `y`.
    pub fn unrank(&self, color: u64, y: &Ordinal) -> Result<Ordinal, ColoringError> {
        let class_type = self.class_type(color)?;
        if y >= &class_type {
            return Err(ColoringError::OutOfRange {
                x: y.clone(),
                gamma: class_type,
            });
        }
        let dec = y.decompose();
        let (beta, j) = (dec.gamma, dec.n);
        Ok(match &self.scheme {
            Scheme::Residue(k) => beta.plus_nat(j * k + color),
            Scheme::Pairing => beta.plus_nat(pair(color, j)),
            Scheme::Prefix {
                alpha_limit,
                alpha_tail,
                ..
            } => {
                let r = *alpha_tail;
                if color == PREFIX_A {
                    beta.plus_nat(2 * j)
                } else if beta < *alpha_limit {
                    beta.plus_nat(2 * j + 1)
                } else if beta == *alpha_limit {
                    if j < r {
                        beta.plus_nat(2 * j + 1)
                    } else {
                        beta.plus_nat(j + r)
                    }
                } else {
                    beta.plus_nat(j)
                }
            }
        })
    }
}
