//! Reference families with known verdicts, shared by the `selftest`
//! subcommand and the test suites.

use crate::family::{ChainEntry, Count, FamilyPresentation, Orientation};
use crate::ordinal::Ordinal;

/// `U_{n>=1} n  u  U_14 w  u  U_{w1} (w+4)  u  U_{w3} (w+6)  u  U_n (w+2n+1)`.
pub const MIXED_TAILS_TEXT: &str = "\
# reversible: limit part w, tails {4, 6} repeated, odd tails once each
wo(1*n + 1) for n in nat;
wo(w) x 14;
wo(w + 4) x aleph 1;
wo(w + 6) x aleph 3;
wo(w + 1 + 2*n) for n in nat;
";

/// `U_w 1  u  w`.
pub const POINTS_AND_OMEGA_TEXT: &str = "wo(1) x inf;\nwo(w);\n";

/// `U_w (w+2)  u  U_w (w+4)`.
pub const TWO_TAILS_TEXT: &str = "wo(w + 2) x inf;\nwo(w + 4) x inf;\n";

/// `<w + n : n in w>`.
pub const OMEGA_PLUS_N_TEXT: &str = "wo(w + 1*n) for n in nat;\n";

fn w() -> Ordinal {
    Ordinal::omega()
}

pub fn mixed_tails() -> FamilyPresentation {
    FamilyPresentation::new(vec![
        ChainEntry::progression(Orientation::Well, Ordinal::zero(), 1, 1, 1),
        ChainEntry::single(Orientation::Well, w(), Count::Fin(14)),
        ChainEntry::single(Orientation::Well, w().plus_nat(4), Count::Inf),
        ChainEntry::single(Orientation::Well, w().plus_nat(6), Count::Inf),
        ChainEntry::progression(Orientation::Well, w(), 1, 2, 1),
    ])
    .normalize()
    .expect("valid family")
}

pub fn points_and_omega() -> FamilyPresentation {
    FamilyPresentation::new(vec![
        ChainEntry::single(Orientation::Well, Ordinal::nat(1), Count::Inf),
        ChainEntry::single(Orientation::Well, w(), Count::Fin(1)),
    ])
    .normalize()
    .expect("valid family")
}

pub fn two_tails() -> FamilyPresentation {
    FamilyPresentation::new(vec![
        ChainEntry::single(Orientation::Well, w().plus_nat(2), Count::Inf),
        ChainEntry::single(Orientation::Well, w().plus_nat(4), Count::Inf),
    ])
    .normalize()
    .expect("valid family")
}

pub fn omega_plus_n() -> FamilyPresentation {
    FamilyPresentation::new(vec![ChainEntry::progression(
        Orientation::Well,
        w(),
        0,
        1,
        1,
    )])
    .normalize()
    .expect("valid family")
}
