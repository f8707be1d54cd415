//! Decides whether a disjoint union of well orders and reversed well orders is
//! reversible, and produces checkable witnesses when it is not.
//!
//! ```
//! use ordrev::{decide, dsl};
//!
//! let family = dsl::parse("wo(w + 2) x inf; wo(w + 4) x inf;").unwrap();
//! let verdict = decide(&family).unwrap();
//! assert!(!verdict.reversible);
//! assert_eq!(verdict.clause.label(), "B");
//! ```

pub mod decide;
pub mod dsl;
pub mod error;
pub mod family;
pub mod golden;
pub mod natrev;
pub mod ordinal;
pub mod report;
pub mod witness;

pub use decide::{decide, decide_nat, decide_well, detect_nonrev_clause, Clause, Details, Verdict};
pub use error::{Error, Result};
pub use family::{ChainEntry, Count, FamilyPresentation, Orientation};
pub use natrev::{decide_nat_reversible, NatMultiset, NatProgression};
pub use ordinal::Ordinal;
pub use report::Report;
