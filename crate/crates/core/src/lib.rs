//! Enumeration, classification and counting of commutative zero-divisor
//! semigroups whose zero-divisor graph is the complete graph `K_n`, or `K_n`
//! with one end vertex attached.
//!
//! Three independent routes produce class counts and are cross-checked:
//!
//! * [`enumerate`]: a brute-force oracle over labeled multiplication tables,
//! * [`formulas`]: generators driven by the structure theorems for each case,
//! * closed counting formulas ([`formulas::s_of_n`], [`formulas::k2_partial`]).
//!
//! Isomorphism classes are identified by [`classify::canonical_form`].

pub mod audit;
pub mod census;
pub mod classify;
pub mod enumerate;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod report;
pub mod table;

pub use census::{PendantCase, PendantCensus};
pub use classify::{canonical_form, CanonicalKey, ClassCatalog, SquareProfile};
pub use error::{Error, Result};
pub use graph::{build_zd_graph, recognize_target, SimpleGraph, TargetGraph};
pub use table::{AssocWitness, ElementId, MulTable};
