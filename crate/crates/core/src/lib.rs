//! Finite relation algebra, bubble decomposition of preorders, order
//! embeddings into `[0, 1]` and interval topologies.

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod factor;
pub mod format;
pub mod invariants;
pub mod order_ext;
pub mod relation;
pub mod structure;
pub mod topology;

pub use error::{Error, Result, Witness};
pub use factor::{EquivalenceRelation, Partition, QuotientRelation};
pub use order_ext::{IntervalKind, Rational, RationalEnumeration, UtilityAssignment};
pub use relation::{Carrier, Relation, SaturationMode};
pub use structure::{Bubble, BubbleSpec, BubbleSystem, Decomposition, LinearFactor, Loset, PreorderSplit};
pub use topology::{FiniteTopology, Interval, IntervalShape};
