//! Linear extensions, order embeddings into `[0, 1] ∩ ℚ` and utilities.

mod cantor;
mod enumeration;
mod rational;
mod szpilrajn;
mod utility;

pub use cantor::{cantor_embed, CantorEmbedding};
pub use enumeration::RationalEnumeration;
pub use rational::Rational;
pub use szpilrajn::{szpilrajn_extend, szpilrajn_step};
pub use utility::{
    generalized_utility, h_map, shift_to_unit, squash, system_utility, unit_bijection, utility_conditions,
    IntervalKind, UtilityAssignment,
};
