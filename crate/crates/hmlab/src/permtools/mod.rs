//! Exact permutation-group algorithms: composition, orbits, BSGS
//! construction, order, membership, derived subgroup, normal closure and
//! primitivity.

mod bsgs;
mod factored;
mod perm;

pub use bsgs::{PermGroup, Primitivity};
pub use factored::{factor_u128, FactoredInteger};
pub use perm::{orbit, Permutation};
