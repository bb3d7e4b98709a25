//! Exact monodromy computations for Hurwitz-type covering problems:
//! Nielsen-class enumeration, braid actions, stabilizer-chain group orders,
//! and symplectic groups over Z/N.

pub mod error;
pub mod monodromy;
pub mod nielsen;
pub mod permtools;
pub mod symplectic;
pub mod verify;

pub use error::Error;
