//! Wigner rotations, Dirac spinor transport, photon polarization and
//! Bell-state entanglement under Lorentz boosts.

pub mod dd;
pub mod error;
pub mod lorentz;
pub mod massive;
pub mod dirac;
pub mod photon;
pub mod bell;
pub mod sampling;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
