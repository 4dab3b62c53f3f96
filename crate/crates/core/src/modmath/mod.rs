//! Modular arithmetic building blocks.
//!
//! Everything here is a pure function of immutable inputs. Operands at or
//! above the modulus are rejected, never silently reduced.

mod crt;
mod divide;
mod dlog;
mod montgomery;
pub mod prime;

pub use crt::CrtBasis;
pub use montgomery::MontgomeryContext;
