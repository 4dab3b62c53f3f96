//! Partial homomorphic encryption on a Montgomery datapath.
//!
//! Two schemes share one set of arithmetic units:
//!
//! * [`elgamal`]: multiplicative ElGamal, `E(a) * E(b) = E(a * b)`.
//! * [`ceg`]: CRT-based ElGamal with messages in the exponent,
//!   `E(a) * E(b) = E(a + b)`.
//!
//! [`dual_engine`] runs either scheme behind a mode select on a shared or a
//! duplicated datapath and keeps cycle ledgers for both. The
//! [`isolation_harness`] hands ciphertexts to an untrusted evaluator and
//! checks what comes back.
//!
//! ```
//! use phe_core::elgamal::{self, ElGamalParams};
//! use phe_core::rng::SeededSource;
//! use phe_core::Nat;
//!
//! let mut rng = SeededSource::new(7);
//! let (pk, sk) = elgamal::keygen(&ElGamalParams::new(23u32, 5u32), &mut rng).unwrap();
//! let a = elgamal::encrypt(&pk, &Nat::from(3u8), &mut rng).unwrap();
//! let b = elgamal::encrypt(&pk, &Nat::from(5u8), &mut rng).unwrap();
//! let product = elgamal::homomorphic_mul(&pk, &a, &b).unwrap();
//! assert_eq!(elgamal::decrypt(&pk, &sk, &product).unwrap(), Nat::from(15u8));
//! ```

pub mod ceg;
pub mod cycles;
pub mod datapath;
pub mod dual_engine;
pub mod elgamal;
mod error;
pub mod isolation_harness;
pub mod modmath;
pub mod rng;

pub use error::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type Nat = num_bigint::BigUint;
