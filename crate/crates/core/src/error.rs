use crate::Nat;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is even; Montgomery arithmetic needs an odd modulus")]
    EvenModulus(Nat),

    #[error("width of {bits} bits does not cover modulus {modulus}")]
    WidthTooSmall { modulus: Nat, bits: u32 },

    #[error("operand {value} is out of range for modulus {modulus}")]
    OperandOutOfRange { value: Nat, modulus: Nat },

    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: Nat, modulus: Nat },

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("residue {residue} is not below its modulus {modulus}")]
    ResidueOutOfRange { residue: Nat, modulus: Nat },

    #[error("no discrete logarithm below {bound}")]
    NotFound { bound: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(Nat, Nat),

    #[error("message {message} is outside the plaintext space")]
    MessageOutOfRange { message: Nat },

    #[error("ciphertext component {value} is not below the modulus {modulus}")]
    CiphertextOutOfRange { value: Nat, modulus: Nat },

    #[error("malformed ciphertext: {0}")]
    CiphertextMalformed(String),

    #[error("residue {index}: no discrete logarithm below {bound}")]
    DlogNotFound { index: usize, bound: u64 },

    #[error(
        "addition depth {add_count} needs exponents up to {needed}, \
         generator order is only {order}"
    )]
    AdditionDepthExceeded {
        add_count: u64,
        needed: Nat,
        order: Nat,
    },

    #[error("randomness {value} is outside [0, {modulus})")]
    InvalidRandomness { value: Nat, modulus: Nat },

    #[error("reduction base is zero")]
    DivisionByZero,

    #[error("verification mismatch: expected {expected}, decrypted {decrypted}")]
    VerificationMismatch { expected: Nat, decrypted: String },
}
