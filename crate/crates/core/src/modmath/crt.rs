use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cycles::{self, CycleSink, OpKind};
use crate::error::{Error, Result};
use crate::Nat;

/// Pairwise-coprime moduli with the precomputed inverse-CRT table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtBasis {
    moduli: Vec<Nat>,
    product: Nat,
    /// `(D / d_i, (D / d_i)^-1 mod d_i)` per modulus.
    partials: Vec<(Nat, Nat)>,
}

impl CrtBasis {
    pub fn new(moduli: Vec<Nat>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidParams("CRT basis needs at least one modulus".into()));
        }
        if let Some(d) = moduli.iter().find(|d| *d < &Nat::from(2u8)) {
            return Err(Error::InvalidParams(format!("CRT modulus {d} is below 2")));
        }
        for (i, a) in moduli.iter().enumerate() {
            for b in &moduli[i + 1..] {
                if !a.gcd(b).is_one() {
                    return Err(Error::NotCoprime(a.clone(), b.clone()));
                }
            }
        }
        let product = moduli.iter().product::<Nat>();
        let partials = moduli
            .iter()
            .map(|d| {
                let cofactor = &product / d;
                let inv = if d.is_one() {
                    Nat::zero()
                } else {
                    (&cofactor % d)
                        .modinv(d)
                        .expect("cofactor is coprime to its modulus")
                };
                (cofactor, inv)
            })
            .collect();
        Ok(Self {
            moduli,
            product,
            partials,
        })
    }

    pub fn moduli(&self) -> &[Nat] {
        &self.moduli
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    /// `D`, the size of the plaintext space.
    pub fn product(&self) -> &Nat {
        &self.product
    }

    pub fn partials(&self) -> &[(Nat, Nat)] {
        &self.partials
    }

    pub fn max_modulus(&self) -> &Nat {
        self.moduli.iter().max().expect("basis is non-empty")
    }

    /// `(m mod d_1, ..., m mod d_t)`.
    pub fn mod_reduce_vector(&self, m: &Nat) -> Vec<Nat> {
        self.moduli.iter().map(|d| m % d).collect()
    }

    pub fn mod_reduce_vector_with(
        &self,
        m: &Nat,
        bits: u32,
        sink: &mut impl CycleSink,
    ) -> Vec<Nat> {
        sink.charge(OpKind::Reduce, self.len() as u64 * cycles::reduce_cycles(bits));
        self.mod_reduce_vector(m)
    }

    /// `sum r_i * (D/d_i) * ((D/d_i)^-1 mod d_i) mod D`.
    pub fn crt_recombine(&self, residues: &[Nat]) -> Result<Nat> {
        if residues.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: residues.len(),
            });
        }
        let mut acc = Nat::zero();
        for ((r, d), (cofactor, inv)) in residues.iter().zip(&self.moduli).zip(&self.partials) {
            if r >= d {
                return Err(Error::ResidueOutOfRange {
                    residue: r.clone(),
                    modulus: d.clone(),
                });
            }
            acc += r * cofactor * inv;
        }
        Ok(acc % &self.product)
    }

    pub fn crt_recombine_with(
        &self,
        residues: &[Nat],
        bits: u32,
        sink: &mut impl CycleSink,
    ) -> Result<Nat> {
        let m = self.crt_recombine(residues)?;
        sink.charge(OpKind::InverseCrt, self.len() as u64 * cycles::crt_term_cycles(bits));
        Ok(m)
    }
}
