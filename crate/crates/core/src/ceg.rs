//! Additive CRT-based ElGamal.
//!
//! A message `m < D` is split into residues `m_i = m mod d_i`, and each
//! residue is encrypted in the exponent as `(g^l_i, h^l_i * g^m_i)`.
//! Multiplying ciphertexts pair-wise adds the exponents. Decryption
//! recovers each exponent by a bounded scan, reduces it modulo `d_i`
//! (exponents grow past `d_i` under addition) and recombines by inverse
//! CRT.
//!
//! Every ciphertext carries the number of additions folded into it. That
//! count bounds the exponent scan: each pair's exponent is at most
//! `(add_count + 1) * (d_i - 1)`.

use num_traits::{One, ToPrimitive};

use crate::datapath::{Datapath, Direct};
use crate::elgamal::{self, Ciphertext, ElGamalParams, ElGamalPublicKey, ElGamalSecretKey};
use crate::error::{Error, Result};
use crate::modmath::{prime, CrtBasis};
use crate::rng::RandomSource;
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CegParams {
    pub group: ElGamalParams,
    pub moduli: Vec<Nat>,
}

impl CegParams {
    pub fn new<I, T>(n: impl Into<Nat>, g: impl Into<Nat>, moduli: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<Nat>,
    {
        Self {
            group: ElGamalParams::new(n, g),
            moduli: moduli.into_iter().map(Into::into).collect(),
        }
    }
}

/// ElGamal public key extended with the CRT basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CegPublicKey {
    base: ElGamalPublicKey,
    basis: CrtBasis,
    generator_order: Option<Nat>,
}

impl CegPublicKey {
    pub fn new(base: ElGamalPublicKey, basis: CrtBasis) -> Result<Self> {
        let generator_order = prime::multiplicative_order(base.g(), base.n());
        if let Some(order) = &generator_order {
            if basis.product() >= order {
                return Err(Error::InvalidParams(format!(
                    "plaintext space {} is not below the generator order {order}",
                    basis.product()
                )));
            }
        }
        Ok(Self {
            base,
            basis,
            generator_order,
        })
    }

    pub fn base(&self) -> &ElGamalPublicKey {
        &self.base
    }

    pub fn basis(&self) -> &CrtBasis {
        &self.basis
    }

    /// `D`; plaintexts live in `[0, D)`.
    pub fn plaintext_modulus(&self) -> &Nat {
        self.basis.product()
    }

    /// Order of `g`, when `n - 1` could be factored.
    pub fn generator_order(&self) -> Option<&Nat> {
        self.generator_order.as_ref()
    }

    fn check_shape(&self, ct: &CegCiphertext) -> Result<()> {
        if ct.pairs.len() != self.basis.len() {
            return Err(Error::CiphertextMalformed(format!(
                "{} pairs for a basis of {}",
                ct.pairs.len(),
                self.basis.len()
            )));
        }
        ct.pairs.iter().try_for_each(|p| self.base.check_ciphertext(p))
    }
}

/// One ElGamal pair per CRT modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CegCiphertext {
    pub pairs: Vec<Ciphertext>,
    pub add_count: u64,
}

impl CegCiphertext {
    pub fn new(pairs: Vec<Ciphertext>, add_count: u64) -> Self {
        Self { pairs, add_count }
    }
}

pub fn ceg_keygen(
    params: &CegParams,
    rng: &mut impl RandomSource,
) -> Result<(CegPublicKey, ElGamalSecretKey)> {
    ceg_keygen_on(params, rng, &mut Direct)
}

pub fn ceg_keygen_on(
    params: &CegParams,
    rng: &mut impl RandomSource,
    dp: &mut impl Datapath,
) -> Result<(CegPublicKey, ElGamalSecretKey)> {
    params.group.context()?;
    let basis = CrtBasis::new(params.moduli.clone())?;
    let (base, sk) = elgamal::keygen_on(&params.group, rng, dp)?;
    Ok((CegPublicKey::new(base, basis)?, sk))
}

/// Encrypts `0 <= m < D`, drawing an independent `l_i` per pair.
pub fn ceg_encrypt(pk: &CegPublicKey, m: &Nat, rng: &mut impl RandomSource) -> Result<CegCiphertext> {
    ceg_encrypt_on(pk, m, rng, &mut Direct)
}

pub fn ceg_encrypt_on(
    pk: &CegPublicKey,
    m: &Nat,
    rng: &mut impl RandomSource,
    dp: &mut impl Datapath,
) -> Result<CegCiphertext> {
    if m >= pk.plaintext_modulus() {
        return Err(Error::MessageOutOfRange { message: m.clone() });
    }
    let base = &pk.base;
    let ctx = base.context();
    let residues = dp.reduce(ctx, &pk.basis, m);
    let mut pairs = Vec::with_capacity(residues.len());
    for residue in &residues {
        let l = base.draw_exponent(rng)?;
        let [c1, shared, encoded]: [Nat; 3] = dp
            .exp_batch(ctx, &[(base.g(), &l), (base.h(), &l), (base.g(), residue)])?
            .try_into()
            .expect("three jobs");
        let c2 = dp.mod_mul(ctx, &shared, &encoded)?;
        pairs.push(Ciphertext { c1, c2 });
    }
    Ok(CegCiphertext { pairs, add_count: 0 })
}

pub fn ceg_decrypt(pk: &CegPublicKey, sk: &ElGamalSecretKey, ct: &CegCiphertext) -> Result<Nat> {
    ceg_decrypt_on(pk, sk, ct, &mut Direct)
}

pub fn ceg_decrypt_on(
    pk: &CegPublicKey,
    sk: &ElGamalSecretKey,
    ct: &CegCiphertext,
    dp: &mut impl Datapath,
) -> Result<Nat> {
    pk.check_shape(ct)?;
    let depth = Nat::from(ct.add_count) + 1u8;
    let widest = depth.clone() * (pk.basis.max_modulus() - 1u8);
    if let Some(order) = &pk.generator_order {
        // exponents must stay below the order for the scan to be unambiguous
        if &widest >= order {
            return Err(Error::AdditionDepthExceeded {
                add_count: ct.add_count,
                needed: widest,
                order: order.clone(),
            });
        }
    }

    let base = &pk.base;
    let ctx = base.context();
    let mut residues = Vec::with_capacity(ct.pairs.len());
    for (index, (pair, d)) in ct.pairs.iter().zip(pk.basis.moduli()).enumerate() {
        let shared = dp.exp_batch(ctx, &[(&pair.c1, sk.exponent())])?.pop().expect("one job");
        let encoded = dp.mod_div(ctx, &pair.c2, &shared)?;
        let bound = (&depth * (d - 1u8) + 1u8)
            .to_u64()
            .ok_or_else(|| Error::InvalidParams("discrete-log bound exceeds 64 bits".into()))?;
        let exponent = match dp.dlog(ctx, base.g(), &encoded, bound) {
            Ok(e) => e,
            Err(Error::NotFound { bound }) => return Err(Error::DlogNotFound { index, bound }),
            Err(e) => return Err(e),
        };
        residues.push(Nat::from(exponent) % d);
    }
    dp.crt_recombine(ctx, &pk.basis, &residues)
}

/// Pair-wise product; decrypts to the plaintext sum mod `D`. Needs only
/// public values.
pub fn homomorphic_add(pk: &CegPublicKey, a: &CegCiphertext, b: &CegCiphertext) -> Result<CegCiphertext> {
    pk.check_shape(a)?;
    pk.check_shape(b)?;
    let ctx = pk.base.context();
    let pairs = a
        .pairs
        .iter()
        .zip(&b.pairs)
        .map(|(x, y)| {
            Ok(Ciphertext {
                c1: ctx.mod_mul(&x.c1, &y.c1)?,
                c2: ctx.mod_mul(&x.c2, &y.c2)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let add_count = a
        .add_count
        .checked_add(b.add_count)
        .and_then(|c| c.checked_add(1))
        .ok_or_else(|| Error::CiphertextMalformed("addition count overflow".into()))?;
    Ok(CegCiphertext { pairs, add_count })
}

/// `(E(0), l = 0)` in every pair: the additive identity, with no addition
/// counted.
pub fn zero_ciphertext(pk: &CegPublicKey) -> CegCiphertext {
    CegCiphertext {
        pairs: vec![Ciphertext::new(Nat::one(), Nat::one()); pk.basis.len()],
        add_count: 0,
    }
}
