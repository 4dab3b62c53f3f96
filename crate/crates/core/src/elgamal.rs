//! Multiplicative ElGamal over `Z_n^*`.
//!
//! `E(m1) * E(m2)`, taken component-wise, decrypts to `m1 * m2 mod n`.

use std::fmt;

use num_traits::{One, Zero};

use crate::datapath::{Datapath, Direct};
use crate::error::{Error, Result};
use crate::modmath::{prime, MontgomeryContext};
use crate::rng::RandomSource;
use crate::Nat;

/// Deployment parameters: the prime modulus `n` and generator `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElGamalParams {
    pub n: Nat,
    pub g: Nat,
    /// Datapath width in bits. Defaults to the bit length of `n` rounded
    /// up to a whole byte.
    pub bits: Option<u32>,
    /// Also require that the order of `g` is divisible by the largest
    /// prime factor of `n - 1`.
    pub strict_generator: bool,
}

impl ElGamalParams {
    pub fn new(n: impl Into<Nat>, g: impl Into<Nat>) -> Self {
        Self {
            n: n.into(),
            g: g.into(),
            bits: None,
            strict_generator: false,
        }
    }

    pub fn with_bits(mut self, bits: u32) -> Self {
        self.bits = Some(bits);
        self
    }

    pub fn strict(mut self) -> Self {
        self.strict_generator = true;
        self
    }

    pub(crate) fn context(&self) -> Result<MontgomeryContext> {
        group_context(&self.n, &self.g, self.bits)?.check_strict(self.strict_generator)
    }
}

struct Validated {
    ctx: MontgomeryContext,
    g: Nat,
}

impl Validated {
    fn check_strict(self, strict: bool) -> Result<MontgomeryContext> {
        if strict {
            let n = self.ctx.modulus();
            let group = n - Nat::one();
            let q = prime::largest_prime_factor(&group).ok_or_else(|| {
                Error::InvalidParams(format!("cannot factor {group} to verify the generator"))
            })?;
            let order = prime::multiplicative_order(&self.g, n)
                .expect("n - 1 was factored above");
            if !(order % &q).is_zero() {
                return Err(Error::InvalidParams(format!(
                    "generator {} does not reach the order-{q} subgroup",
                    self.g
                )));
            }
        }
        Ok(self.ctx)
    }
}

fn group_context(n: &Nat, g: &Nat, bits: Option<u32>) -> Result<Validated> {
    if n < &Nat::from(5u8) || !prime::is_probable_prime(n, prime::MILLER_RABIN_ROUNDS) {
        return Err(Error::InvalidParams(format!("modulus {n} is not an odd prime")));
    }
    if g <= &Nat::one() || g >= n {
        return Err(Error::InvalidParams(format!("generator {g} is not in (1, {n})")));
    }
    let ctx = match bits {
        Some(bits) => MontgomeryContext::new(n.clone(), bits)?,
        None => MontgomeryContext::with_byte_width(n.clone())?,
    };
    Ok(Validated { ctx, g: g.clone() })
}

/// `(n, g, h = g^k mod n)` plus the Montgomery context for `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElGamalPublicKey {
    g: Nat,
    h: Nat,
    ctx: MontgomeryContext,
}

impl ElGamalPublicKey {
    /// Rebuilds a public key from its published parts.
    pub fn new(n: Nat, g: Nat, h: Nat, bits: Option<u32>) -> Result<Self> {
        let ctx = group_context(&n, &g, bits)?.ctx;
        if h.is_zero() || h >= n {
            return Err(Error::InvalidParams(format!("public value {h} is not in [1, {n})")));
        }
        Ok(Self { g, h, ctx })
    }

    pub fn n(&self) -> &Nat {
        self.ctx.modulus()
    }

    pub fn g(&self) -> &Nat {
        &self.g
    }

    pub fn h(&self) -> &Nat {
        &self.h
    }

    pub fn context(&self) -> &MontgomeryContext {
        &self.ctx
    }

    /// Draws an ephemeral or secret exponent in `[1, n - 2]` and checks
    /// that whatever the source returned lies in `[0, n)`.
    pub(crate) fn draw_exponent(&self, rng: &mut impl RandomSource) -> Result<Nat> {
        let n = self.n();
        let l = rng.sample_range(&Nat::one(), &(n - 2u8));
        if &l >= n {
            return Err(Error::InvalidRandomness {
                value: l,
                modulus: n.clone(),
            });
        }
        Ok(l)
    }

    pub(crate) fn check_ciphertext(&self, ct: &Ciphertext) -> Result<()> {
        for c in [&ct.c1, &ct.c2] {
            if c >= self.n() {
                return Err(Error::CiphertextOutOfRange {
                    value: c.clone(),
                    modulus: self.n().clone(),
                });
            }
        }
        Ok(())
    }
}

/// The secret exponent `k`.
#[derive(Clone, PartialEq, Eq)]
pub struct ElGamalSecretKey {
    k: Nat,
}

impl ElGamalSecretKey {
    pub fn new(k: Nat) -> Self {
        Self { k }
    }

    pub fn exponent(&self) -> &Nat {
        &self.k
    }
}

impl fmt::Debug for ElGamalSecretKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ElGamalSecretKey(..)")
    }
}

/// The pair `(C1, C2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ciphertext {
    pub c1: Nat,
    pub c2: Nat,
}

impl Ciphertext {
    pub fn new(c1: impl Into<Nat>, c2: impl Into<Nat>) -> Self {
        Self {
            c1: c1.into(),
            c2: c2.into(),
        }
    }

    /// `(1, 1)`, the encryption of 1 with zero randomness.
    pub fn identity() -> Self {
        Self::new(1u8, 1u8)
    }
}

pub fn keygen(
    params: &ElGamalParams,
    rng: &mut impl RandomSource,
) -> Result<(ElGamalPublicKey, ElGamalSecretKey)> {
    keygen_on(params, rng, &mut Direct)
}

pub fn keygen_on(
    params: &ElGamalParams,
    rng: &mut impl RandomSource,
    dp: &mut impl Datapath,
) -> Result<(ElGamalPublicKey, ElGamalSecretKey)> {
    let ctx = params.context()?;
    let n = ctx.modulus().clone();
    let k = rng.sample_range(&Nat::one(), &(&n - 2u8));
    if k.is_zero() || k >= &n - 1u8 {
        return Err(Error::InvalidRandomness { value: k, modulus: n - 1u8 });
    }
    let h = dp
        .exp_batch(&ctx, &[(&params.g, &k)])?
        .pop()
        .expect("one job");
    let pk = ElGamalPublicKey {
        g: params.g.clone(),
        h,
        ctx,
    };
    Ok((pk, ElGamalSecretKey { k }))
}

/// `(g^l, h^l * m)` with a fresh `l` from `rng`. Requires `1 <= m < n`.
pub fn encrypt(pk: &ElGamalPublicKey, m: &Nat, rng: &mut impl RandomSource) -> Result<Ciphertext> {
    encrypt_on(pk, m, rng, &mut Direct)
}

pub fn encrypt_on(
    pk: &ElGamalPublicKey,
    m: &Nat,
    rng: &mut impl RandomSource,
    dp: &mut impl Datapath,
) -> Result<Ciphertext> {
    if m.is_zero() || m >= pk.n() {
        return Err(Error::MessageOutOfRange { message: m.clone() });
    }
    let l = pk.draw_exponent(rng)?;
    let ctx = pk.context();
    let [c1, shared]: [Nat; 2] = dp
        .exp_batch(ctx, &[(&pk.g, &l), (&pk.h, &l)])?
        .try_into()
        .expect("two jobs");
    let c2 = dp.mod_mul(ctx, &shared, m)?;
    Ok(Ciphertext { c1, c2 })
}

/// `C2 / C1^k mod n`.
pub fn decrypt(pk: &ElGamalPublicKey, sk: &ElGamalSecretKey, ct: &Ciphertext) -> Result<Nat> {
    decrypt_on(pk, sk, ct, &mut Direct)
}

pub fn decrypt_on(
    pk: &ElGamalPublicKey,
    sk: &ElGamalSecretKey,
    ct: &Ciphertext,
    dp: &mut impl Datapath,
) -> Result<Nat> {
    pk.check_ciphertext(ct)?;
    let ctx = pk.context();
    let shared = dp.exp_batch(ctx, &[(&ct.c1, &sk.k)])?.pop().expect("one job");
    dp.mod_div(ctx, &ct.c2, &shared)
}

/// Component-wise product. Needs only the public modulus.
pub fn homomorphic_mul(pk: &ElGamalPublicKey, a: &Ciphertext, b: &Ciphertext) -> Result<Ciphertext> {
    pk.check_ciphertext(a)?;
    pk.check_ciphertext(b)?;
    let ctx = pk.context();
    Ok(Ciphertext {
        c1: ctx.mod_mul(&a.c1, &b.c1)?,
        c2: ctx.mod_mul(&a.c2, &b.c2)?,
    })
}
