use num_traits::{One, Zero};

use crate::cycles::{self, CycleSink, MultiplierSlots, OpKind};
use crate::error::{Error, Result};
use crate::Nat;

/// Precomputed constants for arithmetic modulo an odd `M` with radix
/// `R = 2^bits`.
///
/// Contexts are immutable after construction and can be shared freely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MontgomeryContext {
    modulus: Nat,
    bits: u32,
    r: Nat,
    r_inv: Nat,
    r_mod_m: Nat,
    r2_mod_m: Nat,
}

impl MontgomeryContext {
    /// Builds a context for `modulus` with radix `2^bits`.
    pub fn new(modulus: Nat, bits: u32) -> Result<Self> {
        if !modulus.bit(0) {
            return Err(Error::EvenModulus(modulus));
        }
        if modulus < Nat::from(3u8) {
            return Err(Error::InvalidParams(format!(
                "modulus {modulus} is too small"
            )));
        }
        if u64::from(bits) < modulus.bits() {
            return Err(Error::WidthTooSmall { modulus, bits });
        }
        let r = Nat::one() << bits;
        let r_mod_m = &r % &modulus;
        let r2_mod_m = (&r_mod_m * &r_mod_m) % &modulus;
        let r_inv = r_mod_m
            .modinv(&modulus)
            .expect("R is a power of two and M is odd");
        Ok(Self {
            modulus,
            bits,
            r,
            r_inv,
            r_mod_m,
            r2_mod_m,
        })
    }

    /// Context whose width is the bit length of `modulus` rounded up to
    /// a whole byte.
    pub fn with_byte_width(modulus: Nat) -> Result<Self> {
        let bits = modulus.bits().max(1).div_ceil(8) * 8;
        let bits = u32::try_from(bits)
            .map_err(|_| Error::InvalidParams("modulus too wide".into()))?;
        Self::new(modulus, bits)
    }

    pub fn modulus(&self) -> &Nat {
        &self.modulus
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn r(&self) -> &Nat {
        &self.r
    }

    pub fn r_inv(&self) -> &Nat {
        &self.r_inv
    }

    pub fn r2_mod_m(&self) -> &Nat {
        &self.r2_mod_m
    }

    pub(crate) fn check_operand(&self, value: &Nat) -> Result<()> {
        if value >= &self.modulus {
            return Err(Error::OperandOutOfRange {
                value: value.clone(),
                modulus: self.modulus.clone(),
            });
        }
        Ok(())
    }

    /// Bit-serial add/shift product `x * y * 2^-bits mod M`.
    ///
    /// Operands must be below `M`; the running sum then stays below `2M`.
    pub(crate) fn product(&self, x: &Nat, y: &Nat) -> Nat {
        let mut acc = Nat::zero();
        for i in 0..u64::from(self.bits) {
            if x.bit(i) {
                acc += y;
            }
            if acc.bit(0) {
                acc += &self.modulus;
            }
            acc >>= 1u32;
        }
        if acc >= self.modulus {
            acc -= &self.modulus;
        }
        acc
    }

    /// `x * y * R^-1 mod M`.
    pub fn mont_mul(&self, x: &Nat, y: &Nat) -> Result<Nat> {
        self.mont_mul_with(x, y, &mut ())
    }

    pub fn mont_mul_with(&self, x: &Nat, y: &Nat, sink: &mut impl CycleSink) -> Result<Nat> {
        self.check_operand(x)?;
        self.check_operand(y)?;
        sink.charge(OpKind::MontMul, cycles::mont_mul_cycles(self.bits));
        Ok(self.product(x, y))
    }

    /// `x * R mod M`.
    pub fn to_mont(&self, x: &Nat) -> Result<Nat> {
        self.mont_mul(x, &self.r2_mod_m)
    }

    /// `x * R^-1 mod M`.
    pub fn from_mont(&self, x: &Nat) -> Result<Nat> {
        self.mont_mul(x, &Nat::one())
    }

    /// Ordinary-domain `a * b mod M`, two Montgomery products.
    pub fn mod_mul(&self, a: &Nat, b: &Nat) -> Result<Nat> {
        self.mod_mul_with(a, b, &mut ())
    }

    pub fn mod_mul_with(&self, a: &Nat, b: &Nat, sink: &mut impl CycleSink) -> Result<Nat> {
        self.check_operand(a)?;
        self.check_operand(b)?;
        sink.charge(OpKind::ModMul, 2 * cycles::mont_mul_cycles(self.bits));
        Ok(self.product(&self.product(a, b), &self.r2_mod_m))
    }

    /// `base^exponent mod M` by the LSB-first Montgomery ladder.
    ///
    /// The loop always runs `bits` iterations; the exponent must fit in
    /// `bits` bits.
    pub fn mont_exp(&self, base: &Nat, exponent: &Nat) -> Result<Nat> {
        self.mont_exp_with(base, exponent, MultiplierSlots::Overlapped, &mut ())
    }

    pub fn mont_exp_with(
        &self,
        base: &Nat,
        exponent: &Nat,
        slots: MultiplierSlots,
        sink: &mut impl CycleSink,
    ) -> Result<Nat> {
        self.check_operand(base)?;
        if exponent.bits() > u64::from(self.bits) {
            return Err(Error::OperandOutOfRange {
                value: exponent.clone(),
                modulus: self.r.clone(),
            });
        }
        let step = cycles::mont_mul_cycles(self.bits);

        let mut square = self.product(base, &self.r2_mod_m);
        let mut acc = self.r_mod_m.clone();
        sink.charge(OpKind::Exponentiate, step);
        for i in 0..u64::from(self.bits) {
            // accumulate and square read the same `square`, so they can
            // share an iteration on two multipliers
            if exponent.bit(i) {
                acc = self.product(&acc, &square);
            }
            square = self.product(&square, &square);
            sink.charge(OpKind::Exponentiate, slots.per_iteration() * step);
        }
        sink.charge(OpKind::Exponentiate, step);
        Ok(self.product(&acc, &Nat::one()))
    }

    /// Number of ladder iterations `mont_exp` runs, independent of the
    /// exponent.
    pub fn exp_iterations(&self) -> u32 {
        self.bits
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::CycleLedger;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn ctx(m: u64, bits: u32) -> MontgomeryContext {
        MontgomeryContext::new(n(m), bits).unwrap()
    }

    #[test]
    fn context_constants() {
        let c = ctx(13, 4);
        assert_eq!(c.r(), &n(16));
        assert_eq!(c.r_inv(), &n(9));
        assert_eq!((c.r() * c.r_inv()) % n(13), n(1));
        assert_eq!(c.r2_mod_m(), &n(256 % 13));

        let c = ctx(3, 2);
        assert_eq!(c.r(), &n(4));
        assert_eq!(c.r_inv(), &n(1));
    }

    #[test]
    fn context_rejects_bad_inputs() {
        assert_eq!(
            MontgomeryContext::new(n(12), 4),
            Err(Error::EvenModulus(n(12)))
        );
        assert!(matches!(
            MontgomeryContext::new(n(13), 3),
            Err(Error::WidthTooSmall { .. })
        ));
        // 2^4 = 16 > 13 but 2^4 must also exceed a 5-bit modulus
        assert!(matches!(
            MontgomeryContext::new(n(17), 4),
            Err(Error::WidthTooSmall { .. })
        ));
        assert!(MontgomeryContext::new(n(1), 4).is_err());
    }

    #[test]
    fn byte_width_rounds_up() {
        assert_eq!(MontgomeryContext::with_byte_width(n(23)).unwrap().bits(), 8);
        assert_eq!(MontgomeryContext::with_byte_width(n(251)).unwrap().bits(), 8);
        assert_eq!(MontgomeryContext::with_byte_width(n(257)).unwrap().bits(), 16);
        assert_eq!(MontgomeryContext::with_byte_width(n(65537)).unwrap().bits(), 24);
    }

    #[test]
    fn mont_mul_examples() {
        let c = ctx(13, 4);
        assert_eq!(c.mont_mul(&n(7), &n(11)).unwrap(), n(4));
        for a in 0..13 {
            assert_eq!(c.mont_mul(&n(a), &n(3)).unwrap(), n(a));
        }
        assert_eq!(c.mont_mul(&n(0), &n(5)).unwrap(), n(0));
        assert!(matches!(
            c.mont_mul(&n(13), &n(1)),
            Err(Error::OperandOutOfRange { .. })
        ));
    }

    #[test]
    fn domain_conversion() {
        let c = ctx(13, 4);
        assert_eq!(c.to_mont(&n(7)).unwrap(), n(8));
        assert_eq!(c.to_mont(&n(0)).unwrap(), n(0));
        for x in 0..13 {
            let m = c.to_mont(&n(x)).unwrap();
            assert_eq!(c.from_mont(&m).unwrap(), n(x));
        }
        assert!(c.to_mont(&n(13)).is_err());
    }

    #[test]
    fn mont_exp_examples() {
        let c = ctx(23, 8);
        assert_eq!(c.mont_exp(&n(5), &n(6)).unwrap(), n(8));
        assert_eq!(c.mont_exp(&n(5), &n(0)).unwrap(), n(1));
        assert_eq!(c.mont_exp(&n(0), &n(3)).unwrap(), n(0));
        assert_eq!(c.mont_exp(&n(0), &n(0)).unwrap(), n(1));
        assert!(c.mont_exp(&n(23), &n(1)).is_err());
        assert!(c.mont_exp(&n(5), &n(256)).is_err());
        assert_eq!(c.mont_exp(&n(5), &n(255)).unwrap(), n(5).modpow(&n(255), &n(23)));
    }

    #[test]
    fn mod_mul_is_ordinary_product() {
        let c = ctx(23, 8);
        for a in 0..23u64 {
            for b in 0..23u64 {
                assert_eq!(c.mod_mul(&n(a), &n(b)).unwrap(), n(a * b % 23));
            }
        }
    }

    #[test]
    fn exp_cycle_charge_is_data_independent() {
        let c = ctx(251, 8);
        let mut costs = Vec::new();
        for e in [0u64, 1, 128, 255] {
            let mut ledger = CycleLedger::new();
            c.mont_exp_with(&n(7), &n(e), MultiplierSlots::Serial, &mut ledger)
                .unwrap();
            costs.push(ledger.total());
        }
        assert!(costs.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(costs[0], cycles::mont_exp_cycles(8, MultiplierSlots::Serial));
    }
}
