use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::MontgomeryContext;
use crate::cycles::{self, CycleSink, OpKind};
use crate::error::{Error, Result};
use crate::Nat;

impl MontgomeryContext {
    /// `a * b^-1 mod M` by plus-minus binary division.
    pub fn mod_div(&self, a: &Nat, b: &Nat) -> Result<Nat> {
        self.mod_div_with(a, b, &mut ())
    }

    pub fn mod_div_with(&self, a: &Nat, b: &Nat, sink: &mut impl CycleSink) -> Result<Nat> {
        self.check_operand(a)?;
        self.check_operand(b)?;
        let not_invertible = || Error::NotInvertible {
            value: b.clone(),
            modulus: self.modulus().clone(),
        };
        if b.is_zero() {
            return Err(not_invertible());
        }
        sink.charge(OpKind::Divide, cycles::mod_div_cycles(self.bits()));

        let m = self.modulus();
        // Invariants: u * b == x * a and v * b == y * a (mod M).
        let mut x = BigInt::from(b.clone());
        let mut y = BigInt::from(m.clone());
        let mut u = a.clone();
        let mut v = Nat::zero();
        loop {
            while x.is_even() {
                x >>= 1u32;
                u = self.halve(u);
            }
            while y.is_even() {
                y >>= 1u32;
                v = self.halve(v);
            }
            if x.magnitude().is_one() {
                return Ok(self.signed(u, x.sign()));
            }
            if y.magnitude().is_one() {
                return Ok(self.signed(v, y.sign()));
            }
            // both odd: exactly one of x + y, x - y is a multiple of 4
            let sum = &x + &y;
            let (t, w) = if (sum.magnitude() & Nat::from(3u8)).is_zero() {
                (sum, self.add(&u, &v))
            } else {
                (&x - &y, self.sub(&u, &v))
            };
            if t.is_zero() {
                return Err(not_invertible());
            }
            if x.magnitude() >= y.magnitude() {
                x = t;
                u = w;
            } else {
                y = t;
                v = w;
            }
        }
    }

    fn halve(&self, value: Nat) -> Nat {
        if value.bit(0) {
            (value + self.modulus()) >> 1u32
        } else {
            value >> 1u32
        }
    }

    fn add(&self, a: &Nat, b: &Nat) -> Nat {
        let s = a + b;
        if &s >= self.modulus() {
            s - self.modulus()
        } else {
            s
        }
    }

    fn sub(&self, a: &Nat, b: &Nat) -> Nat {
        if a >= b {
            a - b
        } else {
            self.modulus() - b + a
        }
    }

    fn signed(&self, value: Nat, sign: Sign) -> Nat {
        if sign == Sign::Minus && !value.is_zero() {
            self.modulus() - value
        } else {
            value
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn examples() {
        let c = MontgomeryContext::new(n(23), 8).unwrap();
        assert_eq!(c.mod_div(&n(14), &n(6)).unwrap(), n(10));
        for a in 0..23 {
            assert_eq!(c.mod_div(&n(a), &n(1)).unwrap(), n(a));
        }
        assert!(matches!(
            c.mod_div(&n(5), &n(0)),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn composite_modulus_detects_shared_factor() {
        let c = MontgomeryContext::new(n(15), 8).unwrap();
        assert!(matches!(
            c.mod_div(&n(1), &n(6)),
            Err(Error::NotInvertible { .. })
        ));
        assert!(matches!(
            c.mod_div(&n(1), &n(5)),
            Err(Error::NotInvertible { .. })
        ));
        for b in [1u64, 2, 4, 7, 8, 11, 13, 14] {
            for a in 0..15 {
                let r = c.mod_div(&n(a), &n(b)).unwrap();
                assert_eq!((r * n(b)) % n(15), n(a));
            }
        }
    }

    #[test]
    fn rejects_unreduced_operands() {
        let c = MontgomeryContext::new(n(23), 8).unwrap();
        assert!(matches!(
            c.mod_div(&n(23), &n(2)),
            Err(Error::OperandOutOfRange { .. })
        ));
        assert!(matches!(
            c.mod_div(&n(2), &n(30)),
            Err(Error::OperandOutOfRange { .. })
        ));
    }
}
