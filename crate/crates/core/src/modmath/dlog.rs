use super::MontgomeryContext;
use crate::cycles::{self, CycleSink, OpKind};
use crate::error::{Error, Result};
use crate::Nat;

impl MontgomeryContext {
    /// Smallest `e < bound` with `g^e == y (mod M)`.
    ///
    /// Linear scan with one Montgomery product per step; the exponents it
    /// is used for are bounded by the small CRT moduli. Baby-step
    /// giant-step would slot in here for wider moduli.
    pub fn dlog_small(&self, g: &Nat, y: &Nat, bound: u64) -> Result<u64> {
        self.dlog_small_with(g, y, bound, &mut ())
    }

    pub fn dlog_small_with(
        &self,
        g: &Nat,
        y: &Nat,
        bound: u64,
        sink: &mut impl CycleSink,
    ) -> Result<u64> {
        self.check_operand(g)?;
        self.check_operand(y)?;
        if bound == 0 {
            return Err(Error::InvalidParams("discrete-log bound must be at least 1".into()));
        }
        let step = cycles::mont_mul_cycles(self.bits());
        let g_bar = self.product(g, self.r2_mod_m());
        let y_bar = self.product(y, self.r2_mod_m());
        sink.charge(OpKind::DiscreteLog, 2 * step);

        let mut current = self.to_mont(&Nat::from(1u8))?;
        for e in 0..bound {
            if current == y_bar {
                return Ok(e);
            }
            current = self.product(&current, &g_bar);
            sink.charge(OpKind::DiscreteLog, step);
        }
        Err(Error::NotFound { bound })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::CycleLedger;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn examples() {
        let c = MontgomeryContext::new(n(23), 8).unwrap();
        assert_eq!(c.dlog_small(&n(5), &n(8), 22).unwrap(), 6);
        assert_eq!(c.dlog_small(&n(5), &n(1), 22).unwrap(), 0);
        assert_eq!(c.dlog_small(&n(5), &n(8), 3), Err(Error::NotFound { bound: 3 }));
        assert!(c.dlog_small(&n(5), &n(8), 0).is_err());
        assert!(c.dlog_small(&n(5), &n(0), 22).is_err());
    }

    #[test]
    fn charges_one_product_per_step() {
        let c = MontgomeryContext::new(n(23), 8).unwrap();
        let mut ledger = CycleLedger::new();
        assert_eq!(c.dlog_small_with(&n(5), &n(8), 22, &mut ledger).unwrap(), 6);
        assert_eq!(ledger.get(OpKind::DiscreteLog), (2 + 6) * 10);
    }
}
