//! Abstract cycle accounting for the arithmetic units.
//!
//! Costs are model constants, not measurements of any particular circuit:
//!
//! | unit                      | cycles                                  |
//! |---------------------------|-----------------------------------------|
//! | Montgomery product        | `k + 2`                                 |
//! | exponentiation            | `(k * slots + 2) * (k + 2)`             |
//! | modular division          | `2k + 4`                                |
//! | residue reduction         | `k + 2` per residue                     |
//! | discrete-log scan         | `k + 2` per step, plus two conversions  |
//! | inverse CRT               | `k + 3` per residue                     |
//!
//! `slots` is 1 when the exponentiator can run its square and accumulate
//! products on two multipliers at once, 2 when they share one. The `+ 2`
//! products in the exponentiation are the entry and exit conversions of
//! the Montgomery domain.

use std::collections::BTreeMap;
use std::fmt;

/// Kind of unit operation a charge is booked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpKind {
    MontMul,
    ModMul,
    Exponentiate,
    Divide,
    Reduce,
    DiscreteLog,
    InverseCrt,
}

impl OpKind {
    pub const ALL: [OpKind; 7] = [
        OpKind::MontMul,
        OpKind::ModMul,
        OpKind::Exponentiate,
        OpKind::Divide,
        OpKind::Reduce,
        OpKind::DiscreteLog,
        OpKind::InverseCrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OpKind::MontMul => "mont_mul",
            OpKind::ModMul => "mod_mul",
            OpKind::Exponentiate => "mont_exp",
            OpKind::Divide => "mod_div",
            OpKind::Reduce => "mod_reduce",
            OpKind::DiscreteLog => "dlog",
            OpKind::InverseCrt => "crt_inverse",
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Multiplier availability inside one exponentiator loop iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiplierSlots {
    /// Square and accumulate products run concurrently.
    Overlapped,
    /// Both products go through one multiplier, one after the other.
    Serial,
}

impl MultiplierSlots {
    pub fn per_iteration(self) -> u64 {
        match self {
            MultiplierSlots::Overlapped => 1,
            MultiplierSlots::Serial => 2,
        }
    }
}

/// Receiver of cycle charges. `()` discards them.
pub trait CycleSink {
    fn charge(&mut self, kind: OpKind, cycles: u64);
}

impl CycleSink for () {
    #[inline]
    fn charge(&mut self, _kind: OpKind, _cycles: u64) {}
}

pub fn mont_mul_cycles(bits: u32) -> u64 {
    u64::from(bits) + 2
}

pub fn mont_exp_cycles(bits: u32, slots: MultiplierSlots) -> u64 {
    (u64::from(bits) * slots.per_iteration() + 2) * mont_mul_cycles(bits)
}

pub fn mod_div_cycles(bits: u32) -> u64 {
    2 * u64::from(bits) + 4
}

pub fn reduce_cycles(bits: u32) -> u64 {
    u64::from(bits) + 2
}

pub fn crt_term_cycles(bits: u32) -> u64 {
    mont_mul_cycles(bits) + 1
}

/// Accumulated cycle counts, broken down by unit operation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CycleLedger {
    total: u64,
    breakdown: BTreeMap<OpKind, u64>,
}

impl CycleLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn get(&self, kind: OpKind) -> u64 {
        self.breakdown.get(&kind).copied().unwrap_or(0)
    }

    pub fn breakdown(&self) -> impl Iterator<Item = (OpKind, u64)> + '_ {
        self.breakdown.iter().map(|(k, v)| (*k, *v))
    }

    /// Folds every charge of `other` into this ledger.
    pub fn absorb(&mut self, other: &CycleLedger) {
        for (kind, cycles) in other.breakdown() {
            self.charge(kind, cycles);
        }
    }

    pub fn clear(&mut self) {
        self.total = 0;
        self.breakdown.clear();
    }
}

impl CycleSink for CycleLedger {
    fn charge(&mut self, kind: OpKind, cycles: u64) {
        if cycles == 0 {
            return;
        }
        self.total += cycles;
        *self.breakdown.entry(kind).or_insert(0) += cycles;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_total_is_sum_of_breakdown() {
        let mut ledger = CycleLedger::new();
        ledger.charge(OpKind::MontMul, 10);
        ledger.charge(OpKind::Divide, 20);
        ledger.charge(OpKind::MontMul, 5);
        ledger.charge(OpKind::Reduce, 0);
        assert_eq!(ledger.total(), 35);
        assert_eq!(ledger.get(OpKind::MontMul), 15);
        assert_eq!(ledger.breakdown().map(|(_, c)| c).sum::<u64>(), 35);
        assert_eq!(ledger.breakdown().count(), 2);
    }

    #[test]
    fn absorb_preserves_conservation() {
        let mut a = CycleLedger::new();
        a.charge(OpKind::Exponentiate, 100);
        let mut b = CycleLedger::new();
        b.charge(OpKind::Exponentiate, 7);
        b.charge(OpKind::DiscreteLog, 3);
        a.absorb(&b);
        assert_eq!(a.total(), 110);
        assert_eq!(a.get(OpKind::Exponentiate), 107);
    }

    #[test]
    fn serial_exponentiation_costs_more() {
        for bits in [8, 16, 64] {
            assert!(
                mont_exp_cycles(bits, MultiplierSlots::Serial)
                    > mont_exp_cycles(bits, MultiplierSlots::Overlapped)
            );
        }
        assert_eq!(mont_exp_cycles(8, MultiplierSlots::Overlapped), 100);
        assert_eq!(mont_exp_cycles(8, MultiplierSlots::Serial), 180);
    }
}
