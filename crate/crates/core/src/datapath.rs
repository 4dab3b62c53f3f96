//! The arithmetic units a scheme controller issues work to.
//!
//! Scheme code is written once against [`Datapath`]. [`Direct`] runs each
//! request immediately with no accounting; the metered datapath in
//! [`crate::dual_engine`] schedules the same requests onto a unit layout
//! and books their cycles. Results never depend on the datapath.

use crate::error::Result;
use crate::modmath::{CrtBasis, MontgomeryContext};
use crate::Nat;

pub trait Datapath {
    /// Independent `base^exponent` jobs. A datapath with several
    /// exponentiators may run them side by side.
    fn exp_batch(&mut self, ctx: &MontgomeryContext, jobs: &[(&Nat, &Nat)]) -> Result<Vec<Nat>>;

    fn mod_mul(&mut self, ctx: &MontgomeryContext, a: &Nat, b: &Nat) -> Result<Nat>;

    fn mod_div(&mut self, ctx: &MontgomeryContext, a: &Nat, b: &Nat) -> Result<Nat>;

    fn reduce(&mut self, ctx: &MontgomeryContext, basis: &CrtBasis, m: &Nat) -> Vec<Nat>;

    fn dlog(&mut self, ctx: &MontgomeryContext, g: &Nat, y: &Nat, bound: u64) -> Result<u64>;

    fn crt_recombine(
        &mut self,
        ctx: &MontgomeryContext,
        basis: &CrtBasis,
        residues: &[Nat],
    ) -> Result<Nat>;
}

/// Unmetered datapath used by the standalone scheme functions.
#[derive(Debug, Clone, Copy, Default)]
pub struct Direct;

impl Datapath for Direct {
    fn exp_batch(&mut self, ctx: &MontgomeryContext, jobs: &[(&Nat, &Nat)]) -> Result<Vec<Nat>> {
        jobs.iter().map(|(b, e)| ctx.mont_exp(b, e)).collect()
    }

    fn mod_mul(&mut self, ctx: &MontgomeryContext, a: &Nat, b: &Nat) -> Result<Nat> {
        ctx.mod_mul(a, b)
    }

    fn mod_div(&mut self, ctx: &MontgomeryContext, a: &Nat, b: &Nat) -> Result<Nat> {
        ctx.mod_div(a, b)
    }

    fn reduce(&mut self, _ctx: &MontgomeryContext, basis: &CrtBasis, m: &Nat) -> Vec<Nat> {
        basis.mod_reduce_vector(m)
    }

    fn dlog(&mut self, ctx: &MontgomeryContext, g: &Nat, y: &Nat, bound: u64) -> Result<u64> {
        ctx.dlog_small(g, y, bound)
    }

    fn crt_recombine(
        &mut self,
        _ctx: &MontgomeryContext,
        basis: &CrtBasis,
        residues: &[Nat],
    ) -> Result<Nat> {
        basis.crt_recombine(residues)
    }
}
