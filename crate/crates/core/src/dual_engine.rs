//! One controller serving both schemes, selected per request, plus the
//! cycle model that contrasts a shared datapath with two separate ones.
//!
//! Layouts:
//!
//! * `Regular`: two independent engines, one per scheme. The encryption
//!   side gets two multipliers and two exponentiators, so the two
//!   exponentiations of a pair run side by side and each ladder overlaps
//!   its square and accumulate products.
//! * `Dual`: a single engine shared by both modes, with one multiplier and
//!   one exponentiator. Encryption exponentiations serialize, and so do the
//!   two products inside each ladder iteration.
//!
//! Key generation and decryption run on one exponentiator and one
//! multiplier in both layouts, so their cycle counts match.
//!
//! Results are identical across layouts; only the ledgers differ.

use std::fmt;

use crate::ceg::{self, CegCiphertext, CegPublicKey};
use crate::cycles::{CycleLedger, MultiplierSlots};
use crate::datapath::Datapath;
use crate::elgamal::{self, Ciphertext, ElGamalPublicKey, ElGamalSecretKey};
use crate::error::{Error, Result};
use crate::modmath::{CrtBasis, MontgomeryContext};
use crate::rng::RandomSource;
use crate::Nat;

/// The select signal: which homomorphism a request uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EngineMode {
    Multiplicative,
    Additive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layout {
    Regular,
    Dual,
}

impl Layout {
    pub fn name(self) -> &'static str {
        match self {
            Layout::Regular => "regular",
            Layout::Dual => "dual",
        }
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Unit counts available to the encryption controller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    pub layout: Layout,
    pub multiplier_count: u32,
    pub exponentiator_count: u32,
}

impl EngineConfig {
    pub fn regular() -> Self {
        Self {
            layout: Layout::Regular,
            multiplier_count: 2,
            exponentiator_count: 2,
        }
    }

    pub fn dual() -> Self {
        Self {
            layout: Layout::Dual,
            multiplier_count: 1,
            exponentiator_count: 1,
        }
    }

    pub fn for_layout(layout: Layout) -> Self {
        match layout {
            Layout::Regular => Self::regular(),
            Layout::Dual => Self::dual(),
        }
    }

    fn encrypt_units(&self) -> Units {
        Units {
            multipliers: self.multiplier_count.max(1),
            exponentiators: self.exponentiator_count.max(1),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Units {
    multipliers: u32,
    exponentiators: u32,
}

impl Units {
    const SINGLE: Units = Units {
        multipliers: 1,
        exponentiators: 1,
    };

    fn slots(self) -> MultiplierSlots {
        if self.multipliers >= 2 {
            MultiplierSlots::Overlapped
        } else {
            MultiplierSlots::Serial
        }
    }
}

/// Datapath that books every unit operation into a ledger.
///
/// Exponentiation batches are issued in rounds of `exponentiators` jobs;
/// a round costs as much as its slowest job.
struct Metered<'a> {
    units: Units,
    ledger: &'a mut CycleLedger,
}

impl Datapath for Metered<'_> {
    fn exp_batch(&mut self, ctx: &MontgomeryContext, jobs: &[(&Nat, &Nat)]) -> Result<Vec<Nat>> {
        let slots = self.units.slots();
        let mut out = Vec::with_capacity(jobs.len());
        for round in jobs.chunks(self.units.exponentiators as usize) {
            let mut slowest = CycleLedger::new();
            for (base, exponent) in round {
                let mut scratch = CycleLedger::new();
                out.push(ctx.mont_exp_with(base, exponent, slots, &mut scratch)?);
                if scratch.total() > slowest.total() {
                    slowest = scratch;
                }
            }
            self.ledger.absorb(&slowest);
        }
        Ok(out)
    }

    fn mod_mul(&mut self, ctx: &MontgomeryContext, a: &Nat, b: &Nat) -> Result<Nat> {
        ctx.mod_mul_with(a, b, self.ledger)
    }

    fn mod_div(&mut self, ctx: &MontgomeryContext, a: &Nat, b: &Nat) -> Result<Nat> {
        ctx.mod_div_with(a, b, self.ledger)
    }

    fn reduce(&mut self, ctx: &MontgomeryContext, basis: &CrtBasis, m: &Nat) -> Vec<Nat> {
        basis.mod_reduce_vector_with(m, ctx.bits(), self.ledger)
    }

    fn dlog(&mut self, ctx: &MontgomeryContext, g: &Nat, y: &Nat, bound: u64) -> Result<u64> {
        ctx.dlog_small_with(g, y, bound, self.ledger)
    }

    fn crt_recombine(
        &mut self,
        ctx: &MontgomeryContext,
        basis: &CrtBasis,
        residues: &[Nat],
    ) -> Result<Nat> {
        basis.crt_recombine_with(residues, ctx.bits(), self.ledger)
    }
}

/// Public key for either mode.
#[derive(Debug, Clone, Copy)]
pub enum PublicKeyRef<'a> {
    ElGamal(&'a ElGamalPublicKey),
    Ceg(&'a CegPublicKey),
}

impl PublicKeyRef<'_> {
    pub fn mode(&self) -> EngineMode {
        match self {
            PublicKeyRef::ElGamal(_) => EngineMode::Multiplicative,
            PublicKeyRef::Ceg(_) => EngineMode::Additive,
        }
    }
}

/// Ciphertext for either mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyCiphertext {
    ElGamal(Ciphertext),
    Ceg(CegCiphertext),
}

impl AnyCiphertext {
    pub fn mode(&self) -> EngineMode {
        match self {
            AnyCiphertext::ElGamal(_) => EngineMode::Multiplicative,
            AnyCiphertext::Ceg(_) => EngineMode::Additive,
        }
    }
}

fn select(mode: EngineMode, wired: EngineMode) -> Result<()> {
    if mode != wired {
        return Err(Error::InvalidParams(format!(
            "engine set to {mode:?} but given {wired:?} operands"
        )));
    }
    Ok(())
}

/// An engine instance with its per-phase ledgers. Single owner; clone or
/// build another engine to run in parallel.
#[derive(Debug, Clone)]
pub struct Engine {
    config: EngineConfig,
    keygen: CycleLedger,
    encrypt: CycleLedger,
    decrypt: CycleLedger,
}

impl Engine {
    pub fn new(config: EngineConfig) -> Self {
        Self {
            config,
            keygen: CycleLedger::new(),
            encrypt: CycleLedger::new(),
            decrypt: CycleLedger::new(),
        }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn keygen_ledger(&self) -> &CycleLedger {
        &self.keygen
    }

    pub fn encrypt_ledger(&self) -> &CycleLedger {
        &self.encrypt
    }

    pub fn decrypt_ledger(&self) -> &CycleLedger {
        &self.decrypt
    }

    pub fn reset(&mut self) {
        self.keygen.clear();
        self.encrypt.clear();
        self.decrypt.clear();
    }

    pub fn keygen_elgamal(
        &mut self,
        params: &elgamal::ElGamalParams,
        rng: &mut impl RandomSource,
    ) -> Result<(ElGamalPublicKey, ElGamalSecretKey)> {
        let mut dp = Metered {
            units: Units::SINGLE,
            ledger: &mut self.keygen,
        };
        elgamal::keygen_on(params, rng, &mut dp)
    }

    pub fn keygen_ceg(
        &mut self,
        params: &ceg::CegParams,
        rng: &mut impl RandomSource,
    ) -> Result<(CegPublicKey, ElGamalSecretKey)> {
        let mut dp = Metered {
            units: Units::SINGLE,
            ledger: &mut self.keygen,
        };
        ceg::ceg_keygen_on(params, rng, &mut dp)
    }

    pub fn encrypt(
        &mut self,
        mode: EngineMode,
        pk: PublicKeyRef<'_>,
        m: &Nat,
        rng: &mut impl RandomSource,
    ) -> Result<AnyCiphertext> {
        select(mode, pk.mode())?;
        let mut dp = Metered {
            units: self.config.encrypt_units(),
            ledger: &mut self.encrypt,
        };
        match pk {
            PublicKeyRef::ElGamal(pk) => {
                elgamal::encrypt_on(pk, m, rng, &mut dp).map(AnyCiphertext::ElGamal)
            }
            PublicKeyRef::Ceg(pk) => ceg::ceg_encrypt_on(pk, m, rng, &mut dp).map(AnyCiphertext::Ceg),
        }
    }

    pub fn decrypt(
        &mut self,
        mode: EngineMode,
        pk: PublicKeyRef<'_>,
        sk: &ElGamalSecretKey,
        ct: &AnyCiphertext,
    ) -> Result<Nat> {
        select(mode, pk.mode())?;
        select(mode, ct.mode())?;
        let mut dp = Metered {
            units: Units::SINGLE,
            ledger: &mut self.decrypt,
        };
        match (pk, ct) {
            (PublicKeyRef::ElGamal(pk), AnyCiphertext::ElGamal(ct)) => {
                elgamal::decrypt_on(pk, sk, ct, &mut dp)
            }
            (PublicKeyRef::Ceg(pk), AnyCiphertext::Ceg(ct)) => ceg::ceg_decrypt_on(pk, sk, ct, &mut dp),
            _ => unreachable!("modes checked above"),
        }
    }
}

/// Arithmetic-unit inventory of a layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResourceReport {
    pub multipliers: u32,
    pub exponentiators: u32,
    pub dividers: u32,
    pub adders: u32,
    pub memory_blocks: u32,
}

impl ResourceReport {
    const ONE_ENGINE: ResourceReport = ResourceReport {
        multipliers: 1,
        exponentiators: 1,
        dividers: 1,
        adders: 1,
        memory_blocks: 1,
    };

    pub fn units(&self) -> [(&'static str, u32); 5] {
        [
            ("multipliers", self.multipliers),
            ("exponentiators", self.exponentiators),
            ("dividers", self.dividers),
            ("adders", self.adders),
            ("memory_blocks", self.memory_blocks),
        ]
    }

    /// Per-unit reduction of `dual` relative to `self`.
    pub fn reduction_against(&self, dual: &ResourceReport) -> Result<Vec<(&'static str, f64)>> {
        self.units()
            .iter()
            .zip(dual.units())
            .map(|((name, regular), (_, shared))| {
                Ok((*name, reduction_percent(f64::from(*regular), f64::from(shared))?))
            })
            .collect()
    }
}

/// Regular: two engines' worth of units. Dual: one shared engine.
pub fn resource_report(config: &EngineConfig) -> ResourceReport {
    let engines = match config.layout {
        Layout::Regular => 2,
        Layout::Dual => 1,
    };
    let one = ResourceReport::ONE_ENGINE;
    ResourceReport {
        multipliers: one.multipliers * engines,
        exponentiators: one.exponentiators * engines,
        dividers: one.dividers * engines,
        adders: one.adders * engines,
        memory_blocks: one.memory_blocks * engines,
    }
}

/// `(regular - dual) / regular * 100`. Negative when `dual` is larger.
pub fn reduction_percent(regular: f64, dual: f64) -> Result<f64> {
    if regular == 0.0 {
        return Err(Error::DivisionByZero);
    }
    Ok((regular - dual) / regular * 100.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ceg::CegParams;
    use crate::elgamal::ElGamalParams;
    use crate::rng::ScriptedSource;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn keys() -> (ElGamalPublicKey, CegPublicKey, ElGamalSecretKey) {
        let (pk, sk) =
            elgamal::keygen(&ElGamalParams::new(23u32, 5u32), &mut ScriptedSource::new([6u32])).unwrap();
        let (cpk, _) =
            ceg::ceg_keygen(&CegParams::new(23u32, 5u32, [3u32, 5]), &mut ScriptedSource::new([6u32]))
                .unwrap();
        (pk, cpk, sk)
    }

    #[test]
    fn engine_encrypt_examples() {
        let (pk, cpk, sk) = keys();
        let mut dual = Engine::new(EngineConfig::dual());
        let mut regular = Engine::new(EngineConfig::regular());

        let ct = dual
            .encrypt(EngineMode::Multiplicative, PublicKeyRef::ElGamal(&pk), &n(10), &mut ScriptedSource::new([3u32]))
            .unwrap();
        assert_eq!(ct, AnyCiphertext::ElGamal(Ciphertext::new(10u32, 14u32)));
        let ct_r = regular
            .encrypt(EngineMode::Multiplicative, PublicKeyRef::ElGamal(&pk), &n(10), &mut ScriptedSource::new([3u32]))
            .unwrap();
        assert_eq!(ct, ct_r);
        assert!(dual.encrypt_ledger().total() >= regular.encrypt_ledger().total());

        let ct = dual
            .encrypt(EngineMode::Additive, PublicKeyRef::Ceg(&cpk), &n(7), &mut ScriptedSource::new([2u32, 3]))
            .unwrap();
        assert_eq!(
            ct,
            AnyCiphertext::Ceg(CegCiphertext::new(
                vec![Ciphertext::new(2u32, 21u32), Ciphertext::new(10u32, 12u32)],
                0
            ))
        );

        let m = dual
            .decrypt(
                EngineMode::Multiplicative,
                PublicKeyRef::ElGamal(&pk),
                &sk,
                &AnyCiphertext::ElGamal(Ciphertext::new(10u32, 14u32)),
            )
            .unwrap();
        assert_eq!(m, n(10));
        let zero = AnyCiphertext::Ceg(ceg::zero_ciphertext(&cpk));
        assert_eq!(
            dual.decrypt(EngineMode::Additive, PublicKeyRef::Ceg(&cpk), &sk, &zero).unwrap(),
            n(0)
        );
    }

    #[test]
    fn select_signal_must_match_operands() {
        let (pk, cpk, sk) = keys();
        let mut engine = Engine::new(EngineConfig::dual());
        assert!(engine
            .encrypt(EngineMode::Additive, PublicKeyRef::ElGamal(&pk), &n(3), &mut ScriptedSource::new([1u32]))
            .is_err());
        let ct = AnyCiphertext::ElGamal(Ciphertext::identity());
        assert!(engine.decrypt(EngineMode::Additive, PublicKeyRef::Ceg(&cpk), &sk, &ct).is_err());
        assert_eq!(engine.encrypt_ledger().total(), 0);
    }

    #[test]
    fn decrypt_cycles_match_across_layouts() {
        let (pk, _, sk) = keys();
        let ct = AnyCiphertext::ElGamal(Ciphertext::new(10u32, 14u32));
        let mut totals = Vec::new();
        for config in [EngineConfig::regular(), EngineConfig::dual()] {
            let mut engine = Engine::new(config);
            engine
                .decrypt(EngineMode::Multiplicative, PublicKeyRef::ElGamal(&pk), &sk, &ct)
                .unwrap();
            totals.push(engine.decrypt_ledger().total());
        }
        assert_eq!(totals[0], totals[1]);
        assert!(totals[0] > 0);
    }

    #[test]
    fn resource_reports() {
        let regular = resource_report(&EngineConfig::regular());
        let dual = resource_report(&EngineConfig::dual());
        assert_eq!(regular.multipliers, 2);
        assert_eq!(dual.multipliers, 1);
        for ((_, r), (_, d)) in regular.units().iter().zip(dual.units()) {
            assert!(d <= *r);
        }
        for (_, pct) in regular.reduction_against(&dual).unwrap() {
            assert!(pct > 0.0);
            assert!((pct - 50.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reduction_percent_examples() {
        assert!((reduction_percent(909.0, 635.0).unwrap() - 30.14).abs() <= 0.01);
        assert!((reduction_percent(1137.0, 735.0).unwrap() - 35.36).abs() <= 0.01);
        assert_eq!(reduction_percent(42.0, 42.0).unwrap(), 0.0);
        assert!(reduction_percent(10.0, 12.0).unwrap() < 0.0);
        assert_eq!(reduction_percent(0.0, 1.0), Err(Error::DivisionByZero));
    }
}
