//! Blind evaluation by an untrusted third-party block.
//!
//! The trusted side generates keys, encrypts the inputs and hands the
//! untrusted block nothing but public parameters and ciphertexts. The block
//! folds them with the scheme's homomorphic operation and returns one
//! ciphertext, which the trusted side decrypts.
//!
//! [`UntrustedIp::evaluate`] has no parameter that can carry a secret key
//! or a plaintext:
//!
//! ```compile_fail
//! use phe_core::elgamal::{self, ElGamalParams};
//! use phe_core::isolation_harness::{FoldOp, HonestIp, UntrustedIp};
//! use phe_core::rng::SeededSource;
//!
//! let (_pk, sk) = elgamal::keygen(&ElGamalParams::new(23u32, 5u32), &mut SeededSource::new(1)).unwrap();
//! let mut ip = HonestIp;
//! // a secret key is not a `PublicParams`
//! ip.evaluate(&sk, &[], FoldOp::MultiplyFold);
//! ```
//!
//! The mismatch check in [`Scenario::run`] recomputes the expected result
//! from the known plaintexts. It is a test oracle for the demo, not a
//! deployable tamper detector.

use std::fmt;

use num_bigint::RandBigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::ceg::{self, CegParams, CegPublicKey};
use crate::dual_engine::{AnyCiphertext, EngineMode};
use crate::elgamal::{self, Ciphertext, ElGamalParams, ElGamalPublicKey, ElGamalSecretKey};
use crate::error::{Error, Result};
use crate::rng::SeededSource;
use crate::Nat;

/// Public material the untrusted block may see.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PublicParams {
    Multiplicative(ElGamalPublicKey),
    Additive(CegPublicKey),
}

impl PublicParams {
    pub fn modulus(&self) -> &Nat {
        match self {
            PublicParams::Multiplicative(pk) => pk.n(),
            PublicParams::Additive(pk) => pk.base().n(),
        }
    }

    fn entries(&self) -> Vec<(&'static str, Vec<Nat>)> {
        let base = match self {
            PublicParams::Multiplicative(pk) => pk,
            PublicParams::Additive(pk) => pk.base(),
        };
        let mut out = vec![
            ("n", vec![base.n().clone()]),
            ("g", vec![base.g().clone()]),
            ("h", vec![base.h().clone()]),
        ];
        if let PublicParams::Additive(pk) = self {
            out.push(("d", pk.basis().moduli().to_vec()));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FoldOp {
    MultiplyFold,
    AddFold,
}

impl FoldOp {
    pub fn for_mode(mode: EngineMode) -> Self {
        match mode {
            EngineMode::Multiplicative => FoldOp::MultiplyFold,
            EngineMode::Additive => FoldOp::AddFold,
        }
    }
}

/// The contract a third-party evaluator implements.
pub trait UntrustedIp {
    fn evaluate(
        &mut self,
        params: &PublicParams,
        inputs: &[AnyCiphertext],
        op: FoldOp,
    ) -> Result<AnyCiphertext>;
}

/// Folds the inputs with the homomorphic operation matching `op`.
pub fn honest_fold(params: &PublicParams, inputs: &[AnyCiphertext], op: FoldOp) -> Result<AnyCiphertext> {
    let (first, rest) = inputs
        .split_first()
        .ok_or_else(|| Error::InvalidParams("nothing to fold".into()))?;
    let mut acc = first.clone();
    for next in rest {
        acc = match (params, op, &acc, next) {
            (
                PublicParams::Multiplicative(pk),
                FoldOp::MultiplyFold,
                AnyCiphertext::ElGamal(a),
                AnyCiphertext::ElGamal(b),
            ) => AnyCiphertext::ElGamal(elgamal::homomorphic_mul(pk, a, b)?),
            (PublicParams::Additive(pk), FoldOp::AddFold, AnyCiphertext::Ceg(a), AnyCiphertext::Ceg(b)) => {
                AnyCiphertext::Ceg(ceg::homomorphic_add(pk, a, b)?)
            }
            _ => {
                return Err(Error::CiphertextMalformed(
                    "fold operation does not match the ciphertext scheme".into(),
                ))
            }
        };
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct HonestIp;

impl UntrustedIp for HonestIp {
    fn evaluate(&mut self, params: &PublicParams, inputs: &[AnyCiphertext], op: FoldOp) -> Result<AnyCiphertext> {
        honest_fold(params, inputs, op)
    }
}

/// Computes honestly but keeps a copy of everything it handles.
#[derive(Debug, Clone, Default)]
pub struct LoggingIp {
    pub captured: IpTranscript,
}

impl UntrustedIp for LoggingIp {
    fn evaluate(&mut self, params: &PublicParams, inputs: &[AnyCiphertext], op: FoldOp) -> Result<AnyCiphertext> {
        self.captured = IpTranscript::default();
        self.captured.record_params(params);
        self.captured.record_inputs(inputs);
        let out = honest_fold(params, inputs, op)?;
        self.captured.record_output(&out);
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    C1,
    C2,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Component::C1 => "c1",
            Component::C2 => "c2",
        })
    }
}

/// One ciphertext component to overwrite before folding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TamperTarget {
    pub input: usize,
    pub pair: usize,
    pub component: Component,
    pub replacement: Nat,
}

impl TamperTarget {
    /// Applies the perturbation. Out-of-range indices leave the inputs
    /// unchanged and return `false`.
    pub fn apply(&self, inputs: &mut [AnyCiphertext]) -> bool {
        let pair = match inputs.get_mut(self.input) {
            Some(AnyCiphertext::ElGamal(ct)) if self.pair == 0 => ct,
            Some(AnyCiphertext::Ceg(ct)) => match ct.pairs.get_mut(self.pair) {
                Some(p) => p,
                None => return false,
            },
            _ => return false,
        };
        let slot = match self.component {
            Component::C1 => &mut pair.c1,
            Component::C2 => &mut pair.c2,
        };
        *slot = self.replacement.clone();
        true
    }
}

/// Overwrites exactly one ciphertext component per run, then folds.
#[derive(Debug, Clone)]
pub struct TamperingIp {
    choice: TamperChoice,
    pub last_target: Option<TamperTarget>,
}

#[derive(Debug, Clone)]
enum TamperChoice {
    Seeded(Box<ChaCha20Rng>),
    Fixed(TamperTarget),
}

impl TamperingIp {
    /// Picks the input, pair, component and a different non-zero value
    /// from a seeded stream.
    pub fn seeded(seed: u64) -> Self {
        Self {
            choice: TamperChoice::Seeded(Box::new(ChaCha20Rng::seed_from_u64(seed))),
            last_target: None,
        }
    }

    pub fn targeted(target: TamperTarget) -> Self {
        Self {
            choice: TamperChoice::Fixed(target),
            last_target: None,
        }
    }

    fn pick(rng: &mut ChaCha20Rng, n: &Nat, inputs: &[AnyCiphertext]) -> Option<TamperTarget> {
        if inputs.is_empty() || n <= &Nat::from(2u8) {
            return None;
        }
        let input = rng.gen_range(0..inputs.len());
        let (pair, current) = match &inputs[input] {
            AnyCiphertext::ElGamal(ct) => (0, ct),
            AnyCiphertext::Ceg(ct) => {
                let pair = rng.gen_range(0..ct.pairs.len());
                (pair, &ct.pairs[pair])
            }
        };
        let component = if rng.gen_bool(0.5) { Component::C1 } else { Component::C2 };
        let old = match component {
            Component::C1 => &current.c1,
            Component::C2 => &current.c2,
        };
        // shift by a non-zero offset into [1, n) \ {old}
        let offset = rng.gen_biguint_range(&Nat::one(), &(n - 1u8));
        let mut replacement = (old + offset) % n;
        if replacement.is_zero() {
            replacement = if old == &(n - 1u8) { Nat::one() } else { n - 1u8 };
        }
        Some(TamperTarget {
            input,
            pair,
            component,
            replacement,
        })
    }
}

impl UntrustedIp for TamperingIp {
    fn evaluate(&mut self, params: &PublicParams, inputs: &[AnyCiphertext], op: FoldOp) -> Result<AnyCiphertext> {
        let target = match &mut self.choice {
            TamperChoice::Fixed(t) => Some(t.clone()),
            TamperChoice::Seeded(rng) => Self::pick(rng, params.modulus(), inputs),
        };
        let mut working = inputs.to_vec();
        if let Some(t) = &target {
            t.apply(&mut working);
        }
        self.last_target = target;
        honest_fold(params, &working, op)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdversaryKind {
    Honest,
    Logger,
    Tamperer,
}

impl AdversaryKind {
    pub fn name(self) -> &'static str {
        match self {
            AdversaryKind::Honest => "honest",
            AdversaryKind::Logger => "logger",
            AdversaryKind::Tamperer => "tamperer",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Observed,
    Emitted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Input(usize),
    Output,
}

/// One ciphertext component crossing the boundary: the `component` of
/// every pair of one ciphertext.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptEntry {
    pub direction: Direction,
    pub source: Source,
    pub component: Component,
    pub values: Vec<Nat>,
}

/// Everything that crossed the untrusted boundary, in order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IpTranscript {
    pub params: Vec<(&'static str, Vec<Nat>)>,
    pub entries: Vec<TranscriptEntry>,
}

fn pairs_of(ct: &AnyCiphertext) -> Vec<&Ciphertext> {
    match ct {
        AnyCiphertext::ElGamal(c) => vec![c],
        AnyCiphertext::Ceg(c) => c.pairs.iter().collect(),
    }
}

impl IpTranscript {
    fn record_params(&mut self, params: &PublicParams) {
        self.params = params.entries();
    }

    fn record(&mut self, direction: Direction, source: Source, ct: &AnyCiphertext) {
        let pairs = pairs_of(ct);
        for component in [Component::C1, Component::C2] {
            let values = pairs
                .iter()
                .map(|p| match component {
                    Component::C1 => p.c1.clone(),
                    Component::C2 => p.c2.clone(),
                })
                .collect();
            self.entries.push(TranscriptEntry {
                direction,
                source,
                component,
                values,
            });
        }
    }

    fn record_inputs(&mut self, inputs: &[AnyCiphertext]) {
        for (i, ct) in inputs.iter().enumerate() {
            self.record(Direction::Observed, Source::Input(i), ct);
        }
    }

    fn record_output(&mut self, out: &AnyCiphertext) {
        self.record(Direction::Emitted, Source::Output, out);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn hex_list(values: &[Nat]) -> String {
    values
        .iter()
        .map(|v| v.to_str_radix(16))
        .collect::<Vec<_>>()
        .join(",")
}

/// Line-oriented log: one `param` line per public value, then one line
/// per entry.
impl fmt::Display for IpTranscript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, values) in &self.params {
            writeln!(f, "param {name} {}", hex_list(values))?;
        }
        for e in &self.entries {
            let direction = match e.direction {
                Direction::Observed => "observed",
                Direction::Emitted => "emitted",
            };
            match e.source {
                Source::Input(i) => write!(f, "{direction} input {i}")?,
                Source::Output => write!(f, "{direction} output")?,
            }
            writeln!(f, " {} {}", e.component, hex_list(&e.values))?;
        }
        Ok(())
    }
}

/// Modulus, generator and (for the additive scheme) CRT moduli of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioParams {
    pub n: Nat,
    pub g: Nat,
    pub moduli: Vec<Nat>,
}

impl ScenarioParams {
    /// `n = 23, g = 5`, and `d = (3, 5)` for the additive scheme.
    pub fn desk(mode: EngineMode) -> Self {
        let moduli = match mode {
            EngineMode::Multiplicative => Vec::new(),
            EngineMode::Additive => vec![Nat::from(3u8), Nat::from(5u8)],
        };
        Self {
            n: Nat::from(23u8),
            g: Nat::from(5u8),
            moduli,
        }
    }

    /// `n = 37, g = 2, d = (3, 5)`: the order of `g` (36) leaves room for
    /// eight-way additive folds.
    pub fn desk_deep_additive() -> Self {
        Self {
            n: Nat::from(37u8),
            g: Nat::from(2u8),
            moduli: vec![Nat::from(3u8), Nat::from(5u8)],
        }
    }
}

/// Keys, encrypted inputs and the expected result of one blind
/// evaluation, ready to hand to any number of IPs.
#[derive(Debug, Clone)]
pub struct Scenario {
    mode: EngineMode,
    public: PublicParams,
    secret: ElGamalSecretKey,
    plaintexts: Vec<Nat>,
    inputs: Vec<AnyCiphertext>,
    expected: Nat,
}

impl Scenario {
    pub fn prepare(mode: EngineMode, params: &ScenarioParams, plaintexts: &[Nat], seed: u64) -> Result<Self> {
        if plaintexts.is_empty() {
            return Err(Error::InvalidParams("at least one plaintext is required".into()));
        }
        let mut rng = SeededSource::new(seed);
        let (public, secret, inputs, expected) = match mode {
            EngineMode::Multiplicative => {
                let group = ElGamalParams::new(params.n.clone(), params.g.clone());
                let (pk, sk) = elgamal::keygen(&group, &mut rng)?;
                let inputs = plaintexts
                    .iter()
                    .map(|m| elgamal::encrypt(&pk, m, &mut rng).map(AnyCiphertext::ElGamal))
                    .collect::<Result<Vec<_>>>()?;
                let expected = plaintexts.iter().fold(Nat::one(), |acc, m| acc * m % pk.n());
                (PublicParams::Multiplicative(pk), sk, inputs, expected)
            }
            EngineMode::Additive => {
                let ceg_params = CegParams {
                    group: ElGamalParams::new(params.n.clone(), params.g.clone()),
                    moduli: params.moduli.clone(),
                };
                let (pk, sk) = ceg::ceg_keygen(&ceg_params, &mut rng)?;
                let inputs = plaintexts
                    .iter()
                    .map(|m| ceg::ceg_encrypt(&pk, m, &mut rng).map(AnyCiphertext::Ceg))
                    .collect::<Result<Vec<_>>>()?;
                let expected = plaintexts.iter().sum::<Nat>() % pk.plaintext_modulus();
                (PublicParams::Additive(pk), sk, inputs, expected)
            }
        };
        Ok(Self {
            mode,
            public,
            secret,
            plaintexts: plaintexts.to_vec(),
            inputs,
            expected,
        })
    }

    pub fn mode(&self) -> EngineMode {
        self.mode
    }

    pub fn public_params(&self) -> &PublicParams {
        &self.public
    }

    pub fn secret_key(&self) -> &ElGamalSecretKey {
        &self.secret
    }

    pub fn plaintexts(&self) -> &[Nat] {
        &self.plaintexts
    }

    pub fn inputs(&self) -> &[AnyCiphertext] {
        &self.inputs
    }

    pub fn expected(&self) -> &Nat {
        &self.expected
    }

    /// Decrypts with the scenario's secret key.
    pub fn decrypt(&self, ct: &AnyCiphertext) -> Result<Nat> {
        match (&self.public, ct) {
            (PublicParams::Multiplicative(pk), AnyCiphertext::ElGamal(c)) => elgamal::decrypt(pk, &self.secret, c),
            (PublicParams::Additive(pk), AnyCiphertext::Ceg(c)) => ceg::ceg_decrypt(pk, &self.secret, c),
            _ => Err(Error::CiphertextMalformed("ciphertext scheme does not match the keys".into())),
        }
    }

    /// Hands the ciphertexts to `ip`, decrypts its answer and checks it
    /// against the plaintext oracle.
    pub fn run(&self, ip: &mut dyn UntrustedIp) -> ScenarioOutcome {
        let mut transcript = IpTranscript::default();
        transcript.record_params(&self.public);
        transcript.record_inputs(&self.inputs);

        let result = ip
            .evaluate(&self.public, &self.inputs, FoldOp::for_mode(self.mode))
            .and_then(|out| {
                transcript.record_output(&out);
                self.verify(&out)
            });
        let audit = audit_transcript(&transcript, &self.plaintexts, &self.secret);
        ScenarioOutcome {
            result,
            expected: self.expected.clone(),
            transcript,
            audit,
            adversary_log: None,
        }
    }

    fn verify(&self, out: &AnyCiphertext) -> Result<Nat> {
        let mismatch = |decrypted: String| Error::VerificationMismatch {
            expected: self.expected.clone(),
            decrypted,
        };
        match self.decrypt(out) {
            Ok(m) if m == self.expected => Ok(m),
            Ok(m) => Err(mismatch(m.to_string())),
            Err(e @ Error::AdditionDepthExceeded { .. }) => Err(e),
            Err(
                e @ (Error::DlogNotFound { .. }
                | Error::NotInvertible { .. }
                | Error::CiphertextOutOfRange { .. }
                | Error::CiphertextMalformed(_)),
            ) => Err(mismatch(format!("undecryptable ({e})"))),
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScenarioOutcome {
    pub result: Result<Nat>,
    pub expected: Nat,
    /// What crossed the boundary, as recorded by the trusted side.
    pub transcript: IpTranscript,
    /// Audit of `transcript` against the plaintexts and the secret key.
    pub audit: AuditVerdict,
    /// What a logging adversary kept for itself.
    pub adversary_log: Option<IpTranscript>,
}

impl ScenarioOutcome {
    pub fn is_mismatch(&self) -> bool {
        matches!(self.result, Err(Error::VerificationMismatch { .. }))
    }
}

/// Runs a scenario at the desk-scale parameters for `mode`.
pub fn run_scenario(
    mode: EngineMode,
    plaintexts: &[Nat],
    adversary: AdversaryKind,
    seed: u64,
) -> Result<ScenarioOutcome> {
    run_scenario_with(&ScenarioParams::desk(mode), mode, plaintexts, adversary, seed)
}

pub fn run_scenario_with(
    params: &ScenarioParams,
    mode: EngineMode,
    plaintexts: &[Nat],
    adversary: AdversaryKind,
    seed: u64,
) -> Result<ScenarioOutcome> {
    let scenario = Scenario::prepare(mode, params, plaintexts, seed)?;
    Ok(match adversary {
        AdversaryKind::Honest => scenario.run(&mut HonestIp),
        AdversaryKind::Logger => {
            let mut ip = LoggingIp::default();
            let mut outcome = scenario.run(&mut ip);
            outcome.adversary_log = Some(ip.captured);
            outcome
        }
        AdversaryKind::Tamperer => {
            let mut ip = TamperingIp::seeded(seed ^ 0x7a3b_e4d1_0c55_9f21);
            scenario.run(&mut ip)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SecretKind {
    Plaintext(usize),
    SecretKey,
}

/// A transcript value that happens to equal a secret. With small moduli
/// these coincidences are expected; they are not exposure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub entry: usize,
    pub value: Nat,
    pub matches: SecretKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditVerdict {
    pub ciphertext_only: bool,
    pub entry_count: usize,
    pub collisions: Vec<Collision>,
}

impl fmt::Display for AuditVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ciphertext_only {
            write!(f, "ciphertext-only, {} entries", self.entry_count)?;
        } else {
            write!(f, "NON-CIPHERTEXT DATA, {} entries", self.entry_count)?;
        }
        if !self.collisions.is_empty() {
            write!(f, ", {} numeric collision(s), not exposure", self.collisions.len())?;
        }
        Ok(())
    }
}

/// Checks that every entry is a ciphertext component and lists numeric
/// coincidences with the secrets.
pub fn audit_transcript(transcript: &IpTranscript, plaintexts: &[Nat], sk: &ElGamalSecretKey) -> AuditVerdict {
    let ciphertext_only = transcript.entries.iter().all(|e| {
        let shape_ok = !e.values.is_empty();
        match (e.direction, e.source) {
            (Direction::Observed, Source::Input(_)) | (Direction::Emitted, Source::Output) => shape_ok,
            _ => false,
        }
    });
    let mut collisions = Vec::new();
    for (i, entry) in transcript.entries.iter().enumerate() {
        for value in &entry.values {
            for (j, m) in plaintexts.iter().enumerate() {
                if value == m {
                    collisions.push(Collision {
                        entry: i,
                        value: value.clone(),
                        matches: SecretKind::Plaintext(j),
                    });
                }
            }
            if value == sk.exponent() {
                collisions.push(Collision {
                    entry: i,
                    value: value.clone(),
                    matches: SecretKind::SecretKey,
                });
            }
        }
    }
    AuditVerdict {
        ciphertext_only,
        entry_count: transcript.entries.len(),
        collisions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nats(v: &[u64]) -> Vec<Nat> {
        v.iter().copied().map(Nat::from).collect()
    }

    #[test]
    fn honest_examples() {
        let out = run_scenario(EngineMode::Multiplicative, &nats(&[3, 5]), AdversaryKind::Honest, 1).unwrap();
        assert_eq!(out.result.unwrap(), Nat::from(15u8));
        let out = run_scenario(EngineMode::Additive, &nats(&[2, 4]), AdversaryKind::Honest, 1).unwrap();
        assert_eq!(out.result.unwrap(), Nat::from(6u8));
    }

    #[test]
    fn tamperer_example() {
        let out = run_scenario(EngineMode::Additive, &nats(&[2, 4]), AdversaryKind::Tamperer, 1).unwrap();
        assert!(out.is_mismatch(), "{:?}", out.result);
    }

    #[test]
    fn logger_transcript_shape() {
        let plaintexts = nats(&[3, 5, 7]);
        let out = run_scenario(EngineMode::Multiplicative, &plaintexts, AdversaryKind::Logger, 4).unwrap();
        let log = out.adversary_log.as_ref().unwrap();
        assert_eq!(log.len(), 2 * plaintexts.len() + 2);
        assert_eq!(log, &out.transcript);
    }

    #[test]
    fn scenario_rejects_empty_and_invalid_inputs() {
        assert!(run_scenario(EngineMode::Multiplicative, &[], AdversaryKind::Honest, 0).is_err());
        assert!(matches!(
            run_scenario(EngineMode::Multiplicative, &nats(&[0]), AdversaryKind::Honest, 0),
            Err(Error::MessageOutOfRange { .. })
        ));
        assert!(matches!(
            run_scenario(EngineMode::Additive, &nats(&[15]), AdversaryKind::Honest, 0),
            Err(Error::MessageOutOfRange { .. })
        ));
    }

    #[test]
    fn fold_refuses_mixed_schemes() {
        let mul = Scenario::prepare(
            EngineMode::Multiplicative,
            &ScenarioParams::desk(EngineMode::Multiplicative),
            &nats(&[2, 3]),
            0,
        )
        .unwrap();
        assert!(honest_fold(mul.public_params(), mul.inputs(), FoldOp::AddFold).is_err());
    }

    #[test]
    fn transcript_renders_as_lines() {
        let out = run_scenario(EngineMode::Additive, &nats(&[2, 4]), AdversaryKind::Honest, 3).unwrap();
        let text = out.transcript.to_string();
        assert!(text.starts_with("param n 17\nparam g 5\n"));
        assert!(text.contains("param d 3,5\n"));
        assert_eq!(text.lines().filter(|l| l.starts_with("observed input")).count(), 4);
        assert_eq!(text.lines().filter(|l| l.starts_with("emitted output")).count(), 2);
    }
}
