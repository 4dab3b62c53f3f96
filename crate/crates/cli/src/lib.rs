//! `phe` command-line front end.
//!
//! Exit codes: 0 success, 2 bad flags / invalid parameters / malformed or
//! mismatched files, 3 decryption could not find a discrete log, 4 the
//! demo's verification failed.

pub mod bench;
pub mod formats;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use phe_core::ceg::{self, CegParams};
use phe_core::dual_engine::{AnyCiphertext, EngineMode, Layout};
use phe_core::elgamal::{self, ElGamalParams};
use phe_core::isolation_harness::{run_scenario_with, AdversaryKind, ScenarioParams};
use phe_core::rng::SeededSource;
use phe_core::{Error, Nat};

use crate::bench::BenchParams;
use crate::formats::{load_ciphertext, read_json, write_json, CiphertextFile, KeyFile, PublicKey};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DLOG: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn malformed(message: impl Into<String>) -> Self {
        Self::usage(message)
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self::usage(message)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

fn error_name(e: &Error) -> &'static str {
    match e {
        Error::EvenModulus(_) => "EvenModulus",
        Error::WidthTooSmall { .. } => "WidthTooSmall",
        Error::OperandOutOfRange { .. } => "OperandOutOfRange",
        Error::NotInvertible { .. } => "NotInvertible",
        Error::LengthMismatch { .. } => "LengthMismatch",
        Error::ResidueOutOfRange { .. } => "ResidueOutOfRange",
        Error::NotFound { .. } => "NotFound",
        Error::InvalidParams(_) => "InvalidParams",
        Error::NotCoprime(..) => "NotCoprime",
        Error::MessageOutOfRange { .. } => "MessageOutOfRange",
        Error::CiphertextOutOfRange { .. } => "CiphertextOutOfRange",
        Error::CiphertextMalformed(_) => "CiphertextMalformed",
        Error::DlogNotFound { .. } => "DlogNotFound",
        Error::AdditionDepthExceeded { .. } => "AdditionDepthExceeded",
        Error::InvalidRandomness { .. } => "InvalidRandomness",
        Error::DivisionByZero => "DivisionByZero",
        Error::VerificationMismatch { .. } => "VerificationMismatch",
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DlogNotFound { .. } | Error::AdditionDepthExceeded { .. } => EXIT_DLOG,
            Error::VerificationMismatch { .. } => EXIT_MISMATCH,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: format!("{}: {e}", error_name(&e)),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "phe",
    version,
    about = "Partial homomorphic ElGamal / CRT-ElGamal toolkit",
    after_help = "Exit codes: 0 success; 2 bad flags, invalid parameters or malformed files; \
                  3 no discrete log within the decryption bound; 4 demo verification mismatch."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Elgamal,
    Ceg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    Mul,
    Add,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayoutArg {
    Regular,
    Dual,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AdversaryArg {
    Honest,
    Logger,
    Tamperer,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate `<prefix>.pub.json` and `<prefix>.sec.json`.
    Keygen {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Prime modulus (decimal).
        #[arg(long, default_value = "23")]
        n: String,
        /// Generator (decimal).
        #[arg(long, default_value = "5")]
        g: String,
        /// Comma-separated CRT moduli, ceg only.
        #[arg(long)]
        d: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "key")]
        out_prefix: String,
    },
    /// Encrypt a decimal message under a public key file.
    Encrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        message: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decrypt a ciphertext file; prints the plaintext in decimal.
    Decrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Fold two or more ciphertext files homomorphically.
    Eval {
        #[arg(long)]
        key: PathBuf,
        #[arg(long, value_enum)]
        op: OpArg,
        #[arg(long = "in", required = true, num_args = 1..)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare cycle and unit counts of the regular and dual layouts.
    Bench {
        #[arg(long, value_enum, default_value = "both")]
        layout: LayoutArg,
        #[arg(long, default_value_t = 8)]
        bits: u32,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = 10)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Blind evaluation by an untrusted block that only sees ciphertexts.
    Demo {
        #[arg(long, value_enum, default_value = "mul")]
        mode: OpArg,
        /// Comma-separated decimal plaintexts.
        #[arg(long, default_value = "3,5")]
        inputs: String,
        #[arg(long, value_enum, default_value = "honest")]
        adversary: AdversaryArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        d: Option<String>,
        /// Where to write the boundary transcript.
        #[arg(long, default_value = "demo_transcript.log")]
        transcript: PathBuf,
    },
}

fn parse_decimal(flag: &str, s: &str) -> Result<Nat, CliError> {
    s.trim()
        .parse::<Nat>()
        .map_err(|_| CliError::usage(format!("--{flag}: {s:?} is not a non-negative decimal integer")))
}

fn parse_list(flag: &str, s: &str) -> Result<Vec<Nat>, CliError> {
    s.split(',').map(|part| parse_decimal(flag, part)).collect()
}

fn with_suffix(prefix: &str, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{prefix}{suffix}"))
}

fn load_public(path: &Path) -> Result<PublicKey, CliError> {
    read_json::<KeyFile>(path)?.public_key()
}

pub fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    match cli.command {
        Command::Keygen {
            scheme,
            n,
            g,
            d,
            seed,
            out_prefix,
        } => {
            let group = ElGamalParams::new(parse_decimal("n", &n)?, parse_decimal("g", &g)?);
            let mut rng = SeededSource::new(seed);
            let (pk, sk) = match (scheme, d) {
                (SchemeArg::Elgamal, None) => {
                    let (pk, sk) = elgamal::keygen(&group, &mut rng)?;
                    (PublicKey::ElGamal(pk), sk)
                }
                (SchemeArg::Elgamal, Some(_)) => {
                    return Err(CliError::usage("--d only applies to --scheme ceg"))
                }
                (SchemeArg::Ceg, d) => {
                    let d = d.ok_or_else(|| CliError::usage("--scheme ceg needs --d"))?;
                    let params = CegParams {
                        group,
                        moduli: parse_list("d", &d)?,
                    };
                    let (pk, sk) = ceg::ceg_keygen(&params, &mut rng)?;
                    (PublicKey::Ceg(pk), sk)
                }
            };
            let pub_path = with_suffix(&out_prefix, ".pub.json");
            let sec_path = with_suffix(&out_prefix, ".sec.json");
            write_json(&pub_path, &KeyFile::public(&pk))?;
            write_json(&sec_path, &KeyFile::secret(&pk, &sk))?;
            writeln!(out, "wrote {} and {}", pub_path.display(), sec_path.display())
                .map_err(|e| CliError::io(e.to_string()))?;
        }
        Command::Encrypt {
            key,
            message,
            seed,
            out: path,
        } => {
            let pk = load_public(&key)?;
            let m = parse_decimal("message", &message)?;
            let mut rng = SeededSource::new(seed);
            let ct = match &pk {
                PublicKey::ElGamal(pk) => AnyCiphertext::ElGamal(elgamal::encrypt(pk, &m, &mut rng)?),
                PublicKey::Ceg(pk) => AnyCiphertext::Ceg(ceg::ceg_encrypt(pk, &m, &mut rng)?),
            };
            write_json(&path, &CiphertextFile::from(&ct))?;
        }
        Command::Decrypt { key, input } => {
            let (pk, sk) = read_json::<KeyFile>(&key)?.secret_key()?;
            let ct = load_ciphertext(&input, &pk)?;
            let m = match (&pk, &ct) {
                (PublicKey::ElGamal(pk), AnyCiphertext::ElGamal(ct)) => elgamal::decrypt(pk, &sk, ct)?,
                (PublicKey::Ceg(pk), AnyCiphertext::Ceg(ct)) => ceg::ceg_decrypt(pk, &sk, ct)?,
                _ => unreachable!("load_ciphertext checks the scheme"),
            };
            writeln!(out, "{m}").map_err(|e| CliError::io(e.to_string()))?;
        }
        Command::Eval {
            key,
            op,
            inputs,
            out: path,
        } => {
            if inputs.len() < 2 {
                return Err(CliError::usage("eval needs at least two --in files"));
            }
            let pk = load_public(&key)?;
            let cts = inputs
                .iter()
                .map(|p| load_ciphertext(p, &pk))
                .collect::<Result<Vec<_>, _>>()?;
            let folded = match (&pk, op) {
                (PublicKey::ElGamal(pk), OpArg::Mul) => {
                    let mut acc = elgamal::Ciphertext::identity();
                    for ct in &cts {
                        let AnyCiphertext::ElGamal(ct) = ct else { unreachable!() };
                        acc = elgamal::homomorphic_mul(pk, &acc, ct)?;
                    }
                    AnyCiphertext::ElGamal(acc)
                }
                (PublicKey::Ceg(pk), OpArg::Add) => {
                    let mut iter = cts.iter().map(|ct| match ct {
                        AnyCiphertext::Ceg(ct) => ct,
                        AnyCiphertext::ElGamal(_) => unreachable!(),
                    });
                    let mut acc = iter.next().expect("two inputs").clone();
                    for ct in iter {
                        acc = ceg::homomorphic_add(pk, &acc, ct)?;
                    }
                    AnyCiphertext::Ceg(acc)
                }
                (pk, op) => {
                    let op = if op == OpArg::Mul { "mul" } else { "add" };
                    return Err(CliError::usage(format!(
                        "--op {op} is not supported by {} keys",
                        pk.scheme().name()
                    )))
                }
            };
            write_json(&path, &CiphertextFile::from(&folded))?;
        }
        Command::Bench {
            layout,
            bits,
            t,
            trials,
            seed,
        } => {
            let layouts: &[Layout] = match layout {
                LayoutArg::Regular => &[Layout::Regular],
                LayoutArg::Dual => &[Layout::Dual],
                LayoutArg::Both => &[Layout::Regular, Layout::Dual],
            };
            let params = BenchParams { bits, t, trials, seed };
            bench::write_report(out, layouts, &params)?;
        }
        Command::Demo {
            mode,
            inputs,
            adversary,
            seed,
            n,
            g,
            d,
            transcript,
        } => {
            let mode = match mode {
                OpArg::Mul => EngineMode::Multiplicative,
                OpArg::Add => EngineMode::Additive,
            };
            let adversary = match adversary {
                AdversaryArg::Honest => AdversaryKind::Honest,
                AdversaryArg::Logger => AdversaryKind::Logger,
                AdversaryArg::Tamperer => AdversaryKind::Tamperer,
            };
            let mut params = ScenarioParams::desk(mode);
            if let Some(n) = n {
                params.n = parse_decimal("n", &n)?;
            }
            if let Some(g) = g {
                params.g = parse_decimal("g", &g)?;
            }
            if let Some(d) = d {
                if mode == EngineMode::Multiplicative {
                    return Err(CliError::usage("--d only applies to --mode add"));
                }
                params.moduli = parse_list("d", &d)?;
            }
            let plaintexts = parse_list("inputs", &inputs)?;
            let outcome = run_scenario_with(&params, mode, &plaintexts, adversary, seed)?;

            std::fs::write(&transcript, outcome.transcript.to_string())
                .map_err(|e| CliError::io(format!("{}: {e}", transcript.display())))?;

            let mut report = format!(
                "mode: {}\ninputs: {inputs}\nadversary: {}\nexpected: {}\n",
                match mode {
                    EngineMode::Multiplicative => "mul",
                    EngineMode::Additive => "add",
                },
                adversary.name(),
                outcome.expected
            );
            if let Some(log) = &outcome.adversary_log {
                report.push_str(&format!("adversary captured: {} entries\n", log.len()));
            }
            report.push_str(&format!("audit: {}\n", outcome.audit));
            report.push_str(&format!("transcript: {}\n", transcript.display()));
            match outcome.result {
                Ok(m) => {
                    report.push_str(&format!("result: {m}\n"));
                    out.write_all(report.as_bytes())
                        .map_err(|e| CliError::io(e.to_string()))?;
                }
                Err(Error::VerificationMismatch { expected, decrypted }) => {
                    report.push_str(&format!(
                        "VERIFICATION MISMATCH: expected {expected}, decrypted {decrypted}\n"
                    ));
                    out.write_all(report.as_bytes())
                        .map_err(|e| CliError::io(e.to_string()))?;
                    return Err(CliError {
                        code: EXIT_MISMATCH,
                        message: "verification mismatch".into(),
                    });
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(())
}
