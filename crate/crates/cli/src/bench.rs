//! Regular-vs-dual cycle comparison.

use std::io::Write;

use num_traits::One;

use phe_core::ceg::CegParams;
use phe_core::dual_engine::{
    reduction_percent, resource_report, Engine, EngineConfig, EngineMode, Layout, PublicKeyRef,
};
use phe_core::elgamal::ElGamalParams;
use phe_core::modmath::prime;
use phe_core::rng::{RandomSource, SeededSource};
use phe_core::Nat;

use crate::CliError;

const BASIS_PRIMES: [u32; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchParams {
    pub bits: u32,
    pub t: usize,
    pub trials: u32,
    pub seed: u64,
}

/// Largest prime below `2^bits` and its smallest primitive root.
pub fn bench_group(bits: u32) -> Result<(Nat, Nat), CliError> {
    if !(4..=64).contains(&bits) {
        return Err(CliError::usage(format!("--bits must be in 4..=64, got {bits}")));
    }
    let mut n = (Nat::one() << bits) - 1u8;
    while !prime::is_probable_prime(&n, prime::MILLER_RABIN_ROUNDS) {
        n -= 1u8;
    }
    let group = &n - 1u8;
    let mut g = Nat::from(2u8);
    loop {
        match prime::multiplicative_order(&g, &n) {
            Some(order) if order == group => return Ok((n, g)),
            Some(_) => g += 1u8,
            None => return Err(CliError::usage(format!("cannot factor {group}"))),
        }
    }
}

pub fn bench_basis(t: usize) -> Result<Vec<Nat>, CliError> {
    if t == 0 || t > BASIS_PRIMES.len() {
        return Err(CliError::usage(format!("--t must be in 1..={}, got {t}", BASIS_PRIMES.len())));
    }
    Ok(BASIS_PRIMES[..t].iter().copied().map(Nat::from).collect())
}

/// Summed cycles over all trials for one layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LayoutCycles {
    pub keygen: u64,
    pub enc_mul: u64,
    pub enc_add: u64,
    pub dec_mul: u64,
    pub dec_add: u64,
}

impl LayoutCycles {
    pub fn enc_total(&self) -> u64 {
        self.enc_mul + self.enc_add
    }

    pub fn dec_total(&self) -> u64 {
        self.dec_mul + self.dec_add
    }
}

/// Runs `trials` rounds of (multiplicative encrypt, additive encrypt,
/// both decryptions) on one layout. The message and randomness streams
/// depend only on `seed`, so every layout sees the same work.
pub fn run_layout(layout: Layout, params: &BenchParams) -> Result<LayoutCycles, CliError> {
    if params.trials == 0 {
        return Err(CliError::usage("--trials must be at least 1"));
    }
    let (n, g) = bench_group(params.bits)?;
    let moduli = bench_basis(params.t)?;
    let mut engine = Engine::new(EngineConfig::for_layout(layout));

    let mut key_rng = SeededSource::new(params.seed);
    let group = ElGamalParams::new(n.clone(), g.clone()).with_bits(params.bits);
    let (pk, sk) = engine.keygen_elgamal(&group, &mut key_rng)?;
    let ceg_params = CegParams {
        group,
        moduli,
    };
    let (cpk, csk) = engine.keygen_ceg(&ceg_params, &mut key_rng)?;

    let mut messages = SeededSource::new(params.seed.wrapping_add(1));
    let mut randomness = SeededSource::new(params.seed.wrapping_add(2));
    let mut cycles = LayoutCycles {
        keygen: engine.keygen_ledger().total(),
        ..LayoutCycles::default()
    };
    let top = &n - 1u8;
    let d_top = cpk.plaintext_modulus() - 1u8;
    for _ in 0..params.trials {
        let m_mul = messages.sample_range(&Nat::one(), &top);
        let m_add = messages.sample_range(&Nat::from(0u8), &d_top);

        let before = engine.encrypt_ledger().total();
        let ct_mul = engine.encrypt(EngineMode::Multiplicative, PublicKeyRef::ElGamal(&pk), &m_mul, &mut randomness)?;
        let mid = engine.encrypt_ledger().total();
        let ct_add = engine.encrypt(EngineMode::Additive, PublicKeyRef::Ceg(&cpk), &m_add, &mut randomness)?;
        let after = engine.encrypt_ledger().total();
        cycles.enc_mul += mid - before;
        cycles.enc_add += after - mid;

        let before = engine.decrypt_ledger().total();
        let back_mul = engine.decrypt(EngineMode::Multiplicative, PublicKeyRef::ElGamal(&pk), &sk, &ct_mul)?;
        let mid = engine.decrypt_ledger().total();
        let back_add = engine.decrypt(EngineMode::Additive, PublicKeyRef::Ceg(&cpk), &csk, &ct_add)?;
        let after = engine.decrypt_ledger().total();
        cycles.dec_mul += mid - before;
        cycles.dec_add += after - mid;

        if back_mul != m_mul || back_add != m_add {
            return Err(CliError::internal("bench round trip failed"));
        }
    }
    Ok(cycles)
}

fn percent(regular: u64, dual: u64) -> Result<f64, CliError> {
    Ok(reduction_percent(regular as f64, dual as f64)?)
}

pub fn write_report(out: &mut impl Write, layouts: &[Layout], params: &BenchParams) -> Result<(), CliError> {
    let (n, g) = bench_group(params.bits)?;
    let moduli = bench_basis(params.t)?;
    let d_list = moduli.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
    let mut rows = Vec::new();
    for &layout in layouts {
        rows.push((layout, run_layout(layout, params)?));
    }

    let mut text = String::new();
    text.push_str(&format!(
        "bench bits={} n={n} g={g} t={} d={d_list} trials={} seed={}\n\n",
        params.bits, params.t, params.trials, params.seed
    ));
    text.push_str(&format!(
        "{:<8} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}\n",
        "layout", "keygen", "enc_mul", "enc_add", "enc_total", "dec_mul", "dec_add", "dec_total"
    ));
    for (layout, c) in &rows {
        text.push_str(&format!(
            "{:<8} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}\n",
            layout.name(),
            c.keygen,
            c.enc_mul,
            c.enc_add,
            c.enc_total(),
            c.dec_mul,
            c.dec_add,
            c.dec_total()
        ));
    }

    let header: Vec<&str> = rows.iter().map(|(l, _)| l.name()).collect();
    let both = rows.len() == 2;
    text.push('\n');
    text.push_str(&format!("{:<16}", "unit"));
    for name in &header {
        text.push_str(&format!(" {name:>8}"));
    }
    if both {
        text.push_str(&format!(" {:>13}", "reduction(%)"));
    }
    text.push('\n');

    let reports: Vec<_> = rows
        .iter()
        .map(|(l, _)| resource_report(&EngineConfig::for_layout(*l)))
        .collect();
    for (i, (unit, _)) in reports[0].units().iter().enumerate() {
        text.push_str(&format!("{unit:<16}"));
        for r in &reports {
            text.push_str(&format!(" {:>8}", r.units()[i].1));
        }
        if both {
            let pct = reduction_percent(f64::from(reports[0].units()[i].1), f64::from(reports[1].units()[i].1))?;
            text.push_str(&format!(" {pct:>13.2}"));
        }
        text.push('\n');
    }

    if both {
        let (regular, dual) = (&rows[0].1, &rows[1].1);
        text.push_str(&format!(
            "\n{:<16} {:>10} {:>10} {:>13}\n",
            "cycles", "regular", "dual", "reduction(%)"
        ));
        for (name, r, d) in [
            ("encrypt", regular.enc_total(), dual.enc_total()),
            ("decrypt", regular.dec_total(), dual.dec_total()),
        ] {
            text.push_str(&format!("{name:<16} {r:>10} {d:>10} {:>13.2}\n", percent(r, d)?));
        }
    }
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups() {
        assert_eq!(bench_group(8).unwrap(), (Nat::from(251u32), Nat::from(6u32)));
        let (n, _) = bench_group(16).unwrap();
        assert_eq!(n, Nat::from(65521u32));
        assert!(bench_group(3).is_err());
    }

    #[test]
    fn zero_trials_is_a_usage_error() {
        let params = BenchParams { bits: 8, t: 2, trials: 0, seed: 1 };
        assert_eq!(run_layout(Layout::Dual, &params).unwrap_err().code, 2);
    }

    #[test]
    fn dual_encrypt_costs_at_least_regular() {
        let params = BenchParams { bits: 8, t: 2, trials: 3, seed: 5 };
        let regular = run_layout(Layout::Regular, &params).unwrap();
        let dual = run_layout(Layout::Dual, &params).unwrap();
        assert!(dual.enc_total() >= regular.enc_total());
        assert_eq!(dual.dec_total(), regular.dec_total());
        assert_eq!(dual.keygen, regular.keygen);
    }
}
