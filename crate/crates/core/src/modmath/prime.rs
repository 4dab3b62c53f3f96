//! Primality and group-order helpers used when validating key parameters.

use num_bigint::RandBigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::Nat;

pub const MILLER_RABIN_ROUNDS: usize = 64;
const MILLER_RABIN_SEED: u64 = 0x5eed_e1ca_3a11;
const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// Miller-Rabin with `rounds` witnesses drawn from a fixed-seed stream, so
/// the verdict for a given `n` is reproducible.
pub fn is_probable_prime(n: &Nat, rounds: usize) -> bool {
    if n < &Nat::from(2u8) {
        return false;
    }
    for p in SMALL_PRIMES {
        let p = Nat::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }

    let one = Nat::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n - 1 is even and non-zero");
    let d = &n_minus_1 >> s;

    let mut rng = ChaCha20Rng::seed_from_u64(MILLER_RABIN_SEED);
    let two = Nat::from(2u8);
    'witness: for _ in 0..rounds {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors of `n`, or `None` when trial division leaves a
/// composite cofactor.
pub fn prime_factors(n: &Nat) -> Option<Vec<Nat>> {
    let mut rest = n.clone();
    let mut factors = Vec::new();
    if rest.is_zero() {
        return None;
    }
    let mut p = 2u64;
    while p < TRIAL_DIVISION_LIMIT {
        let pn = Nat::from(p);
        if &pn * &pn > rest {
            break;
        }
        if (&rest % &pn).is_zero() {
            factors.push(pn.clone());
            while (&rest % &pn).is_zero() {
                rest /= &pn;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > Nat::one() {
        if !is_probable_prime(&rest, MILLER_RABIN_ROUNDS) {
            return None;
        }
        factors.push(rest);
    }
    Some(factors)
}

/// Multiplicative order of `g` modulo the prime `p`, when `p - 1` can be
/// factored.
pub fn multiplicative_order(g: &Nat, p: &Nat) -> Option<Nat> {
    let g = g % p;
    if g.is_zero() {
        return None;
    }
    let group = p - Nat::one();
    let mut order = group.clone();
    for q in prime_factors(&group)? {
        while order.is_multiple_of(&q) {
            let candidate = &order / &q;
            if g.modpow(&candidate, p).is_one() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    Some(order)
}

/// Largest prime factor of `n`, when it can be found.
pub fn largest_prime_factor(n: &Nat) -> Option<Nat> {
    prime_factors(n)?.into_iter().max()
}
