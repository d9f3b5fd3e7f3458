//! Integer kernel: exact square roots, perfect-square detection, Legendre
//! symbols, and small-prime utilities.
//!
//! All operations are exact on unbounded integers. Fixed-width shortcuts
//! (the residue mask in [`as_square`], the `u64` loop in [`is_prime`]) are
//! pure accelerations with the same answers as the big-integer fallback.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::Error;

/// Bit `i` is set iff `i` is a quadratic residue mod 64. Only 12 of the 64
/// residues are squares, so this rejects most non-squares without computing
/// a root.
const SQUARES_MOD_64: u64 = {
    let mut mask = 0u64;
    let mut i = 0u64;
    while i < 64 {
        mask |= 1 << ((i * i) % 64);
        i += 1;
    }
    mask
};

/// Floor square root: the unique `r` with `r^2 <= n < (r + 1)^2`.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

/// Returns `Some(r)` iff `n = r^2` exactly.
pub fn as_square(n: &BigUint) -> Option<BigUint> {
    let low = n.iter_u64_digits().next().unwrap_or(0);
    if SQUARES_MOD_64 >> (low % 64) & 1 == 0 {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Legendre symbol `(a/p)` for an odd prime `p`: `0` when `p | a`, `+1` when
/// `a` is a nonzero quadratic residue mod `p`, `-1` otherwise.
///
/// Computed by Euler's criterion, `a^((p-1)/2) mod p`.
pub fn legendre(a: &BigInt, p: &BigUint) -> Result<i32, Error> {
    if !p.is_odd() || !is_prime(p) {
        return Err(Error::NotAnOddPrime(p.clone()));
    }
    let modulus = BigInt::from(p.clone());
    let residue = a
        .mod_floor(&modulus)
        .to_biguint()
        .expect("mod_floor by a positive modulus is non-negative");
    if residue.is_zero() {
        return Ok(0);
    }
    let exp = (p - 1u32) >> 1;
    let r = residue.modpow(&exp, p);
    if r.is_one() {
        Ok(1)
    } else {
        debug_assert_eq!(r, p - 1u32, "Euler's criterion must give ±1 mod an odd prime");
        Ok(-1)
    }
}

/// Deterministic primality test by trial division. Exact at any size;
/// intended for the small moduli and table bounds used here.
pub fn is_prime(n: &BigUint) -> bool {
    match n.to_u64() {
        Some(small) => is_prime_u64(small),
        None => is_prime_big(n),
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut f = 5u64;
    while f * f <= n {
        if n.is_multiple_of(f) || n.is_multiple_of(f + 2) {
            return false;
        }
        f += 6;
    }
    true
}

fn is_prime_big(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    let three = BigUint::from(3u32);
    if n.is_multiple_of(&two) {
        return *n == two;
    }
    if n.is_multiple_of(&three) {
        return *n == three;
    }
    let mut f = BigUint::from(5u32);
    while &f * &f <= *n {
        if n.is_multiple_of(&f) || n.is_multiple_of(&(&f + 2u32)) {
            return false;
        }
        f += 6u32;
    }
    true
}

/// All primes `<= bound`, ascending, by sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = usize::try_from(bound).expect("sieve bound exceeds addressable memory");
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}
