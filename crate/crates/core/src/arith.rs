//! Small integer helpers shared by the field, group and Eisenstein layers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Canonical representative of `x mod n` in `0..n`.
pub fn rem(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

pub fn rem_big(x: &BigInt, n: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(n));
    u64::try_from(r).expect("residue fits in u64")
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Extended gcd on big integers: returns `(g, x, y)` with `a x + b y = g >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `x` modulo `n`, as a representative in `0..n`.
pub fn inv_mod(x: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroLevel);
    }
    let r = rem(x, n);
    if gcd(r, n) != 1 {
        return Err(Error::NotAUnit { value: x, modulus: n });
    }
    if n == 1 {
        return Ok(0);
    }
    let (_, s, _) = ext_gcd(&BigInt::from(r), &BigInt::from(n));
    Ok(rem_big(&s, n))
}

/// Checks that `lambda` is a unit mod `n` and returns its canonical residue.
pub fn unit(lambda: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroLevel);
    }
    let r = rem(lambda, n);
    if gcd(r, n) == 1 {
        Ok(r)
    } else {
        Err(Error::NotAUnit { value: lambda, modulus: n })
    }
}

/// The units of `Z/nZ` in increasing order (`[0]` for `n = 1`).
pub fn units(n: u64) -> Vec<u64> {
    (0..n).filter(|&x| gcd(x, n) == 1).collect()
}

pub fn euler_phi(n: u64) -> usize {
    units(n).len()
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Prime factors of a positive big integer by trial division.
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while !n.is_one() && !n.is_zero() {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            out.push(u64::try_from(&n).expect("prime cofactor fits in u64"));
            break;
        }
        if (&n % &bp).is_zero() {
            out.push(p);
            while (&n % &bp).is_zero() {
                n /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    out
}
