//! Dense univariate polynomials over Z and Q, lowest degree first.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::Rational;

pub(crate) type QPoly = Vec<Rational>;

pub(crate) fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn from_int(p: &[BigInt]) -> QPoly {
    p.iter().map(|c| Rational::from_integer(c.clone())).collect()
}

pub(crate) fn mul(a: &[Rational], b: &[Rational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[Rational], b: &[Rational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero after trimming.
pub(crate) fn divrem(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly) {
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &factor * c;
        }
        q[shift] = factor;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Exact division in Z[x] by a monic divisor; panics if the division is not exact.
pub(crate) fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    assert!(b.last().is_some_and(One::is_one), "divisor must be monic");
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() + 1 - b.len()];
    for shift in (0..q.len()).rev() {
        let factor = r[shift + b.len() - 1].clone();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &factor * c;
        }
        q[shift] = factor;
    }
    assert!(r.iter().all(Zero::is_zero), "inexact polynomial division");
    q
}

/// Returns `(g, s)` with `s a ≡ g (mod m)` and `g = gcd(a, m)` made monic.
pub(crate) fn ext_gcd_mod(a: &[Rational], m: &[Rational]) -> (QPoly, QPoly) {
    let (mut old_r, mut r) = (m.to_vec(), a.to_vec());
    let (mut old_s, mut s): (QPoly, QPoly) = (Vec::new(), vec![Rational::one()]);
    trim(&mut r);
    while !r.is_empty() {
        let (q, rem) = divrem(&old_r, &r);
        let next_s = sub(&old_s, &mul(&q, &s));
        old_r = std::mem::replace(&mut r, rem);
        old_s = std::mem::replace(&mut s, next_s);
    }
    if let Some(lead) = old_r.last().cloned() {
        for c in old_r.iter_mut().chain(old_s.iter_mut()) {
            *c /= &lead;
        }
    }
    (old_r, old_s)
}
