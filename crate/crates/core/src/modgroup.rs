//! `SL₂(Z)`, its reductions `SL₂(Z/NZ)`, lifting back to `SL₂(Z)`, and the
//! twisted matrix `g_λ` that appears when the slash and Galois actions are
//! swapped.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// An integer matrix `(a b; c d)` with `ad - bc = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniMat {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl UniMat {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Error::DeterminantNotOne { det: det.to_string(), modulus: 0 });
        }
        Ok(UniMat { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1).unwrap()
    }

    /// `S = (0 -1; 1 0)`.
    pub fn s() -> Self {
        Self::from_i64(0, -1, 1, 0).unwrap()
    }

    /// `T = (1 1; 0 1)`.
    pub fn t() -> Self {
        Self::from_i64(1, 1, 0, 1).unwrap()
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn inverse(&self) -> Self {
        UniMat { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    /// Entries as `f64`, for numeric evaluation of `gτ` and `cτ + d`.
    pub fn to_f64(&self) -> [f64; 4] {
        use num_traits::ToPrimitive;
        self.entries().map(|x| x.to_f64().unwrap_or(f64::NAN))
    }
}

impl std::ops::Mul for &UniMat {
    type Output = UniMat;
    fn mul(self, o: &UniMat) -> UniMat {
        UniMat {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

impl fmt::Display for UniMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

/// Parses the CLI form `"a,b,c,d"`.
impl FromStr for UniMat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_four(s)?;
        let [a, b, c, d] = parts;
        UniMat::new(a, b, c, d)
    }
}

pub(crate) fn parse_four(s: &str) -> Result<[BigInt; 4]> {
    let parts: Vec<BigInt> = s
        .split(',')
        .map(|p| p.trim().parse::<BigInt>().map_err(|_| Error::Malformed(format!("bad matrix entry {p:?}"))))
        .collect::<Result<_>>()?;
    parts
        .try_into()
        .map_err(|_| Error::Malformed(format!("expected four comma-separated entries, got {s:?}")))
}

#[derive(Serialize, Deserialize)]
struct MatWire {
    a: String,
    b: String,
    c: String,
    d: String,
}

impl Serialize for UniMat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatWire { a: self.a.to_string(), b: self.b.to_string(), c: self.c.to_string(), d: self.d.to_string() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniMat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = MatWire::deserialize(d)?;
        let parse = |s: &str| s.parse::<BigInt>().map_err(serde::de::Error::custom);
        UniMat::new(parse(&w.a)?, parse(&w.b)?, parse(&w.c)?, parse(&w.d)?).map_err(serde::de::Error::custom)
    }
}

/// A matrix in `SL₂(Z/NZ)`, entries stored as residues in `0..N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ResMat {
    modulus: u64,
    a: u64,
    b: u64,
    c: u64,
    d: u64,
}

impl ResMat {
    /// Reduces the entries mod `n` and checks `ad - bc ≡ 1`.
    pub fn new(modulus: u64, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroLevel);
        }
        let m = ResMat {
            modulus,
            a: arith::rem(a, modulus),
            b: arith::rem(b, modulus),
            c: arith::rem(c, modulus),
            d: arith::rem(d, modulus),
        };
        let det = m.det();
        if det != 1 % modulus {
            return Err(Error::DeterminantNotOne { det: det.to_string(), modulus });
        }
        Ok(m)
    }

    pub fn identity(modulus: u64) -> Self {
        Self::new(modulus, 1, 0, 0, 1).unwrap()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> [u64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> u64 {
        let n = self.modulus as u128;
        let ad = self.a as u128 * self.d as u128 % n;
        let bc = self.b as u128 * self.c as u128 % n;
        ((ad + n - bc) % n) as u64
    }

    pub fn checked_mul(&self, o: &ResMat) -> Result<ResMat> {
        if self.modulus != o.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: o.modulus });
        }
        let n = self.modulus;
        let mm = |x: u64, y: u64, z: u64, w: u64| ((x as u128 * y as u128 + z as u128 * w as u128) % n as u128) as u64;
        Ok(ResMat {
            modulus: n,
            a: mm(self.a, o.a, self.b, o.c),
            b: mm(self.a, o.b, self.b, o.d),
            c: mm(self.c, o.a, self.d, o.c),
            d: mm(self.c, o.b, self.d, o.d),
        })
    }

    /// Row vector times matrix: `(x, y) ↦ (x a + y c, x b + y d)`.
    pub fn act_on_row(&self, x: u64, y: u64) -> (u64, u64) {
        let n = self.modulus as u128;
        let (x, y) = (x as u128, y as u128);
        (
            ((x * self.a as u128 + y * self.c as u128) % n) as u64,
            ((x * self.b as u128 + y * self.d as u128) % n) as u64,
        )
    }
}

impl fmt::Display for ResMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{} mod {}", self.a, self.b, self.c, self.d, self.modulus)
    }
}

/// All of `SL₂(Z/NZ)`, in lexicographic order of `(a, b, c, d)`.
pub fn sl2_mod(n: u64) -> Vec<ResMat> {
    let mut out = Vec::new();
    for a in 0..n as i64 {
        for b in 0..n as i64 {
            for c in 0..n as i64 {
                for d in 0..n as i64 {
                    if let Ok(m) = ResMat::new(n, a, b, c, d) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

pub fn reduce_mod(g: &UniMat, n: u64) -> ResMat {
    assert!(n >= 1, "reduction modulo 0");
    let [a, b, c, d] = g.entries().map(|x| arith::rem_big(x, n) as i64);
    ResMat::new(n, a, b, c, d).expect("determinant 1 survives reduction")
}

/// Lifts a matrix of `SL₂(Z/NZ)` to `SL₂(Z)`.
///
/// The bottom row is lifted to a coprime pair `(c', d')` by scanning
/// `d' = d + kN` for `k = 0, 1, -1, 2, -2, …`; the top row is then corrected
/// by multiples of `N` using a Bezout relation for `(c', d')`.
pub fn sl2_lift(m: &ResMat) -> UniMat {
    let n = BigInt::from(m.modulus);
    let [a, b, c, d] = m.entries().map(BigInt::from);
    // With c' = 0 only d' = ±1 is coprime, so otherwise lift c ≡ 0 to N.
    let minus_one = (&n - 1u32) % &n;
    let (c_lift, d_lift) = if c.is_zero() && d == BigInt::one() % &n {
        (c, BigInt::one())
    } else if c.is_zero() && d == minus_one {
        (c, -BigInt::one())
    } else {
        let c_lift = if c.is_zero() { n.clone() } else { c };
        let d_lift = (0i64..)
            .flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] })
            .map(|k| &d + &n * k)
            .find(|dd| num_integer::Integer::gcd(&c_lift, dd).is_one())
            .expect("a coprime lift exists when det ≡ 1");
        (c_lift, d_lift)
    };
    // Solve (a + N s) d' - (b + N t) c' = 1.
    let residual = BigInt::one() - (&a * &d_lift - &b * &c_lift);
    debug_assert!((&residual % &n).is_zero());
    let r = residual / &n;
    let (g, x, y) = arith::ext_gcd(&d_lift, &c_lift);
    debug_assert!(g.is_one());
    // x d' + y c' = 1, so s = r x, t = -r y.
    let s = &r * x;
    let t = -(&r * y);
    let lifted = UniMat { a: a + &n * s, b: b + &n * t, c: c_lift, d: d_lift };
    debug_assert!(lifted.det().is_one());
    lifted
}

/// A second lift of the same residue matrix, distinct from `g`: `g · (1 N; 0 1)`.
pub fn other_lift(g: &UniMat, n: u64) -> UniMat {
    g * &UniMat::from_i64(1, n as i64, 0, 1).unwrap()
}

/// `(a, λb; λ⁻¹c, d)` mod N.
pub fn theorem_target(m: &ResMat, lambda: i64) -> Result<ResMat> {
    let n = m.modulus;
    let l = arith::unit(lambda, n)? as i64;
    let l_inv = arith::inv_mod(l, n)? as i64;
    let [a, b, c, d] = m.entries().map(|x| x as i64);
    let mulm = |x: i64, y: i64| ((x as i128 * y as i128).rem_euclid(n as i128)) as i64;
    ResMat::new(n, a, mulm(l, b), mulm(l_inv, c), d)
}

/// `diag(1, λ)` mod N.
pub fn diag_lambda(n: u64, lambda: i64) -> Result<ResMat> {
    arith::unit(lambda, n)?;
    // det = λ, so this is only in SL₂ for λ ≡ 1; build it without the det check.
    Ok(ResMat { modulus: n, a: 1 % n, b: 0, c: 0, d: arith::rem(lambda, n) })
}

/// A lift to `SL₂(Z)` of `theorem_target(g mod N, λ)`.
pub fn g_lambda(g: &UniMat, n: u64, lambda: i64) -> Result<UniMat> {
    Ok(sl2_lift(&theorem_target(&reduce_mod(g, n), lambda)?))
}

/// A random element of `SL₂(Z)` with bottom row bounded by `bound` in absolute value.
pub fn random_unimat<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> UniMat {
    loop {
        let c: i64 = rng.gen_range(-bound..=bound);
        let d: i64 = rng.gen_range(-bound..=bound);
        let (g, x, y) = arith::ext_gcd(&BigInt::from(d), &BigInt::from(c));
        if !g.is_one() {
            continue;
        }
        // x d + y c = 1, so (x, -y; c, d) has determinant 1.
        let shift: i64 = rng.gen_range(-2..=2);
        let base = UniMat { a: x, b: -y, c: c.into(), d: d.into() };
        let t = UniMat::from_i64(1, shift, 0, 1).unwrap();
        let out = &t * &base;
        if out.entries().iter().all(|e| e.abs() <= BigInt::from(bound * bound + 4)) {
            return out;
        }
    }
}
