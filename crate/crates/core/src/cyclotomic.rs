//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Elements are stored on the power basis `1, ζ, …, ζ^{φ(N)-1}` reduced modulo
//! the N-th cyclotomic polynomial, so two elements are equal exactly when their
//! levels and coefficient vectors agree. The Galois automorphism `σ_λ` sends
//! `ζ ↦ ζ^λ` for a unit `λ mod N`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::poly;
use crate::Rational;

/// Precomputed data for one level: `Φ_N` and the reductions of `ζ^e`, `0 <= e < N`.
#[derive(Debug)]
struct FieldTables {
    degree: usize,
    powers: Vec<Vec<BigInt>>,
}

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn tables_cache() -> &'static RwLock<HashMap<u64, Arc<FieldTables>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<FieldTables>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cyclotomic_polynomial_shared(n: u64) -> Arc<Vec<BigInt>> {
    if let Some(p) = phi_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    // x^N - 1 = prod_{d | N} Φ_d
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in arith::divisors(n).into_iter().filter(|&d| d < n) {
        p = poly::div_exact_monic(&p, &cyclotomic_polynomial_shared(d));
    }
    let p = Arc::new(p);
    phi_cache().write().unwrap().insert(n, p.clone());
    p
}

/// The N-th cyclotomic polynomial `Φ_N`, coefficients lowest degree first.
///
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial of level 0");
    cyclotomic_polynomial_shared(n).as_ref().clone()
}

fn tables(n: u64) -> Arc<FieldTables> {
    if let Some(t) = tables_cache().read().unwrap().get(&n) {
        return t.clone();
    }
    let phi = cyclotomic_polynomial_shared(n);
    let degree = phi.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![BigInt::zero(); degree];
    cur[0] = BigInt::one();
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce x^degree = -sum phi_i x^i
        let top = cur.pop().unwrap();
        cur.insert(0, BigInt::zero());
        if !top.is_zero() {
            for (c, p) in cur.iter_mut().zip(phi.iter()) {
                *c -= &top * p;
            }
        }
    }
    let t = Arc::new(FieldTables { degree, powers });
    tables_cache().write().unwrap().insert(n, t.clone());
    t
}

/// Degree of `Q(ζ_N)` over `Q`.
pub fn field_degree(n: u64) -> usize {
    tables(n).degree
}

/// An element of `Q(ζ_N)` in canonical power-basis form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycElement {
    level: u64,
    coeffs: Vec<Rational>,
}

impl CycElement {
    pub fn zero(level: u64) -> Self {
        assert!(level >= 1, "cyclotomic level 0");
        CycElement { level, coeffs: vec![Rational::zero(); field_degree(level)] }
    }

    pub fn one(level: u64) -> Self {
        Self::from_rational(level, Rational::one())
    }

    pub fn from_rational(level: u64, q: Rational) -> Self {
        let mut z = Self::zero(level);
        z.coeffs[0] = q;
        z
    }

    pub fn from_integer(level: u64, n: i64) -> Self {
        Self::from_rational(level, Rational::from_integer(n.into()))
    }

    /// `ζ_N^e` for any integer exponent.
    pub fn zeta_pow(level: u64, e: i64) -> Self {
        let t = tables(level);
        let p = &t.powers[arith::rem(e, level) as usize];
        CycElement {
            level,
            coeffs: p.iter().map(|c| Rational::from_integer(c.clone())).collect(),
        }
    }

    pub fn zeta(level: u64) -> Self {
        Self::zeta_pow(level, 1)
    }

    /// Builds an element from its power-basis coefficients.
    pub fn from_coeffs(level: u64, coeffs: Vec<Rational>) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        let d = field_degree(level);
        if coeffs.len() != d {
            return Err(Error::Malformed(format!(
                "level {level} needs {d} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(CycElement { level, coeffs })
    }

    /// `Σ c_e ζ^e` for integer coefficients indexed by exponent mod N.
    pub fn from_exponent_sum(level: u64, terms: &[BigInt]) -> Self {
        let t = tables(level);
        let mut acc = vec![BigInt::zero(); t.degree];
        for (e, c) in terms.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, p) in acc.iter_mut().zip(&t.powers[e % level as usize]) {
                *a += c * p;
            }
        }
        CycElement { level, coeffs: acc.into_iter().map(Rational::from_integer).collect() }
    }

    /// Rational combination `Σ c_e ζ^e` indexed by exponent mod N.
    pub fn from_rational_exponent_sum(level: u64, terms: &[Rational]) -> Self {
        let t = tables(level);
        let mut acc = vec![Rational::zero(); t.degree];
        for (e, c) in terms.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, p) in acc.iter_mut().zip(&t.powers[e % level as usize]) {
                if !p.is_zero() {
                    *a += c * p;
                }
            }
        }
        CycElement { level, coeffs: acc }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    /// True when every power-basis coefficient is an integer, i.e. the element lies in `Z[ζ_N]`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()))
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level == other.level {
            Ok(())
        } else {
            Err(Error::LevelMismatch { left: self.level, right: other.level })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        Ok(CycElement {
            level: self.level,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        Ok(CycElement {
            level: self.level,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let d = self.coeffs.len();
        let mut raw = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Ok(self.reduce_raw(raw))
    }

    /// Reduces a polynomial of degree `< 2 φ(N) - 1` in `ζ` modulo `Φ_N`.
    fn reduce_raw(&self, mut raw: Vec<Rational>) -> Self {
        let t = tables(self.level);
        let d = t.degree;
        let high = raw.split_off(d.min(raw.len()));
        raw.resize(d, Rational::zero());
        for (k, c) in high.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &t.powers[(d + k) % self.level as usize];
            for (a, b) in raw.iter_mut().zip(p) {
                if !b.is_zero() {
                    *a += &c * b;
                }
            }
        }
        CycElement { level: self.level, coeffs: raw }
    }

    /// Integer numerators over the common denominator `den` (which must be a multiple
    /// of every coefficient denominator).
    pub(crate) fn numerators_over(&self, den: &BigInt) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.numer() * (den / c.denom())).collect()
    }

    /// `raw / den`, where `raw` is an integer polynomial in `ζ` of degree `< 2 φ(N) - 1`.
    pub(crate) fn from_int_raw(level: u64, mut raw: Vec<BigInt>, den: &BigInt) -> Self {
        let t = tables(level);
        let d = t.degree;
        let high = raw.split_off(d.min(raw.len()));
        raw.resize(d, BigInt::zero());
        for (k, c) in high.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, b) in raw.iter_mut().zip(&t.powers[(d + k) % level as usize]) {
                if !b.is_zero() {
                    *a += &c * b;
                }
            }
        }
        let coeffs = raw.into_iter().map(|c| Rational::new(c, den.clone())).collect();
        CycElement { level, coeffs }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycElement { level: self.level, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_N` in `Q[x]`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi = poly::from_int(&cyclotomic_polynomial_shared(self.level));
        let (g, s) = poly::ext_gcd_mod(&self.coeffs, &phi);
        // Φ_N is irreducible, so a nonzero reduced element is coprime to it.
        debug_assert!(g.len() == 1 && g[0].is_one());
        let (_, r) = poly::divrem(&s, &phi);
        let mut coeffs = r;
        coeffs.resize(self.coeffs.len(), Rational::zero());
        Ok(CycElement { level: self.level, coeffs })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.level);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Applies `σ_λ : ζ ↦ ζ^λ`. Fails unless `gcd(λ, N) = 1`.
    pub fn galois(&self, lambda: i64) -> Result<Self> {
        let l = arith::unit(lambda, self.level)?;
        let t = tables(self.level);
        let mut out = vec![Rational::zero(); t.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as u64 * l) % self.level;
            for (a, p) in out.iter_mut().zip(&t.powers[e as usize]) {
                if !p.is_zero() {
                    *a += c * p;
                }
            }
        }
        Ok(CycElement { level: self.level, coeffs: out })
    }

    /// Embeds into `Q(ζ_M)` for a multiple `M` of the level, via `ζ_N ↦ ζ_M^{M/N}`.
    pub fn embed(&self, target: u64) -> Result<Self> {
        if target == 0 || target % self.level != 0 {
            return Err(Error::NotADivisor { from: self.level, to: target });
        }
        let step = target / self.level;
        let mut terms = vec![Rational::zero(); target as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            terms[(i as u64 * step) as usize] += c;
        }
        Ok(Self::from_rational_exponent_sum(target, &terms))
    }

    /// Numeric value under the embedding `ζ_N ↦ e^{2πi/N}`.
    pub fn to_complex(&self) -> Complex64 {
        let angle = 2.0 * std::f64::consts::PI / self.level as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Complex64::from_polar(1.0, angle * i as f64) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }
}

impl fmt::Debug for CycElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycElement(N={}, {})", self.level, self)
    }
}

impl fmt::Display for CycElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &CycElement {
    type Output = CycElement;
    fn add(self, rhs: &CycElement) -> CycElement {
        self.checked_add(rhs).expect("cyclotomic add")
    }
}

impl Sub for &CycElement {
    type Output = CycElement;
    fn sub(self, rhs: &CycElement) -> CycElement {
        self.checked_sub(rhs).expect("cyclotomic sub")
    }
}

impl Mul for &CycElement {
    type Output = CycElement;
    fn mul(self, rhs: &CycElement) -> CycElement {
        self.checked_mul(rhs).expect("cyclotomic mul")
    }
}

impl Neg for &CycElement {
    type Output = CycElement;
    fn neg(self) -> CycElement {
        CycElement { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycElement {
    type Output = CycElement;
    fn neg(self) -> CycElement {
        -&self
    }
}

/// Wire form: `{"N": n, "coeffs": [["num", "den"], ...]}` with decimal-string integers.
#[derive(Serialize, Deserialize)]
struct CycElementWire {
    #[serde(rename = "N")]
    level: u64,
    coeffs: Vec<[String; 2]>,
}

pub(crate) fn rational_to_pair(q: &Rational) -> [String; 2] {
    [q.numer().to_string(), q.denom().to_string()]
}

pub(crate) fn rational_from_pair(p: &[String; 2]) -> Result<Rational> {
    let num: BigInt = p[0].parse().map_err(|_| Error::Malformed(format!("bad integer {:?}", p[0])))?;
    let den: BigInt = p[1].parse().map_err(|_| Error::Malformed(format!("bad integer {:?}", p[1])))?;
    if !den.is_positive() {
        return Err(Error::Malformed(format!("denominator must be positive, got {den}")));
    }
    Ok(Rational::new(num, den))
}

impl Serialize for CycElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycElementWire { level: self.level, coeffs: self.coeffs.iter().map(rational_to_pair).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = CycElementWire::deserialize(d)?;
        let coeffs = w
            .coeffs
            .iter()
            .map(rational_from_pair)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        CycElement::from_coeffs(w.level, coeffs).map_err(serde::de::Error::custom)
    }
}

/// Square matrix over `Q(ζ_N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    level: u64,
    entries: Vec<Vec<CycElement>>,
}

impl CycMatrix {
    pub fn new(level: u64, entries: Vec<Vec<CycElement>>) -> Result<Self> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(Error::Malformed("matrix is not square".into()));
            }
            for e in row {
                if e.level != level {
                    return Err(Error::LevelMismatch { left: level, right: e.level });
                }
            }
        }
        Ok(CycMatrix { level, entries })
    }

    pub fn identity(level: u64, dim: usize) -> Self {
        let entries = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { CycElement::one(level) } else { CycElement::zero(level) })
                    .collect()
            })
            .collect();
        CycMatrix { level, entries }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &CycElement {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<CycElement>] {
        &self.entries
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycMatrix {
            level: self.level,
            entries: self.entries.iter().map(|r| r.iter().map(|e| e.scale(q)).collect()).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::LevelMismatch { left: self.level, right: other.level });
        }
        if self.dim() != other.dim() {
            return Err(Error::Malformed("matrix dimension mismatch".into()));
        }
        let n = self.dim();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(CycElement::zero(self.level), |acc, k| {
                            &acc + &(&self.entries[i][k] * &other.entries[k][j])
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(CycMatrix { level: self.level, entries })
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() })
        })
    }
}

/// The finite Fourier transform on `Z/NZ` and its inverse:
/// `F[j][k] = ζ^{jk}` and `F_inv[j][k] = ζ^{-jk} / N`.
pub fn dft_matrices(n: u64) -> (CycMatrix, CycMatrix) {
    assert!(n >= 1, "DFT of size 0");
    let inv_n = Rational::new(BigInt::one(), BigInt::from(n));
    let build = |sign: i64, scale: &Rational| {
        let entries = (0..n as i64)
            .map(|j| {
                (0..n as i64)
                    .map(|k| CycElement::zeta_pow(n, sign * j * k).scale(scale))
                    .collect()
            })
            .collect();
        CycMatrix { level: n, entries }
    };
    (build(1, &Rational::one()), build(-1, &inv_n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(5), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        for n in 1..=60 {
            assert_eq!(field_degree(n), arith::euler_phi(n), "degree at {n}");
        }
    }

    #[test]
    fn zeta_relations() {
        let z3 = CycElement::zeta(3);
        let one = CycElement::one(3);
        // (1 + ζ)(1 + ζ^2) = 2 + ζ + ζ^2 = 1
        let prod = &(&one + &z3) * &(&one + &(&z3 * &z3));
        assert!(prod.is_one());
        assert!(CycElement::zeta_pow(7, 7).is_one());
        assert_eq!(CycElement::zeta_pow(5, -1), CycElement::zeta_pow(5, 4));
        assert_eq!(CycElement::zeta(2), CycElement::from_integer(2, -1));
        assert!(CycElement::zeta(1).is_one());
    }

    #[test]
    fn inverses() {
        let z4 = CycElement::zeta(4);
        assert_eq!(z4.inverse().unwrap(), -&z4);
        let a = &CycElement::one(5) + &CycElement::zeta(5);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        // 1/(1+ζ_5) = -(ζ + ζ^3) in the power basis
        assert_eq!(inv.coeffs(), &[q(0, 1), q(-1, 1), q(0, 1), q(-1, 1)]);
        assert_eq!(CycElement::zero(5).inverse(), Err(Error::DivisionByZero));
        let half = CycElement::from_rational(9, q(1, 2));
        assert_eq!(half.inverse().unwrap(), CycElement::from_integer(9, 2));
    }

    #[test]
    fn level_mismatch_is_an_error() {
        let a = CycElement::one(3);
        let b = CycElement::one(4);
        assert_eq!(a.checked_add(&b), Err(Error::LevelMismatch { left: 3, right: 4 }));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn galois_examples() {
        let z4 = CycElement::zeta(4);
        assert_eq!(z4.galois(3).unwrap(), -&z4);
        assert_eq!(z4.galois(1).unwrap(), z4);
        assert!(z4.galois(2).is_err());
        let z5 = CycElement::zeta(5);
        let twice = z5.galois(2).unwrap().galois(2).unwrap();
        assert_eq!(twice, CycElement::zeta_pow(5, 4));
        assert_eq!(twice, z5.galois(4).unwrap());
        let r = CycElement::from_rational(7, q(3, 11));
        assert_eq!(r.galois(3).unwrap(), r);
    }

    #[test]
    fn embedding() {
        let z3 = CycElement::zeta(3);
        let e = z3.embed(6).unwrap();
        assert_eq!(e, CycElement::zeta_pow(6, 2));
        assert!(z3.embed(4).is_err());
        let a = &z3 + &CycElement::from_integer(3, 2);
        let b = z3.pow(2);
        assert_eq!((&a * &b).embed(12).unwrap(), &a.embed(12).unwrap() * &b.embed(12).unwrap());
    }

    #[test]
    fn dft_small() {
        let (f, fi) = dft_matrices(1);
        assert!(f.get(0, 0).is_one() && fi.get(0, 0).is_one());
        let (f, fi) = dft_matrices(2);
        assert_eq!(f.get(1, 1), &CycElement::from_integer(2, -1));
        assert_eq!(fi.get(0, 1), &CycElement::from_rational(2, q(1, 2)));
        assert_eq!(fi.get(1, 1), &CycElement::from_rational(2, q(-1, 2)));
        assert!(f.checked_mul(&fi).unwrap().is_identity());
        let (f, fi) = dft_matrices(6);
        assert!(f.checked_mul(&fi).unwrap().is_identity());
        let scaled = fi.scale(&Rational::from_integer(6.into()));
        assert!(scaled.rows().iter().flatten().all(CycElement::is_integral));
    }

    #[test]
    fn complex_embedding() {
        let z = CycElement::zeta(8).to_complex();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((z.re - h).abs() < 1e-12 && (z.im - h).abs() < 1e-12);
        let s = (&CycElement::zeta(5) + &CycElement::zeta_pow(5, 4)).to_complex();
        assert!((s.re - 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
    }

    #[test]
    fn json_shape() {
        let a = &CycElement::from_rational(3, q(-1, 2)) + &CycElement::zeta(3);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"N":3,"coeffs":[["-1","2"],["1","1"]]}"#);
        let back: CycElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<CycElement>(r#"{"N":3,"coeffs":[["1","1"]]}"#).is_err());
        assert!(serde_json::from_str::<CycElement>(r#"{"N":3,"coeffs":[["1","0"],["1","1"]]}"#).is_err());
    }

    #[test]
    fn display() {
        let a = &CycElement::from_rational(5, q(-1, 2)) + &CycElement::zeta_pow(5, 2).scale(&q(3, 1));
        assert_eq!(a.to_string(), "-1/2 + 3*z^2");
        assert_eq!(CycElement::zero(4).to_string(), "0");
    }
}
