//! Eisenstein series of level N and weight `k >= 3`.
//!
//! For `v = (c₁, c₂) ∈ (Z/NZ)²` the normalized series is
//!
//! ```text
//! Ẽ_k^v(τ) = N^k (k-1)! / (-2πi)^k · Σ'_{(m,n) ≡ v (mod N)} (mτ + n)^{-k}
//! ```
//!
//! whose expansion in `q^{1/N}` has coefficients in `Q(ζ_N)`:
//!
//! ```text
//! ã_ℓ = Σ_{dm=ℓ, m≡c₁} d^{k-1} ζ^{d c₂} + (-1)^k Σ_{dm=ℓ, m≡-c₁} d^{k-1} ζ^{-d c₂}      (ℓ >= 1)
//! ã_0 = [c₁ ≡ 0] (-1)^{k+1} N^{k-1}/k · Σ_{j mod N} ζ^{-j c₂} B_k(j/N)
//! ```
//!
//! Slashing permutes the symbols (`Ẽ^v | g = Ẽ^{v g}`) and `σ_λ` sends
//! `Ẽ^{(c₁,c₂)}` to `Ẽ^{(c₁,λc₂)}`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith;
use crate::cyclotomic::CycElement;
use crate::error::{Error, Result};
use crate::modgroup::ResMat;
use crate::qexpansion::QExpansion;
use crate::Rational;

/// Table of Bernoulli numbers `B_0..=B_max` with `B_1 = -1/2`.
#[derive(Clone, Debug)]
pub struct BernoulliCache {
    table: Vec<Rational>,
}

impl BernoulliCache {
    /// Fills the table from `Σ_{j<=m} C(m+1, j) B_j = 0`.
    pub fn new(max: usize) -> Self {
        let mut table: Vec<Rational> = Vec::with_capacity(max + 1);
        table.push(Rational::one());
        for m in 1..=max {
            let s: Rational = (0..m)
                .map(|j| &table[j] * Rational::from_integer(binomial(BigInt::from(m + 1), BigInt::from(j))))
                .sum();
            table.push(-s / Rational::from_integer(BigInt::from(m + 1)));
        }
        BernoulliCache { table }
    }

    pub fn max(&self) -> usize {
        self.table.len() - 1
    }

    pub fn get(&self, k: usize) -> &Rational {
        &self.table[k]
    }

    /// `B_k(x) = Σ_j C(k, j) B_j x^{k-j}`.
    pub fn poly_eval(&self, k: usize, x: &Rational) -> Rational {
        let mut xp = Rational::one();
        let mut acc = Rational::zero();
        // run j from k down to 0 so that x^{k-j} is built incrementally
        for j in (0..=k).rev() {
            acc += &self.table[j] * Rational::from_integer(binomial(BigInt::from(k), BigInt::from(j))) * &xp;
            xp *= x;
        }
        acc
    }
}

const SHARED_BERNOULLI: usize = 64;

fn shared_bernoulli() -> &'static BernoulliCache {
    static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
    CACHE.get_or_init(|| BernoulliCache::new(SHARED_BERNOULLI))
}

fn with_bernoulli<T>(k: usize, f: impl FnOnce(&BernoulliCache) -> T) -> T {
    if k <= SHARED_BERNOULLI {
        f(shared_bernoulli())
    } else {
        f(&BernoulliCache::new(k))
    }
}

pub fn bernoulli(k: usize) -> Rational {
    with_bernoulli(k, |c| c.get(k).clone())
}

pub fn bernoulli_poly_eval(k: usize, x: &Rational) -> Rational {
    with_bernoulli(k, |c| c.poly_eval(k, x))
}

/// The Eisenstein symbol `Ẽ_k^{(c₁, c₂)}` at level N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EisSymbol {
    #[serde(rename = "N")]
    level: u64,
    #[serde(rename = "k")]
    weight: u32,
    c1: u64,
    c2: u64,
}

impl EisSymbol {
    pub fn new(level: u64, weight: u32, c1: i64, c2: i64) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        if weight < 3 {
            return Err(Error::UnsupportedWeight(weight));
        }
        Ok(EisSymbol { level, weight, c1: arith::rem(c1, level), c2: arith::rem(c2, level) })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn vector(&self) -> (u64, u64) {
        (self.c1, self.c2)
    }

    /// `Ẽ^{-v}`, equal to `(-1)^k Ẽ^v`.
    pub fn negated(&self) -> Self {
        EisSymbol { c1: (self.level - self.c1) % self.level, c2: (self.level - self.c2) % self.level, ..*self }
    }
}

impl std::fmt::Display for EisSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "E{}[{},{}]", self.weight, self.c1, self.c2)
    }
}

/// Constant term `[c₁ ≡ 0] (-1)^{k+1} N^{k-1}/k Σ_j ζ^{-j c₂} B_k(j/N)`.
fn constant_term(sym: &EisSymbol) -> CycElement {
    let n = sym.level;
    if sym.c1 != 0 {
        return CycElement::zero(n);
    }
    let k = sym.weight as usize;
    let mut by_exponent = vec![Rational::zero(); n as usize];
    with_bernoulli(k, |b| {
        for j in 0..n {
            let x = Rational::new(BigInt::from(j), BigInt::from(n));
            let e = arith::rem(-((j * sym.c2) as i64), n) as usize;
            by_exponent[e] += b.poly_eval(k, &x);
        }
    });
    let sign = if k % 2 == 0 { -1 } else { 1 };
    let scale = Rational::new(BigInt::from(sign) * BigInt::from(n).pow(sym.weight - 1), BigInt::from(k));
    CycElement::from_rational_exponent_sum(n, &by_exponent).scale(&scale)
}

/// Coefficient of `q^{ℓ/N}` for `ℓ >= 1`.
fn divisor_sum_coefficient(sym: &EisSymbol, ell: u64) -> CycElement {
    let n = sym.level;
    let k = sym.weight;
    let neg_c1 = (n - sym.c1) % n;
    let mut by_exponent = vec![BigInt::zero(); n as usize];
    for d in arith::divisors(ell) {
        let m = (ell / d) % n;
        let dk = BigInt::from(d).pow(k - 1);
        if m == sym.c1 {
            by_exponent[((d % n) * sym.c2 % n) as usize] += &dk;
        }
        if m == neg_c1 {
            let e = arith::rem(-(((d % n) * sym.c2 % n) as i64), n) as usize;
            if k % 2 == 0 {
                by_exponent[e] += &dk;
            } else {
                by_exponent[e] -= &dk;
            }
        }
    }
    CycElement::from_exponent_sum(n, &by_exponent)
}

/// Exact expansion of `Ẽ_k^v` in `q^{1/N}` for exponents `0 <= ℓ < prec`.
pub fn eisenstein_qexp(sym: &EisSymbol, prec: usize) -> Result<QExpansion> {
    if prec == 0 {
        return Err(Error::InvalidPrecision("need at least one term".into()));
    }
    let mut coeffs = Vec::with_capacity(prec);
    coeffs.push(constant_term(sym));
    coeffs.extend((1..prec as u64).map(|ell| divisor_sum_coefficient(sym, ell)));
    QExpansion::new(sym.level, sym.level, 0, prec as i64, coeffs)
}

/// `Ẽ^v | g = Ẽ^{v g}` with `v` a row vector.
pub fn slash_symbol(sym: &EisSymbol, g: &ResMat) -> Result<EisSymbol> {
    if g.modulus() != sym.level {
        return Err(Error::ModulusMismatch { left: sym.level, right: g.modulus() });
    }
    let (c1, c2) = g.act_on_row(sym.c1, sym.c2);
    Ok(EisSymbol { c1, c2, ..*sym })
}

/// `(Ẽ^{(c₁,c₂)})^{σ_λ} = Ẽ^{(c₁, λc₂)}`.
pub fn galois_symbol(sym: &EisSymbol, lambda: i64) -> Result<EisSymbol> {
    let l = arith::unit(lambda, sym.level)?;
    Ok(EisSymbol { c2: (l as u128 * sym.c2 as u128 % sym.level as u128) as u64, ..*sym })
}

/// `N^k (k-1)! / (-2πi)^k`.
pub fn normalization(level: u64, weight: u32) -> Complex64 {
    let fact: f64 = (1..weight).map(f64::from).product();
    let denom = Complex64::new(0.0, -2.0 * std::f64::consts::PI).powi(weight as i32);
    Complex64::new((level as f64).powi(weight as i32) * fact, 0.0) / denom
}

/// Numeric value of `Ẽ_k^v(τ)` from the defining lattice sum.
///
/// Rows `|m| <= cutoff` are summed directly over `|n| <= cutoff`; the two tails
/// of each row (`|n| > cutoff`) are added by Euler–Maclaurin with three
/// correction terms, which removes the slow `O(cutoff^{2-k})` box-truncation
/// error. Rows with `|m| > cutoff` are dropped; each is bounded by roughly
/// `e^{-2π |m| Im τ / N}`.
pub fn lattice_sum_numeric(sym: &EisSymbol, tau: Complex64, cutoff: u64) -> Result<Complex64> {
    if tau.im <= 0.0 {
        return Err(Error::NotInUpperHalfPlane(tau.im));
    }
    if cutoff < sym.level {
        return Err(Error::InvalidPrecision(format!("cutoff {cutoff} is below the level {}", sym.level)));
    }
    let n = sym.level as i64;
    let k = sym.weight as i32;
    let kf = k as f64;
    let nf = n as f64;
    let big_m = cutoff as i64;
    let in_class = |x: i64, c: u64| x.rem_euclid(n) as u64 == c;
    let n_top = (big_m + 1..).find(|&x| in_class(x, sym.c2)).unwrap();
    let n_bottom = (-big_m - n..=-big_m - 1).rev().find(|&x| in_class(x, sym.c2)).unwrap();
    let n_first = (-big_m..).find(|&x| in_class(x, sym.c2)).unwrap();

    let mut total = Complex64::zero();
    let mut m = (-big_m..).find(|&x| in_class(x, sym.c1)).unwrap();
    while m <= big_m {
        let row = tau * m as f64;
        let mut s = Complex64::zero();
        let mut j = n_first;
        while j <= big_m {
            if m != 0 || j != 0 {
                s += (row + j as f64).powi(-k);
            }
            j += n;
        }
        // Σ_{t>=0} f(w + tN) ≈ ∫ + f/2 - N f'/12 + N³ f'''/720, f(w) = w^{-k}
        let w0 = row + n_top as f64;
        s += w0.powi(1 - k) / (nf * (kf - 1.0)) + w0.powi(-k) / 2.0 + w0.powi(-k - 1) * (kf * nf / 12.0)
            - w0.powi(-k - 3) * (kf * (kf + 1.0) * (kf + 2.0) * nf.powi(3) / 720.0);
        // Σ_{t>=0} f(w - tN)
        let w1 = row + n_bottom as f64;
        s += w1.powi(1 - k) / (nf * (1.0 - kf)) + w1.powi(-k) / 2.0 - w1.powi(-k - 1) * (kf * nf / 12.0)
            + w1.powi(-k - 3) * (kf * (kf + 1.0) * (kf + 2.0) * nf.powi(3) / 720.0);
        total += s;
        m += n;
    }
    Ok(normalization(sym.level, sym.weight) * total)
}

/// Number of terms after which `n^k e^{-2π n Im τ / N}` drops below `1e-18`.
pub fn series_terms_for(level: u64, weight: u32, tau: Complex64) -> usize {
    let decay = 2.0 * std::f64::consts::PI * tau.im / level as f64;
    (1usize..)
        .find(|&n| n > 4 && (weight as f64 * (n as f64).ln() - decay * n as f64) < -18.0 * std::f64::consts::LN_10)
        .unwrap()
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub symbol: EisSymbol,
    pub tau: [f64; 2],
    pub cutoff: u64,
    pub terms: usize,
    pub series: [f64; 2],
    pub lattice: [f64; 2],
    pub abs_error: f64,
    pub rel_error: f64,
    pub tolerance: f64,
    pub agrees: bool,
}

/// Evaluates the exact expansion of `sym` at `τ` and compares it with the
/// lattice sum. Agreement means `|a - b| <= tol · max(|a|, |b|) + 1e-12`; the
/// absolute slack covers symbols whose form vanishes identically.
pub fn oracle_check(sym: &EisSymbol, tau: Complex64, cutoff: u64, tol: f64) -> Result<OracleReport> {
    let terms = series_terms_for(sym.level, sym.weight, tau);
    let series = eisenstein_qexp(sym, terms)?.eval_numeric(tau, terms)?;
    let lattice = lattice_sum_numeric(sym, tau, cutoff)?;
    let abs_error = (series - lattice).norm();
    let scale = series.norm().max(lattice.norm());
    Ok(OracleReport {
        symbol: *sym,
        tau: [tau.re, tau.im],
        cutoff,
        terms,
        series: [series.re, series.im],
        lattice: [lattice.re, lattice.im],
        abs_error,
        rel_error: if scale > 0.0 { abs_error / scale } else { 0.0 },
        tolerance: tol,
        agrees: abs_error <= tol * scale + 1e-12,
    })
}
