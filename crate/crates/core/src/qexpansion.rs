//! Truncated Laurent series `Σ_{order_min <= n < prec} a_n q^{n/w}` with
//! coefficients in `Q(ζ_N)`.
//!
//! Every operation propagates precision conservatively: a coefficient is only
//! reported when all inputs that contribute to it are known. Series of
//! different widths are rescaled to the lcm width before being combined.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::cyclotomic::CycElement;
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    level: u64,
    width: u64,
    order_min: i64,
    prec: i64,
    coeffs: Vec<CycElement>,
}

/// Outcome of comparing two series on the range where both are known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesComparison {
    pub equal: bool,
    pub width: u64,
    /// Half-open exponent range `[lo, hi)` (in `q^{1/width}`) that was actually compared.
    pub certified_range: [i64; 2],
    pub first_difference: Option<CoefficientDifference>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientDifference {
    pub exponent: i64,
    pub lhs: CycElement,
    pub rhs: CycElement,
}

impl QExpansion {
    pub fn new(level: u64, width: u64, order_min: i64, prec: i64, coeffs: Vec<CycElement>) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        if width == 0 {
            return Err(Error::Malformed("width must be positive".into()));
        }
        if prec <= order_min {
            return Err(Error::InvalidPrecision(format!("prec {prec} must exceed order_min {order_min}")));
        }
        if coeffs.len() as i64 != prec - order_min {
            return Err(Error::Malformed(format!(
                "expected {} coefficients, got {}",
                prec - order_min,
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|c| c.level() != level) {
            return Err(Error::LevelMismatch { left: level, right: c.level() });
        }
        Ok(QExpansion { level, width, order_min, prec, coeffs })
    }

    /// The zero series known on `[order_min, prec)`.
    pub fn zero(level: u64, width: u64, order_min: i64, prec: i64) -> Result<Self> {
        let len = (prec - order_min).max(0) as usize;
        Self::new(level, width, order_min, prec, vec![CycElement::zero(level); len])
    }

    /// `c · q^{n/w}` known up to (excluding) `prec`.
    pub fn monomial(level: u64, width: u64, n: i64, c: CycElement, prec: i64) -> Result<Self> {
        let mut z = Self::zero(level, width, n.min(0), prec)?;
        let idx = (n - z.order_min) as usize;
        if idx >= z.coeffs.len() {
            return Err(Error::InvalidPrecision(format!("exponent {n} is not below prec {prec}")));
        }
        z.coeffs[idx] = c;
        Ok(z)
    }

    pub fn one(level: u64, width: u64, prec: i64) -> Result<Self> {
        Self::monomial(level, width, 0, CycElement::one(level), prec)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn width(&self) -> u64 {
        self.width
    }

    pub fn order_min(&self) -> i64 {
        self.order_min
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn coeffs(&self) -> &[CycElement] {
        &self.coeffs
    }

    /// Coefficient of `q^{n/w}`: zero below `order_min`, `None` from `prec` on.
    pub fn coeff(&self, n: i64) -> Option<CycElement> {
        if n >= self.prec {
            None
        } else if n < self.order_min {
            Some(CycElement::zero(self.level))
        } else {
            Some(self.coeffs[(n - self.order_min) as usize].clone())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycElement::is_zero)
    }

    /// Re-expresses the series in `q^{1/new_width}`; `new_width` must be a multiple of the width.
    pub fn rescale(&self, new_width: u64) -> Result<Self> {
        if new_width == 0 || new_width % self.width != 0 {
            return Err(Error::WidthMismatch { left: self.width, right: new_width });
        }
        let r = (new_width / self.width) as i64;
        if r == 1 {
            return Ok(self.clone());
        }
        let order_min = self.order_min * r;
        let prec = self.prec * r;
        let mut coeffs = vec![CycElement::zero(self.level); (prec - order_min) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * r as usize] = c.clone();
        }
        Ok(QExpansion { level: self.level, width: new_width, order_min, prec, coeffs })
    }

    /// Drops known coefficients at exponents `>= prec`.
    pub fn truncate(&self, prec: i64) -> Result<Self> {
        if prec <= self.order_min {
            return Err(Error::InvalidPrecision(format!("prec {prec} must exceed order_min {}", self.order_min)));
        }
        let prec = prec.min(self.prec);
        let mut out = self.clone();
        out.coeffs.truncate((prec - self.order_min) as usize);
        out.prec = prec;
        Ok(out)
    }

    fn common_width(&self, other: &Self) -> Result<(Self, Self)> {
        if self.level != other.level {
            return Err(Error::LevelMismatch { left: self.level, right: other.level });
        }
        let w = self.width.lcm(&other.width);
        Ok((self.rescale(w)?, other.rescale(w)?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (f, g) = self.common_width(other)?;
        let order_min = f.order_min.min(g.order_min);
        let prec = f.prec.min(g.prec);
        let coeffs = (order_min..prec)
            .map(|n| &f.coeff(n).unwrap() + &g.coeff(n).unwrap())
            .collect();
        Ok(QExpansion { level: f.level, width: f.width, order_min, prec, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// Cauchy product. The result is known up to `min(ord f + prec g, ord g + prec f)`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (f, g) = self.common_width(other)?;
        let order_min = f.order_min + g.order_min;
        let prec = (f.order_min + g.prec).min(g.order_min + f.prec);
        let len = (prec - order_min) as usize;
        let level = f.level;

        // Work with integer numerators over one common denominator per series.
        let den_f = common_denominator(&f.coeffs);
        let den_g = common_denominator(&g.coeffs);
        let nf: Vec<Vec<BigInt>> = f.coeffs.iter().take(len).map(|c| c.numerators_over(&den_f)).collect();
        let ng: Vec<Vec<BigInt>> = g.coeffs.iter().take(len).map(|c| c.numerators_over(&den_g)).collect();
        let nz_f: Vec<bool> = nf.iter().map(|v| v.iter().any(|x| !x.is_zero())).collect();
        let nz_g: Vec<bool> = ng.iter().map(|v| v.iter().any(|x| !x.is_zero())).collect();
        let den = &den_f * &den_g;
        let d = nf.first().map_or(1, Vec::len);

        let coeffs = (0..len)
            .into_par_iter()
            .map(|n| {
                let mut raw = vec![BigInt::zero(); 2 * d - 1];
                for i in 0..=n {
                    let j = n - i;
                    if !nz_f[i] || !nz_g[j] {
                        continue;
                    }
                    for (s, a) in nf[i].iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        for (t, b) in ng[j].iter().enumerate() {
                            if !b.is_zero() {
                                raw[s + t] += a * b;
                            }
                        }
                    }
                }
                CycElement::from_int_raw(level, raw, &den)
            })
            .collect();
        Ok(QExpansion { level, width: f.width, order_min, prec, coeffs })
    }

    pub fn scale(&self, c: &CycElement) -> Result<Self> {
        if c.level() != self.level {
            return Err(Error::LevelMismatch { left: self.level, right: c.level() });
        }
        Ok(self.map_coeffs(|a| a * c))
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.map_coeffs(|a| a.scale(q))
    }

    fn map_coeffs(&self, f: impl Fn(&CycElement) -> CycElement) -> Self {
        QExpansion { coeffs: self.coeffs.iter().map(f).collect(), ..self.clone() }
    }

    /// Applies `σ_λ` to every coefficient.
    pub fn galois(&self, lambda: i64) -> Result<Self> {
        arith::unit(lambda, self.level)?;
        let coeffs = self.coeffs.iter().map(|c| c.galois(lambda)).collect::<Result<_>>()?;
        Ok(QExpansion { coeffs, ..self.clone() })
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denominator(&self) -> BigInt {
        common_denominator(&self.coeffs)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(CycElement::is_integral)
    }

    /// Primes dividing some coefficient denominator.
    pub fn denominator_support(&self) -> BTreeSet<u64> {
        arith::prime_factors(&self.denominator()).into_iter().collect()
    }

    /// Numerically evaluates the first `terms` terms at `tau`, with `ζ_N ↦ e^{2πi/N}`.
    pub fn eval_numeric(&self, tau: Complex64, terms: usize) -> Result<Complex64> {
        if tau.im <= 0.0 {
            return Err(Error::NotInUpperHalfPlane(tau.im));
        }
        if terms > self.coeffs.len() {
            return Err(Error::InvalidPrecision(format!(
                "{terms} terms requested, {} known",
                self.coeffs.len()
            )));
        }
        let step = Complex64::new(0.0, 2.0 * std::f64::consts::PI) * tau / self.width as f64;
        Ok(self
            .coeffs
            .iter()
            .take(terms)
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c.to_complex() * (step * (self.order_min + i as i64) as f64).exp())
            .sum())
    }

    /// Compares coefficient by coefficient on the common known range, after width normalization.
    pub fn compare(&self, other: &Self) -> Result<SeriesComparison> {
        let (f, g) = self.common_width(other)?;
        let lo = f.order_min.min(g.order_min);
        let hi = f.prec.min(g.prec);
        let first_difference = (lo..hi).find_map(|n| {
            let (a, b) = (f.coeff(n).unwrap(), g.coeff(n).unwrap());
            (a != b).then_some(CoefficientDifference { exponent: n, lhs: a, rhs: b })
        });
        Ok(SeriesComparison {
            equal: first_difference.is_none(),
            width: f.width,
            certified_range: [lo, hi],
            first_difference,
        })
    }
}

fn common_denominator(coeffs: &[CycElement]) -> BigInt {
    coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator()))
}

impl std::ops::Neg for &QExpansion {
    type Output = QExpansion;
    fn neg(self) -> QExpansion {
        self.map_coeffs(|c| -c)
    }
}

/// Free-function form of [`QExpansion::galois`].
pub fn series_galois(lambda: i64, f: &QExpansion) -> Result<QExpansion> {
    f.galois(lambda)
}

#[derive(Serialize, Deserialize)]
struct QExpansionWire {
    #[serde(rename = "N")]
    level: u64,
    width: u64,
    order_min: i64,
    prec: i64,
    coeffs: Vec<CycElement>,
}

impl Serialize for QExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QExpansionWire {
            level: self.level,
            width: self.width,
            order_min: self.order_min,
            prec: self.prec,
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QExpansion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = QExpansionWire::deserialize(d)?;
        QExpansion::new(w.level, w.width, w.order_min, w.prec, w.coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_series(level: u64, width: u64, order_min: i64, vals: &[i64]) -> QExpansion {
        let coeffs = vals.iter().map(|&v| CycElement::from_integer(level, v)).collect();
        QExpansion::new(level, width, order_min, order_min + vals.len() as i64, coeffs).unwrap()
    }

    #[test]
    fn additive_identity() {
        let f = int_series(3, 1, 0, &[1, 2, 3, 4]);
        let z = QExpansion::zero(3, 1, 0, 4).unwrap();
        assert_eq!(f.checked_add(&z).unwrap(), f);
    }

    #[test]
    fn difference_of_squares() {
        let mut a = vec![0i64; 10];
        a[0] = 1;
        a[1] = 1;
        let mut b = a.clone();
        b[1] = -1;
        let p = int_series(1, 1, 0, &a).checked_mul(&int_series(1, 1, 0, &b)).unwrap();
        let mut expect = vec![0i64; 10];
        expect[0] = 1;
        expect[2] = -1;
        assert_eq!(p, int_series(1, 1, 0, &expect));
        assert_eq!(p.prec(), 10);
    }

    #[test]
    fn width_lcm() {
        // q^{1/2} * q^{1/3} = q^{5/6}
        let f = int_series(1, 2, 0, &[0, 1, 0, 0]);
        let g = int_series(1, 3, 0, &[0, 1, 0, 0, 0, 0]);
        let p = f.checked_mul(&g).unwrap();
        assert_eq!(p.width(), 6);
        assert!(p.coeff(5).unwrap().is_one());
        assert!(p.coeffs().iter().enumerate().all(|(i, c)| i == 5 || c.is_zero()));
        // f known below q^2, i.e. exponent 12 in q^{1/6}; g below q^2 as well.
        assert_eq!(f.rescale(6).unwrap().prec(), 12);
        assert_eq!(p.prec(), 12);
        let r = f.rescale(6).unwrap();
        assert!(r.coeff(3).unwrap().is_one());
        assert!(f.rescale(5).is_err());
    }

    #[test]
    fn precision_propagation() {
        let f = int_series(1, 1, 0, &[1, 1, 1, 1, 1]);
        let g = int_series(1, 1, 1, &[1, 1]);
        assert_eq!(f.checked_add(&g).unwrap().prec(), 3);
        let p = f.checked_mul(&g).unwrap();
        assert_eq!((p.order_min(), p.prec()), (1, 3));
    }

    #[test]
    fn laurent_products() {
        // (q^{-1} + 1)(q - 1) = 1 - q^{-1} + q - 1 = -q^{-1} + q
        let f = int_series(2, 1, -1, &[1, 1, 0, 0, 0]);
        let g = int_series(2, 1, 0, &[-1, 1, 0, 0, 0, 0]);
        let p = f.checked_mul(&g).unwrap();
        assert_eq!((p.order_min(), p.prec()), (-1, 4));
        assert_eq!(p.coeff(-1).unwrap(), CycElement::from_integer(2, -1));
        assert!(p.coeff(0).unwrap().is_zero());
        assert!(p.coeff(1).unwrap().is_one());
        assert!(p.coeff(4).is_none());
    }

    #[test]
    fn galois_on_series() {
        let f = QExpansion::monomial(4, 1, 1, CycElement::zeta(4), 5).unwrap();
        let g = f.galois(3).unwrap();
        assert_eq!(g.coeff(1).unwrap(), -&CycElement::zeta(4));
        assert_eq!(f.galois(1).unwrap(), f);
        assert!(f.galois(2).is_err());
    }

    #[test]
    fn denominators() {
        let f = int_series(5, 1, 0, &[3, -7, 0]);
        assert!(f.denominator_support().is_empty());
        let sixth = CycElement::from_rational(5, Rational::new(1.into(), 6.into()));
        let g = QExpansion::monomial(5, 1, 2, sixth, 4).unwrap();
        assert_eq!(g.denominator_support().into_iter().collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn numeric_evaluation() {
        let one = QExpansion::one(3, 1, 5).unwrap();
        let v = one.eval_numeric(Complex64::new(0.3, 0.7), 5).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let q = QExpansion::monomial(1, 1, 1, CycElement::one(1), 3).unwrap();
        let v = q.eval_numeric(Complex64::new(0.0, 1.0), 3).unwrap();
        assert!((v.re - (-2.0 * std::f64::consts::PI).exp()).abs() < 1e-15);
        assert!((v.re - 0.00186744).abs() < 1e-8);
        assert!(q.eval_numeric(Complex64::new(0.0, 0.0), 3).is_err());
        assert!(q.eval_numeric(Complex64::new(0.0, 1.0), 4).is_err());
    }

    #[test]
    fn comparison_reports_range() {
        let f = int_series(1, 1, 0, &[1, 2, 3, 4]);
        let g = int_series(1, 1, 0, &[1, 2, 5]);
        let c = f.compare(&g).unwrap();
        assert!(!c.equal);
        assert_eq!(c.certified_range, [0, 3]);
        assert_eq!(c.first_difference.unwrap().exponent, 2);
        let h = int_series(1, 2, 0, &[1, 0, 2, 0, 3, 0, 4, 0]);
        let c = f.compare(&h).unwrap();
        assert!(c.equal);
        assert_eq!((c.width, c.certified_range), (2, [0, 8]));
    }

    #[test]
    fn json_shape() {
        let f = int_series(1, 2, 0, &[1, 0]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"N":1,"width":2,"order_min":0,"prec":2,"coeffs":[{"N":1,"coeffs":[["1","1"]]},{"N":1,"coeffs":[["0","1"]]}]}"#
        );
        assert_eq!(serde_json::from_str::<QExpansion>(&s).unwrap(), f);
        let bad = r#"{"N":1,"width":2,"order_min":0,"prec":3,"coeffs":[{"N":1,"coeffs":[["1","1"]]}]}"#;
        assert!(serde_json::from_str::<QExpansion>(bad).is_err());
    }
}
