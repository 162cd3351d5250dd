//! Symbolic modular forms built from Eisenstein symbols, the slash and Galois
//! actions on them, and exact checkers for `(f|g)^σ = f^σ | g_λ` and for the
//! denominators of `f|g`.
//!
//! A [`FormExpr`] is a `Q(ζ_N)`-linear combination of monomials, each a
//! multiset of [`EisSymbol`]s. Slashing acts on the symbols only (the slash
//! action is multiplicative for weight-additive products); Galois acts on both
//! the coefficients and the symbols.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::cyclotomic::CycElement;
use crate::eisenstein::{self, EisSymbol};
use crate::error::{Error, Result};
use crate::modgroup::{self, ResMat, UniMat};
use crate::qexpansion::{CoefficientDifference, QExpansion};
use crate::Rational;

/// Working precision of the theorem checks: terms in `q^{1/N}`.
pub const DEFAULT_PREC: usize = 40;

/// Sorted list of symbols; the product of their series.
pub type Monomial = Vec<EisSymbol>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormExpr {
    level: u64,
    weight: u32,
    terms: BTreeMap<Monomial, CycElement>,
}

impl FormExpr {
    /// The zero form of the given level and weight.
    pub fn zero(level: u64, weight: u32) -> Self {
        FormExpr { level, weight, terms: BTreeMap::new() }
    }

    pub fn symbol(sym: EisSymbol) -> Self {
        let mut f = Self::zero(sym.level(), sym.weight());
        f.terms.insert(vec![sym], CycElement::one(sym.level()));
        f
    }

    pub fn from_terms(level: u64, weight: u32, terms: impl IntoIterator<Item = (CycElement, Monomial)>) -> Result<Self> {
        let mut f = Self::zero(level, weight);
        for (c, m) in terms {
            f.add_term(c, m)?;
        }
        Ok(f)
    }

    /// Adds `c · Π m`, merging with an existing equal monomial and pruning zeros.
    pub fn add_term(&mut self, c: CycElement, mut m: Monomial) -> Result<()> {
        if c.level() != self.level {
            return Err(Error::LevelMismatch { left: self.level, right: c.level() });
        }
        if let Some(s) = m.iter().find(|s| s.level() != self.level) {
            return Err(Error::LevelMismatch { left: self.level, right: s.level() });
        }
        let w: u32 = m.iter().map(EisSymbol::weight).sum();
        if w != self.weight {
            return Err(Error::Malformed(format!("monomial of weight {w} in a form of weight {}", self.weight)));
        }
        if m.is_empty() {
            return Err(Error::Malformed("empty monomial".into()));
        }
        m.sort();
        let entry = self.terms.entry(m).or_insert_with(|| CycElement::zero(c.level()));
        *entry = &*entry + &c;
        self.terms.retain(|_, c| !c.is_zero());
        Ok(())
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycElement)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.weight != other.weight {
            return Err(Error::Malformed(format!("weights {} and {} differ", self.weight, other.weight)));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone())?;
        }
        Ok(out)
    }

    /// Product of forms; weights add.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::LevelMismatch { left: self.level, right: other.level });
        }
        let mut out = Self::zero(self.level, self.weight + other.weight);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().chain(m2).copied().collect();
                out.add_term(c1 * c2, m)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycElement) -> Result<Self> {
        let mut out = Self::zero(self.level, self.weight);
        for (m, a) in &self.terms {
            out.add_term(a.checked_mul(c)?, m.clone())?;
        }
        Ok(out)
    }

    fn map_symbols(&self, f: impl Fn(&EisSymbol) -> Result<EisSymbol>) -> Result<Self> {
        let mut out = Self::zero(self.level, self.weight);
        for (m, c) in &self.terms {
            let m = m.iter().map(&f).collect::<Result<Monomial>>()?;
            out.add_term(c.clone(), m)?;
        }
        Ok(out)
    }
}

impl std::fmt::Display for FormExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for s in m {
                write!(f, "·{s}")?;
            }
        }
        Ok(())
    }
}

/// `f | g`, through `Ẽ^v | g = Ẽ^{v g}` on every symbol.
pub fn form_slash(f: &FormExpr, g: &UniMat) -> FormExpr {
    form_slash_mod(f, &modgroup::reduce_mod(g, f.level)).expect("moduli agree")
}

/// `f | g` for `g` given mod N (the action factors through `SL₂(Z/NZ)`).
pub fn form_slash_mod(f: &FormExpr, g: &ResMat) -> Result<FormExpr> {
    f.map_symbols(|s| eisenstein::slash_symbol(s, g))
}

/// `f^{σ_λ}`: `σ_λ` on every coefficient and `(c₁, c₂) ↦ (c₁, λc₂)` on every symbol.
pub fn form_galois(f: &FormExpr, lambda: i64) -> Result<FormExpr> {
    arith::unit(lambda, f.level)?;
    let mut out = FormExpr::zero(f.level, f.weight);
    for (m, c) in &f.terms {
        let m = m.iter().map(|s| eisenstein::galois_symbol(s, lambda)).collect::<Result<Monomial>>()?;
        out.add_term(c.galois(lambda)?, m)?;
    }
    Ok(out)
}

/// The q-expansion of `f` in `q^{1/N}`, exponents `0 <= n < prec`.
pub fn expand(f: &FormExpr, prec: usize) -> Result<QExpansion> {
    if prec == 0 {
        return Err(Error::InvalidPrecision("need at least one term".into()));
    }
    let n = f.level;
    let mut cache: HashMap<EisSymbol, QExpansion> = HashMap::new();
    let mut total = QExpansion::zero(n, n, 0, prec as i64)?;
    for (m, c) in &f.terms {
        let mut prod: Option<QExpansion> = None;
        for s in m {
            if !cache.contains_key(s) {
                cache.insert(*s, eisenstein::eisenstein_qexp(s, prec)?);
            }
            let e = &cache[s];
            prod = Some(match prod {
                None => e.clone(),
                Some(p) => p.checked_mul(e)?,
            });
        }
        let term = prod.expect("monomials are nonempty").scale(c)?;
        total = total.checked_add(&term)?;
    }
    Ok(total)
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    #[serde(rename = "N")]
    pub level: u64,
    pub weight: u32,
    pub g: UniMat,
    pub lambda: u64,
    pub g_lambda: UniMat,
    pub equal: bool,
    pub certified_range: [i64; 2],
    pub first_difference: Option<CoefficientDifference>,
    pub lhs: QExpansion,
    pub rhs: QExpansion,
}

/// Compares `(f|g)^σ` (slash, expand, then `σ_λ` on coefficients) with
/// `f^σ | g_λ` (Galois on the form, then slash by a lift of `g_λ`, then expand).
pub fn verify_theorem(f: &FormExpr, g: &UniMat, lambda: i64, prec: usize) -> Result<TheoremReport> {
    let g_lambda = modgroup::g_lambda(g, f.level, lambda)?;
    verify_theorem_with_lift(f, g, lambda, &g_lambda, prec)
}

/// As [`verify_theorem`] with a caller-chosen lift of `g_λ`; fails with an error if
/// `g_lambda` is not such a lift.
pub fn verify_theorem_with_lift(
    f: &FormExpr,
    g: &UniMat,
    lambda: i64,
    g_lambda: &UniMat,
    prec: usize,
) -> Result<TheoremReport> {
    let n = f.level;
    let l = arith::unit(lambda, n)?;
    let target = modgroup::theorem_target(&modgroup::reduce_mod(g, n), lambda)?;
    if modgroup::reduce_mod(g_lambda, n) != target {
        return Err(Error::Malformed(format!("{g_lambda} does not reduce to {target}")));
    }
    let lhs = expand(&form_slash(f, g), prec)?.galois(lambda)?;
    let rhs = expand(&form_slash(&form_galois(f, lambda)?, g_lambda), prec)?;
    let cmp = lhs.compare(&rhs)?;
    Ok(TheoremReport {
        level: n,
        weight: f.weight,
        g: g.clone(),
        lambda: l,
        g_lambda: g_lambda.clone(),
        equal: cmp.equal,
        certified_range: cmp.certified_range,
        first_difference: cmp.first_difference,
        lhs,
        rhs,
    })
}

/// Multiplies `f` by the lcm of the denominators of its expansion up to `prec`,
/// so that the expansion lies in `Z[ζ_N]`.
pub fn clear_denominators(f: &FormExpr, prec: usize) -> Result<FormExpr> {
    let den = expand(f, prec)?.denominator();
    f.scale(&CycElement::from_rational(f.level, Rational::from_integer(den)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemarkReport {
    #[serde(rename = "N")]
    pub level: u64,
    pub g: UniMat,
    pub prec: usize,
    /// Primes dividing a denominator of the expansion of `f|g`.
    pub support: Vec<u64>,
    /// Primes in `support` that do not divide N.
    pub violating: Vec<u64>,
    pub holds: bool,
}

/// For `f` with expansion in `Z[ζ_N]`, checks that every denominator of `f|g`
/// is supported on primes dividing N.
pub fn remark_check(f: &FormExpr, g: &UniMat, prec: usize) -> Result<RemarkReport> {
    let e = expand(f, prec)?;
    if !e.is_integral() {
        return Err(Error::NotIntegral(format!(
            "expansion has denominator {}; clear denominators first",
            e.denominator()
        )));
    }
    let support: Vec<u64> = expand(&form_slash(f, g), prec)?.denominator_support().into_iter().collect();
    let violating: Vec<u64> = support.iter().copied().filter(|p| f.level % p != 0).collect();
    Ok(RemarkReport { level: f.level, g: g.clone(), prec, holds: violating.is_empty(), support, violating })
}

/// Test corpora and sweeps.
pub mod corpus {
    use super::*;

    /// `S`, `T` and three fixed pseudorandom matrices.
    pub fn test_matrices() -> Vec<UniMat> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0001);
        let mut out = vec![UniMat::s(), UniMat::t()];
        out.extend((0..3).map(|_| modgroup::random_unimat(&mut rng, 30)));
        out
    }

    /// Every symbol of level `n` with weight in `weights`.
    pub fn single_symbols(n: u64, weights: &[u32]) -> Vec<FormExpr> {
        let mut out = Vec::new();
        for &k in weights {
            for c1 in 0..n as i64 {
                for c2 in 0..n as i64 {
                    out.push(FormExpr::symbol(EisSymbol::new(n, k, c1, c2).expect("k >= 3")));
                }
            }
        }
        out
    }

    /// A nonzero element of `Z[ζ_N]` with small coefficients.
    pub fn random_cyc<R: Rng + ?Sized>(rng: &mut R, n: u64, bound: i64) -> CycElement {
        loop {
            let d = crate::cyclotomic::field_degree(n);
            let coeffs = (0..d).map(|_| Rational::from_integer(rng.gen_range(-bound..=bound).into())).collect();
            let c = CycElement::from_coeffs(n, coeffs).expect("length matches");
            if !c.is_zero() {
                return c;
            }
        }
    }

    pub fn random_symbol<R: Rng + ?Sized>(rng: &mut R, n: u64, k: u32) -> EisSymbol {
        EisSymbol::new(n, k, rng.gen_range(0..n as i64), rng.gen_range(0..n as i64)).expect("k >= 3")
    }

    /// Two terms, each a cyclotomic coefficient times a product of two symbols,
    /// of total weight 6, 7 or 8.
    pub fn random_product_form<R: Rng + ?Sized>(rng: &mut R, n: u64) -> FormExpr {
        loop {
            let k: u32 = rng.gen_range(6..=8);
            let mut f = FormExpr::zero(n, k);
            for _ in 0..2 {
                let (k1, k2) = match k {
                    6 => (3, 3),
                    7 => (3, 4),
                    _ if rng.gen_bool(0.5) => (4, 4),
                    _ => (3, 5),
                };
                let m = vec![random_symbol(rng, n, k1), random_symbol(rng, n, k2)];
                f.add_term(random_cyc(rng, n, 3), m).expect("consistent weights");
            }
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// All single symbols of the given weights followed by `random_forms` product
    /// forms drawn from a ChaCha8 stream seeded by `seed` and `n`.
    pub fn theorem_corpus(n: u64, weights: &[u32], random_forms: usize, seed: u64) -> Vec<FormExpr> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ n.rotate_left(32));
        let mut out = single_symbols(n, weights);
        out.extend((0..random_forms).map(|_| random_product_form(&mut rng, n)));
        out
    }

    #[derive(Clone, Debug, Serialize)]
    pub struct SweepFailure {
        #[serde(rename = "N")]
        pub level: u64,
        pub form: String,
        pub g: UniMat,
        pub lambda: u64,
        pub g_lambda: UniMat,
        pub certified_range: [i64; 2],
        pub first_difference: Option<CoefficientDifference>,
    }

    #[derive(Clone, Debug, Serialize)]
    pub struct SweepReport {
        pub checked: usize,
        pub prec: usize,
        pub failures: Vec<SweepFailure>,
    }

    /// Runs [`verify_theorem`] on every `(form, g, λ)` with `λ` a unit mod N.
    /// A case fails if the series differ or the comparison does not cover
    /// `[0, prec)`. Results are collected in input order.
    pub fn sweep(forms: &[FormExpr], matrices: &[UniMat], prec: usize) -> Result<SweepReport> {
        let cases: Vec<(&FormExpr, &UniMat, u64)> = forms
            .iter()
            .flat_map(|f| {
                matrices
                    .iter()
                    .flat_map(move |g| arith::units(f.level()).into_iter().map(move |l| (f, g, l)))
            })
            .collect();
        let outcomes = cases
            .par_iter()
            .map(|(f, g, l)| {
                let r = verify_theorem(f, g, *l as i64, prec)?;
                let ok = r.equal && r.certified_range == [0, prec as i64];
                Ok((!ok).then(|| SweepFailure {
                    level: r.level,
                    form: f.to_string(),
                    g: r.g,
                    lambda: r.lambda,
                    g_lambda: r.g_lambda,
                    certified_range: r.certified_range,
                    first_difference: r.first_difference,
                }))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SweepReport { checked: cases.len(), prec, failures: outcomes.into_iter().flatten().collect() })
    }
}
