//! Randomized law checks shared by the property suite and the acceptance run.
#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shimura_kit::arith;
use shimura_kit::cyclotomic::{field_degree, CycElement};
use shimura_kit::eisenstein::{slash_symbol, EisSymbol};
use shimura_kit::modgroup::{self, random_unimat, UniMat};
use shimura_kit::shimura::{corpus, expand, form_galois, form_slash};
use shimura_kit::{FormExpr, QExpansion, Rational};

pub const CASES: u32 = 1000;

/// Runs `test` on `cases` deterministic draws from `strategy`.
pub fn check<S>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<u32, String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
{
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    let mut runner = TestRunner::new_with_rng(config, rng);
    runner.run(&strategy, test).map(|_| cases).map_err(|e| e.to_string())
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn element(n: u64) -> impl Strategy<Value = CycElement> {
    vec(rational(), field_degree(n)).prop_map(move |c| CycElement::from_coeffs(n, c).unwrap())
}

pub fn unit(n: u64) -> impl Strategy<Value = u64> {
    let us = arith::units(n);
    (0..us.len()).prop_map(move |i| us[i])
}

/// `(N, x, y, z, λ, μ)` with `N <= 15`.
pub fn field_case() -> impl Strategy<Value = (u64, CycElement, CycElement, CycElement, u64, u64)> {
    (1u64..=15).prop_flat_map(|n| (Just(n), element(n), element(n), element(n), unit(n), unit(n)))
}

pub fn unimat() -> impl Strategy<Value = UniMat> {
    any::<u64>().prop_map(|s| random_unimat(&mut ChaCha8Rng::seed_from_u64(s), 40))
}

pub fn symbol(n: u64) -> impl Strategy<Value = EisSymbol> {
    (3u32..=5, 0..n as i64, 0..n as i64).prop_map(move |(k, a, b)| EisSymbol::new(n, k, a, b).unwrap())
}

pub fn product_form(n: u64) -> impl Strategy<Value = FormExpr> {
    any::<u64>().prop_map(move |s| corpus::random_product_form(&mut ChaCha8Rng::seed_from_u64(s), n))
}

/// A series at level `n` in `q^{1/w}` with a few small coefficients.
pub fn series(n: u64) -> impl Strategy<Value = QExpansion> {
    (prop::sample::select(vec![1u64, 2, 3, 6]), -2i64..=1, 1i64..=6).prop_flat_map(move |(w, lo, len)| {
        vec(element(n), len as usize).prop_map(move |c| QExpansion::new(n, w, lo, lo + len, c).unwrap())
    })
}

/// Equal as truncated series: same coefficients and the same precision in `q`.
pub fn same_series(x: &QExpansion, y: &QExpansion) -> bool {
    x.compare(y).unwrap().equal && x.prec() * y.width() as i64 == y.prec() * x.width() as i64
}

pub fn galois_group_law() -> Result<u32, String> {
    check(CASES, field_case(), |(n, x, _, _, l, m)| {
        let lm = (l * m % n) as i64;
        prop_assert_eq!(x.galois(m as i64).unwrap().galois(l as i64).unwrap(), x.galois(lm).unwrap());
        prop_assert_eq!(x.galois(1).unwrap(), x);
        Ok(())
    })?;
    check(CASES, (2u64..=8).prop_flat_map(|n| (product_form(n), unit(n), unit(n))), |(f, l, m)| {
        let n = f.level();
        let twice = form_galois(&form_galois(&f, m as i64).unwrap(), l as i64).unwrap();
        prop_assert_eq!(twice, form_galois(&f, (l * m % n) as i64).unwrap());
        Ok(())
    })
    .map(|c| 2 * c)
}

pub fn galois_ring_hom() -> Result<u32, String> {
    check(CASES, field_case(), |(n, x, y, _, l, _)| {
        let l = l as i64;
        let s = |a: &CycElement| a.galois(l).unwrap();
        prop_assert_eq!(s(&(&x + &y)), &s(&x) + &s(&y));
        prop_assert_eq!(s(&(&x * &y)), &s(&x) * &s(&y));
        prop_assert_eq!(s(&CycElement::one(n)), CycElement::one(n));
        prop_assert_eq!(s(&CycElement::zeta(n)), CycElement::zeta_pow(n, l));
        Ok(())
    })?;
    check(CASES, (1u64..=6).prop_flat_map(|n| (series(n), series(n), unit(n))), |(f, g, l)| {
        let l = l as i64;
        let lhs = f.checked_mul(&g).unwrap().galois(l).unwrap();
        let rhs = f.galois(l).unwrap().checked_mul(&g.galois(l).unwrap()).unwrap();
        prop_assert!(same_series(&lhs, &rhs));
        Ok(())
    })
    .map(|c| 2 * c)
}

pub fn slash_right_action() -> Result<u32, String> {
    check(CASES, (1u64..=12).prop_flat_map(|n| (symbol(n), unimat(), unimat())), |(v, g1, g2)| {
        let n = v.level();
        let (r1, r2) = (modgroup::reduce_mod(&g1, n), modgroup::reduce_mod(&g2, n));
        let twice = slash_symbol(&slash_symbol(&v, &r1).unwrap(), &r2).unwrap();
        prop_assert_eq!(twice, slash_symbol(&v, &modgroup::reduce_mod(&(&g1 * &g2), n)).unwrap());
        Ok(())
    })?;
    check(CASES, (2u64..=6).prop_flat_map(|n| (product_form(n), unimat(), unimat())), |(f, g1, g2)| {
        let lhs = expand(&form_slash(&f, &(&g1 * &g2)), 6).unwrap();
        let rhs = expand(&form_slash(&form_slash(&f, &g1), &g2), 6).unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
    .map(|c| 2 * c)
}

pub fn series_ring_axioms() -> Result<u32, String> {
    check(CASES, (1u64..=6).prop_flat_map(|n| (series(n), series(n), series(n))), |(a, b, c)| {
        let add = |x: &QExpansion, y: &QExpansion| x.checked_add(y).unwrap();
        let mul = |x: &QExpansion, y: &QExpansion| x.checked_mul(y).unwrap();
        prop_assert!(same_series(&add(&a, &b), &add(&b, &a)));
        prop_assert!(same_series(&mul(&a, &b), &mul(&b, &a)));
        prop_assert!(same_series(&add(&add(&a, &b), &c), &add(&a, &add(&b, &c))));
        prop_assert!(same_series(&mul(&mul(&a, &b), &c), &mul(&a, &mul(&b, &c))));
        prop_assert!(same_series(&mul(&a, &add(&b, &c)), &add(&mul(&a, &b), &mul(&a, &c))));
        let one = QExpansion::one(a.level(), 1, a.prec().max(1) + 8).unwrap();
        prop_assert!(same_series(&mul(&a, &one), &a));
        prop_assert!(add(&a, &-&a).is_zero());
        Ok(())
    })
}
