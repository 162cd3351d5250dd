use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shimura_kit::cyclotomic::CycElement;
use shimura_kit::eisenstein::{self, EisSymbol};
use shimura_kit::qexpansion::series_galois;
use shimura_kit::shimura::{corpus, expand, form_galois, form_slash};
use shimura_kit::{FormExpr, UniMat};

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()) + 1e-12
}

fn weight7_form(seed: u64) -> FormExpr {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = FormExpr::zero(4, 7);
    for _ in 0..3 {
        let m = vec![corpus::random_symbol(&mut rng, 4, 3), corpus::random_symbol(&mut rng, 4, 4)];
        f.add_term(corpus::random_cyc(&mut rng, 4, 3), m).unwrap();
    }
    assert_eq!(f.len(), 3);
    f
}

#[test]
fn slash_matches_the_analytic_definition() {
    // (f|g)(τ) = (cτ + d)^{-k} f(gτ), both sides from exact expansions evaluated numerically.
    let tau = Complex64::new(0.0, 2.0);
    let matrices = [
        UniMat::s(),
        UniMat::from_i64(1, 1, 1, 2).unwrap(),
        UniMat::from_i64(2, -1, 1, 0).unwrap(),
        UniMat::from_i64(1, 0, -2, 1).unwrap(),
    ];
    for seed in 0..3 {
        let f = weight7_form(seed);
        for g in &matrices {
            let [a, b, c, d] = g.to_f64();
            let gt = (tau * a + b) / (tau * c + d);
            let n_f = eisenstein::series_terms_for(4, 8, gt);
            let rhs = expand(&f, n_f).unwrap().eval_numeric(gt, n_f).unwrap() * (tau * c + d).powi(-7);
            let n_l = eisenstein::series_terms_for(4, 8, tau);
            let lhs = expand(&form_slash(&f, g), n_l).unwrap().eval_numeric(tau, n_l).unwrap();
            assert!(close(lhs, rhs, 1e-6), "g = {g}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn symbol_slash_matches_the_lattice_sum() {
    // Ẽ^v|g at τ against the lattice sum of Ẽ^v at gτ; no series involved on the right.
    let tau = Complex64::new(0.1, 1.3);
    for (n, k) in [(3u64, 3u32), (4, 4), (5, 3), (6, 5)] {
        for g in [UniMat::s(), UniMat::from_i64(1, -1, 1, 0).unwrap(), UniMat::from_i64(2, 1, 1, 1).unwrap()] {
            let [a, b, c, d] = g.to_f64();
            let gt = (tau * a + b) / (tau * c + d);
            let sym = EisSymbol::new(n, k, 1, 2).unwrap();
            let rhs = eisenstein::lattice_sum_numeric(&sym, gt, 400).unwrap() * (tau * c + d).powi(-(k as i32));
            let terms = eisenstein::series_terms_for(n, k, tau);
            let f = form_slash(&FormExpr::symbol(sym), &g);
            let lhs = expand(&f, terms).unwrap().eval_numeric(tau, terms).unwrap();
            assert!(close(lhs, rhs, 1e-6), "N={n} k={k} g={g}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn two_galois_paths_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [3u64, 4, 5, 7, 8] {
        for _ in 0..3 {
            let f = corpus::random_product_form(&mut rng, n);
            let e = expand(&f, 40).unwrap();
            for l in shimura_kit::arith::units(n) {
                let l = l as i64;
                assert_eq!(expand(&form_galois(&f, l).unwrap(), 40).unwrap(), series_galois(l, &e).unwrap());
            }
        }
    }
}

#[test]
fn products_expand_to_series_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [2u64, 5, 6] {
        let f = corpus::random_product_form(&mut rng, n);
        let g = FormExpr::symbol(corpus::random_symbol(&mut rng, n, 3));
        let both = expand(&f.checked_mul(&g).unwrap(), 30).unwrap();
        let apart = expand(&f, 30).unwrap().checked_mul(&expand(&g, 30).unwrap()).unwrap();
        assert_eq!(both, apart);
    }
}

#[test]
fn field_operations_match_complex_embedding() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=20u64 {
        let x = corpus::random_cyc(&mut rng, n, 5);
        let y = corpus::random_cyc(&mut rng, n, 5);
        let (cx, cy) = (x.to_complex(), y.to_complex());
        assert!(close((&x * &y).to_complex(), cx * cy, 1e-12));
        assert!(close(x.inverse().unwrap().to_complex(), cx.inv(), 1e-10));
        for l in shimura_kit::arith::units(n) {
            // σ_λ on the power basis: Σ c_j ζ^{jλ}
            let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * l as f64 / n as f64);
            let expect: Complex64 = x
                .coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| z.powu(j as u32) * num_traits::ToPrimitive::to_f64(c).unwrap())
                .sum();
            assert!(close(x.galois(l as i64).unwrap().to_complex(), expect, 1e-10));
        }
    }
    // (1 + ζ₅)⁻¹ = -(ζ₅ + ζ₅³), from ζ⁵ = 1 and Φ₅(ζ) = 0
    let one_plus = &CycElement::one(5) + &CycElement::zeta(5);
    let expect = -(&CycElement::zeta(5) + &CycElement::zeta_pow(5, 3));
    assert_eq!(one_plus.inverse().unwrap(), expect);
}
