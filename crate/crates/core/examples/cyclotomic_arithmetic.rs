//! Exact arithmetic in Q(ζ_N): inverses, Galois conjugates and the finite
//! Fourier transform.

use shimura_kit::cyclotomic::{cyclotomic_polynomial, dft_matrices, CycElement};
use shimura_kit::{arith, Rational};

fn main() -> shimura_kit::Result<()> {
    let n = 5;
    let phi: Vec<String> = cyclotomic_polynomial(n).iter().map(|c| c.to_string()).collect();
    println!("Φ_{n} coefficients (constant first): {}", phi.join(" "));

    let x = &CycElement::one(n) + &CycElement::zeta(n);
    let inv = x.inverse()?;
    println!("1/({x}) = {inv}");
    println!("check: ({x})·({inv}) = {}", &x * &inv);

    let y = &CycElement::zeta_pow(n, 2) - &CycElement::from_rational(n, Rational::new(1.into(), 3.into()));
    for l in arith::units(n) {
        println!("σ_{l}({y}) = {}", y.galois(l as i64)?);
    }

    let m = 12;
    let (f, f_inv) = dft_matrices(m);
    println!("N = {m}: F·F_inv is the identity: {}", f.checked_mul(&f_inv)?.is_identity());
    println!("F_inv[1][1] = {}", f_inv.get(1, 1));
    Ok(())
}
