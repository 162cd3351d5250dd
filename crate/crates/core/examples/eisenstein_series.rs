//! q-expansions of normalized Eisenstein series, checked against the lattice sum.
//!
//! Usage: cargo run --example eisenstein_series -- [N k c1 c2]

use num_complex::Complex64;
use shimura_kit::eisenstein::{eisenstein_qexp, oracle_check, EisSymbol};

fn main() -> shimura_kit::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, k, c1, c2) = match args[..] {
        [n, k, c1, c2] => (n as u64, k as u32, c1, c2),
        _ => (5, 3, 1, 2),
    };
    let sym = EisSymbol::new(n, k, c1, c2)?;
    let series = eisenstein_qexp(&sym, 12)?;
    println!("{sym}, coefficients of q^(j/{n}):");
    for (j, c) in series.coeffs().iter().enumerate() {
        println!("  {j:>2}: {c}");
    }

    // level one, weight four: (1/120)(1 + 240 Σ σ₃(n) qⁿ)
    let e4 = eisenstein_qexp(&EisSymbol::new(1, 4, 0, 0)?, 6)?;
    let shown: Vec<String> = e4.coeffs().iter().map(|c| c.to_string()).collect();
    println!("Ẽ_4 at level 1: {}", shown.join(", "));

    for tau in [Complex64::new(0.0, 1.0), Complex64::new(1.0 / 3.0, 1.0)] {
        let r = oracle_check(&sym, tau, 400, 1e-6)?;
        println!(
            "τ = {tau}: series {:.12} {:+.12}i, lattice {:.12} {:+.12}i, relative error {:.1e}",
            r.series[0], r.series[1], r.lattice[0], r.lattice[1], r.rel_error
        );
    }
    Ok(())
}
