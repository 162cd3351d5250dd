//! The finite model of level-N structures: the action of SL₂(Z/NZ), the Galois
//! twist, and the exhaustive check that they commute up to g ↦ g_λ.

use shimura_kit::levelstruct::{act_g, sigma_twist, verify_commutation, verify_diagram, LevelStructure};
use shimura_kit::modgroup::ResMat;

fn main() -> shimura_kit::Result<()> {
    let n = 7;
    let alpha = LevelStructure::identity(n);
    let g = ResMat::new(n, 2, 1, 3, 2)?;
    let twisted = sigma_twist(3, &alpha)?;
    println!("α = {:?}, twist {}", alpha.mat(), alpha.twist());
    println!("α^σ₃ = {:?}, twist {}", twisted.mat(), twisted.twist());
    println!("g·α^σ₃ = {:?}", act_g(&g, &twisted)?.mat());

    let r = verify_commutation(&g, 3)?;
    println!("g = {:?}, λ = 3: g_λ = {:?}, {} structures, holds = {}", r.g, r.g_lambda, r.alphas_checked, r.holds);

    let report = verify_diagram(2..=9)?;
    println!("N = 2..9: {} cases, {} failures", report.checked, report.failures.len());
    Ok(())
}
