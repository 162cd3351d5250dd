//! Reduction and lifting between SL₂(Z) and SL₂(Z/NZ), and the twisted matrix g_λ.

use shimura_kit::modgroup::{g_lambda, other_lift, reduce_mod, sl2_lift, sl2_mod, theorem_target, ResMat};
use shimura_kit::UniMat;

fn main() -> shimura_kit::Result<()> {
    let n = 5;
    let m = ResMat::new(n, 0, 3, 3, 0)?;
    let g = sl2_lift(&m);
    println!("lift of {m}: {g} (det {})", g.det());
    println!("another lift: {}", other_lift(&g, n));

    let s = UniMat::s();
    for l in [1, 2, 3, 4] {
        let t = theorem_target(&reduce_mod(&s, n), l)?;
        println!("λ = {l}: S twisted is {t}, lifted to {}", g_lambda(&s, n, l)?);
    }

    for n in 2..=8 {
        println!("|SL₂(Z/{n}Z)| = {}", sl2_mod(n).len());
    }
    Ok(())
}
