//! Serializing q-expansions and applying σ_λ to a series read back from JSON.

use shimura_kit::eisenstein::{eisenstein_qexp, EisSymbol};
use shimura_kit::QExpansion;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = eisenstein_qexp(&EisSymbol::new(3, 3, 1, 1)?, 4)?;
    let text = serde_json::to_string(&e)?;
    println!("{text}");
    let back: QExpansion = serde_json::from_str(&text)?;
    assert_eq!(back, e);
    let conj = back.galois(2)?;
    println!("σ_2: {}", serde_json::to_string(&conj)?);
    println!("σ_2 equals Ẽ_3^(1,2): {}", conj == eisenstein_qexp(&EisSymbol::new(3, 3, 1, 2)?, 4)?);
    let square = e.checked_mul(&e)?;
    println!("square known up to q^({}/{})", square.prec(), square.width());
    Ok(())
}
