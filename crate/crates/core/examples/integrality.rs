//! Denominators of slashed forms: after clearing denominators, f|g only picks up
//! primes dividing the level.

use rand::SeedableRng;
use shimura_kit::modgroup::random_unimat;
use shimura_kit::shimura::{clear_denominators, corpus, expand, remark_check};
use shimura_kit::UniMat;

fn main() -> shimura_kit::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    for n in [4u64, 6, 10] {
        let raw = corpus::random_product_form(&mut rng, n);
        println!("N = {n}: f = {raw}");
        println!("  denominator primes of f itself: {:?}", expand(&raw, 30)?.denominator_support());
        let f = clear_denominators(&raw, 30)?;
        let mut mats = vec![UniMat::s(), &UniMat::t() * &UniMat::s()];
        mats.extend((0..3).map(|_| random_unimat(&mut rng, 20)));
        for g in &mats {
            let r = remark_check(&f, g, 30)?;
            println!("  g = {g}: primes in f|g {:?}, holds = {}", r.support, r.holds);
        }
    }
    Ok(())
}
