//! Exact check of (f|g)^σ = f^σ | g_λ on Eisenstein series and their products.

use shimura_kit::eisenstein::EisSymbol;
use shimura_kit::shimura::{corpus, verify_theorem, DEFAULT_PREC};
use shimura_kit::{CycElement, FormExpr, UniMat};

fn main() -> shimura_kit::Result<()> {
    let f = FormExpr::symbol(EisSymbol::new(5, 3, 1, 0)?);
    let r = verify_theorem(&f, &UniMat::s(), 2, DEFAULT_PREC)?;
    println!("f = {f}, g = S, λ = 2: g_λ = {}, equal = {}, range {:?}", r.g_lambda, r.equal, r.certified_range);

    // a two-term form of weight 7 at level 4
    let n = 4;
    let mut g = FormExpr::zero(n, 7);
    g.add_term(CycElement::zeta(n), vec![EisSymbol::new(n, 3, 1, 0)?, EisSymbol::new(n, 4, 0, 1)?])?;
    g.add_term(CycElement::from_integer(n, -2), vec![EisSymbol::new(n, 3, 1, 3)?, EisSymbol::new(n, 4, 2, 1)?])?;
    let m = UniMat::from_i64(3, 2, 4, 3)?;
    for l in [1, 3] {
        let r = verify_theorem(&g, &m, l, 30)?;
        println!("f = {g}, g = {m}, λ = {l}: equal = {}", r.equal);
    }

    let forms = corpus::theorem_corpus(3, &[3, 4], 3, 1);
    let r = corpus::sweep(&forms, &corpus::test_matrices(), 20)?;
    println!("sweep at N = 3: {} cases, {} failures", r.checked, r.failures.len());
    Ok(())
}
