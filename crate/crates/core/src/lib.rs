//! Exact q-expansions of level-N modular forms over cyclotomic fields, with the
//! `SL₂(Z)` slash action, the coefficient-wise Galois action, and checkers for
//! how the two actions interact.
//!
//! - [`cyclotomic`]: the field `Q(ζ_N)`, Galois automorphisms, finite Fourier transform
//! - [`qexpansion`]: truncated series in `q^{1/w}` with cyclotomic coefficients
//! - [`modgroup`]: `SL₂(Z)`, reduction mod N, lifting, and the `g ↦ g_λ` construction
//! - [`levelstruct`]: finite model of level-N structures and the commutation diagram
//! - [`eisenstein`]: Eisenstein series of weight `k >= 3`, Bernoulli numbers, lattice-sum oracle
//! - [`shimura`]: symbolic forms, both actions on them, and the exact verifier
//! - [`cli`]: JSON command-line front end

pub mod arith;
pub mod cli;
pub mod cyclotomic;
pub mod eisenstein;
pub mod error;
pub mod levelstruct;
pub mod modgroup;
mod poly;
pub mod qexpansion;
pub mod shimura;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub use cyclotomic::{CycElement, CycMatrix};
pub use eisenstein::EisSymbol;
pub use error::{Error, Result};
pub use levelstruct::LevelStructure;
pub use modgroup::{ResMat, UniMat};
pub use qexpansion::QExpansion;
pub use shimura::FormExpr;
