//! A finite model of level-N structures.
//!
//! A level structure is recorded through its `α`-coordinates: the map
//! `α(a, b) = (a, b) · mat` on row vectors of `(Z/NZ)²`. The pair
//! `(ζ^m, n) ∈ μ_N × Z/NZ` corresponds to the row vector `(n, m)` under
//! `ψ(a, b) = (ζ^b, a)`.
//!
//! The pairing on `(Z/NZ)²` is `e(x, y) = ζ^{x₂y₁ - x₁y₂}`. With this
//! orientation the normalization `e(β(ζ, 0), β(1, 1)) = ζ` reads
//! `det(mat) ≡ 1`. After transport along `σ_λ` the pairing lands on `ζ^λ`
//! instead, which is tracked by `twist`; the invariant is `det(mat) ≡ twist`.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::modgroup::{self, ResMat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LevelStructure {
    #[serde(rename = "N")]
    modulus: u64,
    mat: [[u64; 2]; 2],
    twist: u64,
}

/// Exponent `x₂y₁ - x₁y₂ mod N` of the pairing `e(x, y)`.
pub fn pairing_exponent(n: u64, x: (u64, u64), y: (u64, u64)) -> u64 {
    let n128 = n as i128;
    let v = x.1 as i128 * y.0 as i128 - x.0 as i128 * y.1 as i128;
    v.rem_euclid(n128) as u64
}

/// `ψ(a, b) = (ζ^b, a)`, returned as `(m, n)` meaning `(ζ^m, n)`.
pub fn psi(a: u64, b: u64) -> (u64, u64) {
    (b, a)
}

pub fn psi_inv(m: u64, n: u64) -> (u64, u64) {
    (n, m)
}

/// The coordinate change of a slashed level structure:
/// `β'(ζ^m, n) = β(ζ^{md + nb}, mc + na)` for `g = (a b; c d)`.
pub fn slashed_beta_coords(g: &ResMat, m: u64, n: u64) -> (u64, u64) {
    let [a, b, c, d] = g.entries().map(|x| x as u128);
    let modulus = g.modulus() as u128;
    let (m, n) = (m as u128, n as u128);
    (((m * d + n * b) % modulus) as u64, ((m * c + n * a) % modulus) as u64)
}

impl LevelStructure {
    pub fn new(modulus: u64, mat: [[u64; 2]; 2], twist: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroLevel);
        }
        let twist = arith::unit(twist as i64, modulus)?;
        let mat = mat.map(|r| r.map(|x| x % modulus));
        let s = LevelStructure { modulus, mat, twist };
        let det = s.det();
        if det != twist {
            return Err(Error::Malformed(format!("det {det} does not match twist {twist} mod {modulus}")));
        }
        Ok(s)
    }

    /// The structure with `α = id`, twist 1 (the canonical one on the Tate curve).
    pub fn identity(modulus: u64) -> Self {
        Self::new(modulus, [[1, 0], [0, 1]], 1).unwrap()
    }

    pub fn from_resmat(m: &ResMat) -> Self {
        let [a, b, c, d] = m.entries();
        Self::new(m.modulus(), [[a, b], [c, d]], 1).expect("SL₂ matrix has det 1")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn mat(&self) -> [[u64; 2]; 2] {
        self.mat
    }

    pub fn twist(&self) -> u64 {
        self.twist
    }

    fn det(&self) -> u64 {
        pairing_exponent(self.modulus, (self.mat[1][0], self.mat[1][1]), (self.mat[0][0], self.mat[0][1]))
    }

    /// `α(a, b) = (a, b) · mat`.
    pub fn alpha(&self, a: u64, b: u64) -> (u64, u64) {
        let n = self.modulus as u128;
        let (a, b) = (a as u128, b as u128);
        let [[p, q], [r, s]] = self.mat.map(|row| row.map(|x| x as u128));
        (((a * p + b * r) % n) as u64, ((a * q + b * s) % n) as u64)
    }

    /// `β(ζ^m, n) = α(ψ⁻¹(ζ^m, n))`.
    pub fn beta(&self, m: u64, n: u64) -> (u64, u64) {
        let (a, b) = psi_inv(m, n);
        self.alpha(a, b)
    }

    /// Exponent of `e(β(ζ, 0), β(1, 1))`; always equals `twist`.
    pub fn normalization_exponent(&self) -> u64 {
        pairing_exponent(self.modulus, self.beta(1, 0), self.beta(0, 1))
    }

    fn left_mul(&self, m: [[u64; 2]; 2]) -> [[u64; 2]; 2] {
        let n = self.modulus as u128;
        let mut out = [[0u64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                let v = m[i][0] as u128 * self.mat[0][j] as u128 + m[i][1] as u128 * self.mat[1][j] as u128;
                *x = (v % n) as u64;
            }
        }
        out
    }
}

/// Reads off the slashed level structure of `β = id` from its `(ζ^m, n)` description,
/// pulled back through `ψ` to row-vector coordinates.
pub fn from_beta_coords(g: &ResMat) -> LevelStructure {
    let image = |a: u64, b: u64| {
        let (m, n) = psi(a, b);
        let (m2, n2) = slashed_beta_coords(g, m, n);
        psi_inv(m2, n2)
    };
    let (r0, r1) = (image(1, 0), image(0, 1));
    LevelStructure::new(g.modulus(), [[r0.0, r0.1], [r1.0, r1.1]], 1)
        .expect("slashing preserves the pairing normalization")
}

/// `(g · α)(a, b) = α((a, b) g)`, i.e. `mat ↦ g · mat`.
pub fn act_g(g: &ResMat, alpha: &LevelStructure) -> Result<LevelStructure> {
    if g.modulus() != alpha.modulus {
        return Err(Error::ModulusMismatch { left: g.modulus(), right: alpha.modulus });
    }
    let [a, b, c, d] = g.entries();
    Ok(LevelStructure { mat: alpha.left_mul([[a, b], [c, d]]), ..*alpha })
}

/// Transport along `σ_λ`: `α^σ(a, b) = α(a, λb)`, i.e. `mat ↦ diag(1, λ) · mat`,
/// and the pairing value moves from `ζ^t` to `ζ^{tλ}`.
pub fn sigma_twist(lambda: i64, alpha: &LevelStructure) -> Result<LevelStructure> {
    let n = alpha.modulus;
    let l = arith::unit(lambda, n)?;
    let mat = alpha.left_mul([[1 % n, 0], [0, l]]);
    let twist = (alpha.twist as u128 * l as u128 % n as u128) as u64;
    let out = LevelStructure { modulus: n, mat, twist };
    debug_assert_eq!(out.det(), out.twist);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutationWitness {
    pub alpha: LevelStructure,
    pub lhs: LevelStructure,
    pub rhs: LevelStructure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutationReport {
    #[serde(rename = "N")]
    pub modulus: u64,
    pub g: [u64; 4],
    pub lambda: u64,
    pub g_lambda: [u64; 4],
    pub holds: bool,
    pub alphas_checked: usize,
    pub witness: Option<CommutationWitness>,
}

/// Checks `g · (α^σ) = (g_λ · α)^σ` for `α = id` and every `α` with twist 1,
/// where `g_λ ≡ (a, λb; λ⁻¹c, d)`.
pub fn verify_commutation(g: &ResMat, lambda: i64) -> Result<CommutationReport> {
    let alphas: Vec<LevelStructure> = modgroup::sl2_mod(g.modulus()).iter().map(LevelStructure::from_resmat).collect();
    verify_commutation_over(g, lambda, &alphas)
}

/// As [`verify_commutation`], over a caller-supplied set of level structures
/// (the identity structure is always checked first).
pub fn verify_commutation_over(g: &ResMat, lambda: i64, alphas: &[LevelStructure]) -> Result<CommutationReport> {
    let n = g.modulus();
    let l = arith::unit(lambda, n)?;
    let target = modgroup::theorem_target(g, lambda)?;
    let mut report = CommutationReport {
        modulus: n,
        g: g.entries(),
        lambda: l,
        g_lambda: target.entries(),
        holds: true,
        alphas_checked: 0,
        witness: None,
    };
    let identity = LevelStructure::identity(n);
    for alpha in std::iter::once(&identity).chain(alphas) {
        let lhs = act_g(g, &sigma_twist(lambda, alpha)?)?;
        let rhs = sigma_twist(lambda, &act_g(&target, alpha)?)?;
        report.alphas_checked += 1;
        if lhs != rhs {
            report.holds = false;
            report.witness = Some(CommutationWitness { alpha: *alpha, lhs, rhs });
            break;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramReport {
    /// Number of `(N, g, λ)` cases.
    pub checked: usize,
    pub failures: Vec<CommutationReport>,
}

/// Runs [`verify_commutation`] for every `N` in `levels`, every `g ∈ SL₂(Z/NZ)`
/// and every unit `λ`. Output order is deterministic.
pub fn verify_diagram(levels: impl IntoIterator<Item = u64>) -> Result<DiagramReport> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in levels {
        let group = modgroup::sl2_mod(n);
        let alphas: Vec<LevelStructure> = group.iter().map(LevelStructure::from_resmat).collect();
        let units = arith::units(n);
        let cases: Vec<(ResMat, u64)> =
            group.iter().flat_map(|g| units.iter().map(move |&l| (*g, l))).collect();
        let reports = cases
            .par_iter()
            .map(|(g, l)| verify_commutation_over(g, *l as i64, &alphas))
            .collect::<Result<Vec<_>>>()?;
        checked += reports.len();
        failures.extend(reports.into_iter().filter(|r| !r.holds));
    }
    Ok(DiagramReport { checked, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modgroup::{sl2_mod, UniMat};

    #[test]
    fn identity_structure() {
        let id = LevelStructure::identity(7);
        assert_eq!(id.normalization_exponent(), 1);
        assert_eq!(from_beta_coords(&ResMat::identity(7)), id);
        assert!(LevelStructure::new(5, [[1, 0], [0, 2]], 1).is_err());
        assert!(LevelStructure::new(6, [[1, 0], [0, 2]], 2).is_err());
        assert!(LevelStructure::new(5, [[1, 0], [0, 2]], 2).is_ok());
    }

    #[test]
    fn slashed_coordinates_are_right_multiplication() {
        // N = 3, g = T: (m, n) ↦ (md + nb, mc + na) = (m + n, n)
        let t = ResMat::new(3, 1, 1, 0, 1).unwrap();
        for m in 0..3 {
            for n in 0..3 {
                assert_eq!(slashed_beta_coords(&t, m, n), ((m + n) % 3, n));
            }
        }
        for n in [3u64, 4] {
            for g in sl2_mod(n) {
                let s = from_beta_coords(&g);
                for a in 0..n {
                    for b in 0..n {
                        let (m, k) = psi(a, b);
                        let expect = g.act_on_row(a, b);
                        assert_eq!(psi_inv(slashed_beta_coords(&g, m, k).0, slashed_beta_coords(&g, m, k).1), expect);
                        assert_eq!(s.alpha(a, b), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn eq4_matches_eq5() {
        for n in 2..=8 {
            for g in sl2_mod(n) {
                assert_eq!(from_beta_coords(&g), act_g(&g, &LevelStructure::identity(n)).unwrap());
            }
        }
    }

    #[test]
    fn act_g_examples() {
        let id = LevelStructure::identity(4);
        let s = modgroup::reduce_mod(&UniMat::s(), 4);
        assert_eq!(act_g(&ResMat::identity(4), &id).unwrap(), id);
        let out = act_g(&s, &id).unwrap();
        assert_eq!(out.mat(), [[0, 3], [1, 0]]);
        assert_eq!(out.twist(), 1);
        assert!(act_g(&ResMat::identity(5), &id).is_err());
    }

    #[test]
    fn act_g_is_a_left_action() {
        // (g₁ · (g₂ · α))(p) = (g₂ · α)(p g₁) = α(p g₁ g₂)
        let n = 5;
        let group = sl2_mod(n);
        let alpha = LevelStructure::from_resmat(&group[17]);
        let mut non_commuting = 0;
        for g1 in group.iter().step_by(5) {
            for g2 in group.iter().step_by(7) {
                let nested = act_g(g1, &act_g(g2, &alpha).unwrap()).unwrap();
                assert_eq!(nested, act_g(&g1.checked_mul(g2).unwrap(), &alpha).unwrap());
                if nested != act_g(&g2.checked_mul(g1).unwrap(), &alpha).unwrap() {
                    non_commuting += 1;
                }
            }
        }
        assert!(non_commuting > 0);
    }

    #[test]
    fn sigma_twist_examples() {
        let id = LevelStructure::identity(5);
        assert_eq!(sigma_twist(1, &id).unwrap(), id);
        let t = sigma_twist(2, &id).unwrap();
        assert_eq!((t.mat(), t.twist()), ([[1, 0], [0, 2]], 2));
        assert_eq!(t.normalization_exponent(), 2);
        assert!(sigma_twist(5, &id).is_err());
        for n in [5u64, 8, 9] {
            let alpha = LevelStructure::from_resmat(&sl2_mod(n)[3]);
            for l in arith::units(n) {
                for u in arith::units(n) {
                    let twice = sigma_twist(l as i64, &sigma_twist(u as i64, &alpha).unwrap()).unwrap();
                    assert_eq!(twice, sigma_twist((l * u % n) as i64, &alpha).unwrap());
                }
            }
        }
    }

    #[test]
    fn commutation_examples() {
        let r = verify_commutation(&ResMat::identity(7), 3).unwrap();
        assert!(r.holds);
        let s = modgroup::reduce_mod(&UniMat::s(), 5);
        let r = verify_commutation(&s, 2).unwrap();
        assert!(r.holds);
        assert_eq!(r.g_lambda, [0, 3, 3, 0]);
        assert_eq!(r.alphas_checked, 121);
    }

    #[test]
    fn untwisted_target_fails() {
        // Using g itself instead of g_λ on the right breaks the diagram when λ ≢ 1.
        let n = 5;
        let g = modgroup::reduce_mod(&UniMat::s(), n);
        let alpha = LevelStructure::identity(n);
        let lhs = act_g(&g, &sigma_twist(2, &alpha).unwrap()).unwrap();
        let wrong = sigma_twist(2, &act_g(&g, &alpha).unwrap()).unwrap();
        assert_ne!(lhs, wrong);
    }

    #[test]
    fn small_diagram_sweep() {
        let r = verify_diagram(2..=6).unwrap();
        assert!(r.failures.is_empty());
        let expected: usize = (2..=6u64).map(|n| sl2_mod(n).len() * arith::euler_phi(n)).sum();
        assert_eq!(r.checked, expected);
    }
}
