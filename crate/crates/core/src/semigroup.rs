//! Associated semigroups `P_t = R_{λ_t}` on the algebra, their generator
//! `Z = R_γ`, complete positivity, and the characterisations of maps of the
//! form `R_μ`.
//!
//! Statements quantified over all `μ ∈ 𝔹*` are checked on the dual basis,
//! which spans `𝔹*`; since every condition is linear in `μ` this is a
//! complete check rather than a sample.

use serde::Serialize;

use crate::bialgebra::{Bialgebra, LinearMap};
use crate::convolution::{exp_conv, r_map};
use crate::error::{Error, Result};
use crate::fdcstar::{Functional, PairIndex};
use crate::linalg::{self, c, CMat};

/// The semigroup on `𝔹` associated with `exp_⋆(tγ)`.
#[derive(Debug, Clone)]
pub struct AssociatedSemigroup {
    bialgebra: Bialgebra,
    gamma: Functional,
    generator: LinearMap,
}

impl AssociatedSemigroup {
    pub fn new(b: &Bialgebra, gamma: &Functional) -> Result<Self> {
        let generator = r_map(b, gamma)?;
        Ok(Self {
            bialgebra: b.clone(),
            gamma: gamma.clone(),
            generator,
        })
    }

    pub fn bialgebra(&self) -> &Bialgebra {
        &self.bialgebra
    }

    pub fn gamma(&self) -> &Functional {
        &self.gamma
    }

    /// `Z = R_γ`.
    pub fn generator(&self) -> &LinearMap {
        &self.generator
    }

    /// `P_t = R_{exp_⋆(tγ)}`.
    pub fn at(&self, t: f64, tol: f64) -> Result<LinearMap> {
        r_map(&self.bialgebra, &exp_conv(&self.bialgebra, &self.gamma, t, tol)?)
    }

    /// `P_t = exp(tZ)`.
    pub fn at_via_generator(&self, t: f64) -> Result<LinearMap> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::Precondition(format!("time must be finite and ≥ 0, got {t}")));
        }
        let alg = self.bialgebra.algebra();
        LinearMap::new(
            alg.clone(),
            alg.clone(),
            linalg::expm(&(self.generator.matrix() * c(t))),
        )
    }

    /// `‖R_{exp_⋆(tγ)} − exp(tZ)‖` (max-abs).
    pub fn route_residual(&self, t: f64, tol: f64) -> Result<f64> {
        Ok(self.at(t, tol)?.max_abs_diff(&self.at_via_generator(t)?))
    }
}

pub fn associated_semigroup(b: &Bialgebra, gamma: &Functional) -> Result<AssociatedSemigroup> {
    AssociatedSemigroup::new(b, gamma)
}

/// `ε∘T`.
pub fn recover_functional(b: &Bialgebra, t: &LinearMap) -> Result<Functional> {
    check_endomorphism(b, t)?;
    t.pull_back(b.epsilon())
}

fn check_endomorphism(b: &Bialgebra, t: &LinearMap) -> Result<()> {
    if t.source() != b.algebra() || t.target() != b.algebra() {
        return Err(Error::Shape("map must act on the bialgebra's algebra".into()));
    }
    Ok(())
}

/// `L_μ` for every dual-basis functional `μ = δ̂_k`, read directly off `Δ`:
/// `L_{δ̂_k}[l, j] = Δ[(k, l), j]`.
pub fn dual_basis_l_maps(b: &Bialgebra) -> Vec<CMat> {
    let alg = b.algebra();
    let dim = alg.dim();
    let p = PairIndex::new(alg, alg);
    let delta = b.delta().matrix();
    (0..dim)
        .map(|k| CMat::from_fn(dim, dim, |l, j| delta[(p.canonical(k, l), j)]))
        .collect()
}

fn commutator_residual(l: &CMat, t: &CMat) -> f64 {
    linalg::max_abs_diff(&(l * t), &(t * l))
}

/// `max_μ ‖L_μ T − T L_μ‖` over the dual basis and any extra `samples`.
pub fn check_commutation(b: &Bialgebra, t: &LinearMap, samples: &[Functional]) -> Result<f64> {
    check_endomorphism(b, t)?;
    let mut worst: f64 = 0.0;
    for l in dual_basis_l_maps(b) {
        worst = worst.max(commutator_residual(&l, t.matrix()));
    }
    for mu in samples {
        let l = crate::convolution::l_map(b, mu)?;
        worst = worst.max(commutator_residual(l.matrix(), t.matrix()));
    }
    Ok(worst)
}

/// `‖Δ∘T − (id⊗T)∘Δ‖`.
pub fn check_strong_invariance(b: &Bialgebra, t: &LinearMap) -> Result<f64> {
    check_endomorphism(b, t)?;
    let lhs = b.delta().compose(t)?;
    let rhs = LinearMap::identity(b.algebra()).tensor(t).compose(b.delta())?;
    Ok(lhs.max_abs_diff(&rhs))
}

/// `‖T − (id⊗(ε∘T))∘Δ‖ = ‖T − R_{ε∘T}‖`.
pub fn check_weak_invariance(b: &Bialgebra, t: &LinearMap) -> Result<f64> {
    let mu = recover_functional(b, t)?;
    Ok(t.max_abs_diff(&r_map(b, &mu)?))
}

/// Whether `T = R_μ` for some `μ`; the witness is then `μ = ε∘T`.
pub fn in_range_of_r(b: &Bialgebra, t: &LinearMap, tol: f64) -> Result<bool> {
    Ok(check_weak_invariance(b, t)? <= tol)
}

/// Complete positivity of a map on the algebra.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CpReport {
    pub cp: bool,
    /// Minimum Choi eigenvalue for each source block.
    pub min_choi_eig: Vec<f64>,
    /// `max |T(1) − 1|`.
    pub unit_residual: f64,
}

impl CpReport {
    pub fn cp_and_unital(&self, tol: f64) -> bool {
        self.cp && self.unit_residual <= tol
    }
}

/// Per-source-block Choi test; see [`LinearMap::choi_min_eigenvalues`].
pub fn is_completely_positive(t: &LinearMap, tol: f64) -> CpReport {
    let min_choi_eig = t.choi_min_eigenvalues();
    CpReport {
        cp: min_choi_eig.iter().all(|&e| e >= -tol),
        min_choi_eig,
        unit_residual: t.unit_residual(),
    }
}

/// `max |μ(Z a) − γ(L_μ a)|` over dual-basis `μ` and canonical `a`, for a
/// given operator `z`.
pub fn generator_pairing_residual(b: &Bialgebra, z: &LinearMap, gamma: &Functional) -> Result<f64> {
    check_endomorphism(b, z)?;
    gamma.check_against(b.algebra())?;
    let g = gamma.values();
    let mut worst: f64 = 0.0;
    for (k, l) in dual_basis_l_maps(b).iter().enumerate() {
        // γ(L_{δ̂_k} E_j) = Σ_i γ_i L[i, j]
        let rhs = l.transpose() * &g;
        for j in 0..rhs.len() {
            worst = worst.max((z.matrix()[(k, j)] - rhs[j]).norm());
        }
    }
    Ok(worst)
}

/// Pairing identity `μ(Z a) = γ(L_μ a)` for `Z = R_γ`.
pub fn generator_pairing_check(b: &Bialgebra, gamma: &Functional) -> Result<f64> {
    generator_pairing_residual(b, &r_map(b, gamma)?, gamma)
}

/// Residuals of the characterisations of associated semigroups at one time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssocResiduals {
    pub t: f64,
    pub commutation: f64,
    pub strong_invariance: f64,
    pub weak_invariance: f64,
    /// `‖ε∘P_t − exp_⋆(tγ)‖` (max-abs on values).
    pub recovery: f64,
    /// `‖R_{exp_⋆(tγ)} − exp(tZ)‖`.
    pub route: f64,
}

impl AssocResiduals {
    pub fn max(&self) -> f64 {
        [
            self.commutation,
            self.strong_invariance,
            self.weak_invariance,
            self.recovery,
            self.route,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn assoc_residuals(sg: &AssociatedSemigroup, t: f64, tol: f64) -> Result<AssocResiduals> {
    let b = sg.bialgebra();
    let pt = sg.at(t, tol)?;
    let lambda = exp_conv(b, sg.gamma(), t, tol)?;
    Ok(AssocResiduals {
        t,
        commutation: check_commutation(b, &pt, &[])?,
        strong_invariance: check_strong_invariance(b, &pt)?,
        weak_invariance: check_weak_invariance(b, &pt)?,
        recovery: recover_functional(b, &pt)?.max_abs_diff(&lambda),
        route: pt.max_abs_diff(&sg.at_via_generator(t)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::{fixtures, function_bialgebra, group_cstar_bialgebra, SemigroupTable};
    use crate::convolution::l_map;
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_generator_gives_identity() {
        let b = function_bialgebra(&SemigroupTable::cyclic(3));
        let sg = associated_semigroup(&b, &Functional::zero(b.algebra())).unwrap();
        for t in [0.0, 1.0, 5.0] {
            assert_eq!(sg.at(t, 1e-12).unwrap(), LinearMap::identity(b.algebra()));
        }
    }

    #[test]
    fn z2_markov_semigroup() {
        let b = function_bialgebra(&SemigroupTable::cyclic(2));
        let gamma = &Functional::dual_basis(b.algebra(), 1) - &Functional::dual_basis(b.algebra(), 0);
        let sg = associated_semigroup(&b, &gamma).unwrap();
        for t in [0.3, 1.0, 2.5] {
            let pt = sg.at(t, 1e-13).unwrap();
            let stay = (1.0 + (-2.0 * t).exp()) / 2.0;
            let jump = (1.0 - (-2.0 * t).exp()) / 2.0;
            let oracle = CMat::from_row_slice(2, 2, &[c(stay), c(jump), c(jump), c(stay)]);
            assert!(linalg::max_abs_diff(pt.matrix(), &oracle) < 1e-13);
            let cp = is_completely_positive(&pt, 1e-12);
            assert!(cp.cp_and_unital(1e-12));
        }
    }

    #[test]
    fn recovery_and_identity() {
        let b = function_bialgebra(&SemigroupTable::cyclic(3));
        let id = LinearMap::identity(b.algebra());
        assert_eq!(recover_functional(&b, &id).unwrap(), *b.epsilon());
        assert!(in_range_of_r(&b, &id, 1e-12).unwrap());
        assert_eq!(check_commutation(&b, &id, &[]).unwrap(), 0.0);
    }

    #[test]
    fn inversion_automorphism_is_not_associated() {
        // F ↦ F∘inv is a *-automorphism of C(Z_3) with ε∘T = ε but T ≠ id.
        let g = SemigroupTable::cyclic(3);
        let b = function_bialgebra(&g);
        let mut m = CMat::zeros(3, 3);
        for x in 0..3 {
            m[(x, g.inverse(x).unwrap())] = c(1.0);
        }
        let t = LinearMap::new(b.algebra().clone(), b.algebra().clone(), m).unwrap();
        assert!(is_completely_positive(&t, 1e-12).cp_and_unital(1e-12));
        assert_eq!(recover_functional(&b, &t).unwrap(), *b.epsilon());
        assert!(!in_range_of_r(&b, &t, 1e-6).unwrap());
    }

    #[test]
    fn multiplication_operators() {
        let g = SemigroupTable::cyclic(3);
        let b = function_bialgebra(&g);
        let mul = |f: [f64; 3]| {
            let m = CMat::from_diagonal(&crate::linalg::CVec::from_iterator(3, f.iter().map(|&x| c(x))));
            LinearMap::new(b.algebra().clone(), b.algebra().clone(), m).unwrap()
        };
        assert!(!in_range_of_r(&b, &mul([1.0, 2.0, 3.0]), 1e-6).unwrap());
        assert!(in_range_of_r(&b, &mul([2.0, 2.0, 2.0]), 1e-12).unwrap());
    }

    #[test]
    fn l_maps_do_not_commute_on_noncommutative_dual() {
        // C(S3)* is the group algebra of S3 under convolution.
        let b = function_bialgebra(&fixtures::s3().0);
        let t = l_map(&b, &Functional::dual_basis(b.algebra(), 1)).unwrap();
        assert!(check_commutation(&b, &t, &[]).unwrap() > 0.01);
        // while C*(S3) is cocommutative: its dual is commutative
        let (g, irr) = fixtures::s3();
        let bc = group_cstar_bialgebra(&g, &irr).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mu = sampling::random_functional(bc.algebra(), &mut rng);
        let t = l_map(&bc, &mu).unwrap();
        assert!(check_commutation(&bc, &t, &[]).unwrap() < 1e-10);
    }

    #[test]
    fn r_maps_are_weakly_invariant_random_maps_are_not() {
        let (g, irr) = fixtures::s3();
        let b = group_cstar_bialgebra(&g, &irr).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let mu = sampling::random_functional(b.algebra(), &mut rng);
            let r = r_map(&b, &mu).unwrap();
            assert!(check_weak_invariance(&b, &r).unwrap() < 1e-10);
            assert!(check_strong_invariance(&b, &r).unwrap() < 1e-10);
            let dim = b.algebra().dim();
            let t = LinearMap::new(
                b.algebra().clone(),
                b.algebra().clone(),
                sampling::gaussian_matrix(&mut rng, dim, dim),
            )
            .unwrap();
            assert!(check_weak_invariance(&b, &t).unwrap() > 1e-3);
        }
    }

    #[test]
    fn pairing_identity() {
        let (g, irr) = fixtures::q8();
        let b = group_cstar_bialgebra(&g, &irr).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let gamma = sampling::random_generating_functional(&b, &mut rng).unwrap();
        assert!(generator_pairing_check(&b, &gamma).unwrap() <= 1e-10);
        assert_eq!(
            generator_pairing_check(&b, &Functional::zero(b.algebra())).unwrap(),
            0.0
        );
        // swapping γ on the right-hand side is detected
        let other = sampling::random_generating_functional(&b, &mut rng).unwrap();
        let z = r_map(&b, &gamma).unwrap();
        let sep = generator_pairing_residual(&b, &z, &other).unwrap();
        assert!(sep > 1e-3);
        // Separation size: with μ = ε the right side is γ'(E_j) itself.
        let diff = (&gamma - &other).values().iter().fold(0.0f64, |m, z| m.max(z.norm()));
        assert!(sep >= diff - 1e-12);
    }

    #[test]
    fn shape_errors() {
        let b = function_bialgebra(&SemigroupTable::cyclic(2));
        let other = crate::fdcstar::Algebra::new(vec![2]).unwrap();
        let t = LinearMap::identity(&other);
        assert!(recover_functional(&b, &t).is_err());
        assert!(check_commutation(&b, &t, &[]).is_err());
    }
}
