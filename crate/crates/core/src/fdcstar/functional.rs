use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat, CVec, C64, ONE};

use super::{Algebra, Element};

/// A linear functional `μ(a) = Σᵢ tr(ρᵢ·aᵢ)` given by its dual blocks `ρᵢ`.
///
/// In canonical coordinates `μ(E^{(i)}_{rs}) = ρᵢ[s, r]`; [`Functional::values`]
/// returns that vector and [`Functional::from_values`] inverts it.
#[derive(Debug, Clone, PartialEq)]
pub struct Functional {
    pub(crate) blocks: Vec<CMat>,
}

impl Functional {
    pub fn from_blocks(alg: &Algebra, blocks: Vec<CMat>) -> Result<Self> {
        alg.check_element(&Element { blocks: blocks.clone() })
            .map_err(|e| Error::Shape(format!("dual blocks: {e}")))?;
        Ok(Self { blocks })
    }

    pub fn zero(alg: &Algebra) -> Self {
        Self {
            blocks: alg.zero().into_blocks(),
        }
    }

    /// Functional with value vector `values` on the canonical basis.
    pub fn from_values(alg: &Algebra, values: &CVec) -> Result<Self> {
        if values.len() != alg.dim() {
            return Err(Error::Shape(format!(
                "value vector has length {}, algebra dimension is {}",
                values.len(),
                alg.dim()
            )));
        }
        let blocks = alg
            .blocks()
            .iter()
            .enumerate()
            .map(|(b, &n)| {
                let off = alg.block_offset(b);
                CMat::from_fn(n, n, |s, r| values[off + r * n + s])
            })
            .collect();
        Ok(Self { blocks })
    }

    /// Dual basis functional: 1 on the canonical basis element `j`, 0 on the rest.
    pub fn dual_basis(alg: &Algebra, j: usize) -> Self {
        let mut v = CVec::zeros(alg.dim());
        v[j] = ONE;
        Self::from_values(alg, &v).expect("length matches by construction")
    }

    pub fn values(&self) -> CVec {
        let dim = self.blocks.iter().map(|b| b.nrows() * b.nrows()).sum();
        let mut v = CVec::zeros(dim);
        let mut off = 0;
        for rho in &self.blocks {
            let n = rho.nrows();
            for r in 0..n {
                for s in 0..n {
                    v[off + r * n + s] = rho[(s, r)];
                }
            }
            off += n * n;
        }
        v
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn apply(&self, a: &Element) -> C64 {
        assert_eq!(self.blocks.len(), a.blocks.len(), "block count mismatch");
        self.blocks
            .iter()
            .zip(&a.blocks)
            .map(|(rho, x)| (rho.component_mul(&x.transpose())).sum())
            .sum()
    }

    pub fn check_against(&self, alg: &Algebra) -> Result<()> {
        alg.check_element(&Element {
            blocks: self.blocks.clone(),
        })
    }

    /// Dual norm: sum of trace norms of the dual blocks.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(linalg::trace_norm).sum()
    }

    /// Norm-one element attaining `|μ(a)| = ‖μ‖`: blockwise adjoint of the
    /// polar unitary of `ρᵢ`.
    pub fn norming_element(&self) -> Element {
        Element {
            blocks: self
                .blocks
                .iter()
                .map(|rho| linalg::polar_unitary(rho).adjoint())
                .collect(),
        }
    }

    pub fn hermitian_residual(&self) -> f64 {
        self.blocks.iter().map(linalg::hermitian_residual).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_residual() <= tol
    }

    /// Minimum eigenvalue over the Hermitian parts of all dual blocks.
    pub fn min_eigenvalue(&self) -> f64 {
        self.blocks
            .iter()
            .map(linalg::min_eigenvalue)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_positive(&self, tol: f64) -> bool {
        self.is_hermitian(tol) && self.min_eigenvalue() >= -tol
    }

    /// Value at the unit: the sum of the dual-block traces.
    pub fn at_unit(&self) -> C64 {
        self.blocks.iter().map(|b| b.trace()).sum()
    }

    pub fn is_state(&self, tol: f64) -> bool {
        self.is_positive(tol) && (self.at_unit() - ONE).norm() <= tol
    }

    pub fn adjoint(&self) -> Functional {
        // μ*(a) = conj μ(a*)  ⇒  ρ ↦ ρᴴ
        Functional {
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    pub fn scale(&self, z: C64) -> Functional {
        Functional {
            blocks: self.blocks.iter().map(|b| b * z).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Functional) -> f64 {
        linalg::max_abs_vec_diff(&self.values(), &other.values())
    }

    fn zip_with(&self, other: &Functional, f: impl Fn(&CMat, &CMat) -> CMat) -> Functional {
        assert_eq!(self.blocks.len(), other.blocks.len(), "block count mismatch");
        Functional {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl Add for &Functional {
    type Output = Functional;
    fn add(self, rhs: &Functional) -> Functional {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Functional {
    type Output = Functional;
    fn sub(self, rhs: &Functional) -> Functional {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<f64> for &Functional {
    type Output = Functional;
    fn mul(self, rhs: f64) -> Functional {
        self.scale(c(rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CVec;
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn values_roundtrip_and_pairing() {
        let alg = Algebra::new(vec![2, 1, 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mu = sampling::random_functional(&alg, &mut rng);
        let back = Functional::from_values(&alg, &mu.values()).unwrap();
        assert_eq!(back, mu);
        for j in 0..alg.dim() {
            let e = alg.basis_element(j);
            assert!((mu.apply(&e) - mu.values()[j]).norm() < 1e-15);
        }
    }

    #[test]
    fn state_has_norm_one() {
        let alg = Algebra::new(vec![1, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = sampling::random_state(&alg, &mut rng);
        assert!(s.is_state(1e-12));
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn norm_of_signed_diagonal() {
        let alg = Algebra::new(vec![2]).unwrap();
        let mu =
            Functional::from_blocks(&alg, vec![CMat::from_diagonal(&CVec::from_vec(vec![c(1.0), c(-1.0)]))]).unwrap();
        assert!((mu.norm() - 2.0).abs() < 1e-15);
        assert!(!mu.is_positive(1e-9));
    }

    #[test]
    fn polar_witness_attains_norm() {
        let alg = Algebra::new(vec![3, 1, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..30 {
            let mu = sampling::random_functional(&alg, &mut rng);
            let a = mu.norming_element();
            assert!((a.norm() - 1.0).abs() < 1e-12);
            assert!((mu.apply(&a).norm() - mu.norm()).abs() < 1e-9);
            // |μ(x)| ≤ ‖μ‖‖x‖ on random x
            let x = sampling::random_element(&alg, &mut rng);
            assert!(mu.apply(&x).norm() <= mu.norm() * x.norm() + 1e-9);
        }
    }

    #[test]
    fn hermitian_iff_star_compatible() {
        let alg = Algebra::new(vec![2, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mu = sampling::random_functional(&alg, &mut rng);
        let h = &(&mu + &mu.adjoint()) * 0.5;
        assert!(h.is_hermitian(1e-14));
        for _ in 0..10 {
            let a = sampling::random_element(&alg, &mut rng);
            assert!((h.apply(&a.adjoint()) - h.apply(&a).conj()).norm() < 1e-12);
        }
        assert!(!mu.is_hermitian(1e-6));
    }

    #[test]
    fn cauchy_schwarz_for_states() {
        let alg = Algebra::new(vec![2, 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let s = sampling::random_state(&alg, &mut rng);
            let a = sampling::random_element(&alg, &mut rng);
            let b = sampling::random_element(&alg, &mut rng);
            let lhs = s.apply(&(&a.adjoint() * &b)).norm_sqr();
            let rhs = s.apply(&(&a.adjoint() * &a)).re * s.apply(&(&b.adjoint() * &b)).re;
            assert!(lhs <= rhs + 1e-9);
        }
    }
}
