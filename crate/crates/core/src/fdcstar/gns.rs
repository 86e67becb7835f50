//! GNS construction for a positive functional on a multi-matrix algebra.
//!
//! The pre-Hilbert space is the algebra itself with `⟨x, y⟩ = ω(x*·y)`. The
//! Gram matrix over the canonical basis is diagonalised; eigenvalues below
//! `tol·λ_max` span the null space and are discarded, and the remaining
//! eigenvectors, rescaled by `λ^{-1/2}`, give an orthonormal basis of the
//! quotient. Left multiplication compressed to that basis is `π`.

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat, CVec};

use super::{Algebra, Element, Functional};

/// Cyclic representation `(π, η)` with `ω(a) = ⟨η, π(a)η⟩`.
#[derive(Debug, Clone)]
pub struct GnsData {
    algebra: Algebra,
    /// `dim × d`: column `k` holds the canonical coordinates of the `k`-th
    /// orthonormal basis vector of the quotient.
    frame: CMat,
    values: CVec,
    basis_images: Vec<CMat>,
    eta: CVec,
}

impl GnsData {
    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.eta.len()
    }

    pub fn cyclic_vector(&self) -> &CVec {
        &self.eta
    }

    /// `π(E_j)` for the canonical basis element `j`.
    pub fn basis_image(&self, j: usize) -> &CMat {
        &self.basis_images[j]
    }

    pub fn represent(&self, a: &Element) -> Result<CMat> {
        self.algebra.check_element(a)?;
        Ok(compress(&self.algebra, &self.values, a, &self.frame))
    }

    /// `⟨η, π(a)η⟩`.
    pub fn vector_state(&self, a: &Element) -> Result<linalg::C64> {
        let m = self.represent(a)?;
        Ok(self.eta.dotc(&(m * &self.eta)))
    }
}

/// Matrix of `(x, y) ↦ ω(x*·a·y)` over the canonical basis, compressed by
/// `frame`. For matrix units `E_{sr}·a·E_{r's'} = a[r,r']·E_{ss'}` inside a
/// block, so no products are formed explicitly.
fn compress(alg: &Algebra, values: &CVec, a: &Element, frame: &CMat) -> CMat {
    frame.adjoint() * sesquilinear(alg, values, a) * frame
}

fn sesquilinear(alg: &Algebra, values: &CVec, a: &Element) -> CMat {
    let dim = alg.dim();
    let mut g = CMat::zeros(dim, dim);
    for (b, &n) in alg.blocks().iter().enumerate() {
        let ab = &a.blocks()[b];
        for r in 0..n {
            for s in 0..n {
                let x = alg.index(b, r, s);
                for r2 in 0..n {
                    let arr = ab[(r, r2)];
                    if arr.norm_sqr() == 0.0 {
                        continue;
                    }
                    for s2 in 0..n {
                        let y = alg.index(b, r2, s2);
                        g[(x, y)] = arr * values[alg.index(b, s, s2)];
                    }
                }
            }
        }
    }
    g
}

/// Build the GNS representation of a positive functional.
pub fn gns(alg: &Algebra, omega: &Functional, tol: f64) -> Result<GnsData> {
    omega.check_against(alg)?;
    if !omega.is_hermitian(tol) {
        return Err(Error::Precondition(format!(
            "GNS needs a positive functional; Hermitian residual {:e}",
            omega.hermitian_residual()
        )));
    }
    let min = omega.min_eigenvalue();
    if min < -tol {
        return Err(Error::Precondition(format!(
            "GNS needs a positive functional; minimum dual eigenvalue {min:e}"
        )));
    }
    let values = omega.values();
    let gram = sesquilinear(alg, &values, &alg.unit());
    let eig = linalg::eigh(&gram);
    let cutoff = tol * eig.max().max(0.0);
    let keep: Vec<usize> = (0..eig.values.len())
        .filter(|&k| eig.values[k] > cutoff && eig.values[k] > 0.0)
        .collect();
    let d = keep.len();
    let frame = CMat::from_fn(alg.dim(), d, |x, k| {
        eig.vectors[(x, keep[k])] * c(1.0 / eig.values[keep[k]].sqrt())
    });
    let basis_images = (0..alg.dim())
        .map(|j| compress(alg, &values, &alg.basis_element(j), &frame))
        .collect();
    let unit = alg.coords(&alg.unit())?;
    let eta = frame.adjoint() * (&gram * unit);
    Ok(GnsData {
        algebra: alg.clone(),
        frame,
        values,
        basis_images,
        eta,
    })
}
