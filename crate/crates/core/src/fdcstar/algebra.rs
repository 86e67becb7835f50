use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat, CVec, C64, ONE};

/// A multi-matrix algebra given by its block sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    blocks: Vec<usize>,
    offsets: Vec<usize>,
    dim: usize,
}

/// Position of a matrix unit `E^{(block)}_{row,col}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisIndex {
    pub block: usize,
    pub row: usize,
    pub col: usize,
}

impl Algebra {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Construction("an algebra needs at least one block".into()));
        }
        if let Some(pos) = blocks.iter().position(|&n| n == 0) {
            return Err(Error::Construction(format!("block {pos} has size 0")));
        }
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut dim = 0;
        for &n in &blocks {
            offsets.push(dim);
            dim += n * n;
        }
        Ok(Self { blocks, offsets, dim })
    }

    /// The commutative algebra `ℂᵐ`.
    pub fn diagonal(m: usize) -> Result<Self> {
        Self::new(vec![1; m])
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Coordinate dimension `Σ nᵢ²`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Size `Σ nᵢ` of the faithful block-diagonal representation.
    pub fn faithful_dim(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn block_offset(&self, block: usize) -> usize {
        self.offsets[block]
    }

    pub fn is_commutative(&self) -> bool {
        self.blocks.iter().all(|&n| n == 1)
    }

    pub fn index(&self, block: usize, row: usize, col: usize) -> usize {
        let n = self.blocks[block];
        debug_assert!(row < n && col < n);
        self.offsets[block] + row * n + col
    }

    pub fn basis_index(&self, j: usize) -> BasisIndex {
        assert!(j < self.dim, "basis index {j} out of range");
        let block = match self.offsets.binary_search(&j) {
            Ok(b) => b,
            Err(b) => b - 1,
        };
        let n = self.blocks[block];
        let local = j - self.offsets[block];
        BasisIndex {
            block,
            row: local / n,
            col: local % n,
        }
    }

    pub fn zero(&self) -> Element {
        Element {
            blocks: self.blocks.iter().map(|&n| CMat::zeros(n, n)).collect(),
        }
    }

    pub fn unit(&self) -> Element {
        Element {
            blocks: self.blocks.iter().map(|&n| CMat::identity(n, n)).collect(),
        }
    }

    /// The matrix unit with canonical index `j`.
    pub fn basis_element(&self, j: usize) -> Element {
        let BasisIndex { block, row, col } = self.basis_index(j);
        let mut e = self.zero();
        e.blocks[block][(row, col)] = ONE;
        e
    }

    /// Unit of block `block`, zero elsewhere.
    pub fn block_unit(&self, block: usize) -> Element {
        let mut e = self.zero();
        let n = self.blocks[block];
        e.blocks[block] = CMat::identity(n, n);
        e
    }

    pub fn element_from_blocks(&self, blocks: Vec<CMat>) -> Result<Element> {
        let e = Element { blocks };
        self.check_element(&e)?;
        Ok(e)
    }

    pub fn element_from_coords(&self, coords: &CVec) -> Result<Element> {
        if coords.len() != self.dim {
            return Err(Error::Shape(format!(
                "coordinate vector has length {}, algebra dimension is {}",
                coords.len(),
                self.dim
            )));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&self.offsets)
            .map(|(&n, &off)| CMat::from_fn(n, n, |r, s| coords[off + r * n + s]))
            .collect();
        Ok(Element { blocks })
    }

    pub fn coords(&self, a: &Element) -> Result<CVec> {
        self.check_element(a)?;
        let mut v = CVec::zeros(self.dim);
        for (b, block) in a.blocks.iter().enumerate() {
            let n = self.blocks[b];
            let off = self.offsets[b];
            for r in 0..n {
                for s in 0..n {
                    v[off + r * n + s] = block[(r, s)];
                }
            }
        }
        Ok(v)
    }

    pub fn check_element(&self, a: &Element) -> Result<()> {
        if a.blocks.len() != self.blocks.len() {
            return Err(Error::Shape(format!(
                "element has {} blocks, algebra has {}",
                a.blocks.len(),
                self.blocks.len()
            )));
        }
        for (i, (m, &n)) in a.blocks.iter().zip(&self.blocks).enumerate() {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::Shape(format!(
                    "block {i} is {}x{}, expected {n}x{n}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(())
    }

    /// C*-norm: the largest singular value over all blocks.
    pub fn element_norm(&self, a: &Element) -> Result<f64> {
        self.check_element(a)?;
        Ok(a.norm())
    }

    /// Positivity of a Hermitian element: every block has minimum
    /// eigenvalue `≥ -tol`.
    pub fn is_positive(&self, a: &Element, tol: f64) -> Result<bool> {
        self.check_element(a)?;
        let herm = a.hermitian_residual();
        if herm > tol {
            return Err(Error::Precondition(format!(
                "element is not Hermitian (residual {herm:e} > {tol:e})"
            )));
        }
        Ok(a.min_eigenvalue() >= -tol)
    }

    /// Block-diagonal matrix of `a` in the faithful `N`-dimensional representation.
    pub fn faithful_matrix(&self, a: &Element) -> CMat {
        let n_total = self.faithful_dim();
        let mut m = CMat::zeros(n_total, n_total);
        let mut pos = 0;
        for block in &a.blocks {
            let n = block.nrows();
            m.view_mut((pos, pos), (n, n)).copy_from(block);
            pos += n;
        }
        m
    }
}

/// An element of a multi-matrix algebra, stored blockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub(crate) blocks: Vec<CMat>,
}

impl Element {
    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<CMat> {
        self.blocks
    }

    pub fn adjoint(&self) -> Element {
        Element {
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    pub fn scale(&self, z: C64) -> Element {
        Element {
            blocks: self.blocks.iter().map(|b| b * z).collect(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(linalg::spectral_norm).fold(0.0, f64::max)
    }

    pub fn hermitian_residual(&self) -> f64 {
        self.blocks.iter().map(linalg::hermitian_residual).fold(0.0, f64::max)
    }

    /// Minimum eigenvalue over all blocks of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        self.blocks
            .iter()
            .map(linalg::min_eigenvalue)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_diff(&self, other: &Element) -> f64 {
        if self.blocks.len() != other.blocks.len() {
            return f64::INFINITY;
        }
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| linalg::max_abs_diff(a, b))
            .fold(0.0, f64::max)
    }

    fn zip_with(&self, other: &Element, f: impl Fn(&CMat, &CMat) -> CMat) -> Element {
        assert_eq!(self.blocks.len(), other.blocks.len(), "block count mismatch");
        Element {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.zip_with(rhs, |a, b| a * b)
    }
}

impl Mul<f64> for &Element {
    type Output = Element;
    fn mul(self, rhs: f64) -> Element {
        self.scale(c(rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ZERO;
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_has_norm_one() {
        let a = Algebra::new(vec![2, 3]).unwrap();
        assert_eq!(a.element_norm(&a.unit()).unwrap(), 1.0);
        assert_eq!(a.dim(), 13);
        assert_eq!(a.faithful_dim(), 5);
    }

    #[test]
    fn diagonal_norm() {
        let a = Algebra::new(vec![2]).unwrap();
        let x = a
            .element_from_blocks(vec![CMat::from_diagonal(&CVec::from_vec(vec![c(2.0), c(-3.0)]))])
            .unwrap();
        assert!((a.element_norm(&x).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn c_star_identity_on_random_elements() {
        let a = Algebra::new(vec![1, 2, 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let x = sampling::random_element(&a, &mut rng);
            let n = x.norm();
            let lhs = (&x.adjoint() * &x).norm();
            assert!((lhs - n * n).abs() <= 1e-9 * n.max(1.0).powi(2));
            let y = sampling::random_element(&a, &mut rng);
            assert!((&x * &y).norm() <= n * y.norm() + 1e-9);
        }
    }

    #[test]
    fn positivity() {
        let a = Algebra::new(vec![2, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let b = sampling::random_element(&a, &mut rng);
        assert!(a.is_positive(&(&b.adjoint() * &b), 1e-9).unwrap());
        assert!(a.is_positive(&a.zero(), 1e-9).unwrap());

        let m2 = Algebra::new(vec![2]).unwrap();
        let x = m2
            .element_from_blocks(vec![CMat::from_diagonal(&CVec::from_vec(vec![c(1.0), c(-1e-3)]))])
            .unwrap();
        assert!(!m2.is_positive(&x, 1e-9).unwrap());

        let mut nh = m2.zero();
        nh.blocks[0][(0, 1)] = ONE;
        assert!(matches!(m2.is_positive(&nh, 1e-9), Err(Error::Precondition(_))));
    }

    #[test]
    fn shape_errors() {
        let a = Algebra::new(vec![2, 3]).unwrap();
        let b = Algebra::new(vec![2]).unwrap();
        assert!(matches!(a.element_norm(&b.unit()), Err(Error::Shape(_))));
        assert!(Algebra::new(vec![]).is_err());
        assert!(Algebra::new(vec![1, 0]).is_err());
    }

    #[test]
    fn coordinates_roundtrip_and_order() {
        let a = Algebra::new(vec![1, 2]).unwrap();
        assert_eq!(
            a.basis_index(0),
            BasisIndex {
                block: 0,
                row: 0,
                col: 0
            }
        );
        assert_eq!(
            a.basis_index(3),
            BasisIndex {
                block: 1,
                row: 1,
                col: 0
            }
        );
        assert_eq!(
            a.basis_index(4),
            BasisIndex {
                block: 1,
                row: 1,
                col: 1
            }
        );
        let e = a.basis_element(2);
        let v = a.coords(&e).unwrap();
        assert_eq!(v[2], ONE);
        assert_eq!(v.iter().filter(|z| **z != ZERO).count(), 1);
        assert_eq!(a.element_from_coords(&v).unwrap(), e);
    }
}
