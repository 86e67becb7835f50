use crate::error::{Error, Result};
use crate::fdcstar::{tensor_algebra, Algebra, Element, Functional, PairIndex};
use crate::linalg::{self, CMat, CVec, ONE};

/// A linear map between multi-matrix algebras, stored as a dense
/// `target.dim × source.dim` matrix in canonical bases.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    source: Algebra,
    target: Algebra,
    matrix: CMat,
}

impl LinearMap {
    pub fn new(source: Algebra, target: Algebra, matrix: CMat) -> Result<Self> {
        if matrix.nrows() != target.dim() || matrix.ncols() != source.dim() {
            return Err(Error::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                target.dim(),
                source.dim()
            )));
        }
        Ok(Self { source, target, matrix })
    }

    pub fn identity(alg: &Algebra) -> Self {
        Self {
            source: alg.clone(),
            target: alg.clone(),
            matrix: CMat::identity(alg.dim(), alg.dim()),
        }
    }

    /// Map whose value on the `j`-th canonical basis element is `f(E_j)`.
    pub fn from_fn(source: &Algebra, target: &Algebra, f: impl Fn(&Element) -> Element) -> Result<Self> {
        let mut matrix = CMat::zeros(target.dim(), source.dim());
        for j in 0..source.dim() {
            let image = f(&source.basis_element(j));
            matrix.set_column(j, &target.coords(&image)?);
        }
        Self::new(source.clone(), target.clone(), matrix)
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        let x = self.source.coords(a)?;
        self.target.element_from_coords(&(&self.matrix * x))
    }

    pub fn apply_coords(&self, x: &CVec) -> CVec {
        &self.matrix * x
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if inner.target != self.source {
            return Err(Error::Shape(format!(
                "cannot compose: inner target {:?} ≠ outer source {:?}",
                inner.target.blocks(),
                self.source.blocks()
            )));
        }
        Ok(LinearMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &inner.matrix,
        })
    }

    /// Functional `μ ∘ self` on the source.
    pub fn pull_back(&self, mu: &Functional) -> Result<Functional> {
        mu.check_against(&self.target)?;
        let v = self.matrix.transpose() * mu.values();
        Functional::from_values(&self.source, &v)
    }

    /// `S ⊗ T` as a map between the canonical tensor algebras.
    pub fn tensor(&self, other: &LinearMap) -> LinearMap {
        let src = tensor_algebra(&self.source, &other.source);
        let tgt = tensor_algebra(&self.target, &other.target);
        let ps = PairIndex::new(&self.source, &other.source);
        let pt = PairIndex::new(&self.target, &other.target);
        let mut m = CMat::zeros(tgt.dim(), src.dim());
        for j1 in 0..self.source.dim() {
            for k1 in 0..other.source.dim() {
                let col = ps.canonical(j1, k1);
                for j2 in 0..self.target.dim() {
                    let a = self.matrix[(j2, j1)];
                    if a.norm_sqr() == 0.0 {
                        continue;
                    }
                    for k2 in 0..other.target.dim() {
                        let b = other.matrix[(k2, k1)];
                        if b.norm_sqr() != 0.0 {
                            m[(pt.canonical(j2, k2), col)] = a * b;
                        }
                    }
                }
            }
        }
        LinearMap {
            source: src,
            target: tgt,
            matrix: m,
        }
    }

    /// Slice map `μ ⊗ id : A₁⊗A₂ → A₂`.
    pub fn slice_left(a1: &Algebra, a2: &Algebra, mu: &Functional) -> Result<LinearMap> {
        mu.check_against(a1)?;
        let vals = mu.values();
        let p = PairIndex::new(a1, a2);
        let src = tensor_algebra(a1, a2);
        let mut m = CMat::zeros(a2.dim(), src.dim());
        for k in 0..a1.dim() {
            for l in 0..a2.dim() {
                m[(l, p.canonical(k, l))] = vals[k];
            }
        }
        LinearMap::new(src, a2.clone(), m)
    }

    /// Slice map `id ⊗ μ : A₁⊗A₂ → A₁`.
    pub fn slice_right(a1: &Algebra, a2: &Algebra, mu: &Functional) -> Result<LinearMap> {
        mu.check_against(a2)?;
        let vals = mu.values();
        let p = PairIndex::new(a1, a2);
        let src = tensor_algebra(a1, a2);
        let mut m = CMat::zeros(a1.dim(), src.dim());
        for k in 0..a1.dim() {
            for l in 0..a2.dim() {
                m[(k, p.canonical(k, l))] = vals[l];
            }
        }
        LinearMap::new(src, a1.clone(), m)
    }

    /// Tensor flip `Σ : A⊗A → A⊗A`, `E_j⊗E_k ↦ E_k⊗E_j`.
    pub fn flip(alg: &Algebra) -> LinearMap {
        let t = tensor_algebra(alg, alg);
        let p = PairIndex::new(alg, alg);
        let mut m = CMat::zeros(t.dim(), t.dim());
        for j in 0..alg.dim() {
            for k in 0..alg.dim() {
                m[(p.canonical(k, j), p.canonical(j, k))] = ONE;
            }
        }
        LinearMap {
            source: t.clone(),
            target: t,
            matrix: m,
        }
    }

    pub fn max_abs_diff(&self, other: &LinearMap) -> f64 {
        linalg::max_abs_diff(&self.matrix, &other.matrix)
    }

    /// Minimum eigenvalue of the Choi matrix of each source block.
    ///
    /// `T: ⊕ M_{nᵢ} → B` is completely positive iff each restriction
    /// `T|_{M_{nᵢ}}` is, because positive elements of `M_k(⊕ M_{nᵢ})` are
    /// exactly direct sums of positive elements of the `M_k(M_{nᵢ})`.
    /// Embedding the target block-diagonally in `M_N` is a faithful
    /// *-homomorphism and so preserves and reflects positivity. Choi's theorem
    /// then reduces each restriction to positivity of
    /// `Σ_{r,s} E_{rs} ⊗ T(E_{rs})` in `M_{nᵢ}(M_N)`.
    pub fn choi_min_eigenvalues(&self) -> Vec<f64> {
        self.choi_matrices().iter().map(linalg::min_eigenvalue).collect()
    }

    pub fn choi_matrices(&self) -> Vec<CMat> {
        let big_n = self.target.faithful_dim();
        self.source
            .blocks()
            .iter()
            .enumerate()
            .map(|(b, &n)| {
                let mut choi = CMat::zeros(n * big_n, n * big_n);
                for r in 0..n {
                    for s in 0..n {
                        let j = self.source.index(b, r, s);
                        let col = self.matrix.column(j).clone_owned();
                        let image = self
                            .target
                            .element_from_coords(&col)
                            .expect("column length equals target dim");
                        let fm = self.target.faithful_matrix(&image);
                        choi.view_mut((r * big_n, s * big_n), (big_n, big_n)).copy_from(&fm);
                    }
                }
                choi
            })
            .collect()
    }

    pub fn is_completely_positive(&self, tol: f64) -> bool {
        self.choi_min_eigenvalues().iter().all(|&e| e >= -tol)
    }

    /// `max |T(1) − 1|`.
    pub fn unit_residual(&self) -> f64 {
        let one = self.source.coords(&self.source.unit()).expect("unit shape");
        let image = &self.matrix * one;
        let target_one = self.target.coords(&self.target.unit()).expect("unit shape");
        linalg::max_abs_vec_diff(&image, &target_one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn flip_is_an_involution() {
        let alg = Algebra::new(vec![1, 2]).unwrap();
        let f = LinearMap::flip(&alg);
        let ff = f.compose(&f).unwrap();
        assert_eq!(ff.matrix(), &CMat::identity(ff.source().dim(), ff.source().dim()));
    }

    #[test]
    fn identity_is_cp_transpose_is_not() {
        let m2 = Algebra::new(vec![2]).unwrap();
        let id = LinearMap::identity(&m2);
        assert!(id.is_completely_positive(1e-12));
        assert!(id.choi_min_eigenvalues()[0].abs() < 1e-14);
        let transpose = LinearMap::from_fn(&m2, &m2, |a| {
            m2.element_from_blocks(vec![a.blocks()[0].transpose()]).unwrap()
        })
        .unwrap();
        let mins = transpose.choi_min_eigenvalues();
        assert!((mins[0] + 1.0).abs() < 1e-12);
        assert!(!transpose.is_completely_positive(1e-9));
    }

    #[test]
    fn application_matches_coordinates() {
        let alg = Algebra::new(vec![2, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = sampling::gaussian_matrix(&mut rng, alg.dim(), alg.dim());
        let t = LinearMap::new(alg.clone(), alg.clone(), m.clone()).unwrap();
        let a = sampling::random_element(&alg, &mut rng);
        let direct = t.apply(&a).unwrap();
        let via = alg.element_from_coords(&(m * alg.coords(&a).unwrap())).unwrap();
        assert!(direct.max_abs_diff(&via) < 1e-14);
    }

    #[test]
    fn tensor_of_maps_acts_on_simple_tensors() {
        use crate::fdcstar::tensor_element;
        let a1 = Algebra::new(vec![1, 2]).unwrap();
        let a2 = Algebra::new(vec![2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = LinearMap::new(a1.clone(), a2.clone(), sampling::gaussian_matrix(&mut rng, 4, 5)).unwrap();
        let t = LinearMap::new(a2.clone(), a1.clone(), sampling::gaussian_matrix(&mut rng, 5, 4)).unwrap();
        let x = sampling::random_element(&a1, &mut rng);
        let y = sampling::random_element(&a2, &mut rng);
        let lhs = s.tensor(&t).apply(&tensor_element(&x, &y)).unwrap();
        let rhs = tensor_element(&s.apply(&x).unwrap(), &t.apply(&y).unwrap());
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn shape_mismatch() {
        let a = Algebra::new(vec![2]).unwrap();
        assert!(matches!(
            LinearMap::new(a.clone(), a, CMat::zeros(3, 4)),
            Err(Error::Shape(_))
        ));
    }
}
