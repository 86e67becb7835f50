use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fdcstar::{tensor_algebra, tensor_element, Algebra, Element, Functional, DEFAULT_TOL};
use crate::linalg::{self, c, CMat, CVec, ONE};

use super::{IrrepTable, LinearMap, SemigroupTable};

/// What is demanded of the coproduct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Unital *-homomorphism.
    #[serde(rename = "hom")]
    StrictHomomorphism,
    /// Completely positive and unital only.
    #[serde(rename = "hyper")]
    Hyper,
}

/// A finite-dimensional C*-bialgebra (or hyperbialgebra).
#[derive(Debug, Clone)]
pub struct Bialgebra {
    algebra: Algebra,
    delta: LinearMap,
    epsilon: Functional,
    mode: Mode,
}

/// Residuals of the bialgebra axioms, each a max-abs matrix deviation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub coassoc_residual: f64,
    pub counit_residual: f64,
    /// `Δ(ab) = Δ(a)Δ(b)`, `Δ(a*) = Δ(a)*`; present in homomorphism mode.
    pub hom_residual: Option<f64>,
    /// Smallest Choi eigenvalue of `Δ`; present in hyper mode.
    pub cp_min_eig: Option<f64>,
    /// `Δ(1) = 1`.
    pub unit_residual: f64,
    pub character_residual: f64,
    pub tol: f64,
    pub passed: bool,
}

/// `𝔹 = ℂΩ ⊕ 𝔹₀` with `p = 1 − Ω` the unit of `Ker ε`.
#[derive(Debug, Clone)]
pub struct DiscreteDecomposition {
    pub omega_block: usize,
    pub omega: Element,
    pub p: Element,
}

impl Bialgebra {
    /// Assemble without validating; see [`Bialgebra::validate`].
    pub fn new(algebra: Algebra, delta: LinearMap, epsilon: Functional, mode: Mode) -> Result<Self> {
        let tt = tensor_algebra(&algebra, &algebra);
        if delta.source() != &algebra || delta.target() != &tt {
            return Err(Error::Shape("coproduct must map B → B⊗B".into()));
        }
        epsilon.check_against(&algebra)?;
        Ok(Self {
            algebra,
            delta,
            epsilon,
            mode,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn delta(&self) -> &LinearMap {
        &self.delta
    }

    pub fn epsilon(&self) -> &Functional {
        &self.epsilon
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_delta(&self, delta: LinearMap) -> Result<Self> {
        Self::new(self.algebra.clone(), delta, self.epsilon.clone(), self.mode)
    }

    pub fn with_epsilon(&self, epsilon: Functional) -> Result<Self> {
        Self::new(self.algebra.clone(), self.delta.clone(), epsilon, self.mode)
    }

    /// `Δ⁽²⁾ = (Δ⊗id)Δ`.
    pub fn delta2(&self) -> LinearMap {
        let id = LinearMap::identity(&self.algebra);
        self.delta
            .tensor(&id)
            .compose(&self.delta)
            .expect("shapes fixed by construction")
    }

    pub fn validate(&self, tol: f64) -> ValidationReport {
        let alg = &self.algebra;
        let id = LinearMap::identity(alg);

        let left = id.tensor(&self.delta).compose(&self.delta).expect("shapes");
        let right = self.delta.tensor(&id).compose(&self.delta).expect("shapes");
        let coassoc_residual = left.max_abs_diff(&right);

        let ir = LinearMap::slice_right(alg, alg, &self.epsilon)
            .and_then(|s| s.compose(&self.delta))
            .expect("shapes");
        let il = LinearMap::slice_left(alg, alg, &self.epsilon)
            .and_then(|s| s.compose(&self.delta))
            .expect("shapes");
        let counit_residual = ir.max_abs_diff(&id).max(il.max_abs_diff(&id));

        let character_residual = self.character_residual();
        let unit_residual = self.delta.unit_residual();

        let (hom_residual, cp_min_eig, structural_ok) = match self.mode {
            Mode::StrictHomomorphism => {
                let h = self.homomorphism_residual();
                (Some(h), None, h <= tol)
            }
            Mode::Hyper => {
                let m = self
                    .delta
                    .choi_min_eigenvalues()
                    .into_iter()
                    .fold(f64::INFINITY, f64::min);
                (None, Some(m), m >= -tol)
            }
        };
        let passed = structural_ok
            && coassoc_residual <= tol
            && counit_residual <= tol
            && unit_residual <= tol
            && character_residual <= tol;
        ValidationReport {
            coassoc_residual,
            counit_residual,
            hom_residual,
            cp_min_eig,
            unit_residual,
            character_residual,
            tol,
            passed,
        }
    }

    fn delta_images(&self) -> Vec<Element> {
        let tt = self.delta.target();
        (0..self.algebra.dim())
            .map(|j| {
                tt.element_from_coords(&self.delta.matrix().column(j).clone_owned())
                    .expect("column length")
            })
            .collect()
    }

    fn homomorphism_residual(&self) -> f64 {
        let alg = &self.algebra;
        let images = self.delta_images();
        let mut worst: f64 = 0.0;
        for j in 0..alg.dim() {
            let ej = alg.basis_element(j);
            let star = self.delta.apply(&ej.adjoint()).expect("shape");
            worst = worst.max(star.max_abs_diff(&images[j].adjoint()));
            for k in 0..alg.dim() {
                let prod = &ej * &alg.basis_element(k);
                let lhs = self.delta.apply(&prod).expect("shape");
                let rhs = &images[j] * &images[k];
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
        worst
    }

    fn character_residual(&self) -> f64 {
        let alg = &self.algebra;
        let eps = &self.epsilon;
        let vals = eps.values();
        let mut worst = (eps.at_unit() - ONE).norm();
        for j in 0..alg.dim() {
            let ej = alg.basis_element(j);
            worst = worst.max((eps.apply(&ej.adjoint()) - vals[j].conj()).norm());
            for k in 0..alg.dim() {
                let v = eps.apply(&(&ej * &alg.basis_element(k)));
                worst = worst.max((v - vals[j] * vals[k]).norm());
            }
        }
        worst
    }

    /// Locate the unique 1×1 block carrying `ε`.
    pub fn discrete_type_decomposition(&self) -> Result<DiscreteDecomposition> {
        self.discrete_type_decomposition_tol(DEFAULT_TOL)
    }

    pub fn discrete_type_decomposition_tol(&self, tol: f64) -> Result<DiscreteDecomposition> {
        let blocks = self.epsilon.blocks();
        let mut support = (0..blocks.len()).filter(|&i| linalg::max_abs(&blocks[i]) > tol);
        let omega_block = match (support.next(), support.next()) {
            (Some(i), None) => i,
            (None, _) => return Err(Error::Precondition("counit vanishes identically".into())),
            (Some(_), Some(_)) => {
                return Err(Error::Precondition(
                    "counit is supported on several blocks; not a character".into(),
                ))
            }
        };
        if self.algebra.blocks()[omega_block] != 1 {
            return Err(Error::Precondition(format!(
                "counit is supported on block {omega_block} of size {}; a character needs a 1×1 block",
                self.algebra.blocks()[omega_block]
            )));
        }
        let value = blocks[omega_block][(0, 0)];
        if (value - ONE).norm() > tol {
            return Err(Error::Precondition(format!(
                "counit takes value {value} on its block unit, expected 1"
            )));
        }
        let omega = self.algebra.block_unit(omega_block);
        let p = &self.algebra.unit() - &omega;
        Ok(DiscreteDecomposition { omega_block, omega, p })
    }

    /// `Σ` on `B⊗B`.
    pub fn flip(&self) -> LinearMap {
        LinearMap::flip(&self.algebra)
    }

    pub fn cocommutativity_residual(&self) -> f64 {
        self.flip()
            .compose(&self.delta)
            .expect("shapes")
            .max_abs_diff(&self.delta)
    }

    pub fn is_cocommutative(&self, tol: f64) -> bool {
        self.cocommutativity_residual() <= tol
    }

    pub fn is_commutative(&self) -> bool {
        self.algebra.is_commutative()
    }
}

/// `C(Γ)` for a finite monoid: `Δ(δ_g) = Σ_{hk=g} δ_h⊗δ_k`, `ε(δ_g) = [g = e]`.
pub fn function_bialgebra(monoid: &SemigroupTable) -> Bialgebra {
    let m = monoid.order();
    let alg = Algebra::diagonal(m).expect("m ≥ 1");
    let tt = tensor_algebra(&alg, &alg);
    let mut delta = CMat::zeros(m * m, m);
    // with 1×1 blocks the pair (h, k) has canonical index h·m + k
    for h in 0..m {
        for k in 0..m {
            delta[(h * m + k, monoid.mul(h, k))] = ONE;
        }
    }
    let delta = LinearMap::new(alg.clone(), tt, delta).expect("shape");
    let epsilon = Functional::dual_basis(&alg, monoid.identity());
    Bialgebra::new(alg, delta, epsilon, Mode::StrictHomomorphism).expect("shape")
}

/// `C*(G) ≅ ⊕_π M_{d_π}` with `Δλ_g = λ_g⊗λ_g` and `ελ_g = 1`, extended
/// linearly through Fourier inversion.
pub fn group_cstar_bialgebra(group: &SemigroupTable, irreps: &IrrepTable) -> Result<Bialgebra> {
    group.require_group()?;
    let alg = Algebra::new(irreps.dims())?;
    let order = group.order();
    let tt = tensor_algebra(&alg, &alg);
    let lambdas: Vec<Element> = (0..order).map(|g| lambda_element(&alg, irreps, g)).collect();
    let mut lifted = CMat::zeros(tt.dim(), order);
    for (g, l) in lambdas.iter().enumerate() {
        lifted.set_column(g, &tt.coords(&tensor_element(l, l))?);
    }
    let fourier = fourier_matrix(&alg, irreps, order);
    let delta = LinearMap::new(alg.clone(), tt, lifted * &fourier)?;
    // ε(E) = Σ_g c_g(E)
    let eps_values = CVec::from_fn(alg.dim(), |j, _| fourier.column(j).sum());
    let epsilon = Functional::from_values(&alg, &eps_values)?;
    Bialgebra::new(alg, delta, epsilon, Mode::StrictHomomorphism)
}

/// `λ_g ↦ ⊕_π π(g)`.
pub(crate) fn lambda_element(alg: &Algebra, irreps: &IrrepTable, g: usize) -> Element {
    let blocks = irreps.irreps().iter().map(|p| p.matrices[g].clone()).collect();
    alg.element_from_blocks(blocks).expect("dims match irreps")
}

/// `F[g, j] = c_g(E_j) = Σ_π (d_π/|G|)·tr(π(g)ᴴ·(E_j)_π)`: coefficient of
/// `λ_g` in the canonical basis element `E_j`.
pub(crate) fn fourier_matrix(alg: &Algebra, irreps: &IrrepTable, order: usize) -> CMat {
    let mut f = CMat::zeros(order, alg.dim());
    for j in 0..alg.dim() {
        let idx = alg.basis_index(j);
        let p = &irreps.irreps()[idx.block];
        let w = p.dim as f64 / order as f64;
        for g in 0..order {
            // tr(Uᴴ E_{rs}) = conj(U[r, s])
            f[(g, j)] = c(w) * p.matrices[g][(idx.row, idx.col)].conj();
        }
    }
    f
}
