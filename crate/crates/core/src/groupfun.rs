//! Functions on finite groups: positive-definite and conditionally
//! positive-definite classes, the correspondence with functionals on
//! `C*(G)`, the Guichardet constant, and compound Poisson semigroups of
//! probability measures on finite monoids.

use serde::Serialize;

use crate::bialgebra::{self, function_bialgebra, group_cstar_bialgebra, IrrepTable, SemigroupTable};
use crate::error::{Error, Result};
use crate::fdcstar::{gns, Algebra, Element, Functional, GnsData};
use crate::linalg::{self, c, CMat, CVec, C64, ZERO};

/// A complex-valued function on a finite group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    group: SemigroupTable,
    values: Vec<C64>,
}

impl GroupFunction {
    pub fn new(group: SemigroupTable, values: Vec<C64>) -> Result<Self> {
        group.require_group()?;
        if values.len() != group.order() {
            return Err(Error::Shape(format!(
                "{} values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        Ok(Self { group, values })
    }

    pub fn from_real(group: SemigroupTable, values: &[f64]) -> Result<Self> {
        Self::new(group, values.iter().map(|&x| c(x)).collect())
    }

    pub fn constant(group: SemigroupTable, value: C64) -> Result<Self> {
        let n = group.order();
        Self::new(group, vec![value; n])
    }

    /// Indicator of the identity.
    pub fn delta_e(group: SemigroupTable) -> Result<Self> {
        let mut values = vec![ZERO; group.order()];
        values[group.identity()] = c(1.0);
        Self::new(group, values)
    }

    pub fn group(&self) -> &SemigroupTable {
        &self.group
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn at(&self, g: usize) -> C64 {
        self.values[g]
    }

    pub fn at_identity(&self) -> C64 {
        self.values[self.group.identity()]
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            group: self.group.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn add_constant(&self, z: C64) -> Self {
        self.map(|v| v + z)
    }

    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        Ok(Self {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    /// `1/|G|·Σ_g f(g)`.
    pub fn mean(&self) -> C64 {
        self.values.iter().sum::<C64>() / c(self.values.len() as f64)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max_g |f(g⁻¹) − conj f(g)|`.
    pub fn hermitian_residual(&self) -> f64 {
        let inv = self.group.require_group().expect("checked at construction");
        (0..self.values.len())
            .map(|g| (self.values[inv[g]] - self.values[g].conj()).norm())
            .fold(0.0, f64::max)
    }

    fn check_same_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::Shape("functions live on different groups".into()));
        }
        Ok(())
    }
}

/// `K[g, h] = f(g⁻¹h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix {
    matrix: CMat,
}

impl KernelMatrix {
    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    pub fn hermitian_residual(&self) -> f64 {
        linalg::hermitian_residual(&self.matrix)
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        linalg::min_eigenvalue(&self.matrix)
    }

    /// `P·K·P` with `P = I − J/|G|` the projection onto `{z : Σ zᵢ = 0}`.
    pub fn projected(&self) -> CMat {
        let n = self.matrix.nrows();
        let p = CMat::identity(n, n) - CMat::from_element(n, n, c(1.0 / n as f64));
        &p * &self.matrix * &p
    }

    /// `max |(K·𝟙)ᵢ|`.
    pub fn ones_residual(&self) -> f64 {
        let ones = CVec::from_element(self.matrix.ncols(), c(1.0));
        (&self.matrix * ones).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

pub fn kernel_matrix(f: &GroupFunction) -> Result<KernelMatrix> {
    let inv = f.group.require_group()?;
    let n = f.group.order();
    let matrix = CMat::from_fn(n, n, |g, h| f.values[f.group.mul(inv[g], h)]);
    Ok(KernelMatrix { matrix })
}

/// Kernel Hermitian and PSD within `tol`.
pub fn is_positive_definite(phi: &GroupFunction, tol: f64) -> Result<bool> {
    let k = kernel_matrix(phi)?;
    Ok(k.hermitian_residual() <= tol && k.min_eigenvalue() >= -tol)
}

/// `P·K·P` Hermitian and PSD within `tol`.
pub fn is_cond_positive_definite(psi: &GroupFunction, tol: f64) -> Result<bool> {
    let pkp = kernel_matrix(psi)?.projected();
    Ok(linalg::hermitian_residual(&pkp) <= tol && linalg::min_eigenvalue(&pkp) >= -tol)
}

/// `ψ(g⁻¹) = conj ψ(g)` for all `g`, within `tol`.
pub fn is_hermitian_function(psi: &GroupFunction, tol: f64) -> bool {
    psi.hermitian_residual() <= tol
}

/// Pointwise `e^{tψ}`.
pub fn schonberg_exp(psi: &GroupFunction, t: f64) -> GroupFunction {
    psi.map(|v| (v * c(t)).exp())
}

/// Which of the Guichardet hypotheses hold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsiDiagnostics {
    pub hermitian: bool,
    pub conditionally_positive: bool,
    pub vanishes_at_identity: bool,
    pub hermitian_residual: f64,
    /// Smallest eigenvalue of `P·K·P`.
    pub projected_min_eig: f64,
    /// `|ψ(e)|`.
    pub value_at_identity: f64,
}

impl PsiDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.hermitian && self.conditionally_positive && self.vanishes_at_identity
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.hermitian {
            out.push(format!("not Hermitian (residual {:e})", self.hermitian_residual));
        }
        if !self.conditionally_positive {
            out.push(format!(
                "not conditionally positive-definite (projected kernel eigenvalue {:e})",
                self.projected_min_eig
            ));
        }
        if !self.vanishes_at_identity {
            out.push(format!(
                "vanishing at identity fails (|ψ(e)| = {:e})",
                self.value_at_identity
            ));
        }
        out
    }
}

pub fn psi_diagnostics(psi: &GroupFunction, tol: f64) -> Result<PsiDiagnostics> {
    let pkp = kernel_matrix(psi)?.projected();
    let hermitian_residual = psi.hermitian_residual();
    let projected_min_eig = linalg::min_eigenvalue(&pkp);
    let value_at_identity = psi.at_identity().norm();
    Ok(PsiDiagnostics {
        hermitian: hermitian_residual <= tol,
        conditionally_positive: projected_min_eig >= -tol && linalg::hermitian_residual(&pkp) <= tol,
        vanishes_at_identity: value_at_identity <= tol,
        hermitian_residual,
        projected_min_eig,
        value_at_identity,
    })
}

fn require_valid_psi(psi: &GroupFunction, tol: f64) -> Result<()> {
    let d = psi_diagnostics(psi, tol)?;
    if d.is_valid() {
        Ok(())
    } else {
        Err(Error::Precondition(d.violations().join("; ")))
    }
}

/// Shift used by the minimality witness.
pub const MINIMALITY_DELTA: f64 = 1e-3;

/// `φ = ψ + c` with the eigenvalue certificate for `c = −mean(ψ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Guichardet {
    pub c: f64,
    pub phi: GroupFunction,
    pub certificate: GuichardetCertificate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GuichardetCertificate {
    /// Smallest eigenvalue of `K_{ψ+c}`.
    pub min_eigenvalue: f64,
    /// `‖K_{ψ+c}·𝟙‖_∞`.
    pub ones_residual: f64,
    pub delta: f64,
    /// Smallest eigenvalue of `K_{ψ+c−δ}`; should be `≤ −δ|G|`.
    pub shifted_min_eigenvalue: f64,
    pub passed: bool,
}

/// Minimal `c ≥ 0` making `ψ + c` positive-definite.
///
/// `K_ψ·𝟙 = (Σψ)·𝟙`, so `𝟙` is annihilated by `K_{ψ+c}` exactly at
/// `c = −mean(ψ)`; on `𝟙⊥` the kernel is `P·K_ψ·P ≥ 0`. Lowering `c` by `δ`
/// gives `𝟙` the eigenvalue `−δ|G|`.
pub fn guichardet_constant(psi: &GroupFunction, tol: f64) -> Result<Guichardet> {
    require_valid_psi(psi, tol)?;
    let cst = -psi.mean().re;
    let phi = psi.add_constant(c(cst));
    let k = kernel_matrix(&phi)?;
    let min_eigenvalue = k.min_eigenvalue();
    let ones_residual = k.ones_residual();
    let shifted = kernel_matrix(&phi.add_constant(c(-MINIMALITY_DELTA)))?;
    let shifted_min_eigenvalue = shifted.min_eigenvalue();
    let order = psi.group.order() as f64;
    let passed =
        min_eigenvalue >= -tol && ones_residual <= tol && shifted_min_eigenvalue <= -MINIMALITY_DELTA * order + tol;
    Ok(Guichardet {
        c: cst,
        phi,
        certificate: GuichardetCertificate {
            min_eigenvalue,
            ones_residual,
            delta: MINIMALITY_DELTA,
            shifted_min_eigenvalue,
            passed,
        },
    })
}

fn check_irreps(group: &SemigroupTable, irreps: &IrrepTable) -> Result<Algebra> {
    group.require_group()?;
    let order = group.order();
    if irreps.irreps().iter().any(|p| p.matrices.len() != order) {
        return Err(Error::Shape(format!(
            "irrep table does not match a group of order {order}"
        )));
    }
    let total: usize = irreps.dims().iter().map(|d| d * d).sum();
    if total != order {
        return Err(Error::Precondition(format!(
            "irreps incomplete: Σ d² = {total}, |G| = {order}"
        )));
    }
    Algebra::new(irreps.dims())
}

/// `λ_g = ⊕_π π(g)` in `C*(G)`.
pub fn lambda_element(group: &SemigroupTable, irreps: &IrrepTable, g: usize) -> Result<Element> {
    let alg = check_irreps(group, irreps)?;
    if g >= group.order() {
        return Err(Error::Shape(format!(
            "element {g} outside a group of order {}",
            group.order()
        )));
    }
    Ok(bialgebra::lambda_element(&alg, irreps, g))
}

/// `ρ_π = (d_π/|G|)·Σ_g φ(g)·π(g)ᴴ`, so that `ω(λ_h) = φ(h)`.
pub fn functional_from_function(irreps: &IrrepTable, phi: &GroupFunction) -> Result<Functional> {
    let alg = check_irreps(&phi.group, irreps)?;
    let order = phi.group.order() as f64;
    let blocks = irreps
        .irreps()
        .iter()
        .map(|p| {
            let mut rho = CMat::zeros(p.dim, p.dim);
            for (g, &v) in phi.values.iter().enumerate() {
                rho += p.matrices[g].adjoint() * v;
            }
            rho * c(p.dim as f64 / order)
        })
        .collect();
    Functional::from_blocks(&alg, blocks)
}

/// `φ(g) = ω(λ_g)`.
pub fn function_from_functional(
    group: &SemigroupTable,
    irreps: &IrrepTable,
    omega: &Functional,
) -> Result<GroupFunction> {
    let alg = check_irreps(group, irreps)?;
    omega.check_against(&alg)?;
    let values = (0..group.order())
        .map(|g| omega.apply(&bialgebra::lambda_element(&alg, irreps, g)))
        .collect();
    GroupFunction::new(group.clone(), values)
}

/// Guichardet constant through the GNS representation of `γ(p·p)`.
#[derive(Debug, Clone)]
pub struct GnsGuichardet {
    /// `ω(1) = γ(p)`.
    pub c: f64,
    /// `φ(g) = ⟨η, π(λ_g)η⟩`.
    pub phi: GroupFunction,
    pub gns: GnsData,
    /// `max_g |φ(g) − φ(e) − ψ(g)|`.
    pub reconstruction_residual: f64,
    /// Constant from the kernel route.
    pub c_kernel: f64,
    /// `|c − c_kernel|`.
    pub agreement: f64,
    pub passed: bool,
}

pub fn guichardet_via_gns(irreps: &IrrepTable, psi: &GroupFunction, tol: f64) -> Result<GnsGuichardet> {
    let kernel_route = guichardet_constant(psi, tol)?;
    let group = psi.group();
    let b = group_cstar_bialgebra(group, irreps)?;
    let alg = b.algebra();
    let gamma = functional_from_function(irreps, psi)?;
    let p = b.discrete_type_decomposition_tol(tol)?.p;
    // ω(a) = γ(p·a·p) has dual blocks pᵢ·ρᵢ·pᵢ
    let blocks = gamma
        .blocks()
        .iter()
        .zip(p.blocks())
        .map(|(rho, pi)| pi * rho * pi)
        .collect();
    let omega = Functional::from_blocks(alg, blocks)?;
    let rep = gns(alg, &omega, tol)?;
    let values = (0..group.order())
        .map(|g| rep.vector_state(&bialgebra::lambda_element(alg, irreps, g)))
        .collect::<Result<Vec<_>>>()?;
    let phi = GroupFunction::new(group.clone(), values)?;
    let cst = rep.cyclic_vector().norm_squared();
    let reconstruction_residual = phi.add_constant(-phi.at_identity()).max_abs_diff(psi);
    let agreement = (cst - kernel_route.c).abs();
    Ok(GnsGuichardet {
        c: cst,
        phi,
        gns: rep,
        reconstruction_residual,
        c_kernel: kernel_route.c,
        agreement,
        passed: reconstruction_residual <= tol && agreement <= tol,
    })
}

/// A signed or probability measure on a finite monoid.
#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    monoid: SemigroupTable,
    weights: Vec<f64>,
}

impl Measure {
    pub fn new(monoid: SemigroupTable, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != monoid.order() {
            return Err(Error::Shape(format!(
                "{} weights for a monoid of order {}",
                weights.len(),
                monoid.order()
            )));
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::Construction("measure weights must be finite".into()));
        }
        Ok(Self { monoid, weights })
    }

    /// Point mass at `x`.
    pub fn dirac(monoid: SemigroupTable, x: usize) -> Result<Self> {
        let mut weights = vec![0.0; monoid.order()];
        *weights
            .get_mut(x)
            .ok_or_else(|| Error::Shape(format!("point {x} outside the monoid")))? = 1.0;
        Self::new(monoid, weights)
    }

    pub fn monoid(&self) -> &SemigroupTable {
        &self.monoid
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn is_probability(&self, tol: f64) -> bool {
        self.weights.iter().all(|&w| w >= -tol) && (self.total_mass() - 1.0).abs() <= tol
    }

    /// `(μ⋆ν)(g) = Σ_{hk=g} μ(h)·ν(k)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.monoid != other.monoid {
            return Err(Error::Shape("measures live on different monoids".into()));
        }
        let mut weights = vec![0.0; self.weights.len()];
        for (h, &a) in self.weights.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (k, &b) in other.weights.iter().enumerate() {
                weights[self.monoid.mul(h, k)] += a * b;
            }
        }
        Self::new(self.monoid.clone(), weights)
    }

    /// The functional `F ↦ Σ_g μ(g)·F(g)` on `C(Γ)`.
    pub fn to_functional(&self) -> Functional {
        let alg = function_bialgebra(&self.monoid).algebra().clone();
        let v = CVec::from_iterator(self.weights.len(), self.weights.iter().map(|&w| c(w)));
        Functional::from_values(&alg, &v).expect("one value per point")
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Tail mass bound for the truncated Poisson series.
pub const POISSON_TAIL: f64 = 1e-12;

/// `μ_t = e^{−at}·Σ_n (at)^n/n!·ν^{⋆n}`, the semigroup generated by
/// `a(ν − δ_e)`.
pub fn measure_semigroup(nu: &Measure, rate: f64, t: f64) -> Result<Measure> {
    if !nu.is_probability(1e-12) {
        return Err(Error::Precondition("ν must be a probability measure".into()));
    }
    if !(rate >= 0.0 && rate.is_finite() && t >= 0.0 && t.is_finite()) {
        return Err(Error::Precondition(format!(
            "need rate ≥ 0 and t ≥ 0, got a = {rate}, t = {t}"
        )));
    }
    let x = rate * t;
    let monoid = nu.monoid().clone();
    let mut power = Measure::dirac(monoid.clone(), monoid.identity())?;
    let mut acc = vec![0.0; monoid.order()];
    // log-space weights stay finite for large `x`
    let mut log_w = -x;
    let mut n = 0usize;
    loop {
        let w = log_w.exp();
        for (a, p) in acc.iter_mut().zip(power.weights()) {
            *a += w * p;
        }
        // Σ_{k>n} w_k ≤ w_{n+1}/(1 − x/(n+2)) once n + 2 > x
        let next = if x == 0.0 {
            0.0
        } else {
            (log_w + x.ln() - ((n + 1) as f64).ln()).exp()
        };
        let ratio = x / (n + 2) as f64;
        if ratio < 1.0 && next / (1.0 - ratio) <= POISSON_TAIL {
            break;
        }
        n += 1;
        log_w += x.ln() - (n as f64).ln();
        power = power.convolve(nu)?;
    }
    Measure::new(monoid, acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::fixtures;
    use crate::convolution::{convolve, exp_conv};
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z2() -> SemigroupTable {
        SemigroupTable::cyclic(2)
    }

    /// Sign character of S3 in the fixture ordering.
    fn sign_s3() -> GroupFunction {
        GroupFunction::from_real(fixtures::s3().0, &[1.0, -1.0, -1.0, -1.0, 1.0, 1.0]).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let g = SemigroupTable::cyclic(4);
        let k = kernel_matrix(&GroupFunction::delta_e(g.clone()).unwrap()).unwrap();
        assert_eq!(k.matrix(), &CMat::identity(4, 4));
        let k = kernel_matrix(&GroupFunction::constant(g, c(2.5)).unwrap()).unwrap();
        assert_eq!(k.matrix(), &CMat::from_element(4, 4, c(2.5)));
        let k = kernel_matrix(&GroupFunction::from_real(z2(), &[0.0, -2.0]).unwrap()).unwrap();
        assert_eq!(
            k.matrix(),
            &CMat::from_row_slice(2, 2, &[c(0.0), c(-2.0), c(-2.0), c(0.0)])
        );
    }

    #[test]
    fn non_group_rejected() {
        let monoid = SemigroupTable::new(vec![vec![0, 1], vec![1, 1]], None).unwrap();
        assert!(GroupFunction::new(monoid, vec![ZERO; 2]).is_err());
    }

    #[test]
    fn kernel_rows_are_translates() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let (g, _) = fixtures::q8();
        for _ in 0..10 {
            let f = GroupFunction::new(
                g.clone(),
                (0..8).map(|_| sampling::gaussian_complex(&mut rng)).collect(),
            )
            .unwrap();
            let k = kernel_matrix(&f).unwrap();
            let total: C64 = f.values().iter().sum();
            let ones = CVec::from_element(8, c(1.0));
            let row_sums = k.matrix() * ones;
            assert!(row_sums.iter().all(|s| (s - total).norm() <= 1e-12));
            for r in 0..8 {
                let mut row: Vec<(f64, f64)> = k.matrix().row(r).iter().map(|z| (z.re, z.im)).collect();
                let mut vals: Vec<(f64, f64)> = f.values().iter().map(|z| (z.re, z.im)).collect();
                row.sort_by(|a, b| a.partial_cmp(b).unwrap());
                vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
                assert_eq!(row, vals);
            }
        }
    }

    #[test]
    fn positive_definite_examples() {
        assert!(is_positive_definite(&sign_s3(), 1e-12).unwrap());
        let g = SemigroupTable::cyclic(5);
        assert!(is_positive_definite(&GroupFunction::delta_e(g.clone()).unwrap(), 1e-12).unwrap());
        let last = GroupFunction::from_real(g, &[0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(!is_positive_definite(&last, 1e-9).unwrap());
    }

    #[test]
    fn conditional_positivity_examples() {
        let psi = GroupFunction::from_real(z2(), &[0.0, -2.0]).unwrap();
        assert!(is_cond_positive_definite(&psi, 1e-12).unwrap());
        assert!(is_hermitian_function(&psi, 1e-12));
        // z = (1, −1): z*Kz = 4
        let k = kernel_matrix(&psi).unwrap();
        let z = CVec::from_row_slice(&[c(1.0), c(-1.0)]);
        assert!((z.dotc(&(k.matrix() * &z)) - c(4.0)).norm() < 1e-15);
        let psi = GroupFunction::new(z2(), vec![ZERO, c(0.0) + C64::i()]).unwrap();
        assert!(!is_hermitian_function(&psi, 1e-9));
        // φ − φ(e) for positive-definite φ
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (g, _) = fixtures::d4();
        for _ in 0..10 {
            let phi = sampling::random_gram_function(&g, 3, &mut rng);
            assert!(is_positive_definite(&phi, 1e-9).unwrap());
            let psi = phi.add_constant(-phi.at_identity());
            assert!(is_cond_positive_definite(&psi, 1e-9).unwrap());
            assert!(is_hermitian_function(&psi, 1e-9));
        }
    }

    #[test]
    fn schonberg_exponentials() {
        let psi = sign_s3().add_constant(c(-1.0));
        assert!(is_positive_definite(&schonberg_exp(&psi, 0.0), 1e-12).unwrap());
        for t in [0.01, 0.1, 0.5, 1.0, 3.0, 10.0] {
            let e = schonberg_exp(&psi, t);
            assert!(is_positive_definite(&e, 1e-12).unwrap());
            // convex combination of the trivial and sign characters
            let a = (1.0 + (-2.0 * t).exp()) / 2.0;
            let b = (1.0 - (-2.0 * t).exp()) / 2.0;
            let oracle = sign_s3().map(|s| c(a) + s * b);
            assert!(e.max_abs_diff(&oracle) < 1e-14);
        }
        // ψ(g) = +1 on transpositions is not conditionally positive; e^{tψ}
        // fails for small t.
        let bad = GroupFunction::from_real(fixtures::s3().0, &[0.0, 1.0, 1.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(!is_cond_positive_definite(&bad, 1e-9).unwrap());
        assert!([0.01, 0.1, 0.5]
            .iter()
            .any(|&t| !is_positive_definite(&schonberg_exp(&bad, t), 1e-12).unwrap()));
    }

    #[test]
    fn guichardet_examples() {
        let psi = GroupFunction::from_real(z2(), &[0.0, -2.0]).unwrap();
        let g = guichardet_constant(&psi, 1e-12).unwrap();
        assert_eq!(g.c, 1.0);
        assert!(g.certificate.passed);
        let e = linalg::eigh(kernel_matrix(&g.phi).unwrap().matrix());
        assert!((e.values[0] - 0.0).abs() < 1e-15 && (e.values[1] - 2.0).abs() < 1e-15);

        let psi = sign_s3().add_constant(c(-1.0));
        let g = guichardet_constant(&psi, 1e-12).unwrap();
        assert!((g.c - 1.0).abs() <= 1e-12);
        assert!(g.phi.max_abs_diff(&sign_s3()) < 1e-12);
        assert!(is_positive_definite(&g.phi, 1e-12).unwrap());

        let zero = GroupFunction::constant(fixtures::q8().0, ZERO).unwrap();
        assert_eq!(guichardet_constant(&zero, 1e-12).unwrap().c, 0.0);
    }

    #[test]
    fn guichardet_preconditions_reported() {
        let mut v = vec![0.0; 6];
        v[0] = 0.1;
        let psi = GroupFunction::from_real(fixtures::s3().0, &v).unwrap();
        let d = psi_diagnostics(&psi, 1e-9).unwrap();
        assert!(d.hermitian && d.conditionally_positive && !d.vanishes_at_identity);
        match guichardet_constant(&psi, 1e-9) {
            Err(Error::Precondition(m)) => assert!(m.contains("vanishing at identity"), "{m}"),
            other => panic!("{other:?}"),
        }
        let psi = GroupFunction::new(z2(), vec![ZERO, C64::i()]).unwrap();
        let d = psi_diagnostics(&psi, 1e-9).unwrap();
        assert!(!d.hermitian);
    }

    #[test]
    fn guichardet_random_and_gns() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (g, irr) in [fixtures::cyclic(4), fixtures::s3(), fixtures::q8()] {
            for _ in 0..10 {
                let psi = sampling::random_cond_positive_function(&g, &mut rng);
                let k = guichardet_constant(&psi, 1e-9).unwrap();
                assert!(k.certificate.passed, "{:?}", k.certificate);
                // brute-force minimality: scan c downward
                let lower = psi.add_constant(c(k.c - 1e-6));
                assert!(!is_positive_definite(&lower, 1e-12).unwrap());
                let v = guichardet_via_gns(&irr, &psi, 1e-9).unwrap();
                assert!(
                    v.passed,
                    "agreement {:e}, residual {:e}",
                    v.agreement, v.reconstruction_residual
                );
            }
        }
    }

    #[test]
    fn gns_route_on_hand_examples() {
        let (g, irr) = fixtures::s3();
        let psi = sign_s3().add_constant(c(-1.0));
        let v = guichardet_via_gns(&irr, &psi, 1e-9).unwrap();
        assert!((v.c - 1.0).abs() < 1e-12);
        assert_eq!(v.gns.dim(), 1);
        let zero = GroupFunction::constant(g, ZERO).unwrap();
        let v = guichardet_via_gns(&irr, &zero, 1e-9).unwrap();
        assert_eq!(v.c, 0.0);
        assert_eq!(v.gns.dim(), 0);
        assert!(v.phi.values().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn lambda_elements() {
        let (g, irr) = fixtures::d4();
        let b = group_cstar_bialgebra(&g, &irr).unwrap();
        let alg = b.algebra();
        assert_eq!(lambda_element(&g, &irr, g.identity()).unwrap(), alg.unit());
        let tt = crate::fdcstar::tensor_algebra(alg, alg);
        for x in 0..g.order() {
            let lx = lambda_element(&g, &irr, x).unwrap();
            for y in 0..g.order() {
                let prod = &lx * &lambda_element(&g, &irr, y).unwrap();
                assert!(prod.max_abs_diff(&lambda_element(&g, &irr, g.mul(x, y)).unwrap()) < 1e-12);
            }
            let img = b.delta().apply(&lx).unwrap();
            let oracle = crate::fdcstar::tensor_element(&lx, &lx);
            assert!(tt
                .coords(&img)
                .unwrap()
                .iter()
                .zip(tt.coords(&oracle).unwrap().iter())
                .all(|(a, b)| (a - b).norm() <= 1e-10));
            for blk in lx.blocks() {
                let n = blk.nrows();
                assert!(linalg::max_abs_diff(&(blk.adjoint() * blk), &CMat::identity(n, n)) < 1e-12);
            }
        }
    }

    #[test]
    fn correspondence_roundtrips() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for (g, irr) in [fixtures::s3(), fixtures::q8(), fixtures::cyclic(5)] {
            let alg = Algebra::new(irr.dims()).unwrap();
            // constant 1 ↦ counit
            let one = GroupFunction::constant(g.clone(), c(1.0)).unwrap();
            let eps = functional_from_function(&irr, &one).unwrap();
            let b = group_cstar_bialgebra(&g, &irr).unwrap();
            assert!(eps.max_abs_diff(b.epsilon()) < 1e-12);
            // δ_e ↦ ρ_π = (d_π/|G|)·1
            let tr = functional_from_function(&irr, &GroupFunction::delta_e(g.clone()).unwrap()).unwrap();
            for (rho, &d) in tr.blocks().iter().zip(&irr.dims()) {
                let target = CMat::identity(d, d) * c(d as f64 / g.order() as f64);
                assert!(linalg::max_abs_diff(rho, &target) < 1e-12);
            }
            for _ in 0..10 {
                let f = GroupFunction::new(
                    g.clone(),
                    (0..g.order()).map(|_| sampling::gaussian_complex(&mut rng)).collect(),
                )
                .unwrap();
                let w = functional_from_function(&irr, &f).unwrap();
                assert!(function_from_functional(&g, &irr, &w).unwrap().max_abs_diff(&f) <= 1e-10);
                let mu = sampling::random_functional(&alg, &mut rng);
                let back = functional_from_function(&irr, &function_from_functional(&g, &irr, &mu).unwrap()).unwrap();
                assert!(back.max_abs_diff(&mu) <= 1e-10);
                // positivity transfers both ways
                let phi = sampling::random_gram_function(&g, 2, &mut rng);
                assert!(functional_from_function(&irr, &phi).unwrap().is_positive(1e-9));
                let pos = sampling::random_positive(&alg, &mut rng, 1.0);
                assert!(is_positive_definite(&function_from_functional(&g, &irr, &pos).unwrap(), 1e-9).unwrap());
            }
        }
    }

    #[test]
    fn convolution_is_pointwise_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let (g, irr) = fixtures::q8();
        let b = group_cstar_bialgebra(&g, &irr).unwrap();
        for _ in 0..10 {
            let l = sampling::random_functional(b.algebra(), &mut rng);
            let m = sampling::random_functional(b.algebra(), &mut rng);
            let lhs = function_from_functional(&g, &irr, &convolve(&b, &l, &m).unwrap()).unwrap();
            let rhs = function_from_functional(&g, &irr, &l)
                .unwrap()
                .pointwise_mul(&function_from_functional(&g, &irr, &m).unwrap())
                .unwrap();
            assert!(lhs.max_abs_diff(&rhs) <= 1e-10);
        }
    }

    #[test]
    fn schur_product_of_positive_definite() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let (g, _) = fixtures::s3();
        for _ in 0..20 {
            let a = sampling::random_gram_function(&g, 2, &mut rng);
            let b = sampling::random_gram_function(&g, 3, &mut rng);
            assert!(is_positive_definite(&a.pointwise_mul(&b).unwrap(), 1e-9).unwrap());
        }
    }

    #[test]
    fn measure_semigroup_closed_form() {
        let nu = Measure::dirac(z2(), 1).unwrap();
        for t in [0.0, 0.25, 1.0, 4.0] {
            let mu = measure_semigroup(&nu, 1.0, t).unwrap();
            assert!((mu.weights()[1] - (1.0 - (-2.0 * t).exp()) / 2.0).abs() < 1e-12);
        }
        let mu = measure_semigroup(&nu, 0.0, 3.0).unwrap();
        assert_eq!(mu.weights(), &[1.0, 0.0]);
    }

    #[test]
    fn measure_semigroup_matches_exp_conv() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let monoid = SemigroupTable::new(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 2]], None).unwrap();
        for gamma_monoid in [SemigroupTable::cyclic(6), monoid] {
            let b = function_bialgebra(&gamma_monoid);
            for rate in [0.5, 2.0] {
                let nu = sampling::random_probability(&gamma_monoid, &mut rng);
                let e = Measure::dirac(gamma_monoid.clone(), gamma_monoid.identity()).unwrap();
                let gen = &(&nu.to_functional() - &e.to_functional()) * rate;
                for t in [0.1, 1.0, 5.0] {
                    let mu = measure_semigroup(&nu, rate, t).unwrap();
                    assert!(mu.is_probability(1e-12));
                    let lam = exp_conv(&b, &gen, t, 1e-13).unwrap();
                    assert!(mu.to_functional().max_abs_diff(&lam) <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn measure_semigroup_large_rate() {
        let nu = Measure::dirac(SemigroupTable::cyclic(3), 1).unwrap();
        let mu = measure_semigroup(&nu, 200.0, 5.0).unwrap();
        assert!(mu.is_probability(1e-12));
        assert!(mu.weights().iter().all(|&w| (w - 1.0 / 3.0).abs() < 1e-9));
    }
}
