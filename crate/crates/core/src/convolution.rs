//! The convolution algebra `(𝔹*, ⋆)`, translation maps and exponentiation of
//! generating functionals.

use serde::Serialize;

use crate::bialgebra::{Bialgebra, LinearMap};
use crate::error::{Error, Result};
use crate::fdcstar::{tensor_functional, Functional};
use crate::linalg::{self, c, CMat, CVec};

/// `(λ⋆μ)(a) = (λ⊗μ)(Δa)`.
pub fn convolve(b: &Bialgebra, lambda: &Functional, mu: &Functional) -> Result<Functional> {
    lambda.check_against(b.algebra())?;
    mu.check_against(b.algebra())?;
    let pair = tensor_functional(lambda, mu).values();
    let v = b.delta().matrix().transpose() * pair;
    Functional::from_values(b.algebra(), &v)
}

/// `L_μ = (μ⊗id)Δ`.
pub fn l_map(b: &Bialgebra, mu: &Functional) -> Result<LinearMap> {
    LinearMap::slice_left(b.algebra(), b.algebra(), mu)?.compose(b.delta())
}

/// `R_μ = (id⊗μ)Δ`.
pub fn r_map(b: &Bialgebra, mu: &Functional) -> Result<LinearMap> {
    LinearMap::slice_right(b.algebra(), b.algebra(), mu)?.compose(b.delta())
}

/// Matrix of `ν ↦ γ⋆ν` on canonical value vectors. Since
/// `(γ⋆ν)(a) = ν(L_γ a)` this is the transpose of `L_γ`.
pub fn left_convolution_matrix(b: &Bialgebra, gamma: &Functional) -> Result<CMat> {
    Ok(l_map(b, gamma)?.matrix().transpose())
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Precondition(format!("time must be finite and ≥ 0, got {t}")));
    }
    Ok(())
}

/// `exp_⋆(tγ) = Σ (tγ)^{⋆n}/n!`, evaluated as `exp(t·M_γ)` applied to the
/// value vector of `ε`.
pub fn exp_conv(b: &Bialgebra, gamma: &Functional, t: f64, tol: f64) -> Result<Functional> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(b.epsilon().clone());
    }
    let m = left_convolution_matrix(b, gamma)? * c(t);
    let v = linalg::expm_tol(&m, tol) * b.epsilon().values();
    Functional::from_values(b.algebra(), &v)
}

/// Reference evaluation of `exp_⋆(tγ)` by summing convolution powers
/// directly, stopping once `(t‖γ‖)^{n+1}/(n+1)!·e^{t‖γ‖} ≤ tol`.
pub fn exp_conv_series(b: &Bialgebra, gamma: &Functional, t: f64, tol: f64) -> Result<Functional> {
    check_time(t)?;
    let x = t * gamma.norm();
    let tg = gamma.scale(c(t));
    let mut sum = b.epsilon().clone();
    let mut term = b.epsilon().clone();
    let mut bound = 1.0;
    for n in 1..400 {
        term = &convolve(b, &term, &tg)? * (1.0 / n as f64);
        sum = &sum + &term;
        bound *= x / (n + 1) as f64;
        if bound * x.exp() <= tol {
            break;
        }
    }
    Ok(sum)
}

/// Diagnostics for a candidate generating functional.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorDiagnostics {
    pub hermitian: bool,
    pub conditionally_positive: bool,
    pub vanishes_at_unit: bool,
    pub hermitian_residual: f64,
    /// Smallest eigenvalue over the dual blocks away from the counit block.
    pub min_eig_off_counit: f64,
    pub value_at_unit: f64,
}

impl GeneratorDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.hermitian && self.conditionally_positive && self.vanishes_at_unit
    }
}

/// A functional together with its generator diagnostics.
#[derive(Debug, Clone)]
pub struct GeneratingFunctional {
    functional: Functional,
    diagnostics: GeneratorDiagnostics,
}

impl GeneratingFunctional {
    pub fn new(b: &Bialgebra, gamma: Functional, tol: f64) -> Result<Self> {
        let diagnostics = is_generating_functional(b, &gamma, tol)?;
        Ok(Self {
            functional: gamma,
            diagnostics,
        })
    }

    pub fn functional(&self) -> &Functional {
        &self.functional
    }

    pub fn diagnostics(&self) -> &GeneratorDiagnostics {
        &self.diagnostics
    }

    pub fn is_valid(&self) -> bool {
        self.diagnostics.is_valid()
    }
}

/// Hermitian, `γ(1) = 0`, and PSD dual blocks off the counit block.
///
/// For a character counit on a multi-matrix algebra, `𝔹₊ ∩ Ker ε` is the
/// positive cone of `𝔹₀`, so conditional positivity is exactly positivity of
/// the remaining dual blocks.
pub fn is_generating_functional(b: &Bialgebra, gamma: &Functional, tol: f64) -> Result<GeneratorDiagnostics> {
    gamma.check_against(b.algebra())?;
    let omega = b.discrete_type_decomposition()?.omega_block;
    let hermitian_residual = gamma.hermitian_residual();
    let min_eig_off_counit = gamma
        .blocks()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != omega)
        .map(|(_, m)| linalg::min_eigenvalue(m))
        .fold(f64::INFINITY, f64::min);
    let unit = gamma.at_unit();
    Ok(GeneratorDiagnostics {
        hermitian: hermitian_residual <= tol,
        conditionally_positive: min_eig_off_counit >= -tol,
        vanishes_at_unit: unit.norm() <= tol,
        hermitian_residual,
        min_eig_off_counit,
        value_at_unit: unit.norm(),
    })
}

/// Outcome of [`norm_continuity_bound`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityBound {
    /// `Ĉ = max(sup λ_t(p)/t over the sampled times, 1/T)`.
    pub c_hat: f64,
    pub gamma_norm: f64,
    /// `‖γ‖ ≤ 2Ĉ + tol`.
    pub satisfied: bool,
    /// Time at which the sampled supremum was attained.
    pub argmax_t: f64,
}

/// Smallest exponent `k` of the geometric refinement `t = 2^{-k}` toward 0.
pub const REFINEMENT_DEPTH: i32 = 40;

/// Bound `Ĉ ≥ sup_{t>0} λ_t(p)/t` from sampled times and check `‖γ‖ ≤ 2Ĉ`.
///
/// The supplied grid covers `(0, T]`; the `1/T` term dominates every
/// `t > T` because `λ_t(p) ≤ 1`. Toward `0⁺` the grid is refined
/// geometrically down to `2^{-40}`. Small times are evaluated as
/// `⟨φ₁(tM)γ, p⟩` with `φ₁(z) = (eᶻ − 1)/z`, which avoids the cancellation in
/// `(λ_t − ε)(p)/t`.
pub fn norm_continuity_bound(b: &Bialgebra, gamma: &Functional, grid: &[f64], tol: f64) -> Result<ContinuityBound> {
    let diag = is_generating_functional(b, gamma, tol)?;
    if !diag.is_valid() {
        return Err(Error::Precondition(format!(
            "norm_continuity_bound needs a valid generating functional: {diag:?}"
        )));
    }
    if grid.is_empty() || grid.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
        return Err(Error::Precondition(
            "grid must be non-empty and contain positive times".into(),
        ));
    }
    let big_t = grid.iter().copied().fold(0.0, f64::max);
    let t_min = grid.iter().copied().fold(f64::INFINITY, f64::min);
    let mut times: Vec<f64> = grid.to_vec();
    let mut k = (-t_min.log2()).floor() as i32 + 1;
    while k <= REFINEMENT_DEPTH {
        times.push(0.5f64.powi(k));
        k += 1;
    }
    let dec = b.discrete_type_decomposition()?;
    let p = b.algebra().coords(&dec.p)?;
    let m = left_convolution_matrix(b, gamma)?;
    let m_norm = linalg::norm_one(&m);
    let gv = gamma.values();
    let eps = b.epsilon().values();

    let mut best = (1.0 / big_t, big_t);
    for &t in &times {
        let ratio = if t * m_norm <= 1.0 {
            let v = linalg::phi1(&(&m * c(t))) * &gv;
            pair(&v, &p)
        } else {
            let v = linalg::expm(&(&m * c(t))) * &eps;
            pair(&v, &p) / t
        };
        if ratio > best.0 {
            best = (ratio, t);
        }
    }
    let gamma_norm = gamma.norm();
    Ok(ContinuityBound {
        c_hat: best.0,
        gamma_norm,
        satisfied: gamma_norm <= 2.0 * best.0 + tol,
        argmax_t: best.1,
    })
}

fn pair(values: &CVec, coords: &CVec) -> f64 {
    values
        .iter()
        .zip(coords.iter())
        .map(|(v, x)| v * x)
        .sum::<linalg::C64>()
        .re
}

/// `‖λ_t − ε‖` at each requested time.
pub fn continuity_moduli(b: &Bialgebra, gamma: &Functional, times: &[f64], tol: f64) -> Result<Vec<f64>> {
    times
        .iter()
        .map(|&t| Ok((&exp_conv(b, gamma, t, tol)? - b.epsilon()).norm()))
        .collect()
}

/// Default Schönberg grid `{2^{-10}, 2^{-9}, …, 2^3}`.
pub fn schonberg_grid() -> Vec<f64> {
    (-10..=3).map(|k| 2f64.powi(k)).collect()
}

/// State check of `λ_t` at one time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateCheck {
    pub t: f64,
    pub min_dual_eig: f64,
    pub unit_deviation: f64,
    pub hermitian_residual: f64,
    pub is_state: bool,
}

pub fn state_check(lambda: &Functional, t: f64, tol: f64) -> StateCheck {
    let min_dual_eig = lambda.min_eigenvalue();
    let unit_deviation = (lambda.at_unit() - linalg::ONE).norm();
    let hermitian_residual = lambda.hermitian_residual();
    StateCheck {
        t,
        min_dual_eig,
        unit_deviation,
        hermitian_residual,
        is_state: min_dual_eig >= -tol && unit_deviation <= tol && hermitian_residual <= tol,
    }
}

/// Evaluate `exp_⋆(tγ)` on a grid and check each is a state.
pub fn schonberg_scan(b: &Bialgebra, gamma: &Functional, grid: &[f64], tol: f64) -> Result<Vec<StateCheck>> {
    grid.iter()
        .map(|&t| Ok(state_check(&exp_conv(b, gamma, t, tol)?, t, tol)))
        .collect()
}
