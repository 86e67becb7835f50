//! Seeded random test data.
//!
//! All generators take an explicit RNG so that a single seed reproduces a
//! whole battery. Valid generating functionals and conditionally
//! positive-definite functions are produced constructively, never by
//! rejection.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::bialgebra::{Bialgebra, SemigroupTable};
use crate::error::{Error, Result};
use crate::fdcstar::{Algebra, Element, Functional};
use crate::groupfun::{GroupFunction, Measure};
use crate::linalg::{self, c, CMat, CVec, C64};

pub fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| gaussian_complex(rng))
}

pub fn random_element<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R) -> Element {
    let blocks = alg.blocks().iter().map(|&n| gaussian_matrix(rng, n, n)).collect();
    alg.element_from_blocks(blocks).expect("shapes match")
}

pub fn random_functional<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R) -> Functional {
    let blocks = alg.blocks().iter().map(|&n| gaussian_matrix(rng, n, n)).collect();
    Functional::from_blocks(alg, blocks).expect("shapes match")
}

pub fn random_hermitian_functional<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R) -> Functional {
    let mu = random_functional(alg, rng);
    &(&mu + &mu.adjoint()) * 0.5
}

fn random_psd<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    let g = gaussian_matrix(rng, n, n);
    &g * g.adjoint()
}

/// Positive functional with total mass `mass`.
pub fn random_positive<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R, mass: f64) -> Functional {
    let blocks: Vec<CMat> = alg.blocks().iter().map(|&n| random_psd(rng, n)).collect();
    let total: f64 = blocks.iter().map(|b| b.trace().re).sum();
    let blocks = blocks.into_iter().map(|b| b * c(mass / total)).collect();
    Functional::from_blocks(alg, blocks).expect("shapes match")
}

pub fn random_state<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R) -> Functional {
    random_positive(alg, rng, 1.0)
}

/// Valid generating functional: PSD dual blocks away from the counit block
/// with total trace `rate ∈ [0.1, 1.5)`, and `-rate` on the counit block, so
/// that `‖γ‖ = 2·rate`.
pub fn random_generating_functional<R: Rng + ?Sized>(b: &Bialgebra, rng: &mut R) -> Result<Functional> {
    let omega = b.discrete_type_decomposition()?.omega_block;
    let alg = b.algebra();
    let rate = rng.random_range(0.1..1.5);
    let mut blocks: Vec<CMat> = alg.blocks().iter().map(|&n| random_psd(rng, n)).collect();
    blocks[omega] = CMat::zeros(1, 1);
    if blocks.len() == 1 {
        // the counit block alone: 0 is the only generator
        return Ok(Functional::zero(alg));
    }
    let total: f64 = blocks.iter().map(|m| m.trace().re).sum();
    for m in blocks.iter_mut() {
        *m *= c(rate / total);
    }
    blocks[omega][(0, 0)] = c(-rate);
    Functional::from_blocks(alg, blocks)
}

/// Break conditional positivity of a valid generator: the smallest eigenvalue
/// of one non-counit dual block is replaced by `-depth`, and the counit block
/// is re-balanced so that `γ(1) = 0` still holds.
pub fn inject_negative_eigenvalue<R: Rng + ?Sized>(
    b: &Bialgebra,
    gamma: &Functional,
    depth: f64,
    rng: &mut R,
) -> Result<Functional> {
    let omega = b.discrete_type_decomposition()?.omega_block;
    let candidates: Vec<usize> = (0..gamma.blocks().len()).filter(|&i| i != omega).collect();
    if candidates.is_empty() {
        return Err(Error::Precondition("no dual block besides the counit block".into()));
    }
    let target = candidates[rng.random_range(0..candidates.len())];
    let mut blocks = gamma.blocks().to_vec();
    let eig = linalg::eigh(&blocks[target]);
    let mut vals = eig.values.clone();
    vals[0] = -depth;
    let d = CMat::from_diagonal(&CVec::from_iterator(vals.len(), vals.iter().map(|&x| c(x))));
    blocks[target] = &eig.vectors * d * eig.vectors.adjoint();
    blocks[omega] = CMat::zeros(1, 1);
    let rest: C64 = blocks.iter().map(|m| m.trace()).sum();
    blocks[omega][(0, 0)] = c(-rest.re);
    Functional::from_blocks(b.algebra(), blocks)
}

pub fn random_probability<R: Rng + ?Sized>(monoid: &SemigroupTable, rng: &mut R) -> Measure {
    let raw: Vec<f64> = (0..monoid.order()).map(|_| rng.random_range(0.0..1.0)).collect();
    let total: f64 = raw.iter().sum();
    Measure::new(monoid.clone(), raw.into_iter().map(|x| x / total).collect()).expect("weights sized to the monoid")
}

/// `φ(g) = Σ_h ⟨v_h, v_{gh}⟩` for random vectors `v_h ∈ ℂ^width`; always
/// positive-definite.
pub fn random_gram_function<R: Rng + ?Sized>(g: &SemigroupTable, width: usize, rng: &mut R) -> GroupFunction {
    let vs: Vec<CVec> = (0..g.order())
        .map(|_| CVec::from_fn(width, |_, _| gaussian_complex(rng)))
        .collect();
    let values = (0..g.order())
        .map(|x| (0..g.order()).map(|h| vs[h].dotc(&vs[g.mul(x, h)])).sum::<C64>())
        .collect();
    GroupFunction::new(g.clone(), values).expect("values sized to the group")
}

/// Hermitian conditionally positive-definite `ψ = φ − φ(e)` with `ψ(e) = 0`.
pub fn random_cond_positive_function<R: Rng + ?Sized>(g: &SemigroupTable, rng: &mut R) -> GroupFunction {
    let phi = random_gram_function(g, 2, rng);
    let at_e = phi.values()[g.identity()];
    let values = phi.values().iter().map(|&v| v - at_e).collect();
    GroupFunction::new(g.clone(), values).expect("values sized to the group")
}
