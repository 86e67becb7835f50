//! Dense complex linear algebra used throughout the crate.
//!
//! Everything here is deterministic: Hermitian eigenproblems use cyclic
//! Jacobi sweeps, singular values use one-sided (Hestenes) Jacobi, and the
//! matrix exponential is scaling-and-squaring over a truncated Taylor series
//! whose truncation point is chosen from an explicit tail bound.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

const MAX_SWEEPS: usize = 100;

#[inline]
pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Largest entrywise modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Largest entrywise modulus of `a - b`; infinite when shapes differ.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn max_abs_vec_diff(a: &CVec, b: &CVec) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// Induced 1-norm (maximum column sum).
pub fn norm_one(m: &CMat) -> f64 {
    m.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn hermitian_residual(m: &CMat) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// Kronecker product with the convention `(X⊗Y)[(r1,r2),(s1,s2)] = X[r1,s1]·Y[r2,s2]`.
pub fn kron(x: &CMat, y: &CMat) -> CMat {
    x.kronecker(y)
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: CMat,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }
}

/// 2×2 unitary `G` with `Gᴴ [[app, apq], [conj apq, aqq]] G` diagonal.
fn jacobi_rotation(app: f64, aqq: f64, apq: C64) -> [[C64; 2]; 2] {
    let mag = apq.norm();
    let phase = apq / mag;
    let tau = (aqq - app) / (2.0 * mag);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let t = if tau == 0.0 { 1.0 } else { t };
    let cs = 1.0 / (1.0 + t * t).sqrt();
    let sn = t * cs;
    // G = diag(1, conj(phase)) · [[c, s], [-s, c]]
    let ph = phase.conj();
    [[c(cs), c(sn)], [-ph * sn, ph * cs]]
}

/// Hermitian eigensolver by cyclic Jacobi sweeps.
///
/// The input is symmetrised as `(m + mᴴ)/2` first.
pub fn eigh(m: &CMat) -> HermitianEigen {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "eigh requires a square matrix");
    let mut a = (m + m.adjoint()) * c(0.5);
    let mut v = CMat::identity(n, n);
    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if scale == 0.0 || n < 2 {
        let values = (0..n).map(|i| a[(i, i)].re).collect();
        return HermitianEigen { values, vectors: v };
    }
    let threshold = f64::EPSILON * 1e-2 * scale;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.norm() <= threshold / n as f64 {
                    continue;
                }
                let g = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, apq);
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * g[0][0] + akq * g[1][0];
                    a[(k, q)] = akp * g[0][1] + akq * g[1][1];
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = g[0][0].conj() * apk + g[1][0].conj() * aqk;
                    a[(q, k)] = g[0][1].conj() * apk + g[1][1].conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = c(a[(p, p)].re);
                a[(q, q)] = c(a[(q, q)].re);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * g[0][0] + vkq * g[1][0];
                    v[(k, q)] = vkp * g[0][1] + vkq * g[1][1];
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMat::from_fn(n, n, |r, k| v[(r, order[k])]);
    HermitianEigen { values, vectors }
}

/// Minimum eigenvalue of the Hermitian part of `m`.
pub fn min_eigenvalue(m: &CMat) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    eigh(m).min()
}

/// Singular value decomposition `a = U·diag(σ)·Vᴴ` of a square matrix.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMat,
    /// Descending singular values.
    pub sigma: Vec<f64>,
    pub v: CMat,
}

/// One-sided Jacobi SVD. `u` is completed to a full unitary when `a` is
/// rank deficient.
pub fn svd(a: &CMat) -> Svd {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "svd requires a square matrix");
    let mut w = a.clone();
    let mut v = CMat::identity(n, n);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let gamma = w.column(p).dotc(&w.column(q));
                if gamma.norm() <= f64::EPSILON * (alpha * beta).sqrt() || gamma.norm() == 0.0 {
                    continue;
                }
                rotated = true;
                let g = jacobi_rotation(alpha, beta, gamma);
                for k in 0..n {
                    let wkp = w[(k, p)];
                    let wkq = w[(k, q)];
                    w[(k, p)] = wkp * g[0][0] + wkq * g[1][0];
                    w[(k, q)] = wkp * g[0][1] + wkq * g[1][1];
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * g[0][0] + vkq * g[1][0];
                    v[(k, q)] = vkp * g[0][1] + vkq * g[1][1];
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..n).map(|k| w.column(k).norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let sigma: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
    let v = CMat::from_fn(n, n, |r, k| v[(r, order[k])]);
    let cutoff = sigma.first().copied().unwrap_or(0.0) * n as f64 * f64::EPSILON;
    let mut u = CMat::zeros(n, n);
    let mut filled = 0;
    for (k, &src) in order.iter().enumerate() {
        if sigma[k] > cutoff && sigma[k] > 0.0 {
            let col = w.column(src) / c(sigma[k]);
            u.set_column(k, &col);
            filled = k + 1;
        } else {
            break;
        }
    }
    complete_orthonormal(&mut u, filled);
    Svd { u, sigma, v }
}

/// Fill columns `filled..n` of `u` so that it becomes unitary, assuming the
/// first `filled` columns are already orthonormal.
fn complete_orthonormal(u: &mut CMat, filled: usize) {
    let n = u.nrows();
    let mut next = filled;
    for e in 0..n {
        if next == n {
            break;
        }
        let mut cand = CVec::zeros(n);
        cand[e] = ONE;
        for _ in 0..2 {
            for k in 0..next {
                let col = u.column(k).clone_owned();
                let proj = col.dotc(&cand);
                cand -= col * proj;
            }
        }
        let norm = cand.norm();
        if norm > 1e-8 {
            u.set_column(next, &(cand / c(norm)));
            next += 1;
        }
    }
}

pub fn singular_values(a: &CMat) -> Vec<f64> {
    svd(a).sigma
}

/// Largest singular value.
pub fn spectral_norm(a: &CMat) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// Sum of singular values.
pub fn trace_norm(a: &CMat) -> f64 {
    singular_values(a).iter().sum()
}

/// Unitary factor `W` of the polar decomposition `a = W·|a|`.
pub fn polar_unitary(a: &CMat) -> CMat {
    let s = svd(a);
    &s.u * s.v.adjoint()
}

/// Matrix exponential by scaling and squaring, accurate to unit roundoff.
pub fn expm(m: &CMat) -> CMat {
    expm_tol(m, 0.0)
}

/// Matrix exponential by scaling and squaring with truncation error `≲ tol`.
///
/// After scaling so that `x = ‖M/2^s‖₁ ≤ 1/2`, the Taylor series is cut at
/// the first `N` with `x^{N+1}/(N+1)!·eˣ ≤ max(tol·2^{-s}·e^{-‖M‖₁}, u)`,
/// `u` the unit roundoff; squaring amplifies a per-step error `δ` to at most
/// `2^s·δ·e^{‖M‖₁}`.
pub fn expm_tol(m: &CMat, tol: f64) -> CMat {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "expm requires a square matrix");
    let norm = norm_one(m);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = m * c(0.5f64.powi(squarings));
    let x = norm * 0.5f64.powi(squarings);
    let target = (tol * 0.5f64.powi(squarings) * (-norm).exp()).max(f64::EPSILON * 0.5);
    let terms = taylor_terms(x, target);
    let mut result = CMat::identity(n, n);
    let mut term = CMat::identity(n, n);
    for k in 1..=terms {
        term = &term * &scaled * c(1.0 / k as f64);
        result += &term;
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Smallest `N` whose Taylor tail bound at `x` is below `target`.
fn taylor_terms(x: f64, target: f64) -> usize {
    let mut n = 0usize;
    let mut power = 1.0; // x^{n+1}/(n+1)!
    loop {
        power *= x / (n + 1) as f64;
        if power * x.exp() <= target || n >= 60 {
            return n.max(1);
        }
        n += 1;
    }
}

/// `Σ_{n≥0} Aⁿ/(n+1)!`, so that `exp(A) = I + A·φ₁(A)`. Intended for
/// `‖A‖₁ ≤ 1` where no scaling is required.
pub fn phi1(a: &CMat) -> CMat {
    let n = a.nrows();
    let x = norm_one(a);
    assert!(x <= 1.0 + 1e-12, "phi1 expects ‖A‖₁ ≤ 1");
    let terms = taylor_terms(x, f64::EPSILON * 0.5) + 1;
    let mut result = CMat::identity(n, n);
    let mut term = CMat::identity(n, n);
    for k in 1..=terms {
        term = &term * a * c(1.0 / (k + 1) as f64);
        result += &term;
    }
    result
}
