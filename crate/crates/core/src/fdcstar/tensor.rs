use crate::linalg::kron;

use super::{Algebra, Element, Functional};

/// Minimal tensor product `A₁⊗A₂`: blocks `(i, j)` in lexicographic order,
/// of size `nᵢ·mⱼ`.
pub fn tensor_algebra(a1: &Algebra, a2: &Algebra) -> Algebra {
    let blocks = a1
        .blocks()
        .iter()
        .flat_map(|&n| a2.blocks().iter().map(move |&m| n * m))
        .collect();
    Algebra::new(blocks).expect("tensor of valid algebras is valid")
}

pub fn tensor_element(a1: &Element, a2: &Element) -> Element {
    Element {
        blocks: a1
            .blocks
            .iter()
            .flat_map(|x| a2.blocks.iter().map(move |y| kron(x, y)))
            .collect(),
    }
}

/// `(μ₁⊗μ₂)(a₁⊗a₂) = μ₁(a₁)·μ₂(a₂)`; the dual blocks are Kronecker products.
pub fn tensor_functional(mu1: &Functional, mu2: &Functional) -> Functional {
    Functional {
        blocks: mu1
            .blocks
            .iter()
            .flat_map(|x| mu2.blocks.iter().map(move |y| kron(x, y)))
            .collect(),
    }
}

/// Translation between pairs of canonical indices `(j, k)` of `A₁ × A₂` and
/// the canonical index of `E_j ⊗ E_k` in `A₁⊗A₂`.
#[derive(Debug, Clone)]
pub struct PairIndex {
    dim2: usize,
    to_canonical: Vec<usize>,
}

impl PairIndex {
    pub fn new(a1: &Algebra, a2: &Algebra) -> Self {
        let target = tensor_algebra(a1, a2);
        let dim2 = a2.dim();
        let mut to_canonical = vec![0; a1.dim() * dim2];
        let k2 = a2.num_blocks();
        for (i1, &n) in a1.blocks().iter().enumerate() {
            for (i2, &m) in a2.blocks().iter().enumerate() {
                let tb = i1 * k2 + i2;
                for r1 in 0..n {
                    for s1 in 0..n {
                        for r2 in 0..m {
                            for s2 in 0..m {
                                let j = a1.index(i1, r1, s1);
                                let k = a2.index(i2, r2, s2);
                                to_canonical[j * dim2 + k] = target.index(tb, r1 * m + r2, s1 * m + s2);
                            }
                        }
                    }
                }
            }
        }
        Self { dim2, to_canonical }
    }

    #[inline]
    pub fn canonical(&self, j: usize, k: usize) -> usize {
        self.to_canonical[j * self.dim2 + k]
    }

    pub fn dim1(&self) -> usize {
        self.to_canonical.len() / self.dim2
    }

    pub fn dim2(&self) -> usize {
        self.dim2
    }
}
