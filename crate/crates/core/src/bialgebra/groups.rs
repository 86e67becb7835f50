use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat, C64};

/// Cayley table of a finite monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Option<Vec<usize>>,
}

impl SemigroupTable {
    /// Validates closure and associativity exhaustively. When `identity` is
    /// `None` a two-sided identity is searched for; a table without one is
    /// rejected.
    pub fn new(table: Vec<Vec<usize>>, identity: Option<usize>) -> Result<Self> {
        let m = table.len();
        if m == 0 {
            return Err(Error::Construction("empty multiplication table".into()));
        }
        for (x, row) in table.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Construction(format!(
                    "row {x} has {} entries, expected {m}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= m) {
                return Err(Error::Construction(format!(
                    "table not closed: row {x} contains {bad} (order {m})"
                )));
            }
        }
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(Error::Construction(format!(
                            "not associative: ({x}·{y})·{z} ≠ {x}·({y}·{z})"
                        )));
                    }
                }
            }
        }
        let is_identity = |e: usize| (0..m).all(|x| table[e][x] == x && table[x][e] == x);
        let identity = match identity {
            Some(e) if e >= m => return Err(Error::Construction(format!("identity index {e} out of range"))),
            Some(e) if !is_identity(e) => {
                return Err(Error::Construction(format!("element {e} is not a two-sided identity")))
            }
            Some(e) => e,
            None => (0..m).find(|&e| is_identity(e)).ok_or_else(|| {
                Error::Construction("table has no identity element; only monoids are admitted".into())
            })?,
        };
        let inverses = (0..m)
            .map(|x| (0..m).find(|&y| table[x][y] == identity && table[y][x] == identity))
            .collect::<Option<Vec<_>>>();
        Ok(Self {
            table,
            identity,
            inverses,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        Self::new(table, Some(0)).expect("cyclic group table is valid")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_group(&self) -> bool {
        self.inverses.is_some()
    }

    pub fn is_abelian(&self) -> bool {
        let m = self.order();
        (0..m).all(|x| (0..m).all(|y| self.table[x][y] == self.table[y][x]))
    }

    pub fn inverse(&self, x: usize) -> Option<usize> {
        self.inverses.as_ref().map(|inv| inv[x])
    }

    pub fn require_group(&self) -> Result<&[usize]> {
        self.inverses
            .as_deref()
            .ok_or_else(|| Error::Precondition("monoid is not a group (missing inverses)".into()))
    }
}

/// A unitary representation given by its matrices on every group element.
#[derive(Debug, Clone, PartialEq)]
pub struct Irrep {
    pub dim: usize,
    pub matrices: Vec<CMat>,
}

impl Irrep {
    pub fn character(&self, g: usize) -> C64 {
        self.matrices[g].trace()
    }
}

/// A complete set of inequivalent unitary irreps of a finite group.
#[derive(Debug, Clone, PartialEq)]
pub struct IrrepTable {
    irreps: Vec<Irrep>,
    trivial: usize,
}

impl IrrepTable {
    /// Checks homomorphism, unitarity, `π(e) = 1`, `Σ d_π² = |G|`, the
    /// presence of the trivial representation and Schur orthogonality of
    /// matrix coefficients, all at `tol`.
    pub fn new(group: &SemigroupTable, irreps: Vec<Irrep>, tol: f64) -> Result<Self> {
        group.require_group().map_err(|e| Error::Construction(e.to_string()))?;
        let m = group.order();
        let total: usize = irreps.iter().map(|p| p.dim * p.dim).sum();
        if total != m {
            return Err(Error::Construction(format!(
                "incomplete irrep table: Σ d² = {total}, |G| = {m}"
            )));
        }
        for (k, p) in irreps.iter().enumerate() {
            if p.matrices.len() != m {
                return Err(Error::Construction(format!(
                    "irrep {k} lists {} matrices for a group of order {m}",
                    p.matrices.len()
                )));
            }
            if p.matrices.iter().any(|u| u.nrows() != p.dim || u.ncols() != p.dim) {
                return Err(Error::Construction(format!("irrep {k} has a matrix of the wrong size")));
            }
            let eye = CMat::identity(p.dim, p.dim);
            if linalg::max_abs_diff(&p.matrices[group.identity()], &eye) > tol {
                return Err(Error::Construction(format!("irrep {k}: π(e) ≠ 1")));
            }
            for g in 0..m {
                let u = &p.matrices[g];
                if linalg::max_abs_diff(&(u.adjoint() * u), &eye) > tol {
                    return Err(Error::Construction(format!("irrep {k}: π({g}) is not unitary")));
                }
                for h in 0..m {
                    let lhs = u * &p.matrices[h];
                    if linalg::max_abs_diff(&lhs, &p.matrices[group.mul(g, h)]) > tol {
                        return Err(Error::Construction(format!("irrep {k}: π({g})π({h}) ≠ π({g}·{h})")));
                    }
                }
            }
        }
        // Schur orthogonality: Σ_g π_ij(g) conj σ_kl(g) = |G|/d δ_πσ δ_ik δ_jl.
        for (a, p) in irreps.iter().enumerate() {
            for (b, q) in irreps.iter().enumerate() {
                for i in 0..p.dim {
                    for j in 0..p.dim {
                        for k in 0..q.dim {
                            for l in 0..q.dim {
                                let s: C64 = (0..m)
                                    .map(|g| p.matrices[g][(i, j)] * q.matrices[g][(k, l)].conj())
                                    .sum();
                                let expect = if a == b && i == k && j == l {
                                    m as f64 / p.dim as f64
                                } else {
                                    0.0
                                };
                                if (s - c(expect)).norm() > tol * m as f64 {
                                    return Err(Error::Construction(format!(
                                        "Schur orthogonality fails between irreps {a} and {b}"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        let trivial = irreps
            .iter()
            .position(|p| p.dim == 1 && p.matrices.iter().all(|u| (u[(0, 0)] - c(1.0)).norm() <= tol))
            .ok_or_else(|| Error::Construction("irrep table lacks the trivial representation".into()))?;
        Ok(Self { irreps, trivial })
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|p| p.dim).collect()
    }

    /// Index of the trivial representation.
    pub fn trivial(&self) -> usize {
        self.trivial
    }
}

pub mod fixtures {
    use std::f64::consts::PI;

    use super::*;
    use crate::linalg::ZERO;

    fn scalar_irrep(values: Vec<C64>) -> Irrep {
        Irrep {
            dim: 1,
            matrices: values.into_iter().map(|z| CMat::from_element(1, 1, z)).collect(),
        }
    }

    /// `Z_n` with its `n` characters `g ↦ e^{2πi·gk/n}`.
    pub fn cyclic(n: usize) -> (SemigroupTable, IrrepTable) {
        let group = SemigroupTable::cyclic(n);
        let irreps = (0..n)
            .map(|k| {
                scalar_irrep(
                    (0..n)
                        .map(|g| C64::from_polar(1.0, 2.0 * PI * ((g * k) % n) as f64 / n as f64))
                        .collect(),
                )
            })
            .collect();
        let table = IrrepTable::new(&group, irreps, 1e-12).expect("characters of Z_n");
        (group, table)
    }

    /// `S3` ordered as `e, (01), (02), (12), (012), (021)`; irreps trivial,
    /// sign and the two-dimensional standard representation.
    pub fn s3() -> (SemigroupTable, IrrepTable) {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let find = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        // (g·h)(x) = g(h(x))
        let table = (0..6)
            .map(|g| {
                (0..6)
                    .map(|h| find([perms[g][perms[h][0]], perms[g][perms[h][1]], perms[g][perms[h][2]]]))
                    .collect()
            })
            .collect();
        let group = SemigroupTable::new(table, Some(0)).expect("S3 table");
        let sign = [1.0, -1.0, -1.0, -1.0, 1.0, 1.0];
        // Orthonormal basis of the sum-zero plane in ℂ³.
        let basis = CMat::from_row_slice(
            3,
            2,
            &[
                c(1.0 / 2f64.sqrt()),
                c(1.0 / 6f64.sqrt()),
                c(-1.0 / 2f64.sqrt()),
                c(1.0 / 6f64.sqrt()),
                ZERO,
                c(-2.0 / 6f64.sqrt()),
            ],
        );
        let standard = perms
            .iter()
            .map(|p| {
                let mut pm = CMat::zeros(3, 3);
                for x in 0..3 {
                    pm[(p[x], x)] = c(1.0);
                }
                basis.adjoint() * pm * &basis
            })
            .collect();
        let irreps = vec![
            scalar_irrep(vec![c(1.0); 6]),
            scalar_irrep(sign.iter().map(|&s| c(s)).collect()),
            Irrep {
                dim: 2,
                matrices: standard,
            },
        ];
        let table = IrrepTable::new(&group, irreps, 1e-12).expect("S3 irreps");
        (group, table)
    }

    /// Dihedral group of order `2n`, elements `r^k s^f` indexed `2k + f`.
    pub fn dihedral(n: usize) -> (SemigroupTable, IrrepTable) {
        assert!(n >= 3, "dihedral fixture needs n ≥ 3");
        let idx = |k: usize, f: usize| 2 * k + f;
        let table = (0..2 * n)
            .map(|x| {
                let (a, f) = (x / 2, x % 2);
                (0..2 * n)
                    .map(|y| {
                        let (b, g) = (y / 2, y % 2);
                        // r^a s^f r^b s^g = r^{a ± b} s^{f+g}
                        let k = if f == 0 { (a + b) % n } else { (a + n - b) % n };
                        idx(k, (f + g) % 2)
                    })
                    .collect()
            })
            .collect();
        let group = SemigroupTable::new(table, Some(0)).expect("dihedral table");
        let elems: Vec<(usize, usize)> = (0..2 * n).map(|x| (x / 2, x % 2)).collect();
        let mut irreps = vec![
            scalar_irrep(vec![c(1.0); 2 * n]),
            scalar_irrep(elems.iter().map(|&(_, f)| c(if f == 0 { 1.0 } else { -1.0 })).collect()),
        ];
        if n.is_multiple_of(2) {
            for s_sign in [1.0, -1.0] {
                irreps.push(scalar_irrep(
                    elems
                        .iter()
                        .map(|&(k, f)| {
                            let r = if k % 2 == 0 { 1.0 } else { -1.0 };
                            c(r * if f == 0 { 1.0 } else { s_sign })
                        })
                        .collect(),
                ));
            }
        }
        for j in 1..=(n - 1) / 2 {
            let matrices = elems
                .iter()
                .map(|&(k, f)| {
                    let theta = 2.0 * PI * (j * k) as f64 / n as f64;
                    let rot =
                        CMat::from_row_slice(2, 2, &[c(theta.cos()), c(-theta.sin()), c(theta.sin()), c(theta.cos())]);
                    let refl = if f == 0 {
                        CMat::identity(2, 2)
                    } else {
                        CMat::from_row_slice(2, 2, &[c(1.0), ZERO, ZERO, c(-1.0)])
                    };
                    rot * refl
                })
                .collect();
            irreps.push(Irrep { dim: 2, matrices });
        }
        let table = IrrepTable::new(&group, irreps, 1e-12).expect("dihedral irreps");
        (group, table)
    }

    pub fn d4() -> (SemigroupTable, IrrepTable) {
        dihedral(4)
    }

    /// Quaternion group ordered `1, −1, i, −i, j, −j, k, −k`.
    pub fn q8() -> (SemigroupTable, IrrepTable) {
        // unit quaternions as (w, x, y, z)
        let units: [[i32; 4]; 4] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        let elems: Vec<[i32; 4]> = units.iter().flat_map(|u| [*u, [-u[0], -u[1], -u[2], -u[3]]]).collect();
        let qmul = |a: [i32; 4], b: [i32; 4]| {
            [
                a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
            ]
        };
        let table = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let p = qmul(elems[x], elems[y]);
                        elems.iter().position(|&q| q == p).unwrap()
                    })
                    .collect()
            })
            .collect();
        let group = SemigroupTable::new(table, Some(0)).expect("Q8 table");
        let i = C64::new(0.0, 1.0);
        let basis = [
            CMat::identity(2, 2),
            CMat::from_row_slice(2, 2, &[i, ZERO, ZERO, -i]),
            CMat::from_row_slice(2, 2, &[ZERO, c(1.0), c(-1.0), ZERO]),
            CMat::from_row_slice(2, 2, &[ZERO, i, i, ZERO]),
        ];
        let two_dim = elems
            .iter()
            .map(|q| (0..4).fold(CMat::zeros(2, 2), |acc, a| acc + &basis[a] * c(q[a] as f64)))
            .collect();
        // sign of the character on the units 1, i, j, k
        let signs: [[f64; 4]; 4] = [
            [1.0, 1.0, 1.0, 1.0],
            [1.0, 1.0, -1.0, -1.0],
            [1.0, -1.0, 1.0, -1.0],
            [1.0, -1.0, -1.0, 1.0],
        ];
        let mut irreps: Vec<Irrep> = signs
            .iter()
            .map(|s| scalar_irrep((0..8).map(|x| c(s[x / 2])).collect()))
            .collect();
        irreps.push(Irrep {
            dim: 2,
            matrices: two_dim,
        });
        let table = IrrepTable::new(&group, irreps, 1e-12).expect("Q8 irreps");
        (group, table)
    }

    /// Resolve a built-in group name: `zn:<n>` (`1 ≤ n ≤ 12`), `s3`, `d4`, `q8`.
    pub fn by_name(name: &str) -> Result<(SemigroupTable, IrrepTable)> {
        let lower = name.trim().to_ascii_lowercase();
        if let Some(n) = lower.strip_prefix("zn:") {
            let n: usize = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclic order in '{name}'")))?;
            if !(1..=12).contains(&n) {
                return Err(Error::Parse(format!("cyclic fixtures cover 1 ≤ n ≤ 12, got {n}")));
            }
            return Ok(cyclic(n));
        }
        match lower.as_str() {
            "s3" => Ok(s3()),
            "d4" => Ok(d4()),
            "q8" => Ok(q8()),
            _ => Err(Error::Parse(format!("unknown built-in group '{name}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn fixtures_have_complete_irreps() {
        for n in 1..=12 {
            let (g, t) = cyclic(n);
            assert_eq!(g.order(), n);
            assert_eq!(t.irreps().len(), n);
        }
        let (g, t) = s3();
        assert_eq!(t.dims(), vec![1, 1, 2]);
        assert!(!g.is_abelian());
        assert_eq!(d4().1.dims().iter().map(|d| d * d).sum::<usize>(), 8);
        assert_eq!(q8().1.dims().iter().map(|d| d * d).sum::<usize>(), 8);
    }

    #[test]
    fn s3_ordering() {
        let (g, _) = s3();
        // transpositions are involutions, 3-cycles have order 3
        for t in 1..4 {
            assert_eq!(g.mul(t, t), 0);
        }
        assert_eq!(g.mul(4, 4), 5);
        assert_eq!(g.inverse(4), Some(5));
    }

    #[test]
    fn rejects_tables_without_identity() {
        // left-zero semigroup: x·y = x
        let table = vec![vec![0, 0], vec![1, 1]];
        assert!(matches!(SemigroupTable::new(table, None), Err(Error::Construction(_))));
    }

    #[test]
    fn rejects_non_associative() {
        let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]];
        assert!(SemigroupTable::new(table, Some(0)).is_err());
    }

    #[test]
    fn monoid_that_is_not_a_group() {
        // {e, a, z}: a·a = z, z absorbing
        let table = vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]];
        let m = SemigroupTable::new(table, None).unwrap();
        assert_eq!(m.identity(), 0);
        assert!(!m.is_group());
        assert!(m.require_group().is_err());
    }

    #[test]
    fn incomplete_irreps_rejected() {
        let (g, t) = s3();
        let partial = t.irreps()[..2].to_vec();
        assert!(matches!(
            IrrepTable::new(&g, partial, 1e-12),
            Err(Error::Construction(_))
        ));
    }

    #[test]
    fn by_name_resolves() {
        assert_eq!(by_name("zn:4").unwrap().0.order(), 4);
        assert_eq!(by_name("Q8").unwrap().0.order(), 8);
        assert!(by_name("zn:13").is_err());
        assert!(by_name("a5").is_err());
    }
}
