//! JSON file formats.
//!
//! Complex numbers are `[re, im]` pairs. A matrix is either a list of rows
//! or a flat row-major list; both layouts are accepted on input and rows
//! are written on output. Functionals are stored as dual blocks.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bialgebra::{fixtures, Bialgebra, Irrep, IrrepTable, LinearMap, Mode, SemigroupTable};
use crate::error::{Error, Result};
use crate::fdcstar::{tensor_algebra, Algebra, Functional};
use crate::groupfun::{GroupFunction, Measure};
use crate::linalg::{CMat, C64};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Complex(pub f64, pub f64);

impl From<C64> for Complex {
    fn from(z: C64) -> Self {
        Complex(z.re, z.im)
    }
}

impl From<Complex> for C64 {
    fn from(z: Complex) -> Self {
        C64::new(z.0, z.1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixJson {
    Rows(Vec<Vec<Complex>>),
    Flat(Vec<Complex>),
}

impl MatrixJson {
    pub fn from_cmat(m: &CMat) -> Self {
        MatrixJson::Rows(
            (0..m.nrows())
                .map(|r| (0..m.ncols()).map(|s| m[(r, s)].into()).collect())
                .collect(),
        )
    }

    pub fn to_cmat(&self, rows: usize, cols: usize) -> Result<CMat> {
        match self {
            MatrixJson::Rows(r) => {
                if r.len() != rows || r.iter().any(|row| row.len() != cols) {
                    return Err(Error::Parse(format!("expected a {rows}×{cols} matrix")));
                }
                Ok(CMat::from_fn(rows, cols, |i, j| r[i][j].into()))
            }
            MatrixJson::Flat(v) => {
                if v.len() != rows * cols {
                    return Err(Error::Parse(format!(
                        "expected {} entries for a {rows}×{cols} matrix, got {}",
                        rows * cols,
                        v.len()
                    )));
                }
                Ok(CMat::from_fn(rows, cols, |i, j| v[i * cols + j].into()))
            }
        }
    }

    /// Square matrix whose side is inferred from the layout.
    pub fn to_square(&self) -> Result<CMat> {
        let n = match self {
            MatrixJson::Rows(r) => r.len(),
            MatrixJson::Flat(v) => {
                let n = (v.len() as f64).sqrt().round() as usize;
                if n * n != v.len() {
                    return Err(Error::Parse(format!("{} entries do not form a square matrix", v.len())));
                }
                n
            }
        };
        self.to_cmat(n, n)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrepJson {
    pub dim: usize,
    pub matrices: Vec<MatrixJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupFile {
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<usize>,
    pub table: Vec<Vec<usize>>,
    /// Optional complete irrep set, enabling `C*(G)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreps: Option<Vec<IrrepJson>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrepFile {
    pub irreps: Vec<IrrepJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BialgebraFile {
    pub blocks: Vec<usize>,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    pub delta: MatrixJson,
    pub epsilon: Vec<MatrixJson>,
}

fn default_mode() -> Mode {
    Mode::StrictHomomorphism
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionalFile {
    pub dual_blocks: Vec<MatrixJson>,
}

/// A built-in name, a path to a semigroup file, or an inline table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Inline(SemigroupFile),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFunctionFile {
    pub group: GroupRef,
    pub values: Vec<Complex>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureFile {
    pub monoid: GroupRef,
    pub weights: Vec<f64>,
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn irreps_from_json(group: &SemigroupTable, irreps: &[IrrepJson], tol: f64) -> Result<IrrepTable> {
    let list = irreps
        .iter()
        .enumerate()
        .map(|(k, ir)| {
            if ir.matrices.len() != group.order() {
                return Err(Error::Parse(format!(
                    "irrep {k} lists {} matrices, group has order {}",
                    ir.matrices.len(),
                    group.order()
                )));
            }
            let matrices = ir
                .matrices
                .iter()
                .map(|m| m.to_cmat(ir.dim, ir.dim))
                .collect::<Result<Vec<_>>>()?;
            Ok(Irrep { dim: ir.dim, matrices })
        })
        .collect::<Result<Vec<_>>>()?;
    IrrepTable::new(group, list, tol)
}

pub fn irreps_to_json(irreps: &IrrepTable) -> Vec<IrrepJson> {
    irreps
        .irreps()
        .iter()
        .map(|p| IrrepJson {
            dim: p.dim,
            matrices: p.matrices.iter().map(MatrixJson::from_cmat).collect(),
        })
        .collect()
}

impl SemigroupFile {
    pub fn table(&self) -> Result<SemigroupTable> {
        if self.table.len() != self.order {
            return Err(Error::Parse(format!(
                "\"order\" is {} but the table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        SemigroupTable::new(self.table.clone(), self.identity)
    }

    /// The table together with its irreps when present.
    pub fn resolve(&self, tol: f64) -> Result<(SemigroupTable, Option<IrrepTable>)> {
        let g = self.table()?;
        let irreps = match &self.irreps {
            Some(list) => Some(irreps_from_json(&g, list, tol)?),
            None => None,
        };
        Ok((g, irreps))
    }

    pub fn from_table(g: &SemigroupTable, irreps: Option<&IrrepTable>) -> Self {
        Self {
            order: g.order(),
            identity: Some(g.identity()),
            table: g.table().to_vec(),
            irreps: irreps.map(irreps_to_json),
        }
    }
}

impl GroupRef {
    /// Built-in names resolve without files; other strings are paths,
    /// relative to `base`.
    pub fn resolve(&self, base: &Path, tol: f64) -> Result<(SemigroupTable, Option<IrrepTable>)> {
        match self {
            GroupRef::Inline(f) => f.resolve(tol),
            GroupRef::Name(name) => match fixtures::by_name(name) {
                Ok((g, irr)) => Ok((g, Some(irr))),
                Err(_) if looks_like_path(name) => {
                    let path: PathBuf = base.join(name);
                    parse::<SemigroupFile>(&read_file(&path)?)?.resolve(tol)
                }
                Err(e) => Err(e),
            },
        }
    }
}

fn looks_like_path(s: &str) -> bool {
    s.contains('/') || s.contains('\\') || s.ends_with(".json")
}

pub fn functional_from_json(alg: &Algebra, blocks: &[MatrixJson]) -> Result<Functional> {
    if blocks.len() != alg.num_blocks() {
        return Err(Error::Parse(format!(
            "{} dual blocks given, algebra has {}",
            blocks.len(),
            alg.num_blocks()
        )));
    }
    let mats = blocks
        .iter()
        .zip(alg.blocks())
        .map(|(m, &n)| m.to_cmat(n, n))
        .collect::<Result<Vec<_>>>()?;
    Functional::from_blocks(alg, mats)
}

pub fn functional_to_json(mu: &Functional) -> Vec<MatrixJson> {
    mu.blocks().iter().map(MatrixJson::from_cmat).collect()
}

impl FunctionalFile {
    pub fn functional(&self, alg: &Algebra) -> Result<Functional> {
        functional_from_json(alg, &self.dual_blocks)
    }

    pub fn from_functional(mu: &Functional) -> Self {
        Self {
            dual_blocks: functional_to_json(mu),
        }
    }
}

impl BialgebraFile {
    pub fn bialgebra(&self) -> Result<Bialgebra> {
        let alg = Algebra::new(self.blocks.clone())?;
        let tt = tensor_algebra(&alg, &alg);
        let delta = self.delta.to_cmat(tt.dim(), alg.dim())?;
        let delta = LinearMap::new(alg.clone(), tt, delta)?;
        let epsilon = functional_from_json(&alg, &self.epsilon)?;
        Bialgebra::new(alg, delta, epsilon, self.mode)
    }

    pub fn from_bialgebra(b: &Bialgebra) -> Self {
        Self {
            blocks: b.algebra().blocks().to_vec(),
            mode: b.mode(),
            delta: MatrixJson::from_cmat(b.delta().matrix()),
            epsilon: functional_to_json(b.epsilon()),
        }
    }
}

impl GroupFunctionFile {
    pub fn resolve(&self, base: &Path, tol: f64) -> Result<(GroupFunction, Option<IrrepTable>)> {
        let (g, irr) = self.group.resolve(base, tol)?;
        let f = GroupFunction::new(g, self.values.iter().map(|&z| z.into()).collect())?;
        Ok((f, irr))
    }
}

impl MeasureFile {
    pub fn resolve(&self, base: &Path, tol: f64) -> Result<Measure> {
        let (g, _) = self.monoid.resolve(base, tol)?;
        Measure::new(g, self.weights.clone())
    }
}
