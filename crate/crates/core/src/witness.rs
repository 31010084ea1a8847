//! Multilinear maps `M_{d1} x ... x M_{d(n-1)} -> M_{dn}` and the matrices
//! they correspond to.
//!
//! A map is stored as its table of values on matrix-unit tuples. The block of
//! `W_phi` at row digits `(i1..i(n-1))` and column digits `(j1..j(n-1))` is
//! `phi(|i1><j1|, ..., |i(n-1)><j(n-1)|)`, which under big-endian indexing
//! makes `W_phi` a plain block matrix with `dn x dn` blocks.
//!
//! For a product vector `xi = xi1 (x) ... (x) xin`,
//! `<xi|W_phi|xi> = <xin| phi(|conj xi1><conj xi1|, ...) |xin>`,
//! so block positivity of `W_phi` is positivity of `phi`.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{is_psd, trace_pairing, ComplexMatrix, HERMITIAN_TOL, ZERO};
use crate::multipartite::{flatten, ProductVector, State, TensorShape};

/// Imaginary parts of a pairing above this are rejected.
pub const PAIRING_IMAG_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct MultilinearMap {
    shape: TensorShape,
    /// Dimension of the joint input space, `d1 * ... * d(n-1)`.
    input_dim: usize,
    /// Row-major over (input row, input column).
    blocks: Vec<ComplexMatrix>,
}

impl MultilinearMap {
    pub fn zero(shape: TensorShape) -> Self {
        let out = *shape.dims().last().expect("shape has parties");
        let input_dim = shape.total_dim() / out;
        Self {
            blocks: vec![ComplexMatrix::zeros(out); input_dim * input_dim],
            shape,
            input_dim,
        }
    }

    /// Builds the table from its values on matrix-unit tuples; the closure
    /// gets the row digits `(i1..)` and column digits `(j1..)`.
    pub fn from_units(shape: TensorShape, mut f: impl FnMut(&[usize], &[usize]) -> ComplexMatrix) -> Result<Self> {
        let mut m = Self::zero(shape);
        let input = m.input_shape_dims();
        for r in 0..m.input_dim {
            let rd = digits(&input, r);
            for c in 0..m.input_dim {
                let cd = digits(&input, c);
                let block = f(&rd, &cd);
                m.set_block_flat(r, c, block)?;
            }
        }
        Ok(m)
    }

    pub fn shape(&self) -> &TensorShape {
        &self.shape
    }

    pub fn output_dim(&self) -> usize {
        *self.shape.dims().last().unwrap()
    }

    fn input_shape_dims(&self) -> Vec<usize> {
        let dims = self.shape.dims();
        dims[..dims.len() - 1].to_vec()
    }

    /// `phi(|i1><j1|, ..., |i(n-1)><j(n-1)|)`.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> &ComplexMatrix {
        let input = self.input_shape_dims();
        &self.blocks[flat(&input, rows) * self.input_dim + flat(&input, cols)]
    }

    pub fn set_block(&mut self, rows: &[usize], cols: &[usize], value: ComplexMatrix) -> Result<()> {
        let input = self.input_shape_dims();
        self.set_block_flat(flat(&input, rows), flat(&input, cols), value)
    }

    fn set_block_flat(&mut self, r: usize, c: usize, value: ComplexMatrix) -> Result<()> {
        if value.dim() != self.output_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.output_dim(),
                found: value.dim(),
            });
        }
        self.blocks[r * self.input_dim + c] = value;
        Ok(())
    }

    /// Largest violation of `block(I, J) = block(J, I)^dagger`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.input_dim;
        let mut worst = 0.0_f64;
        for r in 0..n {
            for c in r..n {
                let a = &self.blocks[r * n + c];
                let b = &self.blocks[c * n + r];
                worst = worst.max(a.max_abs_diff(&b.adjoint()));
            }
        }
        worst
    }

    /// Multilinear extension of the table.
    pub fn evaluate(&self, inputs: &[ComplexMatrix]) -> Result<ComplexMatrix> {
        let input = self.input_shape_dims();
        if inputs.len() != input.len() {
            return Err(Error::DimensionMismatch {
                expected: input.len(),
                found: inputs.len(),
            });
        }
        for (x, &d) in inputs.iter().zip(&input) {
            if x.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: x.dim(),
                });
            }
        }
        let out = self.output_dim();
        let mut acc = ComplexMatrix::zeros(out);
        for r in 0..self.input_dim {
            let rd = digits(&input, r);
            for c in 0..self.input_dim {
                let cd = digits(&input, c);
                let coeff = inputs
                    .iter()
                    .enumerate()
                    .fold(crate::linalg::ONE, |p, (k, x)| p * x[(rd[k], cd[k])]);
                if coeff == ZERO {
                    continue;
                }
                acc = &acc + &self.blocks[r * self.input_dim + c].scale(coeff);
            }
        }
        Ok(acc)
    }
}

fn flat(dims: &[usize], digits: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

fn digits(dims: &[usize], mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = flat % d;
        flat /= d;
    }
    out
}

/// A Hermitian matrix on the full tensor space together with where it came
/// from. Whether it is block positive is something to check, not assume.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    matrix: ComplexMatrix,
    shape: TensorShape,
    meta: BTreeMap<String, Value>,
}

impl Witness {
    pub fn new(matrix: ComplexMatrix, shape: TensorShape) -> Result<Self> {
        shape.check_matrix(&matrix)?;
        matrix.ensure_hermitian()?;
        Ok(Self {
            matrix,
            shape,
            meta: BTreeMap::new(),
        })
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl Into<Value>) -> Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn shape(&self) -> &TensorShape {
        &self.shape
    }

    pub fn meta(&self) -> &BTreeMap<String, Value> {
        &self.meta
    }
}

/// `W_phi = sum |i1><j1| (x) ... (x) phi(|i1><j1|, ...)`.
pub fn choi_matrix(map: &MultilinearMap) -> Result<Witness> {
    let deviation = map.hermiticity_defect();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NonHermitianMap { deviation });
    }
    let out = map.output_dim();
    let n = map.input_dim;
    let matrix = ComplexMatrix::from_fn(n * out, |row, col| {
        map.blocks[(row / out) * n + col / out][(row % out, col % out)]
    });
    Witness::new(matrix, map.shape.clone())
}

/// Inverse of [`choi_matrix`].
pub fn map_from_choi(w: &Witness) -> Result<MultilinearMap> {
    w.matrix.ensure_hermitian()?;
    let mut map = MultilinearMap::zero(w.shape.clone());
    let out = map.output_dim();
    for r in 0..map.input_dim {
        for c in 0..map.input_dim {
            let block = ComplexMatrix::from_fn(out, |k, l| w.matrix[(r * out + k, c * out + l)]);
            map.set_block_flat(r, c, block)?;
        }
    }
    Ok(map)
}

/// `<rho, phi> = tr(W_phi rho^t) = sum_ij rho[i][j] * W[i][j]`.
pub fn pairing(state: &State, w: &Witness) -> Result<f64> {
    let value = trace_pairing(state.matrix(), &w.matrix)?;
    if value.im.abs() > PAIRING_IMAG_TOL {
        return Err(Error::NonRealPairing { imag: value.im });
    }
    Ok(value.re)
}

/// `<xi|W|xi>` for the flattened product vector (not normalized).
pub fn value_on_product(w: &Witness, pv: &ProductVector) -> Result<f64> {
    let v = flatten(pv, &w.shape)?;
    Ok(w.matrix.quadratic_form(&v)?.re)
}

/// Complete positivity of `phi`: its Choi matrix is PSD.
pub fn is_completely_positive(map: &MultilinearMap, tol: f64) -> Result<bool> {
    Ok(is_psd(choi_matrix(map)?.matrix(), tol)?.is_psd)
}
