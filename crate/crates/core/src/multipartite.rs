//! Tensor-product bookkeeping over parties.
//!
//! Flat indices are big-endian: party 1 is the most significant digit, so
//! `(i1, ..., in)` maps to `i1 * (d2 * ... * dn) + ... + in`. With this
//! convention the three-qubit ket `|011>` sits at index 3 and `|100>` at 4.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigenvalues, hermitian_rank, kron_vec, norm_sqr, ComplexMatrix, ComplexVector, C64, ONE, ZERO,
};

/// Ordered local dimensions `(d1, ..., dn)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorShape {
    dims: Vec<usize>,
}

impl TensorShape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::InvalidShape(format!(
                "need at least two parties, got {}",
                dims.len()
            )));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidShape(format!("local dimension {d} < 2")));
        }
        if dims.len() > 16 {
            return Err(Error::InvalidShape("more than 16 parties".into()));
        }
        Ok(Self { dims })
    }

    pub fn qubits(n: usize) -> Self {
        Self::new(vec![2; n]).expect("n >= 2 qubits")
    }

    pub fn three_qubits() -> Self {
        Self::qubits(3)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn flat_index(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.dims.len());
        digits.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn digits(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = flat % d;
            flat /= d;
        }
        out
    }

    pub fn check_matrix(&self, m: &ComplexMatrix) -> Result<()> {
        if m.dim() != self.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.total_dim(),
                found: m.dim(),
            });
        }
        Ok(())
    }

    /// Every subset of the parties, ordered by bitmask.
    pub fn subsets(&self) -> impl Iterator<Item = PartySubset> {
        PartySubset::all(self.parties())
    }
}

impl fmt::Display for TensorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// A subset of parties as a bitmask; bit `k` is party `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PartySubset(u32);

impl PartySubset {
    pub const EMPTY: Self = Self(0);

    pub fn from_bits(bits: u32) -> Self {
        Self(bits)
    }

    /// From zero-based party indices.
    pub fn from_parties(parties: &[usize]) -> Self {
        Self(parties.iter().fold(0, |acc, &k| acc | (1 << k)))
    }

    pub fn full(n: usize) -> Self {
        Self((1u32 << n) - 1)
    }

    pub fn all(n: usize) -> impl Iterator<Item = Self> {
        (0..(1u32 << n)).map(Self)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, party: usize) -> bool {
        self.0 & (1 << party) != 0
    }

    pub fn complement(self, n: usize) -> Self {
        Self(!self.0 & Self::full(n).0)
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn parties(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&k| self.contains(k))
    }
}

impl fmt::Display for PartySubset {
    /// One-based party labels, e.g. `{1,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parties().map(|k| (k + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// One local vector per party.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductVector {
    factors: Vec<ComplexVector>,
}

impl ProductVector {
    pub fn new(factors: Vec<ComplexVector>) -> Self {
        Self { factors }
    }

    /// Computational basis ket with the given digits, e.g. `[0, 1, 1]` for `|011>`.
    pub fn basis(shape: &TensorShape, digits: &[usize]) -> Self {
        Self::new(
            shape
                .dims()
                .iter()
                .zip(digits)
                .map(|(&d, &i)| (0..d).map(|k| if k == i { ONE } else { ZERO }).collect())
                .collect(),
        )
    }

    pub fn factors(&self) -> &[ComplexVector] {
        &self.factors
    }

    pub fn local_dims(&self) -> Vec<usize> {
        self.factors.iter().map(Vec::len).collect()
    }

    pub fn check_shape(&self, shape: &TensorShape) -> Result<()> {
        if self.factors.len() != shape.parties() {
            return Err(Error::DimensionMismatch {
                expected: shape.parties(),
                found: self.factors.len(),
            });
        }
        for (f, &d) in self.factors.iter().zip(shape.dims()) {
            if f.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: f.len(),
                });
            }
        }
        Ok(())
    }

    /// Kronecker product of the factors (big-endian).
    pub fn flatten(&self) -> ComplexVector {
        self.factors.iter().fold(vec![ONE], |acc, f| kron_vec(&acc, f))
    }

    /// Entrywise conjugation of the factors indexed by `subset`.
    pub fn partial_conjugate(&self, subset: PartySubset) -> Self {
        Self::new(
            self.factors
                .iter()
                .enumerate()
                .map(|(k, f)| {
                    if subset.contains(k) {
                        f.iter().map(|z| z.conj()).collect()
                    } else {
                        f.clone()
                    }
                })
                .collect(),
        )
    }

    /// Each factor scaled to unit norm.
    pub fn normalized(&self) -> Self {
        Self::new(
            self.factors
                .iter()
                .map(|f| {
                    let n = norm_sqr(f).sqrt();
                    f.iter().map(|z| z / n).collect()
                })
                .collect(),
        )
    }

    pub fn norm_sqr(&self) -> f64 {
        self.factors.iter().map(|f| norm_sqr(f)).product()
    }

    /// `|v><v|` for the flattened vector.
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.flatten())
    }
}

/// Flattens `pv` after checking it against `shape`.
pub fn flatten(pv: &ProductVector, shape: &TensorShape) -> Result<ComplexVector> {
    pv.check_shape(shape)?;
    Ok(pv.flatten())
}

/// A (possibly unnormalized) Hermitian operator on the full tensor space.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    matrix: ComplexMatrix,
    shape: TensorShape,
    normalized: bool,
}

impl State {
    pub fn new(matrix: ComplexMatrix, shape: TensorShape) -> Result<Self> {
        shape.check_matrix(&matrix)?;
        matrix.ensure_hermitian()?;
        Ok(Self {
            matrix,
            shape,
            normalized: false,
        })
    }

    pub fn pure(pv: &ProductVector, shape: TensorShape) -> Result<Self> {
        let v = flatten(pv, &shape)?;
        Self::from_vector(&v, shape)
    }

    pub fn from_vector(v: &[C64], shape: TensorShape) -> Result<Self> {
        Self::new(ComplexMatrix::outer(v), shape)
    }

    pub fn maximally_mixed(shape: TensorShape) -> Self {
        let d = shape.total_dim();
        Self {
            matrix: ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
            shape,
            normalized: true,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn shape(&self) -> &TensorShape {
        &self.shape
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Divides by the trace.
    pub fn normalize(&self) -> Result<Self> {
        let tr = self.trace();
        if tr.abs() < 1e-300 {
            return Err(Error::InvalidParams("cannot normalize a traceless state".into()));
        }
        Ok(Self {
            matrix: self.matrix.scale_real(1.0 / tr),
            shape: self.shape.clone(),
            normalized: true,
        })
    }

    pub fn partial_transpose(&self, subset: PartySubset) -> ComplexMatrix {
        partial_transpose(&self.matrix, &self.shape, subset)
    }

    pub fn with_matrix(&self, matrix: ComplexMatrix) -> Result<Self> {
        Self::new(matrix, self.shape.clone())
    }

    pub(crate) fn into_normalized_flag(mut self, normalized: bool) -> Self {
        self.normalized = normalized;
        self
    }
}

/// `T(S)`: swaps row and column digits of every party in `subset`.
pub fn partial_transpose(m: &ComplexMatrix, shape: &TensorShape, subset: PartySubset) -> ComplexMatrix {
    let d = shape.total_dim();
    assert_eq!(m.dim(), d, "matrix does not match shape {shape}");
    let mut out = ComplexMatrix::zeros(d);
    for row in 0..d {
        let rd = shape.digits(row);
        for col in 0..d {
            let cd = shape.digits(col);
            let (mut r2, mut c2) = (rd.clone(), cd.clone());
            for k in subset.parties().take_while(|&k| k < shape.parties()) {
                r2[k] = cd[k];
                c2[k] = rd[k];
            }
            out[(shape.flat_index(&r2), shape.flat_index(&c2))] = m[(row, col)];
        }
    }
    out
}

/// Reorders the parties of `m`: party `perm[k]` of the input becomes party `k`.
pub fn permute_parties(m: &ComplexMatrix, shape: &TensorShape, perm: &[usize]) -> Result<(ComplexMatrix, TensorShape)> {
    let n = shape.parties();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::InvalidShape(format!(
            "{perm:?} is not a permutation of {n} parties"
        )));
    }
    shape.check_matrix(m)?;
    let new_shape = TensorShape::new(perm.iter().map(|&p| shape.dims()[p]).collect())?;
    let d = shape.total_dim();
    let remap = |flat: usize| {
        let digits = shape.digits(flat);
        let permuted: Vec<usize> = perm.iter().map(|&p| digits[p]).collect();
        new_shape.flat_index(&permuted)
    };
    let index: Vec<usize> = (0..d).map(remap).collect();
    let mut out = ComplexMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            out[(index[i], index[j])] = m[(i, j)];
        }
    }
    Ok((out, new_shape))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PptReport {
    /// Minimum eigenvalue of `rho^{T(S)}` for every subset, by bitmask.
    pub min_eigenvalues: Vec<(PartySubset, f64)>,
    pub is_ppt: bool,
    pub tol: f64,
}

impl PptReport {
    pub fn worst(&self) -> f64 {
        self.min_eigenvalues.iter().map(|e| e.1).fold(f64::INFINITY, f64::min)
    }
}

/// PPT test over all `2^n` subsets, including `S = {}` (positivity of `rho`).
pub fn is_ppt(state: &State, tol: f64) -> Result<PptReport> {
    state.matrix().ensure_hermitian()?;
    let min_eigenvalues = state
        .shape()
        .subsets()
        .map(|s| Ok((s, hermitian_eigenvalues(&state.partial_transpose(s))?[0])))
        .collect::<Result<Vec<_>>>()?;
    let is_ppt = min_eigenvalues.iter().all(|&(_, v)| v >= -tol);
    Ok(PptReport {
        min_eigenvalues,
        is_ppt,
        tol,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct InteriorReport {
    pub ranks: Vec<(PartySubset, usize)>,
    pub is_interior: bool,
}

/// Full-rank test of every partial transpose; a PPT state passing it lies in
/// the interior of the PPT set.
pub fn interior_of_t_check(state: &State, tol: f64) -> Result<InteriorReport> {
    let d = state.shape().total_dim();
    let ranks = state
        .shape()
        .subsets()
        .map(|s| Ok((s, hermitian_rank(&state.partial_transpose(s), tol)?)))
        .collect::<Result<Vec<_>>>()?;
    let is_interior = ranks.iter().all(|&(_, r)| r == d);
    Ok(InteriorReport { ranks, is_interior })
}
