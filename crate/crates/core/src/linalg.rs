//! Dense complex linear algebra for the small matrices that show up here
//! (d <= 16): Kronecker products, Hermitian spectra, numerical rank and the
//! entrywise trace pairing.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Flat complex vector. Product vectors flatten into one of these.
pub type ComplexVector = Vec<C64>;

/// Absolute tolerance on `|M[i][j] - conj(M[j][i])|`.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Default rank tolerance, relative to the largest Gram eigenvalue.
pub const RANK_TOL: f64 = 1e-8;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from real rows; panics on ragged input.
    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        Self::from_fn(N, |i, j| re(rows[i][j]))
    }

    pub fn diag(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn real_diag(values: &[f64]) -> Self {
        Self::diag(&values.iter().map(|&x| re(x)).collect::<Vec<_>>())
    }

    /// `|i><j|` in dimension `dim`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m[(i, j)] = ONE;
        m
    }

    /// `|v><v|`.
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[C64]> {
        self.data.chunks(self.dim)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, k: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.scale(re(k))
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[C64]) -> Result<ComplexVector> {
        check_dim(self.dim, v.len())?;
        Ok(self
            .rows()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `<v|M|v>`.
    pub fn quadratic_form(&self, v: &[C64]) -> Result<C64> {
        let mv = self.apply(v)?;
        Ok(inner(v, &mv))
    }

    /// Largest `|M[i][j] - conj(M[j][i])|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn ensure_hermitian(&self) -> Result<()> {
        let deviation = self.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(())
    }

    /// Largest entrywise `|A - B|`; `f64::INFINITY` when dimensions differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn to_nalgebra(&self) -> DMatrix<C64> {
        // (M + M^dagger) / 2 so the solver sees an exactly Hermitian input.
        DMatrix::from_fn(self.dim, self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix sum");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix difference");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<f64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: f64) -> ComplexMatrix {
        self.scale_real(rhs)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for row in self.rows() {
            write!(f, " ")?;
            for z in row {
                write!(f, " {:>8.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `<a|b>`, conjugate-linear in the first argument.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

pub fn normalized(v: &[C64]) -> ComplexVector {
    let n = norm_sqr(v).sqrt();
    v.iter().map(|z| z / n).collect()
}

/// Kronecker product: entry `(i*dB + k, j*dB + l)` is `A[i][j] * B[k][l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let db = b.dim();
    ComplexMatrix::from_fn(a.dim() * db, |r, s| a[(r / db, s / db)] * b[(r % db, s % db)])
}

/// Kronecker product of vectors, first factor most significant.
pub fn kron_vec(a: &[C64], b: &[C64]) -> ComplexVector {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    m.ensure_hermitian()?;
    let mut values: Vec<f64> = m.to_nalgebra().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Ascending eigenvalues with their unit eigenvectors.
pub fn hermitian_eigh(m: &ComplexMatrix) -> Result<Vec<(f64, ComplexVector)>> {
    m.ensure_hermitian()?;
    let eig = m.to_nalgebra().symmetric_eigen();
    let mut pairs: Vec<(f64, ComplexVector)> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(k, &value)| (value, eig.eigenvectors.column(k).iter().copied().collect()))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pairs)
}

/// Smallest eigenvalue and a unit eigenvector for it.
pub fn min_eigenpair(m: &ComplexMatrix) -> Result<(f64, ComplexVector)> {
    Ok(hermitian_eigh(m)?.swap_remove(0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdCheck {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
}

/// PSD test: true iff the smallest eigenvalue is at least `-tol`.
pub fn is_psd(m: &ComplexMatrix, tol: f64) -> Result<PsdCheck> {
    let min_eigenvalue = hermitian_eigenvalues(m)?[0];
    Ok(PsdCheck {
        is_psd: min_eigenvalue >= -tol,
        min_eigenvalue,
    })
}

/// Dimension of the span of `vectors`: the number of Gram-matrix eigenvalues
/// above `tol` times the largest one.
pub fn numerical_rank(vectors: &[ComplexVector], tol: f64) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let dim = first.len();
    for v in vectors {
        check_dim(dim, v.len())?;
    }
    let gram = ComplexMatrix::from_fn(vectors.len(), |i, j| inner(&vectors[i], &vectors[j]));
    let values = hermitian_eigenvalues(&gram)?;
    let largest = values.last().copied().unwrap_or(0.0);
    if largest <= 0.0 {
        return Ok(0);
    }
    Ok(values.iter().filter(|&&x| x > tol * largest).count())
}

/// Rank of a Hermitian matrix: eigenvalues with `|x| > tol * max|x|`.
pub fn hermitian_rank(m: &ComplexMatrix, tol: f64) -> Result<usize> {
    let values = hermitian_eigenvalues(m)?;
    let largest = values.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if largest == 0.0 {
        return Ok(0);
    }
    Ok(values.iter().filter(|x| x.abs() > tol * largest).count())
}

/// `<A, B> = tr(A^t B) = sum_ij A[i][j] * B[i][j]`.
pub fn trace_pairing(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    check_dim(a.dim(), b.dim())?;
    Ok(a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| x * y).sum())
}

/// Orthonormal basis of the orthogonal complement of `span(vectors)` in
/// `C^dim`. The basis is read off the columns of the complement projector
/// in index order, so coordinate-aligned complements come back as unit kets.
pub fn orthogonal_complement(vectors: &[ComplexVector], dim: usize, tol: f64) -> Result<Vec<ComplexVector>> {
    for v in vectors {
        check_dim(dim, v.len())?;
    }
    let mut frame = ComplexMatrix::zeros(dim);
    for v in vectors {
        frame = &frame + &ComplexMatrix::outer(v);
    }
    let pairs = hermitian_eigh(&frame)?;
    let largest = pairs.last().map(|p| p.0).unwrap_or(0.0);
    let cutoff = if largest > 0.0 { tol * largest } else { 0.5 };
    let mut projector = ComplexMatrix::zeros(dim);
    for (value, v) in &pairs {
        if *value <= cutoff {
            projector = &projector + &ComplexMatrix::outer(v);
        }
    }
    let target = pairs.iter().filter(|p| p.0 <= cutoff).count();
    let mut basis: Vec<ComplexVector> = Vec::with_capacity(target);
    for j in 0..dim {
        if basis.len() == target {
            break;
        }
        let mut col: ComplexVector = (0..dim).map(|i| projector[(i, j)]).collect();
        for b in &basis {
            let overlap = inner(b, &col);
            for (x, y) in col.iter_mut().zip(b) {
                *x -= overlap * y;
            }
        }
        let n = norm_sqr(&col).sqrt();
        if n > 1e-6 {
            basis.push(col.iter().map(|z| z / n).collect());
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(dim, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
        let a = random_matrix(rng, dim);
        &(&a + &a.adjoint()) * 0.5
    }

    /// Unitary from Gram-Schmidt on a random complex matrix.
    fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
        let a = random_matrix(rng, dim);
        let mut cols: Vec<ComplexVector> = Vec::new();
        for j in 0..dim {
            let mut v: ComplexVector = (0..dim).map(|i| a[(i, j)]).collect();
            for b in &cols {
                let o = inner(b, &v);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= o * y;
                }
            }
            cols.push(normalized(&v));
        }
        ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
    }

    #[test]
    fn kron_examples() {
        assert_eq!(
            kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2)),
            ComplexMatrix::identity(4)
        );

        let p0 = ComplexMatrix::unit(2, 0, 0);
        let t = 2.5;
        let got = kron(&p0, &ComplexMatrix::real_diag(&[0.0, t]));
        assert_eq!(got, ComplexMatrix::real_diag(&[0.0, t, 0.0, 0.0]));

        let e01 = ComplexMatrix::unit(2, 0, 1);
        assert_eq!(kron(&e01, &e01), ComplexMatrix::unit(4, 0, 3));
    }

    #[test]
    fn kron_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (a, b, c3) = (
            random_matrix(&mut rng, 2),
            random_matrix(&mut rng, 3),
            random_matrix(&mut rng, 2),
        );
        let left = kron(&kron(&a, &b), &c3);
        let right = kron(&a, &kron(&b, &c3));
        assert!(left.max_abs_diff(&right) < 1e-14);
    }

    #[test]
    fn kron_rank_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (ra, rb) in [(1, 1), (1, 2), (2, 3), (3, 3)] {
            // rank-r Hermitian matrices as sums of r random projectors
            let build = |rng: &mut ChaCha8Rng, r: usize| {
                let mut m = ComplexMatrix::zeros(3);
                for _ in 0..r {
                    let v: ComplexVector = (0..3)
                        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                        .collect();
                    m = &m + &ComplexMatrix::outer(&v);
                }
                m
            };
            let a = build(&mut rng, ra);
            let b = build(&mut rng, rb);
            assert_eq!(hermitian_rank(&a, RANK_TOL).unwrap(), ra);
            assert_eq!(hermitian_rank(&kron(&a, &b), RANK_TOL).unwrap(), ra * rb);
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let d = ComplexMatrix::real_diag(&[3.0, 1.0, 2.0]);
        assert_eq!(hermitian_eigenvalues(&d).unwrap(), vec![1.0, 2.0, 3.0]);

        let flip = ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]]);
        let vals = hermitian_eigenvalues(&flip).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-14 && (vals[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_reject_non_hermitian() {
        let m = ComplexMatrix::unit(2, 0, 1);
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NotHermitian { .. })));
        assert!(matches!(is_psd(&m, 1e-9), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eigenvalues_sum_to_trace_and_are_unitarily_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for dim in [2, 4, 8, 16] {
            let h = random_hermitian(&mut rng, dim);
            let vals = hermitian_eigenvalues(&h).unwrap();
            assert!((vals.iter().sum::<f64>() - h.trace().re).abs() < 1e-9);

            let u = random_unitary(&mut rng, dim);
            let conjugated = u.matmul(&h).unwrap().matmul(&u.adjoint()).unwrap();
            let vals2 = hermitian_eigenvalues(&conjugated).unwrap();
            for (a, b) in vals.iter().zip(&vals2) {
                assert!((a - b).abs() < 1e-8, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn eigenvectors_satisfy_eigen_equation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = random_hermitian(&mut rng, 6);
        for (value, v) in hermitian_eigh(&h).unwrap() {
            let hv = h.apply(&v).unwrap();
            let residual: f64 = hv.iter().zip(&v).map(|(a, b)| (a - b * value).norm_sqr()).sum();
            assert!(residual.sqrt() < 1e-10);
            assert!((norm_sqr(&v) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn psd_examples() {
        let check = is_psd(&ComplexMatrix::identity(8), 1e-10).unwrap();
        assert!(check.is_psd);
        assert!((check.min_eigenvalue - 1.0).abs() < 1e-14);

        let neg = ComplexMatrix::real_diag(&[1.0, -0.5]);
        let check = is_psd(&neg, 1e-10).unwrap();
        assert!(!check.is_psd);
        assert!((check.min_eigenvalue + 0.5).abs() < 1e-14);
    }

    #[test]
    fn rank_of_dependent_triple() {
        let e0 = vec![ONE, ZERO];
        let e1 = vec![ZERO, ONE];
        let sum = vec![ONE, ONE];
        assert_eq!(numerical_rank(&[e0, e1, sum], RANK_TOL).unwrap(), 2);
    }

    #[test]
    fn rank_edge_cases() {
        assert_eq!(numerical_rank(&[], RANK_TOL).unwrap(), 0);
        assert_eq!(numerical_rank(&[vec![ZERO, ZERO]], RANK_TOL).unwrap(), 0);
        let err = numerical_rank(&[vec![ONE], vec![ONE, ZERO]], RANK_TOL).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 1, found: 2 });
    }

    #[test]
    fn rank_of_random_independent_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for k in 1..=8 {
            let vs: Vec<ComplexVector> = (0..k)
                .map(|_| {
                    (0..8)
                        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                        .collect()
                })
                .collect();
            assert_eq!(numerical_rank(&vs, RANK_TOL).unwrap(), k);
        }
    }

    #[test]
    fn trace_pairing_examples() {
        for d in [1, 2, 8] {
            let id = ComplexMatrix::identity(d);
            assert_eq!(trace_pairing(&id, &id).unwrap(), re(d as f64));
        }
        let e01 = ComplexMatrix::unit(2, 0, 1);
        assert_eq!(trace_pairing(&e01, &e01).unwrap(), ONE);
        assert!(matches!(
            trace_pairing(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn trace_pairing_matches_explicit_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random_matrix(&mut rng, 5);
        let b = random_matrix(&mut rng, 5);
        let explicit = a.transpose().matmul(&b).unwrap().trace();
        assert!((trace_pairing(&a, &b).unwrap() - explicit).norm() < 1e-12);
    }

    #[test]
    fn complement_of_coordinate_span() {
        let e = |i: usize| -> ComplexVector { (0..4).map(|k| if k == i { ONE } else { ZERO }).collect() };
        let basis = orthogonal_complement(&[e(0), e(2)], 4, RANK_TOL).unwrap();
        assert_eq!(basis.len(), 2);
        assert!((basis[0][1].norm() - 1.0).abs() < 1e-12);
        assert!((basis[1][3].norm() - 1.0).abs() < 1e-12);
    }
}
