//! Reference computations written directly from the displayed matrices and
//! closed forms, sharing no code with the library beyond its value types.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64 as C;

pub const R: f64 = 2.0 * std::f64::consts::SQRT_2;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Nonzero entries of W(s, t) read off the display, both triangles.
pub fn w_entries(s: f64, t: f64) -> Vec<(usize, usize, f64)> {
    let mut out = vec![(3, 3, t), (4, 4, s)];
    for (i, j, v) in [(0, 7, 1.0), (1, 6, 1.0), (2, 5, -1.0), (3, 4, 1.0)] {
        out.push((i, j, v));
        out.push((j, i, v));
    }
    out
}

pub fn w_dense(s: f64, t: f64) -> Vec<Vec<C>> {
    let mut m = vec![vec![c(0.0, 0.0); 8]; 8];
    for (i, j, v) in w_entries(s, t) {
        m[i][j] = c(v, 0.0);
    }
    m
}

/// `<v|W|v>` from the sparse entries.
pub fn w_form(s: f64, t: f64, v: &[C]) -> f64 {
    w_entries(s, t)
        .iter()
        .map(|&(i, j, w)| (v[i].conj() * v[j] * w).re)
        .sum()
}

pub fn kron3(a: &[C], b: &[C], x: &[C]) -> Vec<C> {
    let mut out = Vec::with_capacity(8);
    for &p in a {
        for &q in b {
            for &r in x {
                out.push(p * q * r);
            }
        }
    }
    out
}

/// Partial transpose of an 8x8 matrix on the qubits whose bits are set in
/// `mask` (bit 2 is the first party): swap the masked bits of row and column.
pub fn partial_transpose(m: &[Vec<C>], mask: usize) -> Vec<Vec<C>> {
    let shift = [4usize, 2, 1];
    let mut out = vec![vec![c(0.0, 0.0); 8]; 8];
    for (i, row) in m.iter().enumerate() {
        for (j, &z) in row.iter().enumerate() {
            let (mut a, mut b) = (i, j);
            for (k, &bit) in shift.iter().enumerate() {
                if mask & (1 << (2 - k)) != 0 && (a & bit) != (b & bit) {
                    a ^= bit;
                    b ^= bit;
                }
            }
            out[a][b] = z;
        }
    }
    out
}

pub fn eigenvalues(m: &[Vec<C>]) -> Vec<f64> {
    let n = m.len();
    let dm = DMatrix::from_fn(n, n, |i, j| m[i][j]);
    let mut ev: Vec<f64> = dm.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Rank from singular values above `rel * max`.
pub fn svd_rank(vectors: &[Vec<C>], rel: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let dm = DMatrix::from_fn(vectors[0].len(), vectors.len(), |i, j| vectors[j][i]);
    let sv = dm.singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    sv.iter().filter(|&&x| x > rel * max).count()
}

/// Eigenvalues of a 2x2 Hermitian `[[a, b], [conj b, d]]`, ascending.
pub fn eig2(a: f64, b: C, d: f64) -> (f64, f64) {
    let mean = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    (mean - rad, mean + rad)
}

/// `phi(P_a, P_b)` for `P_z = (1, z)(1, z)^dagger`, entry by entry.
pub fn image_rank_one(s: f64, t: f64, a: C, b: C) -> [[C; 2]; 2] {
    // P_z = [[1, conj z], [z, |z|^2]]
    let (x11, x12, x21, x22) = (c(1.0, 0.0), a.conj(), a, c(a.norm_sqr(), 0.0));
    let (y11, y12, y21, y22) = (c(1.0, 0.0), b.conj(), b, c(b.norm_sqr(), 0.0));
    [
        [s * x22 * y11, x12 * y12 - x12 * y21 + x21 * y12 + x21 * y21],
        [x12 * y12 + x12 * y21 - x21 * y12 + x21 * y21, t * x11 * y22],
    ]
}

pub fn omega(k: i32) -> C {
    C::from_polar(1.0, std::f64::consts::FRAC_PI_4 * k as f64)
}

/// The displayed rho_1.
pub fn rho1_display() -> Vec<Vec<C>> {
    let q = std::f64::consts::SQRT_2;
    let rows = [
        [q, -1.0, 0.0, 0.0, 0.0, 0.0, q, -1.0],
        [-1.0, q, 0.0, 0.0, 0.0, 0.0, -1.0, q],
        [0.0, 0.0, q, -1.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, q, -1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0, q, -1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, -1.0, q, 0.0, 0.0],
        [q, -1.0, 0.0, 0.0, 0.0, 0.0, q, -1.0],
        [-1.0, q, 0.0, 0.0, 0.0, 0.0, -1.0, q],
    ];
    rows.iter()
        .map(|r| r.iter().map(|&x| c(x / (8.0 * q), 0.0)).collect())
        .collect()
}

/// The displayed X-shaped state.
pub fn x_display(s: f64, t: f64) -> Vec<Vec<C>> {
    let mut m = vec![vec![c(0.0, 0.0); 8]; 8];
    for (i, d) in [1.0, 1.0, 1.0, s / R, t / R, 1.0, 1.0, 1.0].iter().enumerate() {
        m[i][i] = c(*d, 0.0);
    }
    for (i, j, v) in [(0, 7, -1.0), (1, 6, -1.0), (2, 5, 1.0), (3, 4, -1.0)] {
        m[i][j] = c(v, 0.0);
        m[j][i] = c(v, 0.0);
    }
    m
}

pub fn to_rows(m: &kye_witness::ComplexMatrix) -> Vec<Vec<C>> {
    m.rows().map(|r| r.to_vec()).collect()
}

pub fn max_diff(a: &[Vec<C>], b: &[Vec<C>]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `tr(W rho^T)` = `sum_ij rho_ij W_ij`.
pub fn pairing(rho: &[Vec<C>], w: &[Vec<C>]) -> C {
    let mut acc = c(0.0, 0.0);
    for i in 0..rho.len() {
        for j in 0..rho.len() {
            acc += rho[i][j] * w[i][j];
        }
    }
    acc
}

/// Smallest eigenvalue of every partial transpose, masks 0..8.
pub fn pt_minima(m: &[Vec<C>]) -> Vec<f64> {
    (0..8).map(|mask| eigenvalues(&partial_transpose(m, mask))[0]).collect()
}
