//! Alternating minimization of `<xi|W|xi>` over unit product vectors.
//!
//! With every factor but party `k` fixed, the form is `<xi_k|H_k|xi_k>` for
//! a `d_k x d_k` Hermitian `H_k`, so each step replaces `xi_k` by a bottom
//! eigenvector of `H_k`. A sweep updates the parties in order; a run stops
//! once a sweep improves the value by less than the tolerance. Restarts are
//! seeded independently (one ChaCha stream per restart index), run in
//! parallel, and reduced by `(value, restart index)`, so the result depends
//! only on `(seed, restarts)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{min_eigenpair, normalized, ComplexMatrix, ComplexVector, C64, ZERO};
use crate::multipartite::{permute_parties, PartySubset, ProductVector, TensorShape};
use crate::witness::Witness;

pub const DEFAULT_RESTARTS: usize = 64;
pub const DEFAULT_MAX_SWEEPS: usize = 500;
pub const DEFAULT_IMPROVEMENT_TOL: f64 = 1e-12;

/// Values in `[-BLOCK_POSITIVITY_TOL, 0)` count as block positive: exact
/// zeros on the zero set sit right at the boundary.
pub const BLOCK_POSITIVITY_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeeSawOptions {
    pub restarts: usize,
    pub max_sweeps: usize,
    pub improvement_tol: f64,
    pub seed: u64,
}

impl Default for SeeSawOptions {
    fn default() -> Self {
        Self {
            restarts: DEFAULT_RESTARTS,
            max_sweeps: DEFAULT_MAX_SWEEPS,
            improvement_tol: DEFAULT_IMPROVEMENT_TOL,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeeSawResult {
    /// `<xi|W|xi>` at `argmin`, whose factors have unit norm.
    pub min_value: f64,
    pub argmin: ProductVector,
    pub restarts: usize,
    pub converged: bool,
    /// Restart that produced the minimum.
    pub best_restart: usize,
}

impl SeeSawResult {
    /// Block positive within [`BLOCK_POSITIVITY_TOL`].
    pub fn is_block_positive(&self) -> bool {
        self.min_value >= -BLOCK_POSITIVITY_TOL
    }
}

/// One descent from a fixed start.
#[derive(Debug, Clone, PartialEq)]
pub struct SeeSawRun {
    pub value: f64,
    pub argmin: ProductVector,
    /// Value after each sweep; entry 0 is the starting value.
    pub history: Vec<f64>,
    pub converged: bool,
}

/// Effective operator for party `k`: `H[a][b] = sum conj(c_i) c_j W[i][j]`
/// over flat indices `i, j` whose party-`k` digits are `a` and `b`, where
/// `c_i` is the product of the other factors at the digits of `i`.
fn effective_operator(w: &ComplexMatrix, table: &[Vec<usize>], factors: &[ComplexVector], k: usize) -> ComplexMatrix {
    let dk = factors[k].len();
    let rest: Vec<C64> = table
        .iter()
        .map(|ds| {
            ds.iter()
                .enumerate()
                .filter(|&(m, _)| m != k)
                .fold(crate::linalg::ONE, |p, (m, &i)| p * factors[m][i])
        })
        .collect();
    let mut h = ComplexMatrix::zeros(dk);
    for (i, di) in table.iter().enumerate() {
        if rest[i] == ZERO {
            continue;
        }
        for (j, dj) in table.iter().enumerate() {
            if rest[j] == ZERO {
                continue;
            }
            h[(di[k], dj[k])] += rest[i].conj() * rest[j] * w[(i, j)];
        }
    }
    // drop rounding asymmetry
    &(&h + &h.adjoint()) * 0.5
}

fn form_value(w: &ComplexMatrix, pv: &ProductVector) -> f64 {
    w.quadratic_form(&pv.flatten()).expect("shape checked").re
}

/// Runs the alternating descent from `start` (factors are normalized first).
pub fn seesaw_from(w: &Witness, start: &ProductVector, max_sweeps: usize, improvement_tol: f64) -> Result<SeeSawRun> {
    w.matrix().ensure_hermitian()?;
    start.check_shape(w.shape())?;
    let shape = w.shape();
    let m = w.matrix();
    let mut factors: Vec<ComplexVector> = start.normalized().factors().to_vec();
    let table: Vec<Vec<usize>> = (0..shape.total_dim()).map(|f| shape.digits(f)).collect();
    let mut value = form_value(m, &ProductVector::new(factors.clone()));
    let mut history = vec![value];
    let mut converged = false;
    for _ in 0..max_sweeps {
        for k in 0..shape.parties() {
            let h = effective_operator(m, &table, &factors, k);
            let (_, v) = min_eigenpair(&h)?;
            factors[k] = normalized(&v);
        }
        let next = form_value(m, &ProductVector::new(factors.clone()));
        history.push(next);
        let improvement = value - next;
        value = next;
        if improvement < improvement_tol {
            converged = true;
            break;
        }
    }
    Ok(SeeSawRun {
        value,
        argmin: ProductVector::new(factors),
        history,
        converged,
    })
}

/// Uniform random unit vector in `C^d` from normalized complex Gaussians.
fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> ComplexVector {
    let v: ComplexVector = (0..d)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im)
        })
        .collect();
    normalized(&v)
}

/// Random start for `restart`; independent of every other restart index.
pub fn random_start(shape: &TensorShape, seed: u64, restart: usize) -> ProductVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    ProductVector::new(shape.dims().iter().map(|&d| random_unit(&mut rng, d)).collect())
}

/// Best see-saw minimum of `<xi|W|xi>` over unit product vectors.
pub fn seesaw_block_positivity(w: &Witness, options: &SeeSawOptions) -> Result<SeeSawResult> {
    w.matrix().ensure_hermitian()?;
    if options.restarts == 0 {
        return Err(Error::InvalidParams("at least one restart is required".into()));
    }
    let runs = (0..options.restarts)
        .into_par_iter()
        .map(|r| {
            let start = random_start(w.shape(), options.seed, r);
            seesaw_from(w, &start, options.max_sweeps, options.improvement_tol).map(|run| (r, run))
        })
        .collect::<Result<Vec<_>>>()?;
    let (best_restart, best) = runs
        .into_iter()
        .min_by(|a, b| a.1.value.total_cmp(&b.1.value).then(a.0.cmp(&b.0)))
        .expect("restarts > 0");
    Ok(SeeSawResult {
        min_value: best.value,
        argmin: best.argmin,
        restarts: options.restarts,
        converged: best.converged,
        best_restart,
    })
}

/// A bipartition of the parties into two nonempty groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cut {
    first: PartySubset,
    parties: usize,
}

impl Cut {
    pub fn new(first: PartySubset, parties: usize) -> Result<Self> {
        let full = PartySubset::full(parties);
        if first.is_empty() || first == full || first.bits() & !full.bits() != 0 {
            return Err(Error::InvalidCut(format!(
                "{first} is not a proper nonempty subset of {parties} parties"
            )));
        }
        Ok(Self { first, parties })
    }

    /// `A | BC`
    pub fn a_bc() -> Self {
        Self::new(PartySubset::from_parties(&[0]), 3).unwrap()
    }

    /// `B | AC`
    pub fn b_ac() -> Self {
        Self::new(PartySubset::from_parties(&[1]), 3).unwrap()
    }

    /// `AB | C`
    pub fn ab_c() -> Self {
        Self::new(PartySubset::from_parties(&[0, 1]), 3).unwrap()
    }

    pub fn first(&self) -> PartySubset {
        self.first
    }

    pub fn second(&self) -> PartySubset {
        self.first.complement(self.parties)
    }

    /// Party order with the first group in front, each group kept in order.
    pub fn permutation(&self) -> Vec<usize> {
        self.first.parties().chain(self.second().parties()).collect()
    }

    pub fn label(&self) -> String {
        let name = |s: PartySubset| s.parties().map(party_letter).collect::<String>();
        format!("{}|{}", name(self.first), name(self.second()))
    }

    /// Two-party shape `(prod of first dims, prod of second dims)`.
    pub fn grouped_shape(&self, shape: &TensorShape) -> Result<TensorShape> {
        let prod = |s: PartySubset| s.parties().map(|k| shape.dims()[k]).product::<usize>();
        TensorShape::new(vec![prod(self.first), prod(self.second())])
    }

    /// Flat vector in the original party order for `first (x) second`, each
    /// factor indexed big-endian over its own group.
    pub fn embed(&self, shape: &TensorShape, first: &[C64], second: &[C64]) -> Result<ComplexVector> {
        if shape.parties() != self.parties {
            return Err(Error::InvalidCut(format!(
                "cut is over {} parties, shape has {}",
                self.parties,
                shape.parties()
            )));
        }
        let grouped = self.grouped_shape(shape)?;
        if first.len() != grouped.dims()[0] || second.len() != grouped.dims()[1] {
            return Err(Error::DimensionMismatch {
                expected: grouped.total_dim(),
                found: first.len() * second.len(),
            });
        }
        let sub_index =
            |s: PartySubset, digits: &[usize]| s.parties().fold(0, |acc, k| acc * shape.dims()[k] + digits[k]);
        Ok((0..shape.total_dim())
            .map(|flat| {
                let digits = shape.digits(flat);
                first[sub_index(self.first, &digits)] * second[sub_index(self.second(), &digits)]
            })
            .collect())
    }

    /// `W` with parties regrouped into the two sides of the cut.
    pub fn regroup(&self, w: &Witness) -> Result<Witness> {
        if w.shape().parties() != self.parties {
            return Err(Error::InvalidCut(format!(
                "cut is over {} parties, shape has {}",
                self.parties,
                w.shape().parties()
            )));
        }
        let (m, _) = permute_parties(w.matrix(), w.shape(), &self.permutation())?;
        Witness::new(m, self.grouped_shape(w.shape())?)
    }
}

fn party_letter(k: usize) -> char {
    (b'A' + k as u8) as char
}

/// Block positivity across a bipartite cut: the two-party see-saw on the
/// regrouped matrix. The argmin is over the grouped shape; use
/// [`Cut::embed`] to map it back to the original party order.
pub fn cut_block_positivity(w: &Witness, cut: &Cut, options: &SeeSawOptions) -> Result<SeeSawResult> {
    seesaw_block_positivity(&cut.regroup(w)?, options)
}

/// Qubit factor `(cos theta, e^{i phi} sin theta)`.
pub fn qubit_point(theta: f64, phi: f64) -> ComplexVector {
    vec![C64::new(theta.cos(), 0.0), C64::from_polar(theta.sin(), phi)]
}

/// Brute-force minimum of `<xi|W|xi>` over qubit factors on a grid with
/// `thetas` points in `[0, pi/2]` and `phis` points in `[0, 2 pi)`. Every
/// party is enumerated; the last one is scanned against its effective
/// operator, which gives the same values at lower cost.
pub fn grid_minimum(w: &Witness, thetas: usize, phis: usize) -> Result<(f64, ProductVector)> {
    let shape = w.shape();
    if shape.dims().iter().any(|&d| d != 2) {
        return Err(Error::InvalidShape(format!("grid search needs qubits, got {shape}")));
    }
    if thetas < 2 || phis < 1 {
        return Err(Error::InvalidParams(
            "grid needs at least 2 polar and 1 azimuthal points".into(),
        ));
    }
    w.matrix().ensure_hermitian()?;
    let points: Vec<ComplexVector> = (0..thetas)
        .flat_map(|a| {
            let theta = std::f64::consts::FRAC_PI_2 * a as f64 / (thetas - 1) as f64;
            (0..phis).map(move |b| qubit_point(theta, std::f64::consts::TAU * b as f64 / phis as f64))
        })
        .collect();
    let table: Vec<Vec<usize>> = (0..shape.total_dim()).map(|f| shape.digits(f)).collect();
    let n = shape.parties();
    let mut odometer = vec![0usize; n - 1];
    let mut best = (f64::INFINITY, Vec::new());
    loop {
        let mut factors: Vec<ComplexVector> = odometer.iter().map(|&i| points[i].clone()).collect();
        factors.push(points[0].clone());
        let h = effective_operator(w.matrix(), &table, &factors, n - 1);
        for p in &points {
            let v = h.quadratic_form(p)?.re;
            if v < best.0 {
                factors[n - 1] = p.clone();
                best = (v, factors.clone());
            }
        }
        let mut k = n - 1;
        loop {
            if k == 0 {
                return Ok((best.0, ProductVector::new(best.1)));
            }
            k -= 1;
            odometer[k] += 1;
            if odometer[k] < points.len() {
                break;
            }
            odometer[k] = 0;
        }
    }
}
