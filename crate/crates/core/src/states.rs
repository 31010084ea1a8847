//! Concrete states around the `s, t` witness: the detected X-shaped PPT
//! state, bi-separable vectors detected across each cut, and the separable
//! boundary family `rho_lambda` with full-rank partial transposes.
//!
//! # Bi-separable vectors
//!
//! For `alpha` with `alpha^2` not a nonnegative real, the vectors
//!
//! ```text
//! xi_1(alpha) = (1, conj a)_A (x) (0, 1, -a, 0)_BC   value -2|a|^2 + (a^2 + conj(a)^2)
//! xi_2(alpha) = (1, conj a)_B (x) (1, 0, 0, -a)_AC   value -2|a|^2 + (a^2 + conj(a)^2)
//! xi_3(alpha) = (1, conj a)_C (x) (1, 0, 0, -a)_AB   value -2|a|^2 - (a^2 + conj(a)^2)
//! ```
//!
//! have negative value on `W` (for any `s, t`); at `alpha = e^{i pi/4}` all
//! three give `-2`. The variants with `+a` in the two-party factor
//! ([`biseparable_vector_as_printed`]) give `2|a|^2 -+ (a^2 + conj(a)^2) >= 0`
//! and are never detected.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kye::{zeta_vector, KyeParams, ZetaIndex, R};
use crate::linalg::{re, ComplexMatrix, ComplexVector, C64, ONE, ZERO};
use crate::multipartite::{is_ppt, PptReport, ProductVector, State, TensorShape};
use crate::seesaw::Cut;
use crate::witness::{pairing, Witness};

/// Weights and product vectors of a separable state.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableDecomposition {
    pub weights: Vec<f64>,
    pub vectors: Vec<ProductVector>,
}

impl SeparableDecomposition {
    pub fn new(weights: Vec<f64>, vectors: Vec<ProductVector>) -> Result<Self> {
        if weights.len() != vectors.len() {
            return Err(Error::DimensionMismatch {
                expected: vectors.len(),
                found: weights.len(),
            });
        }
        Ok(Self { weights, vectors })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `sum w_i |v_i><v_i|` over `shape`.
    pub fn assemble(&self, shape: &TensorShape) -> Result<ComplexMatrix> {
        let mut acc = ComplexMatrix::zeros(shape.total_dim());
        for (w, v) in self.weights.iter().zip(&self.vectors) {
            v.check_shape(shape)?;
            acc = &acc + &v.projector().scale_real(*w);
        }
        Ok(acc)
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self {
            weights: self.weights.iter().map(|w| w * k).collect(),
            vectors: self.vectors.clone(),
        }
    }

    pub fn merged(&self, other: &Self) -> Self {
        Self {
            weights: self.weights.iter().chain(&other.weights).copied().collect(),
            vectors: self.vectors.iter().chain(&other.vectors).cloned().collect(),
        }
    }
}

/// The X-shaped state: diagonal `(1, 1, 1, s/2r2, t/2r2, 1, 1, 1)`,
/// anti-diagonal `-1, -1, +1, -1` on the pairs `{0,7}, {1,6}, {2,5}, {3,4}`.
/// Unnormalized.
pub fn x_state(p: &KyeParams) -> Result<State> {
    let p = KyeParams::new(p.s, p.t)?;
    let mut m = ComplexMatrix::real_diag(&[1.0, 1.0, 1.0, p.s / R, p.t / R, 1.0, 1.0, 1.0]);
    for (i, j, v) in [(0, 7, -1.0), (1, 6, -1.0), (2, 5, 1.0), (3, 4, -1.0)] {
        m[(i, j)] = re(v);
        m[(j, i)] = re(v);
    }
    State::new(m, TensorShape::three_qubits())
}

/// A vector that is a product across one bipartite cut.
#[derive(Debug, Clone, PartialEq)]
pub struct BiseparableVector {
    pub index: u8,
    pub cut: Cut,
    /// The single-party factor.
    pub local: ComplexVector,
    /// The two-party factor, indexed big-endian over its own parties.
    pub pair: ComplexVector,
    /// Flat vector in the original `A, B, C` order.
    pub flat: ComplexVector,
}

impl BiseparableVector {
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.flat)
    }

    /// `<xi|W|xi>`.
    pub fn value(&self, w: &Witness) -> Result<f64> {
        Ok(w.matrix().quadratic_form(&self.flat)?.re)
    }
}

fn build_biseparable(i: u8, alpha: C64, sign: f64) -> Result<BiseparableVector> {
    let local = vec![ONE, alpha.conj()];
    let a = alpha * sign;
    let (cut, pair) = match i {
        1 => (Cut::a_bc(), vec![ZERO, ONE, a, ZERO]),
        2 => (Cut::b_ac(), vec![ONE, ZERO, ZERO, a]),
        3 => (Cut::ab_c(), vec![ONE, ZERO, ZERO, a]),
        _ => return Err(Error::InvalidParams(format!("bi-separable index {i} is not in 1..=3"))),
    };
    let shape = TensorShape::three_qubits();
    let flat = if i == 3 {
        cut.embed(&shape, &pair, &local)?
    } else {
        cut.embed(&shape, &local, &pair)?
    };
    Ok(BiseparableVector {
        index: i,
        cut,
        local,
        pair,
        flat,
    })
}

/// `xi_i(alpha)`, detected by `W` whenever `alpha^2` is not a nonnegative real.
pub fn biseparable_vector(i: u8, alpha: C64) -> Result<BiseparableVector> {
    build_biseparable(i, alpha, -1.0)
}

/// The same construction with `+alpha` in the two-party factor, e.g.
/// `(0, 1, a, 0, 0, conj a, |a|^2, 0)` for `i = 1`.
pub fn biseparable_vector_as_printed(i: u8, alpha: C64) -> Result<BiseparableVector> {
    build_biseparable(i, alpha, 1.0)
}

/// Closed form of `<xi_i(alpha)|W|xi_i(alpha)>` for [`biseparable_vector`].
pub fn biseparable_value(i: u8, alpha: C64) -> f64 {
    let sym = (alpha * alpha).re * 2.0;
    let base = -2.0 * alpha.norm_sqr();
    if i == 3 {
        base - sym
    } else {
        base + sym
    }
}

fn three_qubit_state(matrix: ComplexMatrix) -> Result<State> {
    Ok(State::new(matrix, TensorShape::three_qubits())?.into_normalized_flag(true))
}

/// Equal mixture of `|000>, |001>, |010>, |101>, |110>, |111>`.
pub fn rho0() -> Result<(State, SeparableDecomposition)> {
    let shape = TensorShape::three_qubits();
    let vectors: Vec<ProductVector> = [[0, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 1], [1, 1, 0], [1, 1, 1]]
        .iter()
        .map(|d| ProductVector::basis(&shape, d))
        .collect();
    let dec = SeparableDecomposition::new(vec![1.0 / 6.0; 6], vectors)?;
    Ok((three_qubit_state(dec.assemble(&shape)?)?, dec))
}

/// `(1/32) sum_i |zeta_i(1,1)><zeta_i(1,1)|` at `s = t = 2 sqrt 2`; each
/// flattened `zeta_i(1,1)` has squared norm 8.
pub fn rho1() -> Result<(State, SeparableDecomposition)> {
    let p = KyeParams::symmetric();
    let vectors = ZetaIndex::ALL
        .iter()
        .map(|&i| zeta_vector(&p, i, 1.0, 1.0))
        .collect::<Result<Vec<_>>>()?;
    let dec = SeparableDecomposition::new(vec![1.0 / 32.0; 4], vectors)?;
    Ok((three_qubit_state(dec.assemble(&TensorShape::three_qubits())?)?, dec))
}

/// The printed form of `rho1`: `1/(8 sqrt 2)` times an integer-and-`sqrt 2` pattern.
pub fn rho1_fixture() -> ComplexMatrix {
    let q = SQRT_2;
    ComplexMatrix::from_real_rows([
        [q, -1.0, 0.0, 0.0, 0.0, 0.0, q, -1.0],
        [-1.0, q, 0.0, 0.0, 0.0, 0.0, -1.0, q],
        [0.0, 0.0, q, -1.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, q, -1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0, q, -1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, -1.0, q, 0.0, 0.0],
        [q, -1.0, 0.0, 0.0, 0.0, 0.0, q, -1.0],
        [-1.0, q, 0.0, 0.0, 0.0, 0.0, -1.0, q],
    ])
    .scale_real(1.0 / (8.0 * SQRT_2))
}

/// `(1 - lambda) rho0 + lambda rho1` with the merged ten-vector decomposition.
pub fn rho_lambda(lambda: f64) -> Result<(State, SeparableDecomposition)> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::OutOfRange {
            name: "lambda",
            value: lambda,
            range: "(0, 1)",
        });
    }
    let (s0, d0) = rho0()?;
    let (s1, d1) = rho1()?;
    let matrix = &s0.matrix().scale_real(1.0 - lambda) + &s1.matrix().scale_real(lambda);
    let dec = d0.scaled(1.0 - lambda).merged(&d1.scaled(lambda));
    Ok((three_qubit_state(matrix)?, dec))
}

/// `(1 - eps) x_state / 8 + eps I / 8` at `s = t = 2 sqrt 2`: a normalized
/// state strictly inside the PPT set that the witness still detects.
pub fn perturbed_detected_state(eps: f64) -> Result<State> {
    if !(eps > 0.0 && eps < 0.29) {
        return Err(Error::OutOfRange {
            name: "epsilon",
            value: eps,
            range: "(0, 0.29)",
        });
    }
    let x = x_state(&KyeParams::symmetric())?;
    let matrix = &x.matrix().scale_real((1.0 - eps) / 8.0) + &ComplexMatrix::identity(8).scale_real(eps / 8.0);
    three_qubit_state(matrix)
}

/// Entrywise check of `sum w_i |v_i><v_i|` against `state`, with positive weights.
pub fn verify_decomposition(state: &State, dec: &SeparableDecomposition, tol: f64) -> Result<bool> {
    if dec.weights.len() != dec.vectors.len() {
        return Err(Error::DimensionMismatch {
            expected: dec.vectors.len(),
            found: dec.weights.len(),
        });
    }
    let assembled = dec.assemble(state.shape())?;
    Ok(dec.weights.iter().all(|&w| w > 0.0) && assembled.max_abs_diff(state.matrix()) <= tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    SeparableCertified,
    PptEntangledDetected,
    EntangledNpt,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::SeparableCertified => "SEPARABLE_CERTIFIED",
            Verdict::PptEntangledDetected => "PPT_ENTANGLED_DETECTED",
            Verdict::EntangledNpt => "ENTANGLED_NPT",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectionReport {
    pub pairing_value: f64,
    pub ppt: PptReport,
    /// `Some(true)` when a supplied decomposition reproduced the state.
    pub certificate: Option<bool>,
    pub verdict: Verdict,
}

/// Classifies `state` against `w`. Separability is only ever certified by a
/// verified decomposition; a negative pairing on a PPT state is detection.
pub fn detect(
    state: &State,
    w: &Witness,
    decomposition: Option<&SeparableDecomposition>,
    tol: f64,
) -> Result<DetectionReport> {
    if state.shape() != w.shape() {
        return Err(Error::DimensionMismatch {
            expected: w.shape().total_dim(),
            found: state.shape().total_dim(),
        });
    }
    let pairing_value = pairing(state, w)?;
    let ppt = is_ppt(state, tol)?;
    let certificate = decomposition
        .map(|dec| verify_decomposition(state, dec, tol))
        .transpose()?;
    let verdict = if certificate == Some(true) {
        Verdict::SeparableCertified
    } else if !ppt.is_ppt {
        Verdict::EntangledNpt
    } else if pairing_value < -tol {
        Verdict::PptEntangledDetected
    } else {
        Verdict::Inconclusive
    };
    Ok(DetectionReport {
        pairing_value,
        ppt,
        certificate,
        verdict,
    })
}
