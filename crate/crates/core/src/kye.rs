//! The three-qubit family `phi_{s,t}: M_2 x M_2 -> M_2`,
//!
//! ```text
//!            [ s x22 y11                              x12y12 - x12y21 + x21y12 + x21y21 ]
//! (x, y) ->  [ x12y12 + x12y21 - x21y12 + x21y21      t x11 y22                         ]
//! ```
//!
//! with `x11 = <0|x|0>`. For `st = 8` the map is positive and its zero set
//! spans the whole space under every partial conjugation.
//!
//! On rank-one inputs `P_a = (1, a)(1, a)^dagger` the image has determinant
//! `|ab - conj(ab)|^2 + |a conj(b) + conj(a) b|^2` when `st = 8`, which
//! vanishes exactly on four phase lines. Those lines, together with the six
//! one-parameter families through the computational basis, make up the zero
//! set.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, numerical_rank, orthogonal_complement, re, ComplexMatrix, ComplexVector, C64, I, ONE, ZERO};
use crate::multipartite::{PartySubset, ProductVector, TensorShape};
use crate::witness::{choi_matrix, MultilinearMap, Witness};

/// `|st - 8|` below this counts as on the variety.
pub const VARIETY_TOL: f64 = 1e-12;

/// `2 sqrt 2`
pub const R: f64 = 2.0 * SQRT_2;

/// `omega^k` for the eighth root of unity `omega = e^{i pi / 4}`, from an exact table.
pub fn omega_pow(k: i64) -> C64 {
    let h = FRAC_1_SQRT_2;
    match k.rem_euclid(8) {
        0 => c(1.0, 0.0),
        1 => c(h, h),
        2 => c(0.0, 1.0),
        3 => c(-h, h),
        4 => c(-1.0, 0.0),
        5 => c(-h, -h),
        6 => c(0.0, -1.0),
        _ => c(h, -h),
    }
}

/// Parses a parameter token: `2r2` is `2 sqrt 2`, `r2` is `sqrt 2`, anything
/// else is read as a decimal.
pub fn parse_param(token: &str) -> Result<f64> {
    let value = match token.trim() {
        "2r2" => R,
        "r2" => SQRT_2,
        other => other
            .parse::<f64>()
            .map_err(|_| Error::InvalidParams(format!("cannot parse parameter {other:?}")))?,
    };
    if !value.is_finite() {
        return Err(Error::InvalidParams(format!("parameter {token:?} is not finite")));
    }
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KyeParams {
    pub s: f64,
    pub t: f64,
}

impl KyeParams {
    pub fn new(s: f64, t: f64) -> Result<Self> {
        if !(s > 0.0 && t > 0.0 && s.is_finite() && t.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "s and t must be positive, got s = {s}, t = {t}"
            )));
        }
        Ok(Self { s, t })
    }

    /// `s = t = 2 sqrt 2`.
    pub fn symmetric() -> Self {
        Self { s: R, t: R }
    }

    pub fn r(&self) -> f64 {
        R
    }

    /// `u = s / r`, the scale of the third factor of the zeta families.
    pub fn u(&self) -> f64 {
        self.s / R
    }

    pub fn on_variety(&self) -> bool {
        (self.s * self.t - 8.0).abs() < VARIETY_TOL
    }

    pub fn require_variety(&self) -> Result<()> {
        if self.on_variety() {
            Ok(())
        } else {
            Err(Error::OffVariety {
                product: self.s * self.t,
            })
        }
    }
}

/// `phi(x, y)` straight from the defining formula.
pub fn kye_image(p: &KyeParams, x: &ComplexMatrix, y: &ComplexMatrix) -> ComplexMatrix {
    let (x11, x12, x21, x22) = (x[(0, 0)], x[(0, 1)], x[(1, 0)], x[(1, 1)]);
    let (y11, y12, y21, y22) = (y[(0, 0)], y[(0, 1)], y[(1, 0)], y[(1, 1)]);
    let mut out = ComplexMatrix::zeros(2);
    out[(0, 0)] = x22 * y11 * p.s;
    out[(0, 1)] = x12 * y12 - x12 * y21 + x21 * y12 + x21 * y21;
    out[(1, 0)] = x12 * y12 + x12 * y21 - x21 * y12 + x21 * y21;
    out[(1, 1)] = x11 * y22 * p.t;
    out
}

/// The bilinear map as a table of its values on matrix units.
pub fn phi_kye(p: &KyeParams) -> Result<MultilinearMap> {
    KyeParams::new(p.s, p.t)?;
    MultilinearMap::from_units(TensorShape::three_qubits(), |rows, cols| {
        let x = ComplexMatrix::unit(2, rows[0], cols[0]);
        let y = ComplexMatrix::unit(2, rows[1], cols[1]);
        kye_image(p, &x, &y)
    })
}

/// The 8x8 witness, entered directly: anti-diagonal `1, 1, -1` (and
/// mirrored), middle block `[[t, 1], [1, s]]` on `|011>, |100>`.
pub fn witness_kye(p: &KyeParams) -> Result<Witness> {
    KyeParams::new(p.s, p.t)?;
    let mut m = ComplexMatrix::zeros(8);
    for (i, j, v) in [(0, 7, 1.0), (1, 6, 1.0), (2, 5, -1.0), (3, 4, 1.0)] {
        m[(i, j)] = re(v);
        m[(j, i)] = re(v);
    }
    m[(3, 3)] = re(p.t);
    m[(4, 4)] = re(p.s);
    Ok(Witness::new(m, TensorShape::three_qubits())?
        .with_meta("family", "kye")
        .with_meta("s", p.s)
        .with_meta("t", p.t)
        .with_meta("on_variety", p.on_variety()))
}

/// The same witness built through the map correspondence.
pub fn witness_from_map(p: &KyeParams) -> Result<Witness> {
    choi_matrix(&phi_kye(p)?)
}

/// `P_a = [[1, conj a], [a, |a|^2]]`, the projector onto `(1, a)` up to scale.
pub fn rank_one_projection(a: C64) -> ComplexMatrix {
    ComplexMatrix::outer(&[ONE, a])
}

/// `D(a, b) = |ab - conj(ab)|^2 + |a conj(b) + conj(a) b|^2`.
pub fn determinant_d(a: C64, b: C64) -> f64 {
    (a * b - a.conj() * b.conj()).norm_sqr() + (a * b.conj() + a.conj() * b).norm_sqr()
}

/// Index `i` of a zeta family, `1..=4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ZetaIndex(u8);

impl ZetaIndex {
    pub const ALL: [ZetaIndex; 4] = [ZetaIndex(1), ZetaIndex(2), ZetaIndex(3), ZetaIndex(4)];

    pub fn new(i: u8) -> Result<Self> {
        if (1..=4).contains(&i) {
            Ok(Self(i))
        } else {
            Err(Error::InvalidParams(format!("zeta family index {i} is not in 1..=4")))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Phase exponents of the three factors `(1, a w^e1) (x) (1, b w^e2) (x) (b, u a w^e3)`.
    fn exponents(self) -> (i64, i64, i64) {
        match self.0 {
            1 => (7, 1, 3),
            2 => (5, 3, 5),
            3 => (3, 5, 3),
            _ => (1, 7, 5),
        }
    }

    /// The zero of `D` on this phase line: `(a w^k, b w^(8-k))`.
    pub fn determinant_zero(self, a: f64, b: f64) -> (C64, C64) {
        let k = 2 * self.0 as i64 - 1;
        (omega_pow(k) * a, omega_pow(8 - k) * b)
    }

    /// Kernel vector `(r b, s a w^e3)` of `phi(P_alpha, P_beta)` at
    /// [`Self::determinant_zero`].
    pub fn kernel_vector(self, p: &KyeParams, a: f64, b: f64) -> ComplexVector {
        let (_, _, e3) = self.exponents();
        vec![re(R * b), omega_pow(e3) * (p.s * a)]
    }
}

/// The six families through the computational basis, as named by which
/// slot is free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Pv1Family {
    /// `|xi>|0>|1>`
    Xi01,
    /// `|xi>|1>|0>`
    Xi10,
    /// `|0>|eta>|0>`
    Eta0,
    /// `|1>|eta>|1>`
    Eta1,
    /// `|0>|0>|zeta>`
    Zeta0,
    /// `|1>|1>|zeta>`
    Zeta1,
}

impl Pv1Family {
    pub const ALL: [Pv1Family; 6] = [Self::Xi01, Self::Xi10, Self::Eta0, Self::Eta1, Self::Zeta0, Self::Zeta1];

    /// Cyclic order in which consecutive families share exactly one ket.
    pub const CYCLE: [Pv1Family; 6] = [Self::Xi10, Self::Eta0, Self::Zeta0, Self::Xi01, Self::Eta1, Self::Zeta1];

    /// Free slot and the fixed kets of the other two slots.
    fn layout(self) -> (usize, [usize; 2]) {
        match self {
            Self::Xi01 => (0, [0, 1]),
            Self::Xi10 => (0, [1, 0]),
            Self::Eta0 => (1, [0, 0]),
            Self::Eta1 => (1, [1, 1]),
            Self::Zeta0 => (2, [0, 0]),
            Self::Zeta1 => (2, [1, 1]),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Xi01 => "|xi>|0>|1>",
            Self::Xi10 => "|xi>|1>|0>",
            Self::Eta0 => "|0>|eta>|0>",
            Self::Eta1 => "|1>|eta>|1>",
            Self::Zeta0 => "|0>|0>|zeta>",
            Self::Zeta1 => "|1>|1>|zeta>",
        }
    }

    pub fn realize(self, free: [C64; 2]) -> ProductVector {
        let (slot, fixed) = self.layout();
        let ket = |i: usize| if i == 0 { vec![ONE, ZERO] } else { vec![ZERO, ONE] };
        let mut fixed = fixed.iter();
        ProductVector::new(
            (0..3)
                .map(|k| {
                    if k == slot {
                        free.to_vec()
                    } else {
                        ket(*fixed.next().unwrap())
                    }
                })
                .collect(),
        )
    }
}

/// One point of the zero set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroSample {
    Pv1 { family: Pv1Family, free: [C64; 2] },
    Zeta { index: ZetaIndex, a: f64, b: f64 },
}

/// `zeta_i(a, b) = (1, a w^e1) (x) (1, b w^e2) (x) (b, u a w^e3)`.
pub fn zeta_vector(p: &KyeParams, index: ZetaIndex, a: f64, b: f64) -> Result<ProductVector> {
    p.require_variety()?;
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::InvalidParams(format!(
            "zeta parameters must be positive, got a = {a}, b = {b}"
        )));
    }
    let (e1, e2, e3) = index.exponents();
    Ok(ProductVector::new(vec![
        vec![ONE, omega_pow(e1) * a],
        vec![ONE, omega_pow(e2) * b],
        vec![re(b), omega_pow(e3) * (p.u() * a)],
    ]))
}

pub fn realize_zero_vector(sample: &ZeroSample, p: &KyeParams) -> Result<ProductVector> {
    match *sample {
        ZeroSample::Pv1 { family, free } => Ok(family.realize(free)),
        ZeroSample::Zeta { index, a, b } => zeta_vector(p, index, a, b),
    }
}

/// `|000>, |001>, |010>, |101>, |110>, |111>` followed by `zeta_i(1, 1)`.
pub fn canonical_ten(p: &KyeParams) -> Result<Vec<ProductVector>> {
    p.require_variety()?;
    let shape = TensorShape::three_qubits();
    let mut out: Vec<ProductVector> = [[0, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 1], [1, 1, 0], [1, 1, 1]]
        .iter()
        .map(|d| ProductVector::basis(&shape, d))
        .collect();
    for index in ZetaIndex::ALL {
        out.push(zeta_vector(p, index, 1.0, 1.0)?);
    }
    Ok(out)
}

/// A deterministic sample of the zero set.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    /// Free-slot vectors used for each of the six basis families.
    pub free_vectors: Vec<[C64; 2]>,
    /// `(a, b)` pairs used for each of the four zeta families.
    pub zeta_params: Vec<(f64, f64)>,
}

impl Default for SampleGrid {
    fn default() -> Self {
        Self {
            free_vectors: vec![[ONE, ZERO], [ZERO, ONE], [ONE, ONE], [ONE, I]],
            zeta_params: vec![(1.0, 1.0), (1.0, 2.0), (2.0, 1.0)],
        }
    }
}

impl SampleGrid {
    pub fn pv1_only() -> Self {
        Self {
            zeta_params: Vec::new(),
            ..Self::default()
        }
    }

    pub fn empty() -> Self {
        Self {
            free_vectors: Vec::new(),
            zeta_params: Vec::new(),
        }
    }

    pub fn samples(&self) -> Vec<ZeroSample> {
        let pv1 = Pv1Family::ALL.iter().flat_map(|&family| {
            self.free_vectors
                .iter()
                .map(move |&free| ZeroSample::Pv1 { family, free })
        });
        let zeta = ZetaIndex::ALL.iter().flat_map(|&index| {
            self.zeta_params
                .iter()
                .map(move |&(a, b)| ZeroSample::Zeta { index, a, b })
        });
        pv1.chain(zeta).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sampling {
    Grid(SampleGrid),
    CanonicalTen,
}

impl Sampling {
    /// Realized sample together with the part coming from the basis families.
    fn realize(&self, p: &KyeParams) -> Result<(Vec<ProductVector>, Vec<ProductVector>)> {
        match self {
            Sampling::Grid(grid) => {
                let mut all = Vec::new();
                let mut pv1 = Vec::new();
                for sample in grid.samples() {
                    let v = realize_zero_vector(&sample, p)?;
                    if matches!(sample, ZeroSample::Pv1 { .. }) {
                        pv1.push(v.clone());
                    }
                    all.push(v);
                }
                Ok((all, pv1))
            }
            Sampling::CanonicalTen => {
                let ten = canonical_ten(p)?;
                let six = ten[..6].to_vec();
                Ok((ten, six))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpanningReport {
    pub sample_count: usize,
    /// Rank of the partially conjugated sample, for every subset.
    pub ranks: Vec<(PartySubset, usize)>,
    pub full_spanning: bool,
    pub pv1_rank: usize,
    /// Orthonormal basis of the complement of the basis-family span.
    pub pv1_complement: Vec<ComplexVector>,
}

/// Ranks of `{Gamma(S) v : v in sample}` for all eight subsets `S`.
pub fn spanning_report(p: &KyeParams, sampling: &Sampling, tol: f64) -> Result<SpanningReport> {
    p.require_variety()?;
    let (sample, pv1) = sampling.realize(p)?;
    let shape = TensorShape::three_qubits();
    let d = shape.total_dim();
    let ranks = shape
        .subsets()
        .map(|s| {
            let images: Vec<ComplexVector> = sample.iter().map(|v| v.partial_conjugate(s).flatten()).collect();
            Ok((s, numerical_rank(&images, tol)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let full_spanning = !sample.is_empty() && ranks.iter().all(|&(_, r)| r == d);
    let pv1_flat: Vec<ComplexVector> = pv1.iter().map(ProductVector::flatten).collect();
    Ok(SpanningReport {
        sample_count: sample.len(),
        ranks,
        full_spanning,
        pv1_rank: numerical_rank(&pv1_flat, tol)?,
        pv1_complement: orthogonal_complement(&pv1_flat, d, tol)?,
    })
}
