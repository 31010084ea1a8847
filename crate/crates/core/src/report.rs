//! Machine-readable verification reports. Every report is deterministic for
//! fixed inputs: timings are left at zero unless the caller fills them in.

use std::f64::consts::{SQRT_2, TAU};
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::io::MatrixDocument;
use crate::kye::{
    determinant_d, omega_pow, phi_kye, rank_one_projection, realize_zero_vector, spanning_report, witness_kye,
    KyeParams, SampleGrid, Sampling, SpanningReport, R, VARIETY_TOL,
};
use crate::linalg::{hermitian_eigenvalues, is_psd, ComplexMatrix, ComplexVector, C64, HERMITIAN_TOL, RANK_TOL};
use crate::multipartite::{interior_of_t_check, is_ppt};
use crate::seesaw::{
    cut_block_positivity, grid_minimum, seesaw_block_positivity, Cut, SeeSawOptions, BLOCK_POSITIVITY_TOL,
};
use crate::states::{
    biseparable_vector, detect, perturbed_detected_state, rho1, rho1_fixture, rho_lambda, verify_decomposition,
    x_state, SeparableDecomposition,
};
use crate::witness::{choi_matrix, pairing, value_on_product, Witness};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Pairing and zero-value checks.
pub const ZERO_TOL: f64 = 1e-10;

/// Parameter pairs on `st = 8` used by the grid checks.
pub const VARIETY_SAMPLE: [(f64, f64); 4] = [(R, R), (2.0, 4.0), (4.0, 2.0), (1.0, 8.0)];

const GOLDEN_WITNESS: &str = include_str!("../fixtures/witness_2r2.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Headline number of the check.
    pub value: f64,
    pub details: Value,
    pub tolerance: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, value: f64, tolerance: f64, details: Value) -> Self {
        Self {
            name: name.into(),
            status: Status::of(ok),
            value,
            details,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub command: String,
    pub params: Value,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub result: Value,
    pub elapsed_ms: u64,
}

impl ReportDocument {
    pub fn new(command: &str, params: Value, seed: u64) -> Self {
        Self {
            tool_version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            params,
            seed,
            checks: Vec::new(),
            warnings: Vec::new(),
            result: Value::Null,
            elapsed_ms: 0,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// 0 when every check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// One line per check, for terminals.
    pub fn to_text(&self) -> String {
        let mut out = format!("kye-witness {} {}\n", self.tool_version, self.command);
        for w in &self.warnings {
            out += &format!("WARN {w}\n");
        }
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            out += &format!("{status} {:<32} {:+.12e} (tol {:e})\n", c.name, c.value, c.tolerance);
        }
        if !self.result.is_null() {
            out += &format!("{}\n", serde_json::to_string_pretty(&self.result).expect("json"));
        }
        out
    }

    fn push(&mut self, check: Check) {
        self.checks.push(check);
    }
}

pub fn params_echo(p: &KyeParams) -> Value {
    json!({ "s": p.s, "t": p.t, "st": p.s * p.t, "on_variety": p.on_variety() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub restarts: usize,
    pub seed: u64,
    /// Tolerance for pairing and zero-value checks.
    pub tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            restarts: crate::seesaw::DEFAULT_RESTARTS,
            seed: 7,
            tol: ZERO_TOL,
        }
    }
}

impl VerifyOptions {
    fn seesaw(&self) -> SeeSawOptions {
        SeeSawOptions {
            restarts: self.restarts,
            seed: self.seed,
            ..SeeSawOptions::default()
        }
    }
}

/// `24` phases times moduli `{0.5, 1, 2}`.
pub fn rank_one_grid() -> Vec<C64> {
    [0.5, 1.0, 2.0]
        .iter()
        .flat_map(|&m| (0..24).map(move |k| C64::from_polar(m, TAU * k as f64 / 24.0)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankOneScan {
    pub pairs: usize,
    pub min_eigenvalue: f64,
    pub max_det_residual: f64,
}

/// Smallest eigenvalue of `phi(P_a, P_b)` and largest `|det - D(a, b)|` over
/// the rank-one grid.
pub fn rank_one_scan(p: &KyeParams) -> Result<RankOneScan> {
    let phi = phi_kye(p)?;
    let grid = rank_one_grid();
    let mut scan = RankOneScan {
        pairs: 0,
        min_eigenvalue: f64::INFINITY,
        max_det_residual: 0.0,
    };
    for &a in &grid {
        let pa = rank_one_projection(a);
        for &b in &grid {
            let img = phi.evaluate(&[pa.clone(), rank_one_projection(b)])?;
            let det = (img[(0, 0)] * img[(1, 1)] - img[(0, 1)] * img[(1, 0)]).re;
            scan.min_eigenvalue = scan.min_eigenvalue.min(hermitian_eigenvalues(&img)?[0]);
            scan.max_det_residual = scan.max_det_residual.max((det - determinant_d(a, b)).abs());
            scan.pairs += 1;
        }
    }
    Ok(scan)
}

/// Largest `|<v|W|v>|` over the default zero-set sample.
pub fn zero_set_residual(p: &KyeParams) -> Result<(usize, f64)> {
    let w = witness_kye(p)?;
    let samples = SampleGrid::default().samples();
    let mut worst: f64 = 0.0;
    for s in &samples {
        worst = worst.max(value_on_product(&w, &realize_zero_vector(s, p)?)?.abs());
    }
    Ok((samples.len(), worst))
}

fn spanning_details(r: &SpanningReport) -> Value {
    json!({
        "samples": r.sample_count,
        "subsets": r.ranks.iter().map(|(s, _)| s.to_string()).collect::<Vec<_>>(),
        "ranks": r.ranks.iter().map(|&(_, k)| k).collect::<Vec<_>>(),
        "full_spanning": r.full_spanning,
    })
}

fn complex_json(v: &[C64]) -> Value {
    Value::Array(v.iter().map(|z| json!([z.re, z.im])).collect())
}

/// The complement of the basis-family span is `span{|011>, |100>}`.
fn complement_is_e3_e4(basis: &[ComplexVector], tol: f64) -> bool {
    basis.len() == 2
        && basis
            .iter()
            .all(|v| v.iter().enumerate().all(|(i, z)| i == 3 || i == 4 || z.norm() <= tol))
}

fn spanning_check(name: &str, r: &SpanningReport) -> Check {
    let min_rank = r.ranks.iter().map(|&(_, k)| k).min().unwrap_or(0);
    Check::new(name, r.full_spanning, min_rank as f64, RANK_TOL, spanning_details(r))
}

fn pv1_check(r: &SpanningReport, tol: f64) -> Check {
    let ok = r.pv1_rank == 6 && complement_is_e3_e4(&r.pv1_complement, tol);
    let details = json!({
        "rank": r.pv1_rank,
        "complement": r.pv1_complement.iter().map(|v| complex_json(v)).collect::<Vec<_>>(),
    });
    Check::new("pv1_span", ok, r.pv1_rank as f64, RANK_TOL, details)
}

fn cut_minima(w: &Witness, options: &SeeSawOptions) -> Result<Vec<(String, f64)>> {
    [Cut::a_bc(), Cut::b_ac(), Cut::ab_c()]
        .iter()
        .map(|cut| Ok((cut.label(), cut_block_positivity(w, cut, options)?.min_value)))
        .collect()
}

fn biseparable_values(w: &Witness) -> Result<Vec<f64>> {
    (1..=3).map(|i| biseparable_vector(i, omega_pow(1))?.value(w)).collect()
}

/// Hermiticity, non-positivity, rank-one positivity, see-saw block
/// positivity, zero set, spanning and cut checks. Off `st = 8` the checks
/// that depend on positivity of the map are skipped with a warning.
pub fn verify_report(p: &KyeParams, o: &VerifyOptions) -> Result<ReportDocument> {
    let p = KyeParams::new(p.s, p.t)?;
    let w = witness_kye(&p)?;
    let mut doc = ReportDocument::new("verify", params_echo(&p), o.seed);

    let dev = w.matrix().hermitian_deviation();
    doc.push(Check::new(
        "hermitian",
        dev <= HERMITIAN_TOL,
        dev,
        HERMITIAN_TOL,
        json!({}),
    ));

    let spectrum = hermitian_eigenvalues(w.matrix())?;
    doc.push(Check::new(
        "witness_not_psd",
        spectrum[0] < -o.tol,
        spectrum[0],
        o.tol,
        json!({ "spectrum": spectrum }),
    ));

    if p.on_variety() {
        let scan = rank_one_scan(&p)?;
        doc.push(Check::new(
            "rank_one_positivity_grid",
            scan.min_eigenvalue >= -o.tol && scan.max_det_residual <= o.tol,
            scan.min_eigenvalue,
            o.tol,
            json!({ "pairs": scan.pairs, "max_det_residual": scan.max_det_residual }),
        ));

        let ss = seesaw_block_positivity(&w, &o.seesaw())?;
        doc.push(Check::new(
            "seesaw_block_positive",
            ss.is_block_positive(),
            ss.min_value,
            BLOCK_POSITIVITY_TOL,
            json!({ "restarts": ss.restarts, "best_restart": ss.best_restart, "converged": ss.converged }),
        ));

        let (count, worst) = zero_set_residual(&p)?;
        doc.push(Check::new(
            "zero_set_membership",
            worst <= o.tol,
            worst,
            o.tol,
            json!({ "samples": count }),
        ));

        let span = spanning_report(&p, &Sampling::Grid(SampleGrid::default()), RANK_TOL)?;
        doc.push(spanning_check("spanning_ranks", &span));
        doc.push(pv1_check(&span, o.tol));
    } else {
        doc.warnings.push(format!(
            "st = {} is off the curve st = 8 (|st - 8| >= {VARIETY_TOL:e}); positivity, zero-set and spanning checks skipped",
            p.s * p.t
        ));
    }

    let values = biseparable_values(&w)?;
    let worst = values.iter().map(|v| (v + 2.0).abs()).fold(0.0, f64::max);
    doc.push(Check::new(
        "biseparable_detection",
        worst <= o.tol,
        values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        o.tol,
        json!({ "alpha": "e^{i pi/4}", "values": values }),
    ));

    let cuts = cut_minima(&w, &o.seesaw())?;
    let highest = cuts.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    doc.push(Check::new(
        "cut_positivity_failures",
        highest < -BLOCK_POSITIVITY_TOL,
        highest,
        BLOCK_POSITIVITY_TOL,
        json!(cuts
            .iter()
            .map(|(l, v)| (l.clone(), json!(v)))
            .collect::<serde_json::Map<_, _>>()),
    ));
    Ok(doc)
}

/// State argument of `detect`.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    XState,
    RhoLambda(f64),
    Perturbed(f64),
    File(PathBuf),
}

impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let number = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| Error::InvalidParams(format!("not a number: {v:?}")))
        };
        match s.split_once(':') {
            None if s == "xstate" => Ok(StateSpec::XState),
            Some(("rho-lambda", v)) => Ok(StateSpec::RhoLambda(number(v)?)),
            Some(("perturbed", v)) => Ok(StateSpec::Perturbed(number(v)?)),
            Some(("file", v)) if !v.is_empty() => Ok(StateSpec::File(PathBuf::from(v))),
            _ => Err(Error::InvalidParams(format!(
                "state spec {s:?} is not one of xstate, rho-lambda:<l>, perturbed:<eps>, file:<path>"
            ))),
        }
    }
}

impl std::fmt::Display for StateSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StateSpec::XState => write!(f, "xstate"),
            StateSpec::RhoLambda(l) => write!(f, "rho-lambda:{l}"),
            StateSpec::Perturbed(e) => write!(f, "perturbed:{e}"),
            StateSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// Pairing, PPT table and verdict. The checks only cover the validity of
/// the input (and of a separability certificate when one exists); the
/// verdict itself is data, not a pass/fail condition.
pub fn detect_report(spec: &StateSpec, p: &KyeParams, tol: f64) -> Result<ReportDocument> {
    let p = KyeParams::new(p.s, p.t)?;
    let w = witness_kye(&p)?;
    let (state, dec): (_, Option<SeparableDecomposition>) = match spec {
        StateSpec::XState => (x_state(&p)?, None),
        StateSpec::RhoLambda(l) => {
            let (s, d) = rho_lambda(*l)?;
            (s, Some(d))
        }
        StateSpec::Perturbed(e) => (perturbed_detected_state(*e)?, None),
        StateSpec::File(path) => (crate::io::read_state(path)?, None),
    };
    let mut doc = ReportDocument::new("detect", params_echo(&p), 0);
    if !p.on_variety() {
        doc.warnings.push(format!(
            "st = {} is off the curve st = 8; W need not be a witness",
            p.s * p.t
        ));
    }
    let psd = is_psd(state.matrix(), tol)?;
    doc.push(Check::new("state_psd", psd.is_psd, psd.min_eigenvalue, tol, json!({})));
    let report = detect(&state, &w, dec.as_ref(), tol)?;
    if let Some(ok) = report.certificate {
        let d = dec.as_ref().expect("certificate implies decomposition");
        doc.push(Check::new(
            "decomposition_verified",
            ok,
            d.len() as f64,
            tol,
            json!({ "weights": d.weights }),
        ));
    }
    doc.result = json!({
        "state": spec.to_string(),
        "trace": state.trace(),
        "pairing": report.pairing_value,
        "ppt": {
            "is_ppt": report.ppt.is_ppt,
            "min_eigenvalues": report.ppt.min_eigenvalues.iter()
                .map(|(s, v)| (s.to_string(), json!(v)))
                .collect::<serde_json::Map<_, _>>(),
        },
        "verdict": report.verdict.as_str(),
    });
    Ok(doc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Families {
    Default,
    Pv1,
    CanonicalTen,
}

impl FromStr for Families {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(Families::Default),
            "pv1" => Ok(Families::Pv1),
            "canonical-ten" => Ok(Families::CanonicalTen),
            _ => Err(Error::InvalidParams(format!(
                "families {s:?} is not one of default, pv1, canonical-ten"
            ))),
        }
    }
}

/// Per-subset rank table for the chosen sample, plus the basis-family span.
pub fn spanning_document(p: &KyeParams, families: Families, seed: u64, tol: f64) -> Result<ReportDocument> {
    let p = KyeParams::new(p.s, p.t)?;
    let mut doc = ReportDocument::new("spanning", params_echo(&p), seed);
    if !p.on_variety() {
        doc.warnings.push(format!(
            "st = {} is off the curve st = 8; the zero set is not described",
            p.s * p.t
        ));
        doc.push(Check::new("on_variety", false, p.s * p.t, VARIETY_TOL, json!({})));
        return Ok(doc);
    }
    let sampling = match families {
        Families::Default => Sampling::Grid(SampleGrid::default()),
        Families::Pv1 => Sampling::Grid(SampleGrid::pv1_only()),
        Families::CanonicalTen => Sampling::CanonicalTen,
    };
    let r = spanning_report(&p, &sampling, tol)?;
    if families == Families::Pv1 {
        doc.result = spanning_details(&r);
    } else {
        doc.push(spanning_check("spanning_ranks", &r));
    }
    doc.push(pv1_check(&r, ZERO_TOL));
    Ok(doc)
}

fn golden_witness() -> Result<ComplexMatrix> {
    MatrixDocument::from_json(GOLDEN_WITNESS)?.to_matrix()
}

fn spectrum_residual(spectrum: &[f64]) -> f64 {
    let expected = [-1.0, -1.0, -1.0, 1.0, 1.0, 1.0, R - 1.0, R + 1.0];
    let mut sorted = expected;
    sorted.sort_by(f64::total_cmp);
    spectrum
        .iter()
        .zip(&sorted)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// The twelve acceptance checks, once each, at `s = t = 2 sqrt 2` (and the
/// other sample pairs on `st = 8` where a check ranges over them).
pub fn full_report(o: &VerifyOptions) -> Result<ReportDocument> {
    let p = KyeParams::symmetric();
    let w = witness_kye(&p)?;
    let mut doc = ReportDocument::new("report", params_echo(&p), o.seed);
    let tol = o.tol;

    let golden = golden_witness()?.max_abs_diff(w.matrix());
    let via_map = choi_matrix(&phi_kye(&p)?)?.matrix().max_abs_diff(w.matrix());
    doc.push(Check::new(
        "c01_witness_fixture",
        golden == 0.0 && via_map == 0.0,
        golden.max(via_map),
        0.0,
        json!({ "golden_diff": golden, "choi_diff": via_map }),
    ));

    let spectrum = hermitian_eigenvalues(w.matrix())?;
    let residual = spectrum_residual(&spectrum);
    doc.push(Check::new(
        "c02_non_positivity",
        (spectrum[0] + 1.0).abs() <= 1e-9 && residual <= 1e-9,
        spectrum[0],
        1e-9,
        json!({ "spectrum": spectrum, "max_residual": residual }),
    ));

    let mut scans = Vec::new();
    for (s, t) in VARIETY_SAMPLE {
        scans.push(rank_one_scan(&KyeParams::new(s, t)?)?);
    }
    let min_eig = scans.iter().map(|s| s.min_eigenvalue).fold(f64::INFINITY, f64::min);
    let det_res = scans.iter().map(|s| s.max_det_residual).fold(0.0, f64::max);
    doc.push(Check::new(
        "c03_positivity_grid",
        min_eig >= -tol && det_res <= tol,
        min_eig,
        tol,
        json!({ "pairs_per_params": scans[0].pairs, "max_det_residual": det_res }),
    ));

    let ss = seesaw_block_positivity(&w, &o.seesaw())?;
    let (grid_min, _) = grid_minimum(&w, 7, 24)?;
    doc.push(Check::new(
        "c04_seesaw_certificate",
        ss.min_value.abs() <= BLOCK_POSITIVITY_TOL && ss.min_value >= grid_min - 1e-6,
        ss.min_value,
        BLOCK_POSITIVITY_TOL,
        json!({ "grid_minimum": grid_min, "restarts": ss.restarts }),
    ));

    let (count, worst) = zero_set_residual(&p)?;
    doc.push(Check::new(
        "c05_zero_set",
        worst <= tol,
        worst,
        tol,
        json!({ "samples": count }),
    ));

    let default = spanning_report(&p, &Sampling::Grid(SampleGrid::default()), RANK_TOL)?;
    let ten = spanning_report(&p, &Sampling::CanonicalTen, RANK_TOL)?;
    let pv1_ok = default.pv1_rank == 6 && complement_is_e3_e4(&default.pv1_complement, tol);
    doc.push(Check::new(
        "c06_full_spanning",
        default.full_spanning && ten.full_spanning && ten.sample_count == 10 && pv1_ok,
        default.ranks.iter().map(|r| r.1).min().unwrap_or(0) as f64,
        RANK_TOL,
        json!({
            "default": spanning_details(&default),
            "canonical_ten": spanning_details(&ten),
            "pv1_rank": default.pv1_rank,
        }),
    ));

    let target = 8.0 / SQRT_2 - 8.0;
    let mut pair_values = Vec::new();
    let mut all_ppt = true;
    for (s, t) in VARIETY_SAMPLE {
        let q = KyeParams::new(s, t)?;
        let x = x_state(&q)?;
        pair_values.push(pairing(&x, &witness_kye(&q)?)?);
        all_ppt &= is_ppt(&x, tol)?.is_ppt;
    }
    let worst = pair_values.iter().map(|v| (v - target).abs()).fold(0.0, f64::max);
    doc.push(Check::new(
        "c07_detection_value",
        worst <= tol && all_ppt,
        pair_values[0],
        tol,
        json!({ "pairings": pair_values, "expected": target, "ppt": all_ppt }),
    ));

    // strict "< -1" is judged at the see-saw tolerance: the exact minimum
    // over unit cut-product vectors is lambda_min(W) = -1
    let values = biseparable_values(&w)?;
    let cuts = cut_minima(&w, &o.seesaw())?;
    let xi_ok = values.iter().all(|v| (v + 2.0).abs() <= tol);
    let highest = cuts.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    doc.push(Check::new(
        "c08_biseparable_detection",
        xi_ok && highest < -1.0 - BLOCK_POSITIVITY_TOL,
        highest,
        BLOCK_POSITIVITY_TOL,
        json!({
            "xi_values": values,
            "cut_minima": cuts.iter().map(|(l, v)| (l.clone(), json!(v))).collect::<serde_json::Map<_, _>>(),
        }),
    ));

    let mut c09 = Vec::new();
    let mut c09_ok = true;
    for lambda in [0.1, 0.5, 0.9] {
        let (state, dec) = rho_lambda(lambda)?;
        let verified = verify_decomposition(&state, &dec, tol)?;
        let value = pairing(&state, &w)?;
        let interior = interior_of_t_check(&state, RANK_TOL)?;
        let ppt = is_ppt(&state, tol)?;
        let min_eig = ppt.min_eigenvalues.iter().map(|e| e.1).fold(f64::INFINITY, f64::min);
        c09_ok &= verified && value.abs() <= tol && interior.is_interior && min_eig > 1e-6;
        c09.push(json!({ "lambda": lambda, "verified": verified, "pairing": value, "min_pt_eigenvalue": min_eig }));
    }
    doc.push(Check::new(
        "c09_boundary_family",
        c09_ok,
        c09.len() as f64,
        tol,
        Value::Array(c09),
    ));

    let (r1, _) = rho1()?;
    let fixture = rho1_fixture();
    let diff = r1.matrix().max_abs_diff(&fixture);
    let entry = r1.matrix()[(0, 1)].re;
    doc.push(Check::new(
        "c10_rho1_fixture",
        diff <= 1e-12 && (entry + 1.0 / (8.0 * SQRT_2)).abs() <= 1e-12,
        diff,
        1e-12,
        json!({ "entry_0_1": entry }),
    ));

    let pert = perturbed_detected_state(0.1)?;
    let value = pairing(&pert, &w)?;
    let min_pt = is_ppt(&pert, 0.0)?.worst();
    doc.push(Check::new(
        "c11_detected_interior",
        value < -0.15 && min_pt >= 0.0125 - 1e-12,
        value,
        1e-12,
        json!({ "min_pt_eigenvalue": min_pt }),
    ));

    let a = verify_report(&p, o)?.to_json();
    let b = verify_report(&p, o)?.to_json();
    doc.push(Check::new(
        "c12_determinism",
        a == b,
        if a == b { 0.0 } else { 1.0 },
        0.0,
        json!({ "bytes": a.len(), "seed": o.seed }),
    ));
    Ok(doc)
}
