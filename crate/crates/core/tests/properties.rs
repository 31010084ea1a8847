mod common;

use common::*;
use kye_witness::states::{biseparable_value, biseparable_vector};
use kye_witness::{
    determinant_d, pairing, perturbed_detected_state, phi_kye, rank_one_projection, rho_lambda, value_on_product,
    witness_kye, x_state, zeta_vector, KyeParams, ProductVector, ZetaIndex,
};
use num_complex::Complex64 as C;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = C> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(a, b)| C::new(a, b))
}

fn qubit() -> impl Strategy<Value = Vec<C>> {
    (complex(), complex()).prop_map(|(a, b)| vec![a, b])
}

/// `s` on a log scale, `t = 8 / s`.
fn on_curve() -> impl Strategy<Value = KyeParams> {
    (-3.0..3.0f64).prop_map(|e| {
        let s = 2f64.powf(e) * R;
        KyeParams::new(s, 8.0 / s).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn nonnegative_on_product_vectors(p in on_curve(), x in qubit(), y in qubit(), z in qubit()) {
        let w = witness_kye(&p).unwrap();
        let pv = ProductVector::new(vec![x, y, z]);
        let scale = pv.norm_sqr().max(1.0);
        prop_assert!(value_on_product(&w, &pv).unwrap() >= -1e-10 * scale * p.s.max(p.t));
    }

    #[test]
    fn rank_one_images_have_determinant_d(p in on_curve(), a in complex(), b in complex()) {
        let img = phi_kye(&p).unwrap().evaluate(&[rank_one_projection(a), rank_one_projection(b)]).unwrap();
        let det = (img[(0, 0)] * img[(1, 1)] - img[(0, 1)] * img[(1, 0)]).re;
        let d = determinant_d(a, b);
        prop_assert!(d >= 0.0);
        prop_assert!((det - d).abs() <= 1e-9 * d.abs().max(1.0));
        prop_assert!(img[(0, 0)].re >= 0.0 && img[(1, 1)].re >= 0.0);
    }

    #[test]
    fn zeta_families_are_zeros(p in on_curve(), i in 1u8..=4, a in 0.05..5.0f64, b in 0.05..5.0f64) {
        let v = zeta_vector(&p, ZetaIndex::new(i).unwrap(), a, b).unwrap();
        let w = witness_kye(&p).unwrap();
        prop_assert!(value_on_product(&w, &v).unwrap().abs() <= 1e-10 * v.norm_sqr().max(1.0) * p.s.max(p.t));
    }

    #[test]
    fn x_state_is_ppt_and_detected(p in on_curve()) {
        let x = x_state(&p).unwrap();
        let rows = to_rows(x.matrix());
        prop_assert!(pt_minima(&rows).iter().all(|&m| m >= -1e-10));
        let value = pairing(&x, &witness_kye(&p).unwrap()).unwrap();
        prop_assert!((value - (8.0 / std::f64::consts::SQRT_2 - 8.0)).abs() < 1e-10);
    }

    #[test]
    fn biseparable_values_follow_closed_form(p in on_curve(), i in 1u8..=3, a in complex()) {
        let w = witness_kye(&p).unwrap();
        let v = biseparable_vector(i, a).unwrap();
        prop_assert!((v.value(&w).unwrap() - biseparable_value(i, a)).abs() <= 1e-10 * (1.0 + a.norm_sqr()).powi(2));
        prop_assert!((w_form(p.s, p.t, &v.flat) - biseparable_value(i, a)).abs() <= 1e-10 * (1.0 + a.norm_sqr()).powi(2));
    }

    #[test]
    fn boundary_family_stays_on_the_face(lambda in 0.01..0.99f64) {
        let (state, _) = rho_lambda(lambda).unwrap();
        let w = witness_kye(&KyeParams::symmetric()).unwrap();
        prop_assert!(pairing(&state, &w).unwrap().abs() < 1e-10);
        prop_assert!(pt_minima(&to_rows(state.matrix())).iter().all(|&m| m > 0.0));
    }

    #[test]
    fn perturbation_is_linear(eps in 0.001..0.289f64) {
        let state = perturbed_detected_state(eps).unwrap();
        let w = witness_kye(&KyeParams::symmetric()).unwrap();
        let expected = (1.0 - eps) / 8.0 * (8.0 / std::f64::consts::SQRT_2 - 8.0) + eps / 8.0 * 2.0 * R;
        prop_assert!((pairing(&state, &w).unwrap() - expected).abs() < 1e-12);
        prop_assert!(expected < 0.0);
        let minima = pt_minima(&to_rows(state.matrix()));
        prop_assert!(minima.iter().all(|&m| m >= eps / 8.0 - 1e-12));
    }
}
