//! The X-shaped state is PPT on st = 8 and pairs negatively with W, so it
//! is entangled; mixing in a little white noise keeps it detected while
//! moving it into the interior of the PPT set.

use kye_witness::{detect, perturbed_detected_state, witness_kye, x_state, KyeParams};

fn main() -> kye_witness::Result<()> {
    for (s, t) in [(2.0 * 2f64.sqrt(), 2.0 * 2f64.sqrt()), (2.0, 4.0), (1.0, 8.0)] {
        let p = KyeParams::new(s, t)?;
        let r = detect(&x_state(&p)?, &witness_kye(&p)?, None, 1e-10)?;
        println!(
            "x_state(s={s:.4}, t={t:.4}): pairing {:+.12}, worst PT eigenvalue {:+.2e}, {}",
            r.pairing_value,
            r.ppt.worst(),
            r.verdict.as_str()
        );
    }
    let w = witness_kye(&KyeParams::symmetric())?;
    for eps in [0.05, 0.1, 0.2, 0.28] {
        let r = detect(&perturbed_detected_state(eps)?, &w, None, 1e-10)?;
        println!(
            "perturbed eps={eps:<4}: pairing {:+.6}, worst PT eigenvalue {:+.6}, {}",
            r.pairing_value,
            r.ppt.worst(),
            r.verdict.as_str()
        );
    }
    Ok(())
}
