//! Bi-separable vectors detected by the witness, one per bipartite cut, and
//! the see-saw minimum across each cut.

use kye_witness::kye::omega_pow;
use kye_witness::states::biseparable_vector;
use kye_witness::{cut_block_positivity, witness_kye, Cut, KyeParams, SeeSawOptions};

fn main() -> kye_witness::Result<()> {
    let w = witness_kye(&KyeParams::symmetric())?;
    let alpha = omega_pow(1);
    let options = SeeSawOptions::default();
    for (i, cut) in (1..=3).zip([Cut::a_bc(), Cut::b_ac(), Cut::ab_c()]) {
        let xi = biseparable_vector(i, alpha)?;
        let unit = xi.value(&w)? / kye_witness::linalg::norm_sqr(&xi.flat);
        let res = cut_block_positivity(&w, &cut, &options)?;
        println!(
            "{:<5} <xi_{i}|W|xi_{i}> = {:+.12}  normalized {:+.12}  see-saw min {:+.17e}",
            cut.label(),
            xi.value(&w)?,
            unit,
            res.min_value
        );
    }
    Ok(())
}
