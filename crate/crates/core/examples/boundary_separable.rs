//! The separable family rho_lambda: a certified decomposition into ten
//! product states, zero pairing with W, and full rank under every partial
//! transpose.

use kye_witness::linalg::RANK_TOL;
use kye_witness::{interior_of_t_check, pairing, rho_lambda, verify_decomposition, witness_kye, KyeParams};

fn main() -> kye_witness::Result<()> {
    let w = witness_kye(&KyeParams::symmetric())?;
    for lambda in [0.1, 0.25, 0.5, 0.75, 0.9] {
        let (state, dec) = rho_lambda(lambda)?;
        let interior = interior_of_t_check(&state, RANK_TOL)?;
        let ranks: Vec<usize> = interior.ranks.iter().map(|r| r.1).collect();
        println!(
            "lambda {lambda:<4}: certificate {}, pairing {:+.1e}, PT ranks {ranks:?}",
            verify_decomposition(&state, &dec, 1e-12)?,
            pairing(&state, &w)?
        );
    }
    Ok(())
}
