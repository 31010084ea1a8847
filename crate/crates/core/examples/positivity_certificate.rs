//! Numerical evidence that W is block positive but not positive: its
//! spectrum, the rank-one image scan, the see-saw minimum over product
//! vectors and a brute-force grid minimum for comparison.

use kye_witness::report::rank_one_scan;
use kye_witness::seesaw::grid_minimum;
use kye_witness::{hermitian_eigenvalues, seesaw_block_positivity, witness_kye, KyeParams, SeeSawOptions};

fn main() -> kye_witness::Result<()> {
    let p = KyeParams::symmetric();
    let w = witness_kye(&p)?;

    let spectrum = hermitian_eigenvalues(w.matrix())?;
    println!("spectrum: {spectrum:.6?}");

    let scan = rank_one_scan(&p)?;
    println!(
        "rank-one images over {} pairs: min eigenvalue {:+.3e}, det residual {:.3e}",
        scan.pairs, scan.min_eigenvalue, scan.max_det_residual
    );

    let res = seesaw_block_positivity(&w, &SeeSawOptions::default())?;
    println!(
        "see-saw: min {:+.3e} (restart {} of {}, converged {})",
        res.min_value, res.best_restart, res.restarts, res.converged
    );
    let (grid, _) = grid_minimum(&w, 7, 24)?;
    println!("grid minimum over 168^3 product vectors: {grid:+.3e}");
    Ok(())
}
