//! Rank of the zero set of W under every partial conjugation, for the
//! default sample, the six basis families alone and the ten canonical
//! vectors.

use kye_witness::linalg::RANK_TOL;
use kye_witness::{spanning_report, KyeParams, SampleGrid, Sampling};

fn main() -> kye_witness::Result<()> {
    let p = KyeParams::new(2.0, 4.0)?;
    for (name, sampling) in [
        ("default", Sampling::Grid(SampleGrid::default())),
        ("pv1 only", Sampling::Grid(SampleGrid::pv1_only())),
        ("canonical ten", Sampling::CanonicalTen),
    ] {
        let r = spanning_report(&p, &sampling, RANK_TOL)?;
        let table: Vec<String> = r.ranks.iter().map(|(s, k)| format!("{s}:{k}")).collect();
        println!(
            "{name:<14} {} vectors  {}  full: {}",
            r.sample_count,
            table.join(" "),
            r.full_spanning
        );
        if !r.full_spanning {
            println!("{:<14} basis-family rank {}, complement:", "", r.pv1_rank);
            for v in &r.pv1_complement {
                let support: Vec<usize> = (0..v.len()).filter(|&i| v[i].norm() > 1e-10).collect();
                println!("{:<16} supported on flat indices {support:?}", "");
            }
        }
    }
    Ok(())
}
