//! Builds W(s, t) directly and through the map correspondence, prints the
//! matrix and writes it as JSON.
//!
//! cargo run --example build_witness -- 2 4 w.json

use kye_witness::io::write_witness;
use kye_witness::{parse_param, witness_from_map, witness_kye, KyeParams};

fn main() -> kye_witness::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let s = parse_param(args.first().map_or("2r2", String::as_str))?;
    let t = parse_param(args.get(1).map_or("2r2", String::as_str))?;
    let p = KyeParams::new(s, t)?;

    let w = witness_kye(&p)?;
    let via_map = witness_from_map(&p)?;
    println!("s = {s}, t = {t}, on st = 8: {}", p.on_variety());
    println!(
        "direct and map-built matrices differ by {:e}",
        w.matrix().max_abs_diff(via_map.matrix())
    );
    for row in w.matrix().rows() {
        let cells: Vec<String> = row
            .iter()
            .map(|z| {
                if z.norm() == 0.0 {
                    ".".to_string()
                } else {
                    format!("{:.4}", z.re)
                }
            })
            .collect();
        println!("  {}", cells.iter().map(|c| format!("{c:>8}")).collect::<String>());
    }
    if let Some(path) = args.get(2) {
        write_witness(path, &w)?;
        println!("wrote {path}");
    }
    Ok(())
}
