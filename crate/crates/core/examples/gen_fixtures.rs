//! Regenerate the golden orthonormal-matrix fixtures at 64 digits:
//! `cargo run -p pbq-core --example gen_fixtures -- <out-dir>`.

use std::path::PathBuf;

use num_rational::BigRational;
use pbq_core::classify::AlgebraParams;
use pbq_core::unitary::orthonormal_matrices;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "crates/core/fixtures".into()));
    std::fs::create_dir_all(&dir)?;
    let cases = [("two_dim_m1_k2.json", 1, 2, 1, 1), ("four_dim_m3_k10.json", 3, 10, 27, 3)];
    for (file, m, k, p, top) in cases {
        let params = AlgebraParams::new(m, k)?;
        let rep = orthonormal_matrices(&params, &BigRational::from_integer(p.into()), top, 64)?;
        let text = serde_json::to_string_pretty(&rep.to_json(None))?;
        std::fs::write(dir.join(file), text + "\n")?;
        println!("wrote {}", dir.join(file).display());
    }
    Ok(())
}
