//! Movement of the bound interval under random perturbations of size ε.

use jsr::bounds::ProbeOptions;
use jsr::{continuity_probe, Matrix, MatrixSet};

fn main() -> jsr::Result<()> {
    let set = MatrixSet::new(vec![Matrix::diag(&[2.0, 1.0]), Matrix::diag(&[1.0, 3.0])])?;
    let rows = continuity_probe(&set, &[0.1, 0.03, 0.01, 0.003], &ProbeOptions::new(20, 7))?;
    println!("{:>8} {:>12} {:>12} complete", "eps", "max_dev", "max_excess");
    for r in rows {
        println!("{:>8} {:>12.6} {:>12.6} {}", r.eps, r.max_dev, r.max_excess, r.complete);
    }
    Ok(())
}
