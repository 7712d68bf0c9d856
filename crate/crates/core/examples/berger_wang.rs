//! Product spectral radii and product norms meet: the Berger–Wang sandwich
//! closes for a pair of 3 × 3 matrices.

use jsr::{verify_berger_wang, Matrix, MatrixSet};

fn main() -> jsr::Result<()> {
    let set = MatrixSet::new(vec![
        Matrix::from_real(&[&[0.9, 0.4, 0.0], &[0.0, 0.5, 0.3], &[0.2, 0.0, 0.7]]),
        Matrix::from_real(&[&[0.6, 0.0, 0.5], &[0.3, 0.8, 0.0], &[0.0, 0.2, 0.4]]),
    ])?;
    for tol in [1e-1, 3e-2, 1e-2] {
        let r = verify_berger_wang(&set, tol, 2_000_000)?;
        println!(
            "tol {tol:<6} r >= {:.8}  rho <= {:.8}  gap {:.2e}  pass {}  witness {}",
            r.r_lower, r.rho_upper, r.gap, r.pass, r.bounds.lower_witness
        );
    }
    Ok(())
}
