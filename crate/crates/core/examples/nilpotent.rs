//! A set with ρ = 0 generates a nilpotent algebra.

use jsr::{check_nilpotent_span, Matrix, MatrixSet};

fn main() -> jsr::Result<()> {
    let set = MatrixSet::new(vec![
        Matrix::from_real(&[&[0.0, 1.0, 2.0, 0.0], &[0.0, 0.0, 1.0, -1.0], &[0.0, 0.0, 0.0, 3.0], &[0.0; 4]]),
        Matrix::from_real(&[&[0.0, 0.0, 1.0, 1.0], &[0.0, 0.0, 0.5, 0.0], &[0.0, 0.0, 0.0, 1.0], &[0.0; 4]]),
    ])?;
    let r = check_nilpotent_span(&set)?;
    println!(
        "certified upper {:e}, dim A = {}, A^k = 0 for k = {:?}, pass {}",
        r.certified_upper, r.algebra_dim, r.nil_degree, r.pass
    );
    let unipotent = MatrixSet::new(vec![Matrix::from_real(&[&[1.0, 1.0], &[0.0, 1.0]])])?;
    println!("identity-like set: {}", check_nilpotent_span(&unipotent).unwrap_err());
    Ok(())
}
