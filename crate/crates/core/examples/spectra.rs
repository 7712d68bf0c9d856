//! Dense complex eigenvalues, spectral radius, operator norm and Kronecker
//! products.

use jsr::{eigenvalues, kron, op_norm, spectral_radius, Matrix, C64};

fn main() -> jsr::Result<()> {
    let rot = Matrix::from_rows(vec![
        vec![C64::new(0.0, 0.0), C64::new(-1.0, 0.0)],
        vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
    ])?;
    println!("eig(rot) = {:?}", eigenvalues(&rot)?);
    let companion = Matrix::from_real(&[&[0.0, 0.0, 6.0], &[1.0, 0.0, -11.0], &[0.0, 1.0, 6.0]]);
    println!("eig(companion of (x-1)(x-2)(x-3)) = {:?}", eigenvalues(&companion)?);
    let j = Matrix::from_real(&[&[1.0, 1.0], &[0.0, 1.0]]);
    println!("rho(J) = {}, ||J|| = {}", spectral_radius(&j)?, op_norm(&j));
    println!("J (x) rot = {:?}", kron(&j, &rot)?);
    Ok(())
}
