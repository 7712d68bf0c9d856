//! ρ(M) equals ρ of the image of M modulo the radical of the algebra it
//! generates.

use jsr::{check_inessential, Matrix, MatrixSet};

fn main() -> jsr::Result<()> {
    let set = MatrixSet::new(vec![
        Matrix::from_real(&[&[2.0, 5.0], &[0.0, 1.0]]),
        Matrix::from_real(&[&[1.0, 7.0], &[0.0, 3.0]]),
    ])?;
    let r = check_inessential(&set, 1_000_000)?;
    println!("algebra dim {} radical dim {}", r.algebra_dim, r.radical_dim);
    println!("rho(M)     in [{:.9}, {:.9}]", r.rho_full.0, r.rho_full.1);
    println!("rho(M/Rad) in [{:.9}, {:.9}]", r.rho_quotient.0, r.rho_quotient.1);
    println!("gap {:.3e} pass {}", r.gap, r.pass);
    Ok(())
}
