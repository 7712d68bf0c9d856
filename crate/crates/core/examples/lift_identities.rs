//! The lift X ↦ A·X·B as a Kronecker product: its radii are the squares of
//! those of the original set, and W_{ba} = L_b·W_a·R_b.

use jsr::lift::{check_pass_identities, check_w_product_identity, lift_LR};
use jsr::{Matrix, MatrixSet};

fn main() -> jsr::Result<()> {
    let a = Matrix::from_real(&[&[1.0, 2.0], &[0.0, -1.0]]);
    let b = Matrix::from_real(&[&[0.5, 0.0], &[1.0, 0.5]]);
    let x = Matrix::from_real(&[&[1.0, -1.0], &[3.0, 0.0]]);
    let op = lift_LR(&a, &b)?;
    println!("L_a R_b X = {:?}", op.act(&x));
    println!("A X B     = {:?}", (&(&a * &x) * &b));
    println!("W identity residual {:.2e}", check_w_product_identity(&a, &b)?);

    let set = MatrixSet::new(vec![a, b])?;
    let r = check_pass_identities(&set, 4, 1_000_000)?;
    println!("r_k(M)        {:?}", r.r_by_length);
    println!("r_k(lift)     {:?}", r.lifted_r_by_length);
    println!("rho(M)^2 in   {:?}", (r.rho_interval.0.powi(2), r.rho_interval.1.powi(2)));
    println!("rho(lift) in  {:?}", r.lifted_interval);
    println!("pass {}", r.pass);
    Ok(())
}
