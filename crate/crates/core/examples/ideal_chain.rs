//! Depth-n bounds along 0 ⊂ J₁ ⊂ J₂ ⊂ A in the upper-triangular 3 × 3
//! algebra: both endpoints can only decrease.

use jsr::{generated_subalgebra, ideal_chain_monotonicity, Ideal, Matrix, MatrixSet};

fn main() -> jsr::Result<()> {
    let set = MatrixSet::new(vec![
        Matrix::from_real(&[&[2.0, 1.0, -1.0], &[0.0, 1.0, 3.0], &[0.0, 0.0, 0.5]]),
        Matrix::from_real(&[&[0.5, 0.0, 2.0], &[0.0, 1.5, -1.0], &[0.0, 0.0, 1.0]]),
        Matrix::unit(3, 0, 1),
        Matrix::unit(3, 1, 2),
    ])?;
    let alg = generated_subalgebra(&set, 9)?;
    let chain = vec![
        Ideal::zero(&alg),
        Ideal::generated_by_matrices(&alg, &[Matrix::unit(3, 0, 2)])?,
        Ideal::generated_by_matrices(&alg, &[Matrix::unit(3, 0, 1), Matrix::unit(3, 1, 2)])?,
        Ideal::whole(&alg),
    ];
    let r = ideal_chain_monotonicity(&set, &alg, &chain, 5, 10_000_000)?;
    println!("{:>8} {:>8} {:>12} {:>12}", "dim J", "rep dim", "lower", "upper");
    for row in &r.rows {
        println!("{:>8} {:>8} {:>12.6} {:>12.6}", row.ideal_dim, row.rep_dim, row.lower, row.upper);
    }
    println!("monotone {}", r.pass);
    Ok(())
}
