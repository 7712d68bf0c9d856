//! Leading products (words whose norm dominates every shorter product) and
//! their normalizations for a set with ρ = 2.

use jsr::{leading_products, normalized_leading_sequence, Matrix, MatrixSet};

fn main() -> jsr::Result<()> {
    let set = MatrixSet::new(vec![
        Matrix::from_real(&[&[2.0, 1.0], &[0.0, 0.5]]),
        Matrix::from_real(&[&[0.5, 0.0], &[1.0, 1.0]]),
    ])?;
    for lp in leading_products(&set, 8)? {
        println!("n={:<2} norm={:<12.6} word={}", lp.length, lp.norm, lp.word);
    }
    for (i, m) in normalized_leading_sequence(&set, 8)?.iter().enumerate() {
        println!("normalized #{i}: {:?}", m);
    }
    Ok(())
}
