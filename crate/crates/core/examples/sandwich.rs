//! Depth-n sandwich r_n ≤ ρ ≤ β_n for the golden-ratio pair, then a
//! branch-and-bound refinement to width 1e-6.

use jsr::{refine, Enumerator, Matrix, MatrixSet};

fn main() -> jsr::Result<()> {
    let set = MatrixSet::new(vec![
        Matrix::from_real(&[&[1.0, 1.0], &[0.0, 1.0]]),
        Matrix::from_real(&[&[1.0, 0.0], &[1.0, 1.0]]),
    ])?;
    let en = Enumerator::default();
    println!("{:>5}  {:>14}  {:>14}  witness", "depth", "r_n", "beta_n");
    for n in 1..=10 {
        let (lower, word, upper) = en.sandwich(&set, n)?;
        println!("{n:>5}  {lower:>14.10}  {upper:>14.10}  {word}");
    }
    let r = refine(&set, 1e-6, 1_000_000)?;
    println!(
        "refined: [{:.12}, {:.12}] converged={} depth={} words={}",
        r.lower, r.upper, r.converged, r.depth_used, r.nodes_explored
    );
    Ok(())
}
