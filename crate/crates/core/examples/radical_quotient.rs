//! Generated subalgebra, Jacobson radical and the quotient representation
//! for a pair of upper-triangular matrices.

use jsr::algebra::rcq_membership;
use jsr::{generated_subalgebra, jacobson_radical, quotient, Matrix, MatrixSet};

fn main() -> jsr::Result<()> {
    let set = MatrixSet::new(vec![
        Matrix::from_real(&[&[2.0, 5.0, 1.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]),
        Matrix::from_real(&[&[1.0, 7.0, 0.0], &[0.0, 3.0, 2.0], &[0.0, 0.0, 3.0]]),
    ])?;
    let alg = generated_subalgebra(&set, 9)?;
    let rad = jacobson_radical(&alg)?;
    println!("dim A = {}, unital = {}, dim Rad = {}", alg.dim(), alg.is_unital(), rad.dim());
    for m in rad.matrices(&alg) {
        println!("radical element {:?}", m);
    }
    for v in rad.basis() {
        println!("in R_cq: {:?}", rcq_membership(&alg, v, 4)?.evidence);
    }
    let q = quotient(&alg, rad)?;
    println!("dim A/Rad = {} (representation size {})", q.dim(), q.rep_dim());
    for g in set.generators() {
        println!("image {:?}", q.rep_matrix(g)?);
    }
    let qa = q.as_algebra()?;
    println!("radical of the quotient: {}", jacobson_radical(&qa)?.dim());
    Ok(())
}
