//! Derives the SL_q(2) rewrite system and reduces a few products.
use qdc::algebra::QuantumGroup;
use qdc::rmatrix::RMatrix;

fn main() -> qdc::Result<()> {
    let qg = QuantumGroup::new(RMatrix::standard(2))?;
    println!("rewrite rules:");
    for rule in qg.rules() {
        println!("  {}", rule);
    }
    let (a, b, c, d) = (qg.gen(1, 1)?, qg.gen(1, 2)?, qg.gen(2, 1)?, qg.gen(2, 2)?);
    println!("t[2,2]*t[1,1] = {}", qg.mul(&d, &a));
    println!("t[2,1]*t[1,2]*t[1,1] = {}", qg.product(&[c.clone(), b.clone(), a.clone()]));
    println!("det_q = {}", qg.quantum_determinant());
    match qg.confluence_violation(4) {
        None => println!("confluent on all words of length <= 4"),
        Some((w, r)) => println!("not confluent: {} via {}", w, r),
    }
    println!("normal words of degree <= 3: {}", qg.normal_words(3).len());
    Ok(())
}
