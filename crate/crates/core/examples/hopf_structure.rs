//! Coproduct, counit and antipode on a few elements, then the Hopf suite.
use qdc::algebra::QuantumGroup;
use qdc::checks::hopf_report;
use qdc::rmatrix::RMatrix;

fn main() -> qdc::Result<()> {
    let qg = QuantumGroup::new(RMatrix::standard(2))?;
    let a = qg.gen(1, 1)?;
    let ab = qg.mul(&a, &qg.gen(1, 2)?);
    println!("coproduct of t[1,1] = {}", qg.coproduct(&a));
    println!("counit of t[1,1]*t[1,2] = {}", qg.counit(&ab));
    for (i, s) in qg.antipode_table()?.iter().enumerate() {
        println!("S(t[{},{}]) = {}", i / 2 + 1, i % 2 + 1, s);
    }
    println!("{}", hopf_report(&qg, 3)?);
    Ok(())
}
