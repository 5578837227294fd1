//! Checks the braid and Hecke relations of the SL_q(2) R-matrix and shows
//! a perturbed copy being rejected.
use qdc::checks::perturbed;
use qdc::rmatrix::RMatrix;

fn main() -> qdc::Result<()> {
    let r = RMatrix::standard(2);
    println!("{}", r.to_toml());
    println!("Yang-Baxter violation: {:?}", r.ybe_violation());
    println!("Hecke violation: {:?}", r.hecke_violation());
    let bad = perturbed(&r)?;
    match bad.validate() {
        Ok(()) => println!("perturbed matrix accepted (unexpected)"),
        Err(e) => println!("perturbed matrix rejected: {}", e),
    }
    Ok(())
}
