//! The functional families on generators and the braiding matrix, followed
//! by the bicovariance suite.
use qdc::algebra::QuantumGroup;
use qdc::checks::bicovariance_report;
use qdc::functionals::{DualSpace, Functionals};
use qdc::rmatrix::RMatrix;
use qdc::Scalar;

fn main() -> qdc::Result<()> {
    let qg = QuantumGroup::new(RMatrix::standard(2))?;
    let fu = Functionals::new(&qg, Scalar::lambda())?;
    println!("{}", fu.dump(&qg));
    let report = bicovariance_report(&qg, &fu, &DualSpace::new(&qg, 3))?;
    // L+ and L- are not rewrite-invariant on the determinant rule; the
    // report says so with a witness.
    println!("{}", report);
    Ok(())
}
