//! Wedge relations from the braiding and the reduced basis in each grade.
use qdc::algebra::QuantumGroup;
use qdc::forms::{standard_letter_names, symmetric_tensors, WedgeTable};
use qdc::functionals::Functionals;
use qdc::rmatrix::RMatrix;
use qdc::Scalar;

fn main() -> qdc::Result<()> {
    let qg = QuantumGroup::new(RMatrix::standard(2))?;
    let fu = Functionals::new(&qg, Scalar::lambda())?;
    let rels = symmetric_tensors(&fu.braiding.to_dense());
    println!("{} symmetric tensors", rels.len());
    let t = WedgeTable::build(4, rels, 5);
    let names = standard_letter_names(2);
    for k in 0..=t.max_grade() {
        let words: Vec<String> = t
            .basis(k)
            .iter()
            .map(|w| w.iter().map(|&l| names[l].as_str()).collect::<Vec<_>>().join(" /\\ "))
            .collect();
        println!("grade {} (dim {}): {}", k, t.dim(k), words.join(", "));
    }
    println!(
        "w[2,1] /\\ w[1,2] = {:?}",
        t.reduce_word(&[2, 1])?.iter().map(|s| s.to_string()).collect::<Vec<_>>()
    );
    Ok(())
}
