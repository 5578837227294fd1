//! The bidegree grid, the split Cartan conditions and the numeric rank
//! cross-check.
use qdc::bicomplex::{cartan_report, format_summary, rank_report, symbolic_ranks, BicomplexGrid};
use qdc::calculus::Calculus;

fn main() -> qdc::Result<()> {
    let c = Calculus::standard(3)?;
    println!("{}\n", BicomplexGrid::build(&c, 3)?);
    println!("{}\n", format_summary(&symbolic_ranks(&c)?));
    println!("{}\n", rank_report(&c, &[2, 3, 5])?);
    println!("{}", cartan_report(&c, 3, 10, 5)?);
    Ok(())
}
