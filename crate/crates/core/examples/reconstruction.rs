//! Phi and Psi between inner and outer calculi, the round trip for both
//! f00 choices, and the projector suite.
use qdc::calculus::roundtrip_report;
use qdc::functionals::DualSpace;
use qdc::session::{maps, Format, Session, SessionConfig};

fn main() -> qdc::Result<()> {
    let s = Session::open(SessionConfig::default())?;
    println!("{}", maps(&s)?.render(Format::Text));
    println!("J on w coordinates:\n{}", s.calc.projector());
    println!("{}", roundtrip_report(&s.calc, &DualSpace::new(s.calc.qg(), 3))?);
    Ok(())
}
