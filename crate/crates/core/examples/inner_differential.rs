//! The inner differential d = (1/lambda)[X, .], its split into del and dlt,
//! and the Leibniz suite.
use qdc::calculus::{leibniz_report, Calculus, F00Choice};
use qdc::session::{Session, SessionConfig};

fn main() -> qdc::Result<()> {
    let s = Session::open(SessionConfig::default())?;
    for e in ["d(t[1,1])", "d(t[1,2]*t[2,1])", "d(w[1,2])", "d(d(t[2,2]))", "X /\\ X"] {
        println!("{} = {}", e, s.render(&s.eval_str(e)?));
    }
    let c: &Calculus = &s.calc;
    let a = s.calc.exterior().scalar_form(c.qg().gen(1, 1)?);
    let split = c.split(&a, F00Choice::Trace)?;
    println!("del t[1,1] = {}", c.exterior().display(&split.partial));
    println!("dlt t[1,1] = {}", c.exterior().display(&split.delta));
    println!("{}", leibniz_report(c, 3, 20, 1)?);
    Ok(())
}
