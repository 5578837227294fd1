//! Session configuration, expression evaluation and the command bodies
//! behind the `qdc` binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value as Json};

use crate::algebra::{AlgebraElement, Word};
use crate::bicomplex::{cartan_report, rank_report, BicomplexGrid};
use crate::calculus::{
    descriptor_difference, inner_descriptor, leibniz_report, map_in_to_out, map_out_to_in, roundtrip_report, Calculus, Descriptor,
    F00Choice, ScalarFunctional,
};
use crate::checks::{bicovariance_report, hopf_report};
use crate::error::{Error, Result};
use crate::expr::{parse, DiffOp, Expr};
use crate::forms::{standard_letter_names, symmetric_tensors, Exterior, FormElement, WedgeTable};
use crate::functionals::DualSpace;
use crate::report::CheckReport;
use crate::rmatrix::RMatrix;
use crate::scalar::Scalar;

pub const RMATRIX_ENV: &str = "QDC_DEFAULT_RMATRIX";

/// Seed for the randomized samples of the `leibniz` and `cartan` suites.
pub const SAMPLE_SEED: u64 = 20_251_018;
pub const SAMPLES: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Hopf,
    Bicovariance,
    Leibniz,
    Cartan,
    Roundtrip,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Hopf, Suite::Bicovariance, Suite::Leibniz, Suite::Cartan, Suite::Roundtrip];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::Bicovariance => "bicovariance",
            Suite::Leibniz => "leibniz",
            Suite::Cartan => "cartan",
            Suite::Roundtrip => "roundtrip",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub rmatrix: Option<PathBuf>,
    pub lambda: Option<String>,
    pub f00: F00Choice,
    pub degree: usize,
    pub cap: usize,
    pub format: Format,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            rmatrix: None,
            lambda: None,
            f00: F00Choice::Trace,
            degree: 3,
            cap: 3,
            format: Format::Text,
        }
    }
}

impl SessionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.degree < 1 {
            return Err(Error::Config("degree bound must be at least 1".into()));
        }
        if self.cap < 2 {
            return Err(Error::Config("grade cap must be at least 2".into()));
        }
        Ok(())
    }

    /// The explicit file, else the file named by `QDC_DEFAULT_RMATRIX`,
    /// else the standard SL_q(2) matrix.
    pub fn load_rmatrix(&self) -> Result<RMatrix> {
        let path = self
            .rmatrix
            .clone()
            .or_else(|| std::env::var_os(RMATRIX_ENV).filter(|p| !p.is_empty()).map(PathBuf::from));
        match path {
            Some(p) => RMatrix::load(&p),
            None => Ok(RMatrix::standard(2)),
        }
    }

    pub fn lambda(&self) -> Result<Scalar> {
        match &self.lambda {
            Some(s) => {
                let l: Scalar = s.parse()?;
                if l.is_zero() {
                    return Err(Error::DegenerateParameter("lambda = 0".into()));
                }
                Ok(l)
            }
            None => Ok(Scalar::lambda()),
        }
    }
}

/// A parsed expression evaluated to a function or a form.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Alg(AlgebraElement),
    Form(FormElement),
}

pub struct Session {
    pub cfg: SessionConfig,
    pub calc: Calculus,
}

impl Session {
    pub fn open(cfg: SessionConfig) -> Result<Self> {
        cfg.validate()?;
        let r = cfg.load_rmatrix()?;
        let calc = Calculus::new(r, cfg.lambda()?, cfg.cap)?;
        Ok(Session { cfg, calc })
    }

    fn n(&self) -> usize {
        self.calc.qg().n()
    }

    fn form_index(&self, a: usize, b: usize) -> Result<usize> {
        let n = self.n();
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::UnknownSymbol(format!("w[{},{}]", a, b)));
        }
        Ok((a - 1) * n + b - 1)
    }

    fn as_form(&self, v: Value) -> FormElement {
        match v {
            Value::Alg(a) => self.calc.exterior().scalar_form(a),
            Value::Form(f) => f,
        }
    }

    fn capped(&self, x: FormElement) -> Result<Value> {
        if x.grade > self.cfg.cap {
            return Err(Error::GradeCap {
                grade: x.grade,
                cap: self.cfg.cap,
            });
        }
        Ok(if x.grade == 0 {
            Value::Alg(x.coeffs[0].clone())
        } else {
            Value::Form(x)
        })
    }

    fn product(&self, x: Value, y: Value) -> Result<Value> {
        let qg = self.calc.qg();
        let ext = self.calc.exterior();
        match (x, y) {
            (Value::Alg(a), Value::Alg(b)) => Ok(Value::Alg(qg.mul(&a, &b))),
            (Value::Alg(a), Value::Form(f)) => Ok(Value::Form(ext.left_mul(qg, &a, &f))),
            (Value::Form(f), Value::Alg(a)) => Ok(Value::Form(ext.right_mul(qg, &f, &a)?)),
            (x, y) => {
                let (x, y) = (self.as_form(x), self.as_form(y));
                if x.grade + y.grade > self.cfg.cap {
                    return Err(Error::GradeCap {
                        grade: x.grade + y.grade,
                        cap: self.cfg.cap,
                    });
                }
                self.capped(self.calc.wedge(&x, &y)?)
            }
        }
    }

    fn sum(&self, x: Value, y: Value, sign: i64) -> Result<Value> {
        match (x, y) {
            (Value::Alg(a), Value::Alg(b)) => Ok(Value::Alg(if sign > 0 { &a + &b } else { &a - &b })),
            (x, y) => {
                let (x, y) = (self.as_form(x), self.as_form(y));
                self.capped(if sign > 0 { x.add(&y)? } else { x.sub(&y)? })
            }
        }
    }

    pub fn eval(&self, e: &Expr) -> Result<Value> {
        let qg = self.calc.qg();
        Ok(match e {
            Expr::Num(_) | Expr::Q => Value::Alg(AlgebraElement::from_scalar(e.to_scalar()?)),
            Expr::Gen(a, b) => Value::Alg(qg.gen(*a, *b)?),
            Expr::Form(a, b) => Value::Form(self.calc.omega(self.form_index(*a, *b)?)?),
            Expr::X => Value::Form(self.calc.canonical_element()),
            Expr::Apply(op, inner) => {
                let x = self.as_form(self.eval(inner)?);
                if x.grade + 1 > self.cfg.cap {
                    return Err(Error::GradeCap {
                        grade: x.grade + 1,
                        cap: self.cfg.cap,
                    });
                }
                let y = match op {
                    DiffOp::D => self.calc.d(&x)?,
                    DiffOp::Del => self.calc.partial(&x)?,
                    DiffOp::Dlt => self.calc.delta(&x, self.cfg.f00)?,
                };
                Value::Form(y)
            }
            Expr::Add(a, b) => self.sum(self.eval(a)?, self.eval(b)?, 1)?,
            Expr::Sub(a, b) => self.sum(self.eval(a)?, self.eval(b)?, -1)?,
            Expr::Mul(a, b) | Expr::Wedge(a, b) => self.product(self.eval(a)?, self.eval(b)?)?,
            Expr::Div(a, b) => {
                let s = match self.eval(b)? {
                    Value::Alg(x) => x.as_scalar().ok_or_else(|| Error::Type(format!("cannot divide by `{}`", b)))?,
                    Value::Form(_) => return Err(Error::Type(format!("cannot divide by the form `{}`", b))),
                };
                let inv = s.inv()?;
                match self.eval(a)? {
                    Value::Alg(x) => Value::Alg(x.scale(&inv)),
                    Value::Form(f) => Value::Form(f.scale(&inv)),
                }
            }
            Expr::Pow(a, k) => {
                let base = self.eval(a)?;
                if *k < 0 {
                    let s = match &base {
                        Value::Alg(x) => x.as_scalar(),
                        Value::Form(_) => None,
                    };
                    let s = s.ok_or_else(|| Error::Type(format!("negative power of `{}`", a)))?;
                    Value::Alg(AlgebraElement::from_scalar(s.pow(*k)?))
                } else {
                    let mut acc = Value::Alg(AlgebraElement::one());
                    for _ in 0..*k {
                        acc = self.product(acc, base.clone())?;
                    }
                    acc
                }
            }
            Expr::Neg(a) => match self.eval(a)? {
                Value::Alg(x) => Value::Alg(-&x),
                Value::Form(f) => Value::Form(f.scale(&-Scalar::one())),
            },
        })
    }

    pub fn eval_str(&self, input: &str) -> Result<Value> {
        self.eval(&parse(input)?)
    }

    /// Normal form text, parseable back into the same value.
    pub fn render(&self, v: &Value) -> String {
        match v {
            Value::Alg(a) => a.to_string(),
            Value::Form(f) => self.calc.exterior().display(f).to_string(),
        }
    }

    /// A one-form written on `w[a,b]`.
    pub fn render_omega(&self, f: &FormElement) -> String {
        let names = standard_letter_names(self.n());
        let terms: Vec<String> = self
            .calc
            .to_omega(f)
            .iter()
            .zip(&names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, w)| {
                if c.num_terms() > 1 {
                    format!("({}) * {}", c, w)
                } else {
                    format!("{} * {}", c, w)
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Text and structured renderings of one command, plus whether it passed.
pub struct Output {
    pub text: String,
    pub structured: Json,
    pub ok: bool,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Structured => serde_json::to_string_pretty(&self.structured).expect("json renders"),
        }
    }
}

fn ok(text: String, structured: Json) -> Output {
    Output {
        text,
        structured,
        ok: true,
    }
}

pub fn eval(s: &Session, input: &str) -> Result<Output> {
    let e = parse(input)?;
    let v = s.eval(&e)?;
    let rendered = s.render(&v);
    let mut text = rendered.clone();
    let mut doc = json!({ "input": e.to_string(), "value": rendered });
    if let Value::Form(f) = &v {
        doc["grade"] = json!(f.grade);
        if f.grade == 1 {
            let om = s.render_omega(f);
            write!(text, "\nin w basis: {}", om).unwrap();
            doc["w_basis"] = json!(om);
        }
    } else {
        doc["grade"] = json!(0);
    }
    Ok(ok(text, doc))
}

pub fn check(s: &Session, suite: Suite) -> Result<Output> {
    let c = &s.calc;
    let d = s.cfg.degree;
    let rep: CheckReport = match suite {
        Suite::Hopf => hopf_report(c.qg(), d)?,
        Suite::Bicovariance => bicovariance_report(c.qg(), c.functionals(), &DualSpace::new(c.qg(), d))?,
        Suite::Leibniz => leibniz_report(c, d, SAMPLES, SAMPLE_SEED)?,
        Suite::Cartan => {
            let mut rep = cartan_report(c, d, SAMPLES, SAMPLE_SEED)?;
            rep.extend(rank_report(c, &[2, 3, 5])?);
            rep
        }
        Suite::Roundtrip => roundtrip_report(c, &DualSpace::new(c.qg(), d))?,
    };
    let structured = serde_json::to_value(&rep).expect("report serializes");
    Ok(Output {
        text: rep.to_string(),
        structured,
        ok: rep.passed(),
    })
}

fn table_json(d: &Descriptor, dual: &DualSpace, differential: bool) -> Json {
    let t = if differential { &d.differential } else { &d.commutation };
    let rows: Vec<Json> = dual
        .words()
        .iter()
        .zip(&t.values)
        .filter(|(w, _)| w.len() == 1 || differential)
        .map(|(w, v)| {
            let entries: Vec<Json> = v
                .entries()
                .map(|(i, j, x)| {
                    if differential {
                        json!([d.names[j], x.to_string()])
                    } else {
                        json!([d.names[i], d.names[j], x.to_string()])
                    }
                })
                .collect();
            json!({ "word": w.to_string(), "entries": entries })
        })
        .collect();
    Json::Array(rows)
}

/// A descriptor as a document: rank, names, commutation functionals on
/// generators and the differential on every tabulated word.
pub fn descriptor_json(d: &Descriptor, dual: &DualSpace) -> Json {
    json!({
        "mode": d.mode.as_str(),
        "rank": d.rank(),
        "names": d.names,
        "f00": d.f00.map(|c| c.as_str()),
        "degree": dual.degree(),
        "commutation": table_json(d, dual, false),
        "differential": table_json(d, dual, true),
    })
}

fn extended(s: &Session, dual: &DualSpace, choice: F00Choice) -> Result<(Descriptor, Descriptor, Descriptor)> {
    let c = &s.calc;
    let inner = inner_descriptor(c, dual);
    let outer = map_in_to_out(&inner)?;
    let f00 = ScalarFunctional::of_choice(choice, &c.functionals().f, c.qg().n());
    let ext = map_out_to_in(&outer, &f00, Some(choice), c.qg(), dual, c.lambda())?;
    Ok((inner, outer, ext))
}

/// Assembles the extended calculus for the configured `f⁰₀` and writes it
/// to `out`.
pub fn init(s: &Session, out: &Path) -> Result<Output> {
    let c = &s.calc;
    let dual = DualSpace::new(c.qg(), s.cfg.degree);
    let (_, _, ext) = extended(s, &dual, s.cfg.f00)?;
    let doc = json!({
        "rmatrix": c.qg().rmatrix().to_toml(),
        "lambda": c.lambda().to_string(),
        "cap": s.cfg.cap,
        "wedge_dims": c.exterior().table().dims(),
        "descriptor": descriptor_json(&ext, &dual),
    });
    let text = serde_json::to_string_pretty(&doc).expect("json renders");
    std::fs::write(out, &text).map_err(|e| Error::Io(format!("{}: {}", out.display(), e)))?;
    let summary = format!(
        "wrote {} ({} calculus, rank {}, f00 = {}, degree {}, {} tabulated words)",
        out.display(),
        ext.mode.as_str(),
        ext.rank(),
        s.cfg.f00.as_str(),
        s.cfg.degree,
        dual.words().len()
    );
    Ok(ok(summary, doc))
}

/// Algebra rules, the bimodule relations `w a = (f ∗ a) w` on generators
/// and the wedge relations, all in the `w[a,b]` letters.
pub fn relations(s: &Session) -> Result<Output> {
    let c = &s.calc;
    let qg = c.qg();
    let n = qg.n();
    let names = standard_letter_names(n);
    let rels = symmetric_tensors(&c.functionals().braiding.to_dense());
    let table = WedgeTable::build(n * n, rels.clone(), s.cfg.cap);
    let dims = table.dims();
    let ext = Exterior::new(table, names.clone(), c.functionals().f.clone());
    let mut text = String::from("algebra rules\n");
    let rules: Vec<String> = qg.rules().iter().map(|r| r.to_string()).collect();
    for r in &rules {
        writeln!(text, "  {}", r).unwrap();
    }
    text.push_str("bimodule relations\n");
    let mut bimodule = Vec::new();
    for i in 0..n * n {
        for g in qg.generators() {
            let a = AlgebraElement::from_word(Word(vec![g]));
            let moved = ext.commute_word(qg, &[i], &a)?;
            let rhs = ext.display(&FormElement { grade: 1, coeffs: moved }).to_string();
            let line = format!("{} * {} = {}", names[i], a, rhs);
            writeln!(text, "  {}", line).unwrap();
            bimodule.push(line);
        }
    }
    text.push_str("wedge relations\n");
    let m = n * n;
    let mut wedge = Vec::new();
    for r in &rels {
        let terms: Vec<String> = r
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| {
                let w = format!("{} /\\ {}", names[k / m], names[k % m]);
                if x.is_one() {
                    w
                } else if x.numerator().num_terms() > 1 || !x.denominator().is_one() {
                    format!("({}) * {}", x, w)
                } else {
                    format!("{} * {}", x, w)
                }
            })
            .collect();
        let line = format!("{} = 0", terms.join(" + "));
        writeln!(text, "  {}", line).unwrap();
        wedge.push(line);
    }
    write!(text, "wedge dims {:?}", dims).unwrap();
    let doc = json!({ "algebra": rules, "bimodule": bimodule, "wedge": wedge, "wedge_dims": dims });
    Ok(ok(text, doc))
}

/// Φ, Ψ for both choices of `f⁰₀`, and the round trip.
pub fn maps(s: &Session) -> Result<Output> {
    let c = &s.calc;
    let dual = DualSpace::new(c.qg(), s.cfg.degree);
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all = true;
    let mut exts = Vec::new();
    for choice in [F00Choice::Trace, F00Choice::Counit] {
        let (inner, outer, ext) = extended(s, &dual, choice)?;
        let back = map_in_to_out(&ext)?;
        let diff = descriptor_difference(&outer, &back, c.qg(), &dual)?;
        all &= diff.is_none();
        writeln!(
            text,
            "f00 = {}: inner rank {} -> Phi -> outer rank {} -> Psi -> {} rank {}; Phi o Psi = id: {}",
            choice.as_str(),
            inner.rank(),
            outer.rank(),
            ext.mode.as_str(),
            ext.rank(),
            diff.as_deref().map_or("yes".to_string(), |d| format!("no ({})", d))
        )
        .unwrap();
        rows.push(json!({
            "f00": choice.as_str(),
            "inner_rank": inner.rank(),
            "outer_rank": outer.rank(),
            "extended_rank": ext.rank(),
            "roundtrip": diff.is_none(),
            "difference": diff,
        }));
        exts.push(ext);
    }
    let distinct = descriptor_difference(&exts[0], &exts[1], c.qg(), &dual)?;
    all &= distinct.is_some();
    write!(
        text,
        "Psi injective on the two choices: {}",
        distinct.as_deref().map_or("no".to_string(), |d| format!("yes, {}", d))
    )
    .unwrap();
    let doc = json!({ "maps": rows, "distinguished_by": distinct });
    Ok(Output {
        text,
        structured: doc,
        ok: all,
    })
}

pub fn bicomplex(s: &Session) -> Result<Output> {
    let grid = BicomplexGrid::build(&s.calc, s.cfg.cap)?;
    let structured = serde_json::to_value(&grid).expect("grid serializes");
    Ok(Output {
        text: grid.to_string(),
        structured,
        ok: grid.additivity_violation().is_none(),
    })
}
