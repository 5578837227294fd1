//! Bidegrees of reduced wedge words by their number of `X̂` letters, the
//! split Cartan conditions, and a numeric cross-check of every rank.

use std::fmt;

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::calculus::{Calculus, F00Choice, Split};
use crate::error::{Error, Result};
use crate::forms::{change_letters, symmetric_tensors, FormElement, WedgeTable};
use crate::linalg::{Field, Matrix};
use crate::report::CheckReport;
use crate::scalar::{int, Rational};

/// One cell: reduced words with `r` copies of `X̂` and `s` other letters.
#[derive(Clone, Debug, Serialize)]
pub struct GridCell {
    pub r: usize,
    pub s: usize,
    pub dim: usize,
    pub words: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BicomplexGrid {
    pub cap: usize,
    pub grade_dims: Vec<usize>,
    pub cells: Vec<GridCell>,
    /// Reduced words carrying two or more `X̂`, per grade. Always empty
    /// when `X̂ ∧ X̂ = 0`.
    pub excess: Vec<usize>,
    /// First grade with no reduced words, if the table reaches it.
    pub top_grade: Option<usize>,
}

impl BicomplexGrid {
    pub fn build(c: &Calculus, cap: usize) -> Result<Self> {
        let ext = c.exterior();
        if cap > ext.max_grade() {
            return Err(Error::GradeCap {
                grade: cap,
                cap: ext.max_grade(),
            });
        }
        let mut cells = Vec::new();
        let mut excess = Vec::new();
        for r in 0..=1 {
            for s in 0..=cap - r {
                let k = r + s;
                let words: Vec<String> = (0..ext.dim(k))
                    .filter(|&i| c.x_count(k, i) == r)
                    .map(|i| if k == 0 { "1".to_string() } else { ext.word_name(k, i) })
                    .collect();
                cells.push(GridCell {
                    r,
                    s,
                    dim: words.len(),
                    words,
                });
            }
        }
        for k in 0..=cap {
            excess.push((0..ext.dim(k)).filter(|&i| c.x_count(k, i) >= 2).count());
        }
        let grade_dims = (0..=cap).map(|k| ext.dim(k)).collect();
        Ok(BicomplexGrid {
            cap,
            grade_dims,
            cells,
            excess,
            top_grade: ext.table().top_grade(),
        })
    }

    pub fn dim(&self, r: usize, s: usize) -> usize {
        self.cells.iter().find(|x| x.r == r && x.s == s).map_or(0, |x| x.dim)
    }

    /// `dim Γ̂^∧k = dim Γ̃^{0,k} + dim Γ̃^{1,k-1}` for every `k ≤ cap`.
    pub fn additivity_violation(&self) -> Option<String> {
        (0..=self.cap).find_map(|k| {
            let split = self.dim(0, k) + if k > 0 { self.dim(1, k - 1) } else { 0 };
            (split != self.grade_dims[k]).then(|| {
                format!(
                    "grade {}: {} != {} + {}",
                    k,
                    self.grade_dims[k],
                    self.dim(0, k),
                    split - self.dim(0, k)
                )
            })
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("grid serializes")
    }
}

impl fmt::Display for BicomplexGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "grade dims {:?} (cap {})", self.grade_dims, self.cap)?;
        match self.top_grade {
            Some(t) => writeln!(f, "reduced basis empty from grade {}", t)?,
            None => writeln!(f, "reduced basis nonempty through the table")?,
        }
        writeln!(f, "r\ts\tdim\twords")?;
        for c in &self.cells {
            writeln!(f, "{}\t{}\t{}\t{}", c.r, c.s, c.dim, c.words.join("; "))?;
        }
        write!(f, "additivity: {}", self.additivity_violation().unwrap_or_else(|| "holds".into()))
    }
}

/// `∂`, `δ` for one choice, from the cached full splitting.
fn choose(s: &Split, choice: F00Choice, c: &Calculus) -> Result<Split> {
    let mut s = s.clone();
    if choice == F00Choice::Counit {
        s.delta = c.exterior().zero(s.delta.grade)?;
    }
    Ok(s)
}

struct Squares {
    d2: FormElement,
    partial2: FormElement,
    delta2: FormElement,
    anti: FormElement,
}

fn squares(c: &Calculus, x: &FormElement, choice: F00Choice, swap_functions: bool) -> Result<Squares> {
    let mut s = choose(&c.split_full(x)?.0, choice, c)?;
    if swap_functions && x.grade == 0 {
        std::mem::swap(&mut s.partial, &mut s.delta);
    }
    let sp = choose(&c.split_full(&s.partial)?.0, choice, c)?;
    let sd = choose(&c.split_full(&s.delta)?.0, choice, c)?;
    let anti = sp.delta.add(&sd.partial)?;
    let d2 = sp.partial.add(&sd.delta)?.add(&anti)?;
    Ok(Squares {
        d2,
        partial2: sp.partial,
        delta2: sd.delta,
        anti,
    })
}

fn sample_inputs(c: &Calculus, degree: usize, samples: usize, seed: u64) -> Result<Vec<(String, FormElement)>> {
    let ext = c.exterior();
    let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let mut xs = Vec::new();
    for w in c.qg().normal_words(degree) {
        let a = AlgebraElement::from_word(w.clone());
        xs.push((format!("{}", a), ext.scalar_form(a)));
    }
    for k in 1..=c.cap() {
        for i in 0..ext.dim(k) {
            xs.push((ext.word_name(k, i), ext.basis_form(k, i)?));
        }
    }
    for k in 0..=c.cap() {
        for n in 0..samples {
            xs.push((format!("random grade-{} form #{}", k, n), c.random_form(&mut rng, k, degree)?));
        }
    }
    Ok(xs)
}

/// `d² = ∂² = δ² = ∂δ + δ∂ = 0` for both choices of `f⁰₀`, plus the grid
/// bookkeeping and a misassembled splitting that must be caught.
pub fn cartan_report(c: &Calculus, degree: usize, samples: usize, seed: u64) -> Result<CheckReport> {
    let ext = c.exterior();
    let mut rep = CheckReport::new("cartan", degree);
    let inputs = sample_inputs(c, degree, samples, seed)?;
    let show = |label: &str, x: &FormElement| format!("{} gives {}", label, ext.display(x));

    let xh = c.canonical_element();
    let xx = c.wedge(&xh, &xh)?;
    rep.record("x-wedge-x", "X /\\ X = 0", (!xx.is_zero()).then(|| ext.display(&xx).to_string()));

    let lowering = inputs.iter().find_map(|(l, x)| match c.split_full(x) {
        Ok((_, low)) => (!low.is_zero()).then(|| Ok(show(l, &low))),
        Err(e) => Some(Err(e)),
    });
    rep.record("no-lowering", "d never lowers the number of X letters", lowering.transpose()?);

    for choice in [F00Choice::Trace, F00Choice::Counit] {
        let mut w: [Option<String>; 4] = Default::default();
        for (l, x) in &inputs {
            let sq = squares(c, x, choice, false)?;
            for (slot, v) in w.iter_mut().zip([&sq.d2, &sq.partial2, &sq.delta2, &sq.anti]) {
                if slot.is_none() && !v.is_zero() {
                    *slot = Some(show(l, v));
                }
            }
        }
        let name = choice.as_str();
        let [d2, p2, t2, anti] = w;
        rep.record(
            &format!("d-squared-{}", name),
            &format!("(del + dlt)^2 = 0 with f00 = {}", name),
            d2,
        );
        rep.record(&format!("partial-squared-{}", name), &format!("del^2 = 0 with f00 = {}", name), p2);
        rep.record(&format!("delta-squared-{}", name), &format!("dlt^2 = 0 with f00 = {}", name), t2);
        rep.record(
            &format!("anticommute-{}", name),
            &format!("del dlt + dlt del = 0 with f00 = {}", name),
            anti,
        );
    }

    // The projectors swapped on functions: del a = J da, dlt a = Jp da.
    let mut swapped = None;
    for (l, x) in inputs.iter().filter(|(_, x)| x.grade == 0) {
        let sq = squares(c, x, F00Choice::Trace, true)?;
        if !sq.partial2.is_zero() {
            swapped = Some(format!("del^2 {}", show(l, &sq.partial2)));
        } else if !sq.anti.is_zero() {
            swapped = Some(format!("del dlt + dlt del {}", show(l, &sq.anti)));
        }
        if swapped.is_some() {
            break;
        }
    }
    if let Some(w) = &swapped {
        rep.inform("swapped-splitting-witness", w, None);
    }
    rep.record(
        "swapped-splitting-detected",
        "exchanging J and Jp in the splitting breaks del^2 = 0 or the anticommutator",
        swapped.is_none().then(|| "no identity failed".into()),
    );

    let grid = BicomplexGrid::build(c, c.cap())?;
    rep.record(
        "grid-additivity",
        "dim of k-forms = dim (0,k) + dim (1,k-1) for k <= cap",
        grid.additivity_violation(),
    );
    let excess = grid
        .excess
        .iter()
        .enumerate()
        .find(|(_, &n)| n > 0)
        .map(|(k, n)| format!("{} words in grade {}", n, k));
    rep.record("grid-r-at-most-one", "no reduced word carries X twice", excess);
    Ok(rep)
}

/// Every rank and dimension the engine derives, as named integer lists.
pub type RankSummary = Vec<(String, Vec<usize>)>;

fn table_summary<F: Field>(lam: &Matrix<F>, letters: &Matrix<F>, j: &Matrix<F>, max_grade: usize) -> Result<RankSummary> {
    let m = lam.rows();
    let m1 = letters.rows();
    let id = Matrix::identity(m);
    let rels = symmetric_tensors(lam);
    let omega = WedgeTable::build(m1, rels.clone(), max_grade);
    let adapted = WedgeTable::build(m1, change_letters(&rels, letters)?, max_grade);
    let x = m1 - 1;
    let mut grid = Vec::new();
    for k in 0..=max_grade {
        let b = adapted.basis(k);
        for r in 0..=k.min(2) {
            grid.push(b.iter().filter(|w| w.iter().filter(|&&l| l == x).count() == r).count());
        }
    }
    let j_rank = j.rank();
    Ok(vec![
        ("rank(Lambda - 1)".into(), vec![lam.sub(&id).rank()]),
        ("rank(Lambda^T - 1)".into(), vec![lam.transpose().sub(&id).rank()]),
        ("wedge relations".into(), vec![rels.len()]),
        ("wedge dims (w basis)".into(), omega.dims()),
        ("wedge dims (adapted)".into(), adapted.dims()),
        ("grid dims by X count".into(), grid),
        ("rank J, rank Jp".into(), vec![j_rank, Matrix::identity(m1).sub(j).rank()]),
    ])
}

pub fn symbolic_ranks(c: &Calculus) -> Result<RankSummary> {
    let lam = c.functionals().braiding.to_dense();
    table_summary(&lam, c.letter_matrix(), &c.projector(), c.exterior().max_grade())
}

pub fn numeric_ranks(c: &Calculus, q0: &Rational) -> Result<RankSummary> {
    let lam = c.functionals().braiding.to_dense().evaluate_at(q0)?;
    let letters = c.letter_matrix().evaluate_at(q0)?;
    let j = c.projector().evaluate_at(q0)?;
    table_summary(&lam, &letters, &j, c.exterior().max_grade())
}

fn summary_difference(a: &RankSummary, b: &RankSummary) -> Option<String> {
    a.iter()
        .zip(b)
        .find(|(x, y)| x != y)
        .map(|((n, x), (_, y))| format!("{}: {:?} vs {:?}", n, x, y))
}

/// Symbolic ranks against Gaussian elimination over Q at each `q0`, and
/// the classical count of two-forms at `q0 = 1`.
pub fn rank_report(c: &Calculus, points: &[i64]) -> Result<CheckReport> {
    let mut rep = CheckReport::new("ranks", c.cap());
    let sym = symbolic_ranks(c)?;
    for &p in points {
        let num = numeric_ranks(c, &int(p))?;
        rep.record(
            &format!("numeric-ranks-q{}", p),
            &format!("symbolic ranks agree with elimination at q = {}", p),
            summary_difference(&sym, &num),
        );
    }
    let one = numeric_ranks(c, &int(1))?;
    let dims = &one.iter().find(|(n, _)| n == "wedge dims (w basis)").expect("present").1;
    rep.record(
        "classical-two-forms",
        "dim of two-forms is 6 at q = 1",
        (dims.get(2) != Some(&6)).then(|| format!("dims {:?}", dims)),
    );
    Ok(rep)
}

/// The symbolic summary as display lines.
pub fn format_summary(s: &RankSummary) -> String {
    s.iter().map(|(n, v)| format!("{}: {:?}", n, v)).collect::<Vec<_>>().join("\n")
}
