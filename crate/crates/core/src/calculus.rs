//! The inner differential `d = (1/λ)[X̂, ·]`, the projectors onto span(X̂)
//! and its complement, the splitting `d = ∂ + δ`, and the reconstruction
//! maps between outer and inner calculi.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, QuantumGroup, TensorElement, Word};
use crate::error::{Error, Result};
use crate::forms::{change_letters, conjugate_family, symmetric_tensors, Exterior, FormElement, WedgeTable};
use crate::functionals::{CorepFamily, DualSpace, Functionals, Tabulated};
use crate::linalg::{Matrix, SparseMatrix};
use crate::report::CheckReport;
use crate::rmatrix::RMatrix;
use crate::scalar::Scalar;

/// Which functional drives the right multiplication of the extra
/// generator: `X a = (f⁰₀ ∗ a) X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum F00Choice {
    /// `(1/N) Σ_{a,b} f^{(aa)}_{(bb)}`
    Trace,
    Counit,
}

impl F00Choice {
    pub fn as_str(self) -> &'static str {
        match self {
            F00Choice::Trace => "trace",
            F00Choice::Counit => "counit",
        }
    }
}

/// A scalar functional `Σ w_ij F^i_j` read off a corep family.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarFunctional {
    pub family: CorepFamily,
    pub weights: Vec<(usize, usize, Scalar)>,
}

impl ScalarFunctional {
    pub fn trace(f: &CorepFamily, n: usize) -> Self {
        let w = Scalar::from_int(n as i64).inv().expect("N > 0");
        let weights = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a * n + a, b * n + b)))
            .map(|(i, j)| (i, j, w.clone()))
            .collect();
        ScalarFunctional {
            family: f.clone(),
            weights,
        }
    }

    pub fn counit(n: usize) -> Self {
        ScalarFunctional {
            family: CorepFamily::counit(n),
            weights: vec![(0, 0, Scalar::one())],
        }
    }

    pub fn of_choice(choice: F00Choice, f: &CorepFamily, n: usize) -> Self {
        match choice {
            F00Choice::Trace => Self::trace(f, n),
            F00Choice::Counit => Self::counit(n),
        }
    }

    pub fn word_value(&self, w: &Word) -> Scalar {
        let v = self.family.word_value(w);
        self.weights.iter().map(|(i, j, c)| &v.get(*i, *j) * c).sum()
    }

    pub fn evaluate(&self, x: &AlgebraElement) -> Scalar {
        x.terms().map(|(w, c)| &self.word_value(w) * c).sum()
    }

    /// Same functional with one generator value of the family shifted.
    pub fn perturbed(&self, generator: usize, i: usize, j: usize, by: &Scalar) -> Self {
        let mut gens = self.family.generator_values().to_vec();
        gens[generator].add_at(i, j, by);
        let n = (gens.len() as f64).sqrt() as usize;
        ScalarFunctional {
            family: CorepFamily::from_generator_values(n, gens),
            weights: self.weights.clone(),
        }
    }

    /// Well-definedness on the algebra: value 1 at the unit and equal values
    /// on both sides of every rule.
    pub fn validate(&self, qg: &QuantumGroup) -> Result<()> {
        if !self.word_value(&Word::empty()).is_one() {
            return Err(Error::InvalidFunctional("value at 1 is not 1".into()));
        }
        if let Some((rule, i, j)) = self.family.rewrite_violation(qg.rules()) {
            return Err(Error::InvalidFunctional(format!(
                "entry [{},{}] of the underlying family differs on the two sides of {}",
                i + 1,
                j + 1,
                rule
            )));
        }
        Ok(())
    }
}

/// Letters adapted to the splitting: off-diagonal `ω_a^b`, the traceless
/// diagonal differences `ω_a^a − ω_{a+1}^{a+1}`, and last the canonical
/// element `X̂ = Σ ω_a^a`. Row `i` gives letter `i` in the `ω` basis.
pub fn adapted_letters(n: usize) -> (Matrix<Scalar>, Vec<String>) {
    let m = n * n;
    let mut rows = Vec::new();
    let mut names = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                let mut r = vec![Scalar::zero(); m];
                r[a * n + b] = Scalar::one();
                rows.push(r);
                names.push(format!("w[{},{}]", a + 1, b + 1));
            }
        }
    }
    for a in 0..n - 1 {
        let mut r = vec![Scalar::zero(); m];
        r[a * n + a] = Scalar::one();
        r[(a + 1) * n + a + 1] = -Scalar::one();
        rows.push(r);
        names.push(format!("(w[{},{}] - w[{},{}])", a + 1, a + 1, a + 2, a + 2));
    }
    rows.push(
        (0..m)
            .map(|i| if i / n == i % n { Scalar::one() } else { Scalar::zero() })
            .collect(),
    );
    names.push("X".into());
    (Matrix::from_rows(rows), names)
}

/// The assembled inner calculus on `A_R`.
#[derive(Debug)]
pub struct Calculus {
    qg: QuantumGroup,
    fu: Functionals,
    ext: Exterior,
    letters: Matrix<Scalar>,
    letters_inv: Matrix<Scalar>,
    cap: usize,
}

/// A form split by the number of `X̂` letters in its reduced words.
#[derive(Clone, Debug, PartialEq)]
pub struct Split {
    pub partial: FormElement,
    pub delta: FormElement,
}

impl Calculus {
    /// Builds everything for the given R-matrix. The wedge table carries two
    /// grades beyond `cap` so that `d∘d` is defined on every grade up to it.
    pub fn new(r: RMatrix, lambda: Scalar, cap: usize) -> Result<Self> {
        let qg = QuantumGroup::new(r)?;
        let fu = Functionals::new(&qg, lambda)?;
        let n = qg.n();
        let (letters, names) = adapted_letters(n);
        let letters_inv = letters.inverse().expect("adapted letters are a basis");
        let rels = change_letters(&symmetric_tensors(&fu.braiding.to_dense()), &letters)?;
        let table = WedgeTable::build(n * n, rels, cap + 2);
        let comm = conjugate_family(&fu.f, &letters, n)?;
        let ext = Exterior::new(table, names, comm);
        Ok(Calculus {
            qg,
            fu,
            ext,
            letters,
            letters_inv,
            cap,
        })
    }

    pub fn standard(cap: usize) -> Result<Self> {
        Self::new(RMatrix::standard(2), Scalar::lambda(), cap)
    }

    pub fn qg(&self) -> &QuantumGroup {
        &self.qg
    }

    pub fn functionals(&self) -> &Functionals {
        &self.fu
    }

    pub fn exterior(&self) -> &Exterior {
        &self.ext
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn lambda(&self) -> &Scalar {
        &self.fu.lambda
    }

    /// Rows are the adapted letters in the `ω` basis.
    pub fn letter_matrix(&self) -> &Matrix<Scalar> {
        &self.letters
    }

    fn m(&self) -> usize {
        self.qg.n() * self.qg.n()
    }

    fn x_letter(&self) -> usize {
        self.m() - 1
    }

    /// `X̂ = Σ_a ω_a^a`.
    pub fn canonical_element(&self) -> FormElement {
        self.ext.letter(self.x_letter()).expect("grade 1 exists")
    }

    /// `ω_a^b` (0-based pair index) in adapted coordinates.
    pub fn omega(&self, i: usize) -> Result<FormElement> {
        let c: Vec<Scalar> = (0..self.m()).map(|l| self.letters_inv.get(i, l).clone()).collect();
        self.ext.from_letters(&c)
    }

    /// Letter coefficients of a grade-1 form rewritten in the `ω` basis.
    pub fn to_omega(&self, x: &FormElement) -> Vec<AlgebraElement> {
        let m = self.m();
        (0..m)
            .map(|a| {
                let mut acc = AlgebraElement::zero();
                for i in 0..m {
                    let idx = self.ext.table().index_of(&[i]).unwrap();
                    acc.add_scaled(&x.coeffs[idx], self.letters.get(i, a));
                }
                acc
            })
            .collect()
    }

    pub fn wedge(&self, x: &FormElement, y: &FormElement) -> Result<FormElement> {
        self.ext.wedge(&self.qg, x, y)
    }

    /// `dΘ = (1/λ)(X̂ ∧ Θ − (−1)^k Θ ∧ X̂)`.
    pub fn d(&self, x: &FormElement) -> Result<FormElement> {
        let xh = self.canonical_element();
        let left = self.ext.wedge(&self.qg, &xh, x)?;
        let right = self.ext.wedge(&self.qg, x, &xh)?;
        let diff = if x.grade.is_multiple_of(2) {
            left.sub(&right)?
        } else {
            left.add(&right)?
        };
        Ok(diff.scale(&self.fu.lambda.inv()?))
    }

    pub fn d_algebra(&self, a: &AlgebraElement) -> Result<FormElement> {
        self.d(&self.ext.scalar_form(a.clone()))
    }

    /// Number of `X̂` letters in each reduced word of a grade.
    pub fn x_count(&self, grade: usize, idx: usize) -> usize {
        let x = self.x_letter();
        self.ext.table().basis(grade)[idx].iter().filter(|&&l| l == x).count()
    }

    /// The part of a form on reduced words with exactly `r` `X̂` letters.
    pub fn project(&self, x: &FormElement, r: usize) -> FormElement {
        let coeffs = x
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if self.x_count(x.grade, i) == r {
                    c.clone()
                } else {
                    AlgebraElement::zero()
                }
            })
            .collect();
        FormElement { grade: x.grade, coeffs }
    }

    /// `d x` split into the part keeping the `X̂` count (`∂`) and the part
    /// raising it by one (`δ`), together with whatever lowers it, which
    /// should vanish.
    pub fn split_full(&self, x: &FormElement) -> Result<(Split, FormElement)> {
        let x0 = self.project(x, 0);
        let x1 = self.project(x, 1);
        let d0 = self.d(&x0)?;
        let d1 = self.d(&x1)?;
        let partial = self.project(&d0, 0).add(&self.project(&d1, 1))?;
        let mut delta = self.project(&d0, 1);
        for r in 2..=x.grade + 1 {
            delta = delta.add(&self.project(&d1, r))?;
        }
        let lowering = self.project(&d1, 0);
        Ok((Split { partial, delta }, lowering))
    }

    pub fn split(&self, x: &FormElement, choice: F00Choice) -> Result<Split> {
        let (mut s, _) = self.split_full(x)?;
        if choice == F00Choice::Counit {
            s.delta = self.ext.zero(x.grade + 1)?;
        }
        Ok(s)
    }

    pub fn partial(&self, x: &FormElement) -> Result<FormElement> {
        Ok(self.split_full(x)?.0.partial)
    }

    pub fn delta(&self, x: &FormElement, choice: F00Choice) -> Result<FormElement> {
        Ok(self.split(x, choice)?.delta)
    }

    /// `∂ + δ` for the given choice; the inner `d` for the trace.
    pub fn d_extended(&self, x: &FormElement, choice: F00Choice) -> Result<FormElement> {
        let s = self.split(x, choice)?;
        s.partial.add(&s.delta)
    }

    /// `δa = (1/λ)((f⁰₀ − ε) ∗ a) X̂` on functions, straight from the
    /// functional.
    pub fn delta_formula(&self, a: &AlgebraElement, f00: &ScalarFunctional) -> Result<FormElement> {
        let mut c = AlgebraElement::zero();
        for (w, s) in a.terms() {
            for (l, r, t) in self.qg.coproduct_word(w).terms() {
                let v = &f00.word_value(r) - &self.qg.counit_word(r);
                c.add_term(l.clone(), &(&v * t) * s);
            }
        }
        let mut out = self.ext.zero(1)?;
        let idx = self.ext.table().index_of(&[self.x_letter()]).unwrap();
        out.coeffs[idx] = c.scale(&self.fu.lambda.inv()?);
        Ok(out)
    }

    /// `(χ_i ∗ a) = Σ a₁ χ_i(a₂)` for every `i`.
    pub fn chi_convolve(&self, a: &AlgebraElement) -> Vec<AlgebraElement> {
        let m = self.m();
        let mut out = vec![AlgebraElement::zero(); m];
        for (w, s) in a.terms() {
            for (l, r, t) in self.qg.coproduct_word(w).terms() {
                for (i, v) in self.fu.chi.word_value(r).iter().enumerate() {
                    out[i].add_term(l.clone(), &(v * t) * s);
                }
            }
        }
        out
    }

    /// Coefficients of `da` on `ω_a^b`.
    pub fn expand_d_in_basis(&self, a: &AlgebraElement) -> Result<Vec<AlgebraElement>> {
        Ok(self.to_omega(&self.d_algebra(a)?))
    }

    /// `J` on `ω` coordinates (acting on column vectors): projection onto
    /// span(X̂) along the traceless forms.
    pub fn projector(&self) -> Matrix<Scalar> {
        let m = self.m();
        let e = Matrix::from_fn(m, m, |r, c| {
            if r == c && r == self.x_letter() {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let pt = self.letters.transpose();
        pt.mul(&e).mul(&pt.inverse().unwrap())
    }

    pub fn complement_projector(&self) -> Matrix<Scalar> {
        Matrix::identity(self.m()).sub(&self.projector())
    }

    /// `J` on a grade-1 form: keep the `X̂` coordinate.
    pub fn apply_j(&self, x: &FormElement) -> FormElement {
        self.project(x, 1)
    }

    pub fn random_element(&self, rng: &mut ChaCha8Rng, max_degree: usize) -> AlgebraElement {
        let words = self.qg.normal_words(max_degree);
        let mut a = AlgebraElement::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let w = words.choose(rng).unwrap().clone();
            let c = Scalar::from_int(rng.gen_range(-3..=3)) * Scalar::q_pow(rng.gen_range(-1..=1));
            a.add_term(w, c);
        }
        a
    }

    pub fn random_form(&self, rng: &mut ChaCha8Rng, grade: usize, max_degree: usize) -> Result<FormElement> {
        let mut x = self.ext.zero(grade)?;
        for c in x.coeffs.iter_mut() {
            if rng.gen_bool(0.7) {
                *c = self.random_element(rng, max_degree);
            }
        }
        Ok(x)
    }
}

fn form_witness(c: &Calculus, label: &str, x: &FormElement) -> Option<String> {
    (!x.is_zero()).then(|| format!("{}: nonzero remainder {}", label, c.ext.display(x)))
}

/// Leibniz rules, the tie between `d` and the vector fields, bimodule
/// well-definedness and the left coaction.
pub fn leibniz_report(c: &Calculus, degree: usize, samples: usize, seed: u64) -> Result<CheckReport> {
    let qg = c.qg();
    let ext = c.exterior();
    let mut rep = CheckReport::new("leibniz", degree);
    let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let gens: Vec<AlgebraElement> = qg
        .generators()
        .into_iter()
        .map(|g| AlgebraElement::from_word(Word(vec![g])))
        .collect();

    rep.record(
        "d-of-unit",
        "d(1) = 0",
        form_witness(c, "d(1)", &c.d_algebra(&AlgebraElement::one())?),
    );

    // Relations of the wedge quotient are a right submodule.
    let m = ext.letters();
    let mut w = None;
    'rel: for rel in ext.table().relations() {
        for g in &gens {
            let mut acc = vec![AlgebraElement::zero(); ext.dim(2)];
            for i in 0..m {
                for j in 0..m {
                    let s = &rel[i * m + j];
                    if s.is_zero() {
                        continue;
                    }
                    for (h, x) in ext.commute_word(qg, &[i, j], g)?.iter().enumerate() {
                        acc[h].add_scaled(x, s);
                    }
                }
            }
            if let Some((h, x)) = acc.iter().enumerate().find(|(_, x)| !x.is_zero()) {
                w = Some(format!("relation times {} leaves {} on {}", g, x, ext.word_name(2, h)));
                break 'rel;
            }
        }
    }
    rep.record(
        "wedge-relations-bimodule",
        "the symmetric tensors times any generator stay symmetric",
        w,
    );

    let mut w = None;
    'rules: for rule in qg.rules() {
        let lhs = AlgebraElement::from_word(rule.lhs.clone());
        for i in 0..m {
            let a = ext.commute_word(qg, &[i], &lhs)?;
            let b = ext.commute_word(qg, &[i], &rule.rhs)?;
            if a != b {
                w = Some(format!("{} times both sides of {}", ext.names()[i], rule));
                break 'rules;
            }
        }
    }
    rep.record("bimodule-well-defined", "one-forms commute past both sides of every rule alike", w);

    let mut w = None;
    'assoc: for a in &gens {
        for b in &gens {
            for i in 0..m {
                let l = ext.letter(i)?;
                let left = ext.right_mul(qg, &ext.right_mul(qg, &l, a)?, b)?;
                let right = ext.right_mul(qg, &l, &qg.mul(a, b))?;
                if left != right {
                    w = Some(format!("({} {}) {} vs {} ({} {})", ext.names()[i], a, b, ext.names()[i], a, b));
                    break 'assoc;
                }
            }
        }
    }
    rep.record("right-action-associative", "(w a) b = w (ab) for letters and generators", w);

    // Basis expansion of d against the vector fields.
    let mut w = None;
    let mut inputs: Vec<AlgebraElement> = gens.clone();
    inputs.extend(
        qg.normal_words(2)
            .into_iter()
            .filter(|x| x.len() == 2)
            .map(AlgebraElement::from_word),
    );
    for a in &inputs {
        let lhs = c.expand_d_in_basis(a)?;
        let rhs = c.chi_convolve(a);
        if let Some(i) = (0..lhs.len()).find(|&i| lhs[i] != rhs[i]) {
            w = Some(format!(
                "a = {}: coefficient {} is {} but chi * a gives {}",
                a,
                crate::checks::pair_label(qg.n(), i),
                lhs[i],
                rhs[i]
            ));
            break;
        }
    }
    rep.record(
        "d-basis-expansion",
        "da = sum_i (chi_i * a) w_i for generators and degree-2 monomials",
        w,
    );

    // Leibniz on functions: generator pairs and random pairs.
    let mut pairs: Vec<(AlgebraElement, AlgebraElement)> = Vec::new();
    for a in &gens {
        for b in &gens {
            pairs.push((a.clone(), b.clone()));
        }
    }
    for _ in 0..samples {
        pairs.push((c.random_element(&mut rng, 2), c.random_element(&mut rng, 2)));
    }
    let leib = |op: &dyn Fn(&FormElement) -> Result<FormElement>| -> Result<Option<String>> {
        for (a, b) in &pairs {
            let lhs = op(&ext.scalar_form(qg.mul(a, b)))?;
            let da = op(&ext.scalar_form(a.clone()))?;
            let db = op(&ext.scalar_form(b.clone()))?;
            let rhs = ext.right_mul(qg, &da, b)?.add(&ext.left_mul(qg, a, &db))?;
            if lhs != rhs {
                return Ok(Some(format!("a = {}, b = {}", a, b)));
            }
        }
        Ok(None)
    };
    rep.record("leibniz-d", "d(ab) = (da) b + a (db)", leib(&|x| c.d(x))?);
    rep.inform("leibniz-partial", "del(ab) = (del a) b + a (del b)", leib(&|x| c.partial(x))?);
    rep.inform(
        "leibniz-delta",
        "dlt(ab) = (dlt a) b + a (dlt b) with the trace f00",
        leib(&|x| c.delta(x, F00Choice::Trace))?,
    );

    // Graded Leibniz on one-forms.
    let mut ones: Vec<FormElement> = (0..m).map(|i| ext.letter(i)).collect::<Result<_>>()?;
    for _ in 0..samples.min(10) {
        ones.push(c.random_form(&mut rng, 1, 1)?);
    }
    let mut w = None;
    'graded: for x in &ones {
        for y in ones.iter().take(m + 3) {
            let lhs = c.d(&c.wedge(x, y)?)?;
            let rhs = c.wedge(&c.d(x)?, y)?.sub(&c.wedge(x, &c.d(y)?)?)?;
            if lhs != rhs {
                w = Some(format!("x = {}, y = {}", ext.display(x), ext.display(y)));
                break 'graded;
            }
        }
    }
    rep.record("graded-leibniz-d", "d(x /\\ y) = dx /\\ y - x /\\ dy on one-forms", w);

    // Left coaction: counit leg and bicovariance of d.
    let mut w = None;
    for x in ones.iter().skip(m) {
        let back = ext.counit_leg(qg, 1, &ext.left_coaction(qg, x));
        if &back != x {
            w = Some(format!("x = {}", ext.display(x)));
            break;
        }
    }
    rep.record("coaction-counit", "(eps x id) phi_G(x) = x", w);
    let mut w = None;
    for word in qg.normal_words(degree) {
        let a = AlgebraElement::from_word(word.clone());
        let lhs = ext.left_coaction(qg, &c.d_algebra(&a)?);
        let mut rhs = vec![TensorElement::zero(); ext.dim(1)];
        for (l, r, s) in qg.coproduct_word(&word).terms() {
            let dr = c.d_algebra(&AlgebraElement::from_word(r.clone()))?;
            for (i, coef) in dr.coeffs.iter().enumerate() {
                rhs[i].add_product(&AlgebraElement::from_word(l.clone()), coef, s);
            }
        }
        if lhs != rhs {
            w = Some(format!("a = {}", word));
            break;
        }
    }
    rep.record("d-left-covariant", "phi_G(da) = (id x d) phi(a)", w);
    Ok(rep)
}

/// A calculus reduced to decidable data: one-form rank, the commutation
/// functionals and the vector fields of the differential, tabulated on
/// normal words up to the degree bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Descriptor {
    pub mode: Mode,
    pub names: Vec<String>,
    pub commutation: Tabulated,
    pub differential: Tabulated,
    pub f00: Option<F00Choice>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Inner,
    Outer,
    ExtendedOuter,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Inner => "inner",
            Mode::Outer => "outer",
            Mode::ExtendedOuter => "extended-outer",
        }
    }
}

impl Descriptor {
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// The differential of a normal word: `Σ_j (χ_j ∗ w) e_j`.
    pub fn differential_of(&self, qg: &QuantumGroup, dual: &DualSpace, w: &Word) -> Result<Vec<AlgebraElement>> {
        let mut out = vec![AlgebraElement::zero(); self.rank()];
        for (l, r, s) in qg.coproduct_word(w).terms() {
            let idx = dual
                .index_of(r)
                .ok_or_else(|| Error::Type(format!("{} is beyond the tabulated degree", r)))?;
            for (j, v) in self.differential.values[idx].row(0) {
                out[j].add_term(l.clone(), v * s);
            }
        }
        Ok(out)
    }
}

fn sub_table(t: &Tabulated, rows: &[usize], cols: &[usize]) -> Tabulated {
    let values = t
        .values
        .iter()
        .map(|v| {
            let mut s = SparseMatrix::zeros(rows.len(), cols.len());
            for (ri, &r) in rows.iter().enumerate() {
                for (ci, &cc) in cols.iter().enumerate() {
                    s.set(ri, ci, v.get(r, cc));
                }
            }
            s
        })
        .collect();
    Tabulated {
        rows: rows.len(),
        cols: cols.len(),
        values,
    }
}

/// The inner calculus as a descriptor in the adapted letters.
pub fn inner_descriptor(c: &Calculus, dual: &DualSpace) -> Descriptor {
    let comm = dual.tabulate(c.exterior().commutation());
    let chi = dual.tabulate_row(&c.functionals().chi);
    let pinv = SparseMatrix::from_dense(&c.letters_inv);
    Descriptor {
        mode: Mode::Inner,
        names: c.exterior().names().to_vec(),
        commutation: comm,
        differential: chi.right_mul(&pinv),
        f00: None,
    }
}

/// Φ: quotient by span(X̂), with `∂ = J⊥ ∘ d`.
pub fn map_in_to_out(inner: &Descriptor) -> Result<Descriptor> {
    if inner.mode == Mode::Outer {
        return Err(Error::Type("Phi expects an inner or extended calculus".into()));
    }
    let keep: Vec<usize> = (0..inner.rank() - 1).collect();
    Ok(Descriptor {
        mode: Mode::Outer,
        names: keep.iter().map(|&i| inner.names[i].clone()).collect(),
        commutation: sub_table(&inner.commutation, &keep, &keep),
        differential: sub_table(&inner.differential, &[0], &keep),
        f00: None,
    })
}

/// Ψ: adjoin `X` with `X a = (f⁰₀ ∗ a) X` and `δa = (1/λ)((f⁰₀ − ε) ∗ a) X`.
pub fn map_out_to_in(
    outer: &Descriptor,
    f00: &ScalarFunctional,
    choice: Option<F00Choice>,
    qg: &QuantumGroup,
    dual: &DualSpace,
    lambda: &Scalar,
) -> Result<Descriptor> {
    if outer.mode != Mode::Outer {
        return Err(Error::Type("Psi expects an outer calculus".into()));
    }
    f00.validate(qg)?;
    let r = outer.rank();
    let inv = lambda.inv()?;
    let mut comm = Vec::new();
    let mut diff = Vec::new();
    for (k, w) in dual.words().iter().enumerate() {
        let v = f00.word_value(w);
        let mut cm = SparseMatrix::zeros(r + 1, r + 1);
        for (i, j, x) in outer.commutation.values[k].entries() {
            cm.set(i, j, x.clone());
        }
        cm.set(r, r, v.clone());
        comm.push(cm);
        let mut dm = SparseMatrix::zeros(1, r + 1);
        for (j, x) in outer.differential.values[k].row(0) {
            dm.set(0, j, x.clone());
        }
        dm.set(0, r, &(&v - &qg.counit_word(w)) * &inv);
        diff.push(dm);
    }
    let mut names = outer.names.clone();
    names.push("X".into());
    Ok(Descriptor {
        mode: Mode::ExtendedOuter,
        names,
        commutation: Tabulated {
            rows: r + 1,
            cols: r + 1,
            values: comm,
        },
        differential: Tabulated {
            rows: 1,
            cols: r + 1,
            values: diff,
        },
        f00: choice,
    })
}

/// First difference between two descriptors in the sense used for the
/// round trip: rank, commutation on generators, differential on words.
pub fn descriptor_difference(a: &Descriptor, b: &Descriptor, qg: &QuantumGroup, dual: &DualSpace) -> Result<Option<String>> {
    if a.rank() != b.rank() {
        return Ok(Some(format!("ranks {} and {}", a.rank(), b.rank())));
    }
    for (k, w) in dual.words().iter().enumerate() {
        if w.len() == 1 && a.commutation.values[k] != b.commutation.values[k] {
            let (i, j, _) = a.commutation.values[k]
                .sub(&b.commutation.values[k])
                .first_nonzero()
                .map(|(i, j, v)| (i, j, v.clone()))
                .unwrap();
            return Ok(Some(format!("commutation [{},{}] on {}", a.names[i], a.names[j], w)));
        }
    }
    for w in dual.words() {
        let da = a.differential_of(qg, dual, w)?;
        let db = b.differential_of(qg, dual, w)?;
        if let Some(j) = (0..da.len()).find(|&j| da[j] != db[j]) {
            return Ok(Some(format!("differential of {} along {}: {} vs {}", w, a.names[j], da[j], db[j])));
        }
    }
    Ok(None)
}

/// Projector laws, the reconstruction round trip for both choices of
/// `f⁰₀`, the injectivity witness and a corrupted negative control.
pub fn roundtrip_report(c: &Calculus, dual: &DualSpace) -> Result<CheckReport> {
    let qg = c.qg();
    let ext = c.exterior();
    let n = qg.n();
    let m = n * n;
    let mut rep = CheckReport::new("roundtrip", dual.degree());

    let j = c.projector();
    let jp = c.complement_projector();
    let id = Matrix::identity(m);
    let xh: Vec<Scalar> = (0..m)
        .map(|i| if i / n == i % n { Scalar::one() } else { Scalar::zero() })
        .collect();
    rep.record(
        "projector-idempotent",
        "J^2 = J and Jp^2 = Jp",
        (j.mul(&j) != j || jp.mul(&jp) != jp).then(|| "not idempotent".into()),
    );
    rep.record(
        "projector-complete",
        "J + Jp = id",
        (j.add(&jp) != id).then(|| "sum differs from id".into()),
    );
    rep.record(
        "projector-orthogonal",
        "J Jp = 0 = Jp J",
        (!j.mul(&jp).is_zero() || !jp.mul(&j).is_zero()).then(|| "product nonzero".into()),
    );
    rep.record(
        "projector-fixes-x",
        "J(X) = X and Jp(X) = 0",
        (j.apply(&xh) != xh || jp.apply(&xh).iter().any(|v| !v.is_zero())).then(|| "X not fixed".into()),
    );
    let inv_n = Scalar::from_int(n as i64).inv()?;
    let trace_form = Matrix::from_fn(m, m, |r, cc| {
        if r / n == r % n && cc / n == cc % n {
            inv_n.clone()
        } else {
            Scalar::zero()
        }
    });
    rep.record(
        "projector-trace-form",
        "J(w[a,b]) = delta_ab X / N",
        (j != trace_form).then(|| format!("J = {}", j)),
    );

    // Right-module property of J, measured.
    let gens: Vec<AlgebraElement> = qg
        .generators()
        .into_iter()
        .map(|g| AlgebraElement::from_word(Word(vec![g])))
        .collect();
    let mut w = None;
    'rm: for i in 0..m {
        let om = c.omega(i)?;
        for g in &gens {
            let lhs = c.apply_j(&ext.right_mul(qg, &om, g)?);
            let rhs = ext.right_mul(qg, &c.apply_j(&om), g)?;
            if lhs != rhs {
                w = Some(format!(
                    "J(w{} {}) differs from J(w{}) {}",
                    crate::checks::pair_label(n, i),
                    g,
                    crate::checks::pair_label(n, i),
                    g
                ));
                break 'rm;
            }
        }
    }
    rep.inform("projector-right-module", "J(w a) = J(w) a", w);

    // Closure of span(X) under right multiplication with the trace functional.
    let tr = ScalarFunctional::trace(&c.functionals().f, n);
    let mut w = None;
    let xhat = c.canonical_element();
    for g in &gens {
        let lhs = ext.right_mul(qg, &xhat, g)?;
        let mut coef = AlgebraElement::zero();
        for (l, r, s) in qg.coproduct(g).terms() {
            coef.add_term(l.clone(), s * &tr.word_value(r));
        }
        let rhs = ext.left_mul(qg, &coef, &xhat);
        if lhs != rhs {
            w = Some(format!("X {} = {}", g, ext.display(&lhs)));
            break;
        }
    }
    rep.inform("trace-closure", "X a = (f00_trace * a) X", w);

    // δ on functions: split part against the closed formula.
    let mut w = None;
    for word in qg.normal_words(dual.degree()) {
        let a = AlgebraElement::from_word(word.clone());
        if c.delta(&ext.scalar_form(a.clone()), F00Choice::Trace)? != c.delta_formula(&a, &tr)? {
            w = Some(format!("a = {}", word));
            break;
        }
    }
    rep.record("delta-formula", "J(da) = (1/lambda)((f00_trace - eps) * a) X", w);

    let inner = inner_descriptor(c, dual);
    let outer = map_in_to_out(&inner)?;
    rep.record(
        "phi-rank",
        "Phi drops the one-form rank by one",
        (outer.rank() + 1 != inner.rank()).then(|| format!("{} -> {}", inner.rank(), outer.rank())),
    );
    let mut w = None;
    for word in dual.words() {
        let a = AlgebraElement::from_word(word.clone());
        let via_forms = c.partial(&ext.scalar_form(a.clone()))?;
        let via_table = outer.differential_of(qg, dual, word)?;
        let xi = ext.table().index_of(&[m - 1]).unwrap();
        if !via_forms.coeffs[xi].is_zero() {
            w = Some(format!("del {} has an X component", word));
            break;
        }
        let mut mismatch = false;
        for (l, t) in via_table.iter().enumerate() {
            let idx = ext.table().index_of(&[l]).unwrap();
            mismatch |= &via_forms.coeffs[idx] != t;
        }
        if mismatch {
            w = Some(format!("del {} disagrees with the quotient", word));
            break;
        }
    }
    rep.record("phi-differential", "the outer differential is Jp o d and has no X component", w);

    let mut extended = Vec::new();
    for choice in [F00Choice::Trace, F00Choice::Counit] {
        let f00 = ScalarFunctional::of_choice(choice, &c.functionals().f, n);
        let id = format!("roundtrip-{}", choice.as_str());
        match map_out_to_in(&outer, &f00, Some(choice), qg, dual, c.lambda()) {
            Ok(ext_desc) => {
                let back = map_in_to_out(&ext_desc)?;
                rep.record(
                    &id,
                    &format!("Phi o Psi = id with f00 = {}", choice.as_str()),
                    descriptor_difference(&back, &outer, qg, dual)?,
                );
                extended.push(ext_desc);
            }
            Err(e) => rep.record(&id, &format!("Phi o Psi = id with f00 = {}", choice.as_str()), Some(e.to_string())),
        }
    }
    if extended.len() == 2 {
        let diff = descriptor_difference(&extended[0], &extended[1], qg, dual)?;
        rep.record(
            "psi-injective",
            "the trace and counit extensions are distinguishable",
            match diff {
                Some(_) => None,
                None => Some("the two extensions coincide".into()),
            },
        );
        if let Some(d) = diff {
            rep.inform("psi-injective-witness", &format!("first difference: {}", d), None);
        }
    }
    if let Some(ext_tr) = extended.first() {
        rep.record(
            "psi-extends-delta",
            "the extended differential along X matches the split delta of the inner calculus",
            descriptor_difference(ext_tr, &inner_descriptor(c, dual), qg, dual)?
                .filter(|d| !d.starts_with("commutation"))
                .map(|d| format!("extended and inner differ: {}", d)),
        );
    }

    let bad = tr.perturbed(0, 0, 0, &Scalar::one());
    let w = match map_out_to_in(&outer, &bad, None, qg, dual, c.lambda()) {
        Err(e) => {
            rep.inform("corrupted-f00-witness", &e.to_string(), None);
            None
        }
        Ok(d) => {
            let back = map_in_to_out(&d)?;
            match descriptor_difference(&back, &outer, qg, dual)? {
                Some(_) => None,
                None => Some("a corrupted f00 passed the round trip".into()),
            }
        }
    };
    rep.record("corrupted-f00-rejected", "a perturbed generator value of f00 is detected", w);
    Ok(rep)
}
