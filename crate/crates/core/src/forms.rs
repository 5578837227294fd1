//! Left-invariant one-forms, the wedge quotient by the symmetric part of
//! the braiding, and forms with algebra coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use crate::algebra::{AlgebraElement, QuantumGroup, TensorElement, Word};
use crate::error::{Error, Result};
use crate::functionals::CorepFamily;
use crate::linalg::{Field, Matrix, SparseMatrix};
use crate::scalar::Scalar;

/// Reduced wedge words per grade, with the rewriting of every word `b·j`
/// (`b` reduced, `j` a letter) into reduced words.
#[derive(Clone, Debug)]
pub struct WedgeTable<F> {
    letters: usize,
    relations: Vec<Vec<F>>,
    basis: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    /// `step[k][b·letters + j]`: coordinates of `basis[k-1][b]·j` in grade k.
    step: Vec<Vec<Vec<F>>>,
}

/// The symmetric 2-tensors as coefficient vectors `c_{(i,j)}` of
/// `Σ c ω_i ⊗ ω_j`. With `σ(ω_i ⊗ ω_j) = Σ Λ^{ij}_{kl} ω_k ⊗ ω_l` and Λ
/// stored at row `(i,j)`, column `(k,l)`, σ acts on coefficients by `Λᵀ`,
/// so this is `ker(Λᵀ − 1)`.
pub fn symmetric_tensors<F: Field>(lam: &Matrix<F>) -> Vec<Vec<F>> {
    lam.transpose().sub(&Matrix::identity(lam.rows())).kernel()
}

/// Rewrites 2-tensor coefficient vectors into a new letter basis, where
/// `new[i] = Σ_a p[i][a] old[a]`.
pub fn change_letters<F: Field>(vectors: &[Vec<F>], p: &Matrix<F>) -> Result<Vec<Vec<F>>> {
    let m = p.rows();
    let pinv = p.inverse().ok_or_else(|| Error::Type("letter change is singular".into()))?;
    // old coordinates c relate to new ones c' by c = (Pᵀ ⊗ Pᵀ) c'.
    Ok(vectors
        .iter()
        .map(|v| {
            (0..m * m)
                .map(|ij| {
                    let (i, j) = (ij / m, ij % m);
                    let mut acc = F::zero();
                    for a in 0..m {
                        for b in 0..m {
                            let c = &v[a * m + b];
                            if !c.is_zero() {
                                acc = acc.add(&c.mul(&pinv.get(a, i).mul(pinv.get(b, j))));
                            }
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect())
}

impl<F: Field> WedgeTable<F> {
    /// Grades `0..=max_grade` of the exterior algebra on `letters` one-forms
    /// modulo the two-sided ideal of the given degree-2 relations. Reduced
    /// words are the lexicographically earliest complement.
    pub fn build(letters: usize, relations: Vec<Vec<F>>, max_grade: usize) -> Self {
        let mut t = WedgeTable {
            letters,
            relations,
            basis: vec![vec![vec![]]],
            index: Vec::new(),
            step: vec![vec![]],
        };
        t.index.push(std::iter::once((vec![], 0)).collect());
        for k in 1..=max_grade {
            t.extend_grade(k);
        }
        t
    }

    fn extend_grade(&mut self, k: usize) {
        let m = self.letters;
        let prev = &self.basis[k - 1];
        let cands: Vec<Vec<usize>> = prev
            .iter()
            .flat_map(|b| (0..m).map(move |j| b.iter().copied().chain(std::iter::once(j)).collect()))
            .collect();
        // Columns ordered from the latest word down so pivots land on late words.
        let mut order: Vec<usize> = (0..cands.len()).collect();
        order.sort_by(|&x, &y| cands[y].cmp(&cands[x]));
        let mut pos = vec![0; cands.len()];
        for (p, &c) in order.iter().enumerate() {
            pos[c] = p;
        }
        let mut rows = Vec::new();
        if k >= 2 {
            for u in 0..self.basis[k - 2].len() {
                for rel in &self.relations {
                    let mut row = vec![F::zero(); cands.len()];
                    for i in 0..m {
                        for j in 0..m {
                            let c = &rel[i * m + j];
                            if c.is_zero() {
                                continue;
                            }
                            // u·i reduced in grade k-1, then ·j.
                            for (b, v) in self.step[k - 1][u * m + i].iter().enumerate() {
                                if !v.is_zero() {
                                    let p = pos[b * m + j];
                                    row[p] = row[p].add(&c.mul(v));
                                }
                            }
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let (rref, pivots) = if rows.is_empty() {
            (Matrix::zeros(0, cands.len()), vec![])
        } else {
            Matrix::from_rows(rows).rref()
        };
        let pivot_row: HashMap<usize, usize> = pivots.iter().enumerate().map(|(r, &p)| (p, r)).collect();
        let mut free: Vec<usize> = (0..cands.len()).filter(|c| !pivot_row.contains_key(&pos[*c])).collect();
        free.sort_by(|&x, &y| cands[x].cmp(&cands[y]));
        let basis: Vec<Vec<usize>> = free.iter().map(|&c| cands[c].clone()).collect();
        let free_index: HashMap<usize, usize> = free.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let step = (0..cands.len())
            .map(|c| {
                let mut v = vec![F::zero(); basis.len()];
                if let Some(&i) = free_index.get(&c) {
                    v[i] = F::one();
                } else {
                    let r = pivot_row[&pos[c]];
                    for (&fc, &i) in &free_index {
                        let x = rref.get(r, pos[fc]);
                        if !x.is_zero() {
                            v[i] = x.neg();
                        }
                    }
                }
                v
            })
            .collect();
        self.index.push(basis.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect());
        self.basis.push(basis);
        self.step.push(step);
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn max_grade(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn relations(&self) -> &[Vec<F>] {
        &self.relations
    }

    pub fn dim(&self, grade: usize) -> usize {
        self.basis.get(grade).map_or(0, |b| b.len())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }

    pub fn basis(&self, grade: usize) -> &[Vec<usize>] {
        &self.basis[grade]
    }

    pub fn index_of(&self, word: &[usize]) -> Option<usize> {
        self.index.get(word.len()).and_then(|m| m.get(word).copied())
    }

    /// Coordinates of an arbitrary letter word in the reduced basis of its
    /// grade.
    pub fn reduce_word(&self, word: &[usize]) -> Result<Vec<F>> {
        if word.len() > self.max_grade() {
            return Err(Error::GradeCap {
                grade: word.len(),
                cap: self.max_grade(),
            });
        }
        let m = self.letters;
        let mut v = vec![F::one()];
        for (k, &j) in word.iter().enumerate() {
            let mut next = vec![F::zero(); self.dim(k + 1)];
            for (b, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (h, x) in self.step[k + 1][b * m + j].iter().enumerate() {
                    if !x.is_zero() {
                        next[h] = next[h].add(&c.mul(x));
                    }
                }
            }
            v = next;
        }
        Ok(v)
    }

    /// First grade whose reduced basis is empty, if within the table.
    pub fn top_grade(&self) -> Option<usize> {
        self.basis.iter().position(|b| b.is_empty())
    }
}

/// Letter names for the one-form basis `ω_a^b`, written `w[a,b]`.
pub fn standard_letter_names(n: usize) -> Vec<String> {
    (0..n * n).map(|i| format!("w[{},{}]", i / n + 1, i % n + 1)).collect()
}

/// A homogeneous form `Σ_b c_b ω_b` with left algebra coefficients on the
/// reduced words of its grade.
#[derive(Clone, Debug, PartialEq)]
pub struct FormElement {
    pub grade: usize,
    pub coeffs: Vec<AlgebraElement>,
}

impl FormElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &FormElement) -> Result<FormElement> {
        if self.grade != o.grade {
            return Err(Error::Type(format!("cannot add forms of grades {} and {}", self.grade, o.grade)));
        }
        Ok(FormElement {
            grade: self.grade,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, o: &FormElement) -> Result<FormElement> {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> FormElement {
        FormElement {
            grade: self.grade,
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// First nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<(usize, &AlgebraElement)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }
}

/// The exterior algebra over the quantum group for one choice of letter
/// basis: `letter_i · a = Σ_j (F^i_j ∗ a) letter_j`.
#[derive(Debug)]
pub struct Exterior {
    table: WedgeTable<Scalar>,
    names: Vec<String>,
    comm: CorepFamily,
    conv_cache: RwLock<HashMap<Word, Vec<AlgebraElement>>>,
    prod_cache: RwLock<HashMap<(Vec<usize>, Vec<usize>), Vec<Scalar>>>,
}

impl Exterior {
    pub fn new(table: WedgeTable<Scalar>, names: Vec<String>, comm: CorepFamily) -> Self {
        assert_eq!(table.letters(), comm.dim());
        assert_eq!(names.len(), comm.dim());
        Exterior {
            table,
            names,
            comm,
            conv_cache: RwLock::new(HashMap::new()),
            prod_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn table(&self) -> &WedgeTable<Scalar> {
        &self.table
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn commutation(&self) -> &CorepFamily {
        &self.comm
    }

    pub fn letters(&self) -> usize {
        self.table.letters()
    }

    pub fn max_grade(&self) -> usize {
        self.table.max_grade()
    }

    pub fn dim(&self, grade: usize) -> usize {
        self.table.dim(grade)
    }

    fn check_grade(&self, grade: usize) -> Result<()> {
        if grade > self.max_grade() {
            Err(Error::GradeCap {
                grade,
                cap: self.max_grade(),
            })
        } else {
            Ok(())
        }
    }

    pub fn zero(&self, grade: usize) -> Result<FormElement> {
        self.check_grade(grade)?;
        Ok(FormElement {
            grade,
            coeffs: vec![AlgebraElement::zero(); self.dim(grade)],
        })
    }

    pub fn scalar_form(&self, a: AlgebraElement) -> FormElement {
        FormElement { grade: 0, coeffs: vec![a] }
    }

    /// The letter `i` as a grade-1 form.
    pub fn letter(&self, i: usize) -> Result<FormElement> {
        let mut x = self.zero(1)?;
        let idx = self.table.index_of(&[i]).expect("letters are reduced");
        x.coeffs[idx] = AlgebraElement::one();
        Ok(x)
    }

    /// Grade-1 form from letter coordinates.
    pub fn from_letters(&self, c: &[Scalar]) -> Result<FormElement> {
        let mut x = self.zero(1)?;
        for (i, v) in c.iter().enumerate() {
            let idx = self.table.index_of(&[i]).expect("letters are reduced");
            x.coeffs[idx] = AlgebraElement::from_scalar(v.clone());
        }
        Ok(x)
    }

    /// A basis word of some grade with coefficient 1.
    pub fn basis_form(&self, grade: usize, idx: usize) -> Result<FormElement> {
        let mut x = self.zero(grade)?;
        x.coeffs[idx] = AlgebraElement::one();
        Ok(x)
    }

    /// `(F^i_j ∗ a)` for all `i, j`, indexed `i·m + j`.
    pub fn convolve_all(&self, qg: &QuantumGroup, a: &AlgebraElement) -> Vec<AlgebraElement> {
        let m = self.letters();
        let mut out = vec![AlgebraElement::zero(); m * m];
        for (w, c) in a.terms() {
            let t = self.convolve_word(qg, w);
            for (o, x) in out.iter_mut().zip(&t) {
                o.add_scaled(x, c);
            }
        }
        out
    }

    fn convolve_word(&self, qg: &QuantumGroup, w: &Word) -> Vec<AlgebraElement> {
        if let Some(v) = self.conv_cache.read().unwrap().get(w) {
            return v.clone();
        }
        let m = self.letters();
        let mut out = vec![AlgebraElement::zero(); m * m];
        for (l, r, c) in qg.coproduct_word(w).terms() {
            let val = self.comm.word_value(r);
            for (i, j, v) in val.entries() {
                out[i * m + j].add_term(l.clone(), c * v);
            }
        }
        self.conv_cache.write().unwrap().insert(w.clone(), out.clone());
        out
    }

    /// `ω_word · a` in reduced coordinates.
    pub fn commute_word(&self, qg: &QuantumGroup, word: &[usize], a: &AlgebraElement) -> Result<Vec<AlgebraElement>> {
        let m = self.letters();
        let mut state: BTreeMap<Vec<usize>, AlgebraElement> = BTreeMap::new();
        state.insert(Vec::new(), a.clone());
        for &i in word.iter().rev() {
            let mut next: BTreeMap<Vec<usize>, AlgebraElement> = BTreeMap::new();
            for (suffix, c) in &state {
                let conv = self.convolve_all(qg, c);
                for j in 0..m {
                    let x = &conv[i * m + j];
                    if x.is_zero() {
                        continue;
                    }
                    let mut key = Vec::with_capacity(suffix.len() + 1);
                    key.push(j);
                    key.extend_from_slice(suffix);
                    let e = next.entry(key).or_insert_with(AlgebraElement::zero);
                    *e = &*e + x;
                }
            }
            state = next;
        }
        let mut out = vec![AlgebraElement::zero(); self.dim(word.len())];
        for (w, c) in &state {
            for (h, x) in self.table.reduce_word(w)?.iter().enumerate() {
                if !x.is_zero() {
                    out[h].add_scaled(c, x);
                }
            }
        }
        Ok(out)
    }

    pub fn left_mul(&self, qg: &QuantumGroup, a: &AlgebraElement, x: &FormElement) -> FormElement {
        FormElement {
            grade: x.grade,
            coeffs: x.coeffs.iter().map(|c| qg.mul(a, c)).collect(),
        }
    }

    pub fn right_mul(&self, qg: &QuantumGroup, x: &FormElement, a: &AlgebraElement) -> Result<FormElement> {
        let mut out = self.zero(x.grade)?;
        for (b, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let moved = self.commute_word(qg, &self.table.basis(x.grade)[b], a)?;
            for (h, y) in moved.iter().enumerate() {
                if !y.is_zero() {
                    out.coeffs[h] = &out.coeffs[h] + &qg.mul(c, y);
                }
            }
        }
        Ok(out)
    }

    fn word_product(&self, u: &[usize], v: &[usize]) -> Result<Vec<Scalar>> {
        let key = (u.to_vec(), v.to_vec());
        if let Some(p) = self.prod_cache.read().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let w: Vec<usize> = u.iter().chain(v).copied().collect();
        let p = self.table.reduce_word(&w)?;
        self.prod_cache.write().unwrap().insert(key, p.clone());
        Ok(p)
    }

    pub fn wedge(&self, qg: &QuantumGroup, x: &FormElement, y: &FormElement) -> Result<FormElement> {
        let grade = x.grade + y.grade;
        let mut out = self.zero(grade)?;
        for (e, ye) in y.coeffs.iter().enumerate() {
            if ye.is_zero() {
                continue;
            }
            // x · y_e, then append the word of e.
            let moved = self.right_mul(qg, x, ye)?;
            let ve = &self.table.basis(y.grade)[e];
            for (b, c) in moved.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let p = self.word_product(&self.table.basis(x.grade)[b], ve)?;
                for (h, s) in p.iter().enumerate() {
                    if !s.is_zero() {
                        out.coeffs[h].add_scaled(c, s);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `φ_Γ(Σ c_b ω_b) = Σ φ(c_b)(1 ⊗ ω_b)`, one tensor per reduced word.
    pub fn left_coaction(&self, qg: &QuantumGroup, x: &FormElement) -> Vec<TensorElement> {
        x.coeffs.iter().map(|c| qg.coproduct(c)).collect()
    }

    /// Applies `ε ⊗ id` to a coaction value.
    pub fn counit_leg(&self, qg: &QuantumGroup, grade: usize, t: &[TensorElement]) -> FormElement {
        let coeffs = t
            .iter()
            .map(|te| {
                let mut a = AlgebraElement::zero();
                for (l, r, c) in te.terms() {
                    a.add_term(r.clone(), c * &qg.counit_word(l));
                }
                a
            })
            .collect();
        FormElement { grade, coeffs }
    }

    /// Reduced word rendered with the letter names.
    pub fn word_name(&self, grade: usize, idx: usize) -> String {
        let w = &self.table.basis(grade)[idx];
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&l| self.names[l].as_str()).collect::<Vec<_>>().join(" /\\ ")
    }

    pub fn display<'a>(&'a self, x: &'a FormElement) -> FormDisplay<'a> {
        FormDisplay { ext: self, x }
    }
}

pub struct FormDisplay<'a> {
    ext: &'a Exterior,
    x: &'a FormElement,
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, c) in self.x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let word = self.ext.word_name(self.x.grade, b);
            if self.x.grade == 0 {
                write!(f, "{}", c)?;
            } else if c == &AlgebraElement::one() {
                write!(f, "{}", word)?;
            } else if c.num_terms() > 1 {
                write!(f, "({}) * {}", c, word)?;
            } else {
                write!(f, "{} * {}", c, word)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `P F P⁻¹` as a corep family: the commutation functionals in the letter
/// basis `new_i = Σ_a p[i][a] old_a`.
pub fn conjugate_family(fam: &CorepFamily, p: &Matrix<Scalar>, n: usize) -> Result<CorepFamily> {
    let pinv = p.inverse().ok_or_else(|| Error::Type("letter change is singular".into()))?;
    let (ps, pis) = (SparseMatrix::from_dense(p), SparseMatrix::from_dense(&pinv));
    let gens = fam.generator_values().iter().map(|g| ps.mul(g).mul(&pis)).collect();
    Ok(CorepFamily::from_generator_values(n, gens))
}
