//! Linear functionals on the quantum group: the regular families L±, the
//! characteristic functionals f, the vector fields χ, the braiding Λ and
//! the structure constants C.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::algebra::{AlgebraElement, Gen, QuantumGroup, Rule, Word};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::rmatrix::RMatrix;
use crate::scalar::Scalar;

/// Flattened doubled index `(a1, a2) ↦ a1·N + a2`, 0-based.
pub fn pair_index(n: usize, a1: usize, a2: usize) -> usize {
    a1 * n + a2
}

pub fn pair_of(n: usize, i: usize) -> (usize, usize) {
    (i / n, i % n)
}

/// A matrix of functionals `φ^i_j` with `φ(xy) = φ(x)φ(y)` as matrices,
/// stored by its values on the generators.
#[derive(Clone, Debug, PartialEq)]
pub struct CorepFamily {
    n: usize,
    dim: usize,
    gens: Vec<SparseMatrix>,
}

fn gen_index(n: usize, g: Gen) -> usize {
    g.a as usize * n + g.b as usize
}

impl CorepFamily {
    pub fn from_fn(n: usize, dim: usize, mut f: impl FnMut(Gen, usize, usize) -> Scalar) -> Self {
        let gens = (0..n * n)
            .map(|g| {
                let gen = Gen::new(g / n, g % n);
                let mut m = SparseMatrix::zeros(dim, dim);
                for i in 0..dim {
                    for j in 0..dim {
                        m.set(i, j, f(gen, i, j));
                    }
                }
                m
            })
            .collect();
        CorepFamily { n, dim, gens }
    }

    pub fn from_generator_values(n: usize, gens: Vec<SparseMatrix>) -> Self {
        assert_eq!(gens.len(), n * n);
        let dim = gens[0].rows();
        CorepFamily { n, dim, gens }
    }

    /// The counit as a 1×1 family.
    pub fn counit(n: usize) -> Self {
        Self::from_fn(n, 1, |g, _, _| if g.is_diagonal() { Scalar::one() } else { Scalar::zero() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_value(&self, g: Gen) -> &SparseMatrix {
        &self.gens[gen_index(self.n, g)]
    }

    pub fn generator_values(&self) -> &[SparseMatrix] {
        &self.gens
    }

    pub fn word_value(&self, w: &Word) -> SparseMatrix {
        let mut acc = SparseMatrix::identity(self.dim);
        for &g in &w.0 {
            acc = acc.mul(self.generator_value(g));
        }
        acc
    }

    pub fn evaluate(&self, x: &AlgebraElement) -> SparseMatrix {
        let mut acc = SparseMatrix::zeros(self.dim, self.dim);
        for (w, c) in x.terms() {
            acc.add_scaled(&self.word_value(w), c);
        }
        acc
    }

    pub fn entry(&self, i: usize, j: usize, x: &AlgebraElement) -> Scalar {
        self.evaluate(x).get(i, j)
    }

    /// First rule `lhs → rhs` with `φ(lhs) ≠ φ(rhs)`, and the offending
    /// entry.
    pub fn rewrite_violation<'a>(&self, rules: &'a [Rule]) -> Option<(&'a Rule, usize, usize)> {
        for r in rules {
            let diff = self.word_value(&r.lhs).sub(&self.evaluate(&r.rhs));
            if let Some((i, j, _)) = diff.first_nonzero() {
                return Some((r, i, j));
            }
        }
        None
    }

    /// `(φψ)^{(i,k)}_{(j,l)} = φ^i_j ψ^k_l` under the convolution product.
    pub fn convolve(&self, other: &CorepFamily) -> CorepFamily {
        let n = self.n;
        let gens = (0..n * n)
            .map(|g| {
                let (c, d) = (g / n, g % n);
                let mut acc = SparseMatrix::zeros(self.dim * other.dim, self.dim * other.dim);
                for e in 0..n {
                    let l = self.generator_value(Gen::new(c, e));
                    let r = other.generator_value(Gen::new(e, d));
                    acc.add_scaled(&l.kron(r), &Scalar::one());
                }
                acc
            })
            .collect();
        CorepFamily {
            n,
            dim: self.dim * other.dim,
            gens,
        }
    }

    /// `x ↦ φ(κ x)ᵀ`, again a corep family since κ is an anti-homomorphism.
    pub fn antipode_transpose(&self, qg: &QuantumGroup) -> Result<CorepFamily> {
        let gens = qg
            .generators()
            .into_iter()
            .map(|g| Ok(self.evaluate(&qg.antipode_word(&Word(vec![g]))?).transpose()))
            .collect::<Result<Vec<_>>>()?;
        Ok(CorepFamily {
            n: self.n,
            dim: self.dim,
            gens,
        })
    }
}

/// Row of functionals `χ_j` obeying `χ(xy) = χ(x)F(y) + ε(x)χ(y)` for a
/// companion corep family `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivFamily {
    companion: CorepFamily,
    gens: Vec<Vec<Scalar>>,
}

impl DerivFamily {
    pub fn new(companion: CorepFamily, gens: Vec<Vec<Scalar>>) -> Self {
        DerivFamily { companion, gens }
    }

    pub fn dim(&self) -> usize {
        self.companion.dim
    }

    pub fn companion(&self) -> &CorepFamily {
        &self.companion
    }

    pub fn generator_value(&self, g: Gen) -> &[Scalar] {
        &self.gens[gen_index(self.companion.n, g)]
    }

    pub fn word_value(&self, w: &Word) -> Vec<Scalar> {
        let m = self.dim();
        let mut chi = vec![Scalar::zero(); m];
        let mut f = SparseMatrix::identity(m);
        for &g in w.0.iter().rev() {
            let cg = self.generator_value(g);
            let mut next: Vec<Scalar> = if g.is_diagonal() { chi.clone() } else { vec![Scalar::zero(); m] };
            for (k, ck) in cg.iter().enumerate() {
                if ck.is_zero() {
                    continue;
                }
                for (j, v) in f.row(k) {
                    next[j] += &(ck * v);
                }
            }
            chi = next;
            f = self.companion.generator_value(g).mul(&f);
        }
        chi
    }

    pub fn evaluate(&self, x: &AlgebraElement) -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(); self.dim()];
        for (w, c) in x.terms() {
            for (a, v) in acc.iter_mut().zip(self.word_value(w)) {
                *a += &(&v * c);
            }
        }
        acc
    }

    pub fn rewrite_violation<'a>(&self, rules: &'a [Rule]) -> Option<(&'a Rule, usize)> {
        for r in rules {
            let l = self.word_value(&r.lhs);
            let rv = self.evaluate(&r.rhs);
            if let Some(j) = (0..l.len()).find(|&j| l[j] != rv[j]) {
                return Some((r, j));
            }
        }
        None
    }

    /// The `(m+1)×(m+1)` corep family `[[ε, χ], [0, F]]`.
    pub fn block(&self) -> CorepFamily {
        let m = self.dim();
        let n = self.companion.n;
        let gens = (0..n * n)
            .map(|g| {
                let gen = Gen::new(g / n, g % n);
                let mut b = SparseMatrix::zeros(m + 1, m + 1);
                if gen.is_diagonal() {
                    b.set(0, 0, Scalar::one());
                }
                for (j, v) in self.gens[g].iter().enumerate() {
                    b.set(0, j + 1, v.clone());
                }
                for (r, c, v) in self.companion.gens[g].entries() {
                    b.set(r + 1, c + 1, v.clone());
                }
                b
            })
            .collect();
        CorepFamily { n, dim: m + 1, gens }
    }
}

/// `L^a_b(t^c_d) = R^{ac}_{bd}`.
pub fn make_l_plus(r: &RMatrix) -> CorepFamily {
    CorepFamily::from_fn(r.n(), r.n(), |g, a, b| r.get(a, g.a as usize, b, g.b as usize).clone())
}

/// `L^a_b(t^c_d) = (R⁻)^{ac}_{bd}` with `R⁻ = R₂₁⁻¹`, i.e.
/// `(R⁻)^{ac}_{bd} = (R⁻¹)^{ca}_{db}`.
pub fn make_l_minus(r: &RMatrix) -> Result<CorepFamily> {
    let n = r.n();
    let inv = r.inverse_matrix()?;
    Ok(CorepFamily::from_fn(n, n, |g, a, b| {
        inv.get(g.a as usize * n + a, g.b as usize * n + b).clone()
    }))
}

/// `f^{(a1,a2)}_{(b1,b2)} = κ_d(L⁺^{b1}_{a1}) L⁻^{a2}_{b2}`.
pub fn make_f(qg: &QuantumGroup, lplus: &CorepFamily, lminus: &CorepFamily) -> Result<CorepFamily> {
    Ok(lplus.antipode_transpose(qg)?.convolve(lminus))
}

/// `χ_{(c1,c2)} = (1/λ)(Σ_b f^{(b,b)}_{(c1,c2)} − δ^{c1}_{c2} ε)`.
pub fn make_chi(f: &CorepFamily, n: usize, lambda: &Scalar) -> Result<DerivFamily> {
    if lambda.is_zero() {
        return Err(Error::DegenerateParameter("normalization constant λ vanishes".into()));
    }
    let inv = lambda.inv()?;
    let m = f.dim();
    let gens = (0..n * n)
        .map(|g| {
            let gen = Gen::new(g / n, g % n);
            let fv = &f.gens[g];
            (0..m)
                .map(|j| {
                    let mut v: Scalar = (0..n).map(|b| fv.get(pair_index(n, b, b), j)).sum();
                    let (c1, c2) = pair_of(n, j);
                    if c1 == c2 && gen.is_diagonal() {
                        v -= Scalar::one();
                    }
                    &v * &inv
                })
                .collect()
        })
        .collect();
    Ok(DerivFamily::new(f.clone(), gens))
}

/// Adjoint coaction matrix `M_k^j = t^{b1}_{a1} κ(t^{a2}_{b2})` for
/// `k = (b1,b2)`, `j = (a1,a2)`; entry `k·N² + j`.
pub fn adjoint_matrix(qg: &QuantumGroup) -> Result<Vec<AlgebraElement>> {
    let n = qg.n();
    let m = n * n;
    let mut out = vec![AlgebraElement::zero(); m * m];
    for k in 0..m {
        let (b1, b2) = pair_of(n, k);
        for j in 0..m {
            let (a1, a2) = pair_of(n, j);
            let left = AlgebraElement::from_word(Word(vec![Gen::new(b1, a1)]));
            let right = qg.antipode_word(&Word(vec![Gen::new(a2, b2)]))?;
            out[k * m + j] = qg.mul(&left, &right);
        }
    }
    Ok(out)
}

/// `Λ^{ij}_{kl} = f^i_l(M_k^j)`; row `(i,j)`, column `(k,l)`.
pub fn make_lambda(f: &CorepFamily, adjoint: &[AlgebraElement]) -> SparseMatrix {
    let m = f.dim();
    let mut out = SparseMatrix::zeros(m * m, m * m);
    for k in 0..m {
        for j in 0..m {
            let v = f.evaluate(&adjoint[k * m + j]);
            for (i, l, val) in v.entries() {
                out.set(i * m + j, k * m + l, val.clone());
            }
        }
    }
    out
}

/// The closed R-matrix contraction for the braiding with
/// `d^a = q^{2a−1}`, in the same layout as [`make_lambda`].
///
/// The contraction is written for the flipped matrix `R₂₁`, the orientation
/// in which our stored entries satisfy the RTT relations.
pub fn make_lambda_contracted(r: &RMatrix) -> Result<SparseMatrix> {
    let n = r.n();
    let m = n * n;
    let flip = r.matrix();
    let flip = crate::linalg::Matrix::from_fn(m, m, |x, y| flip.get((x % n) * n + x / n, (y % n) * n + y / n).clone());
    let inv = flip.inverse().ok_or_else(|| Error::RMatrix("singular R".into()))?;
    let ri = |a: usize, b: usize, c: usize, d: usize| inv.get(a * n + b, c * n + d).clone();
    let rr = |a: usize, b: usize, c: usize, d: usize| flip.get(a * n + b, c * n + d);
    let dd = |a: usize| Scalar::q_pow(2 * (a as i32 + 1) - 1);
    let mut out = SparseMatrix::zeros(m * m, m * m);
    for a1 in 0..n {
        for a2 in 0..n {
            for d1 in 0..n {
                for d2 in 0..n {
                    for c1 in 0..n {
                        for c2 in 0..n {
                            for b1 in 0..n {
                                for b2 in 0..n {
                                    let mut acc = Scalar::zero();
                                    for f2 in 0..n {
                                        for g1 in 0..n {
                                            let x = rr(f2, b1, c2, g1);
                                            if x.is_zero() {
                                                continue;
                                            }
                                            for e1 in 0..n {
                                                let y = ri(c1, g1, e1, a1);
                                                if y.is_zero() {
                                                    continue;
                                                }
                                                for g2 in 0..n {
                                                    let z = ri(a2, e1, g2, d1);
                                                    let w = rr(g2, d2, b2, f2);
                                                    if z.is_zero() || w.is_zero() {
                                                        continue;
                                                    }
                                                    let scale = &dd(f2) * &dd(c2).inv()?;
                                                    acc += &(&(&(x * &y) * &(&z * w)) * &scale);
                                                }
                                            }
                                        }
                                    }
                                    let i = pair_index(n, a1, a2);
                                    let j = pair_index(n, d1, d2);
                                    let k = pair_index(n, c1, c2);
                                    let l = pair_index(n, b1, b2);
                                    out.set(i * m + j, k * m + l, acc);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `C_{kl}^j = χ_l(M_k^j)`; row `j`, column `(k,l)`.
pub fn make_structure_constants(chi: &DerivFamily, adjoint: &[AlgebraElement]) -> SparseMatrix {
    let m = chi.dim();
    let mut out = SparseMatrix::zeros(m, m * m);
    for k in 0..m {
        for j in 0..m {
            for (l, v) in chi.evaluate(&adjoint[k * m + j]).into_iter().enumerate() {
                out.set(j, k * m + l, v);
            }
        }
    }
    out
}

/// Structure constants from the trace of Λ:
/// `C_{kl}^j = sign·(1/λ)(Σ_a Λ^{(a,a) j}_{kl} − δ_{l diag} δ^j_k)`.
pub fn make_structure_constants_from_trace(lam: &SparseMatrix, n: usize, lambda: &Scalar, sign: i64) -> Result<SparseMatrix> {
    let m = n * n;
    let inv = &lambda.inv()? * &Scalar::from_int(sign);
    let mut out = SparseMatrix::zeros(m, m * m);
    for j in 0..m {
        for k in 0..m {
            for l in 0..m {
                let mut v: Scalar = (0..n).map(|a| lam.get(pair_index(n, a, a) * m + j, k * m + l)).sum();
                let (l1, l2) = pair_of(n, l);
                if l1 == l2 && j == k {
                    v -= Scalar::one();
                }
                out.set(j, k * m + l, &v * &inv);
            }
        }
    }
    Ok(out)
}

/// Normal words up to a degree bound, with their coproducts, so that
/// functionals can be multiplied exactly on this span.
pub struct DualSpace {
    degree: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    coproducts: Vec<Vec<(usize, usize, Scalar)>>,
}

/// Matrix-valued functional tabulated on a [`DualSpace`].
#[derive(Clone, Debug, PartialEq)]
pub struct Tabulated {
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<SparseMatrix>,
}

impl Tabulated {
    pub fn sub(&self, o: &Tabulated) -> Tabulated {
        Tabulated {
            rows: self.rows,
            cols: self.cols,
            values: self.values.iter().zip(&o.values).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn add(&self, o: &Tabulated) -> Tabulated {
        Tabulated {
            rows: self.rows,
            cols: self.cols,
            values: self.values.iter().zip(&o.values).map(|(a, b)| a.add(b)).collect(),
        }
    }

    /// Pointwise `M ↦ M·R`.
    pub fn right_mul(&self, r: &SparseMatrix) -> Tabulated {
        Tabulated {
            rows: self.rows,
            cols: r.cols(),
            values: self.values.iter().map(|v| v.mul(r)).collect(),
        }
    }

    /// Pointwise `M ↦ L·M`.
    pub fn left_mul(&self, l: &SparseMatrix) -> Tabulated {
        Tabulated {
            rows: l.rows(),
            cols: self.cols,
            values: self.values.iter().map(|v| l.mul(v)).collect(),
        }
    }

    /// First word index and entry where the table is nonzero.
    pub fn first_nonzero(&self) -> Option<(usize, usize, usize)> {
        self.values
            .iter()
            .enumerate()
            .find_map(|(w, v)| v.first_nonzero().map(|(r, c, _)| (w, r, c)))
    }
}

impl DualSpace {
    pub fn new(qg: &QuantumGroup, degree: usize) -> Self {
        let words = qg.normal_words(degree);
        let index: HashMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let coproducts = words
            .iter()
            .map(|w| {
                qg.coproduct_word(w)
                    .terms()
                    .map(|(l, r, c)| (index[l], index[r], c.clone()))
                    .collect()
            })
            .collect();
        DualSpace {
            degree,
            words,
            index,
            coproducts,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn tabulate(&self, f: &CorepFamily) -> Tabulated {
        Tabulated {
            rows: f.dim(),
            cols: f.dim(),
            values: self.words.iter().map(|w| f.word_value(w)).collect(),
        }
    }

    /// χ as a `1 × m` table.
    pub fn tabulate_row(&self, chi: &DerivFamily) -> Tabulated {
        let m = chi.dim();
        let values = self
            .words
            .iter()
            .map(|w| {
                let mut s = SparseMatrix::zeros(1, m);
                for (j, v) in chi.word_value(w).into_iter().enumerate() {
                    s.set(0, j, v);
                }
                s
            })
            .collect();
        Tabulated { rows: 1, cols: m, values }
    }

    /// `κ_d` of a table: `x ↦ φ(κ x)`.
    pub fn tabulate_antipode(&self, f: &CorepFamily, qg: &QuantumGroup) -> Result<Tabulated> {
        let values = self
            .words
            .iter()
            .map(|w| Ok(f.evaluate(&qg.antipode_word(w)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Tabulated {
            rows: f.dim(),
            cols: f.dim(),
            values,
        })
    }

    pub fn counit(&self, dim: usize) -> Tabulated {
        let values = self
            .words
            .iter()
            .map(|w| {
                if w.0.iter().all(|g| g.is_diagonal()) {
                    SparseMatrix::identity(dim)
                } else {
                    SparseMatrix::zeros(dim, dim)
                }
            })
            .collect();
        Tabulated {
            rows: dim,
            cols: dim,
            values,
        }
    }

    /// Convolution `(φψ)(x) = Σ φ(x₁) ⊗ ψ(x₂)` as Kronecker products.
    pub fn convolve(&self, a: &Tabulated, b: &Tabulated) -> Tabulated {
        let values = self
            .coproducts
            .iter()
            .map(|cop| {
                let mut acc = SparseMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
                for (l, r, c) in cop {
                    acc.add_scaled(&a.values[*l].kron(&b.values[*r]), c);
                }
                acc
            })
            .collect();
        Tabulated {
            rows: a.rows * b.rows,
            cols: a.cols * b.cols,
            values,
        }
    }

    /// Ordinary matrix product of tables under convolution:
    /// `(φψ)^i_j = Σ_k φ^i_k ψ^k_j`.
    pub fn convolve_contract(&self, a: &Tabulated, b: &Tabulated) -> Tabulated {
        let values = self
            .coproducts
            .iter()
            .map(|cop| {
                let mut acc = SparseMatrix::zeros(a.rows, b.cols);
                for (l, r, c) in cop {
                    acc.add_scaled(&a.values[*l].mul(&b.values[*r]), c);
                }
                acc
            })
            .collect();
        Tabulated {
            rows: a.rows,
            cols: b.cols,
            values,
        }
    }
}

/// The assembled dual data of a calculus.
#[derive(Clone, Debug)]
pub struct Functionals {
    pub lambda: Scalar,
    pub lplus: CorepFamily,
    pub lminus: CorepFamily,
    pub f: CorepFamily,
    pub chi: DerivFamily,
    pub adjoint: Vec<AlgebraElement>,
    /// `Λ^{ij}_{kl}` at row `(i,j)`, column `(k,l)`.
    pub braiding: SparseMatrix,
    /// `C_{kl}^j` at row `j`, column `(k,l)`.
    pub structure: SparseMatrix,
}

impl Functionals {
    pub fn new(qg: &QuantumGroup, lambda: Scalar) -> Result<Self> {
        let r = qg.rmatrix();
        let lplus = make_l_plus(r);
        let lminus = make_l_minus(r)?;
        let f = make_f(qg, &lplus, &lminus)?;
        let chi = make_chi(&f, qg.n(), &lambda)?;
        let adjoint = adjoint_matrix(qg)?;
        let braiding = make_lambda(&f, &adjoint);
        let structure = make_structure_constants(&chi, &adjoint);
        Ok(Functionals {
            lambda,
            lplus,
            lminus,
            f,
            chi,
            adjoint,
            braiding,
            structure,
        })
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    /// `(functional id, generator) → value` lines for every nonzero entry.
    pub fn dump(&self, qg: &QuantumGroup) -> String {
        let n = qg.n();
        let label = |i: usize| {
            let (a, b) = pair_of(n, i);
            format!("{},{}", a + 1, b + 1)
        };
        let mut out = String::new();
        for (name, fam) in [("Lplus", &self.lplus), ("Lminus", &self.lminus)] {
            for g in qg.generators() {
                for (i, j, v) in fam.generator_value(g).entries() {
                    writeln!(out, "{}[{},{}]({}) = {}", name, i + 1, j + 1, g, v).unwrap();
                }
            }
        }
        for g in qg.generators() {
            for (i, j, v) in self.f.generator_value(g).entries() {
                writeln!(out, "f[{};{}]({}) = {}", label(i), label(j), g, v).unwrap();
            }
        }
        for g in qg.generators() {
            for (j, v) in self.chi.generator_value(g).iter().enumerate() {
                if !v.is_zero() {
                    writeln!(out, "chi[{}]({}) = {}", label(j), g, v).unwrap();
                }
            }
        }
        let m = self.dim();
        for (r, c, v) in self.braiding.entries() {
            writeln!(
                out,
                "Lambda[{},{};{},{}] = {}",
                label(r / m),
                label(r % m),
                label(c / m),
                label(c % m),
                v
            )
            .unwrap();
        }
        for (r, c, v) in self.structure.entries() {
            writeln!(out, "C[{},{};{}] = {}", label(c / m), label(c % m), label(r), v).unwrap();
        }
        out
    }
}
