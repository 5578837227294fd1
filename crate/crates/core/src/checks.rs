//! The `hopf` and `bicovariance` suites: identities of the algebra and of
//! its dual, checked exactly on normal words up to a degree bound.

use crate::algebra::{AlgebraElement, QuantumGroup, Word};
use crate::functionals::{
    make_lambda_contracted, make_structure_constants_from_trace, pair_of, CorepFamily, DualSpace, Functionals, Tabulated,
};
use crate::linalg::{Matrix, SparseMatrix};
use crate::report::CheckReport;
use crate::rmatrix::{GroupKind, RMatrix};
use crate::scalar::{int, Scalar};
use crate::Result;

/// `(a1 a2)` with 1-based indices.
pub fn pair_label(n: usize, i: usize) -> String {
    let (a, b) = pair_of(n, i);
    format!("({}{})", a + 1, b + 1)
}

fn first_diff(a: &AlgebraElement, b: &AlgebraElement) -> Option<String> {
    let d = a - b;
    if d.is_zero() {
        None
    } else {
        Some(format!("difference {}", d))
    }
}

/// An R-matrix with the first nonzero entry shifted by one.
pub fn perturbed(r: &RMatrix) -> Result<RMatrix> {
    let n = r.n();
    let mut entries = Vec::new();
    let mut done = false;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut v = r.get(a, b, c, d).clone();
                    if !done && !v.is_zero() {
                        v += Scalar::one();
                        done = true;
                    }
                    if !v.is_zero() {
                        entries.push((a, b, c, d, v));
                    }
                }
            }
        }
    }
    RMatrix::unchecked(n, r.series(), r.group(), &entries)
}

/// R-matrix gate: Yang–Baxter, Hecke and rejection of a perturbed entry.
pub fn rmatrix_checks(r: &RMatrix, rep: &mut CheckReport) -> Result<()> {
    rep.record(
        "rmatrix-yang-baxter",
        "R12 R13 R23 = R23 R13 R12 on all index tuples",
        r.ybe_violation().map(|w| format!("component {:?}", w)),
    );
    rep.record(
        "rmatrix-hecke",
        "(PR - q)(PR + q^-1) = 0",
        r.hecke_violation().map(|w| format!("entry {:?}", w)),
    );
    let bad = perturbed(r)?;
    let w = match bad.validate() {
        Ok(()) => Some("perturbed R was accepted".to_string()),
        Err(e) if e.to_string().contains("fails at") => None,
        Err(e) => Some(format!("rejected without an index witness: {}", e)),
    };
    rep.record(
        "rmatrix-perturbed-rejected",
        "an R with one shifted entry is rejected with a named witness",
        w,
    );
    Ok(())
}

/// Confluence, determinant centrality, Hopf axioms and the classical limit.
pub fn hopf_report(qg: &QuantumGroup, degree: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::new("hopf", degree);
    rmatrix_checks(qg.rmatrix(), &mut rep)?;

    rep.record(
        "rewrite-confluence",
        "every word of length <= 4 has one normal form along all rewrite paths",
        qg.confluence_violation(4).map(|(w, r)| format!("word {} with rule {}", w, r)),
    );

    let det = qg.quantum_determinant();
    let mut w = None;
    for g in qg.generators() {
        let t = AlgebraElement::from_word(Word(vec![g]));
        if let Some(d) = first_diff(&qg.mul(&det, &t), &qg.mul(&t, &det)) {
            w = Some(format!("[det_q, {}]: {}", g, d));
            break;
        }
    }
    rep.record("determinant-central", "det_q commutes with every generator", w);
    if qg.rmatrix().group() == GroupKind::SL {
        rep.record(
            "determinant-unit",
            "det_q normalizes to 1 and has counit 1",
            (det != AlgebraElement::one() || !qg.counit(&det).is_one()).then(|| format!("det_q = {}", det)),
        );
    }

    let words = qg.normal_words(degree);
    let mut coassoc = None;
    let mut counit = None;
    let mut antipode = None;
    let mut adjoint = None;
    for w in &words {
        let x = AlgebraElement::from_word(w.clone());
        if coassoc.is_none() && qg.double_coproduct_left(&x) != qg.double_coproduct_right(&x) {
            coassoc = Some(format!("word {}", w));
        }
        let cop = qg.coproduct_word(w);
        let mut left = AlgebraElement::zero();
        let mut right = AlgebraElement::zero();
        for (l, r, c) in cop.terms() {
            left.add_scaled(&AlgebraElement::from_word(r.clone()), &(c * &qg.counit_word(l)));
            right.add_scaled(&AlgebraElement::from_word(l.clone()), &(c * &qg.counit_word(r)));
        }
        if counit.is_none() {
            counit = first_diff(&left, &x)
                .or_else(|| first_diff(&right, &x))
                .map(|d| format!("word {}: {}", w, d));
        }
        if antipode.is_none() && qg.rmatrix().group() == GroupKind::SL {
            let mut sl = AlgebraElement::zero();
            let mut sr = AlgebraElement::zero();
            for (l, r, c) in cop.terms() {
                let kl = qg.antipode_word(l)?;
                let kr = qg.antipode_word(r)?;
                sl.add_scaled(&qg.mul(&kl, &AlgebraElement::from_word(r.clone())), c);
                sr.add_scaled(&qg.mul(&AlgebraElement::from_word(l.clone()), &kr), c);
            }
            let e = AlgebraElement::from_scalar(qg.counit_word(w));
            antipode = first_diff(&sl, &e)
                .or_else(|| first_diff(&sr, &e))
                .map(|d| format!("word {}: {}", w, d));
        }
        if adjoint.is_none() && qg.rmatrix().group() == GroupKind::SL {
            let ad = qg.adjoint(&x)?;
            let v: Scalar = ad.terms().map(|(l, r, c)| &(c * &qg.counit_word(l)) * &qg.counit_word(r)).sum();
            if v != qg.counit_word(w) {
                adjoint = Some(format!("word {}: (eps x eps) ad = {}", w, v));
            }
        }
    }
    rep.record("coassociativity", "(phi x id)phi = (id x phi)phi", coassoc);
    rep.record("counit-law", "(eps x id)phi = id = (id x eps)phi", counit);
    if qg.rmatrix().group() == GroupKind::SL {
        rep.record("antipode-law", "m(kappa x id)phi = eps 1 = m(id x kappa)phi", antipode);
        rep.record("adjoint-counit", "(eps x eps)ad = eps", adjoint);
    }

    let gl = QuantumGroup::new(qg.rmatrix().clone().with_group(GroupKind::GL))?;
    let one = int(1);
    let mut w = None;
    for rule in gl.rules() {
        let mut sorted = rule.lhs.0.clone();
        sorted.sort();
        let mut expect = AlgebraElement::zero();
        expect.add_term(Word(sorted), Scalar::one());
        let mut got = AlgebraElement::zero();
        for (mw, c) in rule.rhs.terms() {
            got.add_term(mw.clone(), Scalar::from_rational(c.evaluate_at(&one)?));
        }
        if got != expect {
            w = Some(format!("rule {} becomes {} at q = 1", rule, got));
            break;
        }
    }
    rep.record(
        "classical-limit",
        "at q = 1 every commutation rule (no determinant) becomes commutativity",
        w,
    );
    Ok(rep)
}

fn table_witness(dual: &DualSpace, t: &Tabulated, label: impl Fn(usize, usize) -> String) -> Option<String> {
    t.first_nonzero()
        .map(|(w, r, c)| format!("on {}: entry {} = {}", dual.words()[w], label(r, c), t.values[w].get(r, c)))
}

fn corep_witness(name: &str, fam: &CorepFamily, qg: &QuantumGroup) -> Option<String> {
    fam.rewrite_violation(qg.rules()).map(|(rule, i, j)| {
        let l = fam.word_value(&rule.lhs).get(i, j);
        let r = fam.evaluate(&rule.rhs).get(i, j);
        format!("{}[{},{}] on rule {}: {} vs {}", name, i + 1, j + 1, rule, l, r)
    })
}

/// Kernel vectors of `M − 1`.
fn fixed_vectors(m: &SparseMatrix) -> Vec<Vec<Scalar>> {
    let d = m.to_dense();
    d.sub(&Matrix::identity(d.rows())).kernel()
}

/// The dual-side identities: rewrite invariance of the functional
/// families, the R-matrix formulas for Λ and C, the braid relation and
/// the bicovariance conditions.
pub fn bicovariance_report(qg: &QuantumGroup, fu: &Functionals, dual: &DualSpace) -> Result<CheckReport> {
    let n = qg.n();
    let m = fu.dim();
    let mut rep = CheckReport::new("bicovariance", dual.degree());
    let pl = |i: usize| pair_label(n, i);

    rep.record(
        "rewrite-invariance-lplus",
        "L+ takes equal values on both sides of every rule",
        corep_witness("L+", &fu.lplus, qg),
    );
    rep.record(
        "rewrite-invariance-lminus",
        "L- takes equal values on both sides of every rule",
        corep_witness("L-", &fu.lminus, qg),
    );
    rep.record(
        "rewrite-invariance-f",
        "f takes equal values on both sides of every rule",
        corep_witness("f", &fu.f, qg),
    );
    rep.record(
        "rewrite-invariance-chi",
        "chi takes equal values on both sides of every rule",
        fu.chi
            .rewrite_violation(qg.rules())
            .map(|(rule, j)| format!("chi{} on rule {}", pl(j), rule)),
    );
    rep.record(
        "unit-values",
        "f(1) = delta and chi(1) = 0",
        (fu.f.word_value(&Word::empty()) != SparseMatrix::identity(m) || fu.chi.word_value(&Word::empty()).iter().any(|v| !v.is_zero()))
            .then(|| "nonstandard values at 1".to_string()),
    );

    let mut w = None;
    'outer: for a in dual.words() {
        for b in dual.words() {
            if a.len() + b.len() > dual.degree() {
                continue;
            }
            let ab = qg.normal_form_word(&a.concat(b));
            let lhs = fu.chi.evaluate(&ab);
            let ca = fu.chi.word_value(a);
            let fb = fu.f.word_value(b);
            let cb = fu.chi.word_value(b);
            let ea = qg.counit_word(a);
            for j in 0..m {
                let mut rhs = &ea * &cb[j];
                for (k, ck) in ca.iter().enumerate() {
                    rhs += &(ck * &fb.get(k, j));
                }
                if rhs != lhs[j] {
                    w = Some(format!("chi{} on {} * {}", pl(j), a, b));
                    break 'outer;
                }
            }
        }
    }
    rep.record(
        "twisted-derivation-law",
        "chi(ab) = chi(a) f(b) + eps(a) chi(b) on products of normal words",
        w,
    );

    let lam = &fu.braiding;
    let label4 = |r: usize, c: usize| format!("[{}{};{}{}]", pl(r / m), pl(r % m), pl(c / m), pl(c % m));
    let contracted = make_lambda_contracted(qg.rmatrix())?;
    rep.record(
        "braiding-r-matrix-formula",
        "Lambda from f on the adjoint matrix equals the closed R-matrix contraction",
        contracted
            .sub(lam)
            .first_nonzero()
            .map(|(r, c, v)| format!("Lambda{} differs by {}", label4(r, c), v)),
    );
    let traced = make_structure_constants_from_trace(lam, n, &fu.lambda, 1)?;
    rep.record(
        "structure-trace-formula",
        "C from chi on the adjoint matrix equals the trace formula in Lambda",
        traced
            .sub(&fu.structure)
            .first_nonzero()
            .map(|(r, c, v)| format!("C[{}{};{}] differs by {}", pl(c / m), pl(c % m), pl(r), v)),
    );

    let i4 = SparseMatrix::identity(m);
    let l12 = lam.kron(&i4);
    let l23 = i4.kron(lam);
    let braid = l12.mul(&l23).mul(&l12).sub(&l23.mul(&l12).mul(&l23));
    rep.record(
        "braid-relation",
        "(Lambda x 1)(1 x Lambda)(Lambda x 1) = (1 x Lambda)(Lambda x 1)(1 x Lambda)",
        braid.first_nonzero().map(|(r, c, v)| format!("entry ({}, {}) = {}", r, c, v)),
    );
    let dense = lam.to_dense();
    rep.record(
        "braiding-invertible",
        "Lambda has an exact inverse",
        match dense.inverse() {
            Some(inv) => (!dense.mul(&inv).sub(&Matrix::identity(m * m)).is_zero()).then(|| "inverse check failed".into()),
            None => Some("Lambda is singular".into()),
        },
    );
    let at1 = dense.evaluate_at(&int(1))?;
    let mut w = None;
    for r in 0..m * m {
        for c in 0..m * m {
            let flip = r / m == c % m && r % m == c / m;
            let expect = if flip { int(1) } else { int(0) };
            if at1.get(r, c) != &expect && w.is_none() {
                w = Some(format!("Lambda{} = {} at q = 1", label4(r, c), at1.get(r, c)));
            }
        }
    }
    rep.record("braiding-classical-limit", "Lambda becomes the flip at q = 1", w);

    // Tables on the truncated dual.
    let chi = dual.tabulate_row(&fu.chi);
    let f = dual.tabulate(&fu.f);
    let chichi = dual.convolve(&chi, &chi);
    let ff = dual.convolve(&f, &f);
    let c = &fu.structure;
    let pair2 = |_r: usize, c: usize| format!("{}{}", pl(c / m), pl(c % m));

    let bracket = chichi.sub(&chichi.right_mul(lam));
    rep.record(
        "bracket-relation",
        "chi_i chi_j - Lambda^kl_ij chi_k chi_l = C_ij^k chi_k",
        table_witness(dual, &bracket.sub(&chi.right_mul(c)), pair2),
    );
    rep.record(
        "braiding-intertwines-f",
        "Lambda^nm_ij f^i_p f^j_q = f^n_i f^m_j Lambda^ij_pq",
        table_witness(dual, &ff.left_mul(lam).sub(&ff.right_mul(lam)), |r, c| {
            format!("[{}{};{}{}]", pl(r / m), pl(r % m), pl(c / m), pl(c % m))
        }),
    );
    let fchi = dual.convolve(&f, &chi);
    let chif = dual.convolve(&chi, &f);
    let lhs = ff.left_mul(c).add(&fchi);
    let rhs = chif.right_mul(lam).add(&f.right_mul(c));
    rep.record(
        "mixed-exchange",
        "C_mn^i f^m_j f^n_k + f^i_j chi_k = Lambda^pq_jk chi_p f^i_q + C_jk^l f^i_l",
        table_witness(dual, &lhs.sub(&rhs), |r, cc| format!("i={} jk={}{}", pl(r), pl(cc / m), pl(cc % m))),
    );
    rep.record(
        "vector-field-exchange",
        "chi_k f^n_l = Lambda^ij_kl f^n_i chi_j",
        table_witness(dual, &chif.sub(&fchi.right_mul(lam)), |r, cc| {
            format!("n={} kl={}{}", pl(r), pl(cc / m), pl(cc % m))
        }),
    );
    if qg.rmatrix().group() == GroupKind::SL {
        let kf = dual.tabulate_antipode(&fu.f, qg)?;
        let prod = dual.convolve_contract(&kf, &f);
        rep.record(
            "f-antipode-inverse",
            "kappa_d(f^k_j) f^j_i = delta^k_i eps",
            table_witness(dual, &prod.sub(&dual.counit(m)), |r, cc| format!("[{};{}]", pl(r), pl(cc))),
        );
    }

    // Symmetric vanishing: fixed vectors of Lambda have zero bracket.
    let fixed = fixed_vectors(lam);
    let mut w = None;
    for (k, v) in fixed.iter().enumerate() {
        let col = SparseMatrix::from_dense(&Matrix::from_fn(m * m, 1, |r, _| v[r].clone()));
        let cv = c.mul(&col);
        if let Some((r, _, val)) = cv.first_nonzero() {
            w = Some(format!("fixed vector {}: C contracts to {} at {}", k, val, pl(r)));
            break;
        }
        if let Some(x) = table_witness(dual, &bracket.right_mul(&col), |_, _| String::new()) {
            w = Some(format!("fixed vector {}: bracket {}", k, x));
            break;
        }
    }
    rep.record(
        "symmetric-vanishing",
        &format!("sum v^kl [chi_k, chi_l] = 0 for all {} fixed vectors v of Lambda", fixed.len()),
        w,
    );

    // q-Jacobi with the inner brackets expanded through C.
    let mut w = None;
    let br = |a: usize, b: usize| -> SparseMatrix {
        // Column (a,b) of the bracket table, one value per word.
        let mut s = SparseMatrix::zeros(dual.words().len(), 1);
        for (x, v) in bracket.values.iter().enumerate() {
            s.set(x, 0, v.get(0, a * m + b));
        }
        s
    };
    let brackets: Vec<SparseMatrix> = (0..m * m).map(|ab| br(ab / m, ab % m)).collect();
    'jac: for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let mut lhs = SparseMatrix::zeros(dual.words().len(), 1);
                let mut rhs = SparseMatrix::zeros(dual.words().len(), 1);
                for p in 0..m {
                    let cjk = c.get(p, j * m + k);
                    if !cjk.is_zero() {
                        lhs.add_scaled(&brackets[i * m + p], &cjk);
                    }
                    let cij = c.get(p, i * m + j);
                    if !cij.is_zero() {
                        rhs.add_scaled(&brackets[p * m + k], &cij);
                    }
                }
                for (lm, _, l) in lam.column_entries(j * m + k) {
                    let (l1, m1) = (lm / m, lm % m);
                    for p in 0..m {
                        let cil = c.get(p, i * m + l1);
                        if !cil.is_zero() {
                            rhs.add_scaled(&brackets[p * m + m1], &-(&cil * &l));
                        }
                    }
                }
                if let Some((x, _, v)) = lhs.sub(&rhs).first_nonzero() {
                    w = Some(format!("i,j,k = {},{},{} on {}: {}", pl(i), pl(j), pl(k), dual.words()[x], v));
                    break 'jac;
                }
            }
        }
    }
    rep.record(
        "q-jacobi",
        "[chi_i,[chi_j,chi_k]] = [[chi_i,chi_j],chi_k] - Lambda^lm_jk [[chi_i,chi_l],chi_m]",
        w,
    );
    Ok(rep)
}
